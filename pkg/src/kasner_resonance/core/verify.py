from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .appendix import AppendixRow
from .cfrac import (
    CFWord,
    CoeffVector,
    closed_form_coeffs,
    closed_form_family,
    convergents,
    quad_coeffs,
    cf_value,
)
from .errors import ConfigError
from .kasner import eigenvalues
from .parallel import ParallelProcessor
from .resonance import KVector, is_multiple_of, minimal_resonance, resonance_hits, verify_identity
from .snc import BasePointReport

CHECKS = ("identity", "residue", "closed_form", "oracle_minimal", "oracle_multiples", "determinant")


@dataclass(frozen=True)
class VerifyTarget:
    """待校验的一行：词、未约化 k、可选的闭式系数"""
    label: str
    word: CFWord
    k_raw: KVector
    closed: Optional[CoeffVector] = None

    @property
    def order(self) -> int:
        return self.k_raw.reduced.l1_norm()


@dataclass
class VerifyRecord:
    label: str
    word: str
    k_reduced: tuple
    order: int
    checks: Dict[str, bool] = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


@dataclass
class VerifyReport:
    oracle_order: int
    records: List[VerifyRecord]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> List[VerifyRecord]:
        return [r for r in self.records if not r.passed]

    @property
    def first_failure(self) -> Optional[VerifyRecord]:
        failures = self.failures
        return failures[0] if failures else None


def target_from_row(row: AppendixRow) -> VerifyTarget:
    label = f"{row.section} {row.header} m={row.m}"
    c = CoeffVector(*row.c)
    return VerifyTarget(label, row.cf_word, KVector(*row.k), c)


def target_from_report(report: BasePointReport) -> VerifyTarget:
    w = report.cf_word
    closed = None
    family = closed_form_family(w)
    if family is not None:
        closed = closed_form_coeffs(family[0], family[1], family[2], allow_preperiodic=True)
    return VerifyTarget(report.word, w, KVector(*report.k_raw), closed)


def verify_target(target: VerifyTarget, oracle_order: int) -> VerifyRecord:
    w = target.word
    u = cf_value(w)
    eig = eigenvalues(u)
    k = target.k_raw.reduced
    checks: Dict[str, bool] = {}
    notes: List[str] = []

    checks["identity"] = verify_identity(target.k_raw, eig) and verify_identity(k, eig)
    general = quad_coeffs(w)
    checks["residue"] = general.evaluate(u).is_zero()
    if target.closed is not None:
        checks["closed_form"] = (target.closed.evaluate(u).is_zero()
                                 and target.closed.canonical() == general.canonical())

    hits = resonance_hits(eig, oracle_order)
    oracle_min = minimal_resonance(hits)
    if k.l1_norm() <= oracle_order:
        checks["oracle_minimal"] = oracle_min is not None and oracle_min.as_tuple() == k.canonical().as_tuple()
        if oracle_min is not None and not checks["oracle_minimal"]:
            notes.append(f"oracle found {oracle_min.as_tuple()} of order {oracle_min.l1_norm()}")
    else:
        # 阶超出搜索界：界内不应有任何共振
        checks["oracle_minimal"] = not hits
        if hits:
            notes.append(f"oracle found {hits[0].as_tuple()} below the reduced order {k.l1_norm()}")
    checks["oracle_multiples"] = all(is_multiple_of(hit, k) for hit in hits)
    checks["determinant"] = convergents(w, w.g + w.p).check_determinant()

    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        notes.insert(0, "failed: " + ", ".join(failed))
    return VerifyRecord(
        label=target.label,
        word=str(w),
        k_reduced=k.as_tuple(),
        order=k.l1_norm(),
        checks=checks,
        detail="; ".join(notes),
    )


def verify_targets(targets: Sequence[VerifyTarget], oracle_order: int, n_jobs: int = 1) -> VerifyReport:
    """逐行校验；搜索界低于最小约化阶视为配置错误"""
    if not targets:
        raise ConfigError("nothing to verify", {})
    smallest = min(t.order for t in targets)
    if oracle_order < smallest:
        raise ConfigError(
            f"oracle order {oracle_order} is below the smallest resonance order {smallest}",
            {"oracle_order": oracle_order, "smallest_order": smallest},
        )
    processor = ParallelProcessor(n_jobs=n_jobs)
    records = processor.map_ordered(lambda t: verify_target(t, oracle_order), list(targets))
    return VerifyReport(oracle_order=oracle_order, records=records)
