from __future__ import annotations
from typing import Dict, List, Optional

from .core.appendix import AppendixSection, build_sections, iter_rows
from .core.cfrac import CFWord
from .core.snc import ChainReport, chain_verdict, orbit_verdict
from .core.sweep import SweepRow, sweep_chains
from .core.verify import VerifyReport, target_from_report, target_from_row, verify_targets


class ChainAnalysis:
    """链分析结果类"""

    def __init__(self, report: ChainReport):
        self.report = report

    @property
    def admissible(self) -> bool:
        """全部基点可线性化"""
        return self.report.admissible

    @property
    def orbit_admissible(self) -> bool:
        """基点与进入链前的各点均可线性化"""
        return self.report.orbit_admissible

    @property
    def base_point_count(self) -> int:
        return len(self.report.base_points)

    @property
    def blocked_count(self) -> int:
        return len(self.report.blocking_points)

    @property
    def blocked_transient_count(self) -> int:
        return len(self.report.blocking_transients)

    @property
    def common_factor_points(self) -> List[str]:
        """约化时出现公因子的基点"""
        return [r.word for r in self.report.base_points if r.gcd > 1]

    def to_dict(self) -> Dict:
        return {
            "word": self.report.word,
            "period": self.report.period,
            "summary": {
                "admissible": self.admissible,
                "orbit_admissible": self.orbit_admissible,
                "base_points": self.base_point_count,
                "blocked": self.blocked_count,
                "blocked_transients": self.blocked_transient_count,
                "common_factor_points": self.common_factor_points,
            },
        }


def analyze(word: str, smoothness: int = 1, n_jobs: int = 1) -> ChainAnalysis:
    """
    分析连分数词对应的周期链

    Args:
        word: 词文本，"2,3" 为纯周期，"5;3,2" 为带预周期首项
        smoothness: 坐标变换光滑度（默认1）
        n_jobs: 并行任务数

    Returns:
        ChainAnalysis: 链分析结果
    """
    w = CFWord.parse(word)
    if w.is_purely_periodic:
        return ChainAnalysis(chain_verdict(w.period, smoothness, n_jobs))
    return ChainAnalysis(orbit_verdict(w, smoothness, n_jobs))


def regenerate_appendix(section: str = "all", smoothness: int = 1, n_jobs: int = 1) -> List[AppendixSection]:
    return build_sections(section, smoothness, n_jobs)


def sweep(min_period: int = 1, max_period: int = 3, min_entry: int = 1, max_entry: int = 5,
          smoothness: int = 1, admissible_only: bool = False, n_jobs: int = 1) -> List[SweepRow]:
    return sweep_chains(min_period, max_period, min_entry, max_entry,
                        smoothness, admissible_only, n_jobs)


def verify_appendix(section: str = "all", oracle_order: int = 30, n_jobs: int = 1) -> VerifyReport:
    """校验附录各行：恒等式、暴力最小性、闭式与递推一致"""
    rows = list(iter_rows(build_sections(section, n_jobs=n_jobs)))
    return verify_targets([target_from_row(row) for row in rows], oracle_order, n_jobs)


def verify_chain(word: str, oracle_order: int = 30, smoothness: int = 1,
                 n_jobs: int = 1) -> VerifyReport:
    report = analyze(word, smoothness, n_jobs).report
    points = report.base_points + report.transient_points
    return verify_targets([target_from_report(r) for r in points], oracle_order, n_jobs)
