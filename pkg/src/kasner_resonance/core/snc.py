from __future__ import annotations
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, model_validator

from .cfrac import CFWord, CoeffVector, cf_value, minimal_period, quad_coeffs
from .errors import TaubDegeneracy
from .exactfield import QuadExt
from .kasner import EigenTriple, base_points, eigenvalues, transient_points
from .resonance import family_sign, has_zero_component, k_from_c, rsc

Triple = Tuple[int, int, int]


class Verdict(str, Enum):
    """基点判定原因"""
    RSC_VIOLATED = "RSC_VIOLATED"
    ORDER_EXCEEDS_ALPHA = "ORDER_EXCEEDS_ALPHA"
    BLOCKED = "BLOCKED"


@dataclass(frozen=True)
class SncData:
    """Sternberg非共振阶：N ≥ n ≥ mu 为特征值模长降序"""
    N_mag: QuadExt
    n_mag: QuadExt
    mu_mag: QuadExt
    smoothness: int
    beta: int
    alpha: int


def sort_magnitudes(eig: EigenTriple) -> Tuple[QuadExt, QuadExt, QuadExt]:
    """模长降序 (N, n, mu)；u > 1 时即 (|λ3|, |λ2|, |λ1|)"""
    mags = sorted(eig.magnitudes(), reverse=True)
    if mags[0] == mags[1] or mags[1] == mags[2]:
        raise TaubDegeneracy(
            "eigenvalue magnitudes coincide",
            {"magnitudes": [m.pretty() for m in mags]},
        )
    return mags[0], mags[1], mags[2]


def snc_data(eig: EigenTriple, smoothness: int = 1) -> SncData:
    if smoothness < 1:
        raise ValueError(f"smoothness must be >= 1, got {smoothness}")
    N, n, mu = sort_magnitudes(eig)
    beta = ((N + smoothness * (mu + n)) / n).ceil_exact()
    alpha = ((mu + beta * (N + mu)) / mu).ceil_exact()
    return SncData(N, n, mu, smoothness, beta, alpha)


def alpha_beta(eig: EigenTriple, smoothness: int = 1) -> Tuple[int, int]:
    """(α, β)，β = ⌈(N + k(mu + n))/n⌉，α = ⌈(mu + β(N + mu))/mu⌉"""
    data = snc_data(eig, smoothness)
    return data.alpha, data.beta


def lower_bounds(u: QuadExt) -> Tuple[QuadExt, QuadExt]:
    """光滑度为 1 时 β 与 α 的精确下界"""
    beta_bound = (u * u + 3 * u + 1) / (u + 1)
    alpha_bound = (u ** 3 + 5 * u * u + 8 * u + 3) / (u + 1)
    return beta_bound, alpha_bound


def is_two_periodic_admissible(a: int, b: int) -> bool:
    """a, b > 1 且互不整除"""
    return a > 1 and b > 1 and a % b != 0 and b % a != 0


class BasePointReport(BaseModel):
    """单个基点的共振与线性化判定"""
    word: str
    u_value: str
    u_approx: float
    c_raw: Triple
    c_reduced: Triple
    k_raw: Triple
    k_reduced: Triple
    gcd: int = Field(ge=1)
    order: int = Field(ge=1)
    rsc: bool
    alpha: int
    beta: int
    linearizable: bool
    reason: Verdict
    boundary: bool = False
    order_exceeds_alpha: bool = False
    rsc_zero_convention: bool = False

    @model_validator(mode="after")
    def _check_reason(self) -> "BasePointReport":
        blocked = self.rsc and self.order <= self.alpha
        if (self.reason is Verdict.BLOCKED) != blocked:
            raise ValueError(f"reason {self.reason.value} inconsistent with rsc={self.rsc}, "
                             f"order={self.order}, alpha={self.alpha}")
        if self.linearizable == blocked:
            raise ValueError("linearizable must be the negation of a BLOCKED verdict")
        return self

    @property
    def common_factor(self) -> int:
        return self.gcd

    @property
    def cf_word(self) -> CFWord:
        return CFWord.parse(self.word)


class ChainReport(BaseModel):
    """周期链的全部基点判定"""
    period: List[int]
    smoothness: int = Field(ge=1)
    admissible: bool
    base_points: List[BasePointReport]
    word: str = ""
    two_periodic_admissible: Optional[bool] = None
    transient_points: List[BasePointReport] = Field(default_factory=list)
    orbit_admissible: bool = False

    @model_validator(mode="after")
    def _check_admissible(self) -> "ChainReport":
        if self.admissible != all(r.linearizable for r in self.base_points):
            raise ValueError("admissible must hold exactly when every base point is linearizable")
        return self

    @property
    def blocking_points(self) -> List[BasePointReport]:
        return [r for r in self.base_points if not r.linearizable]

    @property
    def blocking_transients(self) -> List[BasePointReport]:
        return [r for r in self.transient_points if not r.linearizable]


def basepoint_verdict(w: CFWord, smoothness: int = 1) -> BasePointReport:
    """组装 c、k、RSC、阶与 (α, β)：RSC 不成立或阶 > α 即可线性化"""
    u = cf_value(w)
    eig = eigenvalues(u)
    alpha, beta = alpha_beta(eig, smoothness)

    c_raw: CoeffVector = quad_coeffs(w, reduce=False)
    c_reduced, _ = c_raw.reduce()
    k_raw = k_from_c(c_raw, family_sign(w))
    k_reduced = k_raw.reduced
    k_order = k_reduced.l1_norm()

    with warnings.catch_warnings():
        # 零分量标志已单独记录
        warnings.simplefilter("ignore")
        rsc_holds = rsc(k_reduced)

    if not rsc_holds:
        reason = Verdict.RSC_VIOLATED
    elif k_order > alpha:
        reason = Verdict.ORDER_EXCEEDS_ALPHA
    else:
        reason = Verdict.BLOCKED

    return BasePointReport(
        word=str(w),
        u_value=u.pretty(),
        u_approx=float(u),
        c_raw=c_raw.as_tuple(),
        c_reduced=c_reduced.as_tuple(),
        k_raw=k_raw.as_tuple(),
        k_reduced=k_reduced.as_tuple(),
        gcd=k_raw.content,
        order=k_order,
        rsc=rsc_holds,
        alpha=alpha,
        beta=beta,
        linearizable=reason is not Verdict.BLOCKED,
        reason=reason,
        boundary=k_order == alpha,
        order_exceeds_alpha=k_order > alpha,
        rsc_zero_convention=has_zero_component(k_reduced),
    )


def _verdicts(words: Sequence[CFWord], smoothness: int, n_jobs: int) -> List[BasePointReport]:
    if n_jobs == 1 or len(words) <= 1:
        return [basepoint_verdict(w, smoothness) for w in words]
    from .parallel import ParallelProcessor
    processor = ParallelProcessor(n_jobs=n_jobs)
    return processor.map_ordered(lambda w: basepoint_verdict(w, smoothness), words)


def chain_verdict(period: Sequence[int], smoothness: int = 1, n_jobs: int = 1) -> ChainReport:
    """周期链可容许 ⇔ 每个基点都可线性化"""
    period = minimal_period(tuple(int(x) for x in period))
    reports = _verdicts(base_points(period), smoothness, n_jobs)
    admissible = all(r.linearizable for r in reports)
    two_periodic = is_two_periodic_admissible(*period) if len(period) == 2 else None
    return ChainReport(
        period=list(period),
        smoothness=smoothness,
        admissible=admissible,
        base_points=reports,
        word=str(CFWord((), period)),
        two_periodic_admissible=two_periodic,
        orbit_admissible=admissible,
    )


def orbit_verdict(w: CFWord, smoothness: int = 1, n_jobs: int = 1) -> ChainReport:
    """预周期词：链本身的判定加上进入链之前经过的各点"""
    chain = chain_verdict(w.period, smoothness, n_jobs)
    transients = _verdicts(transient_points(w), smoothness, n_jobs)
    return chain.model_copy(update={
        "word": str(w),
        "transient_points": transients,
        "orbit_admissible": chain.admissible and all(r.linearizable for r in transients),
    })
