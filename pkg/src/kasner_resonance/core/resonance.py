from __future__ import annotations
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from .cfrac import CFWord, CoeffVector, Family
from .kasner import EigenTriple

# M_BIX = 6·[[0,1,0],[-1,1,1],[0,0,1]]；取 z = 6 后 k = M_BIX⁻¹·6·c
M_BIX: Tuple[Tuple[int, int, int], ...] = ((0, 6, 0), (-6, 6, 6), (0, 0, 6))
M_BIX_INV_TIMES_6: Tuple[Tuple[int, int, int], ...] = ((1, -1, 1), (1, 0, 0), (0, 0, 1))

# 闭式公式所用的符号 s（常数族 s = −1，其余 s = +1）
CLOSED_FORM_SIGN = {Family.CONSTANT: -1, Family.TWO_PERIODIC: 1, Family.THREE_PERIODIC: 1}


def family_sign(w: CFWord) -> int:
    """作用在 quad_coeffs 排版上的族符号，复现附录打印的 k"""
    return -1 if w.p == 1 else 1


@dataclass(frozen=True)
class KVector:
    """共振系数 k1·λ1 + k2·λ2 + k3·λ3 = 0"""
    k1: int
    k2: int
    k3: int
    raw_sign: int = 1

    def __post_init__(self):
        if self.k1 == 0 and self.k2 == 0 and self.k3 == 0:
            raise ValueError("resonance vector must be nonzero")
        if self.raw_sign not in (1, -1):
            raise ValueError(f"raw_sign must be +1 or -1, got {self.raw_sign}")

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_tuple())

    @property
    def content(self) -> int:
        return reduce(math.gcd, (abs(x) for x in self.as_tuple()))

    @property
    def reduced(self) -> "KVector":
        g = self.content
        return KVector(self.k1 // g, self.k2 // g, self.k3 // g, self.raw_sign)

    @property
    def is_reduced(self) -> bool:
        return self.content == 1

    def __neg__(self) -> "KVector":
        return KVector(-self.k1, -self.k2, -self.k3, self.raw_sign)

    def canonical(self) -> "KVector":
        """首个非零分量为正（用于与暴力搜索比较）"""
        first = next(x for x in self.as_tuple() if x != 0)
        return self if first > 0 else -self

    def l1_norm(self) -> int:
        return sum(abs(x) for x in self.as_tuple())


def k_from_c(c: CoeffVector, s: int = 1) -> KVector:
    """k = s·(c1 − c2 + c3, c1, c3)"""
    if s not in (1, -1):
        raise ValueError(f"sign factor must be +1 or -1, got {s}")
    c1, c2, c3 = c.as_tuple()
    k = [sum(row[j] * v for j, v in enumerate((c1, c2, c3))) for row in M_BIX_INV_TIMES_6]
    return KVector(s * k[0], s * k[1], s * k[2], raw_sign=s)


def _strict_rsc(values: Sequence[int]) -> bool:
    pos = [x for x in values if x > 0]
    neg = [x for x in values if x < 0]
    if not pos or not neg:
        return True
    if len(pos) == 1 and abs(pos[0]) == 1:
        return True
    if len(neg) == 1 and abs(neg[0]) == 1:
        return True
    return False


def has_zero_component(k: KVector) -> bool:
    return any(x == 0 for x in k.as_tuple())


def rsc(k: KVector) -> bool:
    """Resonance Sign Condition：同号，或唯一异号分量为 ±1

    零分量视为可取任一符号：只要存在一种取法使条件成立即满足。
    """
    values = k.as_tuple()
    zeros = [i for i, x in enumerate(values) if x == 0]
    if not zeros:
        return _strict_rsc(values)
    warnings.warn(f"RSC zero-component convention applied to k = {values}")
    for signs in product((1, -1), repeat=len(zeros)):
        filled = list(values)
        for i, s in zip(zeros, signs):
            filled[i] = s * 0.5  # 仅携带符号，不会等于 ±1
        if _strict_rsc(filled):
            return True
    return False


def order(k: KVector) -> int:
    """约化向量的阶 |k1| + |k2| + |k3|"""
    return k.reduced.l1_norm()


def resonance_value(k: KVector, eig: EigenTriple):
    return k.k1 * eig.lambda1 + k.k2 * eig.lambda2 + k.k3 * eig.lambda3


def verify_identity(k: KVector, eig: EigenTriple) -> bool:
    """精确验证 k·λ = 0"""
    return resonance_value(k, eig).is_zero()


def _integer_rows(eig: EigenTriple) -> Tuple[Tuple[int, int, int], Tuple[int, int, int]]:
    """把 λ_i = p_i + q_i·√D 拆成两行整数（通分后），k·λ = 0 ⇔ 两行同时为零"""
    rats = [x.rat_part for x in eig.as_tuple()]
    irrs = [x.irr_part for x in eig.as_tuple()]
    scale = reduce(math.lcm, (f.denominator for f in rats + irrs), 1)
    P = tuple(int(f * scale) for f in rats)
    Q = tuple(int(f * scale) for f in irrs)
    return P, Q


def _hits_for_k1(P, Q, k1: int, max_order: int) -> List[Tuple[int, int, int]]:
    hits: List[Tuple[int, int, int]] = []
    budget = max_order - abs(k1)
    for k2 in range(-budget, budget + 1):
        rest = budget - abs(k2)
        if P[2] != 0:
            numerator = -(P[0] * k1 + P[1] * k2)
            if numerator % P[2]:
                continue
            candidates = [numerator // P[2]]
        else:
            candidates = range(-rest, rest + 1)
        for k3 in candidates:
            if abs(k3) > rest or (k1, k2, k3) == (0, 0, 0):
                continue
            if P[0] * k1 + P[1] * k2 + P[2] * k3 == 0 and Q[0] * k1 + Q[1] * k2 + Q[2] * k3 == 0:
                hits.append((k1, k2, k3))
    return hits


def resonance_hits(eig: EigenTriple, max_order: int, n_jobs: int = 1) -> List[KVector]:
    """穷举所有阶 ≤ max_order 的非零整数三元组中精确满足 k·λ = 0 者"""
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    P, Q = _integer_rows(eig)
    k1_values = list(range(-max_order, max_order + 1))
    if n_jobs == 1:
        chunks = [_hits_for_k1(P, Q, k1, max_order) for k1 in k1_values]
    else:
        from .parallel import ParallelProcessor
        processor = ParallelProcessor(n_jobs=n_jobs)
        chunks = processor.map_ordered(lambda k1: _hits_for_k1(P, Q, k1, max_order), k1_values)
    return [KVector(*hit) for chunk in chunks for hit in chunk]


def minimal_resonance(hits: Sequence[KVector]) -> Optional[KVector]:
    """同阶按符号规范化后的字典序取最小"""
    if not hits:
        return None
    return min((hit.canonical() for hit in hits), key=lambda k: (k.l1_norm(), k.as_tuple()))


def first_resonance_oracle(eig: EigenTriple, max_order: int, n_jobs: int = 1) -> Optional[KVector]:
    """最小阶共振（独立暴力校验）"""
    return minimal_resonance(resonance_hits(eig, max_order, n_jobs=n_jobs))


def is_multiple_of(hit: KVector, k: KVector) -> bool:
    """hit = z·k，z ∈ ℤ"""
    base = k.reduced
    for x, y in zip(hit.as_tuple(), base.as_tuple()):
        if y == 0 and x != 0:
            return False
    pivot = next(i for i, y in enumerate(base.as_tuple()) if y != 0)
    ratio = Fraction(hit.as_tuple()[pivot], base.as_tuple()[pivot])
    if ratio.denominator != 1:
        return False
    return all(x == ratio * y for x, y in zip(hit.as_tuple(), base.as_tuple()))
