from __future__ import annotations
from dataclasses import dataclass
from typing import List, Sequence, Set, Tuple

from .cfrac import CFWord, canonicalize, cf_value, minimal_period, tail
from .errors import InvalidWord, TaubPoint
from .exactfield import QuadExt

# λ_i = 6·(l1 + l2·u + l3·u²) / (1 + u + u²) 的分子系数 (l1, l2, l3)
EIGEN_NUMERATORS: Tuple[Tuple[int, int, int], ...] = (
    (0, -6, 0),
    (6, 6, 0),
    (0, 6, 6),
)


def eigen_numerators() -> Tuple[Tuple[int, int, int], ...]:
    return EIGEN_NUMERATORS


@dataclass(frozen=True)
class EigenTriple:
    """Kasner圆上一点的三个双曲特征值（同一二次域）"""
    lambda1: QuadExt
    lambda2: QuadExt
    lambda3: QuadExt

    def as_tuple(self) -> Tuple[QuadExt, QuadExt, QuadExt]:
        return (self.lambda1, self.lambda2, self.lambda3)

    def magnitudes(self) -> Tuple[QuadExt, QuadExt, QuadExt]:
        return tuple(abs(x) for x in self.as_tuple())

    def approx(self) -> Tuple[float, float, float]:
        return tuple(float(x) for x in self.as_tuple())


def eigenvalues(u: QuadExt) -> EigenTriple:
    """(λ1, λ2, λ3) = (−6u, 6(1+u), 6u(1+u)) / (1+u+u²)"""
    if u <= 1:
        raise TaubPoint(f"Kasner parameter u = {u} is not > 1", {"u": str(u)})
    den = 1 + u + u * u
    return EigenTriple(
        lambda1=(-6 * u) / den,
        lambda2=(6 * (1 + u)) / den,
        lambda3=(6 * u * (1 + u)) / den,
    )


def kasner_map(u: QuadExt) -> QuadExt:
    """u ↦ u − 1 (u ≥ 2)；u ↦ 1/(u − 1) (1 < u < 2)"""
    if u <= 1:
        raise TaubPoint(f"Kasner map undefined at u = {u}", {"u": str(u)})
    if u >= 2:
        return u - 1
    return 1 / (u - 1)


def kasner_step(w: CFWord) -> CFWord:
    """Kasner映射在连分数词上的移位形式"""
    if cf_value(w) <= 1:
        raise TaubPoint(f"word {w} names a Taub point", {"word": str(w)})
    a0 = w.entry(0)
    if a0 == 1:
        return tail(w, 1)
    if w.h:
        return canonicalize(CFWord((a0 - 1,) + w.head[1:], w.period))
    return canonicalize(CFWord((a0 - 1,), w.period[1:] + w.period[:1]))


def base_points(period: Sequence[int]) -> List[CFWord]:
    """周期链的全部基点 [m, 轮换]，m = 1..a_i，数量 = 周期各项之和"""
    period = tuple(int(x) for x in period)
    if not period:
        raise InvalidWord("period must be non-empty")
    period = minimal_period(period)
    points: List[CFWord] = []
    for i, lead in enumerate(period):
        rotation = period[i + 1:] + period[:i + 1]
        for m in range(1, lead + 1):
            points.append(CFWord((m,), rotation))
    return points


def base_point_keys(period: Sequence[int]) -> Set[CFWord]:
    return {canonicalize(w) for w in base_points(period)}


def kasner_orbit(w: CFWord) -> List[CFWord]:
    """从纯周期词出发迭代直至回到起点"""
    start = canonicalize(w)
    if not start.is_purely_periodic:
        raise InvalidWord(f"orbit enumeration needs a purely periodic word, got {w}")
    orbit = [start]
    current = kasner_step(start)
    while current != start:
        orbit.append(current)
        current = kasner_step(current)
    return orbit


def transient_points(w: CFWord) -> List[CFWord]:
    """预周期词在进入链基点集合之前经过的点"""
    keys = base_point_keys(w.period)
    transients: List[CFWord] = []
    current = w
    while canonicalize(current) not in keys:
        transients.append(current)
        current = kasner_step(current)
    return transients
