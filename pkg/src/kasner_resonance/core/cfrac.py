from __future__ import annotations
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import HeadOutOfRange, InvalidWord, WordParseError
from .exactfield import QuadExt, quadratic_roots

# cf_value 分离共轭根时最多展开的项数
CF_VALUE_MAX_TERMS = 4096


@dataclass(frozen=True)
class CFWord:
    """预周期连分数词 [a_0, ..., a_{h-1}, (a_h, ..., a_{h+p-1}) 循环]"""
    head: Tuple[int, ...] = ()
    period: Tuple[int, ...] = (1,)

    def __post_init__(self):
        head = tuple(int(x) for x in self.head)
        period = tuple(int(x) for x in self.period)
        if not period:
            raise InvalidWord("period must be non-empty", {"head": list(head)})
        bad = [x for x in head + period if x < 1]
        if bad:
            raise InvalidWord(
                f"continued fraction entries must be >= 1, got {bad[0]}",
                {"head": list(head), "period": list(period)},
            )
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)

    @property
    def h(self) -> int:
        return len(self.head)

    @property
    def p(self) -> int:
        return len(self.period)

    @property
    def g(self) -> int:
        return self.h + self.p

    @property
    def is_purely_periodic(self) -> bool:
        return self.h == 0

    def entry(self, k: int) -> int:
        """a_k，周期部分按需重复"""
        if k < 0:
            raise IndexError(f"entry index must be >= 0, got {k}")
        if k < self.h:
            return self.head[k]
        return self.period[(k - self.h) % self.p]

    def prefix(self, n: int) -> List[int]:
        return [self.entry(k) for k in range(n)]

    @classmethod
    def parse(cls, text: str) -> "CFWord":
        """解析 "m;a,b,c"（首项 m，周期 a,b,c）或 "a,b"（纯周期）"""
        if text is None or not text.strip():
            raise WordParseError("empty continued fraction word", text or "", 0)
        parts = text.split(";")
        if len(parts) > 2:
            second = text.index(";", text.index(";") + 1)
            raise WordParseError("at most one ';' separates head and period", text, second)
        if len(parts) == 1:
            return cls((), _parse_entries(text, 0, len(text)))
        split_at = text.index(";")
        head = _parse_entries(text, 0, split_at)
        period = _parse_entries(text, split_at + 1, len(text))
        return cls(head, period)

    def __str__(self) -> str:
        period = ",".join(str(x) for x in self.period)
        if not self.head:
            return period
        return ",".join(str(x) for x in self.head) + ";" + period

    def expanded(self, repeats: int = 2) -> str:
        """展开形式 [5,3,2,3,2,...]"""
        entries = list(self.head) + list(self.period) * repeats
        return "[" + ",".join(str(x) for x in entries) + ",...]"


def _parse_entries(text: str, start: int, end: int) -> Tuple[int, ...]:
    entries: List[int] = []
    pos = start
    for token in text[start:end].split(","):
        stripped = token.strip()
        token_pos = pos + (len(token) - len(token.lstrip()))
        if not stripped:
            raise WordParseError("expected a positive integer", text, token_pos)
        for offset, ch in enumerate(stripped):
            if not ch.isdigit():
                raise WordParseError(f"unexpected character {ch!r}", text, token_pos + offset)
        value = int(stripped)
        if value < 1:
            raise WordParseError("entries must be >= 1", text, token_pos)
        entries.append(value)
        pos += len(token) + 1
    return tuple(entries)


@dataclass(frozen=True)
class Convergents:
    """A_k, B_k 表，下标从 -2 开始（内部偏移 2）"""
    A: Tuple[int, ...]
    B: Tuple[int, ...]

    @property
    def upto(self) -> int:
        return len(self.A) - 3

    def num(self, k: int) -> int:
        return self.A[k + 2]

    def den(self, k: int) -> int:
        return self.B[k + 2]

    def determinant(self, k: int) -> int:
        return self.num(k) * self.den(k - 1) - self.num(k - 1) * self.den(k)

    def check_determinant(self) -> bool:
        """经典恒等式 A_k·B_{k-1} − A_{k-1}·B_k = ±1"""
        return all(abs(self.determinant(k)) == 1 for k in range(0, self.upto + 1))


def convergents(w: CFWord, upto: int) -> Convergents:
    if upto < 0:
        raise ValueError(f"upto must be >= 0, got {upto}")
    A = [0, 1]
    B = [1, 0]
    for k in range(upto + 1):
        a = w.entry(k)
        A.append(A[-1] * a + A[-2])
        B.append(B[-1] * a + B[-2])
    return Convergents(tuple(A), tuple(B))


@dataclass(frozen=True)
class CoeffVector:
    """c1 + c2·u + c3·u² = 0 的整数系数"""
    c1: int
    c2: int
    c3: int
    reduced: bool = False

    def __post_init__(self):
        if self.c1 == 0 and self.c2 == 0 and self.c3 == 0:
            raise ValueError("coefficient vector must be nonzero")
        if self.reduced and self.content != 1:
            raise ValueError(f"vector {self.as_tuple()} flagged reduced but has content {self.content}")

    @property
    def content(self) -> int:
        return reduce(math.gcd, (abs(self.c1), abs(self.c2), abs(self.c3)))

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.c1, self.c2, self.c3)

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_tuple())

    def reduce(self) -> Tuple["CoeffVector", int]:
        g = self.content
        return CoeffVector(self.c1 // g, self.c2 // g, self.c3 // g, reduced=True), g

    def scaled(self, factor: int) -> "CoeffVector":
        return CoeffVector(self.c1 * factor, self.c2 * factor, self.c3 * factor,
                           reduced=self.reduced and abs(factor) == 1)

    def canonical(self) -> "CoeffVector":
        """首个非零分量为正的约化形式"""
        vec, _ = self.reduce()
        first = next(x for x in vec.as_tuple() if x != 0)
        return vec if first > 0 else vec.scaled(-1)

    def evaluate(self, u: QuadExt) -> QuadExt:
        """精确残差 c1 + c2·u + c3·u²"""
        return self.c1 + self.c2 * u + self.c3 * u * u


class Family(str, Enum):
    """闭式系数公式族"""
    CONSTANT = "constant"
    TWO_PERIODIC = "two_periodic"
    THREE_PERIODIC = "three_periodic"


FAMILY_BY_PERIOD = {1: Family.CONSTANT, 2: Family.TWO_PERIODIC, 3: Family.THREE_PERIODIC}


def raw_quad_coeffs(w: CFWord) -> CoeffVector:
    """一般预周期公式（g = h + p），未约化、保持公式自身的符号"""
    h, g = w.h, w.g
    conv = convergents(w, g - 1)
    A, B = conv.num, conv.den
    c3 = B(h - 2) * B(g - 1) - B(h - 1) * B(g - 2)
    c2 = B(h - 1) * A(g - 2) + A(h - 1) * B(g - 2) - A(h - 2) * B(g - 1) - B(h - 2) * A(g - 1)
    c1 = A(h - 2) * A(g - 1) - A(h - 1) * A(g - 2)
    return CoeffVector(c1, c2, c3)


def specialized_coeffs(w: CFWord) -> CoeffVector:
    """h = 0 与 h = 1 的特化公式，用于交叉校验一般公式"""
    p = w.p
    if w.h == 0:
        conv = convergents(w, p - 1)
        return CoeffVector(-conv.num(p - 2), conv.den(p - 2) - conv.num(p - 1), conv.den(p - 1))
    if w.h == 1:
        a0 = w.entry(0)
        conv = convergents(w, p)
        return CoeffVector(
            conv.num(p) - a0 * conv.num(p - 1),
            conv.num(p - 1) + a0 * conv.den(p - 1) - conv.den(p),
            -conv.den(p - 1),
        )
    raise ValueError(f"specialized formulas exist only for h <= 1, got h = {w.h}")


def layout_sign(w: CFWord) -> int:
    """把一般公式的符号对齐到闭式公式的排版（h = 1 且 p ∈ {1, 3} 时取反）"""
    if w.h == 1 and w.p in (1, 3):
        return -1
    return 1


def quad_coeffs(w: CFWord, reduce: bool = True) -> CoeffVector:
    """u 的二次方程系数：h = 0 时 c3 > 0；h = 1 时与闭式公式同号"""
    raw = raw_quad_coeffs(w).scaled(layout_sign(w))
    if not reduce:
        return raw
    vec, _ = raw.reduce()
    return vec


def closed_form_coeffs(family: Family, m: int, params: Sequence[int],
                       allow_preperiodic: bool = False) -> CoeffVector:
    """闭式系数向量，params 为首项 m 之后的周期（按词序）

    constant:       [m, a, a, ...]
    two_periodic:   [m, a, b, a, b, ...]
    three_periodic: [m, a, b, c, a, b, c, ...]
    基点规则要求 1 ≤ m ≤ 周期末项；allow_preperiodic 时只要求 m ≥ 1。
    """
    family = Family(family)
    params = tuple(int(x) for x in params)
    expected = {Family.CONSTANT: 1, Family.TWO_PERIODIC: 2, Family.THREE_PERIODIC: 3}[family]
    if len(params) != expected:
        raise ValueError(f"{family.value} family takes {expected} parameter(s), got {len(params)}")
    if any(x < 1 for x in params):
        raise ValueError(f"family parameters must be >= 1, got {params}")
    if m < 1 or (not allow_preperiodic and m > params[-1]):
        raise HeadOutOfRange(
            f"head m={m} outside base-point range 1..{params[-1]}",
            {"family": family.value, "m": m, "params": list(params)},
        )
    if family is Family.CONSTANT:
        (a,) = params
        return CoeffVector(m * m - a * m - 1, a - 2 * m, 1)
    if family is Family.TWO_PERIODIC:
        a, b = params
        return CoeffVector(-a * m * m + a * b * m + b, 2 * a * m - a * b, -a)
    a, b, c = params
    return CoeffVector(
        m * m + m * b + m * m * a * b - a * m - c * m - c * b - a * b * c * m - 1,
        a * b * c + c + a - b - 2 * m - 2 * m * a * b,
        1 + a * b,
    )


def closed_form_family(w: CFWord) -> Optional[Tuple[Family, int, Tuple[int, ...]]]:
    """识别 head+period 词所属的闭式公式族"""
    if w.h != 1 or w.p not in FAMILY_BY_PERIOD:
        return None
    return FAMILY_BY_PERIOD[w.p], w.head[0], w.period


def cf_value(w: CFWord) -> QuadExt:
    """u = ξ_0：二次方程在相邻收敛子 A_k/B_k, A_{k+1}/B_{k+1} 之间的那个根"""
    a0 = w.entry(0)
    candidates = [root for root in quadratic_roots(raw_quad_coeffs(w)) if root.floor_exact() == a0]
    if len(candidates) == 1:
        return candidates[0]
    if not candidates:
        raise ArithmeticError(f"no root of the quadratic for {w} lies in [{a0}, {a0 + 1})")
    # 共轭根也落在 [a0, a0+1) 时（长预周期），用收敛子区间区分
    upto = 2 * w.g + 2
    k = w.g
    while upto <= CF_VALUE_MAX_TERMS:
        conv = convergents(w, upto)
        while k + 1 <= upto:
            lo = Fraction(conv.num(k), conv.den(k))
            hi = Fraction(conv.num(k + 1), conv.den(k + 1))
            inside = [root for root in candidates if (root - lo).sign() * (root - hi).sign() < 0]
            if len(inside) == 1:
                return inside[0]
            k += 1
        upto *= 2
    raise ArithmeticError(f"convergents of {w} did not separate the roots within {CF_VALUE_MAX_TERMS} terms")


def minimal_period(period: Sequence[int]) -> Tuple[int, ...]:
    period = tuple(period)
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period[:d] * (p // d) == period:
            return period[:d]
    return period


def canonicalize(w: CFWord) -> CFWord:
    """最小周期 + 最短预周期；幂等"""
    period = list(minimal_period(w.period))
    head = list(w.head)
    # 预周期末项与周期末项相同则可吸收进周期（周期右旋）
    while head and head[-1] == period[-1]:
        head.pop()
        period = period[-1:] + period[:-1]
    return CFWord(tuple(head), tuple(period))


def tail(w: CFWord, k: int) -> CFWord:
    """ξ_k = [a_k, a_{k+1}, ...]；k ≥ h 时为纯周期"""
    if k < 0:
        raise ValueError(f"tail index must be >= 0, got {k}")
    if k < w.h:
        return canonicalize(CFWord(w.head[k:], w.period))
    r = (k - w.h) % w.p
    return canonicalize(CFWord((), w.period[r:] + w.period[:r]))
