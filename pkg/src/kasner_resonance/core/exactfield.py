from __future__ import annotations
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence, Tuple, Union

import mpmath
from sympy import factorint

from .errors import (
    DivisionByZero,
    NegativeDiscriminant,
    RadicandMismatch,
    ZeroLeadingCoefficient,
)

# 有理数直接使用 Fraction：分母恒为正且每次运算后自动约分
Rational = Fraction
Scalar = Union[int, Fraction]

SEED_DPS = 50


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> Tuple[int, int]:
    """分解 n = s² · d，d 无平方因子"""
    if n < 0:
        raise ValueError(f"radicand must be non-negative, got {n}")
    if n == 0:
        return 0, 0
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    s, d = 1, 1
    for prime, exp in factorint(n).items():
        s *= prime ** (exp // 2)
        if exp % 2:
            d *= prime
    return s, d


def _sgn(x: Scalar) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=False)
class QuadExt:
    """实二次域元素 a + b·√D（精确表示）

    构造时即规范化：D 去除平方因子；D 为完全平方或 b = 0 时退化为纯有理数
    (b = 0, D = 0)。因此相等判断就是逐字段比较。
    """
    rat_part: Fraction
    irr_part: Fraction = Fraction(0)
    radicand: int = 0

    def __post_init__(self):
        a = Fraction(self.rat_part)
        b = Fraction(self.irr_part)
        d = int(self.radicand)
        if d < 0:
            raise ValueError(f"radicand must be non-negative, got {d}")
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        else:
            s, d = squarefree_split(d)
            b *= s
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        object.__setattr__(self, "rat_part", a)
        object.__setattr__(self, "irr_part", b)
        object.__setattr__(self, "radicand", d)

    @classmethod
    def from_parts(cls, a: Scalar, b: Scalar = 0, radicand: int = 0) -> "QuadExt":
        return cls(Fraction(a), Fraction(b), radicand)

    @classmethod
    def sqrt(cls, n: int) -> "QuadExt":
        return cls(Fraction(0), Fraction(1), n)

    @property
    def is_rational(self) -> bool:
        return self.radicand == 0

    # ---- 算术 ----

    @staticmethod
    def _coerce(other: Any) -> "QuadExt":
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other))
        return NotImplemented

    def _common_radicand(self, other: "QuadExt") -> int:
        if self.radicand == 0:
            return other.radicand
        if other.radicand == 0 or other.radicand == self.radicand:
            return self.radicand
        raise RadicandMismatch(
            f"cannot combine elements of Q(sqrt({self.radicand})) and Q(sqrt({other.radicand}))",
            {"left": self.radicand, "right": other.radicand},
        )

    def __add__(self, other: Any) -> "QuadExt":
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        d = self._common_radicand(y)
        return QuadExt(self.rat_part + y.rat_part, self.irr_part + y.irr_part, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.rat_part, -self.irr_part, self.radicand)

    def __sub__(self, other: Any) -> "QuadExt":
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other: Any) -> "QuadExt":
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return y - self

    def __mul__(self, other: Any) -> "QuadExt":
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        d = self._common_radicand(y)
        a1, b1, a2, b2 = self.rat_part, self.irr_part, y.rat_part, y.irr_part
        return QuadExt(a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1, d)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "QuadExt":
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        if y.is_zero():
            raise DivisionByZero("division by zero in quadratic field", {"dividend": self.pretty()})
        self._common_radicand(y)
        if y.is_rational:
            return QuadExt(self.rat_part / y.rat_part, self.irr_part / y.rat_part, self.radicand)
        # 乘以共轭有理化分母
        numerator = self * y.conjugate()
        norm = y.norm()
        return QuadExt(numerator.rat_part / norm, numerator.irr_part / norm, numerator.radicand)

    def __rtruediv__(self, other: Any) -> "QuadExt":
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return y / self

    def __pow__(self, exponent: int) -> "QuadExt":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = QuadExt(Fraction(1))
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.rat_part, -self.irr_part, self.radicand)

    def norm(self) -> Fraction:
        """N(a + b√D) = a² − b²D"""
        return self.rat_part ** 2 - self.irr_part ** 2 * self.radicand

    # ---- 符号与比较 ----

    def is_zero(self) -> bool:
        return self.rat_part == 0 and self.irr_part == 0

    def sign(self) -> int:
        """精确符号：比较 a² 与 b²D，不经过浮点"""
        a, b = self.rat_part, self.irr_part
        if b == 0:
            return _sgn(a)
        sa, sb = _sgn(a), _sgn(b)
        if sa >= 0 and sb >= 0:
            return 1
        if sa <= 0 and sb <= 0:
            return -1
        # 分量异号：绝对值较大的一项决定符号（D 非平方数，二者不可能相等）
        if a * a > b * b * self.radicand:
            return sa
        return sb

    def __eq__(self, other: Any) -> bool:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return (self.rat_part, self.irr_part, self.radicand) == (y.rat_part, y.irr_part, y.radicand)

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.rat_part)
        return hash((self.rat_part, self.irr_part, self.radicand))

    def _cmp(self, other: Any) -> int:
        y = self._coerce(other)
        if y is NotImplemented:
            return NotImplemented
        return (self - y).sign()

    def __lt__(self, other: Any) -> bool:
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other: Any) -> bool:
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other: Any) -> bool:
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other: Any) -> bool:
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __abs__(self) -> "QuadExt":
        return -self if self.sign() < 0 else self

    # ---- 取整 ----

    def _seed_dps(self) -> int:
        bits = max(
            abs(self.rat_part.numerator).bit_length(),
            self.rat_part.denominator.bit_length(),
            abs(self.irr_part.numerator).bit_length(),
            self.irr_part.denominator.bit_length(),
            self.radicand.bit_length(),
        )
        return SEED_DPS + bits // 3

    def approx(self, dps: int = SEED_DPS) -> mpmath.mpf:
        """十进制近似值，仅用于播种与交叉校验"""
        with mpmath.workdps(dps):
            value = mpmath.mpf(self.rat_part.numerator) / self.rat_part.denominator
            if self.radicand:
                value += (mpmath.mpf(self.irr_part.numerator) / self.irr_part.denominator) * mpmath.sqrt(self.radicand)
            return +value

    def __float__(self) -> float:
        return float(self.approx())

    def ceil_exact(self) -> int:
        """最小整数 n ≥ x；浮点估计只作起点，由精确符号判定确认"""
        with mpmath.workdps(self._seed_dps()):
            n = int(mpmath.ceil(self.approx(self._seed_dps())))
        while (self - n).sign() > 0:
            n += 1
        while (self - (n - 1)).sign() <= 0:
            n -= 1
        return n

    def floor_exact(self) -> int:
        """最大整数 n ≤ x"""
        with mpmath.workdps(self._seed_dps()):
            n = int(mpmath.floor(self.approx(self._seed_dps())))
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    # ---- 文本 ----

    def pretty(self) -> str:
        """形如 (-1+sqrt(13))/2 的文本表示"""
        if self.is_rational:
            return str(self.rat_part)
        q = math.lcm(self.rat_part.denominator, self.irr_part.denominator)
        p = self.rat_part.numerator * (q // self.rat_part.denominator)
        r = self.irr_part.numerator * (q // self.irr_part.denominator)
        root = f"sqrt({self.radicand})"
        irr = root if abs(r) == 1 else f"{abs(r)}*{root}"
        if p == 0:
            body = irr if r > 0 else f"-{irr}"
        else:
            body = f"{p}{'+' if r > 0 else '-'}{irr}"
        if q == 1:
            return body
        return f"({body})/{q}"

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"QuadExt({self.pretty()})"


def _as_quad(x: Union[QuadExt, Scalar]) -> QuadExt:
    return x if isinstance(x, QuadExt) else QuadExt(Fraction(x))


def arith(x: Union[QuadExt, Scalar], y: Union[QuadExt, Scalar], op: str) -> QuadExt:
    """op ∈ {add, sub, mul, div} 的精确域运算"""
    x, y = _as_quad(x), _as_quad(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown field operation: {op!r}")


def sign(x: Union[QuadExt, Scalar]) -> int:
    return _as_quad(x).sign()


def ceil_exact(x: Union[QuadExt, Scalar]) -> int:
    return _as_quad(x).ceil_exact()


def floor_exact(x: Union[QuadExt, Scalar]) -> int:
    return _as_quad(x).floor_exact()


def _triple(c: Any) -> Tuple[int, int, int]:
    if hasattr(c, "c1"):
        return int(c.c1), int(c.c2), int(c.c3)
    c1, c2, c3 = c
    return int(c1), int(c2), int(c3)


def quadratic_roots(c: Union[Sequence[int], Any]) -> Tuple[QuadExt, QuadExt]:
    """c3·u² + c2·u + c1 = 0 的两个实根（升序）"""
    c1, c2, c3 = _triple(c)
    if c3 == 0:
        raise ZeroLeadingCoefficient("leading coefficient c3 is zero", {"c": [c1, c2, c3]})
    disc = c2 * c2 - 4 * c1 * c3
    if disc < 0:
        raise NegativeDiscriminant(
            f"discriminant {disc} < 0: no real root", {"c": [c1, c2, c3], "discriminant": disc}
        )
    root = QuadExt.sqrt(disc)
    first = (root - c2) / (2 * c3)
    second = (-root - c2) / (2 * c3)
    return (first, second) if first <= second else (second, first)


def make_root(c: Union[Sequence[int], Any]) -> QuadExt:
    """较大的实根（Kasner参数满足 u ≥ 1）"""
    return quadratic_roots(c)[1]
