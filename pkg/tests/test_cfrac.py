import itertools
from fractions import Fraction

import numpy as np
import pytest

from kasner_resonance.core.cfrac import (
    CFWord,
    CoeffVector,
    Family,
    canonicalize,
    cf_value,
    closed_form_coeffs,
    closed_form_family,
    convergents,
    layout_sign,
    minimal_period,
    quad_coeffs,
    raw_quad_coeffs,
    specialized_coeffs,
    tail,
)
from kasner_resonance.core.errors import HeadOutOfRange, InvalidWord, WordParseError
from kasner_resonance.core.exactfield import QuadExt


def W(text):
    return CFWord.parse(text)


class TestParsing:
    def test_parse_head_and_period(self):
        w = W("5;3,2")
        assert w.head == (5,)
        assert w.period == (3, 2)
        assert str(w) == "5;3,2"
        assert w.expanded() == "[5,3,2,3,2,...]"

    def test_parse_pure_period(self):
        w = W("2, 3")
        assert w.is_purely_periodic
        assert w.period == (2, 3)

    def test_parse_long_head(self):
        w = W("1,4;2,3")
        assert w.h == 2 and w.p == 2 and w.g == 4
        assert w.prefix(6) == [1, 4, 2, 3, 2, 3]

    @pytest.mark.parametrize("text,position", [
        ("", 0),
        ("1;a", 2),
        ("3;2;1", 3),
        ("1,;2", 2),
        ("1;0", 2),
        ("1; 2,x", 5),
    ])
    def test_parse_error_position(self, text, position):
        with pytest.raises(WordParseError) as exc:
            CFWord.parse(text)
        assert exc.value.position == position

    def test_invalid_entries(self):
        with pytest.raises(InvalidWord):
            CFWord((1,), ())
        with pytest.raises(InvalidWord):
            CFWord((0,), (2,))


class TestConvergents:
    def test_sqrt2(self):
        conv = convergents(W("1;2"), 2)
        assert [conv.num(k) for k in range(3)] == [1, 3, 7]
        assert [conv.den(k) for k in range(3)] == [1, 2, 5]
        assert conv.num(-1) == 1 and conv.den(-2) == 1

    def test_determinant_identity(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            period = tuple(int(x) for x in rng.integers(1, 9, size=rng.integers(1, 5)))
            w = CFWord((int(rng.integers(1, 9)),), period)
            assert convergents(w, 12).check_determinant()


class TestQuadCoeffs:
    def test_golden_ratio(self):
        assert quad_coeffs(W("1")).as_tuple() == (-1, -1, 1)

    def test_sqrt2_layout(self):
        assert quad_coeffs(W("1;2")).as_tuple() == (-2, 0, 1)

    def test_residue_vanishes(self):
        for text in ["1", "2,3", "1;3,2", "5;2,3", "1,4;2,3", "2;1,1,2", "3;1,2,3,4"]:
            w = W(text)
            u = cf_value(w)
            assert raw_quad_coeffs(w).evaluate(u).is_zero()
            assert quad_coeffs(w).evaluate(u).is_zero()

    def test_purely_periodic_leading_coefficient_positive(self):
        for period in [(1,), (2, 3), (1, 1, 2), (4, 1, 3, 2)]:
            assert quad_coeffs(CFWord((), period)).c3 > 0

    def test_specialized_formulas_match_general(self):
        for text in ["2,3", "1;2", "3;3,2", "2;1,1,2", "1;1,2,3,4"]:
            w = W(text)
            assert specialized_coeffs(w) == raw_quad_coeffs(w)

    def test_specialized_requires_short_head(self):
        with pytest.raises(ValueError):
            specialized_coeffs(W("1,4;2,3"))

    def test_layout_sign(self):
        assert layout_sign(W("1;2")) == -1
        assert layout_sign(W("1;2,3")) == 1
        assert layout_sign(W("1;1,1,2")) == -1
        assert layout_sign(W("1;1,1,2,2")) == 1
        assert layout_sign(W("2,3")) == 1

    def test_cf_value(self):
        assert cf_value(W("1")) == QuadExt.from_parts(0.5, 0.5, 5)
        assert cf_value(W("1;2")) == QuadExt.sqrt(2)
        assert cf_value(W("2;2")) == 1 + QuadExt.sqrt(2)

    def test_cf_value_long_head_picks_true_root(self):
        # 共轭根 (97-sqrt(13))/58 同样落在 [1, 2)
        u = cf_value(W("1,1,2,1;3"))
        assert u == QuadExt.from_parts(Fraction(97, 58), Fraction(1, 58), 13)
        assert u.pretty() == "(97+sqrt(13))/58"
        assert float(u) == pytest.approx(1.734578, abs=1e-6)

    def test_cf_value_lies_between_convergents(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            head = tuple(int(x) for x in rng.integers(1, 6, size=rng.integers(3, 8)))
            period = tuple(int(x) for x in rng.integers(1, 6, size=rng.integers(1, 4)))
            w = CFWord(head, period)
            u = cf_value(w)
            k = w.g + 3
            conv = convergents(w, k + 1)
            lo = Fraction(conv.num(k), conv.den(k))
            hi = Fraction(conv.num(k + 1), conv.den(k + 1))
            assert (u - lo).sign() * (u - hi).sign() < 0, w


class TestClosedForms:
    @pytest.mark.parametrize("family,m,params,expected", [
        (Family.CONSTANT, 2, (3,), (-3, -1, 1)),
        (Family.CONSTANT, 1, (1,), (-1, -1, 1)),
        (Family.TWO_PERIODIC, 1, (3, 2), (5, 0, -3)),
        (Family.TWO_PERIODIC, 1, (2, 3), (7, -2, -2)),
        (Family.THREE_PERIODIC, 1, (1, 2, 1), (-2, -4, 3)),
        (Family.THREE_PERIODIC, 2, (3, 3, 3), (-30, -10, 10)),
    ])
    def test_values(self, family, m, params, expected):
        assert closed_form_coeffs(family, m, params).as_tuple() == expected

    def test_head_out_of_range(self):
        with pytest.raises(HeadOutOfRange):
            closed_form_coeffs(Family.TWO_PERIODIC, 4, (2, 3))
        assert closed_form_coeffs(Family.TWO_PERIODIC, 4, (2, 3), allow_preperiodic=True).as_tuple() == (-5, 10, -2)

    def test_family_recognition(self):
        assert closed_form_family(W("2;3,3,2")) == (Family.THREE_PERIODIC, 2, (3, 3, 2))
        assert closed_form_family(W("2,3")) is None

    def test_closed_form_matches_recursion(self):
        """闭式公式与一般递推约化后一致（项 ≤ 12）"""
        for a in range(1, 13):
            for m in range(1, a + 1):
                w = CFWord((m,), (a,))
                assert closed_form_coeffs(Family.CONSTANT, m, (a,)).canonical() == quad_coeffs(w).canonical()
        for a, b in itertools.product(range(1, 13), repeat=2):
            for m in range(1, b + 1):
                w = CFWord((m,), (a, b))
                closed = closed_form_coeffs(Family.TWO_PERIODIC, m, (a, b))
                assert closed.canonical() == quad_coeffs(w).canonical()
                assert closed == quad_coeffs(w, reduce=False)

    @pytest.mark.slow
    def test_three_periodic_closed_form_matches_recursion(self):
        for x, y, z in itertools.product(range(1, 13), repeat=3):
            for m in range(1, z + 1):
                w = CFWord((m,), (x, y, z))
                closed = closed_form_coeffs(Family.THREE_PERIODIC, m, (x, y, z))
                assert closed == quad_coeffs(w, reduce=False)


class TestCoeffVector:
    def test_reduce_and_canonical(self):
        vec, g = CoeffVector(-4, 6, -2).reduce()
        assert g == 2
        assert vec.as_tuple() == (-2, 3, -1)
        assert CoeffVector(-4, 6, -2).canonical().as_tuple() == (2, -3, 1)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            CoeffVector(0, 0, 0)


class TestWordHelpers:
    def test_minimal_period(self):
        assert minimal_period((2, 3, 2, 3)) == (2, 3)
        assert minimal_period((1, 1, 1)) == (1,)
        assert minimal_period((1, 1, 2)) == (1, 1, 2)

    def test_canonicalize_absorbs_head(self):
        assert canonicalize(W("3;2,3")) == W("3,2")
        assert canonicalize(W("2;3,2")) == W("2,3")
        assert canonicalize(W("1;2")) == W("1;2")
        assert canonicalize(W("1;1,1")) == W("1")

    def test_canonicalize_idempotent_and_value_preserving(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            head = tuple(int(x) for x in rng.integers(1, 5, size=rng.integers(0, 7)))
            period = tuple(int(x) for x in rng.integers(1, 5, size=rng.integers(1, 4)))
            w = CFWord(head, period)
            c = canonicalize(w)
            assert canonicalize(c) == c
            assert cf_value(c) == cf_value(w)

    def test_tail(self):
        w = W("5;2,3")
        assert tail(w, 0) == w
        assert tail(w, 1) == W("2,3")
        assert tail(w, 2) == W("3,2")
