"""Capped-precision p-adic arithmetic and the finite-level fermionic integral."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler.exactq import XPoly
from qeuler.padic import (
    PAdicNum,
    QChoice,
    check_shift_identity_finite,
    convergence_report,
    fermionic_integral_partial,
    is_odd_prime,
)

QC3 = QChoice(3, Fraction(4))  # q = 1 + 3
QC5 = QChoice(5, Fraction(6))  # q = 1 + 5


# ---------------------------------------------------------------------------
# PAdicNum construction and arithmetic
# ---------------------------------------------------------------------------

def test_from_rational_half_mod_81():
    x = PAdicNum.from_rational(Fraction(1, 2), 3, 4)
    assert x.valuation == 0
    assert x.residue() == 41  # 2*41 = 82 = 1 mod 81


def test_from_rational_zero_flagged():
    z = PAdicNum.from_rational(0, 3, 6)
    assert z.is_zero_at_prec and z.valuation is None
    assert z.valuation_floor == 6


def test_from_rational_valuations():
    assert PAdicNum.from_rational(9, 3, 5).valuation == 2
    assert PAdicNum.from_rational(Fraction(1, 3), 3, 5).valuation == -1
    # value beyond precision collapses to the zero flag
    assert PAdicNum.from_rational(3**7, 3, 5).is_zero_at_prec


def test_add_zero_keeps_value_and_precision():
    x = PAdicNum.from_rational(7, 3, 6)
    z = PAdicNum.zero_at(3, 6)
    s = x + z
    assert s == x and s.prec == 6


def test_mul_valuations_add():
    p = PAdicNum.from_rational(3, 3, 5)
    prod = p * p
    assert prod.valuation == 2 and prod.unit == 1


def test_div_negates_valuation():
    one = PAdicNum.from_rational(1, 3, 5)
    v1 = PAdicNum.from_rational(-3, 3, 5)  # 1 - q for q = 4
    assert (one / v1).valuation == -1


def test_prime_mismatch_rejected():
    with pytest.raises(ValueError, match="prime mismatch"):
        PAdicNum.from_rational(1, 3, 5) + PAdicNum.from_rational(1, 5, 5)


def test_division_by_flagged_zero():
    with pytest.raises(ZeroDivisionError):
        PAdicNum.from_rational(1, 3, 5) / PAdicNum.zero_at(3, 5)


def test_even_or_composite_prime_rejected():
    assert not is_odd_prime(2) and not is_odd_prime(9) and is_odd_prime(97)
    with pytest.raises(ValueError, match="odd prime"):
        PAdicNum.from_rational(1, 4, 5)
    with pytest.raises(ValueError):
        QChoice(9, Fraction(10))


def test_qchoice_requires_q_near_one():
    with pytest.raises(ValueError, match="1 - q"):
        QChoice(3, Fraction(2))  # |1-2|_3 = 1
    QChoice(3, Fraction(1))  # q = 1 is admissible (|0|_p < 1)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def _coprime_to(p):
    return rationals.filter(lambda r: r.denominator % p != 0)


@settings(max_examples=60, deadline=None)
@given(_coprime_to(3), _coprime_to(3))
def test_from_rational_is_ring_homomorphism(a, b):
    K = 10
    fa = PAdicNum.from_rational(a, 3, K)
    fb = PAdicNum.from_rational(b, 3, K)
    assert fa + fb == PAdicNum.from_rational(a + b, 3, K)
    assert fa - fb == PAdicNum.from_rational(a - b, 3, K)
    assert fa * fb == PAdicNum.from_rational(a * b, 3, K)


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals)
def test_ring_laws_mod_pK(a, b, c):
    K = 9
    xs = [PAdicNum.from_rational(v, 5, K) for v in (a, b, c)]
    x, y, z = xs
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


def test_op_precision_honesty_seeded():
    # every claimed digit must match the exact rational result, div included
    import random

    rng = random.Random(99)
    for _ in range(800):
        p = rng.choice([3, 5, 7])
        a = Fraction(rng.randint(-200, 200), rng.randint(1, 60))
        b = Fraction(rng.randint(-200, 200), rng.randint(1, 60))
        xa = PAdicNum.from_rational(a, p, rng.randint(2, 10))
        xb = PAdicNum.from_rational(b, p, rng.randint(2, 10))
        for got, exact in (
            (xa + xb, a + b),
            (xa - xb, a - b),
            (xa * xb, a * b),
        ):
            assert got == PAdicNum.from_rational(exact, p, got.prec)
        if b != 0 and not xb.is_zero_at_prec:
            got = xa / xb
            assert got == PAdicNum.from_rational(a / b, p, got.prec)


@settings(max_examples=60, deadline=None)
@given(rationals.filter(bool), rationals.filter(bool))
def test_valuation_rules(a, b):
    K = 12
    x = PAdicNum.from_rational(a, 3, K)
    y = PAdicNum.from_rational(b, 3, K)
    prod = x * y
    if not prod.is_zero_at_prec:
        assert prod.valuation == x.valuation + y.valuation
    s = x + y
    assert s.valuation_floor >= min(x.valuation_floor, y.valuation_floor)  # ultrametric


# ---------------------------------------------------------------------------
# fermionic partial integral
# ---------------------------------------------------------------------------

def test_integral_of_constant_is_exact():
    for qc in (QC3, QC5):
        for N in (1, 2, 3):
            got = fermionic_integral_partial(XPoly.one(), qc, N)
            diff = got - PAdicNum.from_rational(1, qc.p, got.prec)
            assert diff.is_zero_at_prec


def test_integral_scales_constants():
    got = fermionic_integral_partial(XPoly.from_fractions((Fraction(3, 2),)), QC3, 2)
    want = PAdicNum.from_rational(Fraction(3, 2), 3, got.prec)
    assert (got - want).is_zero_at_prec


def test_integral_moment1_approaches_exact_value():
    # exact first moment is -q/(1+q) = -4/5 at q = 4
    target = PAdicNum.from_rational(Fraction(-4, 5), 3, 12)
    vals = []
    for N in (2, 4, 6):
        got = fermionic_integral_partial(XPoly((0, 1)), QC3, N)
        vals.append((got - target).valuation_floor)
    assert vals == sorted(vals) and vals[-1] >= vals[0] + 2


def test_integral_rejects_p_in_denominator():
    bad = XPoly.from_fractions((Fraction(1, 3),))
    with pytest.raises(ValueError, match="divisible by p"):
        fermionic_integral_partial(bad, QC3, 1)


def test_integral_rejects_oversized_level():
    with pytest.raises(ValueError, match="budget"):
        fermionic_integral_partial(XPoly.one(), QC3, 25)


def test_convergence_report_monotone_growth():
    # (p=3, n=3) is excluded: its observed valuations dip at N=2 (see the
    # dedicated test below); every other desk-scale cell is monotone.
    for qc, levels in ((QC3, range(1, 7)), (QC5, range(1, 5))):
        for n in range(0, 7):
            if (qc.p, n) == (3, 3):
                continue
            rep = convergence_report(n, qc, 12, levels)
            assert rep.ok, (qc.p, n, rep.rows)
            if n == 0:
                assert all(r.exact for r in rep.rows)


def _exact_defect_valuation(n: int, q: Fraction, p: int, N: int) -> int:
    """Independent oracle: the level-N defect computed in plain Fractions."""
    count = p**N
    partial = (1 + q) / (1 + q**count) * sum(
        Fraction(x) ** n * (-q) ** x for x in range(count)
    )
    exact_rows = {
        1: -q / (1 + q),
        3: (-q + 4 * q**2 - q**3) / (1 + q) ** 3,
    }
    diff = partial - exact_rows[n]
    v = 0
    num, den = diff.numerator, diff.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def test_convergence_p3_n3_observed_dip():
    # The third moment at p=3, q=4 really is non-monotone at N=1 -> 2: the
    # coarsest partial sum cancels accidentally above trend.  Pinned against
    # the Fraction oracle so any change in the integral pipeline is caught.
    rep = convergence_report(3, QC3, 12, range(1, 7))
    got = [r.valuation for r in rep.rows]
    assert got == [5, 4, 5, 6, 7, 8]
    assert got == [_exact_defect_valuation(3, Fraction(4), 3, N) for N in range(1, 7)]
    assert not rep.monotone and rep.gain >= 2


def test_convergence_rows_sorted_by_level():
    rep = convergence_report(2, QC3, 12, (3, 1, 2))
    assert [r.N for r in rep.rows] == [1, 2, 3]


# ---------------------------------------------------------------------------
# shift identity at finite level
# ---------------------------------------------------------------------------

def test_shift_identity_constants_exact():
    res = check_shift_identity_finite(XPoly.one(), 1, QC3, 12, 3)
    assert res.exact


def test_shift_identity_defect_grows_odd_n():
    for n, f in ((1, XPoly((0, 1))), (3, XPoly((0, 0, 1)))):
        vals = [check_shift_identity_finite(f, n, QC3, 12, N).valuation for N in (1, 3, 5)]
        assert vals == sorted(vals) and vals[-1] > vals[0]


def test_shift_identity_even_n_reported_only():
    # even n probed numerically; just record that a defect valuation comes back
    res = check_shift_identity_finite(XPoly((0, 1)), 2, QC3, 12, 3)
    assert isinstance(res.valuation, int)


def test_shift_identity_rejects_bad_args():
    with pytest.raises(ValueError):
        check_shift_identity_finite(XPoly.one(), 0, QC3, 12, 3)
    with pytest.raises(ValueError):
        check_shift_identity_finite(XPoly.one(), 1, QC3, 12, 0)
