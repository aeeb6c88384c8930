"""q-Euler numbers/polynomials with weight 0, Frobenius-Euler numbers, and
the symbolic identity suite.

Everything is exact: sequence entries are canonical ``QRatFn`` values, so
an identity "holds" exactly when both sides have identical representations.

Two independent derivation routes exist on purpose and are never merged:

* weight-0 numbers come from the recurrence
  ``(1+q)*E_n = -q * sum_{k<n} C(n,k) E_k`` while Frobenius-Euler numbers
  use ``H_n = (sum_{k<n} C(n,k) H_k) / (u-1)``; their agreement at
  u = -1/q is a verified identity, not a definition.
* the weighted numbers are produced both by their recurrence and by the
  alternating closed-form sum; ``q_euler_numbers_weighted`` cross-checks
  the two before returning.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Optional

from .exactq import (
    QPoly,
    QRatFn,
    XPoly,
    cyclotomic,
    one_plus_q_power_factors,
    q_integer,
)

ZERO = QRatFn.zero()
ONE = QRatFn.one()
Q = QRatFn.q()
TWO_Q = QRatFn.from_poly(q_integer(2))  # [2]_q = 1 + q
MINUS_Q_INV = QRatFn(QPoly((-1,)), QPoly((0, 1)))  # -1/q, the Frobenius parameter


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QEulerSeq:
    """Weight-0 q-Euler numbers E_0..E_n as canonical rational functions."""

    entries: tuple[QRatFn, ...]

    def __getitem__(self, n: int) -> QRatFn:
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class FrobeniusSeq:
    """Frobenius-Euler numbers H_0(u)..H_n(u) for a fixed parameter u."""

    u: QRatFn
    entries: tuple[QRatFn, ...]

    def __getitem__(self, n: int) -> QRatFn:
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)


@lru_cache(maxsize=None)
def _q_euler_entries(n_max: int) -> tuple[QRatFn, ...]:
    if n_max == 0:
        return (ONE,)
    prev = _q_euler_entries(n_max - 1)
    n = n_max
    s = ZERO
    for k in range(n):
        s = s + prev[k] * comb(n, k)
    return prev + (-(Q * s) / TWO_Q,)


def _warm(cache_fn, n_max: int, *args) -> None:
    # fill the prefix iteratively so no request recurses more than one level
    for i in range(n_max + 1):
        cache_fn(*args, i)


def q_euler_numbers(n_max: int) -> QEulerSeq:
    """Weight-0 q-Euler numbers via (1+q)*E_n = -q * sum_{k<n} C(n,k) E_k, E_0 = 1.

    Entry n is also the n-th moment of the fermionic measure; the padic
    module checks that numerically.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    _warm(_q_euler_entries, n_max)
    return QEulerSeq(_q_euler_entries(n_max))


@lru_cache(maxsize=None)
def _frobenius_entries(u: QRatFn, n_max: int) -> tuple[QRatFn, ...]:
    if n_max == 0:
        return (ONE,)
    prev = _frobenius_entries(u, n_max - 1)
    n = n_max
    s = ZERO
    for k in range(n):
        s = s + prev[k] * comb(n, k)
    return prev + (s / (u - ONE),)


def frobenius_numbers(u: QRatFn, n_max: int) -> FrobeniusSeq:
    """Frobenius-Euler numbers: H_0 = 1, H_n = (sum_{k<n} C(n,k) H_k)/(u-1).

    The recurrence is the coefficient identity of (1-u)/(exp(t)-u); the
    parameter u = 1 makes it singular and is rejected.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if u == ONE:
        raise ValueError("singular Frobenius parameter u = 1")
    _warm(_frobenius_entries, n_max, u)
    return FrobeniusSeq(u, _frobenius_entries(u, n_max))


# ---------------------------------------------------------------------------
# weighted sequences, two independent routes
# ---------------------------------------------------------------------------
#
# For integer weight a >= 1 the denominators are structurally known:
# products of (1 + q^(a*k+1)) factors plus, for the closed form, powers of
# (1-q) and [a]_q.  All of those split into cyclotomic polynomials, so the
# canonical form is reached by trial-dividing the numerator by each known
# cyclotomic factor -- no large generic gcd is ever needed.  The numerators
# have integer coefficients throughout, so this entire path runs on plain
# int lists and converts to QPoly only at the very end.

def _itrim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _ishift_add(cs: list[int], m: int) -> list[int]:
    """cs * (1 + q^m) on ascending int coefficients."""
    out = cs + [0] * m
    for i, c in enumerate(cs):
        out[i + m] += c
    return out


def _imul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _idivmod_monic(A: "list[int] | tuple[int, ...]", B: "tuple[int, ...]") -> tuple[list[int], list[int]]:
    """Long division by a monic integer polynomial, int arithmetic only."""
    rem = list(A)
    if len(rem) < len(B):
        return [], _itrim(rem)
    d = len(B) - 1
    quot = [0] * (len(rem) - d)
    while len(rem) - 1 >= d:
        c = rem.pop()
        if c:
            k = len(rem) - d
            quot[k] = c
            for i in range(d):
                rem[k + i] -= c * B[i]
    return quot, _itrim(rem)


@lru_cache(maxsize=None)
def _icyclotomic(d: int) -> tuple[int, ...]:
    return tuple(int(c) for c in cyclotomic(d).coeffs)


def _reduce_over_cyclotomics(num: list[int], factors: Counter) -> QRatFn:
    _itrim(num)
    if not num:
        return ZERO
    remaining: list[tuple[int, int]] = []
    for d in sorted(factors):
        e = factors[d]
        phi = _icyclotomic(d)
        while e > 0:
            quot, rem = _idivmod_monic(num, phi)
            if rem:
                break
            num = quot
            e -= 1
        if e:
            remaining.append((d, e))
    den = [1]
    for d, e in remaining:
        phi = list(_icyclotomic(d))
        for _ in range(e):
            den = _imul(den, phi)
    return QRatFn._raw(QPoly(num), QPoly(den))


def _check_weight(alpha: int, minimum: int) -> None:
    if not isinstance(alpha, int) or isinstance(alpha, bool) or alpha < minimum:
        raise ValueError(f"weight must be an integer >= {minimum}, got {alpha!r}")


@lru_cache(maxsize=None)
def _weighted_numerators(alpha: int, n_max: int) -> tuple[tuple[int, ...], ...]:
    """Unreduced numerators N_n with N_n / prod_{k<=n} (1+q^(alpha*k+1)) = E^(alpha)_n."""
    if n_max == 0:
        return ((1,),)
    nums = _weighted_numerators(alpha, n_max - 1)
    n = n_max
    # Horner over the sparse factors f_j = 1 + q^(alpha*j+1):
    # S = sum_{k<n} C(n,k) q^(alpha*k) N_k * prod_{j=k+1..n-1} f_j,
    # built ascending so the k-th term picks up exactly the factors j > k.
    s = list(nums[0])
    for k in range(1, n):
        s = _ishift_add(s, alpha * k + 1)
        c = comb(n, k)
        sh = alpha * k
        term = nums[k]
        need = sh + len(term)
        if len(s) < need:
            s.extend([0] * (need - len(s)))
        for i, tc in enumerate(term):
            s[sh + i] += c * tc
    return nums + (tuple([0] + [-c for c in s]),)  # N_n = -q * S


def weighted_recurrence(alpha: int, n_max: int) -> list[QRatFn]:
    """Weight-alpha numbers from E_n*(1+q^(alpha*n+1)) = -q*sum_{k<n} C(n,k) q^(alpha*k) E_k."""
    _check_weight(alpha, 0)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if alpha == 0:
        _warm(_q_euler_entries, n_max)
        return list(_q_euler_entries(n_max))
    _warm(_weighted_numerators, n_max, alpha)
    nums = _weighted_numerators(alpha, n_max)
    out = []
    factors: Counter = Counter()
    for n in range(n_max + 1):
        if n > 0:
            factors.update(one_plus_q_power_factors(alpha * n + 1))
        out.append(_reduce_over_cyclotomics(list(nums[n]), factors))
    return out


def weighted_closed_form(alpha: int, n: int) -> QRatFn:
    """Weight-alpha number from the alternating closed-form sum,

        [2]_q / ((1-q)^n [alpha]_q^n) * sum_{l=0..n} C(n,l)(-1)^l / (1+q^(alpha*l+1)).
    """
    _check_weight(alpha, 1)
    if n < 0:
        raise ValueError("n must be >= 0")
    ms = [alpha * l + 1 for l in range(n + 1)]
    d_all = [1]
    for m in ms:
        d_all = _ishift_add(d_all, m)
    num = [0] * len(d_all)
    for l, m in enumerate(ms):
        quot, rem = _idivmod_monic(d_all, (1,) + (0,) * (m - 1) + (1,))
        if rem:
            raise ArithmeticError("structural factor failed to divide")
        c = comb(n, l) * (-1) ** l
        for i, qc in enumerate(quot):
            num[i] += c * qc
    num = _ishift_add(num, 1)  # times [2]_q
    if n % 2:
        num = [-c for c in num]  # sign from (1-q)^n = (-1)^n (q-1)^n
    factors: Counter = Counter()
    for m in ms:
        factors.update(one_plus_q_power_factors(m))
    factors[1] += n
    for d in range(2, alpha + 1):
        if alpha % d == 0:
            factors[d] += n
    return _reduce_over_cyclotomics(num, factors)


def q_euler_numbers_weighted(alpha: int, n_max: int) -> list[QRatFn]:
    """Weight-alpha numbers computed by both independent routes.

    The recurrence and the closed form must produce identical canonical
    values; a mismatch would mean a kernel bug and raises.
    """
    _check_weight(alpha, 1)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    rec = weighted_recurrence(alpha, n_max)
    for n in range(n_max + 1):
        closed = weighted_closed_form(alpha, n)
        if closed != rec[n]:
            raise ArithmeticError(
                f"weighted routes disagree at alpha={alpha}, n={n}: "
                f"{rec[n]} vs {closed}"
            )
    return rec


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def q_euler_polynomial(n: int) -> XPoly:
    """E_n(x) = sum_l C(n,l) E_l x^(n-l); monic of degree n, constant term E_n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    e = _q_euler_entries(n)
    return XPoly([e[n - j] * comb(n, j) for j in range(n + 1)])


def frobenius_polynomial(u: QRatFn, n: int) -> XPoly:
    """H_n(u, x) = sum_l C(n,l) H_l(u) x^(n-l)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if u == ONE:
        raise ValueError("singular Frobenius parameter u = 1")
    h = _frobenius_entries(u, n)
    return XPoly([h[n - j] * comb(n, j) for j in range(n + 1)])


def classical_euler_numbers(n_max: int) -> list[Fraction]:
    """Classical Euler numbers E_n at q = 1: E_0 = 1, 2*E_n = -sum_{k<n} C(n,k) E_k."""
    out = [Fraction(1)]
    for n in range(1, n_max + 1):
        s = sum(comb(n, k) * out[k] for k in range(n))
        out.append(Fraction(-s, 2))
    return out


# ---------------------------------------------------------------------------
# identity verification
# ---------------------------------------------------------------------------

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class IdentityInstance:
    """One checked parameter instance of an identity.

    ``left``/``right`` hold both sides (canonical QRatFn or XPoly) as a
    witness whenever the verdict is ``fail``; an instance is in order when
    its verdict matches its expectation (some identities are *supposed*
    to fail, e.g. the k=0 erratum and the thm5 hypothesis probe).
    """

    params: tuple
    verdict: str
    expected: str = PASS
    note: str = ""
    left: Optional[object] = None
    right: Optional[object] = None

    @property
    def ok(self) -> bool:
        return self.verdict == self.expected


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    instances: tuple[IdentityInstance, ...]

    @property
    def ok(self) -> bool:
        return all(inst.ok for inst in self.instances)

    @property
    def counts(self) -> tuple[int, int]:
        """(in-order, total)."""
        good = sum(1 for inst in self.instances if inst.ok)
        return good, len(self.instances)

    def failures(self) -> list[IdentityInstance]:
        return [inst for inst in self.instances if not inst.ok]


def _instance(params: tuple, left, right, expected: str = PASS, note: str = "") -> IdentityInstance:
    verdict = PASS if left == right else FAIL
    if verdict == FAIL:
        return IdentityInstance(params, verdict, expected, note, left, right)
    return IdentityInstance(params, verdict, expected, note)


def _check_thm1(n_max: int, _m_max: int) -> list[IdentityInstance]:
    e = _q_euler_entries(n_max)
    h = _frobenius_entries(MINUS_Q_INV, n_max)
    return [_instance((n,), e[n], h[n]) for n in range(n_max + 1)]


def _check_thm2(n_max: int, _m_max: int) -> list[IdentityInstance]:
    return [
        _instance((n,), q_euler_polynomial(n), frobenius_polynomial(MINUS_Q_INV, n))
        for n in range(n_max + 1)
    ]


def _alternating_power_qpoly(n: int, m: int) -> QPoly:
    """sum_{l=0..n-1} (-1)^l l^m q^l with the 0^0 = 1 convention."""
    return QPoly([Fraction((-1) ** l * l**m) for l in range(n)])


def _check_cor3(n_max: int, m_max: int) -> list[IdentityInstance]:
    out = []
    for n in range(1, n_max + 1, 2):
        qn = QRatFn.from_poly(QPoly.monomial(n))
        for m in range(m_max + 1):
            h_poly = frobenius_polynomial(MINUS_Q_INV, m)
            left = qn * h_poly.eval(QRatFn.const(n)) + _frobenius_entries(MINUS_Q_INV, m)[m]
            right = TWO_Q * QRatFn.from_poly(_alternating_power_qpoly(n, m))
            out.append(_instance((n, m), left, right))
    return out


def _check_thm4(n_max: int, _m_max: int) -> list[IdentityInstance]:
    out = []
    for n in range(n_max + 1):
        poly = q_euler_polynomial(n)
        left = Q * poly.eval(ONE) + _q_euler_entries(n)[n]
        right = TWO_Q if n == 0 else ZERO
        out.append(_instance((n,), left, right))
    return out


def _check_thm5(n_max: int, _m_max: int) -> list[IdentityInstance]:
    out = []
    # n = 0 sits outside the hypothesis (n >= 1): both sides are computable
    # and must differ, which the suite asserts as an expected failure.
    left0 = Q * Q * q_euler_polynomial(0).eval(QRatFn.const(2))
    right0 = Q + Q * Q + ONE
    out.append(
        _instance(
            (0,),
            left0,
            right0,
            expected=FAIL,
            note="n=0 excluded by the n >= 1 hypothesis; inequality confirmed",
        )
    )
    for n in range(1, n_max + 1):
        left = Q * Q * q_euler_polynomial(n).eval(QRatFn.const(2))
        right = Q + Q * Q + _q_euler_entries(n)[n]
        out.append(_instance((n,), left, right))
    return out


def _check_thm6(n_max: int, _m_max: int) -> list[IdentityInstance]:
    one_minus_x = XPoly((ONE, -ONE))
    out = []
    for n in range(n_max + 1):
        poly = q_euler_polynomial(n)
        left = poly.map_coeffs(QRatFn.subst_q_inverse).compose(one_minus_x)
        right = poly if n % 2 == 0 else -poly
        out.append(_instance((n,), left, right))
    return out


def _check_thm7(n_max: int, _m_max: int) -> list[IdentityInstance]:
    out = []
    for n in range(1, n_max + 1):
        e = _q_euler_entries(n)
        left = ZERO
        for k in range(n + 1):
            left = left + e[k] * ((-1) ** k * comb(n, k))
        right = ONE + Q + Q * Q * e[n].subst_q_inverse()
        out.append(_instance((n,), left, right))
    return out


def _check_k0_remark(n_max: int, _m_max: int) -> list[IdentityInstance]:
    """The k=0 shortcut sum_l C(n,l)(-1)^l E_l = q^2 E_{n,1/q}.

    It drops the 1+q constant that thm7 keeps, so it contradicts thm7 and
    every instance is expected to fail; witnesses carry both canonical
    sides.
    """
    out = []
    for n in range(1, n_max + 1):
        e = _q_euler_entries(n)
        left = ZERO
        for l in range(n + 1):
            left = left + e[l] * ((-1) ** l * comb(n, l))
        right = Q * Q * e[n].subst_q_inverse()
        out.append(_instance((n,), left, right, expected=FAIL, note="contradicts thm7"))
    return out


def _check_classical(n_max: int, _m_max: int) -> list[IdentityInstance]:
    e = _q_euler_entries(n_max)
    oracle = classical_euler_numbers(n_max)
    return [_instance((n,), e[n].eval(1), oracle[n]) for n in range(n_max + 1)]


def _check_weighted(n_max: int, _m_max: int) -> list[IdentityInstance]:
    out = []
    for alpha in (1, 2, 3):
        rec = weighted_recurrence(alpha, n_max)
        for n in range(n_max + 1):
            out.append(_instance((alpha, n), rec[n], weighted_closed_form(alpha, n)))
    return out


_CHECKS: dict[str, Callable[[int, int], list[IdentityInstance]]] = {
    "thm1": _check_thm1,
    "thm2": _check_thm2,
    "cor3": _check_cor3,
    "thm4": _check_thm4,
    "thm5": _check_thm5,
    "thm6": _check_thm6,
    "thm7": _check_thm7,
    "k0-remark": _check_k0_remark,
    "classical": _check_classical,
    "weighted": _check_weighted,
}

IDENTITY_IDS = tuple(_CHECKS)


def verify_identity(identity_id: str, n_max: int, m_max: int = 15) -> IdentityReport:
    """Check one identity over an explicit finite range.

    Both sides of every instance are built independently from the
    operations above and compared in canonical form; failures are data
    (witness attached), not errors.  ``m_max`` only affects ``cor3``.
    The Bernstein-moment identity ("thm8") lives in the bernstein module.
    """
    key = identity_id.lower()
    if key not in _CHECKS:
        raise ValueError(f"unknown identity {identity_id!r}; known: {sorted(_CHECKS)}")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if key != "weighted":
        _warm(_q_euler_entries, n_max)
    return IdentityReport(key, tuple(_CHECKS[key](n_max, m_max)))
