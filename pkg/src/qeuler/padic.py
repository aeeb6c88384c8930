"""Finite-precision p-adic arithmetic and the truncated fermionic q-integral.

``PAdicNum`` tracks an absolute precision K (the value is known mod p^K)
as a valuation plus a unit residue.  A value whose unit residue vanished
entirely is flagged as indistinguishable from zero at that precision --
never silently treated as exact zero.

The level-N partial integral is the finite alternating sum

    [2]_q / (1 + q^(p^N)) * sum_{x=0}^{p^N - 1} f(x) (-q)^x

evaluated exactly in modular arithmetic at working precision K + guard
digits.  Its defect against the exact symbolic moment shrinks p-adically
as N grows, which ``convergence_report`` measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import euler
from .exactq import BigRat, XPoly
from .kernels import alt_weighted_power_sum

GUARD_DIGITS = 4
DEFAULT_PRECISION = 12
_SUMMAND_CAP = 5_000_000  # desk-scale budget for p^N


def _vp(n: int, p: int) -> tuple[int, int]:
    """(v, u) with n = p^v * u, p not dividing u; n must be nonzero."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


@lru_cache(maxsize=None)
def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PAdicNum:
    """Element of Q_p known to absolute precision ``prec``.

    Nonzero: ``val`` (any integer, possibly negative) plus ``unit``, a
    unit residue mod p^(prec - val).  ``unit == 0`` marks a value
    indistinguishable from zero at this precision (valuation >= prec).
    Immutable.
    """

    __slots__ = ("prime", "prec", "val", "unit")

    prime: int
    prec: int
    val: int
    unit: int

    def __init__(self, prime: int, prec: int, val: int, unit: int):
        # prec may drop to 0 or below through division chains with negative
        # valuations; entry points that take a requested K validate K >= 1.
        if not is_odd_prime(prime):
            raise ValueError(f"p must be an odd prime, got {prime}")
        if unit:
            rel = prec - val
            if rel <= 0:
                val, unit = prec, 0
            else:
                unit %= prime**rel
                if unit == 0:
                    val = prec
                else:
                    extra, unit = _vp(unit, prime)
                    if extra:
                        val += extra
                        rel -= extra
                        if rel <= 0:
                            val, unit = prec, 0
                        else:
                            unit %= prime**rel
        if not unit:
            val = prec
        self.prime, self.prec, self.val, self.unit = prime, prec, val, unit

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero_at(cls, prime: int, prec: int) -> "PAdicNum":
        return cls(prime, prec, prec, 0)

    @classmethod
    def from_rational(cls, r: "BigRat | int", prime: int, prec: int) -> "PAdicNum":
        """Canonical p-adic expansion of an exact rational, mod p^prec."""
        r = Fraction(r)
        if r == 0:
            return cls.zero_at(prime, prec)
        vn, nu = _vp(r.numerator, prime)
        vd, du = _vp(r.denominator, prime)
        val = vn - vd
        rel = prec - val
        if rel <= 0:
            return cls.zero_at(prime, prec)
        mod = prime**rel
        unit = nu * pow(du, -1, mod) % mod
        return cls(prime, prec, val, unit)

    @classmethod
    def from_residue(cls, value: int, prime: int, prec: int) -> "PAdicNum":
        """Wrap an integer known mod p^prec."""
        value %= prime**prec
        if value == 0:
            return cls.zero_at(prime, prec)
        v, u = _vp(value, prime)
        return cls(prime, prec, v, u)

    # -- structure ---------------------------------------------------------

    @property
    def is_zero_at_prec(self) -> bool:
        """True when every tracked digit vanished (value is O(p^prec))."""
        return self.unit == 0

    @property
    def valuation(self) -> "int | None":
        """Exact valuation, or None when only the bound >= prec is known."""
        return None if self.unit == 0 else self.val

    @property
    def valuation_floor(self) -> int:
        """Best known lower bound for the valuation."""
        return self.prec if self.unit == 0 else self.val

    def residue(self) -> int:
        """The value mod p^prec for nonnegative-valuation elements."""
        if self.unit == 0:
            return 0
        if self.val < 0:
            raise ValueError("negative valuation has no integer residue")
        return self.unit * self.prime**self.val % self.prime**self.prec

    def with_precision(self, prec: int) -> "PAdicNum":
        """Truncate to a smaller absolute precision."""
        if prec >= self.prec:
            return self
        return PAdicNum(self.prime, prec, self.val, self.unit)

    # -- arithmetic ----------------------------------------------------------

    def _require_same_prime(self, other: "PAdicNum") -> None:
        if self.prime != other.prime:
            raise ValueError(f"prime mismatch: {self.prime} vs {other.prime}")

    def __add__(self, other: "PAdicNum") -> "PAdicNum":
        if not isinstance(other, PAdicNum):
            return NotImplemented
        self._require_same_prime(other)
        p = self.prime
        prec = min(self.prec, other.prec)
        vmin = min(self.val, other.val)
        window = prec - vmin
        if window <= 0:
            return PAdicNum.zero_at(p, prec)
        s = self.unit * p ** (self.val - vmin) + other.unit * p ** (other.val - vmin)
        return PAdicNum(p, prec, vmin, s % p**window)

    def __neg__(self) -> "PAdicNum":
        if self.unit == 0:
            return self
        rel = self.prec - self.val
        return PAdicNum(self.prime, self.prec, self.val, self.prime**rel - self.unit)

    def __sub__(self, other: "PAdicNum") -> "PAdicNum":
        if not isinstance(other, PAdicNum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "PAdicNum") -> "PAdicNum":
        if not isinstance(other, PAdicNum):
            return NotImplemented
        self._require_same_prime(other)
        p = self.prime
        rel = min(self.prec - self.val, other.prec - other.val)
        val = self.val + other.val
        if self.unit == 0 or other.unit == 0 or rel <= 0:
            return PAdicNum.zero_at(p, val)
        return PAdicNum(p, val + rel, val, self.unit * other.unit % p**rel)

    def __truediv__(self, other: "PAdicNum") -> "PAdicNum":
        if not isinstance(other, PAdicNum):
            return NotImplemented
        self._require_same_prime(other)
        if other.unit == 0:
            raise ZeroDivisionError(
                "division by a value indistinguishable from zero at its precision"
            )
        p = self.prime
        rel = min(self.prec - self.val, other.prec - other.val)
        val = self.val - other.val
        if self.unit == 0 or rel <= 0:
            return PAdicNum.zero_at(p, val)
        mod = p**rel
        return PAdicNum(p, val + rel, val, self.unit * pow(other.unit, -1, mod) % mod)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = PAdicNum.from_rational(other, self.prime, self.prec)
        if not isinstance(other, PAdicNum):
            return NotImplemented
        if self.prime != other.prime:
            return False
        return (self - other).unit == 0

    __hash__ = None  # equality is precision-relative

    def __repr__(self) -> str:
        if self.unit == 0:
            return f"O({self.prime}^{self.prec})"
        return f"{self.prime}^{self.val}*{self.unit} + O({self.prime}^{self.prec})"


@dataclass(frozen=True)
class QChoice:
    """An admissible base q for the fermionic measure: |1 - q|_p < 1.

    q is kept as an exact rational so it can be embedded at any working
    precision on demand.
    """

    p: int
    q: Fraction

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        object.__setattr__(self, "q", Fraction(self.q))
        diff = 1 - self.q
        if diff != 0:
            if diff.denominator % self.p == 0 or diff.numerator % self.p != 0:
                raise ValueError(f"need |1 - q|_p < 1; q = {self.q} fails at p = {self.p}")

    def q_adic(self, prec: int) -> PAdicNum:
        return PAdicNum.from_rational(self.q, self.p, prec)

    def q_residue(self, modulus: int) -> int:
        return _embed_residue(self.q, self.p, modulus)


def _embed_residue(r: Fraction, p: int, modulus: int) -> int:
    r = Fraction(r)
    if r.denominator % p == 0:
        raise ValueError(
            f"denominator of {r} is divisible by p = {p}; no residue embedding exists"
        )
    return r.numerator * pow(r.denominator, -1, modulus) % modulus


def _integral_residue(f: XPoly, qc: QChoice, N: int, modulus: int) -> int:
    """Level-N partial integral as a residue at the working modulus."""
    count = qc.p**N
    coeffs = [_embed_residue(c, qc.p, modulus) for c in f.fraction_coeffs()]
    if not coeffs:
        return 0
    qres = qc.q_residue(modulus)
    s = alt_weighted_power_sum(coeffs, qres, modulus, count)
    denom = (1 + pow(qres, count, modulus)) % modulus  # a unit: = 2 mod p
    prefactor = (1 + qres) * pow(denom, -1, modulus) % modulus
    return prefactor * s % modulus


def fermionic_integral_partial(
    f: XPoly,
    qc: QChoice,
    N: int,
    prec: int = DEFAULT_PRECISION,
    guard: int = GUARD_DIGITS,
) -> PAdicNum:
    """Finite-level fermionic q-integral of a polynomial with rational coefficients.

    Exact at every level for constants; for f = 1 the alternating sum
    telescopes against the prefactor and the result is exactly 1.  Total
    loss of significance comes back flagged (is_zero_at_prec), not silent.
    """
    if N < 1:
        raise ValueError("level N must be >= 1")
    if prec < 1 or guard < 0:
        raise ValueError("need precision >= 1 and guard >= 0")
    if qc.p**N > _SUMMAND_CAP:
        raise ValueError(f"p^N = {qc.p**N} exceeds the desk-scale budget {_SUMMAND_CAP}")
    working = prec + guard
    total = _integral_residue(f, qc, N, qc.p**working)
    return PAdicNum.from_residue(total, qc.p, working).with_precision(prec)


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    valuation: int  # best known lower bound for v_p(defect)
    exact: bool  # defect indistinguishable from zero at working precision


@dataclass(frozen=True)
class ConvergenceReport:
    """Defect valuations v_p(I_N - exact moment) across levels."""

    n: int
    p: int
    q: Fraction
    prec: int
    rows: tuple[ConvergenceRow, ...]

    @property
    def monotone(self) -> bool:
        vals = [r.valuation for r in self.rows]
        return all(a <= b for a, b in zip(vals, vals[1:]))

    @property
    def gain(self) -> int:
        return self.rows[-1].valuation - self.rows[0].valuation

    @property
    def ok(self) -> bool:
        """Nondecreasing defect valuations gaining >= 2, or exact throughout."""
        if not self.rows:
            return False
        if all(r.exact for r in self.rows):
            return True
        return self.monotone and self.gain >= 2


def convergence_report(
    n: int,
    qc: QChoice,
    prec: int = DEFAULT_PRECISION,
    N_list: "tuple[int, ...] | list[int]" = (1, 2, 3, 4, 5, 6),
) -> ConvergenceReport:
    """Compare level-N partial integrals of x^n against the exact moment.

    The exact target is the weight-0 q-Euler number evaluated at this q
    and embedded; rows report the defect's valuation floor per level.
    """
    if n < 0:
        raise ValueError("moment index must be >= 0")
    target_value = euler.q_euler_numbers(n)[n].eval(qc.q)
    target = PAdicNum.from_rational(target_value, qc.p, prec)
    monomial = XPoly((0,) * n + (1,))
    rows = []
    for N in sorted(N_list):
        defect = fermionic_integral_partial(monomial, qc, N, prec) - target
        rows.append(ConvergenceRow(N, defect.valuation_floor, defect.is_zero_at_prec))
    return ConvergenceReport(n, qc.p, qc.q, prec, tuple(rows))


@dataclass(frozen=True)
class ShiftDefect:
    """Finite-level defect of the n-step shift identity

        q^n I(f_n) + (-1)^(n-1) I(f) = [2]_q sum_{l<n} (-1)^(n-1-l) f(l) q^l

    with f_n(x) = f(x + n).  The identity is exact in the limit; at level
    N only the defect's valuation is meaningful.
    """

    n: int
    N: int
    valuation: int
    exact: bool


def check_shift_identity_finite(
    f: XPoly,
    n: int,
    qc: QChoice,
    prec: int = DEFAULT_PRECISION,
    N: int = 4,
) -> ShiftDefect:
    if n < 1:
        raise ValueError("shift count n must be >= 1")
    if N < 1:
        raise ValueError("level N must be >= 1")
    working = prec + GUARD_DIGITS
    modulus = qc.p**working
    shifted = f.shift_x(n)
    lhs = pow(qc.q_residue(modulus), n, modulus) * _integral_residue(shifted, qc, N, modulus)
    lhs += (1 if n % 2 else -1) * _integral_residue(f, qc, N, modulus)
    rhs_exact = Fraction(0)
    for l in range(n):
        rhs_exact += (-1) ** (n - 1 - l) * f.eval(Fraction(l)).as_fraction() * qc.q**l
    rhs_exact *= 1 + qc.q
    defect_residue = (lhs - _embed_residue(rhs_exact, qc.p, modulus)) % modulus
    defect = PAdicNum.from_residue(defect_residue, qc.p, working).with_precision(prec)
    return ShiftDefect(n, N, defect.valuation_floor, defect.is_zero_at_prec)
