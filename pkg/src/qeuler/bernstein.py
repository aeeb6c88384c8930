"""Bernstein basis polynomials, their fermionic moments, and the
alternating-moment identity suite (including the inconsistent k=0 remark).

The moment of B_{k,n} under the fermionic measure has two expansions:

    lhs:  C(n,k) * sum_{l=0..n-k} C(n-k,l) (-1)^l     E_{k+l, q}
    rhs:  C(n,k) * sum_{l=0..k}   C(k,l) (-1)^(k+l) * (1 + q + q^2 E_{n-l, 1/q})

The rhs's constant 1+q telescopes away only for k >= 1; the "reduced"
variant that drops it is therefore valid for 1 <= k < n but wrong at
k = 0, which is exactly the erratum this suite detects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import padic
from .euler import (
    FAIL,
    ONE,
    Q,
    ZERO,
    IdentityInstance,
    IdentityReport,
    _instance,
    _q_euler_entries,
)
from .exactq import BigRat, QRatFn, XPoly


@dataclass(frozen=True)
class BernsteinBasis:
    """B_{k,n}(x) = C(n,k) x^k (1-x)^(n-k), expanded."""

    k: int
    n: int
    poly: XPoly


def bernstein_poly(k: int, n: int) -> BernsteinBasis:
    """Expanded basis element of degree n; requires 0 <= k <= n."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    c = comb(n, k)
    coeffs = [Fraction(0)] * (n + 1)
    for i in range(n - k + 1):
        coeffs[k + i] = Fraction(c * comb(n - k, i) * (-1) ** i)
    return BernsteinBasis(k, n, XPoly.from_fractions(coeffs))


def bernstein_operator(samples: "list[BigRat]", n: int, x: BigRat) -> Fraction:
    """Exact value of the order-n operator: sum_k samples[k] C(n,k) x^k (1-x)^(n-k).

    samples[k] must be the function value at k/n.
    """
    if len(samples) != n + 1:
        raise ValueError(f"need n+1 = {n + 1} samples, got {len(samples)}")
    x = Fraction(x)
    total = Fraction(0)
    for k, s in enumerate(samples):
        total += Fraction(s) * comb(n, k) * x**k * (1 - x) ** (n - k)
    return total


def bernstein_moment_lhs(k: int, n: int) -> QRatFn:
    """Moment of B_{k,n} via the alternating sum over raw moments E_{k+l}."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    e = _q_euler_entries(n)
    total = ZERO
    for l in range(n - k + 1):
        total = total + e[k + l] * (comb(n - k, l) * (-1) ** l)
    return total * comb(n, k)


def bernstein_moment_rhs(k: int, n: int, variant: str = "reduced") -> QRatFn:
    """Moment of B_{k,n} via the reflected expansion; requires k < n.

    variant="full" keeps the 1 + q + q^2 E_{n-l, 1/q} summand (valid for
    every k < n); variant="reduced" drops the 1+q constant, which is only
    justified for k >= 1.
    """
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    if variant not in ("full", "reduced"):
        raise ValueError(f"variant must be 'full' or 'reduced', got {variant!r}")
    e = _q_euler_entries(n)
    q_sq = Q * Q
    total = ZERO
    for l in range(k + 1):
        term = q_sq * e[n - l].subst_q_inverse()
        if variant == "full":
            term = term + ONE + Q
        total = total + term * (comb(k, l) * (-1) ** (k + l))
    return total * comb(n, k)


def moment_via_basis_expansion(k: int, n: int) -> QRatFn:
    """Independent moment pipeline: expand B_{k,n} and sum coefficient * E_j."""
    basis = bernstein_poly(k, n)
    e = _q_euler_entries(n)
    total = ZERO
    for j, c in enumerate(basis.poly.fraction_coeffs()):
        if c:
            total = total + e[j] * c
    return total


def verify_theorem8(n_max: int) -> IdentityReport:
    """Check the alternating-moment identity over 1 <= k < n <= n_max.

    Each (n, k) instance compares both moment expansions divided by
    C(n,k).  The k = 0 row is checked twice: against the claimed k=0
    shortcut (expected to fail -- the dropped 1+q) and against the full
    form (expected to pass); both outcomes are part of the contract.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    instances: list[IdentityInstance] = []
    for n in range(1, n_max + 1):
        e = _q_euler_entries(n)
        lhs0 = ZERO
        for l in range(n + 1):
            lhs0 = lhs0 + e[l] * (comb(n, l) * (-1) ** l)
        remark_rhs = Q * Q * e[n].subst_q_inverse()
        instances.append(
            _instance(
                (n, 0, "k0-remark"),
                lhs0,
                remark_rhs,
                expected=FAIL,
                note="claimed k=0 shortcut drops the 1+q term",
            )
        )
        instances.append(
            _instance((n, 0, "full"), lhs0, ONE + Q + remark_rhs)
        )
        for k in range(1, n):
            c = comb(n, k)
            left = bernstein_moment_lhs(k, n) * Fraction(1, c)
            right = bernstein_moment_rhs(k, n, "reduced") * Fraction(1, c)
            instances.append(_instance((n, k), left, right))
    return IdentityReport("thm8", tuple(instances))


def padic_moment_crosscheck(
    n_max: int = 4,
    p: int = 3,
    q: "Fraction | int" = Fraction(4),
    prec: int = padic.DEFAULT_PRECISION,
    N_list: tuple[int, ...] = (1, 2, 3, 4, 5),
) -> list[tuple[int, int, tuple[padic.ConvergenceRow, ...]]]:
    """Numeric cross-check: partial integrals of B_{k,n} vs the exact moment.

    Small ranges only (cost is O(p^N) per cell); returns, per (n, k), the
    defect's valuation floor across the requested levels.
    """
    qc = padic.QChoice(p, Fraction(q))
    out = []
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            basis = bernstein_poly(k, n)
            exact = bernstein_moment_lhs(k, n).eval(qc.q)
            target = padic.PAdicNum.from_rational(exact, p, prec)
            rows = []
            for N in sorted(N_list):
                approx = padic.fermionic_integral_partial(basis.poly, qc, N, prec)
                defect = approx - target
                rows.append(padic.ConvergenceRow(N, defect.valuation_floor, defect.is_zero_at_prec))
            out.append((n, k, tuple(rows)))
    return out
