"""Pure-Python twin of the alternating weighted power-sum kernel.

Kept dependency-free and exactly interchangeable with the compiled
version in ``_altsum_cy``; the selector in ``kernels`` picks one at
import time.
"""

from __future__ import annotations


def alt_weighted_power_sum(coeffs, q: int, modulus: int, count: int) -> int:
    """sum_{x=0}^{count-1} P(x) * (-q)^x mod modulus, P given by ascending coeffs.

    Exact modular arithmetic throughout; the result is in [0, modulus).
    """
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    if count < 0:
        raise ValueError("count must be >= 0")
    rev = [c % modulus for c in reversed(list(coeffs))]
    if not rev:
        return 0
    q = q % modulus
    total = 0
    power = 1 % modulus
    for x in range(count):
        xm = x % modulus
        acc = 0
        for c in rev:
            acc = (acc * xm + c) % modulus
        term = acc * power % modulus
        total = total - term if x & 1 else total + term
        power = power * q % modulus
    return total % modulus
