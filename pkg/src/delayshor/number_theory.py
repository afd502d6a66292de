"""Exact integer arithmetic for order finding.

Modular exponentiation, multiplicative orders, work/auxiliary register
sizing, and continued-fraction recovery of order candidates. Everything
here is exact integer arithmetic; no floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# 2**L sized state vectors are the practical limit long before this, but
# keep the exponent itself sane.
_MAX_L = 62


def mod_pow(a: int, x: int, N: int) -> int:
    """Computes a**x mod N by square-and-multiply.

    Args:
        a: base.
        x: non-negative exponent.
        N: modulus, at least 2.

    Returns:
        a**x mod N, in [0, N).

    Raises:
        ValueError: if N < 2 or x < 0.
    """
    if N < 2:
        raise ValueError(f'modulus must be >= 2, got {N}')
    if x < 0:
        raise ValueError(f'exponent must be >= 0, got {x}')
    return pow(a, x, N)


def multiplicative_order(a: int, N: int) -> int:
    """Returns the smallest r >= 1 with a**r mod N == 1.

    Found by direct iteration; r <= N, so this is cheap at the instance
    sizes this package targets.

    Args:
        a: element whose order is sought.
        N: modulus, at least 2.

    Returns:
        The multiplicative order of a modulo N.

    Raises:
        ValueError: if gcd(a, N) != 1 (the order is undefined).
    """
    if N < 2:
        raise ValueError(f'modulus must be >= 2, got {N}')
    if math.gcd(a, N) != 1:
        raise ValueError(f'order undefined: gcd({a}, {N}) = {math.gcd(a, N)} != 1')
    r, y = 1, a % N
    while y != 1:
        y = (y * a) % N
        r += 1
    return r


def default_register_sizes(N: int) -> tuple[int, int]:
    """Canonical register sizes for factoring N.

    The work register gets the smallest L with 2**L > N**2 (which then also
    satisfies 2**L < 2*N**2); the auxiliary register gets the unique Lprime
    with 2**(Lprime-1) < N < 2**Lprime.

    Args:
        N: integer to factor, at least 3.

    Returns:
        (L, Lprime).

    Raises:
        ValueError: if N < 3, or N is an exact power of two (no Lprime
            satisfies the strict inequalities).
    """
    if N < 3:
        raise ValueError(f'N must be >= 3, got {N}')
    if N & (N - 1) == 0:
        raise ValueError(f'N={N} is a power of two; register sizing inequalities are strict')
    L = (N * N).bit_length()  # smallest L with 2**L > N**2
    if not N * N < 2**L < 2 * N * N:
        raise AssertionError(f'register sizing failed for N={N}')
    Lprime = N.bit_length()  # 2**(Lprime-1) < N < 2**Lprime for non-powers of two
    return L, Lprime


def continued_fraction_order_candidates(k: int, q: int, N: int) -> list[int]:
    """Convergent denominators of k/q that can serve as order candidates.

    Args:
        k: measured work-register outcome, 0 <= k < q.
        q: work Hilbert-space dimension.
        N: upper bound on admissible denominators (the order satisfies r <= N).

    Returns:
        Sorted distinct denominators <= N of the convergents of k/q.
        Empty for k = 0.
    """
    if not 0 <= k < q:
        raise ValueError(f'k must be in [0, {q}), got {k}')
    if k == 0:
        return []
    denominators = []
    num, den = k, q
    d_prev, d_cur = 1, 0  # (d_{-2}, d_{-1}) of the convergent recurrence
    while den:
        quotient, rem = divmod(num, den)
        d_prev, d_cur = d_cur, quotient * d_cur + d_prev
        if d_cur > N:
            break
        denominators.append(d_cur)
        num, den = den, rem
    return sorted(set(denominators))


@dataclass(frozen=True)
class FactoringInstance:
    """An order-finding problem plus its register parameters.

    Attributes:
        N: composite integer to factor.
        a: base, coprime with N and 1 < a < N.
        L: work-register qubit count.
        Lprime: auxiliary-register qubit count.
        q: work Hilbert dimension, 2**L.
        r: multiplicative order of a mod N.
    """

    N: int
    a: int
    L: int
    Lprime: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if self.N < 3:
            raise ValueError(f'N must be >= 3, got {self.N}')
        if not 1 < self.a < self.N:
            raise ValueError(f'base must satisfy 1 < a < N, got a={self.a}, N={self.N}')
        if math.gcd(self.a, self.N) != 1:
            raise ValueError(f'gcd({self.a}, {self.N}) != 1; order finding requires coprimality')
        if not 1 <= self.L <= _MAX_L:
            raise ValueError(f'L must be in [1, {_MAX_L}], got {self.L}')
        if self.q != 2**self.L:
            raise ValueError(f'q must equal 2**L = {2**self.L}, got {self.q}')
        # Relaxed lower bound so the N=4 analytic instance (Lprime=2) is
        # constructible; default_register_sizes enforces the strict version.
        if 2**self.Lprime < self.N:
            raise ValueError(
                f'auxiliary register too small: 2**{self.Lprime} < N={self.N}'
            )
        if mod_pow(self.a, self.r, self.N) != 1:
            raise ValueError(f'r={self.r} is not the order of {self.a} mod {self.N}')


def make_instance(
    N: int,
    a: int,
    L: int | None = None,
    Lprime: int | None = None,
) -> FactoringInstance:
    """Builds a validated FactoringInstance.

    L and Lprime default to default_register_sizes(N); either may be
    overridden (runs at non-canonical L are a first-class use case).

    Args:
        N: composite to factor. Odd N > 3 in normal use; N=4 is accepted
            with explicit register sizes.
        a: base with gcd(a, N) = 1 and 1 < a < N.
        L: optional work-register size override.
        Lprime: optional auxiliary-register size override.

    Returns:
        A fully populated FactoringInstance.
    """
    if L is None or Lprime is None:
        default_L, default_Lp = default_register_sizes(N)
        L = default_L if L is None else L
        Lprime = default_Lp if Lprime is None else Lprime
    r = multiplicative_order(a, N)
    return FactoringInstance(N=N, a=a, L=L, Lprime=Lprime, q=2**L, r=r)
