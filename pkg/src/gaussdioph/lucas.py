"""Lucas sequences u_n(A, B) of the first kind.

``u_0 = 0``, ``u_1 = 1`` and ``u_{n+1} = A*u_n - B*u_{n-1}``.  Values are
computed with the 2x2 companion matrix raised by repeated squaring; the
plain recurrence is kept in :func:`lucas_pair_slow` as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadModulus, NotFound


@dataclass(frozen=True, slots=True)
class LucasParams:
    A: int
    B: int


@dataclass(frozen=True, slots=True)
class LucasPair:
    """Consecutive terms ``low = u_index`` and ``high = u_{index+1}``."""

    index: int
    low: int
    high: int


Matrix = tuple[int, int, int, int]


def _mat_mul(x: Matrix, y: Matrix, mod: int | None) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    out = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    if mod is not None:
        out = tuple(t % mod for t in out)
    return out


def _companion_power(params: LucasParams, n: int, mod: int | None) -> Matrix:
    # [[A, -B], [1, 0]]^n == [[u_{n+1}, -B*u_n], [u_n, -B*u_{n-1}]]
    result: Matrix = (1, 0, 0, 1)
    base: Matrix = (params.A, -params.B, 1, 0)
    if mod is not None:
        result = tuple(t % mod for t in result)
        base = tuple(t % mod for t in base)
    while n:
        if n & 1:
            result = _mat_mul(result, base, mod)
        n >>= 1
        if n:
            base = _mat_mul(base, base, mod)
    return result


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be a natural number, got {n}")


def lucas_pair(params: LucasParams, n: int) -> LucasPair:
    """Exact ``(u_n, u_{n+1})``."""
    _check_index(n)
    m = _companion_power(params, n, None)
    return LucasPair(n, m[2], m[0])


def lucas_pair_mod(params: LucasParams, n: int, M: int) -> LucasPair:
    """``(u_n mod M, u_{n+1} mod M)`` with residues in ``[0, M)``."""
    if M < 1:
        raise BadModulus(f"modulus must be >= 1, got {M}")
    _check_index(n)
    m = _companion_power(params, n, M)
    return LucasPair(n, m[2] % M, m[0] % M)


def lucas_pair_slow(params: LucasParams, n: int) -> LucasPair:
    """Reference implementation: run the recurrence ``n`` times."""
    _check_index(n)
    low, high = 0, 1
    for _ in range(n):
        low, high = high, params.A * high - params.B * low
    return LucasPair(n, low, high)


def lucas_value(params: LucasParams, n: int) -> int:
    return lucas_pair(params, n).low


def find_zero_index(params: LucasParams, M: int, require_unit_next: bool = False) -> int:
    """Smallest ``j >= 1`` with ``u_j == 0 (mod M)``.

    With ``require_unit_next`` the match must also have ``u_{j+1} == 1 (mod M)``,
    which happens for some ``j`` exactly when ``gcd(B, M) == 1``.

    The residue pairs ``(u_j, u_{j+1}) mod M`` form an eventually periodic
    sequence over at most ``M**2`` states.  Brent's cycle detection notices
    the first return into the cycle after every state has been visited, at
    which point :class:`NotFound` is definitive.
    """
    if M < 2:
        raise BadModulus(f"modulus must be >= 2, got {M}")
    A, B = params.A % M, params.B % M
    low, high = 0, 1
    saved = (low, high)
    power, lam = 1, 0
    for j in range(1, M * M + 1):
        low, high = high, (A * high - B * low) % M
        if low == 0 and (not require_unit_next or high == 1):
            return j
        if (low, high) == saved:
            break
        lam += 1
        if lam == power:
            saved = (low, high)
            power, lam = 2 * power, 0
    what = "u_j = 0 and u_(j+1) = 1" if require_unit_next else "u_j = 0"
    raise NotFound(f"no j >= 1 with {what} (mod {M}) for A={params.A}, B={params.B}")


def rhs_expansion(params: LucasParams, k: int, n: int, r: int) -> int:
    """Binomial expansion of ``u_{kn+r}`` in terms of ``u_k``, ``u_{k+1}`` and ``u_{j+r}``.

    Returns ``sum_{j=0}^{n} C(n,j) * (u_{k+1} - A*u_k)^(n-j) * u_k^j * u_{j+r}``,
    every ``u`` taken with the same ``(A, B)``.
    """
    for value in (k, n, r):
        _check_index(value)
    uk = lucas_pair(params, k)
    shift = uk.high - params.A * uk.low
    total = 0
    tail = lucas_pair(params, r)
    for j in range(n + 1):
        total += math.comb(n, j) * shift ** (n - j) * uk.low**j * tail.low
        tail = LucasPair(tail.index + 1, tail.high, params.A * tail.high - params.B * tail.low)
    return total
