"""Integrality gadget over Z[i] and the small lemmas feeding the reduction.

The central polynomial is

    F(v,w,x,y,z) = (4(2v(2(2z+1)^2+1) - y)^2 - 3y^2 - 1)^2
                 + 2(w^2 - 1 - 3y^2(2z+1-xy)^2)^2

and for Gaussian integers ``z`` the equation ``F = 0`` is solvable with
``v != 0`` exactly when ``z`` is a rational integer.  Witnesses for the
integer case come from the Lucas sequence ``u_n(4, 1)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .errors import BadParams, InternalInconsistency, NotSatisfied, VIsZero
from .gaussian import GaussianInt, GaussLike, exact_div, gaussian_sqrt, two_adic_valuation
from .lucas import LucasParams, find_zero_index, lucas_pair

PELL4 = LucasParams(4, 1)


def _first_part(v: GaussianInt, y: GaussianInt, z: GaussianInt) -> GaussianInt:
    odd = 2 * z + 1
    return 4 * (2 * v * (2 * odd * odd + 1) - y) ** 2 - 3 * y * y - 1


def _second_part(w: GaussianInt, x: GaussianInt, y: GaussianInt, z: GaussianInt) -> GaussianInt:
    cofactor = 2 * z + 1 - x * y
    return w * w - 1 - 3 * y * y * cofactor * cofactor


def eval_F(v: GaussLike, w: GaussLike, x: GaussLike, y: GaussLike, z: GaussLike) -> GaussianInt:
    v, w, x, y, z = map(GaussianInt.coerce, (v, w, x, y, z))
    return combine_pair(_first_part(v, y, z), _second_part(w, x, y, z))


def combine_pair(a: GaussLike, b: GaussLike) -> GaussianInt:
    """``a**2 + 2*b**2``; over Z[i] this vanishes only when ``a = b = 0``."""
    a, b = GaussianInt.coerce(a), GaussianInt.coerce(b)
    return a * a + 2 * (b * b)


@dataclass(frozen=True)
class IntegralityWitness:
    z: int
    v: int
    w: int
    x: int
    y: int
    n: int
    epsilon: int
    q: int

    @property
    def y_star(self) -> int:
        return 4 * self.v * (2 * (2 * self.z + 1) ** 2 + 1)

    @property
    def w_star(self) -> int:
        return self.w + 2 * (2 * self.z + 1 - self.x * self.y) * self.y

    def unknowns(self) -> tuple[int, int, int, int]:
        return self.v, self.w, self.x, self.y

    def to_json(self) -> dict:
        gi = lambda n: GaussianInt(n).to_json()  # noqa: E731
        return {
            "z": gi(self.z), "v": gi(self.v), "w": gi(self.w), "x": gi(self.x), "y": gi(self.y),
            "diagnostics": {"n": self.n, "epsilon": self.epsilon, "q": str(self.q)},
        }


def make_integrality_witness(z: int) -> IntegralityWitness:
    """Build ``(v, w, x, y)`` with ``v > 0`` and ``F(v, w, x, y, z) = 0``.

    With ``k = |2z+1|`` and ``u_n = u_n(4, 1)``: pick the least ``n`` such that
    ``4(2k^2+1)`` divides ``u_{n+1}``, then ``v = u_{n+1} / (4(2k^2+1))``,
    ``y = u_n``, ``q = u_{kn} / u_n`` (exact, and ``q = k mod u_n``),
    ``x = eps*(k - q)/u_n`` and ``w = eps*(u_{kn+1} - 2u_{kn})``, where
    ``eps`` is the sign of ``2z+1``.
    """
    if type(z) is not int:
        raise TypeError("z must be a rational integer")
    k = abs(2 * z + 1)
    modulus = 4 * (2 * k * k + 1)
    n = find_zero_index(PELL4, modulus) - 1
    base = lucas_pair(PELL4, n)
    v = exact_div(base.high, modulus)
    y = base.low
    far = lucas_pair(PELL4, k * n)
    q = exact_div(far.low, y)
    eps = 1 if z >= 0 else -1
    x = eps * exact_div(k - q, y)
    w = eps * (far.high - 2 * far.low)
    witness = IntegralityWitness(z=z, v=v, w=w, x=x, y=y, n=n, epsilon=eps, q=q)
    if v <= 0 or not eval_F(v, w, x, y, z).is_zero:
        raise InternalInconsistency(f"constructed witness for z={z} does not satisfy F = 0")
    return witness


def witness_from_json(data: dict) -> tuple[GaussianInt, ...]:
    """Decode the ``(v, w, x, y, z)`` Gaussian values of a witness document."""
    return tuple(GaussianInt.from_json(data[key]) for key in ("v", "w", "x", "y", "z"))


def verify_integrality_witness(v: GaussLike, w: GaussLike, x: GaussLike, y: GaussLike,
                               z: GaussLike) -> int:
    """Check ``v != 0`` and ``F(v, w, x, y, z) = 0`` and return ``z`` as an ``int``."""
    v, w, x, y, z = map(GaussianInt.coerce, (v, w, x, y, z))
    if v.is_zero:
        raise VIsZero("v must be nonzero")
    if not eval_F(v, w, x, y, z).is_zero:
        raise NotSatisfied("F(v, w, x, y, z) != 0")
    if not z.is_rational:
        raise InternalInconsistency(f"F vanished with v != 0 at non-real z = {z}")
    return z.re


def nonzero_witness(m: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``(2s+1)(3t+1) = m``.

    The ``3t+1`` factor is ``(-2)**e`` where ``2**e`` is the exact power of
    two in ``m``; it is congruent to 1 mod 3 and leaves an odd cofactor.
    """
    e = two_adic_valuation(m)
    d = (-2) ** e
    t = (d - 1) // 3
    s = (m // d - 1) // 2
    return s, t


@dataclass(frozen=True, slots=True)
class PellSolution:
    x: int
    y: int
    index: int


def _pell_grid_scan(A: int, bound: int) -> list[tuple[int, int]]:
    # For each y, x^2 - A*y*x + (y^2 - 1) = 0 has x = (A*y +- sqrt(D)) / 2.
    found = []
    for y in range(bound + 1):
        disc = (A * A - 4) * y * y + 4
        root = math.isqrt(disc)
        if root * root != disc:
            continue
        for num in {A * y - root, A * y + root}:
            if num % 2 == 0 and y <= num // 2 <= bound:
                found.append((num // 2, y))
    return sorted(found)


def _pell_lucas_family(A: int, bound: int) -> list[tuple[int, int]]:
    params = LucasParams(A, 1)
    found = []
    n = 0
    while True:
        pair = lucas_pair(params, n)
        if pair.high > bound:
            return found
        found.append((pair.high, pair.low))
        n += 1


def enumerate_pell(A: int, bound: int) -> list[PellSolution]:
    """All ``0 <= y <= x <= bound`` with ``x^2 - A*x*y + y^2 = 1``, sorted by ``x``.

    The list is produced both by scanning the grid and from consecutive
    Lucas pairs ``(u_{n+1}(A,1), u_n(A,1))``; the two must coincide.
    """
    if A < 2:
        raise BadParams(f"A must be >= 2, got {A}")
    if bound < 1:
        raise BadParams(f"bound must be >= 1, got {bound}")
    scanned = _pell_grid_scan(A, bound)
    family = _pell_lucas_family(A, bound)
    if scanned != family:
        raise InternalInconsistency(f"Pell grid scan and Lucas family disagree for A={A}")
    return [PellSolution(x, y, n) for n, (x, y) in enumerate(family)]


def _in_box(g: GaussianInt, bound: int) -> bool:
    return abs(g.re) <= bound and abs(g.im) <= bound


def _box(bound: int) -> Iterator[GaussianInt]:
    for re in range(-bound, bound + 1):
        for im in range(-bound, bound + 1):
            yield GaussianInt(re, im)


def _sort_key(pair: tuple[GaussianInt, ...]) -> tuple[int, ...]:
    return tuple(part for g in pair for part in (g.re, g.im))


def _pell_gaussian_rows(bound: int, y_res: list[int]) -> list[tuple[GaussianInt, GaussianInt]]:
    found = []
    for y_re in y_res:
        for y_im in range(-bound, bound + 1):
            y = GaussianInt(y_re, y_im)
            # x = 2y +- sqrt(3y^2 + 1)
            root = gaussian_sqrt(3 * y * y + 1)
            if root is None:
                continue
            for x in {2 * y + root, 2 * y - root}:
                if _in_box(x, bound):
                    found.append((x, y))
    return found


def _partition(values: range, workers: int) -> list[list[int]]:
    return [list(values[i::workers]) for i in range(workers)]


def gaussian_pell_box_scan(bound: int, workers: int = 1) -> list[tuple[GaussianInt, GaussianInt]]:
    """All ``(x, y)`` in the box ``|re|, |im| <= bound`` with ``x^2 - 4xy + y^2 = 1``.

    Each candidate ``y`` is solved for ``x`` exactly via a Gaussian square
    root.  Output is sorted lexicographically on ``(x.re, x.im, y.re, y.im)``.
    """
    if bound < 1:
        raise BadParams(f"bound must be >= 1, got {bound}")
    rows = range(-bound, bound + 1)
    if workers <= 1:
        found = _pell_gaussian_rows(bound, list(rows))
    else:
        with ProcessPoolExecutor(workers) as pool:
            chunks = pool.map(_pell_gaussian_rows, [bound] * workers, _partition(rows, workers))
            found = [pair for chunk in chunks for pair in chunk]
    return sorted(found, key=_sort_key)


def _satisfying_rows(bound: int, v_res: list[int], z_real_only: bool) -> list[tuple[GaussianInt, ...]]:
    box = list(_box(bound))
    zs = [z for z in box if z.is_rational] if z_real_only else box
    found = []
    for v_re in v_res:
        for v_im in range(-bound, bound + 1):
            v = GaussianInt(v_re, v_im)
            if v.is_zero:
                continue
            for y in box:
                for z in zs:
                    if not _first_part(v, y, z).is_zero:
                        continue
                    for w in box:
                        for x in box:
                            if _second_part(w, x, y, z).is_zero:
                                found.append((v, w, x, y, z))
    return found


def satisfying_tuples(bound: int, z_real_only: bool = False,
                      workers: int = 1) -> list[tuple[GaussianInt, ...]]:
    """Every ``(v, w, x, y, z)`` in the box with ``v != 0`` and ``F = 0``.

    ``F`` is a sum ``a^2 + 2b^2`` of two inner polynomials, so it vanishes
    exactly when both do.  The first depends only on ``(v, y, z)``; ``w``
    and ``x`` are enumerated only behind a zero of it.
    """
    if bound < 1:
        raise BadParams(f"bound must be >= 1, got {bound}")
    rows = range(-bound, bound + 1)
    if workers <= 1:
        found = _satisfying_rows(bound, list(rows), z_real_only)
    else:
        with ProcessPoolExecutor(workers) as pool:
            chunks = pool.map(_satisfying_rows, [bound] * workers, _partition(rows, workers),
                              [z_real_only] * workers)
            found = [t for chunk in chunks for t in chunk]
    for t in found:
        if not eval_F(*t).is_zero:
            raise InternalInconsistency(f"split test accepted a tuple with F != 0: {t}")
    return sorted(found, key=_sort_key)


def integrality_counterexample_scan(bound: int, workers: int = 1) -> tuple[GaussianInt, ...] | None:
    """First ``(v, w, x, y, z)`` in the box with ``v != 0``, ``F = 0`` and ``z`` not real, if any."""
    for t in satisfying_tuples(bound, workers=workers):
        if not t[4].is_rational:
            return t
    return None


def brute_force_pell_gaussian(bound: int) -> list[tuple[GaussianInt, GaussianInt]]:
    """Unpruned scan of the full four-dimensional box; only for small bounds."""
    box = list(_box(bound))
    return [(x, y) for x in box for y in box if x * x - 4 * x * y + y * y == 1]


def pell_orbit_closure(pairs: list[tuple[int, int]]) -> set[tuple[int, int]]:
    """Close a set of integer pairs under ``(x, y) -> (y, x)`` and ``-> (-x, -y)``."""
    out = set()
    for x, y in pairs:
        out.update({(x, y), (y, x), (-x, -y), (-y, -x)})
    return out
