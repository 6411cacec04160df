"""Compile an integer Diophantine condition into one equation over Z[i].

Given ``f`` in ``z0..z10``, :func:`reduce_to_gaussian` emits ``P`` in the 52
unknowns ``v1..v10, w1..w10, x1..x10, y1..y10, z1..z10, s, t`` (plus ``z0``
as a free parameter) such that, for natural ``a``, ``P(a, ...) = 0`` has a
solution over Z[i] iff ``f(a, z1..z10) = 0`` has one over Z with
``z10 != 0``.  The twelve constituent equations are

* ``f`` itself,
* ``F(v_k, w_k, x_k, y_k, z_k) = 0`` for ``k = 1..10``, forcing each ``z_k``
  to be a rational integer and ``v_k != 0`` up to the last equation,
* ``z10 * v1 * ... * v10 - (2s+1)(3t+1) = 0``, forcing that product to be
  nonzero,

folded into one polynomial with ``(a, b) -> a^2 + 2b^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import BadVariables, PreconditionFailed
from .expr import Expr, Product, Var, dag_size, degree_bound, evaluate, free_vars, substitute
from .gadgets import make_integrality_witness, nonzero_witness
from .gaussian import GaussianInt

COUNT = 10
PARAMETER = "z0"
_ALLOWED = re.compile(r"z([0-9]|10)\Z")

# variable families in manifest order
FAMILIES = ("v", "w", "x", "y", "z")


def build_F_template() -> Expr:
    """The integrality gadget ``F`` as an expression in ``v, w, x, y, z``."""
    v, w, x, y, z = (Var(n) for n in "vwxyz")
    odd = 2 * z + 1
    first = 4 * (2 * v * (2 * odd**2 + 1) - y) ** 2 - 3 * y**2 - 1
    second = w**2 - 1 - 3 * y**2 * (odd - x * y) ** 2
    return join(first, second)


def join(a: Expr, b: Expr) -> Expr:
    return a**2 + 2 * b**2


def combine_system(equations: Sequence[Expr]) -> Expr:
    """Fold ``equations`` into one expression vanishing iff all of them vanish.

    The fold is a balanced binary tree over the list order, with the left
    half taking the extra element when the length is odd.
    """
    if not equations:
        raise ValueError("combine_system needs at least one equation")
    if len(equations) == 1:
        return equations[0]
    mid = (len(equations) + 1) // 2
    return join(combine_system(equations[:mid]), combine_system(equations[mid:]))


def combine_depth(count: int) -> int:
    """Depth of the fold tree over ``count`` equations."""
    depth = 0
    while count > 1:
        count = (count + 1) // 2
        depth += 1
    return depth


def unknown_names(per_k_nonzero: bool = False) -> list[str]:
    names = [f"{fam}{k}" for fam in FAMILIES for k in range(1, COUNT + 1)]
    if per_k_nonzero:
        names += [f"{fam}{k}" for fam in ("s", "t") for k in range(1, COUNT + 1)]
    return names + ["s", "t"]


@dataclass(frozen=True)
class ReductionOutput:
    P: Expr
    unknowns: list[str]
    parameter: str | None
    constituents: list[Expr] = field(repr=False)
    stats: dict = field(default_factory=dict)

    def manifest(self) -> dict:
        return {"unknowns": list(self.unknowns), "parameter": self.parameter, "stats": dict(self.stats)}


def _check_source(f: Expr) -> list[str]:
    names = free_vars(f)
    bad = [n for n in names if not _ALLOWED.match(n)]
    if bad:
        raise BadVariables(bad)
    return names


def _nonzero_form(target: Expr, s: str, t: str) -> Expr:
    return target - (2 * Var(s) + 1) * (3 * Var(t) + 1)


def reduce_to_gaussian(f: Expr, per_k_nonzero: bool = False) -> ReductionOutput:
    """Build the single Gaussian-integer equation ``P`` for the source ``f``.

    With ``per_k_nonzero`` the product equation is replaced by ten equations
    ``v_k = (2s_k+1)(3t_k+1)`` plus ``z10 = (2s+1)(3t+1)``.  That variant has
    72 unknowns and is not the default.
    """
    names = _check_source(f)
    template = build_F_template()
    gadgets = [
        substitute(template, {fam: Var(f"{fam}{k}") for fam in FAMILIES})
        for k in range(1, COUNT + 1)
    ]
    if per_k_nonzero:
        tail = [_nonzero_form(Var(f"v{k}"), f"s{k}", f"t{k}") for k in range(1, COUNT + 1)]
        tail.append(_nonzero_form(Var("z10"), "s", "t"))
    else:
        product = Product([Var("z10")] + [Var(f"v{k}") for k in range(1, COUNT + 1)])
        tail = [_nonzero_form(product, "s", "t")]
    constituents = [f, *gadgets, *tail]
    P = combine_system(constituents)
    unknowns = unknown_names(per_k_nonzero)
    stats = {
        "constituents": len(constituents),
        "dag_nodes": dag_size(P),
        "degree_bound": degree_bound(P),
    }
    return ReductionOutput(
        P=P,
        unknowns=unknowns,
        parameter=PARAMETER if PARAMETER in names else None,
        constituents=constituents,
        stats=stats,
    )


def lift_witness(f: Expr, a: int, zvals: Sequence[int],
                 per_k_nonzero: bool = False) -> dict[str, GaussianInt]:
    """Turn an integer solution of ``f`` into a full solution of ``P``.

    ``zvals`` holds ``z1..z10`` and must end in a nonzero value.  The result
    assigns every unknown of :func:`reduce_to_gaussian` (not ``z0``).
    """
    _check_source(f)
    zvals = [int(z) for z in zvals]
    if len(zvals) != COUNT:
        raise PreconditionFailed(f"expected {COUNT} values for z1..z10, got {len(zvals)}")
    if zvals[-1] == 0:
        raise PreconditionFailed("z10 must be nonzero")
    source = {PARAMETER: GaussianInt(a)}
    source.update({f"z{k}": GaussianInt(z) for k, z in enumerate(zvals, 1)})
    if not evaluate(f, source).is_zero:
        raise PreconditionFailed("f does not vanish at the given point")

    out: dict[str, int] = {}
    product = zvals[-1]
    for k, z in enumerate(zvals, 1):
        wit = make_integrality_witness(z)
        out.update({f"v{k}": wit.v, f"w{k}": wit.w, f"x{k}": wit.x, f"y{k}": wit.y, f"z{k}": z})
        product *= wit.v
        if per_k_nonzero:
            out[f"s{k}"], out[f"t{k}"] = nonzero_witness(wit.v)
    out["s"], out["t"] = nonzero_witness(zvals[-1] if per_k_nonzero else product)
    return {name: GaussianInt(value) for name, value in out.items()}


def full_assignment(assignment: Mapping[str, GaussianInt], a: int) -> dict[str, GaussianInt]:
    return {**assignment, PARAMETER: GaussianInt(a)}

