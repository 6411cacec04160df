"""Exact toolkit for Diophantine equations over the Gaussian integers.

Lucas sequences, the integrality gadget defining Z inside Z[i] with its
witnesses, and a compiler from integer Diophantine conditions to a single
52-unknown equation over Z[i].
"""

from .errors import GaussDiophError
from .expr import Expr, evaluate, expand, free_vars, parse, render, substitute
from .gadgets import (
    IntegralityWitness,
    combine_pair,
    enumerate_pell,
    eval_F,
    gaussian_pell_box_scan,
    integrality_counterexample_scan,
    make_integrality_witness,
    nonzero_witness,
    verify_integrality_witness,
)
from .gaussian import GaussianInt, gi_arith, gi_norm, two_adic_valuation
from .lucas import LucasPair, LucasParams, find_zero_index, lucas_pair, lucas_pair_mod, rhs_expansion
from .reduction import ReductionOutput, build_F_template, combine_system, lift_witness, reduce_to_gaussian

__version__ = "0.1.0"

__all__ = [
    "GaussDiophError",
    "GaussianInt", "gi_arith", "gi_norm", "two_adic_valuation",
    "LucasParams", "LucasPair", "lucas_pair", "lucas_pair_mod", "find_zero_index", "rhs_expansion",
    "IntegralityWitness", "eval_F", "make_integrality_witness", "verify_integrality_witness",
    "combine_pair", "nonzero_witness", "enumerate_pell", "gaussian_pell_box_scan",
    "integrality_counterexample_scan",
    "Expr", "parse", "render", "evaluate", "substitute", "expand", "free_vars",
    "ReductionOutput", "build_F_template", "combine_system", "reduce_to_gaussian", "lift_witness",
]
