"""Batch checks behind ``gaussdioph check <suite>``.

Each suite runs a family of exact checks sized by ``scale`` and reports
pass/fail counts per check.  The first failing case of a check is kept as
its counterexample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import BadParams, InternalInconsistency, NotFound, SuiteFailed
from .gadgets import (
    eval_F,
    enumerate_pell,
    gaussian_pell_box_scan,
    integrality_counterexample_scan,
    make_integrality_witness,
    pell_orbit_closure,
    verify_integrality_witness,
)
from .lucas import LucasParams, find_zero_index, lucas_pair, rhs_expansion


@dataclass
class CheckTally:
    passed: int = 0
    failed: int = 0
    counterexample: object = None

    def record(self, ok: bool, case: object) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = case


@dataclass
class SuiteReport:
    suite: str
    scale: int
    checks: dict[str, CheckTally] = field(default_factory=dict)

    def run(self, name: str, cases: Iterable[tuple[bool, object]]) -> None:
        tally = self.checks.setdefault(name, CheckTally())
        for ok, case in cases:
            tally.record(ok, case)

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.checks.values())

    def first_counterexample(self) -> dict | None:
        for name, tally in self.checks.items():
            if tally.failed:
                return {"check": name, "case": tally.counterexample}
        return None

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "scale": self.scale,
            "checks": {n: {"passed": t.passed, "failed": t.failed} for n, t in self.checks.items()},
            "counterexample": self.first_counterexample(),
        }


def _identity_cases(bound: int, top: int):
    for A in range(-bound, bound + 1):
        for B in range(-bound, bound + 1):
            params = LucasParams(A, B)
            for k in range(top + 1):
                for n in range(top + 1):
                    for r in range(top + 1):
                        lhs = lucas_pair(params, k * n + r).low
                        yield lhs == rhs_expansion(params, k, n, r), [A, B, k, n, r]


def _bound_cases(max_A: int, max_n: int):
    for A in range(2, max_A + 1):
        for B in range(A):
            params = LucasParams(A, B)
            for n in range(max_n + 1):
                u = lucas_pair(params, n).high
                yield (A - B) ** n <= u <= A**n, [A, B, n]


def _unit_index_cases(bound: int, max_M: int):
    for M in range(2, max_M + 1):
        for A in range(-bound, bound + 1):
            for B in range(-bound, bound + 1):
                try:
                    find_zero_index(LucasParams(A, B), M, require_unit_next=True)
                    found = True
                except NotFound:
                    found = False
                yield found == (math.gcd(B, M) == 1), [A, B, M]


def _doubling_cases(bound: int, max_n: int):
    for A in range(-bound, bound + 1):
        for B in range(-bound, bound + 1):
            params = LucasParams(A, B)
            low, high = 0, 1
            for n in range(max_n + 1):
                pair = lucas_pair(params, n)
                yield (pair.low, pair.high) == (low, high), [A, B, n]
                low, high = high, A * high - B * low


def identities(scale: int) -> SuiteReport:
    report = SuiteReport("identities", scale)
    report.run("binomial_identity", _identity_cases(scale, scale + 2))
    report.run("growth_bounds", _bound_cases(2 * scale, 15 * scale))
    report.run("unit_index_criterion", _unit_index_cases(scale + 2, 15 * scale))
    report.run("doubling_vs_recurrence", _doubling_cases(scale + 1, 25 * scale))
    return report


def oracles(scale: int, workers: int = 1) -> SuiteReport:
    report = SuiteReport("oracles", scale)
    pairs = gaussian_pell_box_scan(scale, workers=workers)
    report.run("gaussian_pell_all_real",
               ((x.is_rational and y.is_rational, [str(x), str(y)]) for x, y in pairs))
    expected = pell_orbit_closure([(s.x, s.y) for s in enumerate_pell(4, scale)])
    got = {(x.re, y.re) for x, y in pairs}
    report.run("gaussian_pell_matches_integer_family",
               [(got == expected and len(pairs) == len(expected), sorted(got ^ expected))])
    for A in range(2, 7):
        try:
            enumerate_pell(A, scale * scale)
            agree = True
        except InternalInconsistency:
            agree = False
        report.run("pell_routes_agree", [(agree, [A, scale * scale])])
    hit = integrality_counterexample_scan(min(scale, 2), workers=workers)
    report.run("no_nonreal_integrality_solution",
               [(hit is None, None if hit is None else [str(g) for g in hit])])
    return report


def roundtrip(scale: int) -> SuiteReport:
    report = SuiteReport("roundtrip", scale)

    def cases():
        for z in range(-scale, scale + 1):
            wit = make_integrality_witness(z)
            ok = (
                verify_integrality_witness(*wit.unknowns(), z) == z
                and wit.v > 0
                and eval_F(*wit.unknowns(), z).is_zero
            )
            yield ok, [z]

    report.run("witness_roundtrip", cases())
    return report


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "identities": identities,
    "oracles": oracles,
    "roundtrip": roundtrip,
}


def run_suite(name: str, scale: int, workers: int = 1) -> SuiteReport:
    """Run a suite and raise :class:`SuiteFailed` if any check fails."""
    if name not in SUITES:
        raise BadParams(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if scale < 1:
        raise BadParams(f"scale must be >= 1, got {scale}")
    report = SUITES[name](scale, workers=workers) if name == "oracles" else SUITES[name](scale)
    if not report.ok:
        raise SuiteFailed(f"suite {name!r} failed", report.first_counterexample())
    return report

