import random

import pytest
from hypothesis import strategies as st

from gaussdioph.expr import Const, Negate, Power, Product, Sum, Var
from gaussdioph.gaussian import GaussianInt

ACCEPTANCE_LINES: list[str] = []


def gaussians(bits: int = 64) -> st.SearchStrategy[GaussianInt]:
    part = st.integers(-(2**bits), 2**bits)
    return st.builds(GaussianInt, part, part)


small_gaussians = st.builds(GaussianInt, st.integers(-6, 6), st.integers(-6, 6))

VARIABLES = ("x", "y", "z", "w", "z10")


def random_expr(rng: random.Random, depth: int) -> object:
    """Random expression tree of depth at most ``depth``."""
    if depth <= 1 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Var(rng.choice(VARIABLES))
        return Const(GaussianInt(rng.randint(-9, 9), rng.choice([0, 0, 0, rng.randint(-3, 3)])))
    kind = rng.choice(["sum", "product", "power", "neg"])
    if kind == "sum":
        return Sum([random_expr(rng, depth - 1) for _ in range(rng.randint(2, 3))])
    if kind == "product":
        return Product([random_expr(rng, depth - 1) for _ in range(rng.randint(2, 3))])
    if kind == "power":
        return Power(random_expr(rng, depth - 1), rng.randint(1, 3))
    return Negate(random_expr(rng, depth - 1))


def random_assignment(rng: random.Random, bound: int = 5) -> dict[str, GaussianInt]:
    return {v: GaussianInt(rng.randint(-bound, bound), rng.randint(-bound, bound)) for v in VARIABLES}


@pytest.fixture
def acceptance_report():
    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
