import cmath
import itertools
import math
import random
from collections import defaultdict

import pytest

from abelian_tv.cellcomplex import CellComplex, builtin
from abelian_tv.intlinalg import IntMatrix

BUILTINS = ["s3", "s1xs2", "rp3"]
LENS_ORDERS = [3, 4, 5]


def all_complexes():
    return [builtin(n) for n in BUILTINS] + [builtin("lens", p) for p in LENS_ORDERS]


# Cycle test sets per complex family: trivial, free, torsion and mixed
# representatives, including every worked-example cycle.
PRIMAL_CYCLES = {
    "s3": [(0, 0), (1, 0), (0, 1), (2, -1)],
    "s1xs2": [(0, 0, 0, 0, 0), (1, 1, 1, 0, 0), (0, 0, 0, 1, 0), (1, 1, 1, 1, 0)],
    "heegaard": [(0, 0, 0, 0), (1, 0, 0, 1), (1, 1, 0, 0), (0, 1, 1, 0)],
}
DUAL_CYCLES = {
    "s3": [(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, -1)],
    "s1xs2": [(0, 0, 0, 0), (1, -1, 1, 1), (0, 0, 1, 0), (1, -1, 0, 0)],
    "heegaard": [(0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 1, 1), (1, -1, 1, 0)],
}


def family(c: CellComplex) -> str:
    return c.name if c.name in ("s3", "s1xs2") else "heegaard"


def cycle_pairs(c: CellComplex):
    f = family(c)
    return list(itertools.product(PRIMAL_CYCLES[f], DUAL_CYCLES[f]))


def float_tv_oracle(c: CellComplex, N: int, z1, z2) -> complex:
    """Direct double sum over dual and primal labelings with floating exponentials."""
    d = c.boundary2.T.to_rows()
    w = c.orientation
    total = 0j
    hist = defaultdict(int)
    for l in itertools.product(range(N), repeat=c.E):
        dl = [sum(r[i] * l[i] for i in range(c.E)) for r in d]
        hol = sum(a * b for a, b in zip(l, z1))
        for m in itertools.product(range(N), repeat=c.F):
            hist[(sum(a * b for a, b in zip(m, dl)) + hol + sum(a * b for a, b in zip(m, z2))) % N] += 1
    for k, cnt in hist.items():
        total += cnt * cmath.exp(2j * math.pi * w * k / N)
    return total / N ** (c.F + c.V - 1)


def signed_permutation(n: int, rng: random.Random):
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        rows[i][j] = signs[i]
    return IntMatrix.from_rows(rows, cols=n) if n else IntMatrix.zeros(0, 0)


def relabel(c: CellComplex, rng: random.Random):
    """Reorder and reorient every cell; returns the new complex and the edge/face maps.

    Orientation of M is untouched; the matching dual cells are reoriented
    along with the primal ones, so intersection numbers stay ``+delta``.
    """
    q3, q2, q1, q0 = (signed_permutation(n, rng) for n in (c.P, c.F, c.E, c.V))
    b3 = q2 @ c.boundary3 @ q3.T
    b2 = q1 @ c.boundary2 @ q2.T
    b1 = q0 @ c.boundary1 @ q1.T
    return CellComplex(c.name + "~", b3, b2, b1, orientation=c.orientation), q1, q2


@pytest.fixture
def rng():
    return random.Random(20240611)


# -- per-criterion pass/fail lines for the acceptance suite -------------------

_CRITERIA: dict[int, dict[str, int]] = defaultdict(lambda: defaultdict(int))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        key = "xfailed" if hasattr(report, "wasxfail") and report.skipped else report.outcome
        if hasattr(report, "wasxfail") and report.passed:
            key = "xpassed"
        _CRITERIA[marker][key] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        counts = _CRITERIA[n]
        ok = counts["passed"] and not (counts["failed"] or counts["xfailed"] or counts["xpassed"])
        detail = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()) if v)
        note = " (literal instances fail as documented in the decisions ledger)" if counts["xfailed"] else ""
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  [{detail}]{note}")
