import itertools

import pytest

from cspoly.fbasis import expand_in_f_basis
from cspoly.symcore import SymmetricPoly, tail_valid

ACCEPTANCE_MODULE = "test_acceptance.py"

_outcomes: dict = {}


def box(length: int, lo: int, hi: int, wmax: int, wmin: int = 0, valid_only: bool = True):
    """Integer vectors with entries in [lo, hi] and weight in [wmin, wmax]."""
    for n in itertools.product(range(lo, hi + 1), repeat=length):
        if wmin <= sum(n) <= wmax and (tail_valid(n) or not valid_only):
            yield n


def graded_expand(P: SymmetricPoly, spec) -> dict:
    """f-basis coordinates of a possibly inhomogeneous symmetric polynomial."""
    out: dict = {}
    for d in sorted(P.degrees()):
        part = SymmetricPoly(P.nvars, {k: c for k, c in P.terms.items() if sum(k) == d})
        for m, c in expand_in_f_basis(part, spec).terms.items():
            out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def one_var_coeffs(P) -> list:
    """Coefficient list in z of a one-variable symmetric polynomial."""
    deg = max((sum(k) for k in P.terms), default=-1)
    out = [0] * (deg + 1)
    for k, c in P.terms.items():
        out[sum(k)] = c
    return out


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one numbered acceptance criterion")


def pytest_runtest_logreport(report):
    if ACCEPTANCE_MODULE not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        prev = _outcomes.get(name)
        if prev != "FAIL":
            _outcomes[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_outcomes, key=lambda s: int(s.split("_")[1][1:])):
        terminalreporter.write_line(f"{_outcomes[name]}  {name}")


@pytest.fixture(scope="session")
def kappa():
    from cspoly.coeffs import KAPPA

    return KAPPA
