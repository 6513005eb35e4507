import os

import pytest
from hypothesis import HealthCheck, settings

from semiexact.algebra import (
    NATURALS,
    boolean_monoid,
    builtin_semiring,
    cyclic_group,
    make_morphism,
    saturating_monoid,
)
from semiexact.explorer.enumeration import corpus_up_to
from semiexact.explorer.generators import homs

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SAMPLES = os.path.join(os.path.dirname(__file__), os.pardir, "samples")


@pytest.fixture(scope="session")
def T1():
    return saturating_monoid(1)


@pytest.fixture(scope="session")
def T2():
    return saturating_monoid(2)


@pytest.fixture(scope="session")
def Z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def Z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def B():
    return boolean_monoid()


@pytest.fixture(scope="session")
def f_sat(T2, T1):
    return make_morphism(T2, T1, [0, 1, 1], "f_sat")


@pytest.fixture(scope="session")
def monoids4():
    """Every commutative monoid of order at most 4, up to isomorphism."""
    return corpus_up_to(NATURALS, 4)


@pytest.fixture(scope="session")
def monoid_homs(monoids4):
    """Every morphism between corpus monoids of order at most 4."""
    return [f for M in monoids4 for N in monoids4 for f in homs(M, N)]


def small_semirings():
    return [
        NATURALS,
        builtin_semiring("boolean"),
        builtin_semiring("trunc_nat", 2),
        builtin_semiring("zmod", 2),
        builtin_semiring("zmod", 3),
        builtin_semiring("trunc_tropical_min", 1),
    ]


def samples_path(name: str) -> str:
    return os.path.normpath(os.path.join(SAMPLES, name))


# one summary line per acceptance criterion, printed at the end of the run
_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        verdict = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
