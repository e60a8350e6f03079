import pytest

from toriczeta.ff import make_tower
from toriczeta.laurent import parse_laurent

ACCEPTANCE = []


def dwork_text(n, lam):
    inv = "*".join(f"x{i}^-1" for i in range(1, n + 1))
    return " + ".join([f"x{i}" for i in range(1, n + 1)] + [inv, str(lam)])


@pytest.fixture
def dwork():
    def make(n, lam, p, k_max=1):
        tower = make_tower(p, 1, k_max)
        return parse_laurent(dwork_text(n, lam % p), tower.base, n=n), tower

    return make


@pytest.fixture
def acceptance():
    """record(name, ok, detail): prints one PASS/FAIL line and keeps it for the summary."""

    def record(name, ok, detail):
        line = f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        ACCEPTANCE.append((name, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}: {detail}")
