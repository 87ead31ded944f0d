import pytest

from nakcot.core.algebra import NakayamaAlgebra
from nakcot.core.category import modcat
from nakcot.core.labels import EXAMPLE_U, EXAMPLE_W, load_label_dictionary
from nakcot.cotorsion import check_cotorsion_pair
from nakcot.subcat.base import Subcat, right_perp


def cat_of(n: int, m: int, p: int = 2):
    return modcat(NakayamaAlgebra(n, m, p))


def named(cat, names) -> Subcat:
    d = load_label_dictionary()
    return Subcat.of(cat, [d[x] for x in names])


@pytest.fixture(scope="session")
def cat94():
    return cat_of(9, 4)


@pytest.fixture(scope="session")
def labels94():
    return load_label_dictionary()


@pytest.fixture(scope="session")
def example_pair(cat94):
    U = named(cat94, EXAMPLE_U)
    pair = check_cotorsion_pair(None, U, right_perp(U))
    assert pair.ok
    return pair


@pytest.fixture(scope="session")
def example_W(cat94):
    return named(cat94, EXAMPLE_W)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(k: int, ok: bool, summary: str) -> None:
    ACCEPTANCE[k] = (ok, summary)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {summary}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, summary = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {summary}")
