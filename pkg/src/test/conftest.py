import pytest

from ncp.abext import build_extension
from ncp.places import BaseField

Q = BaseField.rationals()
F7 = BaseField.function_field(7)


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    # mutations and bounds must come from the test, never from the caller's shell
    for name in ("NCP_MUTATIONS", "NCP_DEFAULT_BOUND", "NCP_SCAN_BOUND", "NCP_WITNESS_BOUND", "NCP_DEFAULT_SEED"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rationals():
    return Q


@pytest.fixture
def f7():
    return F7


@pytest.fixture
def m_3_m7():
    """Q(sqrt3, sqrt-7)."""
    return build_extension(Q, 2, [3, -7])


@pytest.fixture
def m_m1_2():
    """Q(sqrt-1, sqrt2): 2 is isolated with gap 1."""
    return build_extension(Q, 2, [-1, 2])


@pytest.fixture
def m_11():
    return build_extension(Q, 2, [11])


@pytest.fixture
def m_f7():
    """F_7(t)(t^(1/3), ((t-1)(t-2))^(1/3))."""
    return build_extension(F7, 3, ["t", "(t-1)*(t-2)"])
