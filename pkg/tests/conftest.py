import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dicke_valve.thermo import BathSpec, NaturalUnits

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def units():
    return NaturalUnits.dimensionless()


def baths(t_hot, t_cold, g_hot=1.0, g_cold=1.0, t_par=None, g_par=0.0):
    hot = BathSpec(t_hot, g_hot, "hot")
    cold = BathSpec(t_cold, g_cold, "cold")
    par = None if t_par is None else BathSpec(t_par, g_par, "parasitic")
    return hot, cold, par


def brute_force_operators(n):
    """Dense collective operators built independently of the package (index 0 = excited)."""
    sp_ = np.array([[0.0, 1.0], [0.0, 0.0]])
    sz = np.diag([0.5, -0.5])

    def site(op, k):
        out = np.eye(1)
        for i in range(n):
            out = np.kron(out, op if i == k else np.eye(2))
        return out

    jp = sum(site(sp_, k) for k in range(n))
    jz = sum(site(sz, k) for k in range(n))
    jm = jp.T
    jx, jy = (jp + jm) / 2, (jp - jm) / 2j
    j2 = jx @ jx + jy @ jy + jz @ jz
    return {"plus": jp, "minus": jm, "z": jz, "j2": j2.real, "site": site}


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.line(number, *acceptance.RESULTS[number]))
