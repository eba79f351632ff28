import cmath
import math

import pytest

import hamfam

ONES = {"alpha": 1, "eta1": 1, "eta2": 1}
NONAUTO = {"alpha1": 0.3 + 0.1j, "alpha2": 0.2, "alpha3": -0.4 + 0.2j}


def test_hamiltonian_text():
    assert hamfam.hamiltonian("autonomous5") == "q^5*p^2 + q^4*p*alpha + q^3*p*eta1 + p*eta2"


@pytest.mark.parametrize("family", ["autonomous5", "nonautonomous3"] + [f"general:{n}" for n in range(2, 9)])
def test_all_certificates_pass(family):
    checks = hamfam.verify(family)
    assert checks
    assert all(c["pass"] for c in checks), checks


def test_mutation_is_reported():
    checks = hamfam.verify("autonomous5", mutate="map:3")
    failed = [c for c in checks if not c["pass"]]
    assert failed and all(c["residual"] for c in failed)


def test_integrate_bounded_orbit_conserves_energy():
    tr = hamfam.integrate("autonomous5", ONES, 0.5j, 0.1, t1=1.0)
    assert tr["termination"] == "completed"
    assert len(tr["t"]) == 1001
    assert tr["drift"] < 1e-10


def test_blow_up_terminates():
    tr = hamfam.integrate("autonomous5", ONES, 1.0, 0.0)
    assert tr["termination"] == "overflow"
    assert tr["t"][-1] < 0.17


def test_convergence_order():
    sw = hamfam.drift_convergence("autonomous5", ONES, 0.5j, 0.1, [1e-2, 5e-3, 2.5e-3])
    assert 3.7 <= sw["order"] <= 4.3


def test_nonautonomous_map_has_order_eight():
    img = hamfam.apply_map("nonautonomous3", "s-nonauto", NONAUTO, 0.6 + 0.3j, 0.1, 0.2, power=8)
    assert cmath.isclose(img["q"], 0.6 + 0.3j, abs_tol=1e-12)
    assert cmath.isclose(img["p"], 0.1, abs_tol=1e-9)
    assert cmath.isclose(img["t"], 0.2, abs_tol=1e-12)


def test_autonomous_map_image():
    img = hamfam.apply_map("autonomous5", "s-auto", ONES, 1.0, 0.0)
    assert img["p"] == 3
    assert img["params"] == {"alpha": -1, "eta1": -1, "eta2": -1}


def test_errors():
    with pytest.raises(ValueError):
        hamfam.integrate("autonomous5", {"alpha": 1}, 1.0, 0.0)
    with pytest.raises(Exception):
        hamfam.integrate("autonomous5", ONES, 0.0, 0.0)
    assert math.isnan(hamfam.drift_convergence("autonomous5", ONES, 1.0, 0.0, [1e-3, 5e-4])["order"])
