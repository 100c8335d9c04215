# tests/test_cocycles.py
import pytest

from kummer_chow_verifier.sub_checks.cocycles import tools
from kummer_chow_verifier.sub_checks.cocycles.tools import chi, eta, phi, verify_cocycle
from kummer_chow_verifier.sub_checks.group_engine.tools import gx_identity, gx_random
from kummer_chow_verifier.sub_checks.rational_field.tools import ONE, fe_mul, fe_neg


def test_identity_values():
    e = gx_identity()
    assert chi(e) == ONE
    assert eta(e) == ONE
    assert phi(e.tau, 1) == ONE and phi(e.tau, 2) == ONE


def test_chi_squares_to_eta_on_samples(rng):
    for _ in range(200):
        rho = gx_random(rng)
        assert fe_mul(chi(rho), chi(rho)) == eta(rho)


def test_zeta_minus_one_negates_chi(rng):
    rho = gx_random(rng)
    flipped = rho.__class__(rho.rho1, rho.rho2, rho.tau1, rho.tau2, (rho.zeta + 2) % 4)
    assert chi(flipped) == fe_neg(chi(rho))


@pytest.mark.parametrize("which", ["chi", "eta"])
def test_cocycle_identity_sampled(which):
    report = verify_cocycle(which, samples=300, seed=7, include_generators=False)
    assert report.pairs_checked == 300
    assert report.holds, report.failures


@pytest.mark.parametrize("which", ["phi1", "phi2"])
def test_phi_cocycles_sampled(which):
    report = verify_cocycle(which, samples=500, seed=11)
    assert report.holds, report.failures


def test_exhaustive_mode_is_phi_only():
    with pytest.raises(ValueError):
        verify_cocycle("chi", samples="exhaustive")


def test_eta_sign_square():
    assert tools.verify_eta_sign_square() is None


def test_suite_checks_pass(settings):
    for check in (tools.check_phi_separation, tools.check_phi_values, tools.check_chi_cocycle,
                  tools.check_eta_cocycle, tools.check_chi_inverse):
        assert check(settings).passed


@pytest.mark.slow
def test_chi_squares_to_eta_everywhere():
    assert tools.verify_eta_square() is None


@pytest.mark.slow
def test_phi1_cocycle_exhaustive():
    report = verify_cocycle("phi1", samples="exhaustive")
    assert report.pairs_checked == 576 ** 2
    assert report.holds
