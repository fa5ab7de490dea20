import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pmsets.model import SET_NAMES, DomainError
from pmsets.schemes import (
    BPSK_XI_MAX,
    FLIP_TOL,
    SchemeParams,
    ask2_point,
    bpsk_point,
    classify,
    erf,
    ook_point,
    point,
    scan,
    xi_from_omega,
)

# High-precision references computed with mpmath.
ASK_08_04031 = (0.529661405320485596, -0.708503037693038670, 0.149975078061543750)
OOK_051_025 = -0.673320053068151


def _erf_series(x):
    """Maclaurin series of erf in 50-digit arithmetic."""
    with mpmath.workdps(50):
        x = mpmath.mpf(x)
        term, total, n = x, x, 0
        while abs(term) > mpmath.mpf(10) ** -45 * max(abs(total), 1):
            n += 1
            term *= -x * x / n
            total += term / (2 * n + 1)
        return float(2 / mpmath.sqrt(mpmath.pi) * total)


def test_erf_against_series():
    xs = np.concatenate([np.linspace(-4, 4, 997), [0.0, 1e-8, -1e-8]])
    worst = max(abs(erf(x) - _erf_series(x)) / max(abs(_erf_series(x)), 1e-300) for x in xs)
    assert len(xs) == 1000
    assert worst <= 1e-15


def test_xi_from_omega():
    assert xi_from_omega(0.0) == 0.0
    assert 1 - math.exp(-xi_from_omega(0.51) ** 2) == pytest.approx(0.51, abs=1e-15)
    with pytest.raises(DomainError):
        xi_from_omega(1.0)


class TestParams:
    def test_validation(self):
        with pytest.raises(DomainError):
            SchemeParams("QPSK", 0.1)
        with pytest.raises(DomainError):
            SchemeParams("BPSK", -0.1)
        with pytest.raises(DomainError):
            SchemeParams("OOK", 0.1, eta=0.0)
        with pytest.raises(DomainError):
            SchemeParams("OOK", 0.1, eta=1.2)
        with pytest.raises(DomainError):
            SchemeParams("2ASK", math.inf)

    def test_name_normalized(self):
        assert SchemeParams("ook", 0.3).scheme == "OOK"


class TestBPSK:
    def test_origin(self):
        p = bpsk_point(0.0)
        assert p.e.as_tuple() == (0.0, 0.0)
        assert (p.w.omega1, p.w.omega2) == (0.0, 0.0)
        assert all(v.member for v in classify(p))

    def test_reference_values(self):
        p = bpsk_point(0.5)
        assert p.e.e1 == pytest.approx(0.682689492137086, abs=1e-14)
        assert p.w.omega1 == pytest.approx(0.221199216928595, abs=1e-14)
        q = bpsk_point(0.4031)
        assert abs(q.e.e_minus) == pytest.approx(1.159744922550308, abs=1e-13)
        assert abs(q.e.e_minus) > 0.6

    def test_range(self):
        bpsk_point(BPSK_XI_MAX)
        with pytest.raises(DomainError):
            bpsk_point(0.9)
        # Mean photon number allows up to sqrt(0.5).
        with pytest.raises(DomainError):
            bpsk_point(0.75, "photon-number")
        assert bpsk_point(0.5, "photon-number").w.omega1 == 0.25

    def test_unknown_threshold_mode(self):
        with pytest.raises(DomainError):
            bpsk_point(0.3, "energy")

    @given(st.floats(0, BPSK_XI_MAX))
    def test_antisymmetric(self, xi):
        assert bpsk_point(xi).e.e_plus == 0.0

    def test_eminus_strictly_increasing(self):
        xs = np.linspace(0, BPSK_XI_MAX, 500)
        em = [abs(bpsk_point(x).e.e_minus) for x in xs]
        assert np.all(np.diff(em) > 0)


class Test2ASK:
    def test_reference_values(self):
        p = ask2_point(0.8, 0.4031)
        e1, e2, w = ASK_08_04031
        assert p.e.as_tuple() == pytest.approx((e1, e2), abs=1e-14)
        assert p.w.omega1 == p.w.omega2 == pytest.approx(w, abs=1e-15)

    def test_identical_states(self):
        p = ask2_point(0.7, 0.0)
        assert p.e.e1 == p.e.e2 and (p.w.omega1, p.w.omega2) == (0.0, 0.0)

    @given(st.floats(0, 0.8))
    def test_vacuum_second_input(self, xi):
        assert ask2_point(xi, xi).e.e2 == -1.0

    def test_threshold_range(self):
        with pytest.raises(DomainError):
            ask2_point(1.0, 0.9)


class TestOOK:
    def test_vacuum(self):
        p = ook_point(0.0)
        assert p.e.as_tuple() == (-1.0, -1.0) and p.w.omega1 == 0.0

    def test_reference_values(self):
        xi = xi_from_omega(0.51)
        assert ook_point(xi).e.e1 == pytest.approx(0.02, abs=1e-14)
        assert ook_point(xi, 0.25).e.e1 == pytest.approx(OOK_051_025, abs=1e-14)

    def test_ideal_detector_verdicts(self):
        v = {x.set_name: x for x in classify(ook_point(xi_from_omega(0.51)))}
        assert v["classical-avg"].member and abs(v["classical-avg"].margin) <= 1e-12
        assert not v["det-peak-1"].member
        assert v["det-peak-1"].margin == pytest.approx(0.51 - 1.0098, abs=1e-12)

    @settings(max_examples=200)
    @given(st.floats(1e-3, 2.0), st.floats(1e-3, 1.0))
    def test_det_peak_always_violated(self, xi, eta):
        p = ook_point(xi, eta)
        margin = {v.set_name: v.margin for v in classify(p)}
        assert margin["det-peak-1"] < 0

    @given(st.floats(1e-3, 2.0))
    def test_classical_boundary_at_unit_efficiency(self, xi):
        p = ook_point(xi)
        assert abs({v.set_name: v.margin for v in classify(p)}["classical-avg"]) <= 1e-12

    def test_monotone(self):
        xs = np.linspace(0, 2, 200)
        assert np.all(np.diff([ook_point(x, 0.3).e.e1 for x in xs]) > 0)
        etas = np.linspace(0.01, 1, 200)
        assert np.all(np.diff([ook_point(0.8, eta).e.e1 for eta in etas]) > 0)


@settings(max_examples=200)
@given(st.sampled_from(["BPSK", "2ASK", "OOK"]), st.floats(0, 0.83), st.floats(0, 0.83),
       st.floats(0.01, 1.0))
def test_scheme_points_are_quantum(scheme, xi, eps, eta):
    p = point(SchemeParams(scheme, xi, eps, eta))
    verdicts = classify(p)
    assert [v.set_name for v in verdicts] == list(SET_NAMES)
    assert verdicts[0].member


class TestScan:
    def test_bpsk_flips(self):
        r = scan("BPSK", "xi", 0.0, BPSK_XI_MAX, 200)
        avg = [v for v in r.flips_for("det-avg-1") if v > 0.1]
        peak = [v for v in r.flips_for("det-peak-1") if v > 0.1]
        assert avg == [pytest.approx(0.55, abs=0.005)]
        assert peak == [pytest.approx(0.63, abs=0.005)]
        assert r.flips_for("det-avg-2") == r.flips_for("det-avg-1")

    def test_flip_resolution(self):
        r = scan("BPSK", "xi", 0.5, 0.6, 3)
        (flip,) = [f for f in r.flips if f.set_name == "det-avg-1"]
        p_in, p_out = bpsk_point(flip.value + FLIP_TOL), bpsk_point(flip.value - FLIP_TOL)
        assert classify(p_in)[3].member and not classify(p_out)[3].member
        assert flip.member_below is False

    def test_origin_row_is_inside_everything(self):
        r = scan("BPSK", "xi", 0.0, 0.1, 5)
        assert all(v.member for v in r.rows[0].verdicts)

    def test_ook_eta_no_peak_flip(self):
        r = scan("OOK", "eta", 0.01, 1.0, 100, fixed={"omega1": 0.51})
        assert r.flips_for("det-peak-1") == []
        assert all(not row.verdicts[5].member for row in r.rows)

    def test_ask_epsilon_scan(self):
        r = scan("2ASK", "epsilon", 0.0, 0.5, 20, fixed={"xi": 0.8})
        assert len(r.rows) == 20 and r.rows[0].point.e.e_minus == 0.0

    def test_ook_omega_scan(self):
        r = scan("OOK", "omega1", 0.0, 0.9, 10, fixed={"eta": 0.5})
        assert r.rows[-1].point.w.omega1 == pytest.approx(0.9)

    @pytest.mark.parametrize("args", [
        ("BPSK", "xi", 0.3, 0.3, 10), ("BPSK", "xi", 0.3, 0.2, 10), ("BPSK", "xi", 0, 0.5, 1),
        ("BPSK", "eta", 0, 0.5, 10), ("QAM", "xi", 0, 0.5, 10),
    ])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            scan(*args)

    def test_deterministic(self):
        a = scan("BPSK", "xi", 0.0, 0.8, 40)
        b = scan("BPSK", "xi", 0.0, 0.8, 40)
        assert a == b
