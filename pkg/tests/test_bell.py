import math

import numpy as np
import pytest

from qdl.bell import (
    bell_closed_form,
    chsh_brute_force,
    chsh_value,
    correlation_tensor,
    horodecki_bmax,
    violates_chsh,
    violation_boundary,
)
from qdl.states import Scenario, ScenarioParams, scenario_density

SQ2 = math.sqrt(2.0)
SINGLET = np.array([0, 1, -1, 0], dtype=complex) / SQ2


def singlet_rho():
    return np.outer(SINGLET, SINGLET.conj())


def test_tensor_maximally_mixed():
    assert np.allclose(correlation_tensor(np.eye(4) / 4), np.zeros((3, 3)), atol=1e-14)


def test_tensor_singlet():
    assert np.allclose(correlation_tensor(singlet_rho()), np.diag([-1, -1, -1]), atol=1e-12)


def test_tensor_combined_full_tagging():
    # d = 1: T = diag(-r_s r_m, -r_s r_m, -1); the diagonal y entry carries the
    # same sign as the x entry (the r_s = r_m = 1 point is the singlet).
    for r_s, r_m in ((1.0, 1.0), (0.8, 0.6), (0.5, 0.25)):
        rho = scenario_density(ScenarioParams(d=1.0, r_s=r_s, r_m=r_m), Scenario.COMBINED)
        t = correlation_tensor(rho)
        assert np.allclose(t, np.diag([-r_s * r_m, -r_s * r_m, -1.0]), atol=1e-12)


def test_tensor_entries_bounded():
    rng = np.random.default_rng(31)
    for _ in range(20):
        params = ScenarioParams(d=rng.uniform(0, 1), r_s=rng.uniform(0, 1), r_m=rng.uniform(0, 1))
        t = correlation_tensor(scenario_density(params, Scenario.COMBINED))
        assert np.max(np.abs(t)) <= 1 + 1e-12


def test_horodecki_maximally_mixed():
    assert horodecki_bmax(np.eye(4) / 4) == pytest.approx(0.0, abs=1e-12)


def test_horodecki_tsirelson_point():
    rho = scenario_density(ScenarioParams(r=0.5, d=1.0), Scenario.FREE)
    assert horodecki_bmax(rho) == pytest.approx(2 * SQ2, abs=1e-12)


def test_horodecki_on_system_boundary():
    rho = scenario_density(ScenarioParams(d=0.8, r_s=0.6), Scenario.SYSTEM)
    assert horodecki_bmax(rho) == pytest.approx(2.0, abs=1e-10)


def test_closed_form_free_no_monitoring():
    for r in (0.0, 0.3, 0.5):
        assert bell_closed_form(Scenario.FREE, ScenarioParams(r=r, d=0.0)) == pytest.approx(2.0)


def test_closed_form_meter_points():
    assert bell_closed_form(Scenario.METER, ScenarioParams(d=0.5, r_m=1.0)) == pytest.approx(
        2 * math.sqrt(1.25), abs=1e-12
    )
    assert bell_closed_form(
        Scenario.METER, ScenarioParams(d=math.sqrt(0.5), r_m=0.0)
    ) == pytest.approx(2 * math.sqrt(0.75), abs=1e-12)


def test_closed_form_matches_horodecki_on_grid():
    line = np.linspace(0, 1, 7)
    for scenario in Scenario:
        for d in line:
            for r in line:
                params = (
                    ScenarioParams(r=r, d=d)
                    if scenario is Scenario.FREE
                    else ScenarioParams(d=d, r_s=r, r_m=1 - 0.6 * r)
                )
                rho = scenario_density(params, scenario)
                assert abs(bell_closed_form(scenario, params) - horodecki_bmax(rho)) < 1e-10


def test_chsh_value_canonical_settings():
    a = np.array([0.0, 0.0, 1.0])
    a2 = np.array([1.0, 0.0, 0.0])
    b = -(a + a2) / SQ2
    b2 = (a2 - a) / SQ2
    assert chsh_value(singlet_rho(), a, a2, b, b2) == pytest.approx(2 * SQ2, abs=1e-12)


def test_chsh_value_degenerate_settings():
    rng = np.random.default_rng(32)
    for _ in range(5):
        params = ScenarioParams(d=rng.uniform(0, 1), r_s=rng.uniform(0, 1))
        rho = scenario_density(params, Scenario.SYSTEM)
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        w = rng.standard_normal(3)
        w /= np.linalg.norm(w)
        val = chsh_value(rho, v, v, w, w)
        assert abs(val) <= 2 + 1e-12


def test_chsh_value_product_state_bound():
    rho = np.kron(np.diag([0.2, 0.8]), np.diag([0.9, 0.1])).astype(complex)
    rng = np.random.default_rng(33)
    for _ in range(20):
        vs = rng.standard_normal((4, 3))
        vs /= np.linalg.norm(vs, axis=1, keepdims=True)
        assert abs(chsh_value(rho, *vs)) <= 2 + 1e-12


def test_chsh_value_consistent_with_tensor_route():
    rng = np.random.default_rng(34)
    params = ScenarioParams(d=0.7, r_s=0.6, r_m=0.9)
    rho = scenario_density(params, Scenario.COMBINED)
    t = correlation_tensor(rho)
    for _ in range(10):
        vs = rng.standard_normal((4, 3))
        vs /= np.linalg.norm(vs, axis=1, keepdims=True)
        a, a2, b, b2 = vs
        via_t = a @ t @ b + a @ t @ b2 + a2 @ t @ b - a2 @ t @ b2
        assert chsh_value(rho, a, a2, b, b2) == pytest.approx(via_t, abs=1e-12)


def test_chsh_value_rejects_non_unit_vectors():
    with pytest.raises(ValueError):
        chsh_value(singlet_rho(), [1, 1, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1])


def test_brute_force_singlet():
    res = chsh_brute_force(singlet_rho(), restarts=32)
    assert res.b_brute == pytest.approx(2 * SQ2, abs=1e-5)


def test_brute_force_maximally_mixed():
    res = chsh_brute_force(np.eye(4) / 4, restarts=32)
    assert res.b_brute == pytest.approx(0.0, abs=1e-6)


def test_brute_force_system_point():
    rho = scenario_density(ScenarioParams(d=0.9, r_s=0.9), Scenario.SYSTEM)
    res = chsh_brute_force(rho, restarts=32)
    assert res.b_brute == pytest.approx(2 * math.sqrt(1.62), abs=1e-5)


def test_brute_force_never_exceeds_horodecki():
    rng = np.random.default_rng(35)
    for _ in range(6):
        params = ScenarioParams(d=rng.uniform(0, 1), r_s=rng.uniform(0, 1), r_m=rng.uniform(0, 1))
        rho = scenario_density(params, Scenario.COMBINED)
        res = chsh_brute_force(rho, restarts=16)
        assert res.b_brute <= res.b_horodecki + 1e-6
        assert res.b_brute >= res.b_horodecki - 1e-5


def test_brute_force_deterministic():
    rho = scenario_density(ScenarioParams(d=0.6, r_s=0.7), Scenario.SYSTEM)
    r1 = chsh_brute_force(rho, restarts=8, seed=3)
    r2 = chsh_brute_force(rho, restarts=8, seed=3)
    assert r1.b_brute == r2.b_brute
    assert np.array_equal(r1.settings, r2.settings)


def test_brute_force_settings_are_unit_vectors():
    res = chsh_brute_force(singlet_rho(), restarts=8)
    assert res.settings.shape == (4, 3)
    assert np.allclose(np.linalg.norm(res.settings, axis=1), 1.0, atol=1e-12)


def test_tsirelson_bound_everywhere():
    rng = np.random.default_rng(36)
    for _ in range(30):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        assert horodecki_bmax(rho) <= 2 * SQ2 + 1e-12


def test_gisin_property_on_free_grid():
    for d in np.linspace(0.05, 1, 8):
        for u in np.linspace(0.05, 1, 8):
            r = (1 - math.sqrt(1 - u * u)) / 2
            rho = scenario_density(ScenarioParams(r=r, d=d), Scenario.FREE)
            assert horodecki_bmax(rho) > 2.0


def test_violation_predicate_uses_strict_boundary():
    assert not violates_chsh(2.0)
    assert not violates_chsh(2.0 + 5e-10)
    assert violates_chsh(2.0 + 5e-9)


def test_boundary_system_full_robustness():
    for d in (0.01, 0.2, 0.9):
        res = violation_boundary(Scenario.SYSTEM, ScenarioParams(d=d, r_s=1.0))
        assert res.d_threshold == pytest.approx(0.0)
        assert res.violates


def test_boundary_meter_regimes():
    res = violation_boundary(Scenario.METER, ScenarioParams(d=0.01, r_m=0.8))
    assert res.d_threshold == 0.0 and res.violates
    res = violation_boundary(Scenario.METER, ScenarioParams(d=0.9, r_m=0.0))
    assert res.d_threshold == pytest.approx(1.0)
    assert not res.violates


def test_boundary_combined_example():
    res = violation_boundary(Scenario.COMBINED, ScenarioParams(r_s=1.0, r_m=0.5))
    assert res.d_threshold**2 == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_boundary_combined_meter_limit():
    # r_m = 1 falls back to the system-decoherence boundary
    res = violation_boundary(Scenario.COMBINED, ScenarioParams(r_s=0.6, r_m=1.0))
    assert res.d_threshold == pytest.approx(0.8, abs=1e-12)


def test_boundary_thresholds_sit_on_b_equals_2():
    for r_s in np.linspace(0.1, 1, 5):
        for r_m in np.linspace(0.1, 1, 5):
            params = ScenarioParams(r_s=r_s, r_m=r_m)
            d = violation_boundary(Scenario.COMBINED, params).d_threshold
            rho = scenario_density(ScenarioParams(d=d, r_s=r_s, r_m=r_m), Scenario.COMBINED)
            assert abs(horodecki_bmax(rho) - 2.0) < 1e-9
