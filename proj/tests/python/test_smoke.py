import math

import numpy as np
import pytest

import gsteady


def test_restitution_values():
    visco = gsteady.RestitutionModel.viscoelastic(1.0)
    assert visco(0.0) == 1.0
    assert visco(1.0) == pytest.approx(0.412320197142, abs=1e-10)
    power = gsteady.RestitutionModel.power_law(1.0, 0.5)
    assert power(4.0) == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert power.rescaled(0.5).rescaled(0.5)(2.0) == power(0.5)
    with pytest.raises(ValueError):
        power(-1.0)


def test_head_on_collision():
    model = gsteady.RestitutionModel.constant(0.5)
    v, vs = gsteady.post_collision_sigma((1, 0, 0), (-1, 0, 0), (-1, 0, 0), model)
    assert v == pytest.approx([-0.5, 0, 0])
    assert vs == pytest.approx([0.5, 0, 0])
    assert gsteady.energy_loss((1, 0, 0), (-1, 0, 0), (-1, 0, 0), model) == pytest.approx(1.5)


def test_theta_and_zeta():
    theta, printed = gsteady.theta_limit(1.0, 0.2)
    assert theta == pytest.approx(1.0649041657330353, rel=1e-12)
    assert printed == pytest.approx(1.11205150107275, rel=1e-12)
    assert gsteady.zeta_zero(1.0, 0.2, 4.0) == pytest.approx(4.0**1.6 / 4.2, rel=1e-14)
    spec = gsteady.DissipationSpec(gsteady.RestitutionModel.constant(0.5))
    assert spec.psi(4.0) == pytest.approx(8.0 * 0.75 / 8.0, rel=1e-13)


def test_maps_and_povzner():
    maps = gsteady.MapBundle(gsteady.RestitutionModel.power_law(1.0, 0.2))
    for r in (1e-3, 0.7, 12.0):
        assert maps.alpha(maps.eta(r)) == pytest.approx(r, rel=1e-12)
        assert 0.125 <= maps.jacobian(r) <= 1.0
    margin = gsteady.povzner_margin((0.3, -1.0, 0.2), (1.1, 0.4, -0.5), 2.0, gsteady.RestitutionModel.viscoelastic(1.0))
    assert margin >= 0.0


def test_elastic_run_keeps_temperature():
    engine = gsteady.EngineConfig()
    engine.n = 2000
    engine.mu = 0.0
    run = gsteady.RunConfig()
    run.window = 20
    run.burn_in = 5
    run.max_steps = 1000
    initial = gsteady.Ensemble.initial("maxwellian", 1.5, engine.n, 7)
    report, final = gsteady.run_to_steady(engine, run, gsteady.RestitutionModel.elastic(), initial)
    assert report.converged
    assert report.temperature == pytest.approx(1.5, rel=1e-10)
    v = final.velocities
    assert v.shape == (2000, 3)
    assert np.abs(v.mean(axis=0)).max() < 1e-12
    m = gsteady.moments(final)
    assert m[0.0] == 1.0
    assert m[1.0] == pytest.approx(4.5, rel=1e-10)


def test_ensemble_roundtrip_and_rescale():
    v = np.array([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    e = gsteady.Ensemble(v)
    assert gsteady.moments(e)[1.0] == 1.0
    assert gsteady.moments(e.rescaled(0.5))[1.0] == 4.0
    assert gsteady.lambda_from_mu(2.0**-4, 1.0) == pytest.approx(0.5, rel=1e-15)


def test_fast_suite_passes():
    rows = gsteady.verify("maps")
    assert rows and all(r["passed"] for r in rows)


def test_cli_theta():
    code, out, _ = gsteady.run_cli(["theta", "--gamma", "0.2"])
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "a,gamma,theta_oracle,theta_paper_formula"
    assert math.isclose(float(row.split(",")[2]), 1.0649041657330353, rel_tol=1e-12)
    code, _, err = gsteady.run_cli(["verify", "--suite", "nope"])
    assert code == 1 and "nope" in err
