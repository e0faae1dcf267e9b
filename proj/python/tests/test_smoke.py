import math

import numpy as np
import pytest

import pprc


def test_unit_bump_mass():
    # pi (1/e - E1(1)), mpmath
    assert pprc.unit_bump_mass() == pytest.approx(0.46651239317833007, rel=1e-13)


def test_experiment_geometry():
    pg = pprc.presets.experiment_pair()
    assert pg.kind == "fan-fan"
    rep = pprc.check_pair_admissible(pg)
    assert rep.admissible
    assert rep.orientation == -1
    assert pg.domain.area == pytest.approx(3818.8970588235297, rel=1e-12)
    x = pg.intersection(1.5 * math.pi, 2 * math.pi)
    assert x == pytest.approx((0.0, 0.0), abs=1e-12)


def test_attenuated_pair_has_no_kernels():
    assert pprc.known_kernels(pprc.presets.experiment_pair()) is None
    k = pprc.known_kernels(pprc.presets.experiment_pair(0.0))
    assert k.sign == -1
    assert k.first(-math.pi / 2) == pytest.approx(-1 / 80)


def test_pprc_holds_for_projections():
    pg = pprc.presets.experiment_pair(0.0)
    f = pprc.random_phantom(pg.domain, 3, 11)
    g1 = pprc.presets.view_grid(pg, 1, 1000)
    g2 = pprc.presets.view_grid(pg, 2, 1000)
    p1 = pprc.project_view(pg.first, f, g1)
    p2 = pprc.project_view(pg.second, f, g2)
    a, b = pprc.pprc_terms(g1, p1, g2, p2, pprc.known_kernels(pg))
    assert abs(a - b) < 1e-6 * max(abs(a), abs(b))


def test_adjoint_identity():
    pg = pprc.presets.experiment_pair()
    img = pprc.ImageGrid(32, 32, 70.0, pg.domain)
    A = pprc.PairOperator(pg, img, pprc.presets.view_grid(pg, 1, 16), pprc.presets.view_grid(pg, 2, 16))
    rng = np.random.default_rng(0)
    f = rng.standard_normal(A.cols)
    g = rng.standard_normal(A.rows)
    lhs = A.apply(f) @ g
    rhs = f @ A.apply_adjoint(g)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_cgne_on_small_experiment():
    pg = pprc.presets.experiment_pair()
    g1 = pprc.presets.view_grid(pg, 1, 24)
    g2 = pprc.presets.view_grid(pg, 2, 24)
    A = pprc.PairOperator(pg, pprc.ImageGrid(48, 48, 70.0, pg.domain), g1, g2)
    t1, t2 = pprc.inconceivable_target(g1, g2, pprc.central_parameter(pg.second, pg.domain))
    assert not t1.any() and t2.max() == pytest.approx(0.25, abs=0.01)
    st = pprc.cgne_solve(A, np.concatenate([t1, t2]), max_iter=300, tol=1e-3)
    assert st["reason"] == "converged"
    assert np.all(np.diff(st["residual_history"]) <= 1e-14)


def test_G_at_counterexample_is_half_the_quoted_constant():
    mu = -0.154
    t = pprc.counterexample_tuple(0.0)
    G = pprc.eval_G(*t, mu, (0.0, -40.0))
    assert G == pytest.approx(0.5 * pprc.quoted_G_constant() * mu * 40.0, rel=1e-12)


def test_errors_map_to_python():
    with pytest.raises(pprc.ConfigurationError):
        pprc.DetectorGrid(0.0, 1.0, 1)
    with pytest.raises(pprc.DomainError):
        pprc.eval_G(1.0, 2.0, 1.0, 2.5, -0.154, (0.0, -40.0))
