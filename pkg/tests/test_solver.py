import numpy as np
import pytest

from infopower import solver
from infopower.errors import NotCommuting
from infopower.information import LN2, LogBase, mutual_information
from infopower.objects import (
    Ensemble,
    Povm,
    anti_tetrahedral_ensemble,
    maximally_mixed,
    random_povm,
    random_pure_states,
    standard_projective_povm,
    tensor_povm,
    tetrahedral_sic_povm,
    trine_povm,
)
from infopower.solver import (
    AdditivityReport,
    PowerReport,
    SolverConfig,
    additivity_check,
    commuting_fast_path,
    informational_power,
    see_saw_power,
    state_gradient,
)

from helpers import (
    SIC_W_BITS,
    TRINE_W_BITS,
    fd_state_gradient,
    mi_bits_pure,
    random_commuting_elements,
    random_unitary,
)


# ---------------------------------------------------------------------------
# configuration


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(restarts=0)
    with pytest.raises(ValueError):
        SolverConfig(tol=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_outer_iter=0)
    with pytest.raises(ValueError):
        SolverConfig(prune_tol=1.0)


def test_num_states_default_and_bounds():
    cfg = SolverConfig()
    assert cfg.resolved_num_states(3) == 9
    with pytest.raises(ValueError):
        SolverConfig(num_states=2).resolved_num_states(3)
    with pytest.warns(UserWarning):
        assert SolverConfig(num_states=10).resolved_num_states(3) == 10


# ---------------------------------------------------------------------------
# commuting fast path


def test_fast_path_projective_baselines():
    for dim in (2, 3, 4):
        rep = commuting_fast_path(standard_projective_povm(dim))
        assert rep.fast_path_used
        assert rep.w_estimate == pytest.approx(np.log2(dim), abs=1e-9)
        assert rep.pruned_to == dim


def test_fast_path_rejects_noncommuting():
    with pytest.raises(NotCommuting):
        commuting_fast_path(tetrahedral_sic_povm())


def test_fast_path_m_eff_at_most_dim():
    for seed in range(5):
        rng = np.random.default_rng(seed)
        dim = 2 + seed % 2
        p = Povm(random_commuting_elements(dim, dim + 2, rng))
        rep = commuting_fast_path(p)
        assert rep.pruned_to <= dim
        assert rep.converged


def test_dispatch_uses_fast_path_only_when_commuting():
    assert informational_power(standard_projective_povm(2)).fast_path_used
    cfg = SolverConfig(restarts=2, seed=0)
    assert not informational_power(tetrahedral_sic_povm(), cfg).fast_path_used


def test_trivial_povm_power_is_zero():
    rep = informational_power(Povm(np.eye(2)[None, :, :]))
    assert abs(rep.w_estimate) <= 1e-12


# ---------------------------------------------------------------------------
# see-saw on analytic instances


def test_see_saw_sic():
    rep = see_saw_power(tetrahedral_sic_povm(), SolverConfig(restarts=6, seed=0))
    assert rep.w_estimate == pytest.approx(SIC_W_BITS, abs=1e-9)
    assert rep.converged
    assert rep.pruned_to == 4


def test_see_saw_trine():
    rep = see_saw_power(trine_povm(), SolverConfig(restarts=6, seed=0))
    assert rep.w_estimate == pytest.approx(TRINE_W_BITS, abs=1e-9)
    assert rep.pruned_to == 3
    assert rep.bound_check.real_entries
    assert rep.bound_check.real_passed


def test_report_invariants():
    p = tetrahedral_sic_povm()
    cfg = SolverConfig(restarts=4, seed=1)
    rep = see_saw_power(p, cfg)
    assert isinstance(rep, PowerReport)
    # lower-bound soundness: the reported value is the recomputed mutual
    # information of the reported ensemble
    assert rep.w_estimate == pytest.approx(
        mutual_information(rep.best_ensemble, p), abs=1e-12
    )
    assert len(rep.per_restart_values) == 4
    assert max(rep.per_restart_values) <= rep.w_estimate + 1e-9
    assert rep.pruned_to == len(rep.best_ensemble)
    assert rep.bound_check.m_eff == rep.pruned_to
    assert rep.base is LogBase.BITS


def test_power_in_nats():
    cfg = SolverConfig(restarts=4, seed=0, base=LogBase.NATS)
    rep = see_saw_power(trine_povm(), cfg)
    assert rep.w_estimate == pytest.approx(TRINE_W_BITS * LN2, abs=1e-9)


# ---------------------------------------------------------------------------
# solver internals: documented invariants


def test_restart_history_is_monotone():
    for povm in (trine_povm(), tetrahedral_sic_povm()):
        for k in range(4):
            out = solver._run_restart(povm.elements, 4, 0, k, 1e-9, 10000, 1e-8)
            h = np.array(out.history)
            assert np.all(np.diff(h) >= -1e-12), "see-saw objective must not decrease"


def test_restart_value_is_soundly_recomputable():
    """Per-restart lower-bound soundness against an independent MI formula."""
    p = tetrahedral_sic_povm()
    for k in range(3):
        out = solver._run_restart(p.elements, 4, 0, k, 1e-9, 10000, 1e-8)
        independent = mi_bits_pure(out.priors, out.vectors, p.elements) * LN2
        assert out.value_nats == pytest.approx(independent, abs=1e-12)


def test_unitary_covariance_of_power():
    rng = np.random.default_rng(5)
    u = random_unitary(2, rng)
    p = trine_povm()
    q = Povm(np.stack([u @ m @ u.conj().T for m in p.elements]))
    cfg = SolverConfig(restarts=6, seed=2)
    w1 = see_saw_power(p, cfg).w_estimate
    w2 = see_saw_power(q, cfg).w_estimate
    assert abs(w1 - w2) <= 2e-6


def test_deterministic_across_runs_and_jobs():
    cfg = SolverConfig(restarts=4, seed=9)
    p = trine_povm()
    a = see_saw_power(p, cfg)
    b = see_saw_power(p, cfg)
    c = see_saw_power(p, cfg, jobs=2)
    assert a.w_estimate == b.w_estimate == c.w_estimate
    assert a.per_restart_values == b.per_restart_values == c.per_restart_values
    assert np.array_equal(a.best_ensemble.priors, c.best_ensemble.priors)


# ---------------------------------------------------------------------------
# gradients


def test_state_gradient_matches_finite_differences():
    rng = np.random.default_rng(0)
    for seed in range(6):
        dim = 2 + seed % 2
        p = random_povm(dim, dim + 1, seed=seed)
        states = random_pure_states(dim, 3, seed=seed + 40)
        priors = rng.random(3)
        priors /= priors.sum()
        e = Ensemble(priors, tuple(s.to_density() for s in states))
        grads = state_gradient(e, p)
        for i in range(3):
            fd = fd_state_gradient(e, p, i)
            rel = np.linalg.norm(grads[i] - fd) / max(np.linalg.norm(fd), 1e-12)
            assert rel <= 1e-5, f"seed {seed} member {i}: rel err {rel}"


def test_state_gradient_vanishes_at_optimum():
    grads = state_gradient(anti_tetrahedral_ensemble(), tetrahedral_sic_povm())
    assert max(np.linalg.norm(g) for g in grads) <= 1e-6


def test_state_gradient_rejects_mixed_members():
    e = Ensemble(np.array([1.0]), (maximally_mixed(2),))
    with pytest.raises(ValueError):
        state_gradient(e, tetrahedral_sic_povm())


def test_state_gradient_dimension_mismatch():
    with pytest.raises(ValueError):
        state_gradient(anti_tetrahedral_ensemble(), standard_projective_povm(3))


# ---------------------------------------------------------------------------
# additivity


def test_additivity_of_projective_pair():
    cfg = SolverConfig(restarts=4, seed=0)
    rep = additivity_check(standard_projective_povm(2), standard_projective_povm(3), cfg)
    assert isinstance(rep, AdditivityReport)
    assert rep.w1 == pytest.approx(1.0, abs=1e-9)
    assert rep.w2 == pytest.approx(np.log2(3.0), abs=1e-9)
    assert rep.w12 == pytest.approx(1.0 + np.log2(3.0), abs=1e-9)
    assert abs(rep.gap) <= 1e-8


def test_tensor_of_commuting_povms_stays_on_fast_path():
    p = tensor_povm(standard_projective_povm(2), standard_projective_povm(2))
    rep = informational_power(p)
    assert rep.fast_path_used
    assert rep.w_estimate == pytest.approx(2.0, abs=1e-9)
