"""Smoke tests for the python bindings: thin checks that the main operations
are reachable and numerically sane; the deep coverage lives in the C++ suites.
"""

import json
import math

import numpy as np
import pytest

import vnlw


@pytest.fixture(scope="module")
def op():
    return vnlw.build_operator(vnlw.Grid1D(1.0, 8))


def test_operator_spectrum(op):
    lam = op.eigenvalues
    h = 1.0 / 8
    expected = [4 / h**2 * math.sin(k * math.pi * h / 2) ** 2 for k in range(1, 8)]
    assert np.allclose(lam, expected, rtol=1e-12)
    q = op.eigenvectors
    assert np.max(np.abs(q.T @ q - np.eye(7))) < 1e-12


def test_anti_inner_product_algebra():
    assert vnlw.anti_inner_det2([1, 0], [0, 1]) == 1
    basis = np.array([[1.0 + 0j, 1j]])
    space = vnlw.AntiInnerSpace.with_identity_metric(basis)
    report = vnlw.check_axioms(space, 1000, 7)
    assert report.additivity_defect <= 1e-12
    assert report.antisymmetry_defect <= 1e-12
    assert report.separated

    rep = vnlw.represent_functional(space, np.array([0.0, 2j]))
    assert rep.residual < 1e-12
    assert abs(rep.representer[0] - 1.0) < 1e-12

    with pytest.raises(vnlw.NotPurelyImaginary):
        vnlw.represent_functional(space, np.array([1.0 + 0j, 0j]))


def test_weak_solve_cross_validation(op):
    rng = np.random.default_rng(5)
    m = op.size
    lam = op.eigenvalues
    what = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    what = 0.5 * (what - what.conj().T)
    gaps = np.abs(lam[:, None] - lam[None, :])
    what[gaps <= 1e-9 * lam.max()] = 0.0
    q = op.eigenvectors
    w = vnlw.BipartiteField(op.domain, q @ what @ q.T)

    problem = vnlw.problem_from_source(w, op)
    spectral = vnlw.solve_spectral(problem)
    galerkin = vnlw.solve_galerkin(problem)
    assert vnlw.weak_residual(spectral.theta, problem) <= 1e-10
    assert np.max(np.abs(spectral.theta.values - galerkin.theta.values)) <= 1e-8
    assert spectral.kernel_obstruction <= 1e-12


def test_degeneracy_diagnostic(op):
    space = vnlw.hermitian_field_space(op)
    report = vnlw.separation_kernel(space)
    assert not report.separated
    assert report.kernel_basis.shape[1] == op.size


def test_evolution_conserves_norm(op):
    rng = np.random.default_rng(11)
    m = op.size
    v = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    psi0 = vnlw.BipartiteField(op.domain, 0.5 * (v + v.conj().T))
    cfg = vnlw.EvolutionConfig(op, 1.0, list(np.linspace(0.0, 1.0, 64, endpoint=False)))
    traj = vnlw.propagate_vnlw(psi0, cfg)
    assert vnlw.norm_drift(traj) <= 1e-12
    assert len(traj.states) == 64


def test_gap_extraction():
    op = vnlw.build_operator(vnlw.Grid1D(1.0, 5))
    q = op.eigenvectors
    mix = (q[:, 0] + q[:, 1]) / math.sqrt(2)
    psi0 = vnlw.BipartiteField(op.domain, np.outer(mix, mix.conj()))
    times = [2 * math.pi * i / 128 for i in range(128)]
    traj = vnlw.propagate_vnlw(psi0, vnlw.EvolutionConfig(op, 1.0, times))
    peaks = vnlw.extract_gaps(traj, psi0)
    bin_width = vnlw.fourier_bin_width(traj)
    gap = op.eigenvalues[1] - op.eigenvalues[0]
    assert any(abs(p - gap) <= bin_width for p in peaks)
    assert any(abs(p + gap) <= bin_width for p in peaks)


def test_field_csv_roundtrip(tmp_path):
    domain = vnlw.Domain(vnlw.Grid1D(1.0, 6), 1)
    rng = np.random.default_rng(3)
    values = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    field = vnlw.BipartiteField(domain, values)
    path = tmp_path / "field.csv"
    vnlw.write_field_csv(path, field)
    back = vnlw.read_field_csv(path, domain)
    assert np.array_equal(back.values, values)


def test_pipeline_run(tmp_path):
    spec_path = tmp_path / "problem.json"
    spec_path.write_text(json.dumps({"mode": "solve", "n_cells": 6, "data": "sine-gap 1 3"}))
    spec = vnlw.parse_problem(spec_path)
    out = tmp_path / "out"
    assert vnlw.run(spec, out) == 0
    report = (out / "report.txt").read_text()
    assert "status = pass" in report
    assert (out / "theta.csv").exists()
    assert (out / "phi.csv").exists()
