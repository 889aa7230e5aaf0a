import json

import numpy as np
import pytest

import toeptik


def random_complex(rng, n):
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)


def test_toeplitz_matvec_matches_dense():
    rng = np.random.default_rng(3)
    T = toeptik.Toeplitz(5, 3, random_complex(rng, 7))
    x = random_complex(rng, 3)
    dense = T.dense()
    assert dense.shape == (5, 3)
    assert np.allclose(T.matvec(x), dense @ x)
    y = random_complex(rng, 5)
    assert np.allclose(T.rmatvec(y), dense.conj().T @ y)


def test_l2_solve_matches_numpy_least_squares():
    rng = np.random.default_rng(11)
    m, n, beta = 40, 32, 0.7
    T = toeptik.Toeplitz(m, n, random_complex(rng, m + n - 1))
    b = random_complex(rng, m)
    report = toeptik.solve(toeptik.Problem.l2(T, beta, b))
    A = T.dense()
    expected = np.linalg.solve(A.conj().T @ A + beta**2 * np.eye(n), A.conj().T @ b)
    assert np.linalg.norm(report.x - expected) < 1e-9 * np.linalg.norm(expected)
    assert 0.0 <= report.relative_residual < 1e-10


@pytest.mark.parametrize("variant", ["general", "l2", "gramian"])
def test_random_problem_agrees_with_dense_oracle(variant):
    problem = toeptik.Problem.random(variant, 48, seed=5)
    x = toeptik.solve(problem, n_lim=8).x
    ref = toeptik.dense_solve(problem)
    assert np.linalg.norm(x - ref) < 1e-8 * np.linalg.norm(ref)
    assert np.allclose(problem.normal_matrix() @ ref, problem.normal_rhs())


def test_gramian_problem_from_python_data():
    rng = np.random.default_rng(2)
    n = 20
    col = random_complex(rng, n)
    col[0] = 10.0 * np.sqrt(n)
    G = toeptik.HermitianToeplitz(col)
    L = toeptik.Toeplitz.identity(n)
    y = random_complex(rng, n)
    x = toeptik.solve(toeptik.Problem.gramian(G, L, y)).x
    assert np.allclose((G.dense() + np.eye(n)) @ x, y)


def test_cg_reaches_the_same_solution():
    problem = toeptik.Problem.random("l2", 32, seed=9)
    cg = toeptik.cg_solve(problem, max_iterations=500, tolerance=1e-13)
    assert cg["converged"]
    assert np.allclose(cg["x"], toeptik.dense_solve(problem), atol=1e-9)


def test_report_serialises():
    report = toeptik.solve(toeptik.Problem.random("general", 16, seed=1))
    d = report.to_dict()
    assert d["variant"] == "general" and d["n"] == 16
    assert set(report.diagnostics) >= {"conditions_total", "difficult_points", "recursion_depth"}
    json.dumps(d)


def test_experiment_helpers():
    rows = toeptik.run_accuracy("l2", [16, 32], trials=2, seed=4)
    assert [r["n"] for r in rows] == [16, 32]
    assert all(r["max_err"] < 1e-9 for r in rows)
    ns = [512.0, 1024.0, 2048.0]
    times = [3 * n * np.log2(n) ** 2 + 2 * n * np.log2(n) for n in ns]
    c1, c2, r2 = toeptik.fit_complexity(ns, times)
    assert abs(c1 - 3) < 1e-9 and abs(c2 - 2) < 1e-9 and r2 == pytest.approx(1.0)


def test_errors_map_to_python_exceptions():
    with pytest.raises(toeptik.ShapeError):
        toeptik.Toeplitz(3, 3, np.zeros(4))
    with pytest.raises(ValueError):
        toeptik.Problem.l2(toeptik.Toeplitz.identity(3), 1.0, np.ones(5))
    with pytest.raises(toeptik.NumericalError):
        toeptik.dense_solve(toeptik.Problem.l2(toeptik.Toeplitz(3, 3, np.zeros(5)), 0.0, np.ones(3)))
