"""Basis-polynomial evaluation and simplex maximization."""

from fractions import Fraction

import numpy as np
import pytest

from turan_matroids.geometry import bose_burton, projective_geometry, uniform
from turan_matroids.lagrangian import (
    grid_search_2simplex,
    maximize,
    poly_eval,
    poly_gradient,
    u2_lagrangian_bound,
)
from turan_matroids.matroid import (
    Matroid,
    MatroidError,
    direct_sum,
    parallel_blowup,
)

from conftest import random_linear


def test_poly_eval_symmetric_triangle():
    M = uniform(2, 3)
    assert abs(poly_eval(M, [1 / 3] * 3) - 1 / 3) < 1e-15


def test_poly_eval_point_mass_vanishes():
    M = uniform(2, 4)
    x = np.zeros(4)
    x[1] = 1.0
    assert poly_eval(M, x) == 0.0


def test_poly_eval_fano_uniform_weights():
    pg = projective_geometry(3, 2)
    assert abs(poly_eval(pg, [1 / 7] * 7) - 28 / 343) < 1e-15


def test_gradient_triangle():
    M = uniform(2, 3)
    g = poly_gradient(M, [1 / 3] * 3)
    assert np.allclose(g, [2 / 3, 2 / 3, 2 / 3])  # each partial is x_j + x_k


def test_euler_identity_random_points(rng):
    npr = np.random.default_rng(11)
    for _ in range(30):
        M = random_linear(rng, max_n=7)
        x = npr.exponential(size=M.n)
        x /= x.sum()
        resid = abs(float(np.dot(x, poly_gradient(M, x))) - M.r * poly_eval(M, x))
        assert resid < 1e-12


def test_gradient_matches_central_differences(rng):
    npr = np.random.default_rng(12)
    h = 1e-6
    for _ in range(10):
        M = random_linear(rng, max_n=6)
        x = npr.exponential(size=M.n)
        x /= x.sum()
        grad = poly_gradient(M, x)
        fd = np.zeros(M.n)
        for i in range(M.n):
            xp, xm = x.copy(), x.copy()
            xp[i] += h
            xm[i] -= h
            fd[i] = (poly_eval(M, xp) - poly_eval(M, xm)) / (2 * h)
        scale = max(float(np.max(np.abs(fd))), 1e-9)
        assert float(np.max(np.abs(grad - fd))) / scale < 1e-6


def test_maximize_triangle_matches_grid_oracle():
    M = uniform(2, 3)
    res = maximize(M)
    oracle = grid_search_2simplex(M, resolution=1000)
    assert res.value >= oracle - 1e-9
    assert abs(res.value - 1 / 3) < 1e-9


def test_maximize_fano_certified():
    res = maximize(projective_geometry(3, 2), bound_t=2)
    assert abs(res.value - 28 / 343) < 1e-9
    assert res.certified and res.converged
    assert abs(poly_eval(projective_geometry(3, 2), res.argmax) - res.value) < 1e-12


def test_maximize_invariant_under_blowup():
    pg = projective_geometry(3, 2)
    blown = parallel_blowup(pg, [2] * 7)
    assert abs(maximize(blown).value - maximize(pg).value) < 1e-10


def test_maximize_ignores_loops():
    M = uniform(2, 4)
    with_loop = direct_sum(M, Matroid.from_bases(1, [0]))
    assert abs(maximize(with_loop).value - maximize(M).value) < 1e-12


def test_maximize_invariant_under_relabeling():
    M = uniform(2, 4)
    relabeled = Matroid.from_bases(4, [0b1100, 0b1010, 0b0110, 0b1001, 0b0101, 0b0011])
    assert abs(maximize(M).value - maximize(relabeled).value) < 1e-12


def test_free_matroid_value():
    for r in (2, 3, 4):
        res = maximize(uniform(r, r))
        assert abs(res.value - (1 / r) ** r) < 1e-12


def test_rank_zero_rejected():
    with pytest.raises(MatroidError):
        maximize(Matroid.from_bases(3, [0]))


def test_iteration_monotone_diagnostic():
    # one multiplicative step never decreases the objective (up to roundoff)
    for M in (projective_geometry(3, 2), uniform(2, 5), uniform(3, 6)):
        npr = np.random.default_rng(13)
        for _ in range(20):
            x = npr.exponential(size=M.n)
            x /= x.sum()
            before = poly_eval(M, x)
            for _ in range(10):
                x = x * poly_gradient(M, x) / (M.r * poly_eval(M, x))
                x /= x.sum()
                after = poly_eval(M, x)
                assert after >= before - 1e-12
                before = after


def test_bound_values():
    assert u2_lagrangian_bound(1, 5) == 1
    assert u2_lagrangian_bound(3, 2) == Fraction(28, 343)
    assert u2_lagrangian_bound(2, 3) == Fraction(3, 8)


def test_bound_holds_for_minor_free_families():
    cases = [
        (parallel_blowup(projective_geometry(3, 2), [2] * 7), 3, 2),
        (bose_burton(3, 2, 1), 3, 2),
        (projective_geometry(2, 3), 2, 3),
        (bose_burton(3, 3, 1), 3, 3),
    ]
    for M, r, t in cases:
        res = maximize(M)
        assert res.value <= float(u2_lagrangian_bound(r, t)) + 1e-9


def test_workers_do_not_change_results():
    pg = projective_geometry(3, 2)
    a = maximize(pg, workers=1, bound_t=2)
    b = maximize(pg, workers=4, bound_t=2)
    assert a.value == b.value
    assert np.array_equal(a.argmax, b.argmax)
