"""Kernel-level tests: transition entries, stationarity, reversibility,
the algebra correspondence, scan recipes, and the distance inequalities."""

import doctest
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_metro import chains, coxeter, hecke
from hecke_metro.chains import (
    Distribution,
    average_start_chi_square,
    check_reversible,
    chi_square,
    commutes_with_metropolis,
    evolve,
    kernel_power,
    long_recipe,
    long_scan_kernel,
    metropolis_kernel,
    point_mass,
    random_scan_kernel,
    scan_kernel,
    short_recipe,
    short_scan_kernel,
    stationary,
    trace_of_power,
    tv_distance,
)
from hecke_metro.coxeter import dihedral, hypercube, symmetric

THETAS = [Fraction(1, 2), Fraction(1, 3), Fraction(9, 10)]
FAMILIES = [symmetric(3), symmetric(4), hypercube(3), dihedral(5), dihedral(6)]


def test_module_doctests():
    assert doctest.testmod(chains).failed == 0


def test_stationary_values_for_s3_at_one_half():
    pi = stationary(symmetric(3), Fraction(1, 2))
    probs = {w: p for w, p in zip(coxeter.enumerate(symmetric(3)), pi.probs)}
    assert probs[coxeter.identity(symmetric(3))] == Fraction(1, 21)
    assert probs[coxeter.longest_element(symmetric(3))] == Fraction(8, 21)
    assert sum(pi.probs) == 1


@pytest.mark.parametrize("family", FAMILIES, ids=str)
@pytest.mark.parametrize("theta", THETAS)
def test_generator_kernel_entries(family, theta):
    elements = coxeter.enumerate(family)
    for i in coxeter.generators(family):
        K = metropolis_kernel(family, i, theta)
        M = K.matrix
        for x, w in zip(range(len(elements)), elements):
            v = coxeter.apply_generator(i, w)
            y = chains.element_index(family, v)
            if coxeter.length(v) > coxeter.length(w):
                assert M[x, y] == 1  # proposed move up is always accepted
                assert M[x, x] == 0
            else:
                assert M[x, y] == theta  # move down accepted with probability theta
                assert M[x, x] == 1 - theta
            assert sum(M[x], Fraction(0)) == 1


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_generator_kernels_match_the_algebra(family):
    q = Fraction(2)
    for i in coxeter.generators(family):
        K = metropolis_kernel(family, i, Fraction(1, 2))
        block = hecke.left_mult_matrix(hecke.tilde_word(family, q, (i,)))
        assert (K.matrix == block).all()


@pytest.mark.parametrize("family", FAMILIES, ids=str)
@pytest.mark.parametrize("theta", THETAS)
def test_stationarity_and_reversibility(family, theta):
    pi = stationary(family, theta)
    kernels = [metropolis_kernel(family, i, theta) for i in coxeter.generators(family)]
    kernels += [short_scan_kernel(family, theta), long_scan_kernel(family, theta)]
    kernels += [random_scan_kernel(family, theta)]
    for K in kernels:
        assert (evolve(K, pi, 1).probs == pi.probs).all()
    # single-generator and random-scan kernels are reversible; scans need not be
    for K in kernels[: family.rank] + [kernels[-1]]:
        assert check_reversible(K, pi)


def test_reversibility_negative_control():
    family = symmetric(3)
    theta = Fraction(1, 2)
    K = metropolis_kernel(family, 1, theta)
    num = K.num.copy()
    moved = int(np.argmax(num[0]))  # the single move out of the identity
    num[0, 0], num[0, moved] = num[0, moved], num[0, 0]
    broken = chains.Kernel(family, theta, num, K.den, (1,))
    assert not check_reversible(broken, stationary(family, theta))


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_scan_kernels_compose_the_recipe_left_to_right(family):
    # applying K_{i_1} then K_{i_2} is the matrix product K_{i_1} K_{i_2}
    theta = Fraction(1, 3)
    i, j = 1, family.rank
    K = scan_kernel(family, theta, (i, j))
    Ki, Kj = metropolis_kernel(family, i, theta), metropolis_kernel(family, j, theta)
    assert (K.matrix == Ki.matrix @ Kj.matrix).all()


@pytest.mark.parametrize("family", FAMILIES, ids=str)
@pytest.mark.parametrize("theta", THETAS)
def test_long_scan_is_the_squared_longest_element(family, theta):
    q = 1 / theta
    w0 = coxeter.longest_element(family)
    tw0 = hecke.tilde_word(family, q, coxeter.reduced_word(w0))
    block = hecke.left_mult_matrix(hecke.product(tw0, tw0))
    assert (long_scan_kernel(family, theta).matrix == block).all()
    # the recipe reversed is two reduced words of w0 back to back
    recipe = long_recipe(family)
    assert len(recipe) == 2 * coxeter.length(w0)


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_short_scan_is_u_times_star_u(family):
    theta = Fraction(1, 2)
    q = 1 / theta
    u = hecke.tilde_word(family, q, tuple(range(1, family.rank + 1)))
    block = hecke.left_mult_matrix(hecke.product(u, hecke.star(u)))
    assert (short_scan_kernel(family, theta).matrix == block).all()
    assert short_recipe(family) == tuple(range(1, family.rank + 1)) + tuple(
        range(family.rank, 0, -1)
    )


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_long_scan_commutes_with_every_generator_kernel(family):
    K = long_scan_kernel(family, Fraction(1, 2))
    for i in coxeter.generators(family):
        assert commutes_with_metropolis(K, i)


def test_short_scan_need_not_commute():
    # the short scan is self-adjoint but not central; S_3 already shows it
    K = short_scan_kernel(symmetric(3), Fraction(1, 2))
    assert not all(commutes_with_metropolis(K, i) for i in (1, 2))


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_kernel_power_matches_matrix_power(family):
    theta = Fraction(1, 2)
    for K in (short_scan_kernel(family, theta), random_scan_kernel(family, theta)):
        M = K.matrix
        assert (kernel_power(K, 3).matrix == M @ M @ M).all()
    assert (
        kernel_power(random_scan_kernel(family, theta), 0).matrix
        == np.identity(family.order, dtype=object)
    ).all()


def test_random_scan_is_the_uniform_generator_mixture():
    family = symmetric(4)
    theta = Fraction(1, 3)
    mix = sum(
        metropolis_kernel(family, i, theta).matrix for i in coxeter.generators(family)
    ) / Fraction(family.rank)
    assert (random_scan_kernel(family, theta).matrix == mix).all()


def test_evolution_from_a_point_mass_reads_off_kernel_rows():
    family = dihedral(4)
    theta = Fraction(1, 2)
    K = short_scan_kernel(family, theta)
    x = coxeter.longest_element(family)
    dist = evolve(K, point_mass(family, x), 1)
    assert (dist.probs == K.row_distribution(chains.element_index(family, x)).probs).all()


@pytest.mark.parametrize("family", FAMILIES, ids=str)
@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(9, 10)])
@pytest.mark.parametrize("ell", [1, 2])
def test_averaged_chi_square_equals_regular_trace_minus_one(family, theta, ell):
    for K in (long_scan_kernel(family, theta), short_scan_kernel(family, theta)):
        assert average_start_chi_square(K, ell) == trace_of_power(K, 2 * ell) - 1


def test_tv_is_monotone_along_the_long_scan():
    family = symmetric(4)
    theta = Fraction(1, 2)
    K = long_scan_kernel(family, theta)
    pi = stationary(family, theta)
    dist = point_mass(family, coxeter.identity(family))
    last = tv_distance(dist, pi)
    for _ in range(4):
        dist = evolve(K, dist, 1)
        now = tv_distance(dist, pi)
        assert now <= last
        last = now


def test_theta_one_degenerates_to_deterministic_flips():
    family = hypercube(2)
    K = metropolis_kernel(family, 1, Fraction(1))
    M = K.matrix
    assert all(sorted(row) == [0, 0, 0, 1] for row in M.tolist())
    assert (M @ M == np.identity(4, dtype=object)).all()


def test_parameter_validation():
    with pytest.raises(ValueError):
        metropolis_kernel(symmetric(3), 1, Fraction(2))
    with pytest.raises(ValueError):
        metropolis_kernel(symmetric(3), 1, Fraction(0))
    with pytest.raises(ValueError):
        metropolis_kernel(symmetric(3), 5, Fraction(1, 2))
    with pytest.raises(ValueError):
        scan_kernel(symmetric(3), Fraction(1, 2), (1, 9))
    with pytest.raises(ValueError):
        kernel_power(metropolis_kernel(symmetric(3), 1, Fraction(1, 2)), -1)
    with pytest.raises(ValueError):
        Distribution(symmetric(3), np.array([Fraction(1)] * 6, dtype=object))
    with pytest.raises(ValueError):
        tv_distance(
            stationary(symmetric(3), Fraction(1, 2)),
            stationary(symmetric(4), Fraction(1, 2)),
        )


# ---------------------------------------------------------------------------
# hypothesis: the chi-square dominates 4 tv^2 for arbitrary distributions


@st.composite
def rational_distribution(draw, size):
    weights = draw(
        st.lists(
            st.integers(min_value=0, max_value=20), min_size=size, max_size=size
        ).filter(lambda ws: sum(ws) > 0)
    )
    total = sum(weights)
    return np.array([Fraction(w, total) for w in weights], dtype=object)


@given(data=st.data())
@settings(max_examples=80)
def test_four_tv_squared_is_at_most_chi_square(data):
    family = symmetric(3)
    pi = stationary(family, data.draw(st.sampled_from(THETAS)))
    p = Distribution(family, data.draw(rational_distribution(family.order)))
    tv = tv_distance(p, pi)
    assert 4 * tv**2 <= chi_square(p, pi)
