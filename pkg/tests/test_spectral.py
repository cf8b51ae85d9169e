"""Block-data tests: partitions, tableaux, generic degrees, the closed-form
chi-square expressions against brute-force kernel evolution, and the upper
bounds (frozen regression values plus shape properties).

The 2x2 matrix model for the dihedral blocks lives only here: the library
stores (d, c, t) per block, and these tests rebuild the explicit matrices
to confirm that data independently.
"""

import doctest
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_metro import chains, coxeter, spectral
from hecke_metro.coxeter import CapExceededError, dihedral, hypercube, symmetric
from hecke_metro.spectral import (
    StandardTableau,
    bound_dihedral_long_scan,
    bound_dihedral_random_scan,
    bound_hypercube,
    bound_symmetric_scans,
    bound_theorem_1_4,
    conjugate_partition,
    content_of_n_box,
    content_sum,
    dihedral_random_scan_chisq,
    hook_lengths,
    irreps,
    lead_constant_table,
    lemma_7_2_bounds,
    long_scan_avg_chisq,
    long_scan_chisq,
    long_scan_trace,
    partitions,
    random_scan_chisq_hypercube,
    short_scan_chisq_symmetric,
    short_scan_trace_symmetric,
    standard_tableaux,
    sum_d_t,
)

FAMILIES = [symmetric(3), symmetric(4), symmetric(5), hypercube(4), dihedral(5), dihedral(6)]


def test_module_doctests():
    assert doctest.testmod(spectral).failed == 0


# ---------------------------------------------------------------------------
# partitions and tableaux


def test_partition_counts_match_the_partition_function():
    expected = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11, 7: 15, 8: 22, 9: 30, 10: 42}
    for n, p in expected.items():
        assert len(partitions(n)) == p


def test_partitions_of_four_in_descending_lex_order():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_conjugation_is_an_involution_negating_content():
    for n in range(1, 9):
        for lam in partitions(n):
            assert conjugate_partition(conjugate_partition(lam)) == lam
            assert content_sum(conjugate_partition(lam)) == -content_sum(lam)


def test_hook_lengths_of_421():
    assert sorted(hook_lengths((4, 2, 1))) == [1, 1, 1, 2, 3, 4, 6]
    assert math.factorial(7) // math.prod(hook_lengths((4, 2, 1))) == 35


def test_content_sums():
    assert content_sum((3,)) == 3
    assert content_sum((1, 1, 1)) == -3
    assert content_sum((2, 1)) == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_tableau_counts_match_the_hook_length_formula(n):
    for lam in partitions(n):
        d = math.factorial(n) // math.prod(hook_lengths(lam))
        assert len(standard_tableaux(lam)) == d


def test_tableaux_of_21_and_their_last_box_contents():
    tabs = standard_tableaux((2, 1))
    contents = sorted(content_of_n_box(t) for t in tabs)
    assert contents == [-1, 1]


def test_square_of_tableau_counts_sums_to_group_order():
    for n in range(2, 8):
        total = sum(len(standard_tableaux(lam)) ** 2 for lam in partitions(n))
        assert total == math.factorial(n)


def test_tableau_validation():
    StandardTableau(((1, 3), (2,)))  # fine
    with pytest.raises(ValueError):
        StandardTableau(((2, 1), (3,)))  # rows must increase
    with pytest.raises(ValueError):
        StandardTableau(((1, 2), (4,)))  # entries must be exactly 1..n
    with pytest.raises(ValueError):
        StandardTableau(((1, 2, 3), (4, 5, 6, 7)))  # shape not a partition


def test_tableau_enumeration_respects_the_cap(monkeypatch):
    monkeypatch.setenv("HECKE_METRO_CAP", "100")
    with pytest.raises(CapExceededError):
        standard_tableaux((4, 3, 2))  # dimension 168 > 100


# ---------------------------------------------------------------------------
# block data


def test_s3_block_constants():
    reps = {rep.label: rep for rep in irreps(symmetric(3))}
    assert reps[(3,)].d == 1 and reps[(3,)].c == 3
    assert reps[(2, 1)].d == 2 and reps[(2, 1)].c == 0
    assert reps[(1, 1, 1)].d == 1 and reps[(1, 1, 1)].c == -3
    q = Fraction(2)
    assert reps[(3,)].t_of_q(q) == 1
    assert reps[(2, 1)].t_of_q(q) == 6  # q(1+q)
    assert reps[(1, 1, 1)].t_of_q(q) == 8  # q^3


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_block_invariants(family):
    reps = irreps(family)
    w0_length = coxeter.length(coxeter.longest_element(family))
    assert sum(rep.d**2 for rep in reps) == family.order
    trivial = reps[0]
    assert trivial.d == 1 and trivial.c == w0_length
    assert trivial.t_of_q(Fraction(7, 2)) == 1
    for rep in reps:
        assert abs(rep.c) <= w0_length


@pytest.mark.parametrize("family", FAMILIES, ids=str)
@pytest.mark.parametrize("q", [Fraction(2), Fraction(1, 3), Fraction(7, 5)])
def test_generic_degrees_sum_to_the_poincare_polynomial(family, q):
    assert sum_d_t(family, q) == coxeter.poincare_polynomial(family, q)


def test_sign_block_generic_degree_is_q_to_the_longest_length():
    q = Fraction(3)
    for family in (symmetric(4), dihedral(7)):
        reps = irreps(family)
        w0_length = coxeter.length(coxeter.longest_element(family))
        sign = min(reps, key=lambda rep: rep.c)
        assert sign.c == -w0_length
        assert sign.t_of_q(q) == q**w0_length


def test_hypercube_blocks_are_indexed_by_bit_vectors():
    reps = irreps(hypercube(3))
    assert [rep.label for rep in reps[:4]] == [
        (0, 0, 0),
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 0),
    ]
    for rep in reps:
        weight = sum(rep.label)
        assert rep.d == 1
        assert rep.c == 3 - 2 * weight
        assert rep.t_of_q(Fraction(5)) == 5**weight


# ---------------------------------------------------------------------------
# the dihedral 2x2 matrix model (tests only; validates the stored block data)


def _dihedral_block_matrices(n, lam, q):
    """Explicit 2x2 images of the two deformed generators.

    xi is the primitive phase of the block; a and d solve a + d = s and
    -a/xi - d*xi = s with s = sqrt(q) - 1/sqrt(q), which is exactly the
    statement that both generator images have trace q - 1 (eigenvalues q
    and -1).  Each image has determinant -q by construction, so the
    deformed quadratic relation follows; the braid relation is the part
    worth checking numerically.
    """
    xi = np.exp(2j * np.pi * lam / n)
    s = math.sqrt(q) - 1 / math.sqrt(q)
    a = s * (xi + 1) / (xi - 1 / xi)
    d = s - a
    t1 = math.sqrt(q) * np.array([[-d * xi, (1 + a * d) * xi], [1 / xi, -a / xi]])
    t2 = math.sqrt(q) * np.array([[a, 1 + a * d], [1, d]])
    # T~ = q^{-length} T rescales each generator by 1/q
    return t1 / q, t2 / q


@pytest.mark.parametrize("n", [4, 5, 6, 7, 9])
@pytest.mark.parametrize("theta", [0.5, 0.25, 0.9])
def test_dihedral_two_dimensional_blocks_against_matrices(n, theta):
    q = 1 / theta
    eye = np.eye(2)
    for lam in range(1, (n + 1) // 2):
        m1, m2 = _dihedral_block_matrices(n, lam, q)
        # deformed quadratic relation
        for m in (m1, m2):
            assert np.allclose(m @ m, (1 - theta) * m + theta * eye, atol=1e-12)
        # braid relation: alternating words of length n agree
        w1, w2 = eye, eye
        for k in range(n):
            w1 = w1 @ (m1 if k % 2 == 0 else m2)
            w2 = w2 @ (m2 if k % 2 == 0 else m1)
        assert np.allclose(w1, w2, atol=1e-12)
        # the squared longest element acts as the scalar theta^{n - c} = theta^n
        w0sq = eye
        for k in range(2 * n):
            w0sq = w0sq @ (m1 if k % 2 == 0 else m2)
        assert np.allclose(w0sq, theta**n * eye, atol=1e-12)
        # eigenvalue pair of the averaged generator matches the closed form
        avg = (m1 + m2) / 2
        for ell in (1, 2, 3):
            power = np.linalg.matrix_power(avg, 2 * ell)
            plus = ((theta + 2 * math.cos(math.pi * lam / n) * math.sqrt(theta) - 1) / 2)
            minus = ((theta - 2 * math.cos(math.pi * lam / n) * math.sqrt(theta) - 1) / 2)
            assert np.isclose(np.trace(power).real, plus ** (2 * ell) + minus ** (2 * ell))
        # and the stored generic degree matches the xi-form
        stored = next(rep for rep in irreps(dihedral(n)) if rep.label == lam)
        xi = np.exp(2j * np.pi * lam / n)
        t_xi = (
            (q**n - 1)
            / (q - 1)
            * ((1 - xi) * (1 - 1 / xi))
            / ((q - xi) * (q - 1 / xi))
            * q
            * (q + 1)
            / n
        )
        assert np.isclose(float(stored.t_of_q(q)), t_xi.real)


# ---------------------------------------------------------------------------
# closed forms against brute force (single instances; grids live in the
# acceptance suite)


def brute_chisq(family, theta, kernel, ell, start=None):
    if start is None:
        start = coxeter.identity(family)
    dist = chains.evolve(kernel, chains.point_mass(family, start), ell)
    return chains.chi_square(dist, chains.stationary(family, theta))


@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(9, 10)])
def test_long_scan_chisq_matches_kernels_exactly(theta):
    for family in (symmetric(4), hypercube(3), dihedral(5), dihedral(6)):
        K = chains.long_scan_kernel(family, theta)
        for ell in (1, 2):
            assert long_scan_chisq(family, theta, ell) == brute_chisq(
                family, theta, K, ell
            )
            assert long_scan_avg_chisq(family, theta, ell) == (
                chains.average_start_chi_square(K, ell)
            )


def test_long_scan_chisq_from_an_arbitrary_hypercube_start():
    family = hypercube(4)
    theta = Fraction(1, 3)
    start = coxeter.GroupElement(family, (1, 0, 1, 1))
    K = chains.long_scan_kernel(family, theta)
    for ell in (1, 2):
        assert long_scan_chisq(family, theta, ell, start) == brute_chisq(
            family, theta, K, ell, start
        )


def test_long_scan_chisq_rejects_non_identity_starts_elsewhere():
    family = symmetric(4)
    with pytest.raises(ValueError):
        long_scan_chisq(
            family, Fraction(1, 2), 1, coxeter.longest_element(family)
        )


@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(1, 3)])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_short_scan_chisq_for_s2_is_theta_power(theta, ell):
    assert short_scan_chisq_symmetric(2, theta, ell) == theta ** (4 * ell - 1)


def test_short_scan_chisq_matches_kernels_exactly():
    theta = Fraction(1, 3)
    for n in (3, 4):
        family = symmetric(n)
        K = chains.short_scan_kernel(family, theta)
        for ell in (1, 2):
            assert short_scan_chisq_symmetric(n, theta, ell) == brute_chisq(
                family, theta, K, ell
            )
            assert short_scan_chisq_symmetric(n, theta, ell, averaged=True) == (
                chains.average_start_chi_square(K, ell)
            )


def test_random_scan_chisq_hypercube_matches_kernels_exactly():
    theta = Fraction(1, 2)
    family = hypercube(4)
    K = chains.random_scan_kernel(family, theta)
    for start in (None, coxeter.GroupElement(family, (1, 1, 0, 0))):
        for ell in (1, 3):
            assert random_scan_chisq_hypercube(4, theta, ell, start) == brute_chisq(
                family, theta, K, ell, start
            )


def test_dihedral_random_scan_chisq_matches_kernels_closely():
    theta = 0.5
    family = dihedral(6)
    K = chains.random_scan_kernel(family, Fraction(1, 2))
    for ell in (1, 2):
        exact = brute_chisq(family, Fraction(1, 2), K, ell)
        assert math.isclose(
            dihedral_random_scan_chisq(6, theta, ell), float(exact), rel_tol=1e-12
        )
        averaged = chains.average_start_chi_square(K, ell)
        assert math.isclose(
            dihedral_random_scan_chisq(6, theta, ell, averaged=True),
            float(averaged),
            rel_tol=1e-12,
        )


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_long_scan_traces_match_kernel_traces(family):
    theta = Fraction(1, 2)
    K = chains.long_scan_kernel(family, theta)
    for m in range(1, 6):
        assert long_scan_trace(family, theta, m) == chains.trace_of_power(K, m)


def test_short_scan_traces_match_kernel_traces():
    theta = Fraction(2, 5)
    for n in (3, 4):
        K = chains.short_scan_kernel(symmetric(n), theta)
        for m in range(1, 6):
            assert short_scan_trace_symmetric(n, theta, m) == chains.trace_of_power(K, m)


# ---------------------------------------------------------------------------
# generic-degree inequalities


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_degree_bounds_hold_exhaustively(n):
    for lam in partitions(n):
        report = lemma_7_2_bounds(lam, Fraction(1, 2))
        assert report.degree_ok
        assert report.dimension_sum_ok
        assert report.content_ok


def test_dimension_sums_against_the_factorial_moment_bound():
    for n in (6, 7, 8):
        total = 0
        for j in range(1, n):
            block = sum(
                (math.factorial(n) // math.prod(hook_lengths(lam))) ** 2
                for lam in partitions(n)
                if lam[0] == n - j
            )
            assert block <= n ** (2 * j) / math.factorial(j)
            total += block
        total += 1  # the one-row partition
        assert total == math.factorial(n)


def test_degree_bound_report_requires_rational_theta():
    with pytest.raises(ValueError):
        lemma_7_2_bounds((2, 1), 0.5)


# ---------------------------------------------------------------------------
# upper bounds: frozen values, finiteness, monotonicity


def test_bound_values_frozen():
    assert bound_theorem_1_4(20, 0.5, 5) == pytest.approx(
        0.0004884004786944731, rel=1e-15
    )
    assert bound_theorem_1_4(2000, 0.5, 1) == pytest.approx(
        0.13314845306682632, rel=1e-15
    )
    assert bound_symmetric_scans(30, 0.5, "long_start") == pytest.approx(
        0.027846483035452115, rel=1e-12
    )
    assert bound_symmetric_scans(30, 0.5, "long_avg") == pytest.approx(
        8.381906684284957e-07, rel=1e-12
    )
    assert bound_symmetric_scans(70, 0.5, "long_start") == pytest.approx(
        1.4260877945204697e-07, rel=1e-12
    )
    assert bound_symmetric_scans(40, 0.5, "short_start", 10) == pytest.approx(
        4.768372718899808e-07, rel=1e-12
    )
    assert bound_symmetric_scans(40, 0.5, "short_avg", 10) == pytest.approx(
        9.536747711537455e-07, rel=1e-12
    )
    assert float(bound_dihedral_long_scan(40, Fraction(1, 2))) == pytest.approx(
        1.8189894035458565e-12, rel=1e-15
    )
    assert bound_dihedral_random_scan(10, 0.5, 50) == pytest.approx(
        22.125847235638822, rel=1e-12
    )


def test_bounds_decrease_in_the_slack_constant():
    for n, theta in ((20, 0.5), (60, 0.25), (35, 0.9)):
        for f in (
            lambda c: bound_theorem_1_4(n, theta, c),
            lambda c: bound_symmetric_scans(n, theta, "short_avg", c),
            lambda c: bound_hypercube(n, theta, c, "random"),
            lambda c: bound_hypercube(n, theta, c, "systematic"),
        ):
            values = [f(c) for c in (1, 2, 4, 8, 16)]
            assert all(a > b for a, b in zip(values, values[1:]))
            assert all(math.isfinite(v) for v in values)


def test_bounds_remain_finite_far_beyond_enumeration():
    for n in (500, 2000):
        assert math.isfinite(bound_theorem_1_4(n, 0.5, 1))
        assert math.isfinite(bound_symmetric_scans(n, 0.5, "long_avg"))
        assert math.isfinite(bound_hypercube(n, 0.5, 3, "random"))


def test_single_pass_dihedral_bound_dominates_the_exact_chi_square():
    # the exact one-pass chi-square never exceeds 2 theta^{n+1} / (1 - theta)
    for n in range(3, 11):
        for theta in (Fraction(1, 2), Fraction(1, 3), Fraction(9, 10)):
            exact = long_scan_chisq(dihedral(n), theta, 1)
            assert exact <= bound_dihedral_long_scan(n, theta)


def test_bounds_reject_theta_one():
    with pytest.raises(ValueError):
        bound_theorem_1_4(10, 1.0, 2)
    with pytest.raises(ValueError):
        bound_hypercube(10, 1.0, 2, "random")
    with pytest.raises(ValueError):
        bound_symmetric_scans(10, 1.0, "short_start", 2)


def test_bound_argument_validation():
    with pytest.raises(ValueError):
        bound_theorem_1_4(10, 0.5, 0)  # needs positive slack
    with pytest.raises(ValueError):
        bound_theorem_1_4(1, 0.5, 2)  # needs n >= 2
    with pytest.raises(ValueError):
        bound_symmetric_scans(10, 0.5, "sideways")
    with pytest.raises(ValueError):
        bound_symmetric_scans(10, 0.5, "short_start")  # c required for short


def test_lead_constants_at_one_half():
    (row,) = lead_constant_table([0.5], 64)
    assert row.random_scan == pytest.approx(64 * math.log(128) / 3)
    assert row.systematic_scan == pytest.approx(64 * math.log(64) / (2 * math.log(2)))


# ---------------------------------------------------------------------------
# property: the closed forms are decreasing in ell and positive


@given(
    ell=st.integers(min_value=1, max_value=6),
    theta=st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(9, 10)]),
)
@settings(max_examples=30, deadline=None)
def test_long_scan_chisq_decays_monotonically(ell, theta):
    family = symmetric(4)
    now = long_scan_chisq(family, theta, ell)
    nxt = long_scan_chisq(family, theta, ell + 1)
    assert 0 < nxt < now
