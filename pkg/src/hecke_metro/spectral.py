"""Irreducible-representation data and closed-form convergence rates.

For each of the three built-in families the deformed group algebra has one
irreducible block per label ``lam``, with three attached constants:

* ``d``        -- the dimension of the block,
* ``c``        -- the eigenvalue constant of the central element (the sum of
                  all reflections acts by ``c`` on the block),
* ``t_of_q``   -- the generic degree, a function of ``q`` normalised so that
                  ``sum d*t(q) = P_W(q)`` (the length generating polynomial).

With ``theta = 1/q`` these constants give closed forms for the chi-square
distance of scan chains to the stationary measure ``pi``:

* long systematic scan, started at the identity:
      ``sum_{lam != triv} t_lam d_lam theta^(2l (L - c_lam))``
  where ``L`` is the length of the longest element;
* pi-averaged over starting points, ``t_lam d_lam`` becomes ``d_lam^2``;
* short systematic scan on the symmetric group: the exponent is controlled
  by the content of the box containing ``n`` in a standard tableau;
* single-site random scans admit eigenvalue forms on the hypercube
  (exact, via binomial grouping) and the dihedral family (floating point,
  the eigenvalues involve cosines).

Everything downstream of a rational ``theta`` is exact `Fraction` arithmetic
except where irrational eigenvalues force floats (dihedral random scan and
the two-dimensional dihedral generic degrees); aggregate sums over the
dihedral labels are still computed exactly by summing over roots of unity
symbolically.  The ``bound_*`` functions evaluate the classical explicit
upper bounds (log-domain where factorials would overflow).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import sympy

from .coxeter import (
    CapExceededError,
    GroupElement,
    GroupFamily,
    degrees,
    enumeration_cap,
    identity,
)

__all__ = [
    "IrrepData",
    "StandardTableau",
    "partitions",
    "conjugate_partition",
    "hook_lengths",
    "content_sum",
    "standard_tableaux",
    "content_of_n_box",
    "irreps",
    "sum_d_t",
    "long_scan_chisq",
    "long_scan_avg_chisq",
    "long_scan_trace",
    "short_scan_chisq_symmetric",
    "short_scan_trace_symmetric",
    "random_scan_chisq_hypercube",
    "dihedral_random_scan_chisq",
    "bound_theorem_1_4",
    "bound_hypercube",
    "bound_symmetric_scans",
    "bound_dihedral_random_scan",
    "bound_dihedral_long_scan",
    "DegreeBoundReport",
    "lemma_7_2_bounds",
    "LeadConstantRow",
    "lead_constant_table",
]


# --------------------------------------------------------------------------
# partitions and tableaux

Partition = tuple[int, ...]


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` as weakly decreasing tuples, descending lex.

    >>> partitions(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(remaining: int, largest: int) -> Iterable[Partition]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - part, part):
                yield (part,) + rest

    return list(gen(n, n))


def _check_partition(lam: Sequence[int]) -> Partition:
    lam = tuple(int(p) for p in lam)
    if not lam or any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive: {lam!r}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {lam!r}")
    return lam


def conjugate_partition(lam: Sequence[int]) -> Partition:
    """Transpose of the diagram: column lengths read off as a partition.

    >>> conjugate_partition((3, 1))
    (2, 1, 1)
    """
    lam = _check_partition(lam)
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def hook_lengths(lam: Sequence[int]) -> list[int]:
    """Hook lengths of all boxes, row-major (arm + leg + 1)."""
    lam = _check_partition(lam)
    cols = conjugate_partition(lam)
    return [
        lam[i] - (j + 1) + cols[j] - (i + 1) + 1
        for i in range(len(lam))
        for j in range(lam[i])
    ]


def content_sum(lam: Sequence[int]) -> int:
    """Sum of ``column - row`` over all boxes of the diagram."""
    lam = _check_partition(lam)
    return sum(j - i for i in range(len(lam)) for j in range(lam[i]))


def _subdiagonal_weight(lam: Partition) -> int:
    # sum over rows of (row index - 1) * (row length), rows counted from 1
    return sum(i * lam[i] for i in range(len(lam)))


def _dimension(lam: Partition) -> int:
    n = sum(lam)
    d, rem = divmod(math.factorial(n), math.prod(hook_lengths(lam)))
    assert rem == 0
    return d


@dataclass(frozen=True)
class StandardTableau:
    """A filling of a partition's boxes with ``1..n``, increasing along
    rows (left to right) and columns (top to bottom)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        shape = tuple(len(r) for r in self.rows)
        _check_partition(shape)
        entries = [x for row in self.rows for x in row]
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise ValueError("entries must be exactly 1..n")
        for row in self.rows:
            if any(row[j] >= row[j + 1] for j in range(len(row) - 1)):
                raise ValueError("rows must increase left to right")
        for i in range(len(self.rows) - 1):
            upper, lower = self.rows[i], self.rows[i + 1]
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                raise ValueError("columns must increase top to bottom")

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)


@lru_cache(maxsize=None)
def _tableau_fillings(lam: Partition) -> tuple[tuple[tuple[int, ...], ...], ...]:
    n = sum(lam)
    if n == 0:
        return ((),)
    out = []
    for i, part in enumerate(lam):
        # n sits in a removable corner: last box of row i
        if i + 1 < len(lam) and lam[i + 1] == part:
            continue
        smaller = tuple(p for p in lam[:i] + (part - 1,) + lam[i + 1 :] if p > 0)
        for rows in _tableau_fillings(smaller):
            grown = list(rows)
            if i < len(grown):
                grown[i] = grown[i] + (n,)
            else:
                grown.append((n,))
            out.append(tuple(grown))
    return tuple(out)


def standard_tableaux(lam: Sequence[int]) -> list[StandardTableau]:
    """Enumerate every standard tableau of the given shape."""
    lam = _check_partition(lam)
    count = _dimension(lam)
    if count > enumeration_cap():
        raise CapExceededError(
            f"shape {lam} has {count} standard tableaux "
            f"(cap {enumeration_cap()})"
        )
    return [StandardTableau(rows) for rows in _tableau_fillings(lam)]


def content_of_n_box(tab: StandardTableau) -> int:
    """``column - row`` of the box holding the largest entry.

    >>> content_of_n_box(StandardTableau(((1, 2, 3),)))
    2
    >>> content_of_n_box(StandardTableau(((1, 2), (3,))))
    -1
    """
    n = tab.size
    for i, row in enumerate(tab.rows):
        for j, entry in enumerate(row):
            if entry == n:
                return j - i
    raise AssertionError("unreachable: tableau has no largest entry")


# --------------------------------------------------------------------------
# irreducible block data

Scalar = Fraction | float


@dataclass(frozen=True)
class IrrepData:
    """Constants attached to one irreducible block.

    ``label`` is a partition (symmetric family), a 0/1 tuple (hypercube),
    or one of ``"triv"``, ``"sgn"``, ``"plus"``, ``"minus"``, or an integer
    ``0 < lam < n/2`` (dihedral).  ``t_of_q`` evaluates the generic degree;
    it returns a `Fraction` for rational ``q`` except on the two-dimensional
    dihedral blocks, whose degrees are algebraic irrationals and come back
    as floats.
    """

    label: object
    d: int
    c: int
    t_of_q: Callable[[Scalar], Scalar]


def _q_int(q: Scalar, k: int) -> Scalar:
    """The q-integer ``1 + q + ... + q^(k-1)`` (safe at q = 1)."""
    total = q - q  # zero of matching type
    power = 1 + total
    for _ in range(k):
        total += power
        power *= q
    return total


def _q_factorial(q: Scalar, k: int) -> Scalar:
    out = 1 + (q - q)
    for i in range(1, k + 1):
        out *= _q_int(q, i)
    return out


def _symmetric_degree(lam: Partition) -> Callable[[Scalar], Scalar]:
    hooks = hook_lengths(lam)
    n = sum(lam)
    shift = _subdiagonal_weight(lam)

    def t_of_q(q: Scalar) -> Scalar:
        val = q**shift * _q_factorial(q, n)
        for h in hooks:
            val /= _q_int(q, h)
        return val

    return t_of_q


def _dihedral_two_dim_degree(n: int, lam: int) -> Callable[[Scalar], float]:
    gap = 2 - 2 * math.cos(2 * math.pi * lam / n)

    def t_of_q(q: Scalar) -> float:
        qf = float(q)
        series = float(_q_int(qf, n))
        return (series / n) * qf * (qf + 1) * gap / (
            qf * qf - (2 - gap) * qf + 1
        )

    return t_of_q


def irreps(family: GroupFamily) -> list[IrrepData]:
    """Complete list of irreducible-block constants for the family.

    The trivial block (``t = 1`` and ``c = length of longest element``)
    always comes first.
    """
    n = family.n
    if family.kind == "symmetric":
        out = []
        for lam in partitions(n):
            out.append(
                IrrepData(
                    label=lam,
                    d=_dimension(lam),
                    c=content_sum(lam),
                    t_of_q=_symmetric_degree(lam),
                )
            )
        return out
    if family.kind == "hypercube":
        if family.order > enumeration_cap():
            raise CapExceededError(
                f"{family} has {family.order} irreducible blocks "
                f"(cap {enumeration_cap()})"
            )
        out = []
        for mask in range(2**n):
            bits = tuple((mask >> i) & 1 for i in range(n))
            weight = sum(bits)
            out.append(
                IrrepData(
                    label=bits,
                    d=1,
                    c=n - 2 * weight,
                    t_of_q=lambda q, w=weight: q**w,
                )
            )
        out.sort(key=lambda rep: (sum(rep.label), rep.label))
        return out
    if family.kind == "dihedral":
        out = [
            IrrepData(label="triv", d=1, c=n, t_of_q=lambda q: q**0),
            IrrepData(label="sgn", d=1, c=-n, t_of_q=lambda q: q**n),
        ]
        if n % 2 == 0:
            # the two one-dimensional blocks sending one generator to q
            # and the other to -1
            def t_pm(q: Scalar) -> Scalar:
                return 2 * q * _q_int(q, n) / (n * (1 + q))

            out.append(IrrepData(label="plus", d=1, c=0, t_of_q=t_pm))
            out.append(IrrepData(label="minus", d=1, c=0, t_of_q=t_pm))
        for lam in range(1, (n + 1) // 2):
            out.append(
                IrrepData(
                    label=lam,
                    d=2,
                    c=0,
                    t_of_q=_dihedral_two_dim_degree(n, lam),
                )
            )
        return out
    raise AssertionError(f"unhandled family kind {family.kind!r}")


def _longest_length(family: GroupFamily) -> int:
    return sum(d - 1 for d in degrees(family))


def _as_scalar(theta) -> Scalar:
    if isinstance(theta, float):
        if not 0 < theta <= 1:
            raise ValueError(f"theta must satisfy 0 < theta <= 1, got {theta}")
        return theta
    theta = Fraction(theta)
    if not 0 < theta <= 1:
        raise ValueError(f"theta must satisfy 0 < theta <= 1, got {theta}")
    return theta


def sum_d_t(family: GroupFamily, q) -> Fraction:
    """Exact value of ``sum_lam d_lam * t_lam(q)`` at rational ``q``.

    For the symmetric and hypercube families this sums the exact generic
    degrees directly.  The two-dimensional dihedral degrees are irrational
    individually, so their sum is evaluated symbolically as a sum over the
    nontrivial ``n``-th roots of unity; the result is rational.  In every
    case the value agrees with the length generating polynomial ``P_W(q)``,
    which makes the pair an effective cross-check.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    if family.kind in ("symmetric", "hypercube"):
        return sum(
            (rep.d * rep.t_of_q(q) for rep in irreps(family)), Fraction(0)
        )
    n = family.n
    return 1 + q**n + _dihedral_root_sum(n, q)


@lru_cache(maxsize=None)
def _dihedral_root_sum(n: int, q: Fraction) -> Fraction:
    """``sum_xi f(xi)`` over the nontrivial n-th roots of unity, where
    ``f(xi)`` is the ``d*t`` contribution of the block with angle ``xi``
    (each two-dimensional block is hit twice, via ``xi`` and ``1/xi``).

    Evaluated as an algebraic trace: with ``p = x^(n-1) + ... + 1`` (whose
    roots are exactly the nontrivial roots of unity) reduce ``f`` to a
    polynomial ``r = num * den^(-1) mod p`` and contract against the power
    sums ``sum_xi xi^k``, which are ``n - 1`` at ``k = 0`` and ``-1``
    otherwise.  ``sympy.RootSum`` computes the same number but stalls for
    minutes once ``p`` has a large irreducible factor (prime ``n``).
    """
    x = sympy.Symbol("x")
    qq = sympy.Rational(q.numerator, q.denominator)
    series = sum(qq**i for i in range(n))
    scale = sympy.Rational(1, n) * series * qq * (qq + 1)
    # f(xi) = scale * (1 - xi)(1 - 1/xi) / ((q - xi)(q - 1/xi)); clearing the
    # 1/xi pair against each other leaves the polynomial fraction below
    p = sympy.Poly([1] * n, x, domain="QQ")
    den = sympy.Poly((qq - x) * (qq * x - 1), x, domain="QQ")
    num = sympy.Poly(-scale * (1 - x) ** 2, x, domain="QQ")
    r = (num * den.invert(p)) % p
    coeffs = r.all_coeffs()[::-1]
    val = sympy.Rational((n * coeffs[0] if coeffs else 0) - sum(coeffs))
    return Fraction(int(val.p), int(val.q))


# --------------------------------------------------------------------------
# closed-form chi-square distances

def _hypercube_weight_counts(start_bits: Sequence[int], n: int) -> list[list[int]]:
    """``counts[j][k]`` = number of 0/1 labels with weight ``j`` whose dot
    product with ``start_bits`` is ``k``."""
    w = sum(start_bits)
    counts = []
    for j in range(n + 1):
        counts.append(
            [
                math.comb(w, k) * math.comb(n - w, j - k) if j - k <= n - w else 0
                for k in range(min(j, w) + 1)
            ]
        )
    return counts


def _start_bits(family: GroupFamily, start: GroupElement | None) -> tuple[int, ...]:
    if start is None:
        return (0,) * family.n
    if start.family != family:
        raise ValueError(f"start {start} does not belong to {family}")
    return start.payload


def long_scan_chisq(family, theta, ell: int, start: GroupElement | None = None):
    """Chi-square distance to ``pi`` after ``ell`` passes of the long scan.

    The long scan multiplies by the square of the longest element in the
    deformed algebra, which acts on each irreducible block as the scalar
    ``theta^(L - c_lam)`` (``L`` the longest length).  Starting from the
    identity this gives

        ``sum_{lam != triv} t_lam d_lam theta^(2 ell (L - c_lam))``.

    Only the hypercube family admits a closed form for an arbitrary
    ``start`` (all blocks are one-dimensional); the other families require
    ``start`` to be the identity.

    Exact when ``theta`` is rational; float ``theta`` gives floats.
    """
    theta = _as_scalar(theta)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    n = family.n
    if family.kind == "hypercube":
        bits = _start_bits(family, start)
        counts = _hypercube_weight_counts(bits, n)
        total = theta - theta
        for j in range(1, n + 1):
            for k, mult in enumerate(counts[j]):
                if mult:
                    total += mult * theta ** ((4 * ell - 1) * j + 2 * k)
        return total
    if start is not None and start != identity(family):
        raise ValueError(
            "closed form requires the identity start for this family"
        )
    if family.kind == "dihedral":
        hold = _q_int(theta, 2) * _q_int(theta, n) - 1
        return (
            theta ** ((4 * ell - 1) * n)
            + theta ** ((2 * ell - 1) * n) * hold
            - theta ** (2 * ell * n)
        )
    # symmetric
    q = 1 / theta
    big_l = _longest_length(family)
    total = theta - theta
    for rep in irreps(family):
        if rep.label == (n,):
            continue
        total += rep.t_of_q(q) * rep.d * theta ** (2 * ell * (big_l - rep.c))
    return total


def long_scan_avg_chisq(family, theta, ell: int):
    """Pi-weighted average over starting points of the long-scan chi-square:
    ``sum_{lam != triv} d_lam^2 theta^(2 ell (L - c_lam))``.  Exact for
    rational ``theta``."""
    theta = _as_scalar(theta)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    n = family.n
    if family.kind == "hypercube":
        total = theta - theta
        for j in range(1, n + 1):
            total += math.comb(n, j) * theta ** (4 * ell * j)
        return total
    if family.kind == "dihedral":
        return theta ** (4 * ell * n) + (2 * n - 2) * theta ** (2 * ell * n)
    big_l = _longest_length(family)
    total = theta - theta
    for rep in irreps(family):
        if rep.label == (n,):
            continue
        total += rep.d**2 * theta ** (2 * ell * (big_l - rep.c))
    return total


def long_scan_trace(family: GroupFamily, theta, m: int):
    """Trace of the ``m``-th power of the long-scan kernel,
    ``sum_lam d_lam^2 theta^(m (L - c_lam))`` (trivial block included).
    The eigenvalue on each block is ``theta^(L - c_lam)`` with multiplicity
    ``d_lam^2`` in the regular module."""
    theta = _as_scalar(theta)
    big_l = _longest_length(family)
    if family.kind == "hypercube":
        n = family.n
        return sum(
            math.comb(n, j) * theta ** (2 * m * j) for j in range(n + 1)
        )
    if family.kind == "dihedral":
        n = family.n
        return (
            theta ** (2 * m * n)  # sgn, c = -n
            + 1
            + (2 * n - 2) * theta ** (m * n)  # every block with c = 0
        )
    return sum(
        rep.d**2 * theta ** (m * (big_l - rep.c)) for rep in irreps(family)
    )


def short_scan_chisq_symmetric(n: int, theta, ell: int, averaged: bool = False):
    """Chi-square distance for the short scan on the symmetric family.

    One pass applies the generators in the order ``1..n-1, n-1..1``; on the
    block labelled by a partition the eigenvalues are
    ``theta^(n - 1 - c(S(n)))`` indexed by standard tableaux ``S``, with
    ``c(S(n))`` the content of the box holding ``n``.  Started at the
    identity the distance is

        ``sum_{lam != (n)} t_lam sum_S theta^(2 ell (n - 1 - c(S(n))))``

    and the pi-averaged version replaces ``t_lam`` with ``d_lam``.
    """
    theta = _as_scalar(theta)
    if n < 2:
        raise ValueError("need n >= 2")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    q = 1 / theta
    total = theta - theta
    for lam in partitions(n):
        if lam == (n,):
            continue
        weight = _dimension(lam) if averaged else _symmetric_degree(lam)(q)
        spectrum = theta - theta
        for tab in standard_tableaux(lam):
            spectrum += theta ** (2 * ell * (n - 1 - content_of_n_box(tab)))
        total += weight * spectrum
    return total


def short_scan_trace_symmetric(n: int, theta, m: int):
    """Trace of the ``m``-th power of the short-scan kernel on the
    symmetric family: ``sum_lam d_lam sum_S theta^(m (n - 1 - c(S(n))))``."""
    theta = _as_scalar(theta)
    total = theta - theta
    for lam in partitions(n):
        d = _dimension(lam)
        for tab in standard_tableaux(lam):
            total += d * theta ** (m * (n - 1 - content_of_n_box(tab)))
    return total


def random_scan_chisq_hypercube(n: int, theta, ell: int, start=None):
    """Chi-square distance for the single-site random scan on the
    hypercube, started from ``start`` (default all zeros):

        ``sum_{lam != 0} theta^(2 lam.x - |lam|)
          (1 - (|lam|/n)(1 + theta))^(2 ell)``.

    Labels are grouped by ``(|lam|, lam.x)`` with binomial multiplicities,
    so the sum costs O(n^2) instead of 2^n.
    """
    theta = _as_scalar(theta)
    if isinstance(start, GroupElement):
        bits = start.payload
    elif start is None:
        bits = (0,) * n
    else:
        bits = tuple(int(b) for b in start)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ValueError(f"start must be n bits, got {start!r}")
    exact = isinstance(theta, Fraction)
    counts = _hypercube_weight_counts(bits, n)
    total = theta - theta
    for j in range(1, n + 1):
        ratio = Fraction(j, n) if exact else j / n
        gap = (1 - ratio * (1 + theta)) ** (2 * ell)
        for k, mult in enumerate(counts[j]):
            if mult:
                total += mult * theta ** (2 * k - j) * gap
    return total


def dihedral_random_scan_chisq(n: int, theta, ell: int, averaged: bool = False) -> float:
    """Chi-square distance for the random scan on the dihedral family
    (floating point; the kernel eigenvalues involve ``cos(pi lam / n)``).

    Started at the identity:

        ``theta^(2 ell - n) + (theta^(1-n)/n)(1+theta)(1+...+theta^(n-1))
          * sum_{0 < lam < n} (2 - 2 cos(2 pi lam/n))
            / (theta^2 - 2 cos(2 pi lam/n) theta + 1)
            * ((theta + 2 cos(pi lam/n) sqrt(theta) - 1)/2)^(2 ell)``

    and pi-averaged:

        ``theta^(2 ell) + sum_{0 < lam < n}
          2 ((theta + 2 cos(pi lam/n) sqrt(theta) - 1)/2)^(2 ell)``.

    The ``lam = n/2`` term (even ``n``) carries the two extra
    one-dimensional blocks; the sum over ``0 < lam < n`` covers them.
    """
    theta = float(_as_scalar(theta))
    if n < 3:
        raise ValueError("need n >= 3")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    root = math.sqrt(theta)
    if averaged:
        total = theta ** (2 * ell)
        for lam in range(1, n):
            eig = (theta + 2 * math.cos(math.pi * lam / n) * root - 1) / 2
            total += 2 * eig ** (2 * ell)
        return total
    series = sum(theta**i for i in range(n))
    prefactor = theta ** (1 - n) / n * (1 + theta) * series
    total = theta ** (2 * ell - n)
    for lam in range(1, n):
        two_cos = 2 * math.cos(2 * math.pi * lam / n)
        eig = (theta + 2 * math.cos(math.pi * lam / n) * root - 1) / 2
        total += (
            prefactor
            * (2 - two_cos)
            / (theta**2 - two_cos * theta + 1)
            * eig ** (2 * ell)
        )
    return total


# --------------------------------------------------------------------------
# explicit upper bounds

def _require_theta_open(theta: float) -> float:
    theta = float(theta)
    if not 0 < theta < 1:
        raise ValueError(
            f"bound requires 0 < theta < 1 (log theta appears), got {theta}"
        )
    return theta


def _log_domain(log_value: float) -> float:
    try:
        return math.exp(log_value)
    except OverflowError:
        return math.inf


def bound_theorem_1_4(n: int, theta, c) -> float:
    """Total-variation-squared upper bound for the short scan on the
    symmetric family started at the identity, evaluated at
    ``ell = n/2 - log n/log theta + c``:

        ``(e^(theta^(2c+1)) - 1)
          + n! * theta^(n^2/8 - n log n/log theta + n(c + 1/4))``.
    """
    theta = _require_theta_open(theta)
    c = float(c)
    if c <= 0:
        raise ValueError(f"need c > 0, got {c}")
    if n < 2:
        raise ValueError("need n >= 2")
    log_theta = math.log(theta)
    exponent = n * n / 8 - n * math.log(n) / log_theta + n * (c + 0.25)
    tail = _log_domain(math.lgamma(n + 1) + exponent * log_theta)
    return math.expm1(theta ** (2 * c + 1)) + tail


def bound_hypercube(n: int, theta, c, scan: str = "random") -> float:
    """Hypercube upper bounds at the natural step counts.

    ``scan="random"``:  ``(e^(e^-c) - 1) + e^(-c/2)`` at
    ``ell = n (log n - log theta + c) / (2 (1 + theta))`` single-site moves.
    ``scan="systematic"``:  ``(1/4)(e^(e^-c) - 1)`` at
    ``ell = (1/4)((log n + c)/log(1/theta) + 1)`` full passes.

    The value itself is theta-free, but the advertised step counts blow
    up as theta -> 1, so theta = 1 is rejected like the other bounds.
    """
    theta = _require_theta_open(theta)
    c = float(c)
    if n < 1:
        raise ValueError("need n >= 1")
    if scan == "random":
        return math.expm1(math.exp(-c)) + math.exp(-c / 2)
    if scan == "systematic":
        return math.expm1(math.exp(-c)) / 4
    raise ValueError(f"scan must be 'random' or 'systematic', got {scan!r}")


def bound_symmetric_scans(n: int, theta, which: str, c=None) -> float:
    """Explicit bounds for the symmetric-family scans.

    ``which`` selects the scan and the starting regime:

    * ``"long_start"``  -- long scan from the identity, one pass:
      ``(e^(n^2 theta^(n/2)) - 1) + n! theta^(n^2/8 + 5n/4)``.
    * ``"long_avg"``    -- long scan averaged over starts, one pass:
      ``(e^(n^2 theta^n) - 1) + n! theta^(n^2/2 + n)``.
    * ``"short_start"`` -- short scan from the identity at
      ``ell = n/2 - log n/log theta + c`` (requires ``c > 0``).
    * ``"short_avg"``   -- short scan averaged over starts at
      ``ell = -log n/log theta + c``:
      ``(e^(theta^(2c)) - 1) + (theta^c/e)^n e^(1/12) sqrt(2 pi n)``.
    """
    theta = _require_theta_open(theta)
    if n < 2:
        raise ValueError("need n >= 2")
    log_theta = math.log(theta)
    if which == "long_start":
        tail = _log_domain(
            math.lgamma(n + 1) + (n * n / 8 + 5 * n / 4) * log_theta
        )
        return _log_domain(n * n * theta ** (n / 2)) - 1 + tail
    if which == "long_avg":
        tail = _log_domain(math.lgamma(n + 1) + (n * n / 2 + n) * log_theta)
        return _log_domain(n * n * theta**n) - 1 + tail
    if c is None or float(c) <= 0:
        raise ValueError(f"{which!r} requires c > 0, got {c}")
    c = float(c)
    if which == "short_start":
        return bound_theorem_1_4(n, theta, c)
    if which == "short_avg":
        tail = _log_domain(
            n * (c * log_theta - 1) + 1 / 12 + 0.5 * math.log(2 * math.pi * n)
        )
        return math.expm1(theta ** (2 * c)) + tail
    raise ValueError(
        "which must be one of 'long_start', 'long_avg', "
        f"'short_start', 'short_avg'; got {which!r}"
    )


def bound_dihedral_random_scan(n: int, theta, ell: int) -> float:
    """Random-scan chi-square bound on the dihedral family:
    ``theta^-n sqrt((1+theta)/(1-theta)) (1 - (1/2)(1 - sqrt(theta))^2)^(2 ell)``.
    Quoted as an evaluable bound only, with no claim of tightness."""
    theta = _require_theta_open(theta)
    if n < 3:
        raise ValueError("need n >= 3")
    gap = 1 - 0.5 * (1 - math.sqrt(theta)) ** 2
    return theta ** (-n) * math.sqrt((1 + theta) / (1 - theta)) * gap ** (2 * ell)


def bound_dihedral_long_scan(n: int, theta) -> Fraction:
    """Single-pass chi-square bound for the long scan on the dihedral
    family: ``2 theta^(n+1) / (1 - theta)``.  Exact for rational theta."""
    theta = _as_scalar(theta)
    if isinstance(theta, Fraction) and theta == 1:
        raise ValueError("bound requires theta < 1")
    if n < 3:
        raise ValueError("need n >= 3")
    return 2 * theta ** (n + 1) / (1 - theta)


# --------------------------------------------------------------------------
# inequality checks and lead constants

@dataclass(frozen=True)
class DegreeBoundReport:
    """Outcome of the three standard inequalities for one partition:

    * ``degree_ok``:        ``t_lam <= theta^(C(lam_1,2) - C(n,2)) d_lam``,
    * ``dimension_sum_ok``: ``sum_{mu_1 = lam_1} d_mu^2 <= n^(2j)/j!`` with
      ``j = n - lam_1``,
    * ``content_ok``:       ``c_lam`` is at most ``C(lam_1,2) +
      (n-lam_1)(n-lam_1-3)/2`` when ``lam_1 >= n/2`` and ``n^2/4 - n``
      when ``lam_1 <= n/2``.
    """

    degree_ok: bool
    dimension_sum_ok: bool
    content_ok: bool


def lemma_7_2_bounds(lam: Sequence[int], theta) -> DegreeBoundReport:
    """Exactly evaluate the three inequalities for ``lam`` at rational
    ``theta`` (see `DegreeBoundReport`)."""
    lam = _check_partition(lam)
    theta = _as_scalar(theta)
    if not isinstance(theta, Fraction):
        raise ValueError("exact checks require rational theta")
    n = sum(lam)
    j = n - lam[0]
    q = 1 / theta

    t_val = _symmetric_degree(lam)(q)
    d_val = _dimension(lam)
    degree_ok = t_val <= theta ** (math.comb(lam[0], 2) - math.comb(n, 2)) * d_val

    square_sum = sum(
        _dimension(mu) ** 2 for mu in partitions(n) if mu[0] == lam[0]
    )
    if j == 0:
        dimension_sum_ok = square_sum == 1
    else:
        dimension_sum_ok = square_sum <= Fraction(n ** (2 * j), math.factorial(j))

    c_val = content_sum(lam)
    if 2 * lam[0] >= n:
        content_ok = c_val <= Fraction(
            2 * math.comb(lam[0], 2) + (n - lam[0]) * (n - lam[0] - 3), 2
        )
    else:
        content_ok = c_val <= Fraction(n * n, 4) - n

    return DegreeBoundReport(
        degree_ok=bool(degree_ok),
        dimension_sum_ok=bool(dimension_sum_ok),
        content_ok=bool(content_ok),
    )


@dataclass(frozen=True)
class LeadConstantRow:
    """Leading-order step counts (single-site moves) to reach stationarity
    on the hypercube for both scan disciplines at one value of theta."""

    theta: float
    random_scan: float
    systematic_scan: float


def lead_constant_table(thetas: Iterable[float], n: int) -> list[LeadConstantRow]:
    """Evaluate the leading-term constants at size ``n``:

    random scan ``n log(n/theta) / (2 (1 + theta))`` versus systematic scan
    ``n log n / (2 log(1/theta))``.  As ``theta -> 0`` the systematic
    constant wins; at ``theta`` near 1 the random scan does.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rows = []
    for theta in thetas:
        theta = _require_theta_open(theta)
        rows.append(
            LeadConstantRow(
                theta=theta,
                random_scan=n * math.log(n / theta) / (2 * (1 + theta)),
                systematic_scan=n * math.log(n) / (2 * math.log(1 / theta)),
            )
        )
    return rows


if __name__ == "__main__":
    import doctest

    doctest.testmod()
