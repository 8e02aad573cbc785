"""Stringy invariants of rank-bounded square-matrix varieties.

The variety of r x r matrices of rank <= k (and its projectivization)
admits several independent routes to its stringy E-function:

* a closed form, q^{kr} times a Gaussian binomial;
* an orbit subset-sum assembled from geometric series of orbit measures;
* a recursion on the normalized subset sum;
* for k = 1, direct resolution data from a single blowup;
* truncated orbit sums whose coefficients stabilize to the closed form.

All routes are computed exactly and compared coefficient by coefficient.
The motivic zeta function of the determinant hypersurface (k = r - 1) is
also provided, in two forms that are checked against each other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactalg import LaurentPoly, RationalFn, ONE, q_pow
from .groth import (
    PartitionTail,
    class_flag_quotient,
    class_gl,
    class_levi,
    composition_of_partition,
    gauss_binomial,
    partition_tails,
)


class InvalidInput(ValueError):
    """Parameters outside the supported (r, k) range."""


class NegativeExponent(ValueError):
    """A Hodge table was requested for a non-polynomial."""


@dataclass(frozen=True)
class StringyInput:
    """A computation request: matrix size r, rank bound k, affine/projective."""

    r: int
    k: int
    variety: str = "affine"

    def __post_init__(self):
        if self.r < 1:
            raise InvalidInput("r must be >= 1")
        if not 0 <= self.k <= self.r - 1:
            raise InvalidInput(f"need 0 <= k <= r-1, got r={self.r}, k={self.k}")
        if self.variety not in ("affine", "projective"):
            raise InvalidInput(f"unknown variety {self.variety!r}")
        if self.variety == "projective" and self.k < 1:
            raise InvalidInput("projective case needs k >= 1")


@dataclass(frozen=True)
class HodgeTable:
    """Diagonal stringy Hodge numbers h^{p,p} read off a polynomial.

    Off-diagonal entries vanish because every class in play is a polynomial
    in q = uv; the flag records that assertion explicitly.
    """

    diag: dict
    off_diagonal_zero: bool = True

    @property
    def non_negative(self) -> bool:
        return all(v >= 0 for v in self.diag.values())


@dataclass(frozen=True)
class ResolutionData:
    """Log-resolution input for the divisorial stringy E-function formula.

    ``strata`` pairs the E-polynomial of each locally closed stratum with
    the set of divisor indices containing it; ``discrepancies`` lists the
    log discrepancies a_i, all required positive.
    """

    strata: tuple
    discrepancies: tuple

    def __post_init__(self):
        object.__setattr__(self, "strata",
                           tuple((p, frozenset(idx)) for p, idx in self.strata))
        object.__setattr__(self, "discrepancies", tuple(self.discrepancies))
        if any(a <= 0 for a in self.discrepancies):
            raise InvalidInput("log discrepancies must be positive")
        n = len(self.discrepancies)
        for _, idx in self.strata:
            if any(not 0 <= i < n for i in idx):
                raise InvalidInput("stratum refers to an unknown divisor index")


@dataclass(frozen=True)
class ZetaSeries:
    """Truncated motivic zeta series: coefficient of T^n for 0 <= n <= order."""

    r: int
    coefficients: dict
    truncation_order: int

    def coefficient(self, n: int) -> LaurentPoly:
        if not 0 <= n <= self.truncation_order:
            raise InvalidInput(f"coefficient {n} beyond truncation order")
        return self.coefficients.get(n, LaurentPoly.zero())


def _check_rk(r: int, k: int, k_min: int = 0) -> None:
    if r < 1 or not k_min <= k <= r - 1:
        raise InvalidInput(f"need {k_min} <= k <= r-1, got r={r}, k={k}")


# -- discrepancies ----------------------------------------------------------

def log_discrepancies(r: int, k: int):
    """Log discrepancies (i, (k-i)(r-i)) of the k-step blowup resolution."""
    _check_rk(r, k, k_min=1)
    return [(i, (k - i) * (r - i)) for i in range(k)]


def relative_canonical_coeffs(r: int, k: int):
    """Coefficients (k-i)(r-i) - 1 of the exceptional divisors."""
    _check_rk(r, k, k_min=1)
    return [(k - i) * (r - i) - 1 for i in range(k)]


# -- subset sums ------------------------------------------------------------

def _index_subsets(r: int, k: int):
    """Subsets I of {r-k+1, ..., r-1} in bitmask order, as frozensets."""
    middle = list(range(r - k + 1, r))
    for mask in range(1 << len(middle)):
        yield frozenset(m for b, m in enumerate(middle) if mask >> b & 1)


def _subset_class(r: int, k: int, excluded: frozenset) -> LaurentPoly:
    """Class numerator of one subset term: prod over surviving indices i of

    [GL_d] [G(d, i)]^2,   d = i - previous surviving index,

    where the surviving indices are {r-k+1, ..., r} minus ``excluded`` and
    the running difference starts at r - k.
    """
    survivors = sorted(set(range(r - k + 1, r + 1)) - excluded)
    num = ONE
    prev = r - k
    for i in survivors:
        d = i - prev
        num = num * class_gl(d) * gauss_binomial(d, i) ** 2
        prev = i
    return num


def _orbit_subset_sum(r: int, k: int) -> RationalFn:
    """Sum over all 2^{k-1} index subsets of

    prod_{i surviving} [GL_d][G(d, i)]^2 / (q^{i(i-r+k)} - 1),

    assembled over the common denominator prod_i (q^{i(i-r+k)} - 1) so the
    gcd reduction happens once.
    """
    denominators = {i: q_pow(i * (i - r + k)) - 1 for i in range(r - k + 1, r + 1)}
    common_den = ONE
    for d in denominators.values():
        common_den = common_den * d
    total = LaurentPoly.zero()
    for excluded in _index_subsets(r, k):
        term = _subset_class(r, k, excluded)
        for i in sorted(excluded):
            term = term * denominators[i]
        total = total + term
    return RationalFn(total, common_den)


def grassmannian_subset_sum(r: int, k: int) -> LaurentPoly:
    """The normalized orbit sum over index subsets; equals [G(k, r)].

    Sums prod_{i} [GL_d][G(d, i)]^2 / (q^{i(i-r+k)} - 1) over all 2^{k-1}
    subsets of {r-k+1, ..., r-1} and extracts the exact polynomial.
    """
    _check_rk(r, k)
    if k == 0:
        return ONE
    return _orbit_subset_sum(r, k).to_poly()


@lru_cache(maxsize=None)
def grassmannian_recursive(r: int, k: int) -> LaurentPoly:
    """The same value by the recursion in the rank bound; equals [G(k, r)].

    Splits off the second-largest surviving index m and reduces to the
    (k + m - r, m) case, with an explicit boundary term, dividing everything
    by q^{kr} - 1.
    """
    _check_rk(r, k)
    if k == 0:
        return ONE
    if k == 1:
        return (q_pow(r) - 1).divide_exact(q_pow(1) - 1)
    den = q_pow(k * r) - 1

    def tail_factor(m: int) -> LaurentPoly:
        # (q^{m+1}-1)^2 ... (q^r-1)^2 / ((q-1) ... (q^{r-m}-1)) * q^{(r-m)(r-m-1)/2}
        num = q_pow((r - m) * (r - m - 1) // 2)
        for j in range(m + 1, r + 1):
            num = num * (q_pow(j) - 1) ** 2
        d = ONE
        for j in range(1, r - m + 1):
            d = d * (q_pow(j) - 1)
        return num.divide_exact(d)

    total = LaurentPoly.zero()
    for m in range(r - k + 1, r):
        total = total + grassmannian_recursive(m, k + m - r) * tail_factor(m)
    boundary = q_pow(k * (k - 1) // 2)
    for j in range(r - k + 1, r + 1):
        boundary = boundary * (q_pow(j) - 1) ** 2
    bden = ONE
    for j in range(1, k + 1):
        bden = bden * (q_pow(j) - 1)
    total = total + boundary.divide_exact(bden)
    return RationalFn(total, den).to_poly()


# -- stringy E-functions ----------------------------------------------------

def stringy_e_affine(r: int, k: int) -> LaurentPoly:
    """Closed form: q^{kr} * [G(k, r)]."""
    _check_rk(r, k)
    return q_pow(k * r) * gauss_binomial(k, r)


def stringy_e_affine_from_orbits(r: int, k: int) -> LaurentPoly:
    """Orbit-sum route: q^{kr} times the subset sum, extracted exactly."""
    _check_rk(r, k)
    if k == 0:
        return ONE
    return (RationalFn(q_pow(k * r)) * _orbit_subset_sum(r, k)).to_poly()


def stringy_e_projective(r: int, k: int) -> LaurentPoly:
    """Closed form: (1 + q + ... + q^{kr-1}) * [G(k, r)], no division."""
    _check_rk(r, k, k_min=1)
    ladder = LaurentPoly({i: 1 for i in range(k * r)})
    return ladder * gauss_binomial(k, r)


def stringy_e_projective_from_orbits(r: int, k: int) -> LaurentPoly:
    """Orbit-sum route with the last partition entry pinned to zero.

    Pinning the final geometric variable to 0 replaces the q^{kr}/(q^{kr}-1)
    factor by (q^{kr}-1) over the same subset denominators; the global
    1/(q-1) projective measure factor is applied at the end.
    """
    _check_rk(r, k, k_min=1)
    scale = RationalFn(q_pow(k * r) - 1)
    total = scale * _orbit_subset_sum(r, k)
    return (total / RationalFn(q_pow(1) - 1)).to_poly()


# -- Hodge and Euler numbers -------------------------------------------------

def hodge_table(p: LaurentPoly) -> HodgeTable:
    """Diagonal Hodge numbers of a polynomial stringy E-function."""
    if not p.is_polynomial():
        raise NegativeExponent("stringy Hodge numbers need a polynomial")
    diag = {}
    for exp, c in sorted(p.terms.items()):
        if c.denominator != 1:
            raise NegativeExponent(f"non-integer coefficient {c} at q^{exp}")
        diag[exp] = int(c)
    return HodgeTable(diag=diag)


def stringy_euler(p: LaurentPoly) -> Fraction:
    """Value at q = 1 (the u, v -> 1 limit for polynomial inputs)."""
    return p.evaluate(1)


# -- resolution route ---------------------------------------------------------

def stringy_e_from_resolution(data: ResolutionData) -> LaurentPoly:
    """Assemble sum_I E(stratum_I) prod_{i in I} (q - 1)/(q^{a_i} - 1).

    Raises NotPolynomial when the result genuinely is not a polynomial;
    for the varieties treated here it always is.
    """
    total = RationalFn(LaurentPoly.zero())
    for e_poly, idx in data.strata:
        term = RationalFn(e_poly)
        for i in sorted(idx):
            a = data.discrepancies[i]
            term = term * RationalFn(q_pow(1) - 1, q_pow(a) - 1)
        total = total + term
    return total.to_poly()


def rank_one_resolution_data(r: int) -> ResolutionData:
    """Resolution data of the rank <= 1 locus: one blowup of the origin.

    The variety minus the origin is smooth with E-polynomial
    (q^r - 1)^2/(q - 1); the exceptional divisor is a product of two
    projective spaces with E-polynomial ((q^r - 1)/(q - 1))^2, and the
    single log discrepancy is r.
    """
    if r < 2:
        raise InvalidInput("need r >= 2 for a singular rank-1 locus")
    ladder = (q_pow(r) - 1).divide_exact(q_pow(1) - 1)
    off_divisor = (q_pow(r) - 1) * ladder  # E(D^1) - 1
    exceptional = ladder * ladder
    return ResolutionData(strata=((off_divisor, frozenset()),
                                  (exceptional, frozenset({0}))),
                          discrepancies=(r,))


def rank_one_resolution_check(r: int) -> bool:
    """The resolution route agrees with the closed form for k = 1."""
    via_resolution = stringy_e_from_resolution(rank_one_resolution_data(r))
    return via_resolution == stringy_e_affine(r, 1)


# -- orbit measures and truncated sums ----------------------------------------

def orbit_measure(r: int, k: int, tail: PartitionTail) -> LaurentPoly:
    """Motivic measure of the arc orbit indexed by a partition tail:

    [flag quotient]^2 * [Levi] * q^{-sum (2i-1) lambda_i}.
    """
    comp, cumulative = composition_of_partition(tail)
    flag = class_flag_quotient(r, cumulative)
    levi = class_levi(comp)
    expo = -sum((2 * i - 1) * lam
                for i, lam in zip(range(r - k + 1, r + 1), tail.entries))
    return flag * flag * levi * q_pow(expo)


def truncated_orbit_sum(r: int, k: int, cap: int, variant: str = "affine") -> LaurentPoly:
    """Partial orbit sum over tails with entries <= cap.

    Each tail contributes orbit_measure * q^{(r-k) * |tail|}. For the
    projective variant the last entry is pinned to 0 and the global
    1/(q - 1) factor is left to the caller, so partial sums stay Laurent
    polynomials. Coefficients stabilize as the cap grows.
    """
    _check_rk(r, k, k_min=1)
    if variant not in ("affine", "projective"):
        raise InvalidInput(f"unknown variant {variant!r}")
    total = LaurentPoly.zero()
    for tail in partition_tails(r, k, cap, last_zero=(variant == "projective")):
        total = total + orbit_measure(r, k, tail) * q_pow((r - k) * tail.total())
    return total


def orbit_tail_degree_bound(r: int, k: int, cap: int) -> int:
    """Upper bound on exponents any omitted tail (entry > cap) can touch.

    Every omitted tail has first entry >= cap + 1 and all weight exponents
    (r - k - 2i + 1) are <= -(r - k + 1), so its term degree is at most the
    maximal class degree over all block structures minus (r-k+1)(cap+1).
    """
    _check_rk(r, k, k_min=1)
    max_class_deg = 0
    # all run structures of a length-k tail = compositions of k
    for cuts in itertools.product((0, 1), repeat=k - 1):
        blocks = []
        run = 1
        for cut in cuts:
            if cut:
                blocks.append(run)
                run = 1
            else:
                run += 1
        blocks.append(run)
        cumulative = [r - k]
        for b in blocks:
            cumulative.append(cumulative[-1] + b)
        cls = class_flag_quotient(r, cumulative) ** 2
        for b in blocks:
            cls = cls * class_gl(b)
        max_class_deg = max(max_class_deg, cls.degree())
    return max_class_deg - (r - k + 1) * (cap + 1)


# -- motivic zeta function of the determinant ---------------------------------

def _partitions_fixed_length(total: int, length: int, max_part=None):
    """Weakly decreasing nonnegative integer tuples of given length and sum."""
    if max_part is None:
        max_part = total
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, max_part), -1, -1):
        if first * length < total:
            break
        for rest in _partitions_fixed_length(total - first, length - 1, first):
            yield (first,) + rest


def zeta_coefficient_direct(r: int, n: int) -> LaurentPoly:
    """Coefficient of T^n by direct summation over full partitions of n.

    Uses the full-rank specialization of the orbit measure (all entries
    finite, offset 0): sum over lambda_1 >= ... >= lambda_r >= 0 with
    |lambda| = n of [flag quotient]^2 [Levi] q^{-sum (2i-1) lambda_i}.
    """
    if r < 1 or n < 0:
        raise InvalidInput("need r >= 1 and n >= 0")
    total = LaurentPoly.zero()
    for lam in _partitions_fixed_length(n, r):
        tail = PartitionTail(lam, r, r)
        total = total + orbit_measure(r, r, tail)
    return total


def zeta_closed_expansion(r: int, order: int) -> ZetaSeries:
    """Expand the closed subset-sum form of the zeta function to T^order.

    Z(T) = q^{r^2} T^{-r} sum_{I subset {1,...,r-1}} prod_{i in I_r^c}
    [GL_d][G(d,i)]^2 / (q^{i^2} T^{-i} - 1), offset 0 in the differences d.
    Each factor expands as sum_{j>=1} q^{-i^2 j} T^{i j}.
    """
    if r < 1 or order < 0:
        raise InvalidInput("need r >= 1 and order >= 0")
    coeffs = {n: LaurentPoly.zero() for n in range(order + 1)}
    middle = list(range(1, r))
    for mask in range(1 << len(middle)):
        excluded = frozenset(m for b, m in enumerate(middle) if mask >> b & 1)
        survivors = sorted(set(range(1, r + 1)) - excluded)
        cls = ONE
        prev = 0
        for i in survivors:
            d = i - prev
            cls = cls * class_gl(d) * gauss_binomial(d, i) ** 2
            prev = i
        # distribute T-degree n + r over the factors: sum i_m * j_m, j_m >= 1
        def spread(pos: int, remaining: int, q_exp: int, n: int):
            if pos == len(survivors):
                if remaining == 0:
                    coeffs[n] = coeffs[n] + cls * q_pow(r * r + q_exp)
                return
            i = survivors[pos]
            j = 1
            while i * j <= remaining:
                spread(pos + 1, remaining - i * j, q_exp - i * i * j, n)
                j += 1

        for n in range(order + 1):
            spread(0, n + r, 0, n)
    return ZetaSeries(r=r, coefficients=coeffs, truncation_order=order)
