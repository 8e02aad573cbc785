"""Grothendieck-ring classes of the building-block varieties.

Everything is a polynomial (or Laurent polynomial) in ``q``, the class of
the affine line: general linear groups, Grassmannians, tuples of
independent vectors, flag-variety quotients and Levi factors, and the
rank stratification of matrix space.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import LaurentPoly, ONE, q_pow


class InvalidDimension(ValueError):
    """Subspace dimension exceeds the ambient dimension."""


class MalformedCumulativeList(ValueError):
    """Cumulative index list is not strictly increasing up to the rank."""


class InvalidRank(ValueError):
    """Rank outside the range allowed by the matrix shape."""


@dataclass(frozen=True)
class Composition:
    """An ordered tuple of positive block sizes summing to ``rank``."""

    blocks: tuple

    def __post_init__(self):
        if not all(isinstance(b, int) and b >= 1 for b in self.blocks):
            raise ValueError("blocks must be positive integers")
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @property
    def rank(self) -> int:
        return sum(self.blocks)

    def cumulative(self, offset: int = 0) -> tuple:
        """Indices (offset, offset+a_1, offset+a_1+a_2, ...)."""
        out = [offset]
        for b in self.blocks:
            out.append(out[-1] + b)
        return tuple(out)


@dataclass(frozen=True)
class PartitionTail:
    """The finite tail of an orbit partition: weakly decreasing, length k.

    The context (r, k) fixes the implicit infinite prefix of length r - k.
    """

    entries: tuple
    r: int
    k: int

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.k:
            raise ValueError(f"expected {self.k} entries, got {len(entries)}")
        if any(not isinstance(e, int) or e < 0 for e in entries):
            raise ValueError("entries must be nonnegative integers")
        if any(entries[i] < entries[i + 1] for i in range(len(entries) - 1)):
            raise ValueError("entries must be weakly decreasing")
        if not 1 <= self.k <= self.r:
            raise ValueError("need 1 <= k <= r")

    def total(self) -> int:
        return sum(self.entries)


def partition_tails(r: int, k: int, cap: int, last_zero: bool = False):
    """All PartitionTails in context (r, k) with entries <= cap.

    With ``last_zero`` only tails whose final entry is 0 are produced.
    """
    last_range = 1 if last_zero else cap + 1
    for rest in itertools.combinations_with_replacement(range(cap + 1), k - 1):
        for last in range(min(last_range, rest[0] + 1 if rest else last_range)):
            yield PartitionTail(tuple(reversed(rest)) + (last,), r, k)


@lru_cache(maxsize=None)
def class_gl(d: int) -> LaurentPoly:
    """Class of GL_d: q^{d(d-1)/2} (q^d - 1)(q^{d-1} - 1) ... (q - 1)."""
    if d < 0:
        raise InvalidDimension("d must be nonnegative")
    result = q_pow(d * (d - 1) // 2)
    for j in range(1, d + 1):
        result = result * (q_pow(j) - 1)
    return result


@lru_cache(maxsize=None)
def gauss_binomial(d: int, k: int, method: str = "product") -> LaurentPoly:
    """The Gaussian binomial: class of d-dimensional subspaces of k-space.

    ``product`` evaluates prod_{j=1}^{d} (q^{j+k-d} - 1)/(q^j - 1) by exact
    division; ``partition_sum`` sums q^{|lambda|} over weakly increasing
    sequences 0 <= l_1 <= ... <= l_d <= k - d. Both agree.
    """
    if d < 0 or k < 0 or d > k:
        raise InvalidDimension(f"need 0 <= d <= k, got d={d}, k={k}")
    if method == "product":
        num = ONE
        den = ONE
        for j in range(1, d + 1):
            num = num * (q_pow(j + k - d) - 1)
            den = den * (q_pow(j) - 1)
        return num.divide_exact(den)
    if method == "partition_sum":
        terms = {}
        for lam in itertools.combinations_with_replacement(range(k - d + 1), d):
            e = sum(lam)
            terms[e] = terms.get(e, 0) + 1
        return LaurentPoly(terms)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def class_independent_tuples(d: int, k: int) -> LaurentPoly:
    """Class of d-tuples of linearly independent vectors in k-space."""
    if d < 0 or k < 0 or d > k:
        raise InvalidDimension(f"need 0 <= d <= k, got d={d}, k={k}")
    result = ONE
    for j in range(d):
        result = result * (q_pow(k) - q_pow(j))
    return result


def class_flag_quotient(r: int, cumulative) -> LaurentPoly:
    """Class of GL_r modulo a block-parabolic: product of Grassmannians.

    ``cumulative`` is the strictly increasing index list i_0 < ... < i_l = r;
    the result is prod_j [G(i_j - i_{j-1}, i_j)].
    """
    cumulative = tuple(cumulative)
    if len(cumulative) < 1 or cumulative[-1] != r or cumulative[0] < 0:
        raise MalformedCumulativeList(f"bad cumulative list {cumulative} for r={r}")
    if any(cumulative[i] >= cumulative[i + 1] for i in range(len(cumulative) - 1)):
        raise MalformedCumulativeList(f"not strictly increasing: {cumulative}")
    result = ONE
    for prev, cur in zip(cumulative, cumulative[1:]):
        result = result * gauss_binomial(cur - prev, cur)
    return result


def class_levi(blocks: Composition) -> LaurentPoly:
    """Class of a Levi factor: product of GL classes over the block sizes."""
    result = ONE
    for b in blocks.blocks:
        result = result * class_gl(b)
    return result


def composition_of_partition(tail: PartitionTail):
    """Block structure of the equal-value runs of a partition tail.

    Returns (Composition, cumulative list) where the cumulative indices are
    prefixed by the offset r - k coming from the infinite part. A trailing
    run of zeros forms its own block.
    """
    blocks = []
    run = 1
    for prev, cur in zip(tail.entries, tail.entries[1:]):
        if cur == prev:
            run += 1
        else:
            blocks.append(run)
            run = 1
    blocks.append(run)
    comp = Composition(tuple(blocks))
    return comp, comp.cumulative(offset=tail.r - tail.k)


def rank_stratum_class(r: int, s: int, j: int) -> LaurentPoly:
    """Class of r x s matrices of rank exactly j: [G(r-j, r)] * [U(j, s)]."""
    if not 0 <= j <= min(r, s):
        raise InvalidRank(f"need 0 <= j <= min(r, s), got j={j}")
    return gauss_binomial(r - j, r) * class_independent_tuples(j, s)


def rank_identity_check(r: int, k: int) -> bool:
    """q^{kr} = 1 + sum_{m=r-k}^{r-1} [G(m, r)] [U(r-m, k)], exactly."""
    if not 1 <= k <= r:
        raise InvalidRank(f"need 1 <= k <= r, got r={r}, k={k}")
    total = ONE
    for m in range(r - k, r):
        total = total + gauss_binomial(m, r) * class_independent_tuples(r - m, k)
    return total == q_pow(k * r)
