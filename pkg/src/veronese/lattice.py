"""Exponent-vector combinatorics for Veronese generator sets.

Multidegrees are plain tuples of ints (coordinates may be negative, e.g.
complements t - c - 1).  The generator set A of S^(d) in n variables is the
set of all a in N^n with |a| = d, kept in descending lexicographic order so
that (d, 0, ..., 0) comes first and every face index is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial

Multidegree = tuple[int, ...]


def total(c: Multidegree) -> int:
    """Total degree |c| = c_1 + ... + c_n."""
    return sum(c)


def compositions(n: int, tot: int):
    """Yield every c in N^n with |c| = tot, in descending lex order."""
    if n == 1:
        yield (tot,)
        return
    for first in range(tot, -1, -1):
        for rest in compositions(n - 1, tot - first):
            yield (first,) + rest


@dataclass(frozen=True)
class GeneratorSet:
    """The lex-ordered exponent vectors of the degree-d monomials in n variables."""

    n: int
    d: int
    generators: tuple[Multidegree, ...]

    @property
    def N(self) -> int:
        return len(self.generators)

    @property
    def coordinate_sum(self) -> Multidegree:
        """t = sum of all generators; equals (d*N/n, ..., d*N/n) by symmetry."""
        return tuple(sum(a[m] for a in self.generators) for m in range(self.n))

    def index(self, a: Multidegree) -> int:
        return self.generators.index(a)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def enumerate_generators(n: int, d: int) -> GeneratorSet:
    """All compositions of d into n nonnegative parts, descending lex order.

    The cardinality is binomial(d+n-1, d).
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    gens = tuple(compositions(n, d))
    assert len(gens) == comb(d + n - 1, d)
    return GeneratorSet(n=n, d=d, generators=gens)


@dataclass(frozen=True)
class DegreeOrbit:
    """One orbit of multidegrees under coordinate permutation.

    The representative has coordinates sorted descending; orbit_size is the
    number of distinct permutations of it.
    """

    representative: Multidegree
    orbit_size: int


def orbit_size(rep: Multidegree) -> int:
    """n! divided by the factorials of the value multiplicities."""
    size = factorial(len(rep))
    for _, group in itertools.groupby(sorted(rep)):
        size //= factorial(len(list(group)))
    return size


def orbit_representative(c: Multidegree) -> Multidegree:
    return tuple(sorted(c, reverse=True))


def expand_orbit(rep: Multidegree):
    """Yield the distinct coordinate permutations of rep."""
    seen = set()
    for perm in itertools.permutations(rep):
        if perm not in seen:
            seen.add(perm)
            yield perm


def enumerate_degrees(n: int, tot: int, up_to_symmetry: bool = False):
    """Every c in N^n with |c| = tot, or one DegreeOrbit per sorted representative.

    Without symmetry the count is binomial(tot+n-1, n-1); with symmetry the
    orbit sizes add back up to that count.
    """
    if tot < 0:
        raise ValueError(f"total degree must be >= 0, got {tot}")
    if not up_to_symmetry:
        return list(compositions(n, tot))
    orbits = []
    for rep in _partitions_into(n, tot):
        orbits.append(DegreeOrbit(representative=rep, orbit_size=orbit_size(rep)))
    return orbits


def _partitions_into(n: int, tot: int, bound: int | None = None):
    """Weakly decreasing n-tuples summing to tot (partitions padded with zeros)."""
    if bound is None:
        bound = tot
    if n == 1:
        if tot <= bound:
            yield (tot,)
        return
    # first part at least ceil(tot/n) so the remainder stays weakly decreasing
    lo = -(-tot // n)
    for first in range(min(tot, bound), lo - 1, -1):
        for rest in _partitions_into(n - 1, tot - first, first):
            yield (first,) + rest


def dual_degree(c: Multidegree, gens: GeneratorSet) -> Multidegree:
    """The complement t - c - 1, where t is the coordinate sum of all generators.

    Coordinates of the result may be negative; the pile complex of such a
    degree is the void complex.
    """
    if len(c) != gens.n:
        raise ValueError(f"degree has {len(c)} coordinates, generators use {gens.n}")
    t = gens.coordinate_sum
    return tuple(t[m] - c[m] - 1 for m in range(gens.n))
