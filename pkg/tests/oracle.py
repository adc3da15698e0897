"""Brute-force reference implementations used to pin expected test values.

Everything here is deliberately independent of the package under test:
generator sets come from itertools, complexes from powerset filtering, and
ranks from dense Gaussian elimination over exact rationals.
"""

import itertools
from fractions import Fraction
from math import comb


def monomials(n, d):
    out = [a for a in itertools.product(range(d + 1), repeat=n) if sum(a) == d]
    out.sort(reverse=True)
    return out


def pile_faces(c, gens, max_dim=None):
    """All faces as sorted index tuples; [] (void) when c has a negative entry."""
    if any(x < 0 for x in c):
        return []
    n = len(c)
    faces = [()]
    for size in range(1, len(gens) + 1):
        if max_dim is not None and size - 1 > max_dim:
            break
        layer = []
        for combo in itertools.combinations(range(len(gens)), size):
            sums = [sum(gens[i][m] for i in combo) for m in range(n)]
            if all(sums[m] <= c[m] for m in range(n)):
                layer.append(combo)
        if not layer:
            break
        faces.extend(layer)
    return faces


def fraction_rank(rows):
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat or not mat[0]:
        return 0
    rank = 0
    ncols = len(mat[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def boundary_dense(faces, r):
    """Dense boundary matrix from r-faces to (r-1)-faces, rationals."""
    rows = [f for f in faces if len(f) == r]
    cols = [f for f in faces if len(f) == r + 1]
    index = {f: i for i, f in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, face in enumerate(cols):
        for pos in range(len(face)):
            facet = face[:pos] + face[pos + 1 :]
            mat[index[facet]][j] = (-1) ** pos
    return mat


def homology_dims(faces, top=None):
    """Reduced homology dims over Q for r in [-1, top]."""
    if not faces:
        return {}
    if top is None:
        top = max(len(f) for f in faces) - 1
    counts = {r: sum(1 for f in faces if len(f) == r + 1) for r in range(-1, top + 2)}
    ranks = {}
    for r in range(0, top + 2):
        if counts.get(r, 0) and counts.get(r - 1, 0):
            ranks[r] = fraction_rank(boundary_dense(faces, r))
        else:
            ranks[r] = 0
    dims = {}
    for r in range(-1, top + 1):
        dims[r] = counts.get(r, 0) - ranks.get(r, 0) - ranks.get(r + 1, 0)
    return dims


def betti_multigraded(n, d, k, i, c):
    """dim of homology at i-1 of the (j-1)-skeleton of the pile complex at c."""
    if sum(c) < k or (sum(c) - k) % d != 0:
        return 0
    j = (sum(c) - k) // d
    if i > j:
        return 0
    gens = monomials(n, d)
    faces = pile_faces(c, gens, max_dim=j - 1)
    return homology_dims(faces, top=j - 1).get(i - 1, 0)


def betti_total(n, d, k, i, t):
    """Sum of the multigraded values over every c in N^n with |c| = t."""
    out = 0
    for c in itertools.product(range(t + 1), repeat=n):
        if sum(c) == t:
            out += betti_multigraded(n, d, k, i, c)
    return out


def degree_count(n, t):
    return comb(t + n - 1, n - 1)
