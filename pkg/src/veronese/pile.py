"""Pile simplicial complexes Gamma_c and their skeletons.

A subset F of the generator set A is a face of Gamma_c iff the coordinatewise
sum of F is <= c.  Faces are enumerated level by level with residual pruning,
in lexicographic order of their (strictly increasing) index tuples, so every
chain-group basis is reproducible.

A bound with any negative coordinate yields the void complex (no faces at
all, not even the empty one).  This is the convention under which the
homology complement identity for c and t - c - 1 holds unconditionally: the
reduced homology of the void complex vanishes in every dimension, -1 included.
"""

from __future__ import annotations

import numpy as np

from .errors import ResourceLimitError
from .lattice import GeneratorSet, Multidegree

DEFAULT_FACE_CAP = 50_000_000


class FaceTable:
    """Faces of a pile complex, grouped by dimension.

    Dimensions run from -1 (the empty face) to max_dim.  Index arrays are
    kept only for dimensions >= stored_min; counts are kept for all.
    """

    def __init__(
        self, bound, gens, max_dim, counts, arrays, stored_min, is_void, valid_min=-1
    ):
        self.bound: Multidegree = bound
        self.gens: GeneratorSet = gens
        self.max_dim: int = max_dim
        self._counts = counts  # counts[r+1] = f_r, r = -1..max_dim
        self._arrays = arrays  # arrays[r] = int16 array (f_r, r+1), or None
        self.stored_min = stored_min
        self.is_void = is_void
        self.valid_min = valid_min  # below this dimension counts are partial

    def n_faces(self, r: int) -> int:
        """f_r, zero outside the stored dimension range."""
        if self.is_void or r < -1 or r > self.max_dim:
            return 0
        if r < self.valid_min and r != -1:
            raise ValueError(
                f"dimension {r} was pruned away (valid from {self.valid_min})"
            )
        return self._counts[r + 1]

    def f_vector(self) -> tuple[int, ...]:
        """(f_{-1}, f_0, ...) with trailing zero levels trimmed."""
        if self.is_void:
            return (0,)
        fv = list(self._counts)
        while len(fv) > 1 and fv[-1] == 0:
            fv.pop()
        return tuple(fv)

    def face_array(self, r: int) -> np.ndarray:
        """Index array of the r-faces, shape (f_r, r+1)."""
        if r < 0 or r > self.max_dim:
            raise ValueError(f"dimension {r} not in table (max_dim={self.max_dim})")
        arr = self._arrays[r]
        if arr is None:
            if self.n_faces(r) == 0:
                return np.zeros((0, r + 1), dtype=np.int16)
            raise ValueError(f"faces of dimension {r} were not stored")
        return arr

    def faces(self, r: int):
        """The r-faces as sorted index tuples, in table order."""
        if r == -1:
            return [()] if not self.is_void else []
        return [tuple(row) for row in self.face_array(r).tolist()]

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic sum((-1)^r f_r) over r >= -1."""
        return sum((-1) ** r * self.n_faces(r) for r in range(-1, self.max_dim + 1))

    def to_text(self) -> str:
        """Plain-text dump: one face per line, dimensions under headers."""
        lines = [f"# pile complex, bound={self.bound}, max_dim={self.max_dim}"]
        if self.is_void:
            lines.append("# void complex")
            return "\n".join(lines) + "\n"
        for r in range(-1, self.max_dim + 1):
            lines.append(f"# dim {r}: {self.n_faces(r)} faces")
            if r == -1:
                lines.append("")
                continue
            if self._arrays[r] is not None:
                for row in self.face_array(r).tolist():
                    lines.append(" ".join(str(i) for i in row))
        return "\n".join(lines) + "\n"


def build_faces(
    c: Multidegree,
    gens: GeneratorSet,
    max_dim: int,
    face_cap: int = DEFAULT_FACE_CAP,
    stored_min: int = 0,
    min_vertices: int = 0,
) -> FaceTable:
    """Enumerate all faces of Gamma_c of dimension <= max_dim.

    Levels below stored_min are only counted, which keeps memory proportional
    to the dimensions a caller actually consumes.  A positive min_vertices
    prunes every branch that cannot grow to that many vertices (each vertex
    costs total degree d), leaving counts exact only from dimension
    min_vertices - 1 upward.  Raises ResourceLimitError once the number of
    visited faces exceeds face_cap.
    """
    if max_dim < -1:
        raise ValueError(f"max_dim must be >= -1, got {max_dim}")
    if len(c) != gens.n:
        raise ValueError(f"bound has {len(c)} coordinates, generators use {gens.n}")
    valid_min = max(-1, min_vertices - 1)
    if any(x < 0 for x in c):
        return FaceTable(
            c, gens, max_dim, [0] * (max_dim + 2), {}, stored_min, True, valid_min
        )

    counts = [1]  # f_{-1}
    arrays: dict[int, np.ndarray | None] = {}
    if max_dim == -1:
        return FaceTable(c, gens, max_dim, counts, arrays, stored_min, False, valid_min)

    cvec = np.asarray(c, dtype=np.int64)
    all_gens = np.asarray(gens.generators, dtype=np.int64)
    keep = np.nonzero((all_gens <= cvec).all(axis=1))[0]
    verts = all_gens[keep]
    nv = len(keep)
    d = gens.d

    faces = keep.astype(np.int16).reshape(-1, 1)
    res = cvec[None, :] - verts
    if min_vertices > 1:
        ok = 1 + res.sum(axis=1) // d >= min_vertices
        faces, res = faces[ok], res[ok]
    budget = face_cap - 1
    for r in range(0, max_dim + 1):
        count = len(faces)
        counts.append(count)
        budget -= count
        if budget < 0:
            raise ResourceLimitError(
                f"face count exceeds cap {face_cap} for bound {tuple(c)}"
            )
        arrays[r] = faces if r >= stored_min else None
        if count == 0 or r == max_dim:
            for rr in range(r + 1, max_dim + 1):
                counts.append(0)
                arrays[rr] = faces[:0].reshape(0, rr + 1) if rr >= stored_min else None
            break
        # extend every face by each later vertex that fits in the residual
        res_tot = res.sum(axis=1)
        extendable = res_tot >= d
        if min_vertices > r + 2:
            extendable &= (r + 2) + (res_tot - d) // d >= min_vertices
        blocks_f, blocks_r = [], []
        last = faces[:, -1]
        for v in range(nv):
            vi = int(keep[v])
            mask = extendable & (last < vi) & (res >= verts[v]).all(axis=1)
            if mask.any():
                grown = np.hstack(
                    [faces[mask], np.full((int(mask.sum()), 1), vi, dtype=np.int16)]
                )
                blocks_f.append(grown)
                blocks_r.append(res[mask] - verts[v])
        if not blocks_f:
            faces = faces[:0].reshape(0, r + 2)
            res = res[:0]
            continue
        faces = np.vstack(blocks_f)
        res = np.vstack(blocks_r)
        order = np.lexsort(faces.T[::-1])
        faces = faces[order]
        res = res[order]
    return FaceTable(c, gens, max_dim, counts, arrays, stored_min, False, valid_min)


def f_vector(table: FaceTable) -> tuple[int, ...]:
    return table.f_vector()


def is_connected(table: FaceTable) -> bool:
    """Whether the 1-skeleton graph is connected (vacuously true with <= 1 vertex)."""
    nv = table.n_faces(0)
    if nv <= 1:
        return True
    if table.max_dim < 1:
        raise ValueError("connectivity needs the table to contain dimension 1")
    vert_ids = table.face_array(0)[:, 0]
    parent = {int(v): int(v) for v in vert_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in table.face_array(1).tolist():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    roots = {find(int(v)) for v in vert_ids}
    return len(roots) == 1
