"""Exact linear algebra over a coefficient field and reduced simplicial homology.

Boundary matrices are assembled from a FaceTable's deterministic bases; ranks
are computed exactly, either densely (numpy, small matrices over a prime
field) or by sparse Gaussian elimination with fill-minimizing pivot choice
(Markowitz-style: smallest column first, then sparsest row, ties broken by
index so runs are reproducible).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError
from .pile import FaceTable

DENSE_CELL_LIMIT = 300_000


def is_probable_prime(m: int) -> bool:
    """Deterministic Miller-Rabin for anything below 3.3e24."""
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CoefficientField:
    """Either a prime field (arithmetic mod p) or the rationals."""

    kind: str  # "prime" | "rationals"
    p: int | None = None

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(kind="prime", p=p)

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(kind="rationals")

    @classmethod
    def parse(cls, label: str) -> "CoefficientField":
        if label.upper() in ("QQ", "Q"):
            return cls.rationals()
        return cls.prime(int(label))

    @property
    def label(self) -> str:
        return "QQ" if self.kind == "rationals" else str(self.p)

    def __str__(self) -> str:
        return self.label


DEFAULT_FIELD = CoefficientField.prime(32003)
SECOND_FIELD = CoefficientField.prime(1_000_003)


@dataclass
class SparseFieldMatrix:
    """COO-style sparse matrix; no duplicate positions, no stored zeros."""

    rows: int
    cols: int
    row_idx: np.ndarray
    col_idx: np.ndarray
    values: np.ndarray

    @property
    def nnz(self) -> int:
        return len(self.values)

    def entries(self):
        return list(zip(self.row_idx.tolist(), self.col_idx.tolist(), self.values.tolist()))

    def column_dicts(self):
        """cols as {row: value} dicts (values as plain ints)."""
        out = [dict() for _ in range(self.cols)]
        for r, c, v in zip(self.row_idx.tolist(), self.col_idx.tolist(), self.values.tolist()):
            out[c][r] = v
        return out

    def transpose(self) -> "SparseFieldMatrix":
        return SparseFieldMatrix(self.cols, self.rows, self.col_idx, self.row_idx, self.values)


def _face_masks(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_or.reduce(np.uint64(1) << arr.astype(np.uint64), axis=1)


def boundary_matrix(table: FaceTable, r: int) -> SparseFieldMatrix:
    """Matrix of the boundary map from r-chains to (r-1)-chains.

    Signs alternate with the position of the deleted vertex; r = 0 gives the
    augmentation row (all ones) onto the empty face.
    """
    if r < 0:
        raise ValueError(f"boundary only defined for r >= 0, got {r}")
    if table.is_void:
        return SparseFieldMatrix(0, 0, *_empty_coo())
    if r > table.max_dim:
        raise ValueError(f"table has no dimension {r} (max_dim={table.max_dim})")
    fr = table.n_faces(r)
    if r == 0:
        return SparseFieldMatrix(
            1,
            fr,
            np.zeros(fr, dtype=np.int64),
            np.arange(fr, dtype=np.int64),
            np.ones(fr, dtype=np.int64),
        )
    rows = table.n_faces(r - 1)
    if fr == 0:
        return SparseFieldMatrix(rows, 0, *_empty_coo())
    cells = table.face_array(r)
    if table.gens.N <= 64:
        row_masks = _face_masks(table.face_array(r - 1))
        col_masks = _face_masks(cells)
        facet_masks = col_masks[:, None] ^ (np.uint64(1) << cells.astype(np.uint64))
        order = np.argsort(row_masks, kind="stable")
        sorted_masks = row_masks[order]
        pos = np.searchsorted(sorted_masks, facet_masks.ravel())
        if pos.max(initial=0) >= rows or not np.array_equal(
            sorted_masks[pos], facet_masks.ravel()
        ):
            raise ConsistencyError("face table is not downward closed")
        row_of_facet = order[pos]
    else:
        lookup = {tuple(f): i for i, f in enumerate(table.face_array(r - 1).tolist())}
        row_list = []
        for face in cells.tolist():
            for p in range(r + 1):
                row_list.append(lookup[tuple(face[:p] + face[p + 1 :])])
        row_of_facet = np.asarray(row_list, dtype=np.int64)
    signs = np.tile(
        np.array([(-1) ** p for p in range(r + 1)], dtype=np.int64), fr
    )
    col_ids = np.repeat(np.arange(fr, dtype=np.int64), r + 1)
    return SparseFieldMatrix(rows, fr, row_of_facet.astype(np.int64), col_ids, signs)


def _empty_coo():
    z = np.zeros(0, dtype=np.int64)
    return z, z.copy(), z.copy()


def rank(m: SparseFieldMatrix, fld: CoefficientField = DEFAULT_FIELD) -> int:
    """Exact rank over the given field; deterministic for fixed input."""
    if m.rows == 0 or m.cols == 0 or m.nnz == 0:
        return 0
    if fld.kind == "prime" and m.rows * m.cols <= DENSE_CELL_LIMIT:
        return _rank_dense_mod_p(m, fld.p)
    work = m if m.cols <= m.rows else m.transpose()
    return _rank_sparse(work, fld.p if fld.kind == "prime" else None)


def _rank_dense_mod_p(m: SparseFieldMatrix, p: int) -> int:
    mat = np.zeros((m.rows, m.cols), dtype=np.int64)
    mat[m.row_idx, m.col_idx] = m.values % p
    rk = 0
    nrows = m.rows
    for c in range(m.cols):
        col = mat[rk:, c]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        piv = rk + int(nz[0])
        if piv != rk:
            mat[[rk, piv], c:] = mat[[piv, rk], c:]
        inv = pow(int(mat[rk, c]), -1, p)
        mat[rk, c:] = mat[rk, c:] * inv % p
        below = rk + 1 + np.nonzero(mat[rk + 1 :, c])[0]
        if len(below):
            mat[below, c:] = (
                mat[below, c:] - np.outer(mat[below, c], mat[rk, c:])
            ) % p
        rk += 1
        if rk == nrows:
            break
    return rk


def _rank_sparse(m: SparseFieldMatrix, p: int | None) -> int:
    """Sparse elimination; p None means exact rationals."""
    cols: dict[int, dict] = {}
    for r, c, v in zip(m.row_idx.tolist(), m.col_idx.tolist(), m.values.tolist()):
        vv = v % p if p is not None else Fraction(v)
        if vv:
            cols.setdefault(c, {})[r] = vv
    row_cols: dict[int, set] = {}
    for j, col in cols.items():
        for i in col:
            row_cols.setdefault(i, set()).add(j)
    heap = [(len(col), j) for j, col in cols.items()]
    heapq.heapify(heap)
    rk = 0
    while heap:
        nnz, j = heapq.heappop(heap)
        col = cols.get(j)
        if col is None or len(col) != nnz:
            continue  # stale heap entry
        del cols[j]
        i = min(col, key=lambda x: (len(row_cols[x]), x))
        pivval = col[i]
        for i2 in col:
            row_cols[i2].discard(j)
        if p is not None:
            inv = pow(pivval, -1, p)
        targets = sorted(row_cols[i])
        for j2 in targets:
            c2 = cols[j2]
            if p is not None:
                f = c2[i] * inv % p
            else:
                f = c2[i] / pivval
            for i2, v2 in col.items():
                cur = c2.get(i2)
                if cur is None:
                    nv = (-f * v2) % p if p is not None else -f * v2
                    if nv:
                        c2[i2] = nv
                        row_cols[i2].add(j2)
                else:
                    nv = (cur - f * v2) % p if p is not None else cur - f * v2
                    if nv:
                        c2[i2] = nv
                    else:
                        del c2[i2]
                        row_cols[i2].discard(j2)
            if c2:
                heapq.heappush(heap, (len(c2), j2))
            else:
                del cols[j2]
        del row_cols[i]
        rk += 1
    return rk


def boundary_rank(
    table: FaceTable, r: int, fld: CoefficientField = DEFAULT_FIELD
) -> int:
    """rank of the boundary map at dimension r, with cheap shortcuts."""
    if r < 0 or table.is_void or r > table.max_dim or table.n_faces(r) == 0:
        return 0
    if r == 0:
        return 1
    return rank(boundary_matrix(table, r), fld)


@dataclass
class HomologyProfile:
    """Reduced homology dimensions together with the ranks behind them."""

    dims: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)
    f: tuple = ()

    def dim(self, r: int) -> int:
        return self.dims.get(r, 0)


def homology_dims(
    table: FaceTable,
    dims: "list[int]",
    fld: CoefficientField = DEFAULT_FIELD,
    validate: bool = False,
    rank_hints: dict | None = None,
) -> HomologyProfile:
    """dim of reduced homology at the requested dimensions.

    At the table's top dimension the boundary from above is zero by
    construction (a skeleton has nothing there), so the value is the full
    cycle-space dimension.  rank_hints supplies externally known boundary
    ranks, keyed by dimension.
    """
    needed = set()
    for r in dims:
        needed.add(r)
        needed.add(r + 1)
    ranks = dict(rank_hints or {})
    for r in sorted(needed):
        if r in ranks:
            continue
        ranks[r] = boundary_rank(table, r, fld)
    if validate:
        _validate_ranks(table, ranks, fld)
    out = {}
    for r in dims:
        fr = table.n_faces(r)
        out[r] = fr - ranks[r] - ranks[r + 1]
        if out[r] < 0:
            raise ConsistencyError(
                f"negative homology dimension at r={r} for bound {table.bound}"
            )
    return HomologyProfile(dims=out, ranks=ranks, f=table.f_vector())


def reduced_homology(
    table: FaceTable, fld: CoefficientField = DEFAULT_FIELD, validate: bool = False
) -> HomologyProfile:
    """Full profile of reduced homology in every dimension the table holds."""
    if table.is_void:
        return HomologyProfile(dims={}, ranks={}, f=table.f_vector())
    profile = homology_dims(
        table, list(range(-1, table.max_dim + 1)), fld, validate=validate
    )
    euler_f = sum((-1) ** r * table.n_faces(r) for r in range(-1, table.max_dim + 1))
    euler_h = sum((-1) ** r * h for r, h in profile.dims.items())
    if euler_f != euler_h:
        raise ConsistencyError(
            f"Euler characteristic mismatch for bound {table.bound}: "
            f"faces give {euler_f}, homology gives {euler_h}"
        )
    return profile


def _validate_ranks(table: FaceTable, ranks: dict, fld: CoefficientField) -> None:
    """Check rank bounds and that consecutive boundaries compose to zero."""
    for r, rk in ranks.items():
        fr = table.n_faces(r)
        fr1 = table.n_faces(r - 1)
        if rk > min(fr, fr1 if r > 0 else 1):
            raise ConsistencyError(f"rank {rk} exceeds matrix bounds at r={r}")
        if r >= 0 and r + 1 in ranks and ranks[r + 1] + rk > fr:
            raise ConsistencyError(f"rank sum exceeds f_{r} for bound {table.bound}")
    for r in sorted(ranks):
        if r < 1 or r + 1 not in ranks or r + 1 > table.max_dim:
            continue
        if table.n_faces(r + 1) == 0 or table.n_faces(r - 1) == 0:
            continue
        if not composes_to_zero(
            boundary_matrix(table, r), boundary_matrix(table, r + 1), fld
        ):
            raise ConsistencyError(f"boundary maps at {r}, {r + 1} do not compose to 0")


def composes_to_zero(
    outer: SparseFieldMatrix, inner: SparseFieldMatrix, fld: CoefficientField
) -> bool:
    """Whether outer @ inner vanishes over the field."""
    if outer.cols != inner.rows:
        raise ValueError("shape mismatch")
    outer_cols = outer.column_dicts()
    p = fld.p if fld.kind == "prime" else None
    for col in inner.column_dicts():
        acc: dict[int, int] = {}
        for mid, v in col.items():
            for r, w in outer_cols[mid].items():
                acc[r] = acc.get(r, 0) + v * w
        for val in acc.values():
            if (val % p if p is not None else val) != 0:
                return False
    return True
