"""Betti tables of Veronese modules S_{n,d,k}.

The multigraded Betti number at homological degree i and multidegree c with
|c| = k + j*d is the dimension of reduced homology at i-1 of the
(j-1)-skeleton of the pile complex at c; it vanishes unless i <= j <= i+n-1,
so each total degree contributes one window of columns.

Two exact routes are used per multidegree.  The direct route caps the pile
complex at the skeleton and reads homology off boundary ranks.  The
complement route evaluates the same dimension on the complex at t - c - 1
(t = coordinate sum of all generators), where the isomorphism

    H~_{i-1}(Gamma_c)  ~=  H~_{N-n-i-1}(Gamma_{t-c-1})

holds for every c in Z^n.  For each homology dimension the route whose
bound leaves the smaller enumeration slack is chosen, and the one remaining
loose boundary rank is recovered from face counts and the already-known
homology dimensions below it (an Euler cascade), so every Gaussian
elimination runs on a slack-bounded, hence small, matrix.  Setting
use_duality=False forces the literal single-route skeleton computation.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .errors import ConsistencyError
from .homology import DEFAULT_FIELD, CoefficientField, boundary_rank, homology_dims
from .lattice import (
    GeneratorSet,
    Multidegree,
    enumerate_degrees,
    enumerate_generators,
    expand_orbit,
    total,
)
from .pile import DEFAULT_FACE_CAP, build_faces


@dataclass(frozen=True)
class VeroneseModuleSpec:
    """The module S_{n,d,k}: graded pieces of K[x_1..x_n] in degrees k, k+d, ..."""

    n: int
    d: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.k < 0:
            raise ValueError(f"need n >= 1, d >= 1, k >= 0, got {self}")

    @property
    def N(self) -> int:
        return comb(self.d + self.n - 1, self.d)

    def generators(self) -> GeneratorSet:
        return _gens(self.n, self.d)

    def __str__(self) -> str:
        return f"S_{{{self.n},{self.d},{self.k}}}"


@lru_cache(maxsize=None)
def _gens(n: int, d: int) -> GeneratorSet:
    return enumerate_generators(n, d)


def is_cohen_macaulay(spec: VeroneseModuleSpec) -> bool:
    return spec.k < spec.d


def is_pseudolinear_sufficient(spec: VeroneseModuleSpec) -> bool:
    return spec.k > spec.d * (spec.n - 1) - spec.n


def predicted_pdim(spec: VeroneseModuleSpec) -> int:
    return spec.N - spec.n if spec.k < spec.d else spec.N - 1


class BettiTable:
    """Multigraded entries (i, c) -> beta plus total-degree aggregates."""

    def __init__(self, spec, field_label, entries=None, totals=None, complete=True):
        self.spec = spec
        self.field_label = field_label
        self.entries: dict = entries if entries is not None else {}
        if totals is None:
            totals = {}
            for (i, c), v in self.entries.items():
                if v:
                    key = (i, total(c))
                    totals[key] = totals.get(key, 0) + v
        self.totals: dict = {k: v for k, v in totals.items() if v}
        self.complete = complete

    def total(self, i: int, t: int) -> int:
        return self.totals.get((i, t), 0)

    def beta(self, i: int, c: Multidegree) -> int:
        return self.entries.get((i, tuple(c)), 0)

    def column_total(self, i: int) -> int:
        return sum(v for (ii, _), v in self.totals.items() if ii == i)

    def column_degrees(self, i: int) -> list[int]:
        return sorted(t for (ii, t) in self.totals if ii == i)

    def max_column(self) -> int:
        return max((i for (i, _) in self.totals), default=0)

    def row(self, r: int) -> dict[int, int]:
        """Compact-table row r: column i holds beta_{i, k+(i+r)d}."""
        spec = self.spec
        return {
            i: self.total(i, spec.k + (i + r) * spec.d)
            for i in range(self.max_column() + 1)
        }

    def is_pure(self) -> bool:
        seen = {}
        for (i, t), v in self.totals.items():
            if v:
                seen.setdefault(i, set()).add(t)
        return all(len(ts) == 1 for ts in seen.values())

    def is_pseudolinear(self) -> bool:
        if not self.is_pure():
            return False
        return all(
            t == self.spec.k + i * self.spec.d for (i, t), v in self.totals.items() if v
        )

    def same_totals(self, other: "BettiTable") -> bool:
        return self.totals == other.totals

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.totals == other.totals
            and self.entries == other.entries
        )

    @classmethod
    def from_totals(cls, spec, totals, field_label="closed-form"):
        return cls(spec, field_label, entries={}, totals=dict(totals))


def projective_dimension(spec: VeroneseModuleSpec, table: BettiTable) -> int:
    """Largest column with a nonzero entry; must match the k<d dichotomy."""
    if not table.complete:
        raise ValueError("projective dimension needs a fully computed table")
    pd = table.max_column()
    if pd != predicted_pdim(spec):
        raise ConsistencyError(
            f"computed pdim {pd} for {spec} contradicts the expected "
            f"{predicted_pdim(spec)}"
        )
    return pd


def window_columns(spec: VeroneseModuleSpec, j: int) -> list[int]:
    """Columns i that may be nonzero at level j (|c| = k + j*d)."""
    lo = max(0, j - spec.n + 1)
    hi = min(j, spec.N - 1)
    return list(range(lo, hi + 1))


# ---------------------------------------------------------------------------
# per-multidegree engine

# columns above this trigger the complement route / Euler chain instead of a
# direct elimination
ELIM_COL_THRESHOLD = 2500


def _normalize_bound(c, t):
    return tuple(min(cm, tm) for cm, tm in zip(c, t))


def _window_values(gens, k, c, j, want, fld, use_duality, face_cap, validate):
    """Values {i: beta_{i,c}} for the requested columns at level j.

    When `want` covers the whole window the split/chain engine is used;
    otherwise each requested column is computed on its own.
    """
    n, N = gens.n, gens.N
    t = gens.coordinate_sum
    c = _normalize_bound(c, t)
    chat = tuple(tm - cm - 1 for tm, cm in zip(t, c))
    window = set(range(max(0, j - n + 1), min(j, N - 1) + 1))
    want = sorted(set(want))
    out = {i: 0 for i in want}
    doable = [i for i in want if 0 <= i <= min(j, N - 1)]
    if not use_duality:
        return _values_pure(gens, c, j, want, fld, face_cap, validate, out)
    if window and window <= set(want):
        if sum(c) > sum(chat) + 2 * gens.d:
            _values_far_side(gens, k, c, chat, j, window, fld, face_cap, validate, out)
        else:
            _values_split(gens, k, c, chat, j, window, fld, face_cap, validate, out)
        extras = [i for i in doable if i not in window]
    else:
        extras = doable
    for i in extras:
        out[i] = _single_value(gens, c, chat, j, i, fld, face_cap, validate)
    return out


def _values_pure(gens, c, j, want, fld, face_cap, validate, out):
    """Literal route: homology of the (j-1)-skeleton only."""
    doable = [i for i in want if 0 <= i <= min(j, gens.N - 1)]
    if not doable:
        return out
    table = build_faces(
        c, gens, max_dim=j - 1, face_cap=face_cap, stored_min=max(0, min(doable) - 2)
    )
    prof = homology_dims(table, [i - 1 for i in doable], fld, validate=validate)
    for i in doable:
        out[i] = prof.dim(i - 1)
    return out


class _ComplementSide:
    """Lazy homology of the complex at t - c - 1, one dimension at a time."""

    def __init__(self, gens, chat, fld, face_cap, validate):
        self.gens = gens
        self.chat = chat
        self.fld = fld
        self.face_cap = face_cap
        self.validate = validate
        self.tot = sum(chat)
        self.void = any(x < 0 for x in chat)
        self._table = None
        self._built_to = -2

    def has_empty_complex(self) -> bool:
        if self.void:
            return False
        gens_arr = self.gens.generators
        return not any(all(a[m] <= self.chat[m] for m in range(self.gens.n)) for a in gens_arr)

    def dim_for(self, r_direct: int) -> int:
        """H~ of the complement complex matching direct dimension r_direct."""
        rhat = self.gens.N - self.gens.n - 2 - r_direct
        if rhat < -1 or self.void:
            return 0
        if rhat == -1:
            return 1 if self.has_empty_complex() else 0
        if self.tot - self.gens.d * (rhat + 1) < 0:
            return 0  # no faces of that size can exist
        if self._table is None or self._built_to < rhat + 1:
            self._table = build_faces(
                self.chat,
                self.gens,
                max_dim=rhat + 1,
                face_cap=self.face_cap,
                stored_min=0,
            )
            self._built_to = rhat + 1
        return homology_dims(
            self._table, [rhat], self.fld, validate=self.validate
        ).dim(rhat)


def _elim_cost(table, r: int) -> int:
    if r <= 0:
        return 0
    return min(table.n_faces(r - 1), table.n_faces(r))


def _values_split(gens, k, c, chat, j, window, fld, face_cap, validate, out):
    """Full-window values with cheap ranks eliminated from both ends.

    Boundary ranks are eliminated bottom-up and top-down while the matrices
    stay small; homology in the expensive middle band is evaluated on the
    complement side, and the leftover ranks follow from face counts and the
    known homology below them (Euler relations dimension by dimension).
    """
    n, N = gens.n, gens.N
    has_top = j in window
    lt_dims = sorted(i - 1 for i in window if i < j)
    r_rank_max = j - 1 if has_top else (max(lt_dims) + 1 if lt_dims else -1)
    if r_rank_max < -1:
        return out
    table = build_faces(c, gens, max_dim=max(r_rank_max, -1), face_cap=face_cap)
    side = _ComplementSide(gens, chat, fld, face_cap, validate)

    ranks = {-1: 0}
    b = -1
    while b < r_rank_max and _elim_cost(table, b + 1) <= ELIM_COL_THRESHOLD:
        b += 1
        ranks[b] = boundary_rank(table, b, fld)
    t_lo = r_rank_max + 1
    while t_lo - 1 > b and _elim_cost(table, t_lo - 1) <= ELIM_COL_THRESHOLD:
        t_lo -= 1
        ranks[t_lo] = boundary_rank(table, t_lo, fld)

    window_lo = min(lt_dims) if lt_dims else j - 1
    h: dict[int, int] = {}
    h[-1] = 0 if (table.n_faces(0) if table.max_dim >= 0 else 0) else 1
    # dimensions fully covered by the cheap eliminations
    for r in range(0, b):
        h[r] = table.n_faces(r) - ranks[r] - ranks[r + 1]
    # bridge the middle: homology from the complement (or zero below the
    # window), ranks from the Euler relation at each step
    rk = ranks.get(b, 0)
    for s in range(max(b, -1), t_lo - 1):
        if s not in h:
            if s < window_lo:
                h[s] = 0  # below the vanishing window
            elif s == t_lo - 2 and has_top is not None and (s + 2) == t_lo and False:
                pass
            else:
                h[s] = side.dim_for(s)
        nxt = table.n_faces(s) - rk - h[s]
        fs1 = table.n_faces(s + 1) if s + 1 <= table.max_dim else 0
        if nxt < 0 or nxt > min(table.n_faces(s) if s >= 0 else 1, fs1):
            raise ConsistencyError(
                f"chained rank {nxt} out of bounds at dim {s + 1}, bound {c}"
            )
        rk = nxt
        ranks[s + 1] = rk
    # topmost middle dimension comes free once its upper rank is known
    for r in range(t_lo - 1, r_rank_max):
        if r not in h:
            h[r] = table.n_faces(r) - ranks[r] - ranks[r + 1]
    for r in lt_dims:
        val = h[r]
        if val < 0:
            raise ConsistencyError(f"negative betti at dim {r}, bound {c}")
        out[r + 1] = val
    if has_top:
        val = table.n_faces(j - 1) - ranks[j - 1]
        if val < 0:
            raise ConsistencyError(f"negative betti at top, bound {c}")
        out[j] = val
    return out


def _values_far_side(gens, k, c, chat, j, window, fld, face_cap, validate, out):
    """Large-|c| route: all sub-top columns on the complement, pruned top."""
    has_top = j in window
    lt_dims = sorted(i - 1 for i in window if i < j)
    side = _ComplementSide(gens, chat, fld, face_cap, validate)
    for r in lt_dims:
        val = side.dim_for(r)
        if val < 0:
            raise ConsistencyError(f"negative betti at dim {r}, bound {c}")
        out[r + 1] = val
    if has_top:
        out[j] = _top_value(gens, c, j, fld, face_cap)
    return out


def _top_value(gens, c, j, fld, face_cap):
    """beta at the window top: cycle space of the skeleton's highest level."""
    if j == 0:
        return 1  # only the empty face at the top of the (-1)-skeleton
    table = build_faces(
        c,
        gens,
        max_dim=j - 1,
        face_cap=face_cap,
        stored_min=max(0, j - 2),
        min_vertices=j - 1,
    )
    return table.n_faces(j - 1) - boundary_rank(table, j - 1, fld)


def _single_value(gens, c, chat, j, i, fld, face_cap, validate):
    """One column at one multidegree; used for sparse or out-of-window asks."""
    d, n, N = gens.d, gens.n, gens.N
    if i > j or i < 0 or i > N - 1:
        return 0
    if i == j:
        return _top_value(gens, c, j, fld, face_cap)
    r = i - 1
    slack_direct = sum(c) - d * (r + 1)
    rhat = N - n - 2 - r
    slack_dual = sum(chat) - d * (rhat + 1)
    if slack_dual < slack_direct or slack_dual < 0:
        return _ComplementSide(gens, chat, fld, face_cap, validate).dim_for(r)
    if r == -1:
        return 0 if any(all(a[m] <= c[m] for m in range(n)) for a in gens.generators) else 1
    table = build_faces(
        c,
        gens,
        max_dim=r + 1,
        face_cap=face_cap,
        stored_min=max(0, r - 1),
        min_vertices=r,
    )
    return homology_dims(table, [r], fld, validate=validate).dim(r)


def betti_multigraded(
    spec: VeroneseModuleSpec,
    i: int,
    c: Multidegree,
    fld: CoefficientField = DEFAULT_FIELD,
    use_duality: bool = True,
    face_cap: int = DEFAULT_FACE_CAP,
) -> int:
    """beta_{i,c}: zero unless |c| = k + j*d with i <= j."""
    if any(x < 0 for x in c):
        raise ValueError(f"multidegree must be nonnegative, got {c}")
    if i < 0:
        raise ValueError(f"homological degree must be >= 0, got {i}")
    rem = total(c) - spec.k
    if rem < 0 or rem % spec.d != 0:
        return 0
    j = rem // spec.d
    if i > j:
        return 0
    gens = spec.generators()
    vals = _window_values(
        gens, spec.k, tuple(c), j, [i], fld, use_duality, face_cap, False
    )
    return vals[i]


# ---------------------------------------------------------------------------
# cache file: one record per (i, sorted c), tab-separated


def load_cache(path, field_label):
    out = {}
    if not path or not os.path.exists(path):
        return out
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4 or parts[3] != field_label:
                continue
            i = int(parts[0])
            c = tuple(int(x) for x in parts[1].split(","))
            out[(i, c)] = int(parts[2])
    return out


class CacheWriter:
    def __init__(self, path, field_label):
        self.path = path
        self.field_label = field_label
        self._fh = open(path, "a", encoding="utf-8") if path else None

    def record(self, i, rep, beta):
        if self._fh:
            self._fh.write(f"{i}\t{','.join(map(str, rep))}\t{beta}\t{self.field_label}\n")

    def flush(self):
        if self._fh:
            self._fh.flush()

    def close(self):
        if self._fh:
            self._fh.close()
            self._fh = None


# ---------------------------------------------------------------------------
# driver


def _compute_task(args):
    (n, d, k, c, j, want, field_label, use_duality, face_cap, validate) = args
    gens = _gens(n, d)
    fld = CoefficientField.parse(field_label)
    vals = _window_values(gens, k, c, j, want, fld, use_duality, face_cap, validate)
    return (c, vals)


@dataclass
class TableOptions:
    use_symmetry: bool = True
    paranoid: bool = False
    use_duality: bool = True
    jobs: int = 1
    face_cap: int = DEFAULT_FACE_CAP
    cache_path: str | None = None
    validate: bool = False
    row_range: tuple[int, ...] | None = None  # compact rows to compute; None = all
    max_column: int | None = None
    progress: object = None  # callable(level, n_levels, n_tasks)


def betti_table(
    spec: VeroneseModuleSpec,
    fld: CoefficientField = DEFAULT_FIELD,
    options: TableOptions | None = None,
    **kwargs,
) -> BettiTable:
    """Assemble the Betti table by summing window values over all multidegrees.

    Keyword arguments are TableOptions fields for convenience.
    """
    opts = options or TableOptions(**kwargs)
    n, d, k, N = spec.n, spec.d, spec.k, spec.N
    gens = spec.generators()
    max_col = N - 1 if opts.max_column is None else min(opts.max_column, N - 1)
    rows = tuple(range(n)) if opts.row_range is None else tuple(sorted(opts.row_range))
    if any(r < 0 or r > n - 1 for r in rows):
        raise ValueError(f"compact rows must lie in [0, {n - 1}], got {rows}")
    complete = rows == tuple(range(n)) and max_col == N - 1

    top_level = max_col + max(rows)
    if opts.paranoid:
        top_level = max(top_level, max_col + n)
    cache = load_cache(opts.cache_path, fld.label) if opts.use_symmetry else {}
    writer = CacheWriter(opts.cache_path if opts.use_symmetry else None, fld.label)

    entries: dict = {}
    totals: dict = {}
    try:
        for j in range(0, top_level + 1):
            want = sorted(
                {
                    j - r
                    for r in rows
                    if 0 <= j - r <= min(j, max_col)
                }
            )
            paranoid_col = j - n if (opts.paranoid and 0 <= j - n <= max_col) else None
            if paranoid_col is not None:
                want = sorted(set(want) | {paranoid_col})
            if not want:
                continue
            level_degree = k + j * d
            if opts.use_symmetry:
                orbits = enumerate_degrees(n, level_degree, up_to_symmetry=True)
                tasks = [(o.representative, o.orbit_size) for o in orbits]
            else:
                tasks = [(c, 1) for c in enumerate_degrees(n, level_degree)]
            if opts.progress:
                opts.progress(j, top_level + 1, len(tasks))
            todo = []
            for rep, size in tasks:
                if all((i, rep) in cache for i in want):
                    vals = {i: cache[(i, rep)] for i in want}
                    _accumulate(
                        entries, totals, spec, rep, size, vals, j, paranoid_col,
                        opts.use_symmetry,
                    )
                else:
                    todo.append((rep, size))
            args = [
                (n, d, k, rep, j, tuple(want), fld.label, opts.use_duality,
                 opts.face_cap, opts.validate)
                for rep, _ in todo
            ]
            sizes = {rep: size for rep, size in todo}
            if opts.jobs > 1 and len(args) > 1:
                import concurrent.futures as cf

                with cf.ProcessPoolExecutor(max_workers=opts.jobs) as ex:
                    results = list(ex.map(_compute_task, args, chunksize=8))
            else:
                results = [_compute_task(a) for a in args]
            for rep, vals in results:
                for i, v in vals.items():
                    writer.record(i, rep, v)
                _accumulate(
                    entries, totals, spec, rep, sizes[rep], vals, j, paranoid_col,
                    opts.use_symmetry,
                )
            writer.flush()
    finally:
        writer.close()
    return BettiTable(spec, fld.label, entries=entries, totals=totals, complete=complete)


def _accumulate(entries, totals, spec, rep, size, vals, j, paranoid_col, symmetric):
    level_degree = spec.k + j * spec.d
    for i, v in vals.items():
        if i == paranoid_col and j - i == spec.n:
            if v != 0:
                raise ConsistencyError(
                    f"window violation: beta_{{{i},{rep}}}({spec}) = {v} "
                    f"outside the {spec.n}-row window"
                )
            continue
        if not v:
            continue
        totals[(i, level_degree)] = totals.get((i, level_degree), 0) + v * size
        if symmetric:
            for member in expand_orbit(rep):
                entries[(i, member)] = v
        else:
            entries[(i, rep)] = v


# ---------------------------------------------------------------------------
# structural reports


def duality_check(
    c: Multidegree,
    gens: GeneratorSet,
    fld: CoefficientField = DEFAULT_FIELD,
    face_cap: int = DEFAULT_FACE_CAP,
) -> bool:
    """Compare the full homology profiles of the complexes at c and t - c - 1."""
    from .homology import reduced_homology
    from .lattice import dual_degree

    n, N = gens.n, gens.N
    profiles = []
    for bound in (c, dual_degree(tuple(c), gens)):
        md = -1
        if all(x >= 0 for x in bound):
            md = min(N - 1, sum(min(b, tm) for b, tm in zip(bound, gens.coordinate_sum)) // gens.d - 1)
        table = build_faces(bound, gens, max_dim=max(md, -1), face_cap=face_cap)
        profiles.append(reduced_homology(table, fld))
    left, right = profiles
    for i in range(0, N + 2):
        if left.dim(i - 1) != right.dim(N - n - i - 1):
            return False
    return True


@dataclass
class FirstStepReport:
    spec: VeroneseModuleSpec
    beta_first: int  # beta_{1, k+d}
    beyond: dict = field(default_factory=dict)  # j -> beta_{1, k+jd}, j >= 2


def first_step_report(
    spec: VeroneseModuleSpec,
    fld: CoefficientField = DEFAULT_FIELD,
    use_duality: bool = True,
) -> FirstStepReport:
    """beta_{1,k+d} is nonzero and beta_{1,k+jd} = 0 for j >= 2 (k > 0)."""
    if spec.k <= 0:
        raise ValueError("first-step report needs k > 0")
    gens = spec.generators()
    sums = {}
    for j in range(1, spec.n + 1):
        acc = 0
        for orb in enumerate_degrees(spec.n, spec.k + j * spec.d, up_to_symmetry=True):
            vals = _window_values(
                gens, spec.k, orb.representative, j, [1], fld, use_duality,
                DEFAULT_FACE_CAP, False,
            )
            acc += orb.orbit_size * vals[1]
        sums[j] = acc
    if sums[1] == 0:
        raise ConsistencyError(f"beta_{{1,k+d}}({spec}) computed as 0")
    beyond = {j: v for j, v in sums.items() if j >= 2}
    if any(beyond.values()):
        raise ConsistencyError(
            f"first syzygies of {spec} leak outside degree k+d: {beyond}"
        )
    return FirstStepReport(spec=spec, beta_first=sums[1], beyond=beyond)


@dataclass
class OPReportRow:
    i: int
    beta_total: int
    beta_diagonal: int  # the degree-(i+1)d component

    @property
    def equal(self) -> bool:
        return self.beta_total == self.beta_diagonal


def op_conjecture_report(
    spec: VeroneseModuleSpec,
    fld: CoefficientField = DEFAULT_FIELD,
    i_max: int | None = None,
    **table_kwargs,
) -> list[OPReportRow]:
    """Compare total beta_i with its degree-(i+1)d component for the ring case."""
    if spec.k != 0:
        raise ValueError("the diagonal comparison is about k = 0")
    i_max = spec.N - 1 if i_max is None else i_max
    table = betti_table(spec, fld, max_column=i_max, **table_kwargs)
    rows = []
    for i in range(1, i_max + 1):
        rows.append(
            OPReportRow(
                i=i,
                beta_total=table.column_total(i),
                beta_diagonal=table.total(i, (i + 1) * spec.d),
            )
        )
    return rows
