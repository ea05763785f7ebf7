"""Vietoris-Rips filtrations, reduced stagewise, with exact arithmetic.

Scale parameters are kept as Fractions end to end. A cloud built from
coordinates uses squared Euclidean distances as its pair keys (exact, no
square roots); a cloud built from an explicit dissimilarity matrix uses
the entries as given. Filtration stages are the distinct pair keys with
0 always included.

Each stage graph is reduced independently; persistent Betti numbers are
ranks of composed stage-to-stage maps computed entirely on the reduced
complexes by pushing representative cycles along the reduction traces.
A direct column-reduction of the full filtered boundary matrix is
provided as an oracle for cross-checking barcodes.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import exactla
from .complexes import DEFAULT_FACE_BUDGET, enumerate_cliques
from .contract import ReductionTrace, contractible_reduction, edge_extended_reduction
from .errors import GraphFormatError, InternalInconsistencyError
from .graphs import Graph
from .homology import (
    ChainVector,
    Coefficients,
    express_in_homology_basis,
    homology,
    push_cycle_sequence,
)

__all__ = [
    "PointCloud",
    "parse_points",
    "parse_distance_matrix",
    "Filtration",
    "vr_filtration",
    "ReducedStage",
    "reduce_filtration",
    "persistent_betti",
    "Interval",
    "Barcode",
    "barcode",
    "format_barcode_csv",
    "parse_barcode_csv",
    "oracle_persistence",
]

Scalar = Union[int, float, str, Fraction]


def _to_fraction(value: Scalar, context: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"{context}: cannot interpret {value!r} as an exact number") from exc


class PointCloud:
    """Finite metric data given by exact pairwise dissimilarities.

    Two constructors: from_points squares Euclidean distances so the
    keys stay rational (the filtration scale is then a squared
    distance); from_distance_matrix takes the entries at face value.
    """

    __slots__ = ("_n", "_keys", "_squared")

    def __init__(self, n: int, keys: dict[tuple[int, int], Fraction], squared: bool):
        self._n = n
        self._keys = keys
        self._squared = squared

    @classmethod
    def from_points(cls, points: Sequence[Sequence[Scalar]]) -> "PointCloud":
        if not points:
            raise ValueError("need at least one point")
        coords = [
            [_to_fraction(x, f"point {i}") for x in p] for i, p in enumerate(points)
        ]
        d = len(coords[0])
        for i, p in enumerate(coords):
            if len(p) != d:
                raise ValueError(f"point {i} has {len(p)} coordinates, expected {d}")
        keys = {}
        for i in range(len(coords)):
            for j in range(i + 1, len(coords)):
                keys[(i, j)] = sum((a - b) ** 2 for a, b in zip(coords[i], coords[j]))
        return cls(len(coords), keys, squared=True)

    @classmethod
    def from_distance_matrix(cls, rows: Sequence[Sequence[Scalar]]) -> "PointCloud":
        n = len(rows)
        if n == 0:
            raise ValueError("need at least one point")
        mat = [[_to_fraction(x, f"row {i}") for x in r] for i, r in enumerate(rows)]
        for i, r in enumerate(mat):
            if len(r) != n:
                raise ValueError(f"row {i} has {len(r)} entries, expected {n}")
        keys = {}
        for i in range(n):
            if mat[i][i] != 0:
                raise ValueError(f"diagonal entry ({i}, {i}) is {mat[i][i]}, expected 0")
            for j in range(i + 1, n):
                if mat[i][j] != mat[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
                if mat[i][j] < 0:
                    raise ValueError(f"negative entry at ({i}, {j})")
                keys[(i, j)] = mat[i][j]
        return cls(n, keys, squared=False)

    @property
    def n(self) -> int:
        return self._n

    @property
    def squared(self) -> bool:
        return self._squared

    def pair_key(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        return self._keys[(min(i, j), max(i, j))]

    def distinct_keys(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self._keys.values())))


def parse_points(text: str, source: str = "<points>") -> PointCloud:
    """One point per line, coordinates separated by commas or whitespace.
    Decimal strings are read exactly (1.5 becomes 3/2)."""
    pts = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        coords = []
        for tok in line.replace(",", " ").split():
            try:
                coords.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise GraphFormatError(source, lineno, f"bad coordinate {tok!r}")
        if dim is None:
            dim = len(coords)
        elif len(coords) != dim:
            raise GraphFormatError(
                source, lineno, f"point has {len(coords)} coordinates, expected {dim}"
            )
        pts.append(coords)
    if not pts:
        raise GraphFormatError(source, 1, "no points found")
    return PointCloud.from_points(pts)


def parse_distance_matrix(text: str, source: str = "<matrix>") -> PointCloud:
    """Square symmetric matrix, one row per line, entries separated by
    commas or whitespace, zero diagonal."""
    rows = []
    numbered = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        entries = []
        for tok in line.replace(",", " ").split():
            try:
                entries.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise GraphFormatError(source, lineno, f"bad entry {tok!r}")
        rows.append(entries)
        numbered.append(lineno)
    if not rows:
        raise GraphFormatError(source, 1, "no matrix rows found")
    n = len(rows)
    for k, r in enumerate(rows):
        if len(r) != n:
            raise GraphFormatError(
                source, numbered[k], f"row has {len(r)} entries, expected {n}"
            )
    try:
        return PointCloud.from_distance_matrix(rows)
    except ValueError as exc:
        raise GraphFormatError(source, numbered[0], str(exc))


# -- filtrations --------------------------------------------------------------


@dataclass(frozen=True)
class Filtration:
    """Nested stage graphs on a fixed vertex set, one per threshold."""

    cloud: PointCloud
    thresholds: tuple[Fraction, ...]
    graphs: tuple[Graph, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def stage_count(self) -> int:
        return len(self.thresholds)

    def stage_of_key(self, key: Fraction) -> int:
        """Index of the first stage whose threshold reaches the key."""
        idx = bisect.bisect_left(self.thresholds, key)
        if idx == len(self.thresholds):
            raise ValueError(f"key {key} exceeds every threshold")
        return idx


def vr_filtration(
    cloud: PointCloud, thresholds: Optional[Iterable[Scalar]] = None
) -> Filtration:
    """Vietoris-Rips stage graphs of the cloud.

    Default thresholds are 0 plus every distinct pair key, so stages
    change one distance class at a time. Explicit thresholds must be
    strictly increasing; 0 is prepended when absent.
    """
    if thresholds is None:
        ts = (Fraction(0),) + tuple(k for k in cloud.distinct_keys() if k != 0)
    else:
        given = [_to_fraction(t, "threshold") for t in thresholds]
        if not given:
            raise ValueError("threshold list is empty")
        for a, b in zip(given, given[1:]):
            if a >= b:
                raise ValueError(f"thresholds not strictly increasing: {a} then {b}")
        if given[0] < 0:
            raise ValueError(f"negative threshold {given[0]}")
        if given[0] != 0:
            given = [Fraction(0)] + given
        ts = tuple(given)
    vertices = range(cloud.n)
    graphs = []
    for t in ts:
        edges = [
            (i, j)
            for i in vertices
            for j in range(i + 1, cloud.n)
            if cloud.pair_key(i, j) <= t
        ]
        graphs.append(Graph(vertices, edges))
    return Filtration(cloud, ts, tuple(graphs))


@dataclass(frozen=True)
class ReducedStage:
    index: int
    threshold: Fraction
    graph: Graph
    reduced: Graph
    trace: ReductionTrace


def reduce_filtration(
    filt: Filtration, edge_extended: bool = False, jobs: int = 1
) -> tuple[ReducedStage, ...]:
    """Reduce every stage graph independently. Results are cached on the
    filtration; jobs > 1 farms stages out to worker processes (the output
    does not depend on the worker count)."""
    cache_key = ("stages", edge_extended)
    if cache_key not in filt._cache:
        reducer = edge_extended_reduction if edge_extended else contractible_reduction
        if jobs > 1 and len(filt.graphs) >= 4:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(reducer, filt.graphs))
        else:
            results = [reducer(g) for g in filt.graphs]
        stages = []
        for i, (reduced, trace) in enumerate(results):
            stages.append(ReducedStage(i, filt.thresholds[i], filt.graphs[i], reduced, trace))
        filt._cache[cache_key] = tuple(stages)
    return filt._cache[cache_key]


def _pipeline(
    filt: Filtration, dim: int, coeffs: Coefficients
) -> tuple[tuple[ReducedStage, ...], list[tuple[ChainVector, ...]], list[np.ndarray]]:
    """Per-stage homology bases of the reduced graphs and the matrices
    of the maps between consecutive stages, all in those bases."""
    if not coeffs.is_field:
        raise ValueError("persistence ranks need field coefficients")
    cache_key = ("pipeline", dim, coeffs.modulus)
    if cache_key in filt._cache:
        return filt._cache[cache_key]
    stages = reduce_filtration(filt)
    reps: list[tuple[ChainVector, ...]] = []
    for st in stages:
        h = homology(st.reduced, coeffs, max_dim=dim)
        grp = h.group(dim)
        reps.append(grp.representatives if grp is not None else ())
    mats: list[np.ndarray] = []
    for k in range(len(stages) - 1):
        nxt = stages[k + 1]
        mat = np.zeros((len(reps[k + 1]), len(reps[k])), dtype=np.int64)
        for j, z in enumerate(reps[k]):
            pushed = push_cycle_sequence(z, nxt.graph, nxt.trace, coeffs)
            coords = express_in_homology_basis(pushed, reps[k + 1], nxt.reduced, dim, coeffs)
            if coords is None:
                raise InternalInconsistencyError(
                    f"stage {k} cycle not expressible in stage {k + 1} homology basis"
                )
            mat[:, j] = coords
        mats.append(mat)
    filt._cache[cache_key] = (stages, reps, mats)
    return filt._cache[cache_key]


def _rank_table(filt: Filtration, dim: int, coeffs: Coefficients) -> list[list[int]]:
    """Table r[i][j] of persistent ranks for all stage pairs i <= j,
    built with prefix products so the whole table costs O(m^2) small
    matrix multiplications. Cached on the filtration."""
    cache_key = ("ranks", dim, coeffs.modulus)
    if cache_key in filt._cache:
        return filt._cache[cache_key]
    _, reps, mats = _pipeline(filt, dim, coeffs)
    p = coeffs.modulus
    m = filt.stage_count
    r = [[0] * m for _ in range(m)]
    for i in range(m):
        r[i][i] = len(reps[i])
        prod = None
        for j in range(i + 1, m):
            prod = mats[i] % p if prod is None else (mats[j - 1] @ prod) % p
            r[i][j] = exactla.rank_mod_p(prod, p)
    filt._cache[cache_key] = r
    return r


def persistent_betti(
    filt: Filtration, i: int, j: int, dim: int, coeffs: Coefficients = Coefficients(2)
) -> int:
    """Rank of the map on dimension-dim homology from stage i to stage
    j, both inclusive."""
    m = filt.stage_count
    if not (0 <= i <= j < m):
        raise ValueError(f"need 0 <= i <= j < {m}, got i={i}, j={j}")
    return _rank_table(filt, dim, coeffs)[i][j]


# -- barcodes -----------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Half-open persistence interval in stage indices; death None means
    the class survives to the last stage."""

    dim: int
    birth_index: int
    death_index: Optional[int]
    birth: Fraction
    death: Optional[Fraction]

    @property
    def essential(self) -> bool:
        return self.death_index is None


def _interval_sort_key(iv: Interval):
    return (
        iv.dim,
        iv.birth_index,
        iv.death_index if iv.death_index is not None else 1 << 60,
    )


@dataclass(frozen=True)
class Barcode:
    max_dim: int
    thresholds: tuple[Fraction, ...]
    intervals: tuple[Interval, ...]

    def in_dim(self, dim: int) -> tuple[Interval, ...]:
        return tuple(iv for iv in self.intervals if iv.dim == dim)

    def to_csv(self) -> str:
        return format_barcode_csv(self)


def barcode(
    filt: Filtration, max_dim: int = 1, coeffs: Coefficients = Coefficients(2)
) -> Barcode:
    """Stage-indexed barcode from the table of persistent ranks.

    Interval multiplicity in dimension p between stages i < j is the
    alternating second difference of the rank table; classes alive at
    the last stage become essential intervals.
    """
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    m = filt.stage_count
    intervals: list[Interval] = []
    for dim in range(max_dim + 1):
        r = _rank_table(filt, dim, coeffs)

        def rank(a: int, b: int) -> int:
            if a < 0:
                return 0
            return r[a][b]

        for i in range(m):
            for j in range(i + 1, m):
                mult = (rank(i, j - 1) - rank(i, j)) - (rank(i - 1, j - 1) - rank(i - 1, j))
                if mult < 0:
                    raise InternalInconsistencyError(
                        f"negative multiplicity at dim {dim}, stages ({i}, {j})"
                    )
                for _ in range(mult):
                    intervals.append(
                        Interval(dim, i, j, filt.thresholds[i], filt.thresholds[j])
                    )
            essential = rank(i, m - 1) - rank(i - 1, m - 1)
            if essential < 0:
                raise InternalInconsistencyError(
                    f"negative essential count at dim {dim}, stage {i}"
                )
            for _ in range(essential):
                intervals.append(Interval(dim, i, None, filt.thresholds[i], None))
    intervals.sort(key=_interval_sort_key)
    return Barcode(max_dim, filt.thresholds, tuple(intervals))


CSV_HEADER = "dim,birth_index,death_index,birth_eps,death_eps"


def format_barcode_csv(bc: Barcode) -> str:
    lines = [CSV_HEADER]
    for iv in bc.intervals:
        di = -1 if iv.death_index is None else iv.death_index
        de = "inf" if iv.death is None else str(iv.death)
        lines.append(f"{iv.dim},{iv.birth_index},{di},{iv.birth},{de}")
    return "\n".join(lines) + "\n"


def parse_barcode_csv(text: str, source: str = "<csv>") -> tuple[Interval, ...]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != CSV_HEADER:
        raise GraphFormatError(source, 1, f"expected header {CSV_HEADER!r}")
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 5:
            raise GraphFormatError(source, lineno, f"expected 5 fields, got {len(parts)}")
        try:
            dim = int(parts[0])
            bi = int(parts[1])
            di = int(parts[2])
            birth = Fraction(parts[3])
            death = None if parts[4] == "inf" else Fraction(parts[4])
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphFormatError(source, lineno, f"bad field: {exc}")
        if di == -1 and death is not None:
            raise GraphFormatError(source, lineno, "death_index -1 requires death_eps inf")
        if di != -1 and death is None:
            raise GraphFormatError(source, lineno, "death_eps inf requires death_index -1")
        out.append(Interval(dim, bi, None if di == -1 else di, birth, death))
    return tuple(out)


# -- independent oracle -------------------------------------------------------


def oracle_persistence(
    filt: Filtration,
    max_dim: int = 1,
    coeffs: Coefficients = Coefficients(2),
    max_faces: int = DEFAULT_FACE_BUDGET,
) -> Barcode:
    """Barcode by direct reduction of the full filtered boundary matrix,
    no graph reduction involved. GF(2) only; columns are int bitmasks.

    The filtered complex is every clique of the final stage graph with
    at most max_dim + 2 vertices, each entering at the first stage whose
    threshold reaches its largest pair key. Pairs within one stage are
    invisible at stage granularity and are dropped.
    """
    if coeffs.modulus != 2:
        raise ValueError("the matrix-reduction oracle only supports GF(2)")
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    final = filt.graphs[-1]
    by_size = enumerate_cliques(final, max_size=max_dim + 2, max_faces=max_faces)
    entries = []
    for size, cliques in by_size.items():
        for c in cliques:
            key = max(
                (filt.cloud.pair_key(c[a], c[b]) for a in range(size) for b in range(a + 1, size)),
                default=Fraction(0),
            )
            entries.append((filt.stage_of_key(key), size, c))
    entries.sort()
    index = {c: k for k, (_, _, c) in enumerate(entries)}
    reduced: list[int] = []
    low_owner: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    creators: set[int] = set()
    for k, (_, size, c) in enumerate(entries):
        col = 0
        if size >= 2:
            for drop in range(size):
                col |= 1 << index[c[:drop] + c[drop + 1:]]
        while col:
            low = col.bit_length() - 1
            owner = low_owner.get(low)
            if owner is None:
                break
            col ^= reduced[owner]
        if col:
            low_owner[col.bit_length() - 1] = k
            pairs.append((col.bit_length() - 1, k))
        else:
            creators.add(k)
        reduced.append(col)
    killed = set()
    intervals = []
    for low, k in pairs:
        killed.add(low)
        b_stage, b_size, _ = entries[low]
        d_stage = entries[k][0]
        if b_size - 1 <= max_dim and b_stage < d_stage:
            intervals.append(
                Interval(
                    b_size - 1,
                    b_stage,
                    d_stage,
                    filt.thresholds[b_stage],
                    filt.thresholds[d_stage],
                )
            )
    for k in sorted(creators - killed):
        stage, size, _ = entries[k]
        if size - 1 <= max_dim:
            intervals.append(Interval(size - 1, stage, None, filt.thresholds[stage], None))
    intervals.sort(key=_interval_sort_key)
    return Barcode(max_dim, filt.thresholds, tuple(intervals))
