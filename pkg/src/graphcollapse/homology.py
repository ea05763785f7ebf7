"""Homology of clique complexes with explicit chain-level maps.

Chains are formal sums of cliques with the usual alternating-sign
boundary. The distinguishing feature is push_cycle: given a cycle and a
vertex (or edge) whose link is strongly contractible, it rewrites the
cycle, within its homology class, so the deleted element no longer
appears. Chaining pushes along a whole reduction trace transports
homology classes from a graph to its reduced form, which is what makes
maps induced by subgraph inclusion computable on reduced complexes.

Betti numbers and torsion work over the integers; explicit homology
bases and induced-map matrices require a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from . import exactla
from .complexes import DEFAULT_FACE_BUDGET, Simplex, enumerate_cliques
from .contract import ReductionTrace, VERTEX_STEP, is_strong_contractible
from .errors import InternalInconsistencyError
from .graphs import Graph

__all__ = [
    "Coefficients",
    "ChainVector",
    "boundary",
    "join_vertex",
    "split_at_vertex",
    "join_edge",
    "split_at_edge",
    "clique_basis",
    "BoundaryMatrix",
    "boundary_matrix",
    "HomologyGroup",
    "Homology",
    "homology",
    "betti_numbers",
    "push_cycle",
    "push_cycle_edge",
    "push_cycle_sequence",
    "express_in_homology_basis",
    "InducedMap",
    "induced_map",
]


@dataclass(frozen=True)
class Coefficients:
    """Coefficient ring: a prime field GF(modulus), or the integers when
    modulus is None."""

    modulus: Optional[int] = 2

    def __post_init__(self):
        if self.modulus is not None:
            exactla.check_prime(self.modulus)

    @classmethod
    def integers(cls) -> "Coefficients":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "Coefficients":
        return cls(p)

    @property
    def is_field(self) -> bool:
        return self.modulus is not None

    def normalize(self, x: int) -> int:
        return x % self.modulus if self.modulus is not None else x

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"GF({self.modulus})"


class ChainVector:
    """Formal integer combination of simplices of one dimension.

    Immutable. Simplices are strictly increasing vertex tuples; zero
    coefficients are dropped on construction. Dimension -1 chains exist
    (their one simplex is the empty tuple) so splitting a 0-chain at a
    vertex has somewhere to put the stripped coefficients.
    """

    __slots__ = ("_dim", "_terms")

    def __init__(self, dim: int, terms: Optional[Mapping[Simplex, int]] = None):
        if dim < -1:
            raise ValueError(f"chain dimension must be >= -1, got {dim}")
        clean = {}
        if terms:
            for simplex, coeff in terms.items():
                simplex = tuple(simplex)
                if len(simplex) != dim + 1:
                    raise ValueError(
                        f"simplex {simplex} has dimension {len(simplex) - 1}, chain has {dim}"
                    )
                if any(simplex[i] >= simplex[i + 1] for i in range(len(simplex) - 1)):
                    raise ValueError(f"simplex {simplex} is not strictly increasing")
                if coeff:
                    clean[simplex] = clean.get(simplex, 0) + int(coeff)
        object.__setattr__(self, "_dim", dim)
        object.__setattr__(self, "_terms", {s: c for s, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("ChainVector is immutable")

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, simplex: Iterable[int]) -> int:
        return self._terms.get(tuple(simplex), 0)

    def items(self) -> list[tuple[Simplex, int]]:
        return sorted(self._terms.items())

    @property
    def support(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self._terms))

    def _combine(self, other: "ChainVector", sign: int) -> "ChainVector":
        if not isinstance(other, ChainVector):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            dim = other.dim
        elif self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        else:
            dim = self.dim
        terms = dict(self._terms)
        for s, c in other._terms.items():
            terms[s] = terms.get(s, 0) + sign * c
        return ChainVector(dim, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ChainVector(self._dim, {s: -c for s, c in self._terms.items()})

    def __rmul__(self, scalar: int):
        if not isinstance(scalar, int):
            return NotImplemented
        return ChainVector(self._dim, {s: scalar * c for s, c in self._terms.items()})

    def reduce(self, coeffs: Coefficients) -> "ChainVector":
        return ChainVector(self._dim, {s: coeffs.normalize(c) for s, c in self._terms.items()})

    def supported_on_cliques(self, g: Graph) -> bool:
        return all(
            g.has_vertex(v) for s in self._terms for v in s
        ) and all(
            g.has_edge(s[i], s[j])
            for s in self._terms
            for i in range(len(s))
            for j in range(i + 1, len(s))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainVector):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._dim if self._terms else -1, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if self.is_zero:
            return "ChainVector(0)"
        body = " + ".join(f"{c}*{s}" for s, c in self.items())
        return f"ChainVector({body})"


def boundary(chain: ChainVector, g: Optional[Graph] = None) -> ChainVector:
    """Alternating-sign boundary. With g given, every simplex in the
    chain must be a clique of g."""
    if g is not None and not chain.supported_on_cliques(g):
        raise ValueError("chain is not supported on cliques of the graph")
    if chain.dim <= 0:
        return ChainVector(max(chain.dim - 1, -1))
    terms: dict[Simplex, int] = {}
    for simplex, coeff in chain._terms.items():
        for k in range(len(simplex)):
            face = simplex[:k] + simplex[k + 1:]
            sign = 1 if k % 2 == 0 else -1
            terms[face] = terms.get(face, 0) + sign * coeff
    return ChainVector(chain.dim - 1, terms)


def join_vertex(v: int, chain: ChainVector) -> ChainVector:
    """Cone a chain with apex v: each simplex gains v with sign
    (-1)**(insert position), so boundary(v * q) = q - v * boundary(q)
    for q of positive dimension."""
    if chain.is_zero:
        return ChainVector(chain.dim + 1)
    terms: dict[Simplex, int] = {}
    for simplex, coeff in chain._terms.items():
        if v in simplex:
            raise ValueError(f"vertex {v} already in simplex {simplex}")
        pos = sum(1 for u in simplex if u < v)
        bigger = tuple(sorted(simplex + (v,)))
        sign = 1 if pos % 2 == 0 else -1
        terms[bigger] = terms.get(bigger, 0) + sign * coeff
    return ChainVector(chain.dim + 1, terms)


def split_at_vertex(chain: ChainVector, v: int) -> tuple[ChainVector, ChainVector]:
    """Write chain = a + join_vertex(v, b) with v absent from a."""
    a: dict[Simplex, int] = {}
    b: dict[Simplex, int] = {}
    for simplex, coeff in chain._terms.items():
        if v in simplex:
            pos = simplex.index(v)
            sign = 1 if pos % 2 == 0 else -1
            b[simplex[:pos] + simplex[pos + 1:]] = sign * coeff
        else:
            a[simplex] = coeff
    return ChainVector(chain.dim, a), ChainVector(chain.dim - 1, b)


def join_edge(u: int, v: int, chain: ChainVector) -> ChainVector:
    """Double cone over the edge {u, v} (order of u and v is immaterial
    up to the composed sign convention used consistently below)."""
    u, v = min(u, v), max(u, v)
    return join_vertex(u, join_vertex(v, chain))


def split_at_edge(chain: ChainVector, u: int, v: int) -> tuple[ChainVector, ChainVector]:
    """Write chain = a + join_edge(u, v, b) with no simplex of a
    containing both u and v. Inverts the joins outermost first: strip u
    at its position, then v at its position in what remains."""
    if chain.dim < 2:
        raise ValueError(f"splitting at an edge needs chains of dimension >= 2, got {chain.dim}")
    u, v = min(u, v), max(u, v)
    a: dict[Simplex, int] = {}
    b: dict[Simplex, int] = {}
    for simplex, coeff in chain._terms.items():
        if u in simplex and v in simplex:
            pu = simplex.index(u)
            rest = simplex[:pu] + simplex[pu + 1:]
            pv = rest.index(v)
            sign = 1 if (pu + pv) % 2 == 0 else -1
            small = rest[:pv] + rest[pv + 1:]
            b[small] = b.get(small, 0) + sign * coeff
        else:
            a[simplex] = coeff
    return ChainVector(chain.dim, a), ChainVector(chain.dim - 2, b)


# -- bases and boundary matrices ---------------------------------------------


def clique_basis(g: Graph, dim: int, max_faces: int = DEFAULT_FACE_BUDGET) -> tuple[Simplex, ...]:
    """Cliques of g with dim+1 vertices, lexicographically sorted."""
    if dim < 0:
        return ()
    by_size = enumerate_cliques(g, max_size=dim + 1, max_faces=max_faces)
    return tuple(sorted(by_size.get(dim + 1, ())))


@dataclass(frozen=True)
class BoundaryMatrix:
    """Matrix of the boundary map from dim-chains to (dim-1)-chains in
    the given ordered clique bases. Entries are signed integers."""

    dim: int
    domain: tuple[Simplex, ...]
    codomain: tuple[Simplex, ...]
    matrix: np.ndarray


def _boundary_matrix_from_bases(
    dim: int, domain: tuple[Simplex, ...], codomain: tuple[Simplex, ...]
) -> BoundaryMatrix:
    mat = np.zeros((len(codomain), len(domain)), dtype=np.int64)
    index = {s: i for i, s in enumerate(codomain)}
    for j, simplex in enumerate(domain):
        for k in range(len(simplex)):
            face = simplex[:k] + simplex[k + 1:]
            i = index.get(face)
            if i is None:
                raise InternalInconsistencyError(f"face {face} of {simplex} missing from basis")
            mat[i, j] = 1 if k % 2 == 0 else -1
    return BoundaryMatrix(dim, domain, codomain, mat)


def boundary_matrix(g: Graph, dim: int, max_faces: int = DEFAULT_FACE_BUDGET) -> BoundaryMatrix:
    if dim < 1:
        raise ValueError(f"boundary matrices start at dimension 1, got {dim}")
    return _boundary_matrix_from_bases(
        dim, clique_basis(g, dim, max_faces), clique_basis(g, dim - 1, max_faces)
    )


def _chain_to_column(chain: ChainVector, basis: tuple[Simplex, ...], coeffs: Coefficients) -> np.ndarray:
    index = {s: i for i, s in enumerate(basis)}
    col = np.zeros(len(basis), dtype=np.int64)
    for s, c in chain._terms.items():
        if s not in index:
            raise ValueError(f"simplex {s} is outside the basis")
        col[index[s]] = coeffs.normalize(c)
    return col


def _column_to_chain(col, dim: int, basis: tuple[Simplex, ...]) -> ChainVector:
    return ChainVector(dim, {basis[i]: int(col[i]) for i in range(len(basis)) if col[i]})


# -- homology ----------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    dim: int
    rank: int
    torsion: tuple[int, ...] = ()
    representatives: tuple[ChainVector, ...] = ()


@dataclass(frozen=True)
class Homology:
    coefficients: Coefficients
    groups: tuple[HomologyGroup, ...]

    def betti(self, dim: int) -> int:
        if 0 <= dim < len(self.groups):
            return self.groups[dim].rank
        return 0

    def group(self, dim: int) -> Optional[HomologyGroup]:
        if 0 <= dim < len(self.groups):
            return self.groups[dim]
        return None

    @property
    def betti_vector(self) -> tuple[int, ...]:
        return tuple(grp.rank for grp in self.groups)

    def to_text(self) -> str:
        lines = []
        for grp in self.groups:
            line = f"H_{grp.dim} {grp.rank}"
            if grp.torsion:
                line += " [" + " ".join(str(t) for t in grp.torsion) + "]"
            lines.append(line)
        return "\n".join(lines) + "\n" if lines else ""


def _field_representatives(
    kernel: np.ndarray, bnd_next: np.ndarray, betti: int, p: int
) -> list[np.ndarray]:
    """Columns of the kernel that extend the column space of the next
    boundary matrix to a basis of the cycle space, greedily."""
    if betti == 0:
        return []
    current = bnd_next % p
    rank = exactla.rank_mod_p(current, p)
    reps = []
    for j in range(kernel.shape[1]):
        col = kernel[:, j].reshape(-1, 1)
        aug = np.concatenate([current, col], axis=1)
        r = exactla.rank_mod_p(aug, p)
        if r > rank:
            reps.append(kernel[:, j].copy())
            current = aug
            rank = r
            if len(reps) == betti:
                return reps
    raise InternalInconsistencyError(
        f"found {len(reps)} independent cycles, expected {betti}"
    )


def homology(
    g: Graph,
    coeffs: Coefficients = Coefficients(2),
    max_dim: Optional[int] = None,
    with_representatives: bool = True,
    max_faces: int = DEFAULT_FACE_BUDGET,
) -> Homology:
    """Homology of the clique complex of g in all dimensions up to
    max_dim (default: the dimension of the complex).

    Over a field, each group carries an explicit basis of representative
    cycles unless with_representatives is false. Over the integers,
    ranks come with torsion coefficients and no representatives.
    """
    if max_dim is not None and max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    size_cap = None if max_dim is None else max_dim + 2
    by_size = enumerate_cliques(g, max_size=size_cap, max_faces=max_faces)
    if not by_size:
        return Homology(coeffs, ())
    top = max(by_size) - 1
    hi = top if max_dim is None else min(top, max_dim)
    bases = {n: tuple(sorted(by_size.get(n + 1, ()))) for n in range(hi + 2)}
    mats = {
        n: _boundary_matrix_from_bases(n, bases[n], bases[n - 1]).matrix
        for n in range(1, hi + 2)
    }

    groups = []
    if coeffs.is_field:
        p = coeffs.modulus
        ranks = {n: exactla.rank_mod_p(m, p) for n, m in mats.items()}
        ranks[0] = 0
        for n in range(hi + 1):
            betti = len(bases[n]) - ranks[n] - ranks.get(n + 1, 0)
            reps: tuple[ChainVector, ...] = ()
            if with_representatives:
                if n == 0:
                    kernel = np.eye(len(bases[0]), dtype=np.int64)
                else:
                    kernel = exactla.nullspace_mod_p(mats[n], p)
                bnd_next = mats.get(n + 1)
                if bnd_next is None:
                    bnd_next = np.zeros((len(bases[n]), 0), dtype=np.int64)
                cols = _field_representatives(kernel, bnd_next, betti, p)
                reps = tuple(_column_to_chain(col, n, bases[n]) for col in cols)
            groups.append(HomologyGroup(n, betti, (), reps))
    else:
        ranks = {0: 0}
        factors = {}
        for n, m in mats.items():
            f = exactla.invariant_factors(m.tolist()) if m.size else []
            ranks[n] = len(f)
            factors[n] = f
        for n in range(hi + 1):
            betti = len(bases[n]) - ranks[n] - ranks.get(n + 1, 0)
            torsion = tuple(d for d in factors.get(n + 1, []) if d > 1)
            groups.append(HomologyGroup(n, betti, torsion, ()))
    return Homology(coeffs, tuple(groups))


def betti_numbers(
    g: Graph, coeffs: Coefficients = Coefficients(2), max_dim: Optional[int] = None
) -> tuple[int, ...]:
    return homology(g, coeffs, max_dim=max_dim, with_representatives=False).betti_vector


# -- transporting cycles along reductions -------------------------------------


def _solve_in_link(
    b: ChainVector, link: Graph, target_dim: int, coeffs: Coefficients
) -> ChainVector:
    """Chain x of target_dim in the clique complex of the link with
    boundary(x) = b. Exists whenever the link is strongly contractible
    and b is a cycle (with zero coefficient sum in dimension 0)."""
    domain = clique_basis(link, target_dim)
    codomain = clique_basis(link, target_dim - 1)
    mat = _boundary_matrix_from_bases(target_dim, domain, codomain).matrix
    rhs = _chain_to_column(b, codomain, coeffs)
    if coeffs.is_field:
        sol = exactla.solve_mod_p(mat, rhs, coeffs.modulus)
    else:
        sol = exactla.solve_integer(mat.tolist(), [int(v) for v in rhs])
    if sol is None:
        raise InternalInconsistencyError(
            "no preimage under the boundary in a contractible link"
        )
    return _column_to_chain(sol, target_dim, domain)


def push_cycle(c: ChainVector, v: int, g: Graph, coeffs: Coefficients = Coefficients(2)) -> ChainVector:
    """Rewrite the cycle c, within its homology class in the clique
    complex of g, as a cycle avoiding vertex v.

    Requires the neighborhood of v to be strongly contractible; the
    result lives in the clique complex of g minus v. The output is
    c + boundary(join_vertex(v, x)) for a solve x in the neighborhood.
    """
    c = c.reduce(coeffs)
    if not c.supported_on_cliques(g):
        raise ValueError("cycle is not supported on cliques of the graph")
    if not boundary(c).reduce(coeffs).is_zero:
        raise ValueError("chain is not a cycle")
    if not g.has_vertex(v):
        raise ValueError(f"graph has no vertex {v}")
    link = g.neighborhood(v)
    if not is_strong_contractible(link):
        raise ValueError(f"neighborhood of {v} is not strongly contractible")
    a, b = split_at_vertex(c, v)
    if b.is_zero:
        return a
    if c.dim == 0:
        w = min(link.vertices)
        x = ChainVector(0, {(w,): c.coefficient((v,))})
    else:
        x = _solve_in_link(b.reduce(coeffs), link, c.dim, coeffs)
    out = (c + boundary(join_vertex(v, x))).reduce(coeffs)
    if not split_at_vertex(out, v)[1].is_zero:
        raise InternalInconsistencyError(f"push failed to eliminate vertex {v}")
    return out


def push_cycle_edge(
    c: ChainVector, u: int, v: int, g: Graph, coeffs: Coefficients = Coefficients(2)
) -> ChainVector:
    """Rewrite the cycle c, within its homology class, as a cycle whose
    simplices never contain the edge {u, v}.

    Requires the common neighborhood of u and v to be strongly
    contractible; the result lives in the clique complex of g minus the
    edge. The output is c - boundary(join_edge(u, v, b')) for a solve b'
    in the common neighborhood.
    """
    c = c.reduce(coeffs)
    if not c.supported_on_cliques(g):
        raise ValueError("cycle is not supported on cliques of the graph")
    if not boundary(c).reduce(coeffs).is_zero:
        raise ValueError("chain is not a cycle")
    if not g.has_edge(u, v):
        raise ValueError(f"graph has no edge {{{u}, {v}}}")
    if c.dim == 0:
        return c
    u, v = min(u, v), max(u, v)
    link = g.common_neighborhood(u, v)
    if not is_strong_contractible(link):
        raise ValueError(f"common neighborhood of {u} and {v} is not strongly contractible")
    if c.dim == 1:
        alpha = coeffs.normalize(c.coefficient((u, v)))
        if alpha == 0:
            return c
        w = min(link.vertices)
        bprime = ChainVector(0, {(w,): alpha})
    else:
        a, b = split_at_edge(c, u, v)
        if b.is_zero:
            return c
        bprime = _solve_in_link(b.reduce(coeffs), link, c.dim - 1, coeffs)
    out = (c - boundary(join_edge(u, v, bprime))).reduce(coeffs)
    if not split_at_edge(out, u, v)[1].is_zero:
        raise InternalInconsistencyError(f"push failed to eliminate edge ({u}, {v})")
    return out


def push_cycle_sequence(
    c: ChainVector, g: Graph, trace: ReductionTrace, coeffs: Coefficients = Coefficients(2)
) -> ChainVector:
    """Push a cycle through every step of a reduction trace of g. The
    result is a cycle of the reduced graph's clique complex, homologous
    to c under the inclusion of that complex into the original one."""
    cur = g
    for step in trace:
        if step.kind == VERTEX_STEP:
            c = push_cycle(c, step.element, cur, coeffs)
            cur = cur.delete_vertex(step.element)
        else:
            u, v = step.element
            c = push_cycle_edge(c, u, v, cur, coeffs)
            cur = cur.delete_edge(u, v)
    return c


# -- induced maps ----------------------------------------------------------


def express_in_homology_basis(
    z: ChainVector,
    reps: tuple[ChainVector, ...],
    g: Graph,
    dim: int,
    coeffs: Coefficients,
) -> Optional[np.ndarray]:
    """Coordinates of the class of z in the given homology basis of the
    clique complex of g, or None if z is not a combination of the reps
    modulo boundaries. Field coefficients only."""
    if not coeffs.is_field:
        raise ValueError("homology coordinates need field coefficients")
    basis = clique_basis(g, dim)
    bnd = _boundary_matrix_from_bases(
        dim + 1, clique_basis(g, dim + 1), basis
    ).matrix
    cols = [_chain_to_column(r, basis, coeffs).reshape(-1, 1) for r in reps]
    cols.append(bnd % coeffs.modulus if bnd.size else np.zeros((len(basis), 0), dtype=np.int64))
    system = np.concatenate(cols, axis=1) if cols else np.zeros((len(basis), 0), dtype=np.int64)
    rhs = _chain_to_column(z, basis, coeffs)
    sol = exactla.solve_mod_p(system, rhs, coeffs.modulus)
    if sol is None:
        return None
    return sol[: len(reps)]


@dataclass(frozen=True)
class InducedMap:
    """Matrix of the map on homology induced by a subgraph inclusion,
    written in the representative bases of the two reduced complexes."""

    dim: int
    coefficients: Coefficients
    domain_graph: Graph
    codomain_graph: Graph
    domain_basis: tuple[ChainVector, ...]
    codomain_basis: tuple[ChainVector, ...]
    matrix: np.ndarray


def induced_map(
    g0: Graph,
    g1: Graph,
    trace0: ReductionTrace,
    trace1: ReductionTrace,
    dim: int,
    coeffs: Coefficients = Coefficients(2),
) -> InducedMap:
    """Map on dimension-dim homology induced by the inclusion of g0 into
    g1, computed between the reduced graphs of the two traces.

    Every vertex and edge of g0 must be present in g1. Field
    coefficients only: over the integers there is no canonical basis to
    write the matrix in, so this raises ValueError.
    """
    if not coeffs.is_field:
        raise ValueError(
            "induced maps are computed over a prime field; integer coefficients are not supported"
        )
    if dim < 0:
        raise ValueError(f"dimension must be nonnegative, got {dim}")
    for v in g0.vertices:
        if not g1.has_vertex(v):
            raise ValueError(f"vertex {v} of the subgraph is missing from the host graph")
    for u, v in g0.edges:
        if not g1.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) of the subgraph is missing from the host graph")
    r0 = trace0.replay(g0)
    r1 = trace1.replay(g1)
    h0 = homology(r0, coeffs, max_dim=dim)
    h1 = homology(r1, coeffs, max_dim=dim)
    reps0 = h0.group(dim).representatives if h0.group(dim) else ()
    reps1 = h1.group(dim).representatives if h1.group(dim) else ()
    mat = np.zeros((len(reps1), len(reps0)), dtype=np.int64)
    for j, z in enumerate(reps0):
        pushed = push_cycle_sequence(z, g1, trace1, coeffs)
        coords = express_in_homology_basis(pushed, reps1, r1, dim, coeffs)
        if coords is None:
            raise InternalInconsistencyError(
                "pushed cycle is not expressible in the reduced homology basis"
            )
        mat[:, j] = coords
    return InducedMap(dim, coeffs, g0, g1, reps0, reps1, mat)
