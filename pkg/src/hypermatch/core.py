"""Core k-uniform hypergraph types: edges, degrees, links, partitions, matchings.

All types are immutable after construction and safe to share across
threads.  Vertices are dense 0-based integer indices; in a (1, k-1)-partite
graph the Q class occupies the low indices so that class membership is a
single index comparison.  Every edge is stored as a sorted tuple and also
cached as an integer bitmask, which makes disjointness tests a single AND.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb


class InputError(ValueError):
    """An argument violated a documented precondition."""


VertexSet = tuple[int, ...]


def as_vertex_set(members) -> VertexSet:
    """Normalize an iterable of vertex indices to a sorted duplicate-free tuple."""
    out = tuple(sorted(set(members)))
    if out and out[0] < 0:
        raise InputError(f"negative vertex index {out[0]}")
    return out


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Hypergraph:
    """Immutable k-uniform hypergraph on vertices 0..n_vertices-1.

    Edges are deduplicated and kept in lexicographic order.  ``edge_masks[i]``
    is the bitmask of ``edges[i]``; ``adjacency[v]`` lists the indices of the
    edges containing v.
    """

    __slots__ = ("k", "n_vertices", "edges", "edge_masks", "adjacency", "_edge_set")

    def __init__(self, k: int, n_vertices: int, edges) -> None:
        if k < 1:
            raise InputError(f"uniformity k={k} must be >= 1")
        if n_vertices < 0:
            raise InputError(f"n_vertices={n_vertices} must be >= 0")
        normalized = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise InputError(f"edge {t} does not have {k} distinct vertices")
            if t[0] < 0 or t[-1] >= n_vertices:
                raise InputError(f"edge {t} out of range for n={n_vertices}")
            normalized.add(t)
        self.k = k
        self.n_vertices = n_vertices
        self.edges: tuple[tuple[int, ...], ...] = tuple(sorted(normalized))
        self.edge_masks: tuple[int, ...] = tuple(mask_of(e) for e in self.edges)
        adjacency: list[list[int]] = [[] for _ in range(n_vertices)]
        for i, e in enumerate(self.edges):
            for v in e:
                adjacency[v].append(i)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(map(tuple, adjacency))
        self._edge_set = normalized

    # -- basic accessors -------------------------------------------------

    def n_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, e) -> bool:
        return tuple(sorted(e)) in self._edge_set

    def vertices(self) -> range:
        return range(self.n_vertices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.k == other.k
            and self.n_vertices == other.n_vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.k, self.n_vertices, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n_vertices}, e={len(self.edges)})"

    # -- degree machinery ------------------------------------------------

    def degree(self, t_set) -> int:
        """Number of edges containing every vertex of ``t_set``.

        For |T| >= 2 only the edge list of the lowest-degree member of T is
        scanned, which is fast enough at desk scale.
        """
        t = as_vertex_set(t_set)
        if not t:
            return len(self.edges)
        if t[-1] >= self.n_vertices:
            raise InputError(f"vertex {t[-1]} out of range")
        if len(t) > self.k:
            return 0
        if len(t) == 1:
            return len(self.adjacency[t[0]])
        pivot = min(t, key=lambda v: len(self.adjacency[v]))
        tm = mask_of(t)
        return sum(1 for i in self.adjacency[pivot] if self.edge_masks[i] & tm == tm)

    def min_degree(self, l: int) -> int:
        """Minimum degree over all l-subsets of vertices; l=0 gives the edge count."""
        if l < 0 or l > self.k:
            raise InputError(f"l={l} must satisfy 0 <= l <= k={self.k}")
        if l == 0:
            return len(self.edges)
        if l == 1:
            return min((len(a) for a in self.adjacency), default=0)
        return min(
            (self.degree(t) for t in itertools.combinations(range(self.n_vertices), l)),
            default=0,
        )

    def link(self, v: int) -> "Hypergraph":
        """The (k-1)-graph of edge remainders e - {v} over edges containing v."""
        if not 0 <= v < self.n_vertices:
            raise InputError(f"vertex {v} out of range")
        rem = [tuple(x for x in self.edges[i] if x != v) for i in self.adjacency[v]]
        return Hypergraph(self.k - 1, self.n_vertices, rem)

    # -- subgraphs (vertex indices stay stable) ---------------------------

    def induced(self, a_set) -> "Hypergraph":
        """Keep only edges fully inside ``a_set``; the vertex set is unchanged."""
        a = as_vertex_set(a_set)
        if a and a[-1] >= self.n_vertices:
            raise InputError(f"vertex {a[-1]} out of range")
        am = mask_of(a)
        kept = [e for e, m in zip(self.edges, self.edge_masks) if m & ~am == 0]
        return Hypergraph(self.k, self.n_vertices, kept)

    def remove_vertices(self, a_set) -> "Hypergraph":
        """Drop every edge that meets ``a_set``; the vertex set is unchanged."""
        a = as_vertex_set(a_set)
        if a and a[-1] >= self.n_vertices:
            raise InputError(f"vertex {a[-1]} out of range")
        am = mask_of(a)
        kept = [e for e, m in zip(self.edges, self.edge_masks) if m & am == 0]
        return Hypergraph(self.k, self.n_vertices, kept)


def complete_hypergraph(k: int, n: int) -> Hypergraph:
    return Hypergraph(k, n, itertools.combinations(range(n), k))


@dataclass(frozen=True)
class PartiteStructure:
    """(1, k-1)-partite split: vertices 0..q_size-1 form Q, the rest form P."""

    q_size: int

    def in_q(self, v: int) -> bool:
        return v < self.q_size

    def q_vertices(self) -> range:
        return range(self.q_size)

    def p_vertices(self, n_vertices: int) -> range:
        return range(self.q_size, n_vertices)

    def p_size(self, n_vertices: int) -> int:
        return n_vertices - self.q_size

    def split(self, vertices) -> tuple[VertexSet, VertexSet]:
        vs = as_vertex_set(vertices)
        return (
            tuple(v for v in vs if v < self.q_size),
            tuple(v for v in vs if v >= self.q_size),
        )


def is_partite(h: Hypergraph, ps: PartiteStructure) -> bool:
    """Every edge meets Q exactly once (and so P exactly k-1 times)."""
    return all(sum(1 for v in e if v < ps.q_size) == 1 for e in h.edges)


def is_balanced_partite(h: Hypergraph, ps: PartiteStructure) -> bool:
    """Partite with the class sizes in the exact (k-1):1 ratio."""
    balanced = (h.k - 1) * ps.q_size == h.n_vertices - ps.q_size
    return balanced and is_partite(h, ps)


@dataclass(frozen=True)
class Family:
    """Ordered list of k-graphs sharing one vertex set, the input of rainbow problems."""

    n_vertices: int
    members: tuple[Hypergraph, ...]

    def __post_init__(self):
        if not self.members:
            raise InputError("family needs at least one member")
        k = self.members[0].k
        for i, f in enumerate(self.members):
            if f.n_vertices != self.n_vertices:
                raise InputError(f"member {i} has {f.n_vertices} vertices, expected {self.n_vertices}")
            if f.k != k:
                raise InputError(f"member {i} has uniformity {f.k}, expected {k}")

    @property
    def k(self) -> int:
        return self.members[0].k

    @property
    def t(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Matching:
    """A set of edges, optionally colored by family-member indices.

    Construction checks only shape (color count and distinctness); vertex
    disjointness and membership are validated by :func:`is_valid_matching`
    so that invalid candidates can be represented and tested.
    """

    edges: tuple[tuple[int, ...], ...]
    colors: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        if self.colors is not None:
            object.__setattr__(self, "colors", tuple(self.colors))
            if len(self.colors) != len(self.edges):
                raise InputError("colors and edges must have the same length")
            if len(set(self.colors)) != len(self.colors):
                raise InputError("colors must be distinct")

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> VertexSet:
        return as_vertex_set(v for e in self.edges for v in e)

    def vertex_mask(self) -> int:
        return mask_of(self.vertices())


def is_valid_matching(h: Hypergraph, m: Matching) -> bool:
    """Edges belong to H and are pairwise disjoint (checked edge by edge)."""
    seen = 0
    for e in m.edges:
        if not h.has_edge(e):
            return False
        em = mask_of(e)
        if em & seen:
            return False
        seen |= em
    return True


def is_perfect_matching(h: Hypergraph, m: Matching) -> bool:
    return is_valid_matching(h, m) and len(m.edges) * h.k == h.n_vertices


def is_valid_rainbow(family: Family, m: Matching) -> bool:
    """One edge from each member, pairwise disjoint, colors covering every member."""
    if m.colors is None or len(m.edges) != family.t:
        return False
    if sorted(m.colors) != list(range(family.t)):
        return False
    seen = 0
    for e, c in zip(m.edges, m.colors):
        if not family.members[c].has_edge(e):
            return False
        em = mask_of(e)
        if em & seen:
            return False
        seen |= em
    return True


def degree_sum_identity(h: Hypergraph) -> bool:
    """Sum of vertex degrees equals k times the edge count."""
    return sum(len(a) for a in h.adjacency) == h.k * len(h.edges)


def binom(n: int, k: int) -> int:
    """Binomial coefficient, 0 outside the valid range."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)
