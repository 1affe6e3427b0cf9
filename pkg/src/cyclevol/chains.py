"""Simplicial chain-complex core.

Oriented simplices with canonical (sorted) vertex order, integer chains, the
boundary operator, supports, links of low-dimensional simplices in a cycle,
directed simple cycles of 1-cycles, elementary moves, and the flag/m-vector
combinatorics that drives the induction in dimension n.

Everything here is immutable after construction and purely combinatorial;
no geometry enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


class ChainError(Exception):
    pass


class InvalidSimplexError(ChainError):
    pass


class DimensionError(ChainError):
    pass


class AbsentEdgeError(ChainError):
    pass


class NotACycleError(ChainError):
    pass


class EmptyComplexError(ChainError):
    pass


@dataclass(frozen=True)
class OrientedSimplex:
    """Canonical form of an oriented simplex: sorted vertices plus a sign
    absorbing the parity of the sorting permutation."""

    vertices: tuple
    sign: int


def canonicalize(vertices) -> OrientedSimplex:
    """Sort the vertex list, returning the permutation parity as the sign."""
    verts = list(vertices)
    if len(set(verts)) != len(verts):
        raise InvalidSimplexError(f"repeated vertex in simplex {verts}")
    # parity by counting inversions (simplices are tiny)
    inversions = 0
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if verts[i] > verts[j]:
                inversions += 1
    return OrientedSimplex(tuple(sorted(verts)), -1 if inversions % 2 else 1)


class Chain:
    """Integer-weighted formal sum of canonically oriented simplices."""

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: dict):
        self.dimension = dimension
        self.terms = terms

    @classmethod
    def zero(cls, dimension: int) -> "Chain":
        return cls(dimension, {})

    @classmethod
    def from_terms(cls, dimension: int, items) -> "Chain":
        """Build from (vertex_list, coefficient) pairs, canonicalizing."""
        acc: dict = {}
        for verts, coeff in items:
            if len(verts) != dimension + 1:
                raise DimensionError(
                    f"simplex {tuple(verts)} is not {dimension}-dimensional"
                )
            simp = canonicalize(verts)
            c = acc.get(simp.vertices, 0) + coeff * simp.sign
            if c:
                acc[simp.vertices] = c
            else:
                acc.pop(simp.vertices, None)
        return cls(dimension, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.dimension == other.dimension
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dimension, frozenset(self.terms.items())))

    def __add__(self, other: "Chain") -> "Chain":
        if self.dimension != other.dimension:
            raise DimensionError("adding chains of different dimensions")
        out = dict(self.terms)
        for s, c in other.terms.items():
            v = out.get(s, 0) + c
            if v:
                out[s] = v
            else:
                out.pop(s, None)
        return Chain(self.dimension, out)

    def __neg__(self) -> "Chain":
        return Chain(self.dimension, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, k: int) -> "Chain":
        if k == 0:
            return Chain.zero(self.dimension)
        return Chain(self.dimension, {s: k * c for s, c in self.terms.items()})

    __rmul__ = __mul__

    def canonical_key(self) -> tuple:
        """Deterministic serialized form (memoization key material)."""
        return tuple(sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return f"Chain(dim={self.dimension}, 0)"
        parts = [f"{c}*{list(s)}" for s, c in sorted(self.terms.items())]
        return f"Chain(dim={self.dimension}, " + " + ".join(parts) + ")"


def boundary(c: Chain) -> Chain:
    """Alternating-sign sum of facets; defined for dimension >= 1 only."""
    if c.dimension < 1:
        raise DimensionError("boundary of a 0-chain is not defined")
    acc: dict = {}
    for verts, q in c.terms.items():
        sign = 1
        for i in range(len(verts)):
            facet = verts[:i] + verts[i + 1 :]
            v = acc.get(facet, 0) + q * sign
            if v:
                acc[facet] = v
            else:
                acc.pop(facet, None)
            sign = -sign
    return Chain(c.dimension - 1, acc)


def is_cycle(c: Chain) -> bool:
    if c.dimension == 0:
        return True
    return boundary(c).is_zero()


class SupportComplex:
    """Pure simplicial complex spanned by the simplices of a chain."""

    __slots__ = ("dimension", "simplices", "vertices", "edges", "adjacency")

    def __init__(self, dimension: int, top_simplices):
        simplices: dict[int, set] = {d: set() for d in range(dimension + 1)}
        for s in top_simplices:
            for k in range(1, len(s) + 1):
                for face in combinations(s, k):
                    simplices[k - 1].add(face)
        self.dimension = dimension
        self.simplices = {d: frozenset(v) for d, v in simplices.items()}
        self.vertices = frozenset(v[0] for v in self.simplices.get(0, ()))
        self.edges = frozenset(self.simplices.get(1, ()))
        adjacency: dict = {v: [] for v in self.vertices}
        for (a, b) in sorted(self.edges):
            adjacency[a].append((a, b))
            adjacency[b].append((a, b))
        self.adjacency = adjacency

    def is_empty(self) -> bool:
        return not self.vertices

    def has_edge(self, u, v) -> bool:
        return tuple(sorted((u, v))) in self.edges

    def neighbors(self, u) -> list:
        out = []
        for (a, b) in self.adjacency.get(u, ()):
            out.append(b if a == u else a)
        return sorted(out)

    def __repr__(self):
        counts = {d: len(s) for d, s in self.simplices.items()}
        return f"SupportComplex(dim={self.dimension}, counts={counts})"


def support(c: Chain) -> SupportComplex:
    return SupportComplex(c.dimension, c.terms.keys())


def simplex_link(Z: Chain, sigma) -> Chain:
    """Link of the oriented simplex sigma in the cycle Z.

    sigma has dim(Z) - 1 vertices (an edge for 3-chains, a vertex for
    2-chains); the result collects the opposite edges of all top simplices
    containing sigma, reoriented so sigma's vertices lead in the given order.
    """
    sigma = tuple(sigma)
    if len(set(sigma)) != len(sigma):
        raise InvalidSimplexError(f"repeated vertex in {sigma}")
    if len(sigma) != Z.dimension - 1:
        raise DimensionError(
            f"link of a {len(sigma) - 1}-simplex needs a {len(sigma) + 1}-chain"
        )
    sset = set(sigma)
    acc: dict = {}
    for verts, q in Z.terms.items():
        if not sset.issubset(verts):
            continue
        rest = tuple(v for v in verts if v not in sset)
        arranged = sigma + rest
        sign = canonicalize(arranged).sign
        v = acc.get(rest, 0) + q * sign
        if v:
            acc[rest] = v
        else:
            acc.pop(rest, None)
    if not acc:
        raise AbsentEdgeError(f"simplex {sigma} is not in the support of the cycle")
    return Chain(1, acc)


def edge_link(Z: Chain, uv) -> Chain:
    """Link Z_[uv] of an oriented edge in a 3-dimensional cycle."""
    if Z.dimension != 3:
        raise DimensionError("edge links are defined for 3-dimensional cycles")
    return simplex_link(Z, uv)


def link_weight(Z: Chain, sigma) -> int:
    """Sum of |coefficients| of the top simplices of Z containing sigma."""
    sigma = tuple(sigma)
    sset = set(sigma)
    total = 0
    for verts, q in Z.terms.items():
        if sset.issubset(verts):
            total += abs(q)
    if total == 0:
        raise AbsentEdgeError(f"simplex {sigma} is not in the support of the cycle")
    return total


def _positive_digraph(C: Chain) -> dict:
    """vertex -> sorted list of successors along positive-coefficient arcs."""
    succ: dict = {}
    for (a, b), c in C.terms.items():
        if c > 0:
            succ.setdefault(a, []).append(b)
        else:
            succ.setdefault(b, []).append(a)
    return {v: sorted(s) for v, s in succ.items()}


def directed_simple_cycle(C: Chain) -> tuple:
    """Deterministic directed simple cycle of a nonzero 1-cycle.

    Walk from the smallest vertex with an outgoing positive arc, always to the
    smallest successor; truncate at the first repeated vertex and return the
    enclosed loop.
    """
    if C.dimension != 1:
        raise DimensionError("directed simple cycles live in 1-chains")
    if C.is_zero():
        raise NotACycleError("zero chain has no directed simple cycle")
    if not is_cycle(C):
        raise NotACycleError("chain is not a cycle")
    succ = _positive_digraph(C)
    start = min(succ)
    walk = [start]
    seen = {start: 0}
    while True:
        nxt = succ[walk[-1]][0]
        if nxt in seen:
            return tuple(walk[seen[nxt] :])
        seen[nxt] = len(walk)
        walk.append(nxt)


def iter_directed_simple_cycles(C: Chain):
    """All directed simple cycles, deterministically ordered.

    The greedy cycle of directed_simple_cycle comes first; the rest are found
    by depth-first search (smallest start, then smallest successors), each
    cycle reported once, rotated to start at its smallest vertex.
    """
    succ = _positive_digraph(C)
    first = directed_simple_cycle(C)

    def rotate(cyc):
        i = cyc.index(min(cyc))
        return cyc[i:] + cyc[:i]

    emitted = {rotate(first)}
    yield first

    verts = sorted(succ)
    for start in verts:
        path = [start]
        onpath = {start}

        def dfs():
            for nxt in succ.get(path[-1], ()):
                if nxt == start and len(path) >= 3:
                    cyc = rotate(tuple(path))
                    if cyc not in emitted:
                        emitted.add(cyc)
                        yield cyc
                elif nxt not in onpath and nxt > start:
                    # only cycles whose minimum vertex is `start`
                    path.append(nxt)
                    onpath.add(nxt)
                    yield from dfs()
                    onpath.discard(path.pop())

        yield from dfs()


def elementary_move(Z: Chain, eta) -> Chain:
    """Z - boundary(eta) for an oriented (dim Z + 1)-simplex eta."""
    if isinstance(eta, OrientedSimplex):
        verts, sign = eta.vertices, eta.sign
    else:
        verts, sign = tuple(eta), 1
    simplex_chain = Chain.from_terms(Z.dimension + 1, [(verts, sign)])
    return Z - boundary(simplex_chain)


def vertex_degrees(K: SupportComplex) -> dict:
    if K.is_empty():
        raise EmptyComplexError("empty complex has no vertex degrees")
    return {v: len(K.adjacency[v]) for v in sorted(K.vertices)}


def min_degree_vertex(K: SupportComplex):
    degrees = vertex_degrees(K)
    best = min(degrees.values())
    return min(v for v, d in degrees.items() if d == best)


def _simplex_up_count(K: SupportComplex, tau: tuple) -> int:
    """Number of (dim tau + 1)-simplices of K containing tau."""
    above = K.simplices.get(len(tau), ())
    tset = set(tau)
    return sum(1 for s in above if tset.issubset(s))


def minimal_flag(K: SupportComplex, n: int):
    """Lexicographically minimal (n-4)-flag and its m-vector.

    For n=3 the flag is empty and the m-vector is (vertex count,); for n=4 the
    flag is a single minimal-degree vertex.  Larger n is supported at the
    combinatorial level (flag enumeration only).
    """
    if n < 3:
        raise DimensionError("flags are defined for n >= 3")
    if K.is_empty():
        return (), (0,) * (n - 2)
    m = len(K.vertices)
    if n == 3:
        return (), (m,)

    best = None
    best_flag = None

    def extend(flag, mvec, dim):
        nonlocal best, best_flag
        if dim > n - 4:
            key = (tuple(mvec), tuple(flag))
            if best is None or key < best:
                best = key
                best_flag = tuple(flag)
            return
        if dim == 0:
            candidates = sorted(K.simplices.get(0, ()))
        else:
            prev = set(flag[-1])
            candidates = sorted(
                s for s in K.simplices.get(dim, ()) if prev.issubset(s)
            )
        for tau in candidates:
            extend(flag + [tau], mvec + [_simplex_up_count(K, tau)], dim + 1)

    extend([], [m], 0)
    if best_flag is None:
        raise EmptyComplexError(f"complex has no ({n - 4})-flag")
    return best_flag, best[0]
