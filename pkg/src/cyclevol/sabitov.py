"""Constructive volume-relation pipeline for 3- and 4-dimensional cycles.

Produces, for a cycle Z, a polynomial relation satisfied by the generalized
volume, with coefficients polynomial in the squared edge lengths of the
support.  Two modes:

* symbolic — every edge length stays a variable; feasible for tiny supports
  only, since the elimination degrees double at every step;
* specialized — exact rational squared lengths are substituted up front
  (derived from an embedding when one is available), and only the diagonals
  being eliminated at the current stage stay symbolic.

The recursion follows the support measure (vertex count, minimal degree,
link weight at the pivot) strictly downward; a guard enforces the decrease.
Degeneracies in specialized mode (identically-zero resultants, vanished
leading coefficients) trigger deterministic retries over the choice of
simple cycle, then neighbor, then minimal-degree vertex, and surface as a
DegeneracyError carrying the retry trace once exhausted.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import (
    Chain,
    NotACycleError,
    boundary,
    is_cycle,
    iter_directed_simple_cycles,
    link_weight,
    simplex_link,
    support,
    vertex_degrees,
)
from .geometry import Embedding, all_pair_lengths, pair
from .polyalg import MultiPoly, PolyError, VarRegistry, VarSymbol, _det_minor, resultant

SYMBOLIC = "symbolic"
SPECIALIZED = "specialized"


class SabitovError(Exception):
    pass


class UnsupportedDimensionError(SabitovError):
    pass


class DegeneracyError(SabitovError):
    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


class BudgetExceededError(SabitovError):
    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class Multiplier:
    """Leading-coefficient descriptor: the constant 1, a power of one squared
    edge length, or (deep symbolic runs only, where the constructive route has
    no analogue of the cleanup lemma) a general polynomial."""

    kind: str  # "trivial" | "edge" | "general"
    edge: tuple | None = None
    power: int | None = None


@dataclass
class SabitovRelation:
    """Relation a_0 V^N + a_1 V^(N-1) + ... + a_N = 0 for the cycle volume."""

    variable: VarSymbol
    coefficients: list
    multiplier: Multiplier
    n: int
    mode: str
    provenance: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def polynomial(self) -> MultiPoly:
        reg = self.coefficients[0].reg
        v = reg.monomial_of(self.variable)
        out = reg.zero()
        for a in self.coefficients:
            out = out * v + a
        return out


@dataclass
class _Rel:
    """Relation in the running V symbol; s tracks the exponent of the
    same-pivot edge multiplier (None once untrackable)."""

    poly: MultiPoly
    s: int | None


class _Degenerate(Exception):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class Pipeline:
    """One relation computation: registry, length environment, memo, trace."""

    def __init__(
        self,
        n: int,
        mode: str = SPECIALIZED,
        lengths: dict | None = None,
        top_edges=(),
        verbose=None,
        budget: float | None = None,
        max_cycle_retries: int = 12,
        content_normalize: bool = True,
    ):
        if n not in (3, 4):
            raise UnsupportedDimensionError(
                f"the elimination is implemented for n in {{3, 4}}, got n={n}"
            )
        if mode not in (SYMBOLIC, SPECIALIZED):
            raise SabitovError(f"unknown mode {mode!r}")
        self.n = n
        self.mode = mode
        self.reg = VarRegistry()
        self.V = self.reg.symbol("V")
        self.W = self.reg.symbol("W")
        self.assignment = {}
        if lengths:
            self.assignment = {pair(*k): Fraction(v) for k, v in lengths.items()}
        self.top_edges = {pair(*e) for e in top_edges}
        self.verbose = verbose
        self.deadline = time.monotonic() + budget if budget else None
        self.max_cycle_retries = max_cycle_retries
        self.content_normalize = content_normalize
        self.memo: dict = {}
        self.trace: list = []
        self.stats = {"eliminations": 0, "memo_hits": 0, "recursive_calls": 0}
        self._top_choice = None

    # -- environment ---------------------------------------------------------

    def _say(self, msg):
        if self.verbose:
            self.verbose(msg)

    def _check_budget(self, where):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceededError(
                f"computation budget exhausted at {where}", list(self.trace)
            )

    def length_poly(self, a, b, symbolic=frozenset()) -> MultiPoly:
        """Squared length of {a,b}: a rational when specialized, covered and
        not currently held symbolic; otherwise the pair's registered symbol."""
        p = pair(a, b)
        if self.mode == SPECIALIZED and p not in symbolic:
            v = self.assignment.get(p)
            if v is not None:
                return self.reg.const(v)
        kind = "l" if p in self.top_edges else "d"
        return self.reg.var(kind, p)

    def length_symbol(self, a, b) -> VarSymbol:
        p = pair(a, b)
        kind = "l" if p in self.top_edges else "d"
        return self.reg.symbol(kind, p)

    def _res(self, f: MultiPoly, g: MultiPoly, sym: VarSymbol, stage: str) -> MultiPoly:
        self.stats["eliminations"] += 1
        self._check_budget(stage)
        if self.verbose:
            self._say(
                f"{stage}: res over {sym} (degs {f.degree(sym)}/{g.degree(sym)}, "
                f"terms {len(f.terms)}/{len(g.terms)})"
            )
        try:
            out = resultant(f, g, sym)
        except PolyError as exc:
            raise _Degenerate(f"{stage}: {exc}") from exc
        if out.is_zero():
            raise _Degenerate(f"{stage}: identically zero resultant")
        if self.mode == SPECIALIZED and self.content_normalize:
            out = out.normalize_content()
        return out

    # -- Cayley-Menger building blocks ----------------------------------------

    def cm_poly(self, points, symbolic=frozenset()) -> MultiPoly:
        """Bordered Cayley-Menger determinant of labeled points, as a poly."""
        k = len(points)
        one = self.reg.one()
        zero = self.reg.zero()
        rows = [[zero] + [one] * k]
        for i, p in enumerate(points):
            row = [one]
            for j, q in enumerate(points):
                row.append(zero if i == j else self.length_poly(p, q, symbolic))
            rows.append(row)
        return _det_minor(rows, self.reg)

    def simplex_volume_sq_poly(self, verts, symbolic=frozenset()) -> MultiPoly:
        """The W^2-value of the simplex on verts: (-1)^(n+1)/(2^n n!^2) CM."""
        n = self.n
        cm = self.cm_poly(verts, symbolic)
        return cm * Fraction((-1) ** (n + 1), 2 ** n * math.factorial(n) ** 2)

    def cm_eta_relation(self, eta_verts, symbolic=frozenset()) -> MultiPoly:
        """Relation for the simplex volume W of eta:

        n=4: W^2 + CM/9216;  n=3: W^2 - CM/288.
        """
        W = self.reg.monomial_of(self.W)
        return W * W - self.simplex_volume_sq_poly(eta_verts, symbolic)

    def cm7_relation(self, points, symbolic=frozenset()) -> MultiPoly:
        """Bordered CM determinant of n+2 labeled points (7x7 for n=4), with
        the caller's diagonal pairs symbolic.  Vanishes on configurations."""
        if len(points) != self.n + 2:
            raise SabitovError(
                f"cascade CM relation needs {self.n + 2} points for n={self.n}"
            )
        return self.cm_poly(points, symbolic)

    # -- elimination steps -----------------------------------------------------

    def eliminate_simplex_volume(self, rel: _Rel, eta_verts, symbolic=frozenset()) -> _Rel:
        """Rewrite V_sub = V - W and eliminate W against eta's CM relation.

        Equals the Sylvester resultant with the monic quadratic W^2 - D,
        computed through the even/odd split A(V,D)^2 - D * B(V,D)^2.
        """
        self.stats["eliminations"] += 1
        self._check_budget("simplex-volume elimination")
        Vp = self.reg.monomial_of(self.V)
        Wp = self.reg.monomial_of(self.W)
        D = self.simplex_volume_sq_poly(eta_verts, symbolic)
        shifted = rel.poly.substitute({self.V: Vp - Wp})
        wc = shifted.coeffs_in(self.W)
        A = self.reg.zero()
        B = self.reg.zero()
        Dpow = self.reg.one()
        for i in range(0, len(wc), 2):
            A = A + wc[i] * Dpow
            if i + 1 < len(wc):
                B = B + wc[i + 1] * Dpow
            Dpow = Dpow * D
        out = A * A - D * B * B
        if out.is_zero():
            raise _Degenerate("simplex-volume elimination: zero resultant")
        if out.degree(self.V) != 2 * rel.poly.degree(self.V):
            raise _Degenerate("simplex-volume elimination dropped the lead")
        if self.mode == SPECIALIZED and self.content_normalize:
            out = out.normalize_content()
        return _Rel(out, None if rel.s is None else 2 * rel.s)

    def branch_relation(self, rel_sub: _Rel, eta_verts, d_pair) -> _Rel:
        """Relation (12_j): the sub-cycle relation rewritten in V with the
        simplex volume of eta_j eliminated; d_j stays symbolic throughout."""
        return self.eliminate_simplex_volume(
            rel_sub, eta_verts, symbolic=frozenset({d_pair})
        )

    # -- r = 3, 4 ---------------------------------------------------------------

    def eliminate_small_r(self, rels12: dict, u, v, w) -> _Rel:
        """Final elimination for short simple cycles (r in {3, 4}).

        r=3: (12_1) is already the relation (d_1 = l_{w1 w3} is an edge).
        r=4: eliminate d_2 between the (n+2)-point CM relation and (12_2),
        then d_1 against (12_1).
        """
        r = len(w)
        if r == 3:
            rel = rels12[1]
            d1 = pair(w[0], w[2])
            polyrel = rel.poly
            if self.mode == SPECIALIZED and d1 in self.assignment:
                polyrel = polyrel.substitute(
                    {self.length_symbol(*d1): self.assignment[d1]}
                )
                if polyrel.is_zero():
                    raise _Degenerate("r=3 substitution annihilated the relation")
                if self.content_normalize:
                    polyrel = polyrel.normalize_content()
            return _Rel(polyrel, rel.s)
        if r != 4:
            raise SabitovError("eliminate_small_r handles r in {3, 4} only")
        d1 = pair(w[0], w[2])
        d2 = pair(w[1], w[3])
        pts = (u, v, *w) if v is not None else (u, *w)
        cm13 = self.cm7_relation(pts, symbolic=frozenset({d1, d2}))
        d1s = self.length_symbol(*d1)
        d2s = self.length_symbol(*d2)
        k1 = rels12[1].poly.degree(d1s)
        k2 = rels12[2].poly.degree(d2s)
        self._say(f"r=4 combine: k1={k1} k2={k2}")
        X = self._res(cm13, rels12[2].poly, d2s, "r=4 first elimination")
        out = self._res(X, rels12[1].poly, d1s, "r=4 second elimination")
        if out.degree(self.V) < 1:
            raise _Degenerate("r=4 elimination lost the volume variable")
        s = None
        if (
            rels12[1].s is not None
            and rels12[2].s is not None
            and isinstance(k1, int)
            and isinstance(k2, int)
        ):
            # with rels12[j].s = 2 s_j this is the s = 4 k2 s1 + 4 k1 s2 + k1 k2 law
            s = 2 * k2 * rels12[1].s + 2 * k1 * rels12[2].s + k1 * k2
        return _Rel(out, s)

    # -- r >= 5 cascades ----------------------------------------------------------

    def _cm14(self, u, v, w, j, sym) -> MultiPoly:
        pts = (w[0], w[j - 1], w[j], w[j + 1])
        pts = (u, v, *pts) if v is not None else (u, *pts)
        return self.cm7_relation(pts, symbolic=sym)

    def f_cascade(self, u, v, w) -> MultiPoly:
        """Forward cascade: eliminate D_4..D_{r-2} from the CM relations
        (14_3)..(14_{r-2}) on points (u[,v], w_1, w_j, w_{j+1}, w_{j+2})."""
        r = len(w)
        if r < 5:
            raise SabitovError("the cascade needs r >= 5")
        sym = self.cascade_symbolic_pairs(w)
        F = self._cm14(u, v, w, 3, sym)
        for j in range(4, r - 1):
            Dj = self.length_symbol(w[0], w[j - 1])
            self._say(f"F cascade: eliminating {Dj}")
            F = self._res(F, self._cm14(u, v, w, j, sym), Dj, f"F cascade D_{j}")
        return F

    def g_cascade(self, F: MultiPoly, rels12: dict, u, v, w) -> MultiPoly:
        """Normalize F into G_2 and eliminate d_3..d_{r-2} against (12_j)."""
        r = len(w)
        S2 = 2 ** (r - 5) * (r - 4)
        lead_const = 2 if self.n == 4 else -1
        G = F * Fraction(1, lead_const ** S2)
        for j in range(3, r - 1):
            dj = self.length_symbol(w[j - 1], w[j + 1])
            self._say(f"G cascade: eliminating {dj}")
            rel = rels12[j]
            poly = rel.poly if isinstance(rel, _Rel) else rel
            G = self._res(G, poly, dj, f"G cascade d_{j}")
        return G

    def finalize_large_r(self, G_fwd: MultiPoly, G_bwd: MultiPoly, rel12_1: _Rel, w) -> _Rel:
        """Resultant over D_{r-1} of the two cascade outputs, then over
        D_3 = d_1 against (12_1)."""
        r = len(w)
        Dr1 = self.length_symbol(w[0], w[r - 2])
        out = self._res(G_fwd, G_bwd, Dr1, "large-r D_{r-1} elimination")
        D3 = self.length_symbol(w[0], w[2])
        out = self._res(out, rel12_1.poly, D3, "large-r D_3 elimination")
        if out.degree(self.V) < 1:
            raise _Degenerate("large-r elimination lost the volume variable")
        return _Rel(out, None)

    def cascade_symbolic_pairs(self, w) -> frozenset:
        """All diagonal pairs d_j = (w_j, w_{j+2}) and D_j = (w_1, w_j)."""
        r = len(w)
        pairs = set()
        for j in range(1, r - 1):
            pairs.add(pair(w[j - 1], w[j + 1]))
        for j in range(3, r):
            pairs.add(pair(w[0], w[j - 1]))
        return frozenset(pairs)

    # -- the recursion ------------------------------------------------------------

    def relation(self, Z: Chain) -> SabitovRelation:
        """Drive the full pipeline for the cycle Z."""
        if Z.dimension != self.n - 1:
            raise SabitovError(
                f"n={self.n} needs a {self.n - 1}-dimensional cycle, got {Z.dimension}"
            )
        if not is_cycle(Z):
            raise NotACycleError("input chain is not a cycle")
        if not Z.is_zero():
            K = support(Z)
            self.top_edges |= {pair(*e) for e in K.edges}
            if self.mode == SPECIALIZED:
                missing = [e for e in sorted(K.edges) if pair(*e) not in self.assignment]
                if missing:
                    raise SabitovError(
                        f"specialized mode lacks lengths for edges {missing[:4]}"
                    )
        t0 = time.monotonic()
        from . import polyalg as _pa

        _pa.set_work_monitor(lambda: self._check_budget("polynomial arithmetic"))
        try:
            rel = self._relation(Z, parent_measure=None)
        except _Degenerate as exc:
            raise DegeneracyError(str(exc), list(self.trace)) from exc
        finally:
            _pa.set_work_monitor(None)
        return self._package(rel, time.monotonic() - t0)

    def _measure(self, Z: Chain):
        K = support(Z)
        if K.is_empty():
            return (0, 0)
        degs = vertex_degrees(K)
        return (len(K.vertices), min(degs.values()))

    def _relation(self, Z: Chain, parent_measure) -> _Rel:
        """Relation for Z with a freshly chosen pivot and full retry ladder."""
        self.stats["recursive_calls"] += 1
        self._check_budget("recursion")
        if Z.is_zero():
            return _Rel(self.reg.monomial_of(self.V), 0)
        key = (Z.canonical_key(), self._env_key(Z))
        hit = self.memo.get(key)
        if hit is not None:
            self.stats["memo_hits"] += 1
            return hit

        K = support(Z)
        degs = vertex_degrees(K)
        m = len(K.vertices)
        p = min(degs.values())
        min_vertices = sorted(v for v, d in degs.items() if d == p)
        for u in min_vertices:
            pivots = (
                [(u, v) for v in K.neighbors(u)] if self.n == 4 else [(u, None)]
            )
            for (uu, vv) in pivots:
                sigma = (uu,) if vv is None else (uu, vv)
                link = simplex_link(Z, sigma)
                q = link_weight(Z, sigma)
                measure = (m, p, q)
                if parent_measure is not None and not measure < parent_measure:
                    raise SabitovError(
                        "internal error: recursion measure failed to decrease"
                    )
                tried = 0
                for cyc in iter_directed_simple_cycles(link):
                    tried += 1
                    if tried > self.max_cycle_retries:
                        break
                    try:
                        rel = self._relation_pivot(Z, sigma, cyc, q, measure)
                    except _Degenerate as exc:
                        self.trace.append(
                            {
                                "pivot": sigma,
                                "cycle": cyc,
                                "measure": measure,
                                "reason": exc.reason,
                            }
                        )
                        continue
                    if parent_measure is None:
                        self._top_choice = (sigma, cyc)
                    self.memo[key] = rel
                    return rel
        raise _Degenerate("all pivot and cycle choices degenerate")

    def _relation_same_pivot(self, Z: Chain, sigma, parent_measure) -> _Rel:
        """Relation for Z keeping the parent's pivot; retries over cycles only."""
        K = support(Z)
        degs = vertex_degrees(K)
        measure = (len(K.vertices), min(degs.values()), link_weight(Z, sigma))
        if not measure < parent_measure:
            raise _Degenerate("same-pivot measure did not decrease")
        key = (Z.canonical_key(), self._env_key(Z), sigma)
        hit = self.memo.get(key)
        if hit is not None:
            self.stats["memo_hits"] += 1
            return hit
        link = simplex_link(Z, sigma)
        tried = 0
        last = None
        for cyc in iter_directed_simple_cycles(link):
            tried += 1
            if tried > self.max_cycle_retries:
                break
            try:
                rel = self._relation_pivot(Z, sigma, cyc, measure[2], measure)
                self.memo[key] = rel
                return rel
            except _Degenerate as exc:
                last = exc
                self.trace.append(
                    {
                        "pivot": sigma,
                        "cycle": cyc,
                        "measure": measure,
                        "reason": exc.reason,
                    }
                )
        raise _Degenerate(
            f"same-pivot retries exhausted ({last.reason if last else 'no cycle'})"
        )

    def _relation_pivot(self, Z: Chain, sigma, cyc, q, measure) -> _Rel:
        self._check_budget("pivot")
        m, p, _ = measure
        self._say(f"cycle m={m} p={p} q={q} pivot={sigma} r={len(cyc)}")
        u = sigma[0]
        v = sigma[1] if len(sigma) > 1 else None

        if q == 3:
            if len(cyc) != 3:
                raise _Degenerate("weight-3 link whose simple cycle is not a triangle")
            eta = self._eta(sigma, *cyc)
            Zp = Z - boundary(eta)
            if not self._measure(Zp) < (m, p):
                raise _Degenerate("base case did not reduce the measure")
            rel_sub = self._monicized(self._relation(Zp, parent_measure=measure))
            eta_verts = next(iter(eta.terms.keys()))
            return self.eliminate_simplex_volume(rel_sub, eta_verts)

        r = len(cyc)
        rels12: dict = {}
        for j in range(1, r - 1):
            wj, wj1, wj2 = cyc[j - 1], cyc[j], cyc[(j + 1) % r]
            eta = self._eta(sigma, wj, wj1, wj2)
            Zj = Z - boundary(eta)
            d_pair = pair(wj, wj2)
            subm = self._measure(Zj)
            if subm < (m, p):
                rel_sub = self._monicized(self._relation(Zj, parent_measure=measure))
            elif subm == (m, p):
                qj = link_weight(Zj, sigma)
                if not qj < q:
                    raise _Degenerate(f"branch {j}: link weight failed to drop")
                rel_sub = self._relation_same_pivot(Zj, sigma, measure)
            else:
                raise _Degenerate(f"branch {j}: measure increased")
            eta_verts = next(iter(eta.terms.keys()))
            rels12[j] = self.branch_relation(rel_sub, eta_verts, d_pair)

        if r <= 4:
            return self.eliminate_small_r(rels12, u, v, cyc)

        w_fwd = tuple(cyc)
        w_bwd = (cyc[0],) + tuple(reversed(cyc[1:]))
        rels12_bwd = {j: rels12[r - j] for j in range(3, r - 1)}
        G_fwd = self.g_cascade(self.f_cascade(u, v, w_fwd), rels12, u, v, w_fwd)
        G_bwd = self.g_cascade(
            self.f_cascade(u, v, w_bwd), rels12_bwd, u, v, w_bwd
        )
        return self.finalize_large_r(G_fwd, G_bwd, rels12[1], w_fwd)

    def _eta(self, sigma, w1, w2, w3) -> Chain:
        """Oriented n-simplex whose boundary's sigma-link is the directed
        triangle [w1 w2] + [w2 w3] - [w1 w3]."""
        verts = (*sigma, w1, w2, w3)
        sign = 1 if self.n == 4 else -1
        return Chain.from_terms(self.n, [(verts, sign)])

    def _monicized(self, rel: _Rel) -> _Rel:
        """Fresh-pivot sub-relations: a numeric lead divides out; a symbolic
        non-constant lead leaves the multiplier untrackable (s=None)."""
        lead = rel.poly.leading_coefficient(self.V)
        if lead.is_constant():
            c = lead.constant_value()
            if c == 0:
                raise _Degenerate("sub-relation lead vanished")
            return _Rel(rel.poly * (1 / c) if c != 1 else rel.poly, 0)
        return _Rel(rel.poly, None)

    def _env_key(self, Z: Chain):
        edges = sorted(support(Z).edges)
        return tuple((e, self.assignment.get(pair(*e))) for e in edges)

    # -- packaging ------------------------------------------------------------

    def _package(self, rel: _Rel, elapsed) -> SabitovRelation:
        poly = rel.poly
        if self.mode == SPECIALIZED:
            stray = [s for s in poly.variables() if s is not self.V]
        else:
            stray = [s for s in poly.variables() if s.kind in ("W", "d")]
        if stray:
            raise SabitovError(f"internal error: stray symbols {stray} in relation")
        N = poly.degree(self.V)
        if not isinstance(N, int) or N < 1:
            raise DegeneracyError("relation lost the volume variable", list(self.trace))
        lead = poly.leading_coefficient(self.V)
        mult = Multiplier("general")
        if lead.is_constant():
            poly = poly * (1 / lead.constant_value())
            mult = Multiplier("trivial")
        elif len(lead.terms) == 1:
            (mono, c), = lead.terms.items()
            if len(mono) == 1:
                idx, e = mono[0]
                sym = self.reg.by_index(idx)
                poly = poly * (1 / c)
                mult = Multiplier("edge", sym.key, e)
        if mult.kind == "general":
            poly = poly.normalize_content()

        coeffs = poly.coeffs_in(self.V)[::-1]
        prov = {
            "mode": self.mode,
            "n": self.n,
            "elapsed_seconds": round(elapsed, 3),
            "stats": dict(self.stats),
        }
        if self._top_choice:
            sigma, cyc = self._top_choice
            prov["pivot_u"] = sigma[0]
            if len(sigma) > 1:
                prov["pivot_v"] = sigma[1]
            prov["simple_cycle"] = list(cyc)
        if rel.s is not None:
            prov["multiplier_exponent"] = rel.s
        return SabitovRelation(
            variable=self.V,
            coefficients=coeffs,
            multiplier=mult,
            n=self.n,
            mode=self.mode,
            provenance=prov,
        )


# -- public entry points -----------------------------------------------------


def sabitov_relation(
    Z: Chain,
    n: int,
    mode: str = SPECIALIZED,
    lengths: dict | None = None,
    embedding: Embedding | None = None,
    verbose=None,
    budget: float | None = None,
) -> SabitovRelation:
    """Compute a volume relation for the cycle Z.

    In specialized mode the squared-length assignment is taken from `lengths`
    (edge pairs) or derived from `embedding` — which then also covers the
    diagonals that sub-cycles acquire as edges, keeping the recursion
    desk-scale.
    """
    if n not in (3, 4):
        raise UnsupportedDimensionError(
            f"the elimination is implemented for n in {{3, 4}}, got n={n}"
        )
    assignment = None
    if mode == SPECIALIZED:
        if Z.is_zero():
            assignment = {}
        elif embedding is not None:
            if embedding.field != "exact":
                raise SabitovError("specialized mode needs an exact-rational embedding")
            verts = support(Z).vertices if not Z.is_zero() else ()
            assignment = all_pair_lengths(embedding, verts)
        elif lengths is not None:
            assignment = {pair(*k): Fraction(v) for k, v in lengths.items()}
        else:
            raise SabitovError("specialized mode needs lengths or an embedding")
    pipe = Pipeline(
        n,
        mode,
        lengths=assignment,
        verbose=verbose,
        budget=budget,
    )
    return pipe.relation(Z)


def evaluate_relation(rel: SabitovRelation, v_value, lengths: dict | None = None) -> Fraction:
    """Exact value of sum a_i(l) V^(N-i) at V = v_value and the given lengths."""
    assignment = {}
    if lengths:
        norm = {pair(*k): Fraction(v) for k, v in lengths.items()}
    else:
        norm = {}
    for a in rel.coefficients:
        for sym in a.variables():
            if sym.kind in ("l", "d"):
                key = tuple(sym.key)
                if key not in norm:
                    raise SabitovError(f"no length supplied for symbol {sym}")
                assignment[sym] = norm[key]
    v = Fraction(v_value)
    total = Fraction(0)
    for a in rel.coefficients:
        total = total * v + (a.evaluate(assignment) if a.terms else Fraction(0))
    return total


def verify_root(rel: SabitovRelation, v_value, lengths: dict | None = None) -> bool:
    """Exact root check of the relation at the sample volume and lengths."""
    return evaluate_relation(rel, v_value, lengths) == 0

