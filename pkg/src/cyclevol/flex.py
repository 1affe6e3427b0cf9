"""Numerical rigidity and flex continuation.

Rigidity matrices (the Jacobian of the squared-edge-length map), numerical
infinitesimal-flex spaces with the trivial motions projected out, a
predictor-corrector tracer for edge-length-preserving deformations, the
Bellows drift check, and a zoo of built-in example polyhedra including a
line-symmetric flexible octahedron and a folded flexible 4-dimensional
cross-polytope family.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .chains import Chain, SupportComplex, boundary, support
from .geometry import Embedding, generalized_volume, squared_length

DEFAULT_KERNEL_TOL = 1e-8


class FlexError(Exception):
    pass


class RigidConfigurationError(FlexError):
    pass


class ConstructorError(FlexError):
    pass


def _vertex_order(K: SupportComplex):
    return sorted(K.vertices)


def _coords_vector(P: Embedding, verts):
    return np.array([[float(x) for x in P.point(v)] for v in verts]).ravel()


def rigidity_matrix(K: SupportComplex, P: Embedding, n: int) -> np.ndarray:
    """Jacobian of the squared-edge-length map at P.

    Rows follow sorted(K.edges); columns are the n coordinates of each vertex
    in sorted order.  The row of edge {u,v} holds 2(P(u)-P(v)) in u's block
    and the negation in v's block.
    """
    verts = _vertex_order(K)
    index = {v: i for i, v in enumerate(verts)}
    edges = sorted(K.edges)
    R = np.zeros((len(edges), n * len(verts)))
    for r, (u, v) in enumerate(edges):
        pu = np.array([float(x) for x in P.point(u)])
        pv = np.array([float(x) for x in P.point(v)])
        d = 2.0 * (pu - pv)
        iu, iv = index[u], index[v]
        R[r, n * iu : n * iu + n] = d
        R[r, n * iv : n * iv + n] = -d
    return R


def trivial_motion_basis(K: SupportComplex, P: Embedding, n: int) -> np.ndarray:
    """Orthonormal basis (rows) of the infinitesimal isometries at P."""
    verts = _vertex_order(K)
    nv = len(verts)
    motions = []
    for k in range(n):
        t = np.zeros((nv, n))
        t[:, k] = 1.0
        motions.append(t.ravel())
    pts = np.array([[float(x) for x in P.point(v)] for v in verts])
    for a in range(n):
        for b in range(a + 1, n):
            t = np.zeros((nv, n))
            t[:, a] = -pts[:, b]
            t[:, b] = pts[:, a]
            motions.append(t.ravel())
    M = np.array(motions)
    # orthonormalize; rank can drop when the affine span is degenerate
    u, s, vh = np.linalg.svd(M, full_matrices=False)
    rank = int((s > 1e-12 * max(s[0], 1.0)).sum())
    expected = n * (n + 1) // 2
    if rank < expected:
        warnings.warn(
            f"degenerate affine span: trivial-motion dimension {rank} < {expected}"
        )
    return vh[:rank]


def flex_space(K: SupportComplex, P: Embedding, n: int, tol: float = DEFAULT_KERNEL_TOL) -> np.ndarray:
    """Orthonormal basis (rows) of ker(rigidity matrix) modulo trivial motions."""
    R = rigidity_matrix(K, P, n)
    ncols = R.shape[1]
    u, s, vh = np.linalg.svd(R, full_matrices=True)
    smax = s[0] if len(s) and s[0] > 0 else 1.0
    nullity = ncols - int((s > tol * smax).sum())
    kernel = vh[len(vh) - nullity :] if nullity else np.zeros((0, ncols))
    T = trivial_motion_basis(K, P, n)
    if kernel.shape[0] == 0:
        return kernel
    proj = kernel - (kernel @ T.T) @ T
    u2, s2, vh2 = np.linalg.svd(proj, full_matrices=False)
    keep = int((s2 > 0.5).sum())
    return vh2[:keep]


@dataclass
class FlexTrace:
    """Accepted steps of an edge-length-preserving continuation."""

    parameters: list = field(default_factory=list)
    embeddings: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    volumes: list = field(default_factory=list)
    status: str = "ok"

    def __len__(self):
        return len(self.parameters)


def _select_pin_indices(T: np.ndarray) -> list:
    """Coordinate indices whose pinning removes exactly the trivial motions.

    QR with column pivoting on the trivial-motion basis picks coordinates on
    which the isometries act with full rank, so any genuine flex has a
    gauge-equivalent representative fixing them.
    """
    k = T.shape[0]
    cols = T.copy()
    chosen = []
    avail = list(range(T.shape[1]))
    work = cols[:, avail]
    for _ in range(k):
        norms = np.linalg.norm(work, axis=0)
        j = int(np.argmax(norms))
        if norms[j] < 1e-10:
            break
        chosen.append(avail[j])
        q = work[:, j] / norms[j]
        work = work - np.outer(q, q @ work)
        del avail[j]
        work = np.delete(work, j, axis=1)
    return sorted(chosen)


def trace_flex(
    Z: Chain,
    P0: Embedding,
    steps: int = 50,
    step_size: float = 0.05,
    tol: float = 1e-11,
    kernel_tol: float = DEFAULT_KERNEL_TOL,
    max_halvings: int = 12,
) -> FlexTrace:
    """Predictor-corrector continuation along the edge-length level set.

    Predictor steps along a kernel direction of the pinned Jacobian (chosen by
    overlap with the previous direction); the Gauss-Newton corrector projects
    back onto l(P) = l(P0) with the gauge pinned.  Steps are halved on
    corrector failure and regrown by 1.25 after three consecutive successes.
    """
    n = P0.n
    K = support(Z)
    basis = flex_space(K, P0, n, tol=kernel_tol)
    if basis.shape[0] == 0:
        raise RigidConfigurationError("configuration has no nontrivial flex")

    verts = _vertex_order(K)
    nv = len(verts)
    edges = sorted(K.edges)
    index = {v: i for i, v in enumerate(verts)}
    x0 = _coords_vector(P0, verts)
    l0 = np.array([float(squared_length(P0, u, v)) for (u, v) in edges])

    T = trivial_motion_basis(K, P0, n)
    pins = _select_pin_indices(T)

    def embedding_of(x):
        pts = x.reshape(nv, n)
        return Embedding.floats(n, {v: tuple(pts[index[v]]) for v in verts})

    def lengths_residual(x):
        pts = x.reshape(nv, n)
        out = np.empty(len(edges))
        for r, (u, v) in enumerate(edges):
            d = pts[index[u]] - pts[index[v]]
            out[r] = d @ d - l0[r]
        return out

    def jac(x):
        pts = x.reshape(nv, n)
        J = np.zeros((len(edges) + len(pins), n * nv))
        for r, (u, v) in enumerate(edges):
            d = 2.0 * (pts[index[u]] - pts[index[v]])
            iu, iv = index[u], index[v]
            J[r, n * iu : n * iu + n] = d
            J[r, n * iv : n * iv + n] = -d
        for k, idx in enumerate(pins):
            J[len(edges) + k, idx] = 1.0
        return J

    def full_residual(x):
        return np.concatenate([lengths_residual(x), x[pins] - x0[pins]])

    def kernel_direction(x, prev):
        J = jac(x)
        u, s, vh = np.linalg.svd(J)
        smax = s[0] if len(s) and s[0] > 0 else 1.0
        nullity = J.shape[1] - int((s > kernel_tol * smax).sum())
        if nullity == 0:
            return None
        kern = vh[len(vh) - nullity :]
        if prev is None:
            d = kern[0]
            # deterministic sign: first significant component positive
            nz = np.nonzero(np.abs(d) > 1e-9)[0]
            if len(nz) and d[nz[0]] < 0:
                d = -d
            return d
        overlaps = kern @ prev
        d = overlaps @ kern
        nrm = np.linalg.norm(d)
        if nrm < 1e-9:
            d = kern[0]
            nrm = np.linalg.norm(d)
        d = d / nrm
        if d @ prev < 0:
            d = -d
        return d

    def correct(x):
        for _ in range(25):
            F = full_residual(x)
            if np.max(np.abs(F)) < tol:
                return x, True
            J = jac(x)
            delta, *_ = np.linalg.lstsq(J, -F, rcond=None)
            x = x + delta
        return x, bool(np.max(np.abs(full_residual(x))) < tol)

    trace = FlexTrace()
    x = x0.copy()
    x, ok = correct(x)
    if not ok:
        raise FlexError("starting configuration does not satisfy its own lengths")

    def record(t, x):
        E = embedding_of(x)
        resid = float(np.max(np.abs(lengths_residual(x))))
        vol = float(generalized_volume(Z, E))
        trace.parameters.append(t)
        trace.embeddings.append(E)
        trace.residuals.append(resid)
        trace.volumes.append(vol)

    record(0.0, x)
    direction = kernel_direction(x, None)
    if direction is None:
        raise RigidConfigurationError("pinned Jacobian has no kernel at start")

    h = step_size
    t = 0.0
    successes = 0
    while len(trace) - 1 < steps:
        attempt = 0
        while True:
            x_new, ok = correct(x + h * direction)
            moved = np.linalg.norm(x_new - x)
            if ok and moved > 1e-3 * h:
                break
            attempt += 1
            if attempt > max_halvings:
                trace.status = "truncated:corrector-divergence"
                return trace
            h *= 0.5
        t += h
        x = x_new
        record(t, x)
        successes += 1
        if successes >= 3:
            h = min(h * 1.25, step_size)
            successes = 0
        new_dir = kernel_direction(x, direction)
        if new_dir is None:
            trace.status = "truncated:kernel-vanished"
            return trace
        direction = new_dir
    return trace


def bellows_check(Z: Chain, trace: FlexTrace):
    """(max volume drift, drift relative to max(1, |V_0|)) along the trace."""
    if len(trace) == 0:
        raise FlexError("empty trace")
    v0 = trace.volumes[0]
    drift = max(abs(v - v0) for v in trace.volumes)
    return drift, drift / max(1.0, abs(v0))


# -- example zoo ---------------------------------------------------------------


@dataclass
class ZooEntry:
    name: str
    n: int
    cycle: Chain
    embedding: Embedding
    notes: str = ""


ZOO_NAMES = (
    "simplex-boundary(3)",
    "simplex-boundary(4)",
    "double-4-simplex",
    "octahedron",
    "bricard-octahedron",
    "cross-polytope-16cell",
    "flexible-cross-polytope-4d",
)


def simplex_boundary_cycle(n: int) -> Chain:
    return boundary(Chain.from_terms(n, [(tuple(range(n + 1)), 1)]))


def octahedron_cycle() -> Chain:
    terms = []
    for i in range(4):
        a, b = i, (i + 1) % 4
        terms.append(((a, b, 4), 1))
        terms.append(((b, a, 5), 1))
    return Chain.from_terms(2, terms)


def cross_polytope_cycle() -> Chain:
    """16-cell fundamental cycle; vertex 2i is +e_i, vertex 2i+1 is -e_i."""
    terms = []
    for s1 in (0, 1):
        for s2 in (0, 1):
            for s3 in (0, 1):
                for s4 in (0, 1):
                    verts = (0 + s1, 2 + s2, 4 + s3, 6 + s4)
                    terms.append((verts, (-1) ** (s1 + s2 + s3 + s4)))
    return Chain.from_terms(3, terms)


def _bricard_octahedron(seed: int) -> Embedding:
    """Line-symmetric (type 1) octahedron: the half-turn about the z-axis
    swaps the three antipodal vertex pairs, which are exactly the non-edges,
    so every generic such configuration flexes."""
    rng = np.random.default_rng(seed)
    for _ in range(24):
        p0 = rng.uniform(-1.5, 1.5, 3) + np.array([1.5, 0.3, 0.1])
        p1 = rng.uniform(-1.5, 1.5, 3) + np.array([-0.4, 1.4, -0.2])
        p4 = rng.uniform(-1.5, 1.5, 3) + np.array([0.2, -0.3, 1.6])
        half_turn = np.diag([-1.0, -1.0, 1.0])
        coords = {
            0: tuple(p0),
            2: tuple(half_turn @ p0),
            1: tuple(p1),
            3: tuple(half_turn @ p1),
            4: tuple(p4),
            5: tuple(half_turn @ p4),
        }
        P = Embedding.floats(3, coords)
        Z = octahedron_cycle()
        K = support(Z)
        if flex_space(K, P, 3).shape[0] >= 1:
            return P
    raise ConstructorError("no flexible line-symmetric octahedron found")


def _flexible_cross_polytope(seed: int, fold1: float = 0.7, fold2: float = 1.1) -> Embedding:
    """Folded planar-equator flexible 16-cell.

    Three antipodal pairs sit in the x1x2-plane; the fourth pair sits off the
    plane at independent fold angles.  Rotating an off-plane vertex about the
    equator plane changes no edge length (its antipode is the only non-edge it
    avoids), so the family is a genuine two-parameter flex; degenerate and
    self-intersecting configurations are legitimate polyhedra here.
    """
    rng = np.random.default_rng(seed)
    for _ in range(24):
        planar = rng.uniform(-2.0, 2.0, (6, 2))
        # keep the six planar points well separated
        if min(
            np.linalg.norm(planar[i] - planar[j])
            for i in range(6)
            for j in range(i + 1, 6)
        ) < 0.3:
            continue
        rho1 = 1.0 + rng.uniform(0, 1)
        rho2 = 1.2 + rng.uniform(0, 1)
        a = rng.uniform(-1, 1, 2)
        b = rng.uniform(-1, 1, 2)
        coords = {
            0: (a[0], a[1], rho1 * np.cos(fold1), rho1 * np.sin(fold1)),
            1: (b[0], b[1], rho2 * np.cos(fold2), rho2 * np.sin(fold2)),
        }
        for k in range(6):
            coords[k + 2] = (planar[k][0], planar[k][1], 0.0, 0.0)
        P = Embedding.floats(4, coords)
        Z = cross_polytope_cycle()
        K = support(Z)
        if flex_space(K, P, 4).shape[0] >= 1:
            return P
    raise ConstructorError("no flexible folded cross-polytope found")


def example_zoo(name: str, seed: int = 0) -> ZooEntry:
    """Built-in example cycles with embeddings (rational where natural)."""
    if name == "simplex-boundary(4)" or name == "simplex-boundary":
        Z = simplex_boundary_cycle(4)
        coords = {0: (0, 0, 0, 0)}
        for i in range(1, 5):
            coords[i] = tuple(1 if k == i - 1 else 0 for k in range(4))
        return ZooEntry(name, 4, Z, Embedding.exact(4, coords), "V = 1/24")
    if name == "simplex-boundary(3)":
        Z = simplex_boundary_cycle(3)
        coords = {0: (0, 0, 0)}
        for i in range(1, 4):
            coords[i] = tuple(1 if k == i - 1 else 0 for k in range(3))
        return ZooEntry(name, 3, Z, Embedding.exact(3, coords), "V = 1/6")
    if name == "double-4-simplex":
        Z = boundary(Chain.from_terms(4, [((0, 1, 2, 3, 4), 1)])) - boundary(
            Chain.from_terms(4, [((5, 1, 2, 3, 4), 1)])
        )
        coords = {0: (0, 0, 0, 0), 5: (1, 1, 1, 2)}
        for i in range(1, 5):
            coords[i] = tuple(1 if k == i - 1 else 0 for k in range(4))
        return ZooEntry(name, 4, Z, Embedding.exact(4, coords), "bipyramid over a tetrahedron")
    if name == "octahedron":
        coords = {
            0: (2, 0, 0),
            1: (0, 3, 0),
            2: (-1, 0, 0),
            3: (0, -2, 0),
            4: (0, 0, 2),
            5: (1, 1, -3),
        }
        return ZooEntry(name, 3, octahedron_cycle(), Embedding.exact(3, coords), "convex, rational")
    if name == "bricard-octahedron":
        P = _bricard_octahedron(seed)
        return ZooEntry(name, 3, octahedron_cycle(), P, "line-symmetric flexible octahedron")
    if name == "cross-polytope-16cell":
        coords = {}
        for i in range(4):
            coords[2 * i] = tuple(1 if k == i else 0 for k in range(4))
            coords[2 * i + 1] = tuple(-1 if k == i else 0 for k in range(4))
        return ZooEntry(name, 4, cross_polytope_cycle(), Embedding.exact(4, coords), "V = 2/3")
    if name == "flexible-cross-polytope-4d":
        P = _flexible_cross_polytope(seed)
        return ZooEntry(
            name,
            4,
            cross_polytope_cycle(),
            P,
            "folded planar-equator flexible cross-polytope",
        )
    raise KeyError(f"unknown zoo example {name!r}")
