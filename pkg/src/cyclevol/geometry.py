"""Embeddings, squared lengths, generalized volumes and Cayley-Menger forms.

Exact mode works over arbitrary-precision rationals, float mode over binary64,
complex mode over pairs of binary64 with the *bilinear* (not Hermitian) scalar
product, so a complex edge can have zero squared length with distinct
endpoints.  The Monte-Carlo winding-number oracle and the complex edge-collapse
perturbation live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .chains import Chain, NotACycleError, is_cycle, support

EXACT = "exact"
FLOAT = "float"
COMPLEX = "complex"


class GeometryError(Exception):
    pass


class MissingVertexError(GeometryError):
    pass


class MissingLengthError(GeometryError):
    pass


def pair(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Embedding:
    """Map from vertex identifiers to coordinate n-vectors over a tagged field."""

    n: int
    field: str
    coords: dict

    @classmethod
    def exact(cls, n, coords) -> "Embedding":
        fixed = {
            v: tuple(Fraction(x) for x in xyz) for v, xyz in coords.items()
        }
        for v, xyz in fixed.items():
            if len(xyz) != n:
                raise GeometryError(f"vertex {v} has {len(xyz)} coordinates, not {n}")
        return cls(n, EXACT, fixed)

    @classmethod
    def floats(cls, n, coords) -> "Embedding":
        fixed = {v: tuple(float(x) for x in xyz) for v, xyz in coords.items()}
        return cls(n, FLOAT, fixed)

    @classmethod
    def complexes(cls, n, coords) -> "Embedding":
        fixed = {v: tuple(complex(x) for x in xyz) for v, xyz in coords.items()}
        return cls(n, COMPLEX, fixed)

    def point(self, v):
        try:
            return self.coords[v]
        except KeyError:
            raise MissingVertexError(f"vertex {v} has no coordinates") from None

    def zero(self):
        if self.field == EXACT:
            return (Fraction(0),) * self.n
        if self.field == COMPLEX:
            return (complex(0),) * self.n
        return (0.0,) * self.n

    def moved(self, v, new_point) -> "Embedding":
        coords = dict(self.coords)
        coords[v] = tuple(new_point)
        return Embedding(self.n, self.field, coords)

    def covers(self, vertices) -> bool:
        return all(v in self.coords for v in vertices)


def squared_length(P: Embedding, u, v):
    """Bilinear squared distance between P(u) and P(v)."""
    a = P.point(u)
    b = P.point(v)
    return sum((x - y) * (x - y) for x, y in zip(a, b))


def all_pair_lengths(P: Embedding, vertices) -> dict:
    verts = sorted(vertices)
    out = {}
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            out[pair(u, v)] = squared_length(P, u, v)
    return out


def edge_lengths(Z: Chain, P: Embedding) -> dict:
    K = support(Z)
    return {e: squared_length(P, *e) for e in sorted(K.edges)}


def _det(rows):
    """Exact cofactor determinant for small matrices over any field."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if a == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


def cone_volume_sum(Z: Chain, P: Embedding, O=None):
    """Signed sum of cone volumes from O over the weighted simplices of Z.

    This is the raw defining sum; it depends on O unless Z is a cycle.
    """
    n = P.n
    if Z.dimension != n - 1:
        raise GeometryError(
            f"{Z.dimension}-cycle does not bound volume in dimension {n}"
        )
    if O is None:
        O = P.zero()
    else:
        O = tuple(O)
    fact = math.factorial(n)
    inv = Fraction(1, fact) if P.field == EXACT else 1.0 / fact
    total = None
    for verts, q in Z.terms.items():
        rows = [
            [x - o for x, o in zip(P.point(v), O)]
            for v in verts
        ]
        term = q * _det(rows)
        total = term if total is None else total + term
    if total is None:
        return inv * 0
    return inv * total


def generalized_volume(Z: Chain, P: Embedding, O=None):
    """Generalized volume of the cycle polyhedron (Z, P); base-point free."""
    if P.n not in (3, 4):
        raise GeometryError("generalized volume is provided for n in {3, 4}")
    if not is_cycle(Z):
        raise NotACycleError("generalized volume needs a cycle (else it depends on O)")
    if not P.covers(support(Z).vertices):
        raise MissingVertexError("embedding does not cover the support")
    return cone_volume_sum(Z, P, O)


def cayley_menger(points, lengths):
    """Bordered Cayley-Menger determinant of the given point tuple.

    lengths maps unordered pairs of point labels to squared distances; all
    pairwise entries must be present.
    """
    pts = list(points)
    k = len(pts)
    one = Fraction(1)
    rows = [[Fraction(0)] + [one] * k]
    for i, p in enumerate(pts):
        row = [one]
        for j, q in enumerate(pts):
            if i == j:
                row.append(Fraction(0))
            else:
                key = pair(p, q)
                if key not in lengths:
                    raise MissingLengthError(f"missing squared length for {key}")
                row.append(lengths[key])
        rows.append(row)
    return _det(rows)


def simplex_volume_sq(n: int, lengths, points=None):
    """Squared n-volume of an n-simplex from its squared edge lengths."""
    if points is None:
        points = tuple(range(n + 1))
    if len(points) != n + 1:
        raise GeometryError(f"an n-simplex needs n+1 points, got {len(points)}")
    cm = cayley_menger(points, lengths)
    scale = Fraction((-1) ** (n + 1), 2 ** n * math.factorial(n) ** 2)
    return scale * cm


# -- Monte-Carlo winding-number volume oracle ----------------------------------


class WindingResult(NamedTuple):
    estimate: float
    standard_error: float
    skipped_samples: int


def winding_volume(
    Z: Chain,
    P: Embedding,
    sample_count: int,
    seed: int = 0,
    batch_size: int = 20000,
    degeneracy_tol: float = 1e-12,
    max_retries: int = 100,
) -> WindingResult:
    """Monte-Carlo estimate of the volume integral of the winding number.

    Samples points in the inflated bounding box, casts a ray per sample in a
    fresh random direction, and sums signed crossings through the weighted
    simplices of Z.  Rays passing near a simplex boundary (relative tolerance)
    are re-cast; after max_retries the sample is skipped and recorded.
    """
    n = P.n
    if n not in (3, 4):
        raise GeometryError("winding oracle is provided for n in {3, 4}")
    if Z.dimension != n - 1:
        raise GeometryError("cycle dimension must be n-1")
    if Z.is_zero():
        return WindingResult(0.0, 0.0, 0)

    verts = sorted(support(Z).vertices)
    pts = np.array([[float(x) for x in P.point(v)] for v in verts])
    index = {v: i for i, v in enumerate(verts)}
    simp = np.array(
        [[index[v] for v in vs] for vs in Z.terms.keys()], dtype=int
    )
    coeff = np.array(list(Z.terms.values()), dtype=float)

    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    span = np.where(span == 0.0, 1.0, span)
    lo = lo - 0.05 * span
    hi = hi + 0.05 * span
    box_volume = float(np.prod(hi - lo))

    base = pts[simp[:, 0]]                       # (K, n)
    edges = pts[simp[:, 1:]] - base[:, None, :]  # (K, n-1, n)
    K = len(coeff)
    scale = np.maximum(np.abs(edges).sum(axis=(1, 2)), 1.0)  # per-simplex size

    rng = np.random.default_rng(seed)
    lam_all = []
    skipped = 0

    done = 0
    while done < sample_count:
        b = min(batch_size, sample_count - done)
        x = rng.uniform(lo, hi, size=(b, n))
        lam = np.zeros(b)
        unresolved = np.ones(b, dtype=bool)
        for _ in range(max_retries):
            idx = np.nonzero(unresolved)[0]
            if idx.size == 0:
                break
            d = rng.normal(size=(idx.size, n))
            d /= np.linalg.norm(d, axis=1, keepdims=True)
            lam_try, bad = _crossings(x[idx], d, base, edges, coeff, scale, degeneracy_tol)
            ok = ~bad
            lam[idx[ok]] = lam_try[ok]
            unresolved[idx] = bad
        skipped += int(unresolved.sum())
        lam_all.append(lam[~unresolved])
        done += b

    lam_arr = np.concatenate(lam_all) if lam_all else np.zeros(0)
    used = lam_arr.size
    if used == 0:
        return WindingResult(0.0, float("inf"), skipped)
    mean = float(lam_arr.mean())
    std = float(lam_arr.std(ddof=1)) if used > 1 else 0.0
    return WindingResult(
        box_volume * mean, box_volume * std / math.sqrt(used), skipped
    )


def _crossings(x, d, base, edges, coeff, scale, tol):
    """Signed crossing counts for each sample; flags near-degenerate rays."""
    b, n = x.shape
    K = base.shape[0]
    A = np.empty((b, K, n, n))
    A[:, :, :, : n - 1] = np.swapaxes(edges, 1, 2)[None, :, :, :]
    A[:, :, :, n - 1] = -d[:, None, :]
    rhs = x[:, None, :] - base[None, :, :]

    det = np.linalg.det(A)
    parallel = np.abs(det) < tol * scale[None, :]
    A_safe = np.where(parallel[:, :, None, None], np.eye(n)[None, None], A)
    y = np.linalg.solve(A_safe, rhs[..., None])[..., 0]
    betas = y[:, :, : n - 1]
    t = y[:, :, n - 1]
    bsum = betas.sum(axis=2)

    inside = (betas > tol).all(axis=2) & (bsum < 1.0 - tol) & (t > tol)
    near = (
        (np.abs(betas) <= tol).any(axis=2)
        | (np.abs(bsum - 1.0) <= tol)
        | (np.abs(t) <= tol)
    )
    # a ray parallel to a simplex plane only matters if it could plausibly hit
    near = near | parallel
    inside = inside & ~parallel

    # crossing sign: det(ray direction, edge vectors); the last column of A
    # holds -d in final position, so this is (-1)^n * det(A)
    sign = np.sign(det) if n % 2 == 0 else -np.sign(det)
    lam = (coeff[None, :] * sign * inside).sum(axis=1)
    bad = near.any(axis=1)
    return lam, bad


# -- Lemma-8 style complex perturbation ----------------------------------------


def collapse_edge_perturbation(P: Embedding, u, neighbors):
    """Move P(u) so one incident squared length vanishes, all drifting <= 3*eps.

    Complex embeddings only.  Returns (j, P') with 1-based j; if some
    l_{uv_j}(P) is already zero, P is returned unchanged with that j.
    """
    if P.field != COMPLEX:
        raise GeometryError("edge-collapse perturbation is defined for complex mode")
    neighbors = list(neighbors)
    if not neighbors:
        raise GeometryError("need at least one neighbor")
    ls = [squared_length(P, u, v) for v in neighbors]
    for j, l in enumerate(ls):
        if l == 0:
            return j + 1, P

    pu = np.array(P.point(u), dtype=complex)
    xis = [np.array(P.point(v), dtype=complex) - pu for v in neighbors]
    hs = [float(np.linalg.norm(xi)) for xi in xis]
    j = max(range(len(neighbors)), key=lambda i: (hs[i], -i))
    h2 = hs[j] ** 2
    lam = complex(ls[j])
    s = math.sqrt(max(h2 * h2 - abs(lam) ** 2, 0.0))
    kappa = lam / (h2 + s)
    new_u = pu + kappa * np.conj(xis[j])
    return j + 1, P.moved(u, tuple(complex(z) for z in new_u))
