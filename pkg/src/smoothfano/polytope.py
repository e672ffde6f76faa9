"""Lattice polytopes with the origin inside.

Facets are found by brute force over n-subsets of vertices: floating point
only proposes candidate hyperplanes, every reported facet is then re-checked
with exact integer arithmetic (int64 under a magnitude guard, Python ints
otherwise).  Unimodular equivalence is linear: a lattice-affine map between
two reflexive polytopes must fix their unique interior lattice point, the
origin.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import lattice
from .errors import (
    DimensionError,
    DomainError,
    NonVertexError,
    NotSmoothFanoError,
    OriginNotInteriorError,
    SmoothFanoError,
)
from .lattice import IntVector, UnimodularMap

# products of this size are exact in int64 and in float64 mantissas
_SAFE = 2**50


@dataclass(frozen=True)
class Facet:
    """A facet ``{x : <normal, x> == level}`` and the vertices on it.

    For reflexive polytopes ``level`` is 1.  ``normal`` is primitive.
    """

    vertex_indices: frozenset
    normal: IntVector
    level: int

    def sorted_indices(self) -> tuple:
        return tuple(sorted(self.vertex_indices))


CanonicalKey = tuple  # (dim, ((row), (row), ...)) with rows sorted


@lru_cache(maxsize=None)
def _combos(m: int, n: int) -> np.ndarray:
    return np.array(list(itertools.combinations(range(m), n)), dtype=np.intp).reshape(-1, n)


def _exact_normal(points: Sequence[Sequence[int]]) -> IntVector:
    """Primitive normal of the affine hull of n affinely independent points."""
    p0 = points[0]
    rows = [tuple(x - y for x, y in zip(p, p0)) for p in points[1:]]
    n = len(p0)
    normal = []
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows]
        normal.append((-1) ** j * lattice.determinant(minor))
    return lattice.primitive_part(normal)


def _hull(points: np.ndarray):
    """All facets of conv(points) as ``(normal, level, index tuple)``.

    Raises DimensionError when the points do not span R^n.  Levels are with
    respect to the original origin and may be of any sign.
    """
    m, n = points.shape
    if m <= n:
        raise DimensionError("need at least n+1 points for an n-polytope")
    if n == 1:
        lo, hi = int(points[:, 0].min()), int(points[:, 0].max())
        if lo == hi:
            raise DimensionError("points do not span R^1")
        facets = []
        for sgn, val in ((1, hi), (-1, lo)):
            idx = tuple(int(i) for i in np.nonzero(points[:, 0] == val)[0])
            facets.append(((sgn,), sgn * val, idx))
        return facets
    big = int(np.abs(points).max())
    if (2 * big + 1) ** (n - 1) * math.factorial(n - 1) * (2 * big + 1) * n >= _SAFE:
        return _hull_python(points)
    # candidate hyperplanes in floating point, relative to the centroid so
    # that every facet hyperplane misses the (shifted) origin
    shifted = (points * m - points.sum(axis=0)).astype(np.float64)
    combos = _combos(m, n)
    simp = shifted[combos]
    keep = np.abs(np.linalg.det(simp)) > 0.5
    if not keep.any():
        raise DimensionError("points do not span R^n")
    combos, simp = combos[keep], simp[keep]
    y = np.linalg.solve(simp, np.ones((len(simp), n, 1)))[..., 0]
    near = (y @ shifted.T).max(axis=1) <= 1 + 1e-7
    combos = combos[near]
    # exact primitive normals from signed maximal minors of the edge vectors
    sub = points[combos]
    edges = sub[:, 1:, :] - sub[:, :1, :]
    fe = edges.astype(np.float64)
    normals = np.empty((len(combos), n), dtype=np.int64)
    for j in range(n):
        minor = np.delete(fe, j, axis=2)
        normals[:, j] = (-1) ** j * np.rint(np.linalg.det(minor)).astype(np.int64)
    ok = (np.einsum("kij,kj->ki", edges, normals) == 0).all(axis=1) & (normals != 0).any(axis=1)
    if not ok.all():  # rounding trouble; redo those exactly
        for k in np.nonzero(~ok)[0]:
            normals[k] = _exact_normal(sub[k].tolist())
    normals //= np.gcd.reduce(np.abs(normals), axis=1)[:, None]
    levels = np.einsum("kj,kj->k", sub[:, 0, :], normals)
    flip = normals @ points.sum(axis=0) > m * levels
    normals[flip] *= -1
    levels[flip] *= -1
    values = points @ normals.T  # (m, K)
    support = (values <= levels).all(axis=0)
    found = {}
    for k in np.nonzero(support)[0]:
        tnorm = tuple(int(x) for x in normals[k])
        if tnorm not in found:
            on_idx = tuple(int(i) for i in np.nonzero(values[:, k] == levels[k])[0])
            found[tnorm] = (tnorm, int(levels[k]), on_idx)
    if not found:
        raise DimensionError("no supporting hyperplane found")
    return list(found.values())


def _hull_python(points: np.ndarray):
    """Slow exact fallback for inputs with large coordinates."""
    pts = [tuple(int(x) for x in p) for p in points]
    m, n = len(pts), len(pts[0])
    centroid = [sum(p[j] for p in pts) for j in range(n)]
    found = {}
    for idx in itertools.combinations(range(m), n):
        sub = [pts[i] for i in idx]
        try:
            normal = _exact_normal(sub)
        except SmoothFanoError:
            continue
        level = sum(a * b for a, b in zip(normal, sub[0]))
        if any(sum(a * b for a, b in zip(normal, p)) != level for p in sub):
            continue
        if sum(a * b for a, b in zip(normal, centroid)) > m * level:
            normal, level = tuple(-a for a in normal), -level
        vals = [sum(a * b for a, b in zip(normal, p)) for p in pts]
        if max(vals) > level or normal in found:
            continue
        found[normal] = (normal, level, tuple(i for i, v in enumerate(vals) if v == level))
    if not found:
        raise DimensionError("points do not span R^n")
    return list(found.values())


def _non_vertices(points: np.ndarray, hull) -> list:
    """Indices of listed points that are not vertices of their hull."""
    m, n = points.shape
    on_boundary = set()
    for _, _, idx in hull:
        on_boundary.update(idx)
    bad = set(range(m)) - on_boundary
    for normal, _, idx in hull:
        if len(idx) <= n:
            continue
        # project the crowded facet along a coordinate axis where the normal
        # is nonzero; the projection is affinely injective on the hyperplane
        j = next(k for k, a in enumerate(normal) if a != 0)
        sub = np.delete(points[list(idx)], j, axis=1)
        subhull = _hull(sub)
        for local in _non_vertices(sub, subhull):
            bad.add(idx[local])
    return sorted(bad)


class LatticePolytope:
    """Convex hull of an ordered list of distinct integer points in Z^n.

    Facet data is computed once, on first use.  The object is otherwise
    immutable.
    """

    def __init__(self, vertices: Iterable[Sequence[int]]):
        verts = tuple(tuple(int(x) for x in v) for v in vertices)
        if not verts:
            raise DimensionError("a polytope needs vertices")
        dims = {len(v) for v in verts}
        if len(dims) != 1 or 0 in dims:
            raise DimensionError("vertices must share a positive dimension")
        if len(set(verts)) != len(verts):
            raise DomainError("repeated vertex")
        self.vertices: tuple = verts
        self.dim: int = dims.pop()

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    def __len__(self):
        return len(self.vertices)

    @property
    def nverts(self) -> int:
        return len(self.vertices)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.vertices, dtype=np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _hull(self):
        pts = self.array
        hull = _hull(pts)
        bad = _non_vertices(pts, hull)
        return hull, bad

    @cached_property
    def facets(self) -> tuple:
        """Facets sorted by vertex index tuple.

        Raises NonVertexError if a listed point is not a vertex,
        OriginNotInteriorError if the origin is not strictly inside and
        DimensionError for lower dimensional input.
        """
        hull, bad = self._hull
        if bad:
            raise NonVertexError(f"points {[self.vertices[i] for i in bad]} are not vertices")
        if any(level <= 0 for _, level, _ in hull):
            raise OriginNotInteriorError("origin is not in the interior")
        out = [Facet(frozenset(idx), normal, level) for normal, level, idx in hull]
        out.sort(key=lambda f: (f.sorted_indices(), f.normal))
        return tuple(out)

    def is_simplicial(self) -> bool:
        return all(len(f.vertex_indices) == self.dim for f in self.facets)

    @cached_property
    def normals(self) -> np.ndarray:
        a = np.array([f.normal for f in self.facets], dtype=np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def facet_masks(self) -> tuple:
        return tuple(sum(1 << i for i in f.vertex_indices) for f in self.facets)

    @cached_property
    def facet_bases(self) -> np.ndarray:
        """(f, n, n) array; row i of entry k is the i-th vertex of facet k."""
        idx = np.array([f.sorted_indices() for f in self.facets], dtype=np.intp)
        return self.array[idx]

    @cached_property
    def facet_inverses(self) -> np.ndarray:
        """Integer inverses of the facet bases (smooth Fano only).

        ``x @ inv[k]`` gives the coordinates of x in the basis of facet k.
        """
        if not is_smooth_fano(self):
            raise NotSmoothFanoError("facet bases are not unimodular")
        inv = np.rint(np.linalg.inv(self.facet_bases.astype(np.float64))).astype(np.int64)
        return inv

    def pairing(self) -> np.ndarray:
        """Matrix of values <a_F, v>, one row per facet, one column per vertex."""
        return self.normals @ self.array.T

    def transform(self, matrix) -> "LatticePolytope":
        """Image under the linear map x -> matrix @ x."""
        m = np.array(matrix, dtype=object)
        return LatticePolytope(tuple(int(x) for x in m.dot(np.array(v, dtype=object))) for v in self.vertices)


def as_polytope(p) -> LatticePolytope:
    return p if isinstance(p, LatticePolytope) else LatticePolytope(p)


def facets(p) -> tuple:
    return as_polytope(p).facets


def contains_origin_strictly(p) -> bool:
    p = as_polytope(p)
    try:
        hull, _ = p._hull
    except DimensionError:
        return False
    return all(level > 0 for _, level, _ in hull)


def vertices_are_genuine(p) -> bool:
    p = as_polytope(p)
    try:
        return not p._hull[1]
    except DimensionError:
        return False


def is_reflexive(p) -> bool:
    p = as_polytope(p)
    try:
        fs = p.facets
    except SmoothFanoError:
        return False
    return all(f.level == 1 for f in fs)


def is_simplicial(p) -> bool:
    p = as_polytope(p)
    try:
        return p.is_simplicial()
    except SmoothFanoError:
        return False


def _unimodular_batch(mats: np.ndarray) -> np.ndarray:
    """Exact test |det| == 1 for a stack of small integer matrices.

    A matrix is unimodular iff it has an integer inverse; the candidate
    inverse is rounded from floating point and certified by an exact product.
    """
    if not len(mats):
        return np.zeros(0, dtype=bool)
    if np.abs(mats).max() ** 2 * mats.shape[-1] >= _SAFE:
        return np.array([abs(lattice.determinant(m.tolist())) == 1 for m in mats])
    det = np.linalg.det(mats.astype(np.float64))
    ok = np.abs(np.abs(det) - 1) < 0.5
    out = np.zeros(len(mats), dtype=bool)
    if ok.any():
        sub = mats[ok]
        inv = np.linalg.inv(sub.astype(np.float64))
        if np.abs(inv).max() * np.abs(sub).max() * sub.shape[-1] >= _SAFE:
            out[ok] = [abs(lattice.determinant(m.tolist())) == 1 for m in sub]
        else:
            r = np.rint(inv).astype(np.int64)
            eye = np.eye(sub.shape[-1], dtype=np.int64)
            out[ok] = (np.einsum("kij,kjl->kil", sub, r) == eye).all(axis=(1, 2))
    return out


def is_smooth_fano(p) -> bool:
    p = as_polytope(p)
    cached = p.__dict__.get("_smooth_fano")
    if cached is not None:
        return cached
    try:
        fs = p.facets
        ok = all(len(f.vertex_indices) == p.dim for f in fs) and bool(
            _unimodular_batch(p.facet_bases).all())
    except SmoothFanoError:
        ok = False
    p.__dict__["_smooth_fano"] = ok
    return ok


def require_smooth_fano(p) -> LatticePolytope:
    p = as_polytope(p)
    if not is_smooth_fano(p):
        raise NotSmoothFanoError(f"not a smooth Fano polytope: {list(p.vertices)}")
    return p


def is_pseudo_symmetric(p) -> bool:
    p = as_polytope(p)
    masks = set(p.facet_masks)
    neg = [p.index.get(tuple(-x for x in v)) for v in p.vertices]
    for f in p.facets:
        img = [neg[i] for i in f.vertex_indices]
        if None in img:
            continue
        if sum(1 << i for i in img) in masks:
            return True
    return False


# ---------------------------------------------------------------------------
# canonical forms


def _refine_colors(pairing: np.ndarray):
    """Stable colourings of facets and vertices of the pairing matrix."""
    nf, nv = pairing.shape
    P = pairing.tolist()
    vcol = [0] * nv
    fcol = [0] * nf
    nclasses = -1
    while True:
        fsig = [(fcol[i], tuple(sorted(zip(P[i], vcol)))) for i in range(nf)]
        fmap = {s: k for k, s in enumerate(sorted(set(fsig)))}
        fcol = [fmap[s] for s in fsig]
        vsig = [(vcol[j], tuple(sorted((P[i][j], fcol[i]) for i in range(nf)))) for j in range(nv)]
        vmap = {s: k for k, s in enumerate(sorted(set(vsig)))}
        vcol = [vmap[s] for s in vsig]
        total = len(fmap) + len(vmap)
        if total == nclasses:
            return fcol, vcol
        nclasses = total


def _tie_permutations(groups: list) -> np.ndarray:
    """All orderings that only permute positions within each group."""
    parts = [list(itertools.permutations(g)) for g in groups]
    out = []
    for choice in itertools.product(*parts):
        out.append([x for part in choice for x in part])
    return np.array(out, dtype=np.intp)


def _normal_form(p: LatticePolytope):
    fcol, vcol = _refine_colors(p.pairing())
    best_f = min(fcol)
    verts = p.array
    best = None
    for k, f in enumerate(p.facets):
        if fcol[k] != best_f:
            continue
        idx = sorted(f.vertex_indices, key=lambda i: (vcol[i], i))
        groups = [list(g) for _, g in itertools.groupby(range(len(idx)), key=lambda t: vcol[idx[t]])]
        basis = verts[idx]
        inv = np.rint(np.linalg.inv(basis.astype(np.float64))).astype(np.int64)
        assert (basis @ inv == np.eye(p.dim, dtype=np.int64)).all()
        coords = verts @ inv  # row v: coordinates of v in the ordered basis
        perms = _tie_permutations(groups)
        cols = coords[:, perms].transpose(1, 0, 2)  # (nperm, m, n)
        lo = int(coords.min())
        base = int(coords.max()) - lo + 1
        codes = np.zeros(cols.shape[:2], dtype=np.int64)
        if base ** p.dim < 2**62:
            for j in range(p.dim):
                codes = codes * base + (cols[:, :, j] - lo)
            codes.sort(axis=1)
            order = np.lexsort(codes.T[::-1])
            cand = tuple(tuple(r) for r in sorted(map(tuple, cols[order[0]].tolist())))
        else:
            cand = min(tuple(sorted(map(tuple, c.tolist()))) for c in cols)
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(p) -> CanonicalKey:
    """Key shared by exactly the polytopes unimodularly equivalent to p.

    The rows of the key are vertex coordinates in a facet basis chosen by a
    colour refinement of the facet/vertex pairing matrix (a unimodular
    invariant); all remaining ties are searched exhaustively and the
    lexicographically least sorted coordinate list wins.  The rows are
    themselves the vertices of a polytope equivalent to p.
    """
    p = require_smooth_fano(p)
    cached = p.__dict__.get("_canonical")
    if cached is None:
        cached = (p.dim, _normal_form(p))
        p.__dict__["_canonical"] = cached
    return cached


def normal_form_polytope(p) -> LatticePolytope:
    return LatticePolytope(canonical_form(p)[1])


def key_to_string(key: CanonicalKey) -> str:
    dim, rows = key
    return f"{dim}:" + ";".join(",".join(map(str, r)) for r in rows)


def key_from_string(s: str) -> CanonicalKey:
    dim, body = s.split(":", 1)
    rows = tuple(tuple(int(x) for x in r.split(",")) for r in body.split(";"))
    return int(dim), rows


def are_unimodularly_equivalent(p, q) -> bool:
    p, q = as_polytope(p), as_polytope(q)
    if p.dim != q.dim:
        raise DimensionError("polytopes live in different dimensions")
    if p.nverts != q.nverts:
        return False
    return canonical_form(p) == canonical_form(q)


# ---------------------------------------------------------------------------
# embeddings and free sums


def embed_subset(p, q) -> Optional[UnimodularMap]:
    """A unimodular u with u(V(p)) contained in V(q), or None.

    u is pinned down by the image of the first facet basis of p, so the
    search runs over ordered n-subsets of V(q) that are lattice bases.
    """
    p, q = as_polytope(p), as_polytope(q)
    if p.dim != q.dim:
        raise DimensionError("polytopes live in different dimensions")
    if p.nverts > q.nverts:
        return None
    n = p.dim
    probe = p.facets[0].sorted_indices()
    src = p.array[list(probe)]  # rows
    src_inv = np.linalg.inv(src.astype(np.float64))
    qv = q.array
    qset = q.index
    pv = p.array
    for tup in itertools.permutations(range(q.nverts), n):
        dst = qv[list(tup)]
        # u maps src rows to dst rows: u @ src[i] == dst[i]  =>  U^T = src^-1 dst
        ut = np.rint(src_inv @ dst).astype(np.int64)
        if not (src @ ut == dst).all():
            continue
        if abs(round(np.linalg.det(ut.astype(np.float64)))) != 1:
            continue
        img = pv @ ut
        if all(tuple(int(x) for x in r) in qset for r in img):
            u = UnimodularMap(tuple(tuple(int(x) for x in r) for r in ut.T))
            return u
    return None


def free_sum(p, q) -> LatticePolytope:
    p, q = as_polytope(p), as_polytope(q)
    for x in (p, q):
        if not contains_origin_strictly(x):
            raise OriginNotInteriorError("free sum needs the origin inside both summands")
    zp, zq = (0,) * p.dim, (0,) * q.dim
    return LatticePolytope([v + zq for v in p.vertices] + [zp + w for w in q.vertices])
