"""F-moves (stellar subdivisions and their inverses) and I-moves.

Every move is decided by recomputing the facets of the candidate polytope
exactly.  The numpy filters below only discard candidates that provably
fail; survivors always go through the full check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, PreconditionError
from .polytope import LatticePolytope, as_polytope, canonical_form, is_smooth_fano, require_smooth_fano
from .primitive import _bits, _mask, locate_in_fan

KINDS = ("F-add", "F-remove", "I-add", "I-remove")


@dataclass(frozen=True)
class MoveRecord:
    """One move.  ``face`` holds vertex indices of the polytope the move
    starts from (F-add) or of the result (F-remove: the face subdivided by
    the inverse move)."""

    kind: str
    witness: tuple
    face: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "witness", tuple(int(x) for x in self.witness))
        if self.face is not None:
            object.__setattr__(self, "face", tuple(sorted(int(i) for i in self.face)))

    def __str__(self):
        w = "(" + ",".join(map(str, self.witness)) + ")"
        s = f"{self.kind} w={w}"
        if self.face is not None:
            s += " F={" + ",".join(map(str, self.face)) + "}"
        return s

    @classmethod
    def parse(cls, text: str) -> "MoveRecord":
        parts = text.split()
        if len(parts) not in (2, 3) or not parts[1].startswith("w=("):
            raise DomainError(f"cannot parse move record {text!r}")
        w = tuple(int(x) for x in parts[1][3:-1].split(","))
        face = None
        if len(parts) == 3:
            body = parts[2][3:-1]
            face = tuple(int(x) for x in body.split(",")) if body else ()
        return cls(parts[0], w, face)


def _genuine_smooth(vertices) -> Optional[LatticePolytope]:
    """The polytope on exactly these vertices if it is smooth Fano."""
    try:
        q = LatticePolytope(vertices)
    except DomainError:
        return None
    return q if is_smooth_fano(q) else None


def _facet_sets(p: LatticePolytope) -> set:
    return {f.vertex_indices for f in p.facets}


def stellar_add(p, face) -> Optional[tuple]:
    """Stellar subdivision of the face (vertex indices) of a smooth Fano p.

    Returns ``(q, MoveRecord)`` or None.  The new vertex is appended last in
    q, and the facets of q through it are compared verbatim against
    ``{ {w} | F' minus v : F' facet containing face, v in face }``.
    """
    p = require_smooth_fano(p)
    face = frozenset(int(i) for i in face)
    if not face or any(not 0 <= i < p.nverts for i in face):
        raise DomainError(f"face {sorted(face)} is not a set of vertex indices")
    fm = _mask(face)
    star = [f.vertex_indices for f, m in zip(p.facets, p.facet_masks) if m & fm == fm]
    if not star:
        raise PreconditionError(f"{sorted(face)} is not a face")
    w = tuple(int(x) for x in p.array[sorted(face)].sum(axis=0))
    if w in p.index:
        return None
    # facets away from the face must keep w strictly below them
    levels = p.normals @ np.array(w, dtype=np.int64)
    away = np.array([m & fm != fm for m in p.facet_masks])
    if (levels[away] >= 1).any():
        return None
    q = _genuine_smooth(p.vertices + (w,))
    if q is None:
        return None
    new = p.nverts
    expected = {frozenset({new}) | (fp - {v}) for fp in star for v in face}
    got = {s for s in _facet_sets(q) if new in s}
    if got != expected:
        return None
    return q, MoveRecord("F-add", w, tuple(sorted(face)))


def stellar_remove(p, w) -> Optional[tuple]:
    """Inverse stellar subdivision removing the vertex w (coordinates or index).

    Accepted only if the remaining polytope q is smooth Fano and some
    stellar_add on q gives back V(p).  The only face that can work is the
    minimal cone of q containing w, with all coefficients 1.
    """
    p = require_smooth_fano(p)
    idx = _vertex_index(p, w)
    w = p.vertices[idx]
    res = i_remove(p, idx)
    if res is None:
        return None
    q = res[0]
    cone, coeffs = locate_in_fan(q, w)
    if len(cone) < 2 or any(c != 1 for c in coeffs):
        return None
    back = stellar_add(q, cone)
    if back is None or set(back[0].vertices) != set(p.vertices):
        return None
    return q, MoveRecord("F-remove", w, cone)


def _vertex_index(p: LatticePolytope, w) -> int:
    if isinstance(w, (int, np.integer)):
        if not 0 <= int(w) < p.nverts:
            raise DomainError(f"vertex index {w} out of range")
        return int(w)
    w = tuple(int(x) for x in w)
    if w not in p.index:
        raise DomainError(f"{w} is not a vertex")
    return p.index[w]


def i_add(p, w: Sequence[int]) -> Optional[tuple]:
    """Add the lattice point w as a new vertex; None unless the result is
    smooth Fano with vertex set V(p) plus w."""
    p = as_polytope(p)
    w = tuple(int(x) for x in w)
    if len(w) != p.dim:
        raise DomainError(f"point {w} has the wrong dimension")
    if w in p.index:
        raise PreconditionError(f"{w} is already a vertex")
    if is_smooth_fano(p):
        levels = p.normals @ np.array(w, dtype=np.int64)
        # level 1 puts w on a facet of p, so w is no vertex of q or q is not simplicial;
        # all levels below 1 put w inside p
        if (levels == 1).any() or levels.max() < 1:
            return None
    q = _genuine_smooth(p.vertices + (w,))
    if q is None:
        return None
    return q, MoveRecord("I-add", w)


def i_remove(p, v) -> Optional[tuple]:
    """Delete the vertex v (coordinates or index)."""
    p = as_polytope(p)
    idx = _vertex_index(p, v)
    if p.nverts <= p.dim + 1:
        return None
    q = _genuine_smooth(p.vertices[:idx] + p.vertices[idx + 1:])
    if q is None:
        return None
    return q, MoveRecord("I-remove", p.vertices[idx])


def _proper_faces(p: LatticePolytope) -> list:
    masks = set()
    for f in p.facets:
        idx = f.sorted_indices()
        for r in range(2, len(idx) + 1):
            for sub in itertools.combinations(idx, r):
                masks.add(_mask(sub))
    return sorted(masks)


def f_neighbors(p) -> list:
    """Every F-move from p, one per canonical class of the result.

    Singletons are skipped because their sum is already a vertex.
    """
    p = require_smooth_fano(p)
    out, seen = [], set()

    def keep(res):
        if res is not None:
            k = canonical_form(res[0])
            if k not in seen:
                seen.add(k)
                out.append(res)

    for m in _proper_faces(p):
        keep(stellar_add(p, tuple(_bits(m))))
    for i in range(p.nverts):
        keep(stellar_remove(p, i))
    return out


def i_removal_neighbors(p) -> list:
    """All successful i_remove results, one per removed vertex."""
    p = as_polytope(p)
    out = []
    for i in range(p.nverts):
        res = i_remove(p, i)
        if res is not None:
            out.append(res)
    return out


def _ridge_table(p: LatticePolytope):
    """For each ridge, the visible facet k, the neighbour k2 across it and
    the required level gap.

    A point w with k visible and k2 not makes conv(F_k2 + w) a facet only if
    the vertex v of F_k opposite the ridge satisfies
    level_k(w) - level_k2(w) == 1 - <a_k2, v>.
    """
    owner = {}
    for k, m in enumerate(p.facet_masks):
        for i in _bits(m):
            owner.setdefault(m & ~(1 << i), []).append((k, i))
    k1, k2, gap = [], [], []
    for pair in owner.values():
        (a, i), (b, j) = pair
        for (x, vi), (y, _) in (((a, i), (b, j)), ((b, j), (a, i))):
            k1.append(x)
            k2.append(y)
            gap.append(1 - int(p.normals[y] @ p.array[vi]))
    return np.array(k1), np.array(k2), np.array(gap)


def _box_chunks(n: int, bound: int, size: int):
    side = 2 * bound + 1
    total = side ** n
    for start in range(0, total, size):
        code = np.arange(start, min(total, start + size), dtype=np.int64)
        pts = np.empty((len(code), n), dtype=np.int64)
        for c in range(n - 1, -1, -1):
            code, r = np.divmod(code, side)
            pts[:, c] = r - bound
        yield pts


def _off_level_one(normals: np.ndarray, bound: int, size: int):
    """Box points, in lexicographic order, with no facet level equal to 1.

    For a fixed prefix (x_1 .. x_{n-1}) each facet forbids at most one value
    of x_n, so the allowed last coordinates of a prefix are a bitmask.
    """
    n = normals.shape[1]
    side = 2 * bound + 1
    head, last = normals[:, :-1].astype(np.float64), normals[:, -1]
    nz = last != 0
    full = np.uint64((1 << side) - 1)
    shifts = np.arange(side, dtype=np.uint64)
    for prefix in _box_chunks(n - 1, bound, max(1, size // side)):
        need = 1 - np.rint(prefix.astype(np.float64) @ head.T).astype(np.int64)
        q, r = np.divmod(need[:, nz], last[nz])
        hit = (r == 0) & (np.abs(q) <= bound)
        bits = np.where(hit, np.left_shift(np.uint64(1), (np.clip(q, -bound, bound) + bound).astype(np.uint64)),
                        np.uint64(0))
        banned = np.bitwise_or.reduce(bits, axis=1) if bits.shape[1] else np.zeros(len(prefix), np.uint64)
        banned[(need[:, ~nz] == 0).any(axis=1)] = full
        allowed = ~banned & full
        rows, cols = np.nonzero((allowed[:, None] >> shifts) & np.uint64(1))
        if len(rows):
            yield np.concatenate([prefix[rows], (cols - bound)[:, None]], axis=1)


def addition_candidates(p, bound: int, chunk: int = 200_000) -> list:
    """Primitive points of [-B, B]^n that pass the necessary conditions for
    an I-add on the smooth Fano polytope p, in lexicographic order."""
    p = require_smooth_fano(p)
    n = p.dim
    normals = p.normals.astype(np.float64)
    incidence = np.zeros((p.nverts, len(p.facets)), dtype=np.float64)
    for k, f in enumerate(p.facets):
        incidence[list(f.vertex_indices), k] = 1
    r1, r2, gap = _ridge_table(p)
    if n >= 2 and 2 * bound + 1 <= 63:
        source = _off_level_one(p.normals, bound, chunk)
    else:
        source = _box_chunks(n, bound, chunk)
    found = []
    for pts in source:
        pts = pts[np.gcd.reduce(pts, axis=1) == 1]
        lev = np.rint(pts.astype(np.float64) @ normals.T).astype(np.int64)
        keep = (lev.max(axis=1) >= 2) & ~(lev == 1).any(axis=1)
        pts, lev = pts[keep], lev[keep]
        # horizon ridges must give unimodular cones; checked in blocks so
        # that rows die early
        for lo in range(0, len(r1), 32):
            if not len(pts):
                break
            a, b, g = r1[lo:lo + 32], r2[lo:lo + 32], gap[lo:lo + 32]
            la, lb = lev[:, a], lev[:, b]
            bad = (la >= 2) & (lb <= 0) & ((la - lb) != g)
            keep = ~bad.any(axis=1)
            pts, lev = pts[keep], lev[keep]
        if not len(pts):
            continue
        # every old vertex must stay on some facet that w does not see
        keep = (((lev <= 0).astype(np.float64) @ incidence.T) > 0).all(axis=1)
        found.extend(tuple(int(x) for x in row) for row in pts[keep])
    return found


def i_addition_search(p, bound: int) -> list:
    """All successful i_add(p, w) with w primitive in [-B, B]^n, w outside p.

    A semi-decision: lattice points beyond the box are never tried, so an
    empty answer only means "none within B".
    """
    if bound < 1:
        raise DomainError("the box bound must be at least 1")
    p = require_smooth_fano(p)
    out = []
    for w in addition_candidates(p, bound):
        res = i_add(p, w)
        if res is not None:
            out.append(res)
    return out


def i_neighbors_in_catalog(p, cat) -> list:
    """Catalog ids one I-move away from p; exact when cat is complete."""
    return cat.i_neighbor_ids(p)
