"""Primitive collections and primitive relations of smooth complete fans.

A smooth Fano polytope P is handled through its face fan: rays are the
vertices, maximal cones are the facets.  Faces of a simplicial polytope are
exactly the subsets of facet vertex sets, so every face test below is a
bitmask subset test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from . import lattice
from .constructions import FamilyParams
from .errors import DomainError, InconsistencyError, PreconditionError, SmoothFanoError
from .polytope import LatticePolytope, as_polytope, require_smooth_fano


class FanValidationError(SmoothFanoError):
    """The cones do not form a complete nonsingular simplicial fan."""


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _mask(indices) -> int:
    return sum(1 << i for i in indices)


class SimplicialCompleteFan:
    """Rays plus maximal cones (index tuples of length n).

    Construction checks that rays are primitive, maximal cones are
    unimodular, every ridge lies in exactly two maximal cones on opposite
    sides, and a generic vector lies in exactly one maximal cone; together
    these certify a complete nonsingular fan.
    """

    def __init__(self, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]):
        self.rays = tuple(tuple(int(x) for x in r) for r in rays)
        self.max_cones = tuple(tuple(sorted(int(i) for i in c)) for c in max_cones)
        if not self.rays:
            raise FanValidationError("a fan needs rays")
        self.dim = len(self.rays[0])
        self._validate()

    @classmethod
    def of_polytope(cls, p) -> "SimplicialCompleteFan":
        p = require_smooth_fano(p)
        fan = cls.__new__(cls)
        fan.rays = p.vertices
        fan.max_cones = tuple(f.sorted_indices() for f in p.facets)
        fan.dim = p.dim
        fan.__dict__["inverses"] = p.facet_inverses
        return fan

    def _validate(self):
        n = self.dim
        if any(len(r) != n for r in self.rays):
            raise FanValidationError("rays of different lengths")
        for r in self.rays:
            if lattice.primitive_part(r) != r:
                raise FanValidationError(f"ray {r} is not primitive")
        if len(set(self.max_cones)) != len(self.max_cones):
            raise FanValidationError("repeated maximal cone")
        signs = {}
        for c in self.max_cones:
            if len(c) != n or len(set(c)) != n:
                raise FanValidationError(f"maximal cone {c} does not have {n} rays")
            if abs(lattice.determinant([self.rays[i] for i in c])) != 1:
                raise FanValidationError(f"cone {c} is singular")
            for pos in range(n):
                ridge = c[:pos] + c[pos + 1:]
                other = c[pos]
                det = lattice.determinant([self.rays[i] for i in ridge] + [self.rays[other]])
                signs.setdefault(ridge, []).append(det > 0)
        for ridge, s in signs.items():
            if len(s) != 2 or s[0] == s[1]:
                raise FanValidationError(f"ridge {ridge} is not shared by two opposite cones")
        base = 1009
        for attempt in range(1, 20):
            x = np.array([(base * attempt) ** i + attempt for i in range(n)], dtype=np.float64)
            lams = np.einsum("j,kjl->kl", x, self.inverses.astype(np.float64))
            if (np.abs(lams) < 1e-9).any():
                continue
            hits = int((lams > 0).all(axis=1).sum())
            if hits != 1:
                raise FanValidationError(f"a generic vector lies in {hits} maximal cones")
            return
        raise FanValidationError("could not find a generic test vector")

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.rays, dtype=np.int64)

    @cached_property
    def inverses(self) -> np.ndarray:
        bases = np.array([[self.rays[i] for i in c] for c in self.max_cones], dtype=np.int64)
        inv = np.rint(np.linalg.inv(bases.astype(np.float64))).astype(np.int64)
        eye = np.eye(self.dim, dtype=np.int64)
        if not (np.einsum("kij,kjl->kil", bases, inv) == eye).all():
            raise FanValidationError("a maximal cone is singular")
        return inv

    @cached_property
    def cone_masks(self) -> tuple:
        return tuple(_mask(c) for c in self.max_cones)

    @cached_property
    def face_masks(self) -> frozenset:
        out = set()
        for c in self.max_cones:
            for r in range(len(c) + 1):
                for sub in itertools.combinations(c, r):
                    out.add(_mask(sub))
        return frozenset(out)

    def is_cone(self, indices) -> bool:
        return _mask(indices) in self.face_masks


FanLike = Union[LatticePolytope, SimplicialCompleteFan]


def as_fan(f) -> SimplicialCompleteFan:
    if isinstance(f, SimplicialCompleteFan):
        return f
    p = as_polytope(f)
    cached = p.__dict__.get("_fan")
    if cached is None:
        cached = SimplicialCompleteFan.of_polytope(p)
        p.__dict__["_fan"] = cached
    return cached


@dataclass(frozen=True)
class PrimitiveCollection:
    """A minimal non-face A with its relation sum(A) == sum(rhs[i] * ray_i).

    An empty ``rhs`` is the relation sum(A) == 0.
    """

    members: frozenset
    rhs: dict = field(hash=False, compare=True)
    degree: int

    def sorted_members(self) -> tuple:
        return tuple(sorted(self.members))

    @property
    def is_zero(self) -> bool:
        return not self.rhs


def degree(pc: PrimitiveCollection) -> int:
    return len(pc.members) - sum(pc.rhs.values())


def is_face(p, s) -> bool:
    """Does the vertex index set s span a face of the simplicial polytope p?"""
    m = _mask(s)
    return any(m & f == m for f in as_fan(p).cone_masks)


def locate_in_fan(p, x) -> tuple:
    """Minimal cone containing x and the positive coefficients of x in it.

    Returns ``(indices, coefficients)`` with matching order.
    """
    fan = as_fan(p)
    xv = np.array(x, dtype=np.int64)
    if not xv.any():
        raise DomainError("the zero vector lies in every cone")
    lams = np.einsum("j,kjl->kl", xv, fan.inverses)
    inside = np.nonzero((lams >= 0).all(axis=1))[0]
    if not len(inside):
        raise InconsistencyError(f"{tuple(x)} lies in no maximal cone; fan is not complete")
    k = int(inside[0])
    cone = fan.max_cones[k]
    lam = lams[k]
    pairs = [(cone[i], int(lam[i])) for i in range(len(cone)) if lam[i] > 0]
    return tuple(i for i, _ in pairs), tuple(c for _, c in pairs)


def primitive_collections(p) -> list:
    """All primitive collections with their relations, sorted by members."""
    fan = as_fan(p)
    cached = fan.__dict__.get("_pcs")
    if cached is not None:
        return cached
    faces = fan.face_masks
    nrays = len(fan.rays)
    found = set()
    layer = {1 << i for i in range(nrays) if (1 << i) in faces}
    for i in range(nrays):
        if (1 << i) not in faces:
            found.add(1 << i)
    size = 1
    while layer and size <= fan.dim:
        nxt = set()
        for s in layer:
            for i in range(nrays):
                bit = 1 << i
                if s & bit:
                    continue
                t = s | bit
                if t in faces:
                    nxt.add(t)
                elif t not in found and all((t & ~(1 << j)) in faces for j in _bits(t)):
                    found.add(t)
        layer = nxt
        size += 1
    rays = fan.array
    out = []
    for t in found:
        members = frozenset(_bits(t))
        total = rays[list(members)].sum(axis=0)
        if total.any():
            cone, coeffs = locate_in_fan(fan, total)
            rhs = dict(zip(cone, coeffs))
        else:
            rhs = {}
        out.append(PrimitiveCollection(members, rhs, len(members) - sum(rhs.values())))
    out.sort(key=lambda pc: (len(pc.members), pc.sorted_members()))
    fan.__dict__["_pcs"] = out
    return out


def primitive_collections_bruteforce(p) -> list:
    """Independent check: test every vertex subset against the definition."""
    fan = as_fan(p)
    n = len(fan.rays)
    out = []
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            if fan.is_cone(sub):
                continue
            if all(fan.is_cone(sub[:i] + sub[i + 1:]) for i in range(r)):
                out.append(frozenset(sub))
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


def check_fano_by_degrees(f) -> bool:
    """True iff every primitive collection has positive degree."""
    if not isinstance(f, SimplicialCompleteFan):
        f = as_fan(f)
    return all(pc.degree > 0 for pc in primitive_collections(f))


# ---------------------------------------------------------------------------
# pattern classifiers


@dataclass(frozen=True)
class Pic2Pattern:
    k: int
    zero_part: tuple
    a: tuple


@dataclass(frozen=True)
class Pic3Pattern:
    case: str  # "three-disjoint" or "five-collections"
    p: tuple = ()
    c: tuple = ()
    d: tuple = ()
    role_assignment: dict = field(default_factory=dict, hash=False)


def _require_count(p, extra):
    p = require_smooth_fano(p)
    if p.nverts != p.dim + extra:
        raise PreconditionError(f"expected {p.dim + extra} vertices, got {p.nverts}")
    return p


def classify_pic2(p) -> Pic2Pattern:
    p = _require_count(p, 2)
    pcs = primitive_collections(p)
    if len(pcs) != 2 or pcs[0].members & pcs[1].members:
        raise InconsistencyError(f"expected two disjoint primitive collections, got {len(pcs)}")
    options = []
    for zero, other in (pcs, pcs[::-1]):
        if not zero.is_zero or not set(other.rhs) <= zero.members:
            continue
        k = len(zero.members)
        part = zero.sorted_members()
        a = tuple(other.rhs.get(i, 0) for i in part)
        if 2 <= k <= p.dim and p.dim + 2 - k > sum(a):
            options.append(Pic2Pattern(k, part, a))
    if not options:
        raise InconsistencyError("primitive relations do not have the two-relation shape")
    return min(options, key=lambda x: (x.k, x.zero_part))


def _cycle_orders(pcs):
    """Orderings C1..C5 of five collections forming a cycle of overlaps."""
    if len(pcs) != 5:
        return []
    sets = [pc.members for pc in pcs]
    adj = {i: [j for j in range(5) if j != i and sets[i] & sets[j]] for i in range(5)}
    if any(len(v) != 2 for v in adj.values()):
        return []
    cycle = [0, adj[0][0]]
    while len(cycle) < 5:
        nxt = [j for j in adj[cycle[-1]] if j != cycle[-2]][0]
        if nxt in cycle:
            return []
        cycle.append(nxt)
    if cycle[0] not in adj[cycle[-1]]:
        return []
    orders = []
    for rev in (cycle, cycle[::-1]):
        for s in range(5):
            orders.append([pcs[rev[(s + i) % 5]] for i in range(5)])
    return orders


def _five_cycle_matches(pcs, universe):
    """Every way of reading five collections as the five-relation display.

    Yields dicts with the role groups V, Y, Z, T, U (sorted index tuples, z_1
    first in Z) and the coefficient lists c, d.
    """
    for c1, c2, c3, c4, c5 in _cycle_orders(pcs):
        Y = c1.members & c2.members
        Z = c2.members & c3.members
        T = c3.members & c4.members
        U = c4.members & c5.members
        V = c5.members & c1.members
        groups = (V, Y, Z, T, U)
        if any(not g for g in groups) or set().union(*groups) != set(universe):
            continue
        if (c1.members != V | Y or c2.members != Y | Z or c3.members != Z | T
                or c4.members != T | U or c5.members != U | V):
            continue
        if c3.rhs:
            continue
        if c2.rhs != {u: 1 for u in U} or c4.rhs != {y: 1 for y in Y}:
            continue
        if not set(c1.rhs) <= Z | T or any(c1.rhs.get(t, 0) < 1 for t in T):
            continue
        cz = {z: c1.rhs.get(z, 0) for z in Z}
        dt = {t: c1.rhs[t] - 1 for t in T}
        zeros = sorted(z for z in Z if cz[z] == 0)
        if not zeros:
            continue
        expect5 = {i: v for i, v in itertools.chain(cz.items(), dt.items()) if v}
        if c5.rhs != expect5:
            continue
        if any(pc.degree <= 0 for pc in (c1, c2, c3, c4, c5)):
            continue
        z_order = [zeros[0]] + sorted(z for z in Z if z != zeros[0])
        yield {
            "V": tuple(sorted(V)), "Y": tuple(sorted(Y)), "Z": tuple(z_order),
            "T": tuple(sorted(T)), "U": tuple(sorted(U)),
            "c": tuple(cz[z] for z in z_order[1:]),
            "d": tuple(dt[t] for t in sorted(T)),
        }


def _roles(match, bare_singletons=False) -> dict:
    out = {}
    for name, g in zip("vyztu", ("V", "Y", "Z", "T", "U")):
        for k, i in enumerate(match[g], start=1):
            if bare_singletons and name in "zt" and len(match[g]) == 1:
                out[i] = name
            else:
                out[i] = f"{name}{k}"
    return out


def classify_pic3(p) -> Pic3Pattern:
    p = _require_count(p, 3)
    pcs = primitive_collections(p)
    if len(pcs) == 3:
        a, b, c = (pc.members for pc in pcs)
        if not (a & b or b & c or a & c):
            return Pic3Pattern("three-disjoint")
    matches = list(_five_cycle_matches(pcs, range(p.nverts)))
    if not matches:
        raise InconsistencyError(
            f"{len(pcs)} primitive collections fit neither shape for n+3 vertices")
    best = min(matches, key=lambda m: (tuple(len(m[g]) for g in "VYZTU"), m["c"], m["d"],
                                       m["V"], m["Y"], m["Z"], m["T"], m["U"]))
    return Pic3Pattern("five-collections", tuple(len(best[g]) for g in "VYZTU"),
                       best["c"], best["d"], _roles(best))


def _isolated_match(m) -> Optional[tuple]:
    a, b = len(m["V"]), len(m["Y"])
    if len(m["Z"]) != 1 or len(m["T"]) != 1 or len(m["U"]) != b:
        return None
    if m["c"] != () or m["d"] != (a + b - 2,):
        return None
    return a, b


def match_isolated_pattern(p) -> Optional[tuple]:
    """(a, b) if the primitive relations are those of the isolated n+3 case."""
    p = _require_count(p, 3)
    for m in _five_cycle_matches(primitive_collections(p), range(p.nverts)):
        ab = _isolated_match(m)
        if ab and ab[0] >= 2 and ab[1] >= 2 and ab[0] + 2 * ab[1] - 1 == p.dim:
            return ab
    return None


def match_isolated_roles(p) -> Optional[dict]:
    p = require_smooth_fano(p)
    if p.nverts != p.dim + 3:
        return None
    for m in _five_cycle_matches(primitive_collections(p), range(p.nverts)):
        ab = _isolated_match(m)
        if ab and ab[0] >= 2 and ab[1] >= 2:
            return _roles(m, bare_singletons=True)
    return None


def _family_match(p):
    p = require_smooth_fano(p)
    pcs = primitive_collections(p)
    count = [0] * p.nverts
    for pc in pcs:
        for i in pc.members:
            count[i] += 1
    single = {i for i, c in enumerate(count) if c == 1}
    wpcs = [pc for pc in pcs if pc.members <= single]
    core = [pc for pc in pcs if not pc.members <= single]
    wverts = set().union(*(pc.members for pc in wpcs)) if wpcs else set()
    if len(core) != 5:
        return None
    universe = set(range(p.nverts)) - wverts
    if any(count[i] != 2 for i in universe):
        return None
    for m in _five_cycle_matches(core, universe):
        ab = _isolated_match(m)
        if not ab:
            continue
        a, b = ab
        roles = _roles(m, bare_singletons=True)
        yu = set(m["Y"]) | set(m["U"])
        blocks = sorted(wpcs, key=lambda pc: min(pc.members))
        alpha, ls, ok = [], [], True
        for pc in blocks:
            lj = len(pc.members) - 1
            if not pc.rhs or not set(pc.rhs) <= yu or sum(pc.rhs.values()) != lj or lj < 1:
                ok = False
                break
            labels = sorted(lab for i, c in pc.rhs.items() for lab in [roles[i]] * c)
            alpha.append(tuple(labels))
            ls.append(lj)
            for j, i in enumerate(sorted(pc.members), start=1):
                roles[i] = f"w{j},{len(ls)}"
        if not ok:
            continue
        if sum(ls) + a + 2 * b - 1 != p.dim:
            continue
        try:
            params = FamilyParams(a, b, tuple(ls), tuple(alpha) if ls else None)
        except DomainError:
            continue
        return params, roles
    return None


def match_family_pattern(p) -> Optional[FamilyParams]:
    """Parameters (a, b, l, alpha) if the relations are those of the family.

    The y/u labels in alpha follow the vertex order, since the relations fix
    them only up to renumbering.
    """
    hit = _family_match(p)
    return hit[0] if hit else None


def role_names(p) -> Optional[dict]:
    hit = _family_match(p)
    return hit[1] if hit else None


def verify_extension_lemma(p) -> bool:
    """Check the face-extension property of every degree-one relation.

    For each primitive relation sum(A) == sum(a_j w_j) of degree one whose
    right-hand side spans a face W, and each facet F containing W, every set
    (F | A) - {x} with x in A must span a face.  Faces are closed under
    subsets, so checking facets covers all faces containing W.
    """
    fan = as_fan(require_smooth_fano(p))
    faces = fan.face_masks
    for pc in primitive_collections(p):
        if pc.degree != 1 or not pc.rhs or set(pc.rhs) & pc.members:
            continue
        w = _mask(pc.rhs)
        if w not in faces:
            continue
        a = _mask(pc.members)
        for f in fan.cone_masks:
            if f & w != w:
                continue
            for x in pc.members:
                if ((f | a) & ~(1 << x)) not in faces:
                    return False
    return True


def format_relation(pc: PrimitiveCollection, names=None) -> str:
    """``v1 + v2 + y1 + y2 = 3 t`` style rendering."""
    name = (lambda i: names[i]) if names else (lambda i: f"x{i}")
    order = (lambda i: ("vyztuw".find(names[i][0]), _natural(names[i]))) if names else (lambda i: i)
    lhs = " + ".join(name(i) for i in sorted(pc.members, key=order))
    if not pc.rhs:
        rhs = "0"
    else:
        rhs = " + ".join(name(i) if c == 1 else f"{c} {name(i)}"
                         for i, c in sorted(pc.rhs.items(), key=lambda t: order(t[0])))
    return f"{lhs} = {rhs}"


def _natural(label):
    digits = "".join(ch if ch.isdigit() else " " for ch in label).split()
    return tuple(int(x) for x in digits)


def family_relation_display(params: FamilyParams) -> set:
    """The relations the family is built to have, as (lhs names, rhs items).

    ``lhs`` is a frozenset of role names, ``rhs`` a frozenset of
    (name, coefficient) pairs, names as in family_roles.
    """
    a, b = params.a, params.b
    v = [f"v{i}" for i in range(1, a + 1)]
    y = [f"y{j}" for j in range(1, b + 1)]
    u = [f"u{j}" for j in range(1, b + 1)]

    def rel(lhs, rhs):
        return frozenset(lhs), frozenset((k, c) for k, c in rhs.items() if c)

    out = {
        rel(v + y, {"t": a + b - 1}),
        rel(y + ["z"], {x: 1 for x in u}),
        rel(["z", "t"], {}),
        rel(["t"] + u, {x: 1 for x in y}),
        rel(u + v, {"t": a + b - 2}),
    }
    for j, lj in enumerate(params.l, start=1):
        rhs = {}
        for lab in params.alpha[j - 1]:
            rhs[lab] = rhs.get(lab, 0) + 1
        out.add(rel([f"w{i},{j}" for i in range(1, lj + 2)], rhs))
    return out


def relations_by_name(p, names) -> set:
    """Primitive relations of p in the form used by family_relation_display."""
    return {(frozenset(names[i] for i in pc.members),
             frozenset((names[i], c) for i, c in pc.rhs.items()))
            for pc in primitive_collections(p)}
