"""Named smooth Fano polytopes and the isolated families."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .polytope import LatticePolytope


def unit(n: int, i: int, scale: int = 1) -> list:
    """Scaled i-th unit vector of Z^n, 1-based index."""
    v = [0] * n
    v[i - 1] = scale
    return v


def _add(*vs):
    return [sum(xs) for xs in zip(*vs)]


def _esum(n, lo, hi, sign=1):
    """sign * (e_lo + ... + e_hi), inclusive, 1-based; empty if lo > hi."""
    v = [0] * n
    for i in range(lo, hi + 1):
        v[i - 1] = sign
    return v


def make_T(n: int) -> LatticePolytope:
    """The simplex conv(e_1, ..., e_n, -(e_1 + ... + e_n))."""
    if n < 1:
        raise DomainError("T^n needs n >= 1")
    return LatticePolytope([unit(n, i) for i in range(1, n + 1)] + [[-1] * n])


def _check_even(dim):
    if dim < 2 or dim % 2:
        raise DomainError(f"V^d and V~^d need an even dimension d >= 2, got {dim}")


def make_V(dim: int) -> LatticePolytope:
    _check_even(dim)
    vs = [unit(dim, i, s) for i in range(1, dim + 1) for s in (1, -1)]
    return LatticePolytope(vs + [[1] * dim, [-1] * dim])


def make_V_tilde(dim: int) -> LatticePolytope:
    _check_even(dim)
    vs = [unit(dim, i, s) for i in range(1, dim + 1) for s in (1, -1)]
    return LatticePolytope(vs + [[1] * dim])


def _pic3_roles(a: int, b: int, n: int) -> dict:
    """Vertices v_i, y_j, z, t, u_j of the isolated n+3 construction.

    ``n`` may exceed a + 2b - 1; the extra coordinates stay zero.
    """
    top = a + 2 * b - 1
    roles = {}
    for i in range(1, a):
        roles[f"v{i}"] = unit(n, i)
    roles[f"v{a}"] = _add(_esum(n, 1, top - 1, -1), unit(n, top, a + b - 1))
    for j in range(1, b):
        roles[f"y{j}"] = unit(n, a - 1 + j)
    roles[f"y{b}"] = _esum(n, a + b - 1, top - 1)
    roles["z"] = unit(n, top, -1)
    roles["t"] = unit(n, top)
    for j in range(1, b):
        roles[f"u{j}"] = unit(n, a + b - 1 + j)
    roles[f"u{b}"] = _add(_esum(n, a, a + b - 1), unit(n, top, -1))
    return roles


def make_isolated_pic3(a: int, b: int) -> LatticePolytope:
    """The I-isolated polytope with n + 3 vertices, n = a + 2b - 1.

    Vertex order: v_1..v_a, y_1..y_b, z, t, u_1..u_b.
    """
    if a < 2 or b < 2:
        raise DomainError("need a >= 2 and b >= 2")
    return make_family(FamilyParams(a, b))


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of the I-isolated family.

    ``alpha[j][i]`` names the vertex (``"y3"``, ``"u1"``, ...) added into the
    last w-vertex of block j.  ``k == 0`` is the n + 3 vertex case.
    """

    a: int
    b: int
    l: tuple = ()
    alpha: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        if self.a < 2 or self.b < 1 or any(x < 1 for x in self.l):
            raise DomainError(f"invalid family parameters a={self.a} b={self.b} l={self.l}")
        if self.k == 0:
            if self.b < 2:
                raise DomainError("the k = 0 case needs b >= 2")
            object.__setattr__(self, "alpha", ())
            return
        alpha = self.alpha
        if alpha is None:
            alpha = default_alpha(self.b, self.l)
        alpha = tuple(tuple(str(x) for x in block) for block in alpha)
        if tuple(len(block) for block in alpha) != self.l:
            raise DomainError("alpha must assign one vertex to each slot (i, j)")
        labels = {f"{c}{q}" for q in range(1, self.b + 1) for c in "yu"}
        image = {x for block in alpha for x in block}
        if not image <= labels:
            raise DomainError(f"alpha uses unknown labels {sorted(image - labels)}")
        if image != labels:
            raise DomainError(f"alpha is not onto {{y_q, u_q}}: misses {sorted(labels - image)}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def k(self) -> int:
        return len(self.l)

    @property
    def dim(self) -> int:
        return self.a + 2 * self.b - 1 + sum(self.l)

    @property
    def nverts(self) -> int:
        return self.dim + self.k + 3


def default_alpha(b: int, l) -> tuple:
    """Round robin over y_1, u_1, y_2, u_2, ... across the slots."""
    cycle = [f"{c}{q}" for q in range(1, b + 1) for c in "yu"]
    total = sum(l)
    if total < len(cycle):
        raise DomainError(f"{total} slots cannot cover all {len(cycle)} of y_q, u_q")
    flat = [cycle[i % len(cycle)] for i in range(total)]
    out, pos = [], 0
    for lj in l:
        out.append(tuple(flat[pos:pos + lj]))
        pos += lj
    return tuple(out)


def family_roles(params: FamilyParams) -> dict:
    """Role name -> vertex coordinates, in construction order."""
    a, b = params.a, params.b
    n = params.dim
    roles = _pic3_roles(a, b, n)
    offset = a + 2 * b - 1
    for j, lj in enumerate(params.l, start=1):
        for i in range(1, lj + 1):
            roles[f"w{i},{j}"] = unit(n, offset + i)
        last = _esum(n, offset + 1, offset + lj, -1)
        for lab in params.alpha[j - 1]:
            last = _add(last, roles[lab])
        roles[f"w{lj + 1},{j}"] = last
        offset += lj
    return roles


def make_family(params: FamilyParams) -> LatticePolytope:
    return LatticePolytope(family_roles(params).values())


def isolated_params(n: int, rho: int) -> FamilyParams:
    """Parameters of an I-isolated n-polytope with n + rho vertices."""
    if n < 5 or not 3 <= rho <= n:
        raise DomainError(f"need n >= 5 and 3 <= rho <= n, got n={n} rho={rho}")
    if rho == 3:
        return FamilyParams(n - 3, 2)
    if rho == 4:
        return FamilyParams(n - 3, 1, (2,))
    return FamilyParams(n - rho + 2, 1, (1,) * (rho - 3))


def make_remark_example_7d() -> LatticePolytope:
    """A 15-vertex I-isolated smooth Fano 7-polytope."""
    e = lambda i, s=1: unit(7, i, s)  # noqa: E731
    pts = [e(1), e(2), e(3), e(4), e(5), e(6), e(7), e(7, -1),
           _add(e(1, -1), e(7)),
           _add(e(2, -1), e(7)), _add(e(2), e(7, -1)),
           _add(e(3, -1), e(6)),
           _add(e(2), e(6, -1)),
           _add(e(2, -1), e(4, -1), e(6)),
           _add(e(2), e(5, -1), e(7, -1))]
    return LatticePolytope(pts)
