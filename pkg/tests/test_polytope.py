import random

import numpy as np
import pytest

from smoothfano.constructions import make_T, make_V, make_V_tilde
from smoothfano.errors import DimensionError, DomainError, NonVertexError, OriginNotInteriorError
from smoothfano.polytope import (LatticePolytope, are_unimodularly_equivalent, canonical_form,
                                 contains_origin_strictly, embed_subset, free_sum,
                                 is_pseudo_symmetric, is_reflexive, is_simplicial, is_smooth_fano,
                                 key_from_string, key_to_string, normal_form_polytope,
                                 vertices_are_genuine)

CUBE = [(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]


def random_unimodular(n, rng, steps=12):
    m = np.eye(n, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        m[i] += rng.choice((-1, 1)) * m[j]
    if rng.random() < 0.5:
        m[0] *= -1
    return m


def test_T2_facets():
    normals = {f.normal for f in make_T(2).facets}
    assert normals == {(1, 1), (1, -2), (-2, 1)}
    assert all(f.level == 1 for f in make_T(2).facets)


def test_smooth_fano_examples():
    assert is_smooth_fano(make_T(5))
    assert is_smooth_fano(make_V(2))
    assert is_smooth_fano(make_V_tilde(2))
    assert is_reflexive(CUBE) and not is_simplicial(CUBE) and not is_smooth_fano(CUBE)


def test_non_smooth_reflexive_triangle():
    # reflexive, but the edges are not lattice bases
    q = LatticePolytope([(-1, -1), (2, -1), (-1, 2)])
    assert is_reflexive(q) and not is_smooth_fano(q)


def test_errors():
    with pytest.raises(DomainError):
        LatticePolytope([(1, 0), (1, 0), (0, 1)])
    with pytest.raises(DimensionError):
        LatticePolytope([(1, 0), (0, 1, 0)])
    with pytest.raises(NonVertexError):
        _ = LatticePolytope([(1, 0), (0, 1), (-1, -1), (0, 0)]).facets
    with pytest.raises(OriginNotInteriorError):
        _ = LatticePolytope([(1, 0), (0, 1), (1, 1)]).facets
    assert not contains_origin_strictly([(1, 0), (0, 1), (1, 1)])
    assert not vertices_are_genuine([(2, 0), (0, 2), (-2, -2), (1, 1)])


def test_lower_dimensional_is_not_smooth_fano():
    assert not is_smooth_fano([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)])


def test_pseudo_symmetric():
    assert is_pseudo_symmetric(make_V(4)) and is_pseudo_symmetric(make_V_tilde(4))
    assert not is_pseudo_symmetric(make_T(3))


def test_canonical_form_distinguishes():
    assert canonical_form(make_V(4)) != canonical_form(make_V_tilde(4))
    a = LatticePolytope([(1, 0), (0, 1), (-1, 0), (0, -1)])
    b = LatticePolytope([(1, 0), (0, 1), (-1, -1), (1, 1)])
    assert not are_unimodularly_equivalent(a, b)


@pytest.mark.parametrize("p", [make_T(3), make_V(2), make_V_tilde(4), make_T(5)])
def test_canonical_form_invariance(p):
    rng = random.Random(7)
    key = canonical_form(p)
    for _ in range(20):
        m = random_unimodular(p.dim, rng)
        q = p.transform(m)
        order = list(q.vertices)
        rng.shuffle(order)
        assert canonical_form(LatticePolytope(order)) == key


def test_normal_form_is_equivalent(cat):
    for p in cat(3).entries:
        q = normal_form_polytope(p)
        assert is_smooth_fano(q)
        assert canonical_form(q) == canonical_form(p)


def test_key_string_round_trip():
    key = canonical_form(make_V(2))
    assert key_from_string(key_to_string(key)) == key


def test_embed_subset():
    small = make_T(2)
    big = LatticePolytope([(1, 0), (0, 1), (-1, -1), (1, 1)])
    u = embed_subset(small, big)
    assert u is not None
    assert set(u.apply_all(small.vertices)) <= set(big.vertices)
    assert embed_subset(make_V(2), big) is None


def test_free_sum():
    p = free_sum(make_T(1), make_T(1))
    assert p.dim == 2 and p.nverts == 4 and is_smooth_fano(p)
    with pytest.raises(OriginNotInteriorError):
        free_sum([(1,), (2,)], make_T(1))
