# %% [markdown]
# Smooth Fano polytopes and their fans
#
# A smooth Fano polytope has the origin inside and every facet spanned by a
# lattice basis. We build a few, check them, and read off primitive relations.

# %%
from smoothfano import LatticePolytope, canonical_form, is_smooth_fano, make_T, make_V, make_V_tilde
from smoothfano.polytope import is_pseudo_symmetric, is_reflexive
from smoothfano.primitive import format_relation, primitive_collections

T2 = make_T(2)
print(T2)
for f in T2.facets:
    print("facet", f.sorted_indices(), "normal", f.normal, "level", f.level)

# %%
# The cube is reflexive but its facets are squares, so it is not smooth Fano.
cube = LatticePolytope([(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)])
print("cube reflexive:", is_reflexive(cube), "smooth Fano:", is_smooth_fano(cube))

# %%
# Canonical forms identify polytopes up to lattice automorphisms.
sheared = T2.transform([[1, 3], [0, 1]])
print(canonical_form(sheared) == canonical_form(T2))
print("V^4 and V~^4 pseudo-symmetric:", is_pseudo_symmetric(make_V(4)), is_pseudo_symmetric(make_V_tilde(4)))

# %%
# Primitive relations: minimal non-faces A and the cone containing sum(A).
for p in (make_T(3), make_V(2)):
    for pc in primitive_collections(p):
        print(format_relation(pc), " degree", pc.degree)
    print()
