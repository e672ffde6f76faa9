# %% [markdown]
# I-isolated polytopes
#
# The n + 3 vertex construction and the family with n + k + 3 vertices admit
# no I-move at all. Removals are checked exactly; additions inside a box.

# %%
from smoothfano import FamilyParams, i_addition_search, i_removal_neighbors, make_family, make_isolated_pic3
from smoothfano.constructions import family_roles, isolated_params
from smoothfano.primitive import format_relation, match_family_pattern, match_isolated_pattern, primitive_collections, role_names

p = make_isolated_pic3(2, 2)
names = role_names(p)
for pc in primitive_collections(p):
    print(f"{format_relation(pc, names):28s} degree {pc.degree}")
print("pattern (a, b) =", match_isolated_pattern(p))

# %%
prm = FamilyParams(2, 1, (2,), (("y1", "u1"),))
q = make_family(prm)
print(dict(zip(family_roles(prm), q.vertices)))
print(match_family_pattern(q))
print("removals:", i_removal_neighbors(q))
print("additions in [-4, 4]^5:", i_addition_search(q, 4))

# %%
# One isolated polytope per (n, rho):
for rho in (3, 4, 5):
    r = make_family(isolated_params(5, rho))
    print(f"n=5 rho={rho}: {r.nverts} vertices")
