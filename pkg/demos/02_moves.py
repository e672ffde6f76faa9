# %% [markdown]
# F-moves and I-moves
#
# An F-move is a stellar subdivision of a face (or its inverse). An I-move
# only asks that adding or deleting a vertex keeps the polytope smooth Fano.

# %%
from smoothfano import (canonical_form, f_neighbors, i_add, i_addition_search, i_removal_neighbors,
                        make_T, make_V, make_V_tilde, stellar_add, stellar_remove)

q, rec = stellar_add(make_T(2), [0, 1])
print(rec, "->", q.vertices)
back, rec2 = stellar_remove(q, rec.witness)
print(rec2, "->", canonical_form(back) == canonical_form(make_T(2)))

# %%
# V^4 has no F-move at all, while V^4 and V~^4 are one I-move apart.
print("F-moves from V^4:", f_neighbors(make_V(4)))
p, rec = i_add(make_V_tilde(4), (-1, -1, -1, -1))
print(rec, "gives V^4:", canonical_form(p) == canonical_form(make_V(4)))

# %%
# Removals are finite; additions are searched in a box and only as good as the box.
print(len(i_removal_neighbors(make_V(4))), "removals from V^4")
for _, r in i_addition_search(make_T(2), 1):
    print(r)
