# %% [markdown]
# Equivalence classes over complete catalogs
#
# With every smooth Fano n-polytope at hand, single moves between catalog
# entries generate the whole equivalence relation. Pass --dim5 to also run
# the 866-polytope catalog (a minute or two).

# %%
import sys

from smoothfano import build_graph, components, load_bundled, make_V, make_V_tilde, report
from smoothfano.classes import base_node, export_dot

for n in (2, 3, 4):
    cat = load_bundled(n)
    for rel in "FI":
        g = build_graph(cat, rel)
        print(f"dim {n} {rel}: {len(cat)} polytopes, components {sorted(map(len, components(g)), reverse=True)}")

# %%
cat4 = load_bundled(4)
g = build_graph(cat4, "F")
singles = [c[0] for c in components(g) if len(c) == 1]
print("F-singletons are V^4 and V~^4:", sorted(singles) == sorted([cat4.find(make_V(4)), cat4.find(make_V_tilde(4))]))
print(export_dot(build_graph(load_bundled(2), "F")))

# %%
if "--dim5" in sys.argv:
    cat5 = load_bundled(5)
    for rel in "FI":
        print(report(build_graph(cat5, rel), base_node(cat5)))
        print()
