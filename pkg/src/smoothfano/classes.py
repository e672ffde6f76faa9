"""F- and I-equivalence graphs over a complete catalog.

Every polytope in an equivalence chain is itself a smooth Fano polytope of
the same dimension, so with a complete catalog the graph whose edges are
single moves between catalog entries has the equivalence classes as its
connected components.  A generated neighbour that is missing from the
catalog aborts the build: the catalog is not complete and the components
would be wrong.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .catalog import Catalog
from .constructions import make_T
from .errors import CatalogIncompleteError, DomainError, InconsistencyError
from .moves import MoveRecord, f_neighbors, i_add, i_remove, stellar_add, stellar_remove
from .polytope import canonical_form, embed_subset, key_from_string, key_to_string

RELATIONS = ("F", "I")


@dataclass
class Edge:
    a: int
    b: int
    source: int
    witness: MoveRecord

    def __post_init__(self):
        if not self.a < self.b or self.source not in (self.a, self.b):
            raise DomainError(f"bad edge {self.a}-{self.b} from {self.source}")

    @property
    def target(self) -> int:
        return self.b if self.source == self.a else self.a


@dataclass
class EquivGraph:
    """Nodes are catalog positions; ``keys`` and ``nverts`` are per node."""

    relation: str
    keys: list
    nverts: list
    edges: dict = field(default_factory=dict)
    labels: Optional[list] = None

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise DomainError(f"relation must be F or I, got {self.relation!r}")

    def __len__(self):
        return len(self.keys)

    def add(self, source: int, target: int, rec: MoveRecord):
        a, b = sorted((source, target))
        if abs(self.nverts[a] - self.nverts[b]) != 1:
            raise InconsistencyError(f"move {rec} joins {a} and {b} with the same vertex count")
        self.edges.setdefault((a, b), Edge(a, b, source, rec))

    def sorted_edges(self) -> list:
        return [self.edges[k] for k in sorted(self.edges)]

    def neighbors(self, i: int) -> list:
        return sorted({e.b if e.a == i else e.a for e in self.edges.values() if i in (e.a, e.b)})


def build_graph(cat: Catalog, relation: str) -> EquivGraph:
    g = EquivGraph(relation, list(cat.keys), [p.nverts for p in cat.entries],
                   labels=[cat.label(i) for i in range(len(cat))])
    if relation == "F":
        for i, p in enumerate(cat.entries):
            for q, rec in f_neighbors(p):
                j = cat.find(q)
                if j is None:
                    raise CatalogIncompleteError(f"{rec} from {cat.label(i)} leaves the catalog")
                g.add(i, j, rec)
    elif relation == "I":
        for i, row in enumerate(cat.removal_links()):
            for j, rec in row:
                g.add(i, j, rec)
    else:
        raise DomainError(f"relation must be F or I, got {relation!r}")
    return g


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller id becomes the root: labels do not depend on edge order
            self.parent[max(rx, ry)] = min(rx, ry)


def components(g: EquivGraph) -> list:
    """Connected components as sorted id lists, ordered by smallest id."""
    uf = _UnionFind(len(g))
    for a, b in g.edges:
        uf.union(a, b)
    groups = {}
    for i in range(len(g)):
        groups.setdefault(uf.find(i), []).append(i)
    return sorted(groups.values())


def verify_edge(cat: Catalog, e: Edge, independent: bool = False) -> bool:
    """Replay the witness move and compare with the other endpoint.

    With ``independent`` I-edges are also checked through embed_subset,
    which searches for a lattice map instead of replaying the move.
    """
    src = cat.entries[e.source]
    rec = e.witness
    if rec.kind == "F-add":
        res = stellar_add(src, rec.face)
    elif rec.kind == "F-remove":
        res = stellar_remove(src, rec.witness)
    elif rec.kind == "I-remove":
        res = i_remove(src, rec.witness)
    else:
        res = i_add(src, rec.witness)
    if res is None or canonical_form(res[0]) != cat.keys[e.target]:
        return False
    if independent and rec.kind.startswith("I"):
        small, big = sorted((cat.entries[e.a], cat.entries[e.b]), key=lambda p: p.nverts)
        return embed_subset(small, big) is not None
    return True


def _component_of(g: EquivGraph, i: int) -> list:
    return next(c for c in components(g) if i in c)


def is_f_isolated(p, cat: Catalog) -> bool:
    """True iff no F-move leads from p to another smooth Fano polytope.

    F-moves come in inverse pairs, so p has a singleton F-class exactly
    when it has no F-neighbour at all.
    """
    cat.require(p)
    return not f_neighbors(p)


def is_i_isolated(p, cat: Catalog) -> bool:
    return not cat.i_neighbor_ids(p)


is_F_isolated = is_f_isolated
is_I_isolated = is_i_isolated


@dataclass
class ClassReport:
    relation: str
    n_components: int
    sizes: list
    base_size: int
    outside_by_nverts: dict
    isolated: list
    dim: Optional[int] = None

    @property
    def outside_total(self) -> int:
        return sum(self.outside_by_nverts.values())

    def as_dict(self) -> dict:
        return {"relation": self.relation, "components": self.n_components,
                "sizes": self.sizes, "base_component_size": self.base_size,
                "outside_base_by_nverts": {str(k): v for k, v in sorted(self.outside_by_nverts.items())},
                "outside_base_total": self.outside_total, "isolated": self.isolated}

    def __str__(self):
        lines = [f"relation: {self.relation}",
                 f"components: {self.n_components}",
                 f"component sizes: {' '.join(map(str, self.sizes))}",
                 f"component of T^n: {self.base_size}",
                 f"outside the component of T^n: {self.outside_total}"]
        for m, c in sorted(self.outside_by_nverts.items()):
            lines.append(f"  {m} vertices: {c}")
        lines.append(f"isolated: {len(self.isolated)}"
                     + (f" ({' '.join(map(str, self.isolated))})" if self.isolated else ""))
        return "\n".join(lines)


def report(g: EquivGraph, base: Optional[int] = None) -> ClassReport:
    """Aggregates of the graph.  ``base`` is the node of T^n; by default it
    is the unique node with the fewest vertices."""
    comps = components(g)
    if base is None and len(g):
        least = min(g.nverts)
        cands = [i for i, m in enumerate(g.nverts) if m == least]
        base = cands[0] if len(cands) == 1 else None
    base_comp = set(_component_of(g, base)) if base is not None else set()
    outside = Counter(g.nverts[i] for i in range(len(g)) if i not in base_comp)
    iso = [c[0] for c in comps if len(c) == 1]
    return ClassReport(g.relation, len(comps), sorted((len(c) for c in comps), reverse=True),
                       len(base_comp), dict(outside), iso)


def base_node(cat: Catalog) -> Optional[int]:
    return cat.find(make_T(cat.dim))


def export_dot(g: EquivGraph) -> str:
    """Graphviz text; one cluster per vertex count, undirected edges."""
    out = [f"digraph {g.relation}_equivalence {{", "  edge [dir=none];"]
    for m in sorted(set(g.nverts)):
        out.append(f"  subgraph cluster_v{m} {{")
        out.append(f'    label="{m} vertices";')
        for i in range(len(g)):
            if g.nverts[i] == m:
                lab = g.labels[i] if g.labels else str(i)
                out.append(f'    n{i} [label="{lab}"];')
        out.append("  }")
    for e in g.sorted_edges():
        out.append(f'  n{e.a} -> n{e.b} [tooltip="{e.witness}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def export_json(g: EquivGraph) -> str:
    """Schema: ``{relation, nodes: [{id, key, nverts}], edges: [{a, b, witness, source}]}``.

    ``source`` says which endpoint the witness move starts from.
    """
    doc = {
        "relation": g.relation,
        "nodes": [{"id": i, "key": key_to_string(k), "nverts": m}
                  for i, (k, m) in enumerate(zip(g.keys, g.nverts))],
        "edges": [{"a": e.a, "b": e.b, "witness": str(e.witness), "source": e.source}
                  for e in g.sorted_edges()],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def graph_from_json(text: str) -> EquivGraph:
    doc = json.loads(text)
    nodes = sorted(doc["nodes"], key=lambda d: d["id"])
    if [d["id"] for d in nodes] != list(range(len(nodes))):
        raise DomainError("node ids must be 0..N-1")
    g = EquivGraph(doc["relation"], [key_from_string(d["key"]) for d in nodes],
                   [d["nverts"] for d in nodes])
    for e in doc["edges"]:
        src = e.get("source", e["a"])
        g.add(src, e["b"] if src == e["a"] else e["a"], MoveRecord.parse(e["witness"]))
    return g
