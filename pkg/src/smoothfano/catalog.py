"""Catalogs of smooth Fano polytopes: text format, lookup and enumeration.

File format (UTF-8, LF)::

    # comments start with '#'
    dim 2 vertices 3 id 1
    1 0
    0 1
    -1 -1

    dim 2 vertices 4 id 2
    ...

Records are separated by blank lines; ``id K`` is optional.
"""

from __future__ import annotations

import io
import logging
import os
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional, TextIO, Union

from .constructions import make_T
from .errors import (CatalogIncompleteError, CatalogParseError, CatalogValidationError,
                     DomainError, PreconditionError)
from .moves import i_addition_search, i_removal_neighbors
from .polytope import LatticePolytope, canonical_form, is_smooth_fano, normal_form_polytope

log = logging.getLogger(__name__)


@dataclass
class Catalog:
    """Unimodular class representatives of one dimension.

    Node ids used throughout the package are positions in ``entries``;
    ``ids`` keeps external identifiers (None when absent).
    """

    dim: int
    entries: list
    keys: list = field(default_factory=list)
    ids: list = field(default_factory=list)

    def __post_init__(self):
        if not self.keys:
            self.keys = [canonical_form(p) for p in self.entries]
        if not self.ids:
            self.ids = [None] * len(self.entries)
        if not len(self.entries) == len(self.keys) == len(self.ids):
            raise DomainError("entries, keys and ids must have equal length")
        self._where = {}
        for i, k in enumerate(self.keys):
            if k in self._where:
                raise DomainError(f"entries {self._where[k]} and {i} are equivalent")
            self._where[k] = i
        self._removals = None

    def __len__(self):
        return len(self.entries)

    def find(self, p) -> Optional[int]:
        """Node id of the class of p, or None."""
        return self._where.get(canonical_form(p))

    def require(self, p) -> int:
        i = self.find(p)
        if i is None:
            raise PreconditionError("polytope is not in the catalog")
        return i

    def label(self, i: int) -> str:
        return str(self.ids[i]) if self.ids[i] is not None else f"#{i}"

    def nverts(self, i: int) -> int:
        return self.entries[i].nverts

    def removal_links(self) -> list:
        """Per node, the list of (smaller node id, I-remove record).

        Raises CatalogIncompleteError if a removal leaves the catalog.
        """
        if self._removals is None:
            links = []
            for i, p in enumerate(self.entries):
                row = []
                for q, rec in i_removal_neighbors(p):
                    j = self.find(q)
                    if j is None:
                        raise CatalogIncompleteError(
                            f"removing {rec.witness} from {self.label(i)} gives a polytope missing "
                            "from the catalog")
                    row.append((j, rec))
                links.append(row)
            self._removals = links
        return self._removals

    def i_neighbor_ids(self, p) -> list:
        """Sorted ids one I-move away from p.

        An I-add from p to q is the same thing as an I-remove from q to p,
        so removals from every entry give all edges.
        """
        i = self.require(p)
        links = self.removal_links()
        out = {j for j, _ in links[i]}
        out.update(j for j, row in enumerate(links) if any(k == i for k, _ in row))
        return sorted(out)

    def sorted(self) -> "Catalog":
        order = sorted(range(len(self)), key=lambda i: (self.entries[i].nverts, self.keys[i]))
        return Catalog(self.dim, [self.entries[i] for i in order],
                       [self.keys[i] for i in order], [self.ids[i] for i in order])


def _open_text(source) -> tuple:
    if isinstance(source, (str, os.PathLike)):
        return open(source, encoding="utf-8"), True
    return source, False


def parse_catalog(source: Union[str, os.PathLike, TextIO], validate: bool = True) -> Catalog:
    """Read a catalog file or stream; duplicate classes keep the first record."""
    fh, close = _open_text(source)
    try:
        lines = fh.read().split("\n")
    finally:
        if close:
            fh.close()
    records = []
    pos = 0
    while pos < len(lines):
        text = lines[pos].split("#", 1)[0].strip()
        pos += 1
        if not text:
            continue
        head_line = pos
        tok = text.split()
        if len(tok) not in (4, 6) or tok[0] != "dim" or tok[2] != "vertices" or (
                len(tok) == 6 and tok[4] != "id"):
            raise CatalogParseError(f"expected 'dim n vertices m [id K]', got {text!r}", head_line)
        try:
            n, m = int(tok[1]), int(tok[3])
        except ValueError:
            raise CatalogParseError("dimension and vertex count must be integers", head_line) from None
        if n < 1 or m < n + 1:
            raise CatalogParseError(f"impossible sizes dim {n}, {m} vertices", head_line)
        ident = tok[5] if len(tok) == 6 else None
        verts = []
        while len(verts) < m:
            if pos >= len(lines):
                raise CatalogParseError(f"record ends after {len(verts)} of {m} vertices", pos)
            row = lines[pos].split("#", 1)[0].split()
            pos += 1
            if not row:
                raise CatalogParseError(f"record ends after {len(verts)} of {m} vertices", pos)
            if len(row) != n:
                raise CatalogParseError(f"expected {n} integers, got {len(row)}", pos)
            try:
                v = tuple(int(x) for x in row)
            except ValueError:
                raise CatalogParseError(f"non-integer entry in {' '.join(row)!r}", pos) from None
            if v in verts:
                raise CatalogParseError(f"repeated vertex {v}", pos)
            verts.append(v)
        records.append((head_line, n, ident, verts))
    if not records:
        raise CatalogParseError("no records")
    dims = {r[1] for r in records}
    if len(dims) != 1:
        raise CatalogParseError(f"records of several dimensions {sorted(dims)}")
    entries, keys, ids, seen = [], [], [], set()
    for line, n, ident, verts in records:
        p = LatticePolytope(verts)
        if validate and not is_smooth_fano(p):
            name = f"id {ident}" if ident is not None else f"record at line {line}"
            raise CatalogValidationError(f"{name} is not a smooth Fano polytope")
        k = canonical_form(p)
        if k in seen:
            log.info("dropping duplicate class at line %d", line)
            continue
        seen.add(k)
        entries.append(p)
        keys.append(k)
        ids.append(ident)
    return Catalog(dims.pop(), entries, keys, ids)


def format_polytope(p: LatticePolytope, ident=None) -> str:
    head = f"dim {p.dim} vertices {p.nverts}"
    if ident is not None:
        head += f" id {ident}"
    return "\n".join([head] + [" ".join(map(str, v)) for v in p.vertices]) + "\n"


def serialize_catalog(cat: Catalog, out: Optional[TextIO] = None) -> str:
    """Catalog text, records sorted by (vertex count, canonical key)."""
    s = cat.sorted()
    text = "\n".join(format_polytope(p, i) for p, i in zip(s.entries, s.ids))
    if out is not None:
        out.write(text)
    return text


def read_polytope(source) -> LatticePolytope:
    """A single record (catalog format) or bare rows of integers."""
    fh, close = _open_text(source)
    try:
        text = fh.read()
    finally:
        if close:
            fh.close()
    first = next((ln.split("#", 1)[0].strip() for ln in text.split("\n")
                  if ln.split("#", 1)[0].strip()), "")
    if first.startswith("dim"):
        cat = parse_catalog(io.StringIO(text), validate=False)
        if len(cat) != 1:
            raise CatalogParseError(f"expected one polytope, found {len(cat)}")
        return cat.entries[0]
    verts = []
    for lineno, ln in enumerate(text.split("\n"), start=1):
        row = ln.split("#", 1)[0].split()
        if not row:
            continue
        try:
            v = tuple(int(x) for x in row)
        except ValueError:
            raise CatalogParseError(f"non-integer entry in {ln.strip()!r}", lineno) from None
        if verts and len(v) != len(verts[0]):
            raise CatalogParseError(f"expected {len(verts[0])} integers, got {len(v)}", lineno)
        if v in verts:
            raise CatalogParseError(f"repeated vertex {v}", lineno)
        verts.append(v)
    if not verts:
        raise CatalogParseError("no vertices")
    return LatticePolytope(verts)


def bundled_dims() -> list:
    names = [r.name for r in resources.files("smoothfano.data").iterdir()]
    return sorted(int(n[4:-4]) for n in names if n.startswith("fano") and n.endswith(".txt"))


def load_bundled(n: int) -> Catalog:
    """Ship-with-the-package catalog of smooth Fano n-polytopes (n = 2..5)."""
    path = resources.files("smoothfano.data") / f"fano{n}.txt"
    if not path.is_file():
        raise DomainError(f"no bundled catalog for dimension {n}")
    with path.open(encoding="utf-8") as fh:
        return parse_catalog(fh, validate=False)


def i_closure(seeds: Iterable[LatticePolytope], bound: int) -> Catalog:
    """Breadth-first closure of the seeds under I-removals and I-additions
    with new vertices in [-bound, bound]^n.  Entries are normal forms."""
    seeds = list(seeds)
    dim = seeds[0].dim
    found = {}
    queue = deque()
    for s in seeds:
        q = normal_form_polytope(s)
        k = canonical_form(q)
        if k not in found:
            found[k] = q
            queue.append(q)
    done = 0
    while queue:
        p = queue.popleft()
        done += 1
        for q, _ in i_removal_neighbors(p) + i_addition_search(p, bound):
            q = normal_form_polytope(q)
            k = canonical_form(q)
            if k not in found:
                found[k] = q
                queue.append(q)
        if done % 100 == 0:
            log.info("closure dim %d bound %d: %d done, %d found", dim, bound, done, len(found))
    return Catalog(dim, list(found.values()), list(found)).sorted()


def enumerate_low_dim(n: int, bound: Optional[int] = None) -> Catalog:
    """I-closure of T^n.

    With an explicit bound the closure uses that box only (an undercount is
    possible when the bound is too small).  With ``bound=None`` the box
    starts at n - 1 and grows by 1 until two consecutive boxes give the same
    number of classes.
    """
    if n < 1:
        raise DomainError("dimension must be positive")
    if bound is not None:
        if bound < 1:
            raise DomainError("the box bound must be at least 1")
        return i_closure([make_T(n)], bound)
    return enumerate_with_escalation(n)[0]


def enumerate_with_escalation(n: int, start: Optional[int] = None) -> tuple:
    """Returns ``(catalog, [(bound, count), ...])``."""
    b = max(1, n - 1 if start is None else start)
    history = []
    prev = None
    while True:
        cat = i_closure([make_T(n)], b)
        history.append((b, len(cat)))
        log.info("dim %d bound %d: %d classes", n, b, len(cat))
        if prev is not None and len(cat) == len(prev):
            return prev, history
        prev = cat
        b += 1
