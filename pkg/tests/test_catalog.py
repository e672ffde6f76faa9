import io

import pytest

from smoothfano.catalog import (Catalog, enumerate_low_dim, enumerate_with_escalation, format_polytope,
                                load_bundled, parse_catalog, read_polytope, serialize_catalog)
from smoothfano.constructions import make_T, make_V
from smoothfano.errors import CatalogParseError, CatalogValidationError, DomainError


def test_enumerate_small():
    assert len(enumerate_low_dim(2, 1)) == 5
    assert len(enumerate_low_dim(3, 2)) == 18
    cat, hist = enumerate_with_escalation(2)
    assert hist == [(1, 5), (2, 5)] and len(cat) == 5


def test_enumerate_monotone():
    assert len(enumerate_low_dim(3, 1)) <= len(enumerate_low_dim(3, 2))


def test_round_trip():
    cat = enumerate_low_dim(2, 1)
    text = serialize_catalog(cat)
    back = parse_catalog(io.StringIO(text))
    assert len(back) == 5 and set(back.keys) == set(cat.keys)
    assert serialize_catalog(back) == text


def test_bundled_counts(cat):
    assert [len(cat(n)) for n in (2, 3, 4)] == [5, 18, 124]
    assert cat(4).ids[0] == "1"


def test_bundled_matches_enumeration(cat):
    assert set(enumerate_low_dim(3, 2).keys) == set(cat(3).keys)


def test_parse_errors():
    with pytest.raises(CatalogParseError, match="line 4"):
        parse_catalog(io.StringIO("dim 2 vertices 3\n1 0\n0 1\n1 0\n"))
    with pytest.raises(CatalogParseError, match="line 1"):
        parse_catalog(io.StringIO("dimension 2\n"))
    with pytest.raises(CatalogParseError, match="line 3"):
        parse_catalog(io.StringIO("dim 2 vertices 3\n1 0\n0 1 5\n"))
    with pytest.raises(CatalogParseError, match="ends after 2"):
        parse_catalog(io.StringIO("dim 2 vertices 3\n1 0\n0 1\n"))
    with pytest.raises(CatalogParseError):
        parse_catalog(io.StringIO(""))


def test_validation_error_names_record():
    text = "dim 2 vertices 3 id 7\n-1 -1\n2 -1\n-1 2\n"
    with pytest.raises(CatalogValidationError, match="id 7"):
        parse_catalog(io.StringIO(text))


def test_duplicates_dropped():
    a = format_polytope(make_T(2), 1)
    b = "dim 2 vertices 3 id 2\n-1 0\n0 -1\n1 1\n"
    cat = parse_catalog(io.StringIO(a + "\n" + b))
    assert len(cat) == 1 and cat.ids == ["1"]


def test_catalog_rejects_equivalent_entries():
    with pytest.raises(DomainError):
        Catalog(2, [make_T(2), make_T(2)])


def test_read_polytope_bare_rows(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("# a comment\n1 0\n0 1\n-1 -1\n")
    assert read_polytope(str(f)).vertices == make_T(2).vertices
    f.write_text(format_polytope(make_V(2)))
    assert read_polytope(str(f)).nverts == 6
