"""Exact computations with smooth Fano polytopes.

F-moves and I-moves, primitive relations, equivalence classes over complete
catalogs and the I-isolated families.
"""

__version__ = "0.1.0"

from .errors import (CatalogIncompleteError, CatalogParseError, CatalogValidationError,
                     DimensionError, DomainError, InconsistencyError, NonVertexError,
                     NotSmoothFanoError, OriginNotInteriorError, PreconditionError,
                     SmoothFanoError)
from .lattice import UnimodularMap, hermite_normal_form, is_unimodular_basis, solve_integral
from .polytope import (LatticePolytope, are_unimodularly_equivalent, canonical_form, embed_subset,
                       facets, free_sum, is_pseudo_symmetric, is_reflexive, is_simplicial,
                       is_smooth_fano, normal_form_polytope)
from .constructions import (FamilyParams, isolated_params, make_family, make_isolated_pic3,
                            make_remark_example_7d, make_T, make_V, make_V_tilde)
from .primitive import (PrimitiveCollection, SimplicialCompleteFan, check_fano_by_degrees,
                        classify_pic2, classify_pic3, locate_in_fan, match_family_pattern,
                        match_isolated_pattern, primitive_collections)
from .moves import (MoveRecord, f_neighbors, i_add, i_addition_search, i_neighbors_in_catalog,
                    i_remove, i_removal_neighbors, stellar_add, stellar_remove)
from .catalog import Catalog, enumerate_low_dim, load_bundled, parse_catalog, serialize_catalog
from .classes import (ClassReport, EquivGraph, build_graph, components, export_dot, export_json,
                      is_f_isolated, is_i_isolated, report)
