"""Type decomposition on finite posets, with certifiers for every claim."""

from .certificate import (Certificate, FAILS, HOLDS, HYPOTHESIS_NOT_SATISFIED,
                          SAMPLED)
from .poset import (Poset, PosetError, Undefined, bits, build_from_covers,
                    is_element, mask_of)
from .ortho import (OrthoError, Orthoposet, is_orthocomplete, is_perp_closed,
                    orthogonal, validate_ortho)
from .zstruct import (HypothesisError, InternalSearchError, ZContext,
                      ZStructError, central_cover, cover_meet_decomposition,
                      crosscheck_bidirectional, crosscheck_hull,
                      crosscheck_meet_closure, is_lower_complete_sublattice,
                      is_p_modular, is_s_central, is_z_complete, is_z_directed,
                      is_z_disjoint, is_z_modular, pseudocomplement_in_z,
                      z_disjoint_witness)
from .decompose import (SplitResult, check_cover_ideal, complementary_split,
                        decompose_join_central, decompose_join_covers)
from .relations import (FinitenessReport, Relation,
                        check_finite_elements_complete, check_weakest,
                        crosscheck_rel_meet_closure, diagonal_relation,
                        finite_characterization, finite_elements,
                        is_relation_z_complete, rel_cover_eq, rel_cover_leq,
                        rel_leq, square_context, square_poset)
from .homog import (HomogeneityWitness, HomogeneousDecomposition,
                    check_uniqueness, homogeneity_relation,
                    homogeneous_decomposition, homogeneous_orders,
                    is_order_dense, merge_same_order, attain_cover_join)
from .catalog import (CatalogEntry, catalog, fixture, gen_boolean, gen_chain,
                      gen_mo, gen_product, gen_random, random_batch)
from .textfmt import ParseError, parse_entry, serialize_entry, to_dot
from .verify import ReportDocument, run_verification, verify_entry

__version__ = "0.1.0"
