"""Exact verification of truncated planar counital cooperads with
comultiplication, their derived chain-level structure, and the induced
structure on homology."""

from .exactlinalg import (FieldSpec, BasedSpace, LinearMap, flip,
                          koszul_extend, rank_decomposition, tensor_map,
                          tensor_space)
from .cooperad import (ComultiplicationTriple, Report, TruncatedCooperad,
                       TruncationError, decompose, verify_comultiplication,
                       verify_cooperad_axioms)
from .instances import (BialgebraPresentation, FrobeniusPresentation,
                        PresentationError, build_bialgebra_cooperad,
                        build_cooperad, build_frobenius_cooperad, builtin,
                        validate_bialgebra, validate_frobenius,
                        verify_hat_duality)
from .derived import (SummedMap, cobrace, cobracket, coleibniz_homotopy,
                      cup_coproduct, degeneracy, differential, face,
                      verify_chain_identities)
from .homology import (ChainComplex, GradedSpaces, HomologyError,
                       HomologyStructure, Retraction,
                       build_homology_structure, compute_homology,
                       transfer_binary, verify_gerstenhaber)

__version__ = "0.1.0"
