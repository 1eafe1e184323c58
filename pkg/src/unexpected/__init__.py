"""Detection and certification of unexpected hypersurfaces for finite point sets."""

__version__ = "0.1.0"

from .detector import DetectConfig, DetectionCell, UnexpectedForm, build_condition_matrix, detect, extract_form, search
from .duality import bmss_check, base_locus_check, diagonal_multiplicity, swap_relation, tangent_cone
from .field import QQ, QQ_GOLDEN, QQ_OMEGA, QQ_SQRT5, FieldScalar, FieldSpec
from .lefschetz import PowerIdealSpec, equivalence_test, expected_count_f, multiplication_map_rank, slp_check
from .pointsets import PointSet, ProjectivePoint, fermat_supersolvable_duals, root_system, twisted_cubic_points
from .poly import SparsePoly

__all__ = [
    "DetectConfig", "DetectionCell", "UnexpectedForm", "build_condition_matrix", "detect", "extract_form", "search",
    "bmss_check", "base_locus_check", "diagonal_multiplicity", "swap_relation", "tangent_cone",
    "QQ", "QQ_GOLDEN", "QQ_OMEGA", "QQ_SQRT5", "FieldScalar", "FieldSpec",
    "PowerIdealSpec", "equivalence_test", "expected_count_f", "multiplication_map_rank", "slp_check",
    "PointSet", "ProjectivePoint", "fermat_supersolvable_duals", "root_system", "twisted_cubic_points",
    "SparsePoly",
]
