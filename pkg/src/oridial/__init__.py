"""Exact-arithmetic engine for oriented dialgebras.

Computes tree-indexed dialgebra cohomology, the equivariant bicomplex of a
finite oriented group action, singular extensions classified by degree-1
classes, and truncated one-parameter formal deformations.  All arithmetic
is exact over the rationals.
"""

from .cohomology import (
    Cochain,
    BicochainElement,
    TotalDegreeElement,
    EngineConfig,
    act_on_cochain,
    delta_matrix,
    dialgebra_cohomology,
    equivariant_cohomology,
    horizontal_differential,
    is_degree1_cocycle,
    vertical_differential,
)
from .deformations import (
    DeformationEquivalence,
    TruncatedDeformation,
    check_deformation,
    check_equivalence,
    infinitesimal,
    infinitesimals_cohomologous,
    rigidity_probe,
    transport_constant,
    transport_deformation,
)
from .dialgebra import (
    Dialgebra,
    check_axioms,
    from_associative,
    from_bimodule_map,
    from_differential,
    is_morphism,
)
from .extensions import (
    SingularExtension,
    build_extension,
    canonical_section,
    check_extension,
    cocycles_cohomologous,
    extract_cocycle,
)
from .linalg import (
    Matrix,
    cohomology_dim,
    in_image,
    kernel_backend,
    nullspace,
    rank,
)
from .oriented import (
    OrientedDialgebra,
    OrientedGroup,
    check_oriented_dialgebra,
    check_oriented_group,
    orbit_action,
    sign_group,
    symmetric_group,
    trivial_group,
)
from .trees import (
    LEAF,
    LeafOrientation,
    Tree,
    catalan,
    degeneracy,
    enumerate_trees,
    face,
    graft,
    leaf_orientation,
    tree_from_word,
)

__version__ = "0.1.0"

__all__ = [
    "BicochainElement", "Cochain", "DeformationEquivalence", "Dialgebra",
    "EngineConfig", "LEAF", "LeafOrientation", "Matrix", "OrientedDialgebra",
    "OrientedGroup", "SingularExtension", "TotalDegreeElement",
    "TruncatedDeformation", "Tree", "__version__", "act_on_cochain",
    "build_extension", "canonical_section", "catalan", "check_axioms",
    "check_deformation", "check_equivalence", "check_extension",
    "check_oriented_dialgebra", "check_oriented_group", "cocycles_cohomologous",
    "cohomology_dim", "degeneracy", "delta_matrix", "dialgebra_cohomology",
    "enumerate_trees", "equivariant_cohomology", "extract_cocycle", "face",
    "from_associative", "from_bimodule_map", "from_differential", "graft",
    "horizontal_differential", "in_image", "infinitesimal",
    "infinitesimals_cohomologous", "is_degree1_cocycle", "is_morphism",
    "kernel_backend", "leaf_orientation", "nullspace", "orbit_action", "rank",
    "rigidity_probe", "sign_group", "symmetric_group", "transport_constant",
    "transport_deformation",
    "tree_from_word", "trivial_group", "vertical_differential",
]
