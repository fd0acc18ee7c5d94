"""Exact Schmidt arrangements of imaginary quadratic fields."""

from .arrangement import (
    CircleSet,
    GhostCircle,
    SeparationCertificate,
    TangencyGraph,
    Window,
    bfs_enumerate,
    circle_meets_window,
    disconnectedness_witness,
    enumerate_arrangement,
    ghost_circle,
    ghost_separation,
    parallelogram_count,
    predicted_parallelogram_count,
    tangency_graph,
    tangency_path,
)
from .circle import (
    Intersection,
    IntersectionKind,
    OrientedCircle,
    circle_from_matrix,
    classify_intersection,
    immediate_tangent_at,
    pedoe_product,
    point_on_circle,
    real_line,
    reduce_point,
    solve_bezout,
    tangency_point,
    tangent_curvatures,
    tangent_family,
    transform,
)
from .lattice import (
    Lattice2,
    PrimevalLattice,
    circle_from_residue,
    class_number,
    coprime_basis,
    enumerate_residues,
    hnf,
    is_primeval,
    kernel_size,
    lattice_of_matrix,
    matrix_for_residue,
    order_class_number,
    order_conductor,
    residue_lattice,
    unit_homothetic,
)
from .moebius import (
    ElementaryWord,
    Matrix2,
    ProjPoint,
    apply_point,
    elementary_decomposition,
    parse_matrix,
    psl2_canonical,
)
from .quadint import (
    EUCLIDEAN_DELTAS,
    Discriminant,
    QuadInt,
    euclidean_div,
    is_coprime,
    parse_quadint,
    validate_discriminant,
)

__version__ = "0.1.0"
