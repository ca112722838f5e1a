"""GF(2) chain complexes computing equivariant bordism of (Z_2)^n actions."""

from ._core import (
    check,
    class_counts,
    constants,
    dimension_formula,
    dual,
    f_count,
    faithful_reps,
    gf2_rank,
    link_count,
    spectral_page,
    total_homology,
    universal_homology,
    verify,
)

__all__ = [
    "check",
    "class_counts",
    "constants",
    "dimension_formula",
    "dual",
    "f_count",
    "faithful_reps",
    "gf2_rank",
    "link_count",
    "spectral_page",
    "total_homology",
    "universal_homology",
    "verify",
]
