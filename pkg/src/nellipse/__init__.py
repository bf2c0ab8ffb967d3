"""Exact-arithmetic engine for n-ellipses and signed distance-sum loci."""

__version__ = "0.1.0"

from .locus import (
    DegenerateSceneError,
    LocusResult,
    Scene,
    classify_point,
    closure_poly,
    color_of,
    elimination_oracle,
    sign_product,
    sign_vectors,
    signed_sum,
    squared_distance_poly,
)
from .numeric import (
    InvalidRationalError,
    MixedRadicandError,
    QuadraticNumber,
    RadicandError,
    quad_make,
    rat_format,
    rat_make,
    rat_parse,
)
from .poly import (
    CanonicalForm,
    MultiPoly,
    NotDivisibleError,
    UnboundVariableError,
    exact_div,
    poly_canonical,
    poly_gcd,
    poly_resultant,
    poly_text,
    squarefree_part,
)
from .scenes import PRESETS, SceneParseError, parse_scene, scene_to_json

__all__ = [
    "CanonicalForm",
    "DegenerateSceneError",
    "InvalidRationalError",
    "LocusResult",
    "MixedRadicandError",
    "MultiPoly",
    "NotDivisibleError",
    "PRESETS",
    "QuadraticNumber",
    "RadicandError",
    "Scene",
    "SceneParseError",
    "UnboundVariableError",
    "classify_point",
    "closure_poly",
    "color_of",
    "elimination_oracle",
    "exact_div",
    "parse_scene",
    "poly_canonical",
    "poly_gcd",
    "poly_resultant",
    "poly_text",
    "quad_make",
    "rat_format",
    "rat_make",
    "rat_parse",
    "scene_to_json",
    "sign_product",
    "sign_vectors",
    "signed_sum",
    "squared_distance_poly",
    "squarefree_part",
    "__version__",
]
