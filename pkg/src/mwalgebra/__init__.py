"""Exact graph-algebra generators and Mauldin-Williams fractal geometry.

Two engines share one directed-graph core:

* a symbolic engine (``pathspace``, ``algebra``, ``correspondence``) that works
  with cylinder functions on the infinite path space and with finite linear
  combinations of monomials ``s_mu s_nu^*``, with exact rational scalars;
* a numerical engine (``ifs``) for graph-directed iterated function systems
  built from similarity maps: attractors, the coding map, surjectivity and
  Hausdorff dimension.
"""

from .scalars import QQi
from .errors import (
    CompositionError,
    ExpressionSyntaxError,
    GraphError,
    GraphMismatchError,
    ModelMismatchError,
    ResourceError,
)
from .graph import Edge, Graph, Path, ValidationReport, validate
from .pathspace import CylinderFn
from .algebra import (
    AlgebraElement,
    NormalForm,
    adjoint,
    check_intertwine,
    equals,
    monomial,
    normal_form,
    tau,
)
from .expr import parse, to_string
from .correspondence import (
    AElement,
    CorrVector,
    GeoFn,
    check_covariance,
    check_toeplitz,
    inner,
    left_act,
    pi,
    pi_geo,
    psi,
    right_act,
    toeplitz_residual_geo,
)
from .ifs import (
    AttractorApprox,
    MWSystem,
    Similarity,
    attractor,
    check_equivariance,
    check_surjectivity,
    code,
    dimension,
    validate_system,
)

__all__ = [
    "QQi",
    "CompositionError",
    "ExpressionSyntaxError",
    "GraphError",
    "GraphMismatchError",
    "ModelMismatchError",
    "ResourceError",
    "Edge",
    "Graph",
    "Path",
    "ValidationReport",
    "validate",
    "CylinderFn",
    "AlgebraElement",
    "NormalForm",
    "adjoint",
    "check_intertwine",
    "equals",
    "monomial",
    "normal_form",
    "tau",
    "parse",
    "to_string",
    "AElement",
    "CorrVector",
    "GeoFn",
    "check_covariance",
    "check_toeplitz",
    "inner",
    "left_act",
    "pi",
    "pi_geo",
    "psi",
    "right_act",
    "toeplitz_residual_geo",
    "AttractorApprox",
    "MWSystem",
    "Similarity",
    "attractor",
    "check_equivariance",
    "check_surjectivity",
    "code",
    "dimension",
    "validate_system",
]
