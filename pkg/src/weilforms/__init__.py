"""weilforms: nilpotent-infinitesimal arithmetic and microcube differential forms.

The package computes in finite-dimensional Weil algebras (quotients of
polynomial rings by monomial ideals), prolongs smooth maps of R^m over
them, and realizes the exterior derivative geometrically as an
alternating sum over the faces of infinitesimal cubes, checked against a
classical symbolic oracle.
"""

from .algebra import (
    InfinitesimalPresentation,
    MorphismError,
    WeilAlgebra,
    WeilElement,
    WeilMorphism,
    algebra_for,
    combine_morphisms,
    compose_morphisms,
    d_order,
    d_pairwise,
    d_power,
    identity_morphism,
    make_morphism,
    make_weil_algebra,
    oplus,
    tensor,
    tensor_presentation,
)
from .expr import (
    Add,
    Call,
    Const,
    Div,
    Expression,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    differentiate,
    eval_real,
    substitute,
    to_text,
    variables,
)
from .forms import (
    ClassicalForm,
    HomogeneityError,
    MicrocubeForm,
    boundary_integral,
    classical_to_microcube,
    d0,
    exterior_derivative,
    homogeneity_residual,
    integral,
    is_n_homogeneous,
    microcube_to_classical,
    stokes_sum,
)
from .microcube import Microcube, embed_restriction
from .oracle import (
    CheckReport,
    classical_d,
    finite_difference_d,
    run_suite,
    vector_calculus_views,
)
from .parser import ParseError, parse_expression
from .prolongation import (
    WeilPoint,
    canonical_point,
    eval_over_weil,
    kock_lawvere_split,
    naturality_check,
    prolong_map,
)

__version__ = "0.1.0"
