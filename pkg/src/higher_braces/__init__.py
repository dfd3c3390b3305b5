"""Exact symbolic engine for higher braces built from a square-zero operator.

The package computes the commutative (Koszul) and noncommutative (Borjeson)
brace hierarchies two independent ways: from their closed formulas, and as
pullbacks of the linear homological vector field over a formal diffeomorphism
through the (co)free coalgebra.  Everything is exact rational arithmetic, so
the classical identities relating the two routes can be verified on the nose.
"""

__version__ = "0.1.0"

from .algebra import (
    COMMUTATIVE,
    NONCOMMUTATIVE,
    Expr,
    Gen,
    Nabla,
    apply_nabla,
    atom_degree,
    gen_expr,
    gens_from_parities,
    multiply,
    normalize,
    prod_exprs,
    word_degree,
    word_expr,
)
from .braces import (
    BraceFamily,
    borjeson_brace,
    borjeson_family,
    generalized_brace,
    generalized_family,
    koszul_brace,
    koszul_family,
    trivial_family,
)
from .checker import (
    VerificationReport,
    a_infinity_residual,
    check_a_infinity,
    check_l_infinity,
    l_infinity_residual,
)
from .coalgebra import (
    Block,
    CoElem,
    coderive_nabla,
    deconcatenate,
    diagonal,
    extend_morphism,
    pairing,
    project_series,
    pullback_brace,
)
from .combinatorics import compositions, koszul_sign, set_partitions, unshuffles
from .errors import (
    BracesError,
    ContractViolationError,
    InsufficientOrderError,
    SingularSeriesError,
    UsageError,
)
from .render import parse_json, render, render_json, render_latex, render_text
from .series import (
    DEFAULT_ORDER,
    FACTORIAL,
    PLAIN,
    CoefficientVector,
    TruncatedSeries,
    c_closed_form,
    c_from_series,
    compose,
    identity_series,
    invert,
    pair_coefficient,
    preset,
    random_invertible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
