"""Forbidden-label calculus for maximum families on ordered grounds."""

from .setsystem import (
    Classification,
    EmptyFamilyError,
    GroundMismatchError,
    Label,
    Mask,
    NotLocallyMaximumError,
    SetSystem,
    SizeGuardError,
    alternation_number,
    classify,
    forbidden_label,
    mask_from_indices,
    mask_indices,
    phi_bound,
    shatters,
    trace,
    vc_dim,
)
from .labelcalc import (
    PreconditionViolatedError,
    avoid_family,
    complement_label,
    extend_avoiding,
    format_label,
    induces,
    induces_within,
    is_characterized_by,
    parse_label,
    similar,
)
from .orderformula import (
    And,
    Bottom,
    Compare,
    ExtractionFailedError,
    FormulaAst,
    FormulaSyntaxError,
    Not,
    Or,
    PositionGrid,
    Top,
    cof,
    eval_formula,
    format_formula,
    formula_arity,
    label_of_formula,
    ordered_trace_family,
    parse_formula,
)
from .labelcompiler import (
    Interval,
    IntervalExpr,
    MalformedExpressionError,
    Point,
    compile_label,
    format_expr,
    from_interval_expr,
    parse_expr,
    realize_expr,
    to_interval_expr,
)
from .harness import (
    IctTensor,
    IctWitness,
    NotMaximumError,
    PairXorReport,
    UnverifiedTensorError,
    build_ict_tensor,
    ict_witness_family,
    ramsey_homogenize,
    verify_ict,
    verify_pair_xor,
    xor_pair_family,
)

__all__ = [name for name in dir() if not name.startswith("_")]
