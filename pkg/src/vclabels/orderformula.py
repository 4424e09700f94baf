"""Quantifier-free order formulas in one object variable x with parameters y1..yn.

Formulas are evaluated over a position grid standing in for a dense linear
order: ground element j sits at position 2*j, and parameter tuples range
over enough rational positions to realize every order type of strictly
increasing parameters relative to the ground (including equality with
ground points).  Only that order type can influence the truth of a
quantifier-free order formula at a ground point.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .labelcalc import is_characterized_by
from .setsystem import (
    Label,
    Mask,
    SetSystem,
    SizeGuardError,
    forbidden_label,
    mask_from_indices,
    phi_bound,
)

TRACE_GROUND_CAP = 12
TRACE_ARITY_CAP = 6


class FormulaSyntaxError(ValueError):
    """Formula text that does not match the grammar, with the position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class ExtractionFailedError(RuntimeError):
    """No forbidden label is consistent with the enumerated trace families."""


@dataclass(frozen=True)
class Top:
    """Constant truth; written x=x."""


@dataclass(frozen=True)
class Bottom:
    """Constant falsehood; written x!=x."""


@dataclass(frozen=True)
class Compare:
    """Atom relating x to the parameter y{index}."""

    rel: str
    index: int


@dataclass(frozen=True)
class Not:
    child: "FormulaAst"


@dataclass(frozen=True)
class And:
    left: "FormulaAst"
    right: "FormulaAst"


@dataclass(frozen=True)
class Or:
    left: "FormulaAst"
    right: "FormulaAst"


FormulaAst = Top | Bottom | Compare | Not | And | Or

_REL_FUNCS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    "!=": operator.ne,
    ">=": operator.ge,
    ">": operator.gt,
}
# x rel x collapses to a truth constant at parse time.
_REFLEXIVE_TRUE = {"=", "<=", ">="}


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "x":
            tokens.append(("x", "x", i))
            i += 1
            continue
        if ch == "y":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise FormulaSyntaxError("parameter needs digits after 'y'", i)
            index = int(text[i + 1 : j])
            if index < 1:
                raise FormulaSyntaxError("parameter index must be >= 1", i)
            tokens.append(("param", index, i))
            i = j
            continue
        if text[i : i + 2] in ("<=", ">=", "!="):
            tokens.append(("rel", text[i : i + 2], i))
            i += 2
            continue
        if ch in "<>=":
            tokens.append(("rel", ch, i))
            i += 1
            continue
        if ch == "!":
            tokens.append(("not", ch, i))
            i += 1
            continue
        if ch == "&":
            tokens.append(("and", ch, i))
            i += 1
            continue
        if ch == "|":
            tokens.append(("or", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(("rparen", ch, i))
            i += 1
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> FormulaAst:
        node = self._disjunction()
        kind, _, position = self.peek()
        if kind != "end":
            raise FormulaSyntaxError("unexpected trailing input", position)
        return node

    def _disjunction(self) -> FormulaAst:
        node = self._conjunction()
        while self.peek()[0] == "or":
            self.take()
            node = Or(node, self._conjunction())
        return node

    def _conjunction(self) -> FormulaAst:
        node = self._literal()
        while self.peek()[0] == "and":
            self.take()
            node = And(node, self._literal())
        return node

    def _literal(self) -> FormulaAst:
        kind, _, position = self.peek()
        if kind == "not":
            self.take()
            return Not(self._literal())
        if kind == "lparen":
            self.take()
            node = self._disjunction()
            kind, _, position = self.take()
            if kind != "rparen":
                raise FormulaSyntaxError("expected ')'", position)
            return node
        return self._atom()

    def _atom(self) -> FormulaAst:
        kind, _, position = self.take()
        if kind != "x":
            raise FormulaSyntaxError("expected 'x'", position)
        kind, rel, position = self.take()
        if kind != "rel":
            raise FormulaSyntaxError("expected a relation after 'x'", position)
        kind, value, position = self.take()
        if kind == "x":
            return Top() if rel in _REFLEXIVE_TRUE else Bottom()
        if kind == "param":
            return Compare(rel, value)
        raise FormulaSyntaxError("expected 'x' or a parameter after the relation", position)


def parse_formula(text: str) -> FormulaAst:
    """Parse formula text.

    Grammar: disjunctions of conjunctions of literals; a literal is ``!``
    applied to a literal, a parenthesized formula, or an atom ``x REL y<k>``
    with REL one of < <= = != >= >; ``x=x`` is truth and ``x!=x`` falsehood.
    """
    return _Parser(_tokenize(text)).parse()


_PRECEDENCE = {Or: 1, And: 2}


def _format(node: FormulaAst, parent_precedence: int) -> str:
    if isinstance(node, Top):
        return "x=x"
    if isinstance(node, Bottom):
        return "x!=x"
    if isinstance(node, Compare):
        return f"x{node.rel}y{node.index}"
    if isinstance(node, Not):
        child = node.child
        body = _format(child, 3)
        if isinstance(child, (And, Or)):
            body = f"({body})"
        return f"!{body}"
    symbol = "&" if isinstance(node, And) else "|"
    own = _PRECEDENCE[type(node)]
    left = _format(node.left, own)
    right = _format(node.right, own + 1)
    text = f"{left} {symbol} {right}"
    if own < parent_precedence:
        return f"({text})"
    return text


def format_formula(ast: FormulaAst) -> str:
    """Deterministic text form; parse_formula(format_formula(ast)) == ast."""
    return _format(ast, 0)


@lru_cache(maxsize=None)
def formula_arity(ast: FormulaAst) -> int:
    """Largest parameter index used; 0 for constant formulas."""
    if isinstance(ast, Compare):
        return ast.index
    if isinstance(ast, Not):
        return formula_arity(ast.child)
    if isinstance(ast, (And, Or)):
        return max(formula_arity(ast.left), formula_arity(ast.right))
    return 0


@lru_cache(maxsize=None)
def _compiled(ast: FormulaAst):
    if isinstance(ast, Top):
        return lambda x, params: True
    if isinstance(ast, Bottom):
        return lambda x, params: False
    if isinstance(ast, Compare):
        op = _REL_FUNCS[ast.rel]
        i = ast.index - 1
        return lambda x, params: op(x, params[i])
    if isinstance(ast, Not):
        f = _compiled(ast.child)
        return lambda x, params: not f(x, params)
    if isinstance(ast, And):
        f, g = _compiled(ast.left), _compiled(ast.right)
        return lambda x, params: f(x, params) and g(x, params)
    f, g = _compiled(ast.left), _compiled(ast.right)
    return lambda x, params: f(x, params) or g(x, params)


def eval_formula(ast: FormulaAst, x_position, params: Sequence) -> bool:
    """Truth of the formula at x_position under the given parameter positions."""
    params = tuple(params)
    needed = formula_arity(ast)
    if len(params) < needed:
        raise ValueError(f"formula uses y{needed} but only {len(params)} parameters given")
    return _compiled(ast)(x_position, params)


def cof(ast: FormulaAst, n: int) -> int:
    """Truth value of the formula at a point above n increasing parameters."""
    if n < formula_arity(ast):
        raise ValueError(f"declared arity {n} is below the formula arity")
    params = tuple(2 * i for i in range(n))
    return 1 if _compiled(ast)(2 * n, params) else 0


@dataclass(frozen=True)
class PositionGrid:
    """Finite stand-in for a dense order: ground element j at position 2*j.

    Single parameters range over the integers in [-1, 2m-1], one per order
    type.  Larger tuples are refined with extra integers past both ends and
    fractional points inside interior gaps, so that any number of
    parameters can share a region while staying strictly increasing.
    """

    ground_size: int

    def ground_position(self, j: int) -> int:
        if not 0 <= j < self.ground_size:
            raise ValueError(f"ground index {j} out of range")
        return 2 * j

    def ground_positions(self) -> tuple[int, ...]:
        return tuple(2 * j for j in range(self.ground_size))

    def base_candidates(self) -> tuple[int, ...]:
        """One integer candidate per single-parameter order type."""
        return tuple(range(-1, 2 * self.ground_size))

    def parameter_tuples(self, n: int) -> Iterator[tuple]:
        """All strictly increasing n-tuples, one per parameter order type.

        Regions are indexed by slots: even slots are the open regions
        (below, the gaps, above) and may hold several parameters; odd slots
        are the ground points themselves and hold at most one.
        """
        if n < 0:
            raise ValueError("tuple length must be nonnegative")
        m = self.ground_size
        if n == 0:
            yield ()
            return
        if m == 0:
            yield tuple(range(1, n + 1))
            return
        nslots = 2 * m + 1
        for combo in itertools.combinations_with_replacement(range(nslots), n):
            if any(
                slot % 2 == 1 and count > 1
                for slot, count in _slot_counts(combo)
            ):
                continue
            positions: list = []
            for slot, count in _slot_counts(combo):
                if slot % 2 == 1:
                    positions.append(2 * (slot // 2))
                elif slot == 0:
                    positions.extend(range(-count, 0))
                elif slot == nslots - 1:
                    positions.extend(2 * m - 2 + i for i in range(1, count + 1))
                elif count == 1:
                    positions.append(slot - 1)
                else:
                    left = slot - 2
                    positions.extend(
                        left + Fraction(2 * i, count + 1) for i in range(1, count + 1)
                    )
            yield tuple(positions)

    def arbitrary_tuples(self, n: int) -> Iterator[tuple]:
        """All n-tuples (repeats and any order), one per order-type profile.

        Without the increasing constraint each parameter's region can be
        chosen independently, so one integer representative per region
        suffices.
        """
        if n < 0:
            raise ValueError("tuple length must be nonnegative")
        yield from itertools.product(self.base_candidates(), repeat=n)


def _slot_counts(combo):
    for slot, group in itertools.groupby(combo):
        yield slot, sum(1 for _ in group)


def _check_trace_guards(ast: FormulaAst, n: int, m: int) -> None:
    if m < 0 or n < 0:
        raise ValueError("ground size and arity must be nonnegative")
    if m > TRACE_GROUND_CAP:
        raise SizeGuardError(f"ground size {m} exceeds cap {TRACE_GROUND_CAP}")
    if n > TRACE_ARITY_CAP:
        raise SizeGuardError(f"arity {n} exceeds cap {TRACE_ARITY_CAP}")
    if formula_arity(ast) > n:
        raise ValueError(
            f"formula uses y{formula_arity(ast)} but declared arity is {n}"
        )


def iter_ordered_traces(ast: FormulaAst, n: int, m: int) -> Iterator[Mask]:
    """Ground trace for each increasing parameter tuple (repeats possible)."""
    _check_trace_guards(ast, n, m)
    fn = _compiled(ast)
    xs = tuple(2 * j for j in range(m))
    for params in PositionGrid(m).parameter_tuples(n):
        yield tuple(1 if fn(x, params) else 0 for x in xs)


def ordered_trace_family(
    ast: FormulaAst, n: int, m: int, *, increasing: bool = True
) -> SetSystem:
    """Family of ground traces of the formula with n ordered parameters.

    With ``increasing=False`` the parameters range over arbitrary tuples
    instead (kept for experimentation; nothing downstream uses it).
    """
    _check_trace_guards(ast, n, m)
    if increasing:
        return SetSystem.from_masks(m, iter_ordered_traces(ast, n, m))
    fn = _compiled(ast)
    xs = tuple(2 * j for j in range(m))
    masks = {
        tuple(1 if fn(x, params) else 0 for x in xs)
        for params in PositionGrid(m).arbitrary_tuples(n)
    }
    return SetSystem.from_masks(m, masks)


def label_of_formula(ast: FormulaAst, n: int | None = None) -> Label:
    """Extract the forbidden label characterizing the ordered trace family.

    Enumerates the family on a ground of n+3 points, identifies the
    dimension from the family size, reads the label off the leftmost
    (d+1)-subset, and verifies the candidate by comparing the full families
    on grounds of n+3 and n+4 points.
    """
    if n is None:
        n = formula_arity(ast)
    if n < formula_arity(ast):
        raise ValueError(f"declared arity {n} is below the formula arity")
    m = n + 3
    family = ordered_trace_family(ast, n, m)
    count = len(family.members)
    d = next((k for k in range(m + 1) if phi_bound(k, m) == count), None)
    if d is None or d + 1 > m:
        raise ExtractionFailedError(
            f"family size {count} matches no dimension on ground {m}"
        )
    try:
        eta = forbidden_label(family, mask_from_indices(m, range(d + 1)))
    except ValueError as exc:
        raise ExtractionFailedError(str(exc)) from exc
    for check_m in (m, m + 1):
        if not is_characterized_by(ordered_trace_family(ast, n, check_m), eta):
            raise ExtractionFailedError(
                f"candidate label {eta} fails verification on ground {check_m}"
            )
    return eta
