"""Translation between forbidden labels, order formulas, and interval expressions.

A label compiles to a quantifier-free order formula whose ordered trace
family avoids exactly that label, and translates directly to a symbolic
point-interval expression: reading the label left to right, a leading 0
opens a ray from minus infinity, each adjacent digit pair consumes one
fresh symbol (11 an isolated point, 10 an interval start, 01 an interval
end, 00 a removed point), and a trailing 0 closes a ray at plus infinity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .labelcalc import as_label
from .orderformula import And, Bottom, Compare, FormulaAst, Or, Top, cof
from .setsystem import Label, Mask


class MalformedExpressionError(ValueError):
    """Expression text or structure that does not encode a label."""


def symbol_name(index: int) -> str:
    """Symbol names a, b, ..., z, aa, ab, ... in order."""
    if index < 0:
        raise ValueError("symbol index must be nonnegative")
    name = ""
    index += 1
    while index:
        index, digit = divmod(index - 1, 26)
        name = chr(ord("a") + digit) + name
    return name


def symbol_index(name: str) -> int:
    if not name or any(not "a" <= ch <= "z" for ch in name):
        raise MalformedExpressionError(f"bad symbol name {name!r}")
    value = 0
    for ch in name:
        value = value * 26 + (ord(ch) - ord("a") + 1)
    return value - 1


@dataclass(frozen=True)
class Point:
    """An isolated point of the expression."""

    symbol: int


@dataclass(frozen=True)
class Interval:
    """An open interval, possibly unbounded, minus finitely many points.

    ``lower`` None means unbounded below; ``upper`` None means unbounded
    above; ``removed`` lists the symbols of points deleted from the span.
    """

    lower: int | None
    upper: int | None
    removed: tuple[int, ...] = ()


Segment = Point | Interval


def _segment_symbols(segment: Segment):
    if isinstance(segment, Point):
        yield segment.symbol
        return
    if segment.lower is not None:
        yield segment.lower
    yield from segment.removed
    if segment.upper is not None:
        yield segment.upper


@dataclass(frozen=True)
class IntervalExpr:
    """Ordered union of points and open intervals over symbols a < b < ..."""

    segments: tuple[Segment, ...]
    symbol_count: int

    def __post_init__(self):
        walk = [s for segment in self.segments for s in _segment_symbols(segment)]
        if walk != list(range(self.symbol_count)):
            raise MalformedExpressionError(
                f"segment symbols must read a, b, c, ... left to right, got {walk}"
            )
        for i, segment in enumerate(self.segments):
            if isinstance(segment, Interval):
                if segment.lower is None and i != 0:
                    raise MalformedExpressionError(
                        "an interval unbounded below must come first"
                    )
                if segment.upper is None and i != len(self.segments) - 1:
                    raise MalformedExpressionError(
                        "an interval unbounded above must come last"
                    )


def compile_label(eta: Label) -> FormulaAst:
    """Order formula whose ordered trace family avoids exactly ``eta``.

    Built bit by bit: the first bit chooses the constant (0 truth, 1
    falsehood); each further bit appends one parameter, with the connective
    chosen by whether the formula so far holds above all its parameters.
    """
    eta = as_label(eta)
    ast: FormulaAst = Top() if eta[0] == 0 else Bottom()
    for k in range(1, len(eta)):
        bit = eta[k]
        if cof(ast, k - 1) == 1:
            ast = And(ast, Compare("<" if bit else "!=", k))
        else:
            ast = Or(ast, Compare("=" if bit else ">", k))
    return ast


def to_interval_expr(eta: Label) -> IntervalExpr:
    """Translate a label into its point-interval expression."""
    eta = as_label(eta)
    segments: list[Segment] = []
    in_interval = eta[0] == 0
    lower: int | None = None
    removed: list[int] = []
    for sym, (a, b) in enumerate(zip(eta, eta[1:])):
        if (a, b) == (1, 1):
            segments.append(Point(sym))
        elif (a, b) == (1, 0):
            in_interval = True
            lower = sym
            removed = []
        elif (a, b) == (0, 1):
            segments.append(Interval(lower, sym, tuple(removed)))
            in_interval = False
            lower = None
            removed = []
        else:
            removed.append(sym)
    if eta[-1] == 0:
        segments.append(Interval(lower, None, tuple(removed)))
    return IntervalExpr(tuple(segments), len(eta) - 1)


_EVENT_DIGITS = {
    "point": (1, 1),
    "begin": (1, 0),
    "end": (0, 1),
    "remove": (0, 0),
}


def from_interval_expr(expr: IntervalExpr) -> Label:
    """Recover the label from a point-interval expression (inverse walk)."""
    if not isinstance(expr, IntervalExpr):
        raise MalformedExpressionError("expected an IntervalExpr")
    events: list[str] = []
    for segment in expr.segments:
        if isinstance(segment, Point):
            events.append("point")
            continue
        if segment.lower is not None:
            events.append("begin")
        events.extend("remove" for _ in segment.removed)
        if segment.upper is not None:
            events.append("end")
    first = expr.segments[0] if expr.segments else None
    opens_left = isinstance(first, Interval) and first.lower is None
    digits = [0 if opens_left else 1]
    for event in events:
        before, after = _EVENT_DIGITS[event]
        if digits[-1] != before:
            raise MalformedExpressionError(
                f"{event} event cannot follow digit {digits[-1]}"
            )
        digits.append(after)
    last = expr.segments[-1] if expr.segments else None
    closes_right = isinstance(last, Interval) and last.upper is None
    if (digits[-1] == 0) != closes_right:
        raise MalformedExpressionError("expression ends inconsistently")
    return tuple(digits)


def format_expr(expr: IntervalExpr) -> str:
    """Deterministic text form: pieces joined by ' u '; '{}' for the empty set."""
    if not expr.segments:
        return "{}"
    parts = []
    for segment in expr.segments:
        if isinstance(segment, Point):
            parts.append("{%s}" % symbol_name(segment.symbol))
            continue
        lo = "-inf" if segment.lower is None else symbol_name(segment.lower)
        hi = "inf" if segment.upper is None else symbol_name(segment.upper)
        piece = f"({lo},{hi})"
        piece += "".join("\\{%s}" % symbol_name(r) for r in segment.removed)
        parts.append(piece)
    return " u ".join(parts)


_POINTS_RE = re.compile(r"^\{([a-z]+(?:,[a-z]+)*)\}$")
_INTERVAL_RE = re.compile(
    r"^\((-inf|[a-z]+),(inf|[a-z]+)\)((?:\\\{[a-z]+\})*)$"
)
_REMOVED_RE = re.compile(r"\\\{([a-z]+)\}")


def parse_expr(text: str) -> IntervalExpr:
    """Parse expression text emitted by :func:`format_expr`.

    Point pieces may list several symbols, e.g. ``{c,d}``.  Symbols must be
    strictly increasing left to right; any increasing letters are accepted
    and renumbered by rank.
    """
    stripped = text.strip()
    if stripped == "{}":
        return IntervalExpr((), 0)
    raw_segments: list[tuple] = []
    names: list[str] = []
    for piece in re.split(r"\s+u\s+", stripped):
        match = _POINTS_RE.match(piece)
        if match:
            for name in match.group(1).split(","):
                raw_segments.append(("point", name))
                names.append(name)
            continue
        match = _INTERVAL_RE.match(piece)
        if match:
            lo, hi, removed_text = match.groups()
            removed = _REMOVED_RE.findall(removed_text)
            if lo != "-inf":
                names.append(lo)
            names.extend(removed)
            if hi != "inf":
                names.append(hi)
            raw_segments.append(("interval", lo, hi, removed))
            continue
        raise MalformedExpressionError(f"cannot parse expression piece {piece!r}")
    ranks = [symbol_index(name) for name in names]
    if any(a >= b for a, b in zip(ranks, ranks[1:])):
        raise MalformedExpressionError(
            f"symbols must be strictly increasing left to right: {names}"
        )
    index_of = {name: rank for rank, name in enumerate(names)}
    segments: list[Segment] = []
    for raw in raw_segments:
        if raw[0] == "point":
            segments.append(Point(index_of[raw[1]]))
        else:
            _, lo, hi, removed = raw
            segments.append(
                Interval(
                    None if lo == "-inf" else index_of[lo],
                    None if hi == "inf" else index_of[hi],
                    tuple(index_of[r] for r in removed),
                )
            )
    return IntervalExpr(tuple(segments), len(names))


def realize_expr(expr: IntervalExpr, assignment, ground_size: int) -> Mask:
    """Membership mask of the ground under a concrete symbol assignment.

    ``assignment`` gives one strictly increasing grid position per symbol;
    ground element j sits at position 2*j.
    """
    positions = tuple(assignment)
    if len(positions) != expr.symbol_count:
        raise ValueError(
            f"assignment has {len(positions)} positions for "
            f"{expr.symbol_count} symbols"
        )
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise ValueError("assignment positions must be strictly increasing")

    def covered(x) -> bool:
        for segment in expr.segments:
            if isinstance(segment, Point):
                if x == positions[segment.symbol]:
                    return True
                continue
            if segment.lower is not None and not x > positions[segment.lower]:
                continue
            if segment.upper is not None and not x < positions[segment.upper]:
                continue
            if any(x == positions[r] for r in segment.removed):
                continue
            return True
        return False

    return tuple(1 if covered(2 * j) else 0 for j in range(ground_size))
