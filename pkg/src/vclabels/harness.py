"""Finite-scale verification constructions.

Pair-xor families over a ground of point pairs, homogeneous-label subsets
of maximum families, and ICT witness tensors (independent contradictory
types: an array of row formulas such that for every row-to-column path
exactly the on-path instances can be made true).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .labelcalc import as_label
from .labelcompiler import compile_label
from .orderformula import FormulaAst, iter_ordered_traces
from .setsystem import (
    Label,
    Mask,
    SetSystem,
    SizeGuardError,
    classify,
    forbidden_label,
    mask_from_indices,
)

XOR_PAIR_CAP = 6
XOR_ARITY_CAP = 4
ICT_DEPTH_CAP = 3
ICT_COLUMN_CAP = 4
# Beyond this, homogenization falls back to a greedy left-to-right filter.
EXHAUSTIVE_GROUND_CAP = 12


class NotMaximumError(ValueError):
    """Homogenization needs a maximum family."""


class UnverifiedTensorError(ValueError):
    """The tensor fails verification or misses injective paths."""


def xor_pair_family(ast: FormulaAst, n: int, m_pairs: int) -> SetSystem:
    """Family over a ground of point pairs separated by the formula.

    Pair k occupies grid positions 4k and 4k+2 (two adjacent ground points
    of a doubled ground, with a cut point available between them); it
    belongs to the set defined by a parameter tuple exactly when the
    formula's truth differs at its two points.
    """
    if m_pairs < 0:
        raise ValueError("pair count must be nonnegative")
    if m_pairs > XOR_PAIR_CAP:
        raise SizeGuardError(f"pair count {m_pairs} exceeds cap {XOR_PAIR_CAP}")
    if n > XOR_ARITY_CAP:
        raise SizeGuardError(f"arity {n} exceeds cap {XOR_ARITY_CAP}")
    masks = set()
    for tr in iter_ordered_traces(ast, n, 2 * m_pairs):
        masks.add(
            tuple(1 if tr[2 * k] != tr[2 * k + 1] else 0 for k in range(m_pairs))
        )
    return SetSystem.from_masks(m_pairs, masks)


@dataclass(frozen=True)
class PairXorReport:
    passed: bool
    family_size: int
    expected_size: int


def verify_pair_xor(eta: Label, m_pairs: int) -> PairXorReport:
    """Check that the compiled label's pair-xor family is all pair sets of
    size at most len(eta) - 1."""
    eta = as_label(eta)
    d = len(eta) - 1
    family = xor_pair_family(compile_label(eta), d, m_pairs)
    expected = SetSystem.size_at_most(m_pairs, d)
    return PairXorReport(
        family == expected, len(family.members), len(expected.members)
    )


def ramsey_homogenize(system: SetSystem) -> tuple[Mask, Label]:
    """Largest subset on which every forbidden label agrees, with that label.

    For a d-maximum family, every (d+1)-subset of the ground carries one
    forbidden label; this returns a largest subset all of whose
    (d+1)-subsets carry the same label (always at least d+1 elements).
    Ties at equal size break to the lexicographically least membership
    mask.  Exhaustive up to EXHAUSTIVE_GROUND_CAP; greedy left-to-right
    beyond that.
    """
    result = classify(system)
    if not result.is_maximum:
        raise NotMaximumError("the family is not maximum")
    d = result.vc_dimension
    m = system.ground_size
    if d + 1 > m:
        raise ValueError(
            "the family shatters its whole ground; no forbidden labels exist"
        )
    label_of = {
        combo: forbidden_label(system, mask_from_indices(m, combo))
        for combo in itertools.combinations(range(m), d + 1)
    }
    if m <= EXHAUSTIVE_GROUND_CAP:
        for size in range(m, d, -1):
            candidates = []
            for combo in itertools.combinations(range(m), size):
                labels = {label_of[sub] for sub in itertools.combinations(combo, d + 1)}
                if len(labels) == 1:
                    candidates.append((mask_from_indices(m, combo), labels.pop()))
            if candidates:
                return min(candidates)
    chosen: list[int] = []
    for x in range(m):
        trial = chosen + [x]
        if len(trial) < d + 1:
            chosen = trial
            continue
        labels = {
            label_of[sub] for sub in itertools.combinations(tuple(trial), d + 1)
        }
        if len(labels) == 1:
            chosen = trial
    return mask_from_indices(m, chosen), label_of[tuple(chosen[: d + 1])]


@dataclass(frozen=True)
class IctWitness:
    """One realized path: sat[i][j] says whether the row-i, column-j
    instance holds at the witness."""

    path: tuple[int, ...]
    sat: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IctTensor:
    """Finite ICT-pattern witness tensor: depth rows, a column count, and
    one witness record per covered path."""

    depth: int
    columns: int
    witnesses: tuple[IctWitness, ...]

    def __post_init__(self):
        for witness in self.witnesses:
            if len(witness.path) != self.depth or len(witness.sat) != self.depth:
                raise ValueError("witness shape does not match tensor depth")
            if any(len(row) != self.columns for row in witness.sat):
                raise ValueError("witness row width does not match column count")
            if any(not 0 <= j < self.columns for j in witness.path):
                raise ValueError("path column out of range")


def build_ict_tensor(depth: int, columns: int) -> IctTensor:
    """Tensor with one witness per path, realized on a d-row block ground.

    The ground splits into ``depth`` blocks of ``columns`` elements; the
    witness of a path picks one element per block, so the row-i instance
    holds at column j exactly when j is the path's column in row i.
    """
    if depth < 0 or columns < 0:
        raise ValueError("depth and columns must be nonnegative")
    if depth > ICT_DEPTH_CAP:
        raise SizeGuardError(f"depth {depth} exceeds cap {ICT_DEPTH_CAP}")
    if columns > ICT_COLUMN_CAP:
        raise SizeGuardError(f"column count {columns} exceeds cap {ICT_COLUMN_CAP}")
    witnesses = []
    for path in itertools.product(range(columns), repeat=depth):
        sat = tuple(
            tuple(1 if j == path[i] else 0 for j in range(columns))
            for i in range(depth)
        )
        witnesses.append(IctWitness(path, sat))
    return IctTensor(depth, columns, tuple(witnesses))


def ict_failure(tensor: IctTensor):
    """First covered path with no exactly-matching witness, or None."""
    matched = {
        witness.path
        for witness in tensor.witnesses
        if all(
            witness.sat[i][j] == (1 if j == witness.path[i] else 0)
            for i in range(tensor.depth)
            for j in range(tensor.columns)
        )
    }
    for witness in tensor.witnesses:
        if witness.path not in matched:
            return witness.path
    return None


def verify_ict(tensor: IctTensor) -> bool:
    """True iff every covered path has a witness satisfying exactly the
    on-path instances."""
    return ict_failure(tensor) is None


def ict_witness_family(tensor: IctTensor) -> SetSystem:
    """Recover all size-``depth`` column sets from the injective-path witnesses.

    A column belongs to a witness's member set when the row values at that
    column are not all equal (for depth 1, when the single value holds).
    Only injective paths are used: repeated-column paths give smaller sets.
    """
    if not verify_ict(tensor):
        raise UnverifiedTensorError(f"tensor fails at path {ict_failure(tensor)}")
    covered = {witness.path for witness in tensor.witnesses}
    missing = [
        path
        for path in itertools.permutations(range(tensor.columns), tensor.depth)
        if path not in covered
    ]
    if missing:
        raise UnverifiedTensorError(
            f"tensor does not cover all injective paths; first missing {missing[0]}"
        )
    members = []
    for witness in tensor.witnesses:
        if len(set(witness.path)) != tensor.depth:
            continue
        column_sums = [
            sum(witness.sat[i][j] for i in range(tensor.depth))
            for j in range(tensor.columns)
        ]
        if tensor.depth == 1:
            member = tuple(1 if s == 1 else 0 for s in column_sums)
        else:
            member = tuple(
                1 if 0 < s < tensor.depth else 0 for s in column_sums
            )
        members.append(member)
    return SetSystem.from_masks(tensor.columns, members)
