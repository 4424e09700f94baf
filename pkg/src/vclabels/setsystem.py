"""Finite set systems over a linearly ordered ground set.

The ground set of size m is {0, ..., m-1} carrying the natural order.
Member sets are stored as 0/1 membership masks, deduplicated and kept in
lexicographic order so that every derived output is deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

Mask = tuple[int, ...]
Label = tuple[int, ...]

# Whole-family enumerations (power sets, avoidance scans) are 2^m.
ENUMERATION_GROUND_CAP = 20
# Classification scans every subset of the ground and every absent set.
CLASSIFY_GROUND_CAP = 16


class GroundMismatchError(ValueError):
    """Operands live over different ground sets."""


class EmptyFamilyError(ValueError):
    """The operation needs at least one member set."""


class NotLocallyMaximumError(ValueError):
    """The trace on the chosen subset does not miss exactly one pattern."""


class SizeGuardError(ValueError):
    """The input exceeds an enumeration size cap."""


def _check_mask(mask: Mask, ground_size: int) -> None:
    if len(mask) != ground_size:
        raise GroundMismatchError(
            f"mask length {len(mask)} does not match ground size {ground_size}"
        )
    if any(b not in (0, 1) for b in mask):
        raise ValueError(f"mask entries must be 0 or 1: {mask!r}")


def mask_from_indices(ground_size: int, indices: Iterable[int]) -> Mask:
    """Membership mask of the given element indices."""
    chosen = set(indices)
    bad = sorted(i for i in chosen if not 0 <= i < ground_size)
    if bad:
        raise ValueError(f"indices out of range for ground {ground_size}: {bad}")
    return tuple(1 if j in chosen else 0 for j in range(ground_size))


def mask_indices(mask: Mask) -> tuple[int, ...]:
    """Element indices present in the mask, in increasing order."""
    return tuple(j for j, b in enumerate(mask) if b)


def _mask_int(mask: Mask) -> int:
    value = 0
    for j, b in enumerate(mask):
        if b:
            value |= 1 << j
    return value


def _int_mask(value: int, ground_size: int) -> Mask:
    return tuple((value >> j) & 1 for j in range(ground_size))


@dataclass(frozen=True)
class SetSystem:
    """A deduplicated family of subsets of an ordered ground set."""

    ground_size: int
    members: tuple[Mask, ...]

    def __post_init__(self):
        if self.ground_size < 0:
            raise ValueError("ground size must be nonnegative")
        for mask in self.members:
            _check_mask(mask, self.ground_size)
        if list(self.members) != sorted(set(self.members)):
            raise ValueError(
                "members must be deduplicated and lexicographically sorted; "
                "use SetSystem.from_masks"
            )

    @classmethod
    def from_masks(cls, ground_size: int, masks: Iterable[Mask]) -> SetSystem:
        return cls(ground_size, tuple(sorted({tuple(mask) for mask in masks})))

    @classmethod
    def from_index_sets(cls, ground_size: int, index_sets) -> SetSystem:
        return cls.from_masks(
            ground_size, (mask_from_indices(ground_size, s) for s in index_sets)
        )

    @classmethod
    def power_set(cls, ground_size: int) -> SetSystem:
        if ground_size > ENUMERATION_GROUND_CAP:
            raise SizeGuardError(
                f"power set on ground {ground_size} exceeds cap {ENUMERATION_GROUND_CAP}"
            )
        return cls(ground_size, tuple(itertools.product((0, 1), repeat=ground_size)))

    @classmethod
    def size_at_most(cls, ground_size: int, d: int) -> SetSystem:
        """All subsets of the ground of size at most d."""
        if d < 0:
            raise ValueError("size bound must be nonnegative")
        masks = (
            mask_from_indices(ground_size, combo)
            for k in range(min(d, ground_size) + 1)
            for combo in itertools.combinations(range(ground_size), k)
        )
        return cls.from_masks(ground_size, masks)

    @classmethod
    def size_exactly(cls, ground_size: int, d: int) -> SetSystem:
        """All subsets of the ground of size exactly d."""
        if d < 0:
            raise ValueError("size must be nonnegative")
        masks = (
            mask_from_indices(ground_size, combo)
            for combo in itertools.combinations(range(ground_size), d)
        )
        return cls.from_masks(ground_size, masks)

    @cached_property
    def member_ints(self) -> tuple[int, ...]:
        return tuple(_mask_int(mask) for mask in self.members)

    def to_text(self) -> str:
        """Serialize in the set-system file format."""
        lines = [f"ground {self.ground_size}"]
        lines.extend("".join(map(str, mask)) for mask in self.members)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> SetSystem:
        """Parse the set-system file format.

        First significant line is ``ground <m>``; every further line is a
        string over {0,1} of length m.  Lines starting with ``#`` and blank
        lines are ignored; duplicate members are dropped.
        """
        ground_size = None
        masks = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if ground_size is None:
                parts = line.split()
                if len(parts) != 2 or parts[0] != "ground" or not parts[1].isdigit():
                    raise ValueError(f"line {lineno}: expected 'ground <m>', got {line!r}")
                ground_size = int(parts[1])
                continue
            if len(line) != ground_size or any(ch not in "01" for ch in line):
                raise ValueError(
                    f"line {lineno}: expected a 0/1 string of length {ground_size}, "
                    f"got {line!r}"
                )
            masks.append(tuple(int(ch) for ch in line))
        if ground_size is None:
            raise ValueError("missing 'ground <m>' header line")
        return cls.from_masks(ground_size, masks)


@dataclass(frozen=True)
class Classification:
    """VC dimension together with the maximum/maximal verdicts."""

    vc_dimension: int
    is_maximum: bool
    is_maximal: bool
    sauer_profile: tuple[tuple[int, int], ...]


def phi_bound(d: int, n: int) -> int:
    """Largest trace count a dimension-d family can leave on n points."""
    if d < 0 or n < 0:
        raise ValueError("phi_bound needs nonnegative arguments")
    if n < d:
        return 2**n
    return sum(math.comb(n, i) for i in range(d + 1))


def trace(system: SetSystem, region: Mask) -> SetSystem:
    """Restrict the family to the elements of ``region``, reindexed in order."""
    _check_mask(region, system.ground_size)
    keep = mask_indices(region)
    return SetSystem.from_masks(
        len(keep), (tuple(mask[j] for j in keep) for mask in system.members)
    )


def shatters(system: SetSystem, region: Mask) -> bool:
    """True iff every subset of ``region`` occurs as a trace."""
    _check_mask(region, system.ground_size)
    a = _mask_int(region)
    return len({v & a for v in system.member_ints}) == 1 << a.bit_count()


def vc_dim(system: SetSystem) -> int:
    """Largest shattered subset size; -1 for the empty family.

    Scans every subset of the ground, so the cost is exponential in the
    ground size.
    """
    if not system.members:
        return -1
    ints = system.member_ints
    best = 0
    for a in range(1, 1 << system.ground_size):
        k = a.bit_count()
        if k > best and len({v & a for v in ints}) == 1 << k:
            best = k
    return best


def _almost_shattered(ints, m: int, d: int, counts):
    """(subset, missing trace) pairs for (d+1)-subsets one trace short of full."""
    full = (1 << (d + 1)) - 1
    out = []
    for combo in itertools.combinations(range(m), d + 1):
        a = 0
        for j in combo:
            a |= 1 << j
        if counts[a] != full:
            continue
        present = {v & a for v in ints}
        sub = a
        while True:
            if sub not in present:
                out.append((a, sub))
                break
            if sub == 0:
                break
            sub = (sub - 1) & a
    return out


def classify(system: SetSystem) -> Classification:
    """VC dimension plus the maximum and maximal verdicts.

    Checks every subset of the ground (and, for maximality, every absent
    set), so the ground size is capped at CLASSIFY_GROUND_CAP.
    """
    if not system.members:
        raise EmptyFamilyError("cannot classify an empty family")
    m = system.ground_size
    if m > CLASSIFY_GROUND_CAP:
        raise SizeGuardError(
            f"classification on ground {m} exceeds cap {CLASSIFY_GROUND_CAP}"
        )
    ints = system.member_ints

    counts = [0] * (1 << m)
    for a in range(1 << m):
        counts[a] = len({v & a for v in ints})

    d = 0
    best_by_size = [0] * (m + 1)
    for a in range(1 << m):
        k = a.bit_count()
        if counts[a] > best_by_size[k]:
            best_by_size[k] = counts[a]
        if k > d and counts[a] == 1 << k:
            d = k

    is_maximum = all(
        counts[a] == phi_bound(d, a.bit_count()) for a in range(1 << m)
    )

    if d >= m:
        is_maximal = True  # the family is the full power set
    else:
        member_set = set(ints)
        slots = _almost_shattered(ints, m, d, counts)
        is_maximal = all(
            any(c & a == miss for a, miss in slots)
            for c in range(1 << m)
            if c not in member_set
        )

    assert not is_maximum or is_maximal
    profile = tuple((k, best_by_size[k]) for k in range(m + 1))
    return Classification(d, is_maximum, is_maximal, profile)


def forbidden_label(system: SetSystem, region: Mask) -> Label:
    """The unique missing trace pattern on ``region``, as a bit string.

    Bit i corresponds to the i-th smallest element of the region.  Defined
    exactly when the trace on the region misses a single pattern.
    """
    _check_mask(region, system.ground_size)
    a = _mask_int(region)
    k = a.bit_count()
    present = {v & a for v in system.member_ints}
    if len(present) != (1 << k) - 1:
        raise NotLocallyMaximumError(
            f"trace on the region has {len(present)} patterns, expected {(1 << k) - 1}"
        )
    missing = None
    sub = a
    while True:
        if sub not in present:
            missing = sub
            break
        if sub == 0:
            break
        sub = (sub - 1) & a
    assert missing is not None
    return tuple(1 if (missing >> j) & 1 else 0 for j in mask_indices(region))


def alternation_number(mask: Mask) -> int:
    """Length of the longest membership-alternating increasing sequence.

    Equals the number of maximal constant runs of the membership string;
    0 only on the empty ground.
    """
    if not mask:
        return 0
    return 1 + sum(mask[i] != mask[i - 1] for i in range(1, len(mask)))
