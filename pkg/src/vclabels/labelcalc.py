"""Forbidden-label calculus: pattern induction, avoidance families, extension.

A label is a nonempty bit string eta.  A set ``c`` induces eta when the
membership string of ``c`` contains eta as a (not necessarily contiguous)
subsequence; the family avoiding eta on a ground of size m is maximum of
dimension len(eta) - 1.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .setsystem import (
    ENUMERATION_GROUND_CAP,
    GroundMismatchError,
    Label,
    Mask,
    SetSystem,
    SizeGuardError,
    _check_mask,
)


class PreconditionViolatedError(ValueError):
    """The partial assignment already induces the pattern it must avoid."""


def as_label(value) -> Label:
    """Validate and normalize a label to a tuple of bits."""
    eta = tuple(value)
    if not eta or any(b not in (0, 1) for b in eta):
        raise ValueError(f"a label is a nonempty tuple of 0/1 bits, got {value!r}")
    return eta


def parse_label(text: str) -> Label:
    """Parse a label literal: a string over {0,1}, leftmost character = bit 0."""
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"a label literal is a nonempty string over 0/1, got {text!r}")
    return tuple(int(ch) for ch in text)


def format_label(eta: Label) -> str:
    return "".join(str(b) for b in as_label(eta))


def induces(mask: Mask, eta: Label) -> bool:
    """True iff the membership pattern eta appears along increasing positions.

    Greedy left-to-right matching; equivalent to subsequence containment of
    eta in the membership string.
    """
    eta = as_label(eta)
    j = 0
    for b in mask:
        if b == eta[j]:
            j += 1
            if j == len(eta):
                return True
    return False


def induces_within(mask: Mask, region: Mask, eta: Label) -> bool:
    """Pattern induction using only positions inside ``region``."""
    eta = as_label(eta)
    j = 0
    for b, inside in zip(mask, region):
        if inside and b == eta[j]:
            j += 1
            if j == len(eta):
                return True
    return False


def _witness_end(mask: Mask, region: Mask, eta: Label):
    """Least position at which a witness of eta inside ``region`` can end.

    Greedy matching finds the positionwise-earliest witness, so the returned
    end is minimal.  None when eta is not induced within the region.
    """
    j = 0
    for i, (b, inside) in enumerate(zip(mask, region)):
        if inside and b == eta[j]:
            j += 1
            if j == len(eta):
                return i
    return None


@lru_cache(maxsize=None)
def avoid_family(ground_size: int, eta: Label) -> SetSystem:
    """All subsets of the ground whose membership string avoids eta."""
    eta = as_label(eta)
    if ground_size < 0:
        raise ValueError("ground size must be nonnegative")
    if ground_size > ENUMERATION_GROUND_CAP:
        raise SizeGuardError(
            f"avoidance enumeration on ground {ground_size} exceeds cap "
            f"{ENUMERATION_GROUND_CAP}"
        )
    members = tuple(
        mask
        for mask in itertools.product((0, 1), repeat=ground_size)
        if not induces(mask, eta)
    )
    # itertools.product yields masks in lexicographic order already.
    return SetSystem(ground_size, members)


def is_characterized_by(system: SetSystem, eta: Label) -> bool:
    """True iff the family is exactly the eta-avoidance family on its ground.

    On a finite ground, "characterized" and "finitely characterized"
    coincide: the restriction of an avoidance family to any subset is the
    avoidance family of the smaller ground, so checking the full ground
    settles every finite restriction.
    """
    return system == avoid_family(system.ground_size, as_label(eta))


def complement_label(eta: Label) -> Label:
    """Bitwise complement, same length."""
    return tuple(1 - b for b in as_label(eta))


def similar(first: SetSystem, second: SetSystem) -> bool:
    """Trace equality on every finite subset of a common ground.

    On a finite ground the full ground is itself one of the subsets and
    determines all the others, so this reduces to equality of the
    deduplicated families.
    """
    if first.ground_size != second.ground_size:
        raise GroundMismatchError(
            f"grounds differ: {first.ground_size} vs {second.ground_size}"
        )
    return first.members == second.members


def extend_avoiding(ground_size: int, region: Mask, partial: Mask, eta: Label) -> Mask:
    """Extend an eta-avoiding partial assignment to the whole ground.

    ``partial`` must be a subset of ``region`` that does not induce eta
    inside ``region``.  The result agrees with ``partial`` on ``region``
    and does not induce eta anywhere on the ground.

    The construction recurses on the pattern: strip the last bit t of
    eta = mu + (t,); if mu is not induced, recurse on mu; otherwise locate
    the least witness end b of mu inside the region, rebuild everything
    below b against mu, pin the last bit of mu at b, and fill the constant
    1 - t above b.
    """
    eta = as_label(eta)
    _check_mask(region, ground_size)
    _check_mask(partial, ground_size)
    if any(p and not r for p, r in zip(partial, region)):
        raise ValueError("partial assignment must be contained in the region")
    if induces_within(partial, region, eta):
        raise PreconditionViolatedError(
            "partial assignment already induces the pattern inside the region"
        )
    return _extend(ground_size, region, partial, eta)


def _extend(m: int, region: Mask, partial: Mask, eta: Label) -> Mask:
    if len(eta) == 1:
        # Not inducing (0,) forces partial == region, so the full ground works;
        # not inducing (1,) forces partial empty, so the empty set works.
        return tuple([1] * m) if eta[0] == 0 else tuple([0] * m)
    mu, t = eta[:-1], eta[-1]
    end = _witness_end(partial, region, mu)
    if end is None:
        return _extend(m, region, partial, mu)
    region_below = tuple(b if j < end else 0 for j, b in enumerate(region))
    partial_below = tuple(b if j < end else 0 for j, b in enumerate(partial))
    base = _extend(m, region_below, partial_below, mu)
    s = mu[-1]
    return tuple(
        base[j] if j < end else (s if j == end else 1 - t) for j in range(m)
    )
