import itertools

import pytest

from vclabels.harness import (
    IctTensor,
    IctWitness,
    NotMaximumError,
    UnverifiedTensorError,
    build_ict_tensor,
    ict_failure,
    ict_witness_family,
    ramsey_homogenize,
    verify_ict,
    verify_pair_xor,
    xor_pair_family,
)
from vclabels.labelcalc import avoid_family
from vclabels.labelcompiler import compile_label
from vclabels.orderformula import Top, parse_formula
from vclabels.setsystem import (
    SetSystem,
    SizeGuardError,
    forbidden_label,
    mask_from_indices,
    mask_indices,
    phi_bound,
)


# --- xor_pair_family ------------------------------------------------------


def test_xor_pair_family_examples():
    fam = xor_pair_family(compile_label((1, 0, 1)), 2, 4)
    assert fam == SetSystem.size_at_most(4, 2)
    assert len(fam.members) == 11

    assert xor_pair_family(Top(), 0, 3).members == ((0, 0, 0),)

    cuts = xor_pair_family(parse_formula("x<y1"), 1, 5)
    assert cuts == SetSystem.size_at_most(5, 1)
    assert len(cuts.members) == 6


def test_xor_pair_family_guards():
    with pytest.raises(SizeGuardError):
        xor_pair_family(Top(), 0, 7)
    with pytest.raises(SizeGuardError):
        xor_pair_family(Top(), 5, 3)


def test_verify_pair_xor_reports():
    report = verify_pair_xor((1, 0, 1), 4)
    assert report.passed and report.family_size == 11 == report.expected_size

    trivial = verify_pair_xor((1,), 3)
    assert trivial.passed and trivial.family_size == 1

    # detector sanity: removing one member breaks family equality
    family = xor_pair_family(compile_label((1, 0, 1)), 2, 4)
    mutated = SetSystem.from_masks(4, family.members[1:])
    assert mutated != SetSystem.size_at_most(4, 2)


# --- ramsey_homogenize -----------------------------------------------------


def test_homogenize_constant_labels():
    subset, eta = ramsey_homogenize(SetSystem.size_at_most(6, 2))
    assert subset == (1,) * 6
    assert eta == (1, 1, 1)


def test_homogenize_mixed_labels():
    mixed = SetSystem.from_index_sets(3, [set(), {0}, {0, 1}, {2}])
    subset, eta = ramsey_homogenize(mixed)
    assert sum(subset) == 2
    assert eta == (1, 1)
    # ties break to the lexicographically least membership mask: {1,2}
    assert subset == (0, 1, 1)


def test_homogenize_rejects_non_maximum():
    with pytest.raises(NotMaximumError):
        ramsey_homogenize(SetSystem.from_index_sets(3, [set(), {0}, {1}, {0, 1}]))


def test_homogenize_output_is_label_constant():
    for eta in [(0, 1), (1, 0, 1)]:
        system = avoid_family(6, eta)
        subset, got = ramsey_homogenize(system)
        d = len(eta) - 1
        indices = mask_indices(subset)
        assert len(indices) >= d + 1
        for combo in itertools.combinations(indices, d + 1):
            assert forbidden_label(system, mask_from_indices(6, combo)) == got


def test_homogenize_greedy_mode_beyond_cap():
    system = avoid_family(13, (0, 1))
    subset, eta = ramsey_homogenize(system)
    assert subset == (1,) * 13
    assert eta == (0, 1)


# --- ICT tensors -------------------------------------------------------------


def test_build_ict_examples():
    t = build_ict_tensor(1, 3)
    assert len(t.witnesses) == 3 and verify_ict(t)

    t = build_ict_tensor(2, 2)
    assert len(t.witnesses) == 4 and verify_ict(t)
    by_path = {w.path: w.sat for w in t.witnesses}
    assert by_path[(0, 1)] == ((1, 0), (0, 1))

    t = build_ict_tensor(3, 4)
    assert len(t.witnesses) == 64 and verify_ict(t)


def test_build_ict_guards():
    with pytest.raises(SizeGuardError):
        build_ict_tensor(4, 2)
    with pytest.raises(SizeGuardError):
        build_ict_tensor(2, 5)


def test_verify_ict_detects_flipped_bit():
    t = build_ict_tensor(2, 2)
    witness = t.witnesses[0]
    flipped_row = tuple(1 - b for b in witness.sat[0])
    bad = IctTensor(
        2,
        2,
        (IctWitness(witness.path, (flipped_row, witness.sat[1])),) + t.witnesses[1:],
    )
    assert not verify_ict(bad)
    assert ict_failure(bad) == witness.path


def test_verify_ict_depth_zero_vacuous():
    t = build_ict_tensor(0, 2)
    assert verify_ict(t)
    assert ict_witness_family(t).members == ((0, 0),)


def test_ict_witness_family_examples():
    assert ict_witness_family(build_ict_tensor(2, 3)) == SetSystem.size_exactly(3, 2)
    assert ict_witness_family(build_ict_tensor(1, 4)) == SetSystem.size_exactly(4, 1)
    assert ict_witness_family(build_ict_tensor(3, 3)).members == ((1, 1, 1),)


def test_ict_witness_family_member_is_path_range():
    t = build_ict_tensor(3, 4)
    for witness in t.witnesses:
        if len(set(witness.path)) == 3:
            column_sums = [sum(witness.sat[i][j] for i in range(3)) for j in range(4)]
            member = tuple(1 if 0 < s < 3 else 0 for s in column_sums)
            assert mask_indices(member) == tuple(sorted(set(witness.path)))


def test_ict_witness_family_requires_verified_tensor():
    t = build_ict_tensor(2, 2)
    witness = t.witnesses[0]
    flipped_row = tuple(1 - b for b in witness.sat[0])
    bad = IctTensor(
        2,
        2,
        (IctWitness(witness.path, (flipped_row, witness.sat[1])),) + t.witnesses[1:],
    )
    with pytest.raises(UnverifiedTensorError):
        ict_witness_family(bad)

    injective_only_missing = IctTensor(
        2, 2, tuple(w for w in t.witnesses if w.path != (0, 1))
    )
    with pytest.raises(UnverifiedTensorError, match="injective"):
        ict_witness_family(injective_only_missing)


# --- end-to-end loop -----------------------------------------------------------


def test_equivalence_loop_finite_scale():
    cases = {1: (1,), 2: (1, 1), 3: (1, 0, 1), 4: (1, 0, 1, 0)}
    for eta_len, eta in cases.items():
        d = eta_len - 1
        m = 4
        # a maximum family avoiding eta exists at every ground size
        family = avoid_family(m, eta)
        assert len(family.members) == phi_bound(d, m)
        # the pair-xor construction collapses it to all small pair sets
        report = verify_pair_xor(eta, 4)
        assert report.passed
        bounded = SetSystem.size_at_most(4, d)
        exact = SetSystem.size_exactly(4, d)
        assert set(exact.members) <= set(bounded.members)
        # a tensor built from the exact-size family verifies and recovers it
        if d <= 3:
            tensor = build_ict_tensor(d, m)
            assert verify_ict(tensor)
            assert ict_witness_family(tensor) == exact
