import json
from fractions import Fraction

import pytest

from wzterm.rootsys import (
    GroupData,
    GroupType,
    RootSystemError,
    all_group_types,
    build_group,
    highest_root,
    killing_oracle,
    positive_roots,
    simple_roots,
)

# frozen reference tables used only to cross-check the constructions
KNOWN_DUAL_COXETER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n - 1,
    "C": lambda n: n + 1,
    "D": lambda n: 2 * n - 2,
    "E": {6: 12, 7: 18, 8: 30}.get,
    "F": {4: 9}.get,
    "G": {2: 4}.get,
}

KNOWN_POSITIVE_ROOT_COUNTS = {
    "A1": 1, "A2": 3, "B2": 4, "G2": 6, "D4": 12, "F4": 24, "E6": 36,
    "E7": 63, "E8": 120,
}


def test_parse():
    assert GroupType.parse("a2") == GroupType("A", 2)
    assert str(GroupType.parse("G2")) == "G2"
    with pytest.raises(RootSystemError):
        GroupType.parse("H3")
    with pytest.raises(RootSystemError):
        GroupType.parse("E5")
    with pytest.raises(RootSystemError):
        GroupType.parse("C2")


def test_a1_constants():
    g = build_group(GroupType.parse("A1"))
    assert g.cartan == ((2,),)
    assert g.s_matrix == ((2,),)
    assert g.beta_norm_sq == Fraction(1, 2)
    # c = -1/(96*pi), stored as the rational c*pi
    assert g.c_times_pi == Fraction(-1, 96)
    # highest-coroot Killing norm
    assert g.coroot_killing_gram()[0][0] == -8


def test_a2_g2_cartan():
    a2 = build_group(GroupType.parse("A2"))
    assert a2.cartan == ((2, -1), (-1, 2))
    assert a2.s_matrix == a2.cartan
    g2 = build_group(GroupType.parse("G2"))
    assert g2.cartan == ((2, -1), (-3, 2))
    assert g2.s_matrix == ((2, -3), (-3, 2))


def test_positive_root_counts():
    for name, count in KNOWN_POSITIVE_ROOT_COUNTS.items():
        roots = positive_roots(simple_roots(GroupType.parse(name)))
        assert len(roots) == count, name


def test_highest_root_a_series():
    # for A_n the highest root is the sum of all simple roots
    for n in range(1, 9):
        _, marks = highest_root(simple_roots(GroupType("A", n)))
        assert marks == (1,) * n


@pytest.mark.parametrize("gt", all_group_types(), ids=str)
def test_oracle_agrees(gt):
    assert build_group(gt) == killing_oracle(gt)


@pytest.mark.parametrize("gt", all_group_types(), ids=str)
def test_beta_norm_and_dual_coxeter(gt):
    g = build_group(gt)
    assert g.beta_norm_sq * g.dual_coxeter == 1
    expected = KNOWN_DUAL_COXETER[gt.series]
    expected = expected(gt.rank) if callable(expected) else expected
    assert g.dual_coxeter == expected


@pytest.mark.parametrize("gt", all_group_types(), ids=str)
def test_cartan_and_s_matrix_invariants(gt):
    g = build_group(gt)
    k = gt.rank
    for i in range(k):
        assert g.cartan[i][i] == 2
        assert g.s_matrix[i][i] == 2
        for j in range(k):
            if i != j:
                assert g.cartan[i][j] <= 0
                assert (g.cartan[i][j] == 0) == (g.cartan[j][i] == 0)
                assert g.s_matrix[i][j] == g.s_matrix[j][i]
                # exact Killing identity: 2*ratio_ij = C_ij * |beta|^2/|alpha_i|^2,
                # where the diagonal ratio is the squared-length quotient
                assert 2 * g.coroot_gram_ratio[i][j] == g.cartan[i][j] * g.coroot_gram_ratio[i][i]
                # the S/2 shortcut holds whenever either root is long
                if g.coroot_gram_ratio[i][i] == 1 or g.coroot_gram_ratio[j][j] == 1:
                    assert g.coroot_gram_ratio[i][j] == Fraction(g.s_matrix[i][j], 2)


def test_json_roundtrip():
    g = build_group(GroupType.parse("F4"))
    d = json.loads(g.to_json())
    assert d["group"] == "F4"
    assert d["beta_norm_sq"] == {"num": 1, "den": 9}
    assert d["cartan"][0][0] == 2
