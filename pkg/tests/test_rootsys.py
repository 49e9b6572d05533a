import pytest
from gmpy2 import mpq

from nilsoliton.errors import MultiplicitiesUnset, ProportionalRoots, UnsupportedSystem
from nilsoliton.rootsys import (build_root_system, cartan_integer, from_dict, identify, root_string,
                                simple_system, sum_strings_identity)

# number of positive roots (standard tables)
POSITIVE = {"A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "B4": 16, "C3": 9, "C4": 16,
            "D4": 12, "G2": 6, "F4": 24, "BC1": 2, "BC2": 6, "BC3": 12}


@pytest.mark.parametrize("label,count", sorted(POSITIVE.items()))
def test_positive_root_count(label, count):
    rs = build_root_system(simple_system(label))
    assert len(rs.positive_roots) == count
    assert len({r.coords for r in rs.positive_roots}) == count


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_cartan_integers_of_simple_roots(label):
    ss = simple_system(label)
    rs = build_root_system(ss)
    simple = rs.simple_roots
    for i, a in enumerate(simple):
        for j, b in enumerate(simple):
            assert cartan_integer(a, b) == ss.cartan_matrix[i][j]


@pytest.mark.parametrize("label,highest", [("A3", (1, 1, 1)), ("B3", (1, 2, 2)), ("C3", (2, 2, 1)),
                                           ("G2", (3, 2)), ("D4", (1, 2, 1, 1)), ("F4", (2, 3, 4, 2))])
def test_highest_root(label, highest):
    rs = build_root_system(simple_system(label))
    assert max(rs.positive_roots, key=lambda r: r.level).coords == highest


def test_string_p_minus_q_is_cartan_integer():
    rs = build_root_system(simple_system("G2"))
    for a in rs.positive_roots:
        for lam in rs.positive_roots:
            if a.coords == lam.coords:
                continue
            p, q = root_string(a, lam, rs)
            assert p - q == cartan_integer(a, lam)


def test_proportional_string_raises():
    rs = build_root_system(simple_system("BC1"))
    a, a2 = rs.positive_roots[0], rs.positive_roots[1]
    with pytest.raises(ProportionalRoots):
        root_string(a, a2, rs)


def test_sum_strings_with_multiplicities():
    rs = build_root_system(simple_system("BC2"))
    mults = {r.coords: (1 if r.coords in ((0, 2), (2, 2)) else 2) for r in rs.positive_roots}
    rs = rs.with_multiplicities(mults)
    for a in rs.simple_roots:
        lhs, rhs = sum_strings_identity(a, rs)
        assert lhs == rhs


def test_multiplicities_required():
    rs = build_root_system(simple_system("A2"))
    with pytest.raises(MultiplicitiesUnset):
        sum_strings_identity(rs.simple_roots[0], rs)


@pytest.mark.parametrize("kind,rank", [("A", 5), ("D", 3), ("E", 6), ("C", 1)])
def test_unsupported(kind, rank):
    with pytest.raises(UnsupportedSystem):
        simple_system(kind, rank)


def test_identify_permutation():
    ss = simple_system("B3")
    a = ss.cartan_matrix
    perm = (2, 0, 1)
    shuffled = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            shuffled[perm[i]][perm[j]] = a[i][j]
    found, p = identify(shuffled, None)
    assert found.kind_label == "B3" and tuple(p) == perm


def test_dict_round_trip():
    rs = build_root_system(simple_system("C3"))
    rs = rs.with_multiplicities({r.coords: 1 for r in rs.positive_roots})
    back = from_dict(rs.to_dict())
    assert [r.coords for r in back.positive_roots] == [r.coords for r in rs.positive_roots]
    assert back.is_split


def test_short_simple_root_normalisation():
    ss = simple_system("B2")
    assert min(ss.squared_lengths) == mpq(2)
