"""Smith normal form, group arithmetic and kernel counts."""

import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from goeritz.linalg import (
    CapExceeded,
    FgAbelianGroup,
    IntMatrix,
    count_solutions_brute,
    enumerate_solutions_mod_m,
    group_normal_form,
    groups_isomorphic,
    in_kernel_mod_m,
    kernel_basis_mod_m,
    kernel_structure,
    parse_group,
    rank_mod_p,
    smith_normal_form,
    solution_count_mod_m,
)

from oracles import count_kernel_naive, invariant_factors_from_minors

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [draw(st.lists(small_ints, min_size=c, max_size=c)) for _ in range(r)]


def _is_chain(diag):
    nz = [x for x in diag if x]
    return all(b % a == 0 for a, b in zip(nz, nz[1:])) and all(
        x == 0 for x in diag[len(nz):]
    )


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[-8, 8], [8, -8]], [8, 0]),
        ([[-3, 1, 2], [1, -3, 2], [2, 2, -4]], [1, 8, 0]),
        ([[2, 0], [0, 3]], [1, 6]),
        ([[0, 0], [0, 0]], [0, 0]),
        ([[4, 6]], [2]),
        ([[1], [1]], [1]),
    ],
)
def test_snf_known(rows, expected):
    assert list(smith_normal_form(IntMatrix(rows)).diag) == expected


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_matches_minors(rows):
    M = IntMatrix(rows)
    snf = smith_normal_form(M)
    assert list(snf.diag) == invariant_factors_from_minors(rows)
    assert _is_chain(snf.diag)
    assert all(x >= 0 for x in snf.diag)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_transforms(rows):
    M = IntMatrix(rows)
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.diagonal_matrix()
    assert abs(snf.U.det()) == 1
    assert abs(snf.V.det()) == 1


def test_det_bareiss():
    assert IntMatrix([[2, 1], [7, 4]]).det() == 1
    assert IntMatrix([[0, 1], [1, 0]]).det() == -1
    assert IntMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).det() == 0


@settings(max_examples=80, deadline=None)
@given(int_matrices(max_rows=3, max_cols=3), st.integers(2, 6))
def test_count_matches_naive(rows, m):
    M = IntMatrix(rows)
    naive = count_kernel_naive(rows, len(rows[0]), m)
    assert solution_count_mod_m(M, m) == naive
    assert count_solutions_brute(M, m) == naive
    assert kernel_structure(M, FgAbelianGroup.cyclic(m)).order == naive


@settings(max_examples=60, deadline=None)
@given(int_matrices(max_rows=3, max_cols=3), st.integers(2, 6))
def test_kernel_basis_generates_kernel(rows, m):
    M = IntMatrix(rows)
    basis = kernel_basis_mod_m(M, m)
    assert all(in_kernel_mod_m(M, v.entries, m) for v in basis)
    # the subgroup generated by the basis has the full kernel size
    ncols = len(rows[0])
    span = {tuple([0] * ncols)}
    for v in basis:
        span = {
            tuple((a + k * b) % m for a, b in zip(x, v.entries))
            for x in span
            for k in range(m)
        }
    assert len(span) == solution_count_mod_m(M, m)


def test_enumeration_cap():
    M = IntMatrix([[0] * 8])
    with pytest.raises(CapExceeded) as err:
        enumerate_solutions_mod_m(M, 9, cap=1000)
    assert err.value.code == "CAP_EXCEEDED"


def test_enumeration_cap_env(monkeypatch):
    monkeypatch.setenv("GOERITZ_ENUM_CAP", "10")
    with pytest.raises(CapExceeded):
        enumerate_solutions_mod_m(IntMatrix([[1, 1, 1]]), 3)


def test_enumeration_rows_are_solutions():
    M = IntMatrix([[1, 1, -2], [2, 0, 0]])
    sols = enumerate_solutions_mod_m(M, 4)
    assert len(sols) == count_kernel_naive(M.tolist(), 3, 4)
    for x in sols:
        assert in_kernel_mod_m(M, [int(t) for t in x], 4)


@pytest.mark.parametrize(
    "text, orders, free",
    [
        ("0", (), 0),
        ("Z", (), 1),
        ("Z^3", (), 3),
        ("Z/6", (6,), 0),
        ("(Z/2)^3", (2, 2, 2), 0),
        ("Z^2 + Z/4 + Z/6", (2, 12), 2),
        ("Z/2 + Z/3", (6,), 0),
    ],
)
def test_parse_group(text, orders, free):
    g = parse_group(text)
    assert g.invariant_factors == orders
    assert g.free_rank == free


@pytest.mark.parametrize("bad", ["", "Z/", "Q", "Z/0", "Z^x", "Z/2^3"])
def test_parse_group_rejects(bad):
    with pytest.raises(ValueError):
        parse_group(bad)


def test_group_str_roundtrip():
    for text in ["Z^2 + Z/4", "Z/4 + Z/12", "0", "Z"]:
        assert str(parse_group(text)) == text


def test_group_normal_form_drops_units():
    assert group_normal_form([1, 1, 4, 6]) == FgAbelianGroup((2, 12), 0)
    assert groups_isomorphic(parse_group("Z/6"), parse_group("Z/2 + Z/3"))
    assert not groups_isomorphic(parse_group("Z/4"), parse_group("Z/2 + Z/2"))


def _primary_parts(g):
    """Multiset of prime-power orders, the other classical normal form."""
    parts = []
    for n in g.invariant_factors:
        p = 2
        while n > 1:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            if q > 1:
                parts.append(q)
            p += 1
    return sorted(parts), g.free_rank


@given(st.lists(st.integers(0, 30), max_size=5))
def test_group_normal_form_agrees_with_primary(orders):
    g = group_normal_form(orders)
    free = orders.count(0)
    expected = _primary_parts(FgAbelianGroup((), 0))[0]
    for n in orders:
        if n > 1:
            expected += _primary_parts(group_normal_form([n]))[0]
    assert _primary_parts(g) == (sorted(expected), free)


def test_kernel_structure_known():
    T = IntMatrix([[-8, 8], [8, -8]])
    assert str(kernel_structure(T, parse_group("Z/12"))) == "Z/4 + Z/12"
    assert str(kernel_structure(T, parse_group("Z"))) == "Z"
    assert str(kernel_structure(T, parse_group("Z + Z/8"))) == "Z + Z/8 + Z/8"


def test_rank_mod_p():
    assert rank_mod_p([(1, 1, 0), (0, 1, 1), (1, 0, 1)], 2) == 2
    assert rank_mod_p([(1, 1, 0), (0, 1, 1), (1, 0, 1)], 3) == 3
    assert rank_mod_p([], 2) == 0


def test_order_of_infinite_group():
    assert parse_group("Z + Z/2").order is None
    assert parse_group("Z/2 + Z/4").order == 8


def test_exhaustive_2x2_small():
    for a, b, c, d in itertools.product(range(-2, 3), repeat=4):
        rows = [[a, b], [c, d]]
        assert list(smith_normal_form(IntMatrix(rows)).diag) == invariant_factors_from_minors(rows)
