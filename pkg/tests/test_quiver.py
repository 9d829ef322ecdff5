import pytest

from tiltrig.quiver import AlgParseError, QuiverError, parse_alg_text


SL2 = """
field 0
vertex 1 2
order 1 < 2
arrow a 1 2
arrow b 2 1
relation 1*b.a
duality a=b
"""


def test_sl2_block_basis():
    A = parse_alg_text(SL2)
    assert A.dim == 5
    assert set(A.basis) == {("1",), ("2",), ("a",), ("b",), ("a", "b")}
    assert [len(l) for l in A.radical_powers()] == [5, 3, 1, 0]


def test_single_vertex_field_case():
    A = parse_alg_text("field 0\nvertex 1\n")
    assert A.dim == 1
    assert [len(l) for l in A.radical_powers()] == [1, 0]


def test_loop_algebra():
    A = parse_alg_text("field 0\nvertex 1\narrow x 1 1\nrelation 1*x.x\n")
    assert A.dim == 2
    assert [len(l) for l in A.radical_powers()] == [2, 1, 0]


def test_semisimple_no_arrows():
    A = parse_alg_text("field 0\nvertex 1 2 3\norder 1 < 2\norder 2 < 3\n")
    assert A.dim == 3
    assert [len(l) for l in A.radical_powers()] == [3, 0]


def test_idempotents_and_unit():
    A = parse_alg_text(SL2)
    F = A.field
    for u in A.quiver.vertices:
        for v in A.quiver.vertices:
            prod = A.mult((u,), (v,))
            assert prod == ({(u,): F.one} if u == v else {})
    # sum of idempotents acts as identity on every basis path
    for p in A.basis:
        total = {}
        for v in A.quiver.vertices:
            for q, c in A.mult((v,), p).items():
                total[q] = total.get(q, F.zero) + c
        assert total == {p: F.one}


def test_radical_power_multiplicativity():
    A = parse_alg_text(SL2)
    for i in range(4):
        for j in range(4):
            for p in A.radical_power_basis(i):
                for q in A.radical_power_basis(j):
                    for r in A.mult(p, q):
                        assert A.path_length(r) >= i + j


def test_duality_antimap():
    A = parse_alg_text(SL2)
    # squares to the identity on basis paths
    for p in A.basis:
        assert A.dual_path(A.dual_path(p)) == p
    # reverses multiplication on path pairs
    F = A.field
    for p in A.basis:
        for q in A.basis:
            lhs = {A.dual_path(r): c for r, c in A.mult(p, q).items()}
            rhs = A.mult_elements({A.dual_path(q): F.one}, {A.dual_path(p): F.one})
            assert lhs == rhs


def test_duality_must_reverse_and_cover():
    with pytest.raises((QuiverError, AlgParseError)):
        parse_alg_text("field 0\nvertex 1 2\narrow a 1 2\narrow b 2 1\nduality a=a\n")


def test_non_admissible_relation_rejected():
    with pytest.raises(AlgParseError):
        parse_alg_text("field 0\nvertex 1 2\narrow a 1 2\nrelation 1*a\n")


def test_inhomogeneous_relation_rejected():
    text = "field 0\nvertex 1\narrow x 1 1\nrelation 1*x.x + 1*x.x.x\n"
    with pytest.raises(AlgParseError):
        parse_alg_text(text)


def test_dim_cap_guards_infinite_algebra():
    text = "field 0\nvertex 1\narrow x 1 1\n"
    with pytest.raises((QuiverError, AlgParseError)):
        parse_alg_text(text, dim_cap=50)


def test_parse_error_reports_line():
    try:
        parse_alg_text("field 0\nvertex 1\nbroken stuff here\n")
    except AlgParseError as exc:
        assert exc.line_no == 3
    else:
        pytest.fail("expected a parse error")


def test_field_override():
    A = parse_alg_text(SL2, field_override=2)
    assert A.field.characteristic == 2
    assert A.dim == 5


def test_opposite_algebra():
    A = parse_alg_text(SL2)
    B = A.opposite()
    assert B.dim == 5
    assert ("b", "a") in B.basis and ("a", "b") not in B.basis


def test_commutative_square_relation():
    # two paths identified: d.f = e.g on a commuting square
    text = """
field 0
vertex 1 2 3 4
order 1 < 2
order 2 < 3
order 3 < 4
arrow d 1 2
arrow e 1 3
arrow f 2 4
arrow g 3 4
relation 1*d.f + -1*e.g
"""
    A = parse_alg_text(text)
    # free paths: 4 idempotents + 4 arrows + 2 length-2 paths glued into 1
    assert A.dim == 9
    red = A.reduce(("d", "f"))
    assert list(red.values()) != [] and set(red) == {("e", "g")}
