import random

import pytest

from tiltrig.linalg import Field, Mat, Subspace, kernel_basis, quotient_map, rank, rref, solve


def test_field_validation():
    Field(0)
    Field(7)
    with pytest.raises(ValueError):
        Field(6)


def test_field_coercion():
    F5 = Field(5)
    assert F5.of("2/3") == (2 * pow(3, -1, 5)) % 5
    Q = Field(0)
    assert Q.fmt(Q.of("4/6")) == "2/3"


def test_rref_zero_and_identity():
    Q = Field(0)
    z = Mat.zero(Q, 2, 2)
    R, piv = rref(z)
    assert R == z and piv == []
    i3 = Mat.identity(Q, 3)
    R, piv = rref(i3)
    assert R == i3 and piv == [0, 1, 2]


def test_rref_f2_hand_case():
    F2 = Field(2)
    R, piv = rref(Mat(F2, [[1, 1], [1, 1]]))
    assert R.data == [[1, 1], [0, 0]]
    assert piv == [0]


def test_rank_nullity_and_solve():
    Q = Field(0)
    m = Mat(Q, [[1, 2, 3], [2, 4, 6]])
    assert rank(m) == 1
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert all(x == Q.zero for x in m.apply(v))
    assert solve(m, [1, 2]) is not None
    assert solve(m, [1, 3]) is None


def test_subspace_ops_hand_cases():
    Q = Field(0)
    U = Subspace(Q, 2, [[1, 1]])
    V = Subspace(Q, 2, [[1, -1]])
    assert U.sum(V).dim == 2
    assert U.intersect(V).dim == 0
    assert U.intersect(U) == U
    e1 = Subspace(Q, 2, [[1, 0]])
    e2 = Subspace(Q, 2, [[0, 1]])
    assert e1.sum(e2).dim == 2 and e1.intersect(e2).dim == 0


def test_subspace_height_mismatch():
    Q = Field(0)
    with pytest.raises(ValueError):
        Subspace(Q, 2, [[1, 0]]).sum(Subspace(Q, 3, [[1, 0, 0]]))


def test_subspace_canonical_equality():
    F2 = Field(2)
    a = Subspace(F2, 3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace(F2, 3, [[1, 0, 1], [1, 1, 0]])
    assert a == b


def test_coords_and_complement():
    Q = Field(0)
    U = Subspace(Q, 3, [[1, 0, 1]])
    W = Subspace(Q, 3, [[1, 0, 1], [0, 1, 0]])
    assert U.coords([2, 0, 2]) == [Q.of(2)]
    comp = U.complement_in(W)
    assert len(comp) == 1 and not U.contains(comp[0])


def test_quotient_map_kernel():
    Q = Field(0)
    U = Subspace(Q, 3, [[1, 2, 0]])
    Qm, free = quotient_map(Q, U)
    assert Qm.rows == 2
    for v in U.basis:
        assert all(x == Q.zero for x in Qm.apply(v))


def test_randomized_invariants_seeded():
    rng = random.Random(1)
    for _ in range(60):
        F = Field(rng.choice([0, 2, 5]))
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = Mat(F, [[F.of(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)])
        R, piv = rref(m)
        assert len(piv) + len(kernel_basis(m)) == cols
        R2, piv2 = rref(R)
        assert R2 == R and piv2 == piv
