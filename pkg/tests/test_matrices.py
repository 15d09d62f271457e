import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from lcaheart import matrices as mx
from lcaheart.scalars import UNIT_INDEX, SymbolTable

TABLE = SymbolTable([("a", 1.41421356), ("b", 2.2360679)])


def random_int_matrix(rng, m, n, bound=20):
    return tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(m))


def divisibility_chain_ok(D):
    diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
    for x in diag:
        if x < 0:
            return False
    nz = [x for x in diag if x]
    if any(diag[i] == 0 and any(diag[i + 1:]) for i in range(len(diag))):
        return False
    return all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


def test_snf_identity():
    U, D, V = mx.smith_normal_form(mx.iidentity(3))
    assert D == mx.iidentity(3)


def test_snf_example():
    U, D, V = mx.smith_normal_form(((2, 4), (6, 8)))
    assert (D[0][0], D[1][1]) == (2, 4)
    assert mx.imat_mul(mx.imat_mul(U, ((2, 4), (6, 8))), V) == D


def test_snf_zero():
    U, D, V = mx.smith_normal_form(((0,),))
    assert D == ((0,),)


def test_snf_random_soundness():
    rng = random.Random(20240811)
    for _ in range(150):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        M = random_int_matrix(rng, m, n)
        U, D, V = mx.smith_normal_form(M)
        assert mx.imat_mul(mx.imat_mul(U, M), V) == D
        assert abs(mx.int_det(U)) == 1
        assert abs(mx.int_det(V)) == 1
        assert divisibility_chain_ok(D)


def test_hermite_row_form_lattice():
    H, U = mx.hermite_row_form(((2, 4), (6, 8)))
    assert mx.imat_mul(U, ((2, 4), (6, 8))) == H
    assert abs(mx.int_det(U)) == 1


def test_int_kernel_and_solve():
    M = ((5, -3),)
    ker = mx.int_kernel_basis(M)
    assert len(ker) == 1
    x, y = ker[0]
    assert 5 * x - 3 * y == 0 and (abs(x), abs(y)) == (3, 5)
    sol = mx.int_solve(((2, 0), (0, 3)), (4, 9))
    assert sol == (2, 3)
    assert mx.int_solve(((2,),), (3,)) is None


def test_rational_int_kernel():
    ker = mx.rational_int_kernel(((Fraction(2, 5), Fraction(-1)),))
    assert len(ker) == 1
    x, y = ker[0]
    assert Fraction(2, 5) * x == y and (abs(x), abs(y)) == (5, 2)


def test_rref_and_kernels():
    M = mx.mat([[1, 2, 3], [2, 4, 6]])
    assert mx.rank(M) == 1
    ker = mx.right_kernel_basis(M)
    assert len(ker) == 2
    for v in ker:
        assert all(x == 0 for x in mx.mat_vec(M, v))
    left = mx.left_kernel_basis(M)
    assert len(left) == 1


def test_solve_particular():
    M = mx.mat([[1, 1], [0, 1]])
    assert mx.solve(M, (Fraction(3), Fraction(1))) == (Fraction(2), Fraction(1))
    assert mx.solve(mx.mat([[1], [1]]), (Fraction(0), Fraction(1))) is None


def test_empty_shapes():
    assert mx.right_kernel_basis(()) == []
    assert mx.mat_mul((), ()) == ()
    U, D, V = mx.smith_normal_form(())
    assert D == ()


def test_generic_kernel_detects_symbol_relation():
    # columns (a) and (1): over Q(a) the kernel is spanned by (1, -a)
    cols = [{1: (Fraction(1),)}, {UNIT_INDEX: (Fraction(1),)}]
    basis, rk = mx.generic_kernel_poly_basis(cols, 1)
    assert rk == 1
    assert len(basis) == 1


def test_mixed_solve_circle_kernel():
    # m*(2/5) = k  <=>  kernel of Z -> T, 1 |-> 2/5: m in 5Z
    A = ()
    B = mx.SymMat.from_rational(((Fraction(2, 5), Fraction(-1)),))
    sol = mx.mixed_solve(mx.zeros(1, 0), B, {})
    assert sol is not None
    lat = sol.lattice
    assert len(lat) == 1
    assert abs(lat[0][0]) == 5


def test_mixed_solve_symbolic_kernel_trivial():
    # m*a = k has only m = k = 0 under Q-linear independence
    B = mx.SymMat(1, 2, {1: mx.mat([[1, 0]]), UNIT_INDEX: mx.mat([[0, -1]])})
    sol = mx.mixed_solve(mx.zeros(1, 0), B, {})
    assert sol is not None
    assert sol.lattice == []


def test_mixed_solve_with_reals():
    # x/2 + n/3 - k = 0: all (n, k) allowed, x determined
    A = mx.mat([[Fraction(1, 2)]])
    B = mx.SymMat.from_rational(((Fraction(1, 3), Fraction(-1)),))
    sol = mx.mixed_solve(A, B, {})
    assert sol is not None
    assert len(sol.lattice) == 2
    assert sol.real_basis == []
    for yv, corr in zip(sol.lattice, sol.corrections):
        x = corr.get(UNIT_INDEX, (Fraction(0),))[0]
        assert Fraction(1, 2) * x + Fraction(1, 3) * yv[0] - yv[1] == 0


def test_mixed_solve_inhomogeneous():
    # x = a (symbolic target reachable through the real unknown)
    A = mx.mat([[1]])
    B = mx.SymMat.zero(1, 0)
    t = {1: (Fraction(1),)}
    sol = mx.mixed_solve(A, B, t)
    assert sol is not None
    assert sol.x0 == {1: (Fraction(1),)}


def test_mixed_solve_unsolvable():
    # 0*x + 2y = 1 has no integer solution
    A = mx.zeros(1, 0)
    B = mx.SymMat.from_rational(((Fraction(2),),))
    t = {UNIT_INDEX: (Fraction(1),)}
    assert mx.mixed_solve(A, B, t) is None


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_hypothesis(rows):
    M = tuple(tuple(r) for r in rows)
    U, D, V = mx.smith_normal_form(M)
    assert mx.imat_mul(mx.imat_mul(U, M), V) == D
    assert divisibility_chain_ok(D)
    assert abs(mx.int_det(U)) == 1 and abs(mx.int_det(V)) == 1


def test_symmat_round_trip():
    a = TABLE.symbol("a")
    rows = ((a + 1, TABLE.rational(2)), (TABLE.zero(), 3 * a))
    sm = mx.SymMat.from_scalars(rows, 2, 2)
    back = sm.to_scalars(TABLE)
    assert back == rows
