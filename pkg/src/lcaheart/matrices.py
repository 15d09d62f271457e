"""Exact matrix kernels used everywhere else.

Three layers:

* rational matrices (tuples of tuples of Fraction): RREF, kernels, solving;
* integer matrices: Hermite and Smith normal forms with unimodular
  transforms, integer kernels and affine solving;
* symbol-split matrices (``SymMat``): a matrix whose entries are Q-linear
  combinations of 1 and declared symbols, stored as one rational component
  per symbol.  Because symbols are attached only to integer unknowns in
  every linear system this package ever builds, such systems split into one
  rational system per symbol; ``mixed_solve`` packages that.

A small polynomial / rational-function layer supports rank computations in
which the symbols are treated as independent indeterminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import LcaHeartError
from .scalars import UNIT_INDEX, Scalar, CircleScalar


# ---------------------------------------------------------------------------
# rational matrices
# ---------------------------------------------------------------------------

def mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def imat(rows):
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise LcaHeartError(f"expected integer entry, got {x}")
                x = x.numerator
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def zeros(m, n):
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(m))


def izeros(m, n):
    return tuple(tuple(0 for _ in range(n)) for _ in range(m))


def identity(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def iidentity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def shape(M):
    return (len(M), len(M[0]) if M else 0)


def transpose(M):
    m, n = len(M), (len(M[0]) if M else 0)
    return tuple(tuple(M[i][j] for i in range(m)) for j in range(n))


def mat_mul(A, B):
    ma = len(A)
    if ma == 0:
        return ()
    na = len(A[0])
    if na == 0:
        # A is m x 0, so the product has zero columns regardless of B
        return tuple(() for _ in range(ma))
    if len(B) != na:
        raise LcaHeartError("matrix shape mismatch in product")
    nb = len(B[0]) if B else 0
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(na)), Fraction(0))
                       for j in range(nb)) for i in range(ma))


def imat_mul(A, B):
    ma = len(A)
    if ma == 0:
        return ()
    na = len(A[0])
    if na == 0:
        return tuple(() for _ in range(ma))
    if len(B) != na:
        raise LcaHeartError("matrix shape mismatch in product")
    nb = len(B[0]) if B else 0
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(na)) for j in range(nb))
                 for i in range(ma))


def mat_mul_shaped(A, B, m, k, n):
    """Product with explicit shapes, safe when any dimension is zero."""
    return tuple(tuple(sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0))
                       for j in range(n)) for i in range(m))


def imat_mul_shaped(A, B, m, k, n):
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(k)) for j in range(n))
                 for i in range(m))


def mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(A):
    return tuple(tuple(-a for a in row) for row in A)


def mat_vec(A, v):
    return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A)


def hstack(A, B):
    if not A:
        return B
    if not B:
        return A
    if len(A) != len(B):
        raise LcaHeartError("hstack row mismatch")
    return tuple(ra + rb for ra, rb in zip(A, B))


def vstack(A, B):
    if A and B and len(A[0]) != len(B[0]):
        raise LcaHeartError("vstack column mismatch")
    return tuple(A) + tuple(B)


def rref(M):
    """Reduced row echelon form with first-nonzero pivoting.

    Returns (R, pivot_columns).  Deterministic: scans columns left to right,
    picks the first row with a nonzero entry.
    """
    R = [list(row) for row in M]
    m = len(R)
    n = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(n):
        sel = None
        for i in range(r, m):
            if R[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        R[r], R[sel] = R[sel], R[r]
        inv = Fraction(1) / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in R), tuple(pivots)


def rank(M):
    return len(rref(M)[1])


def right_kernel_basis(M):
    """Basis (list of vectors) of {x : Mx = 0} over Q, deterministic."""
    n = len(M[0]) if M else 0
    if not M:
        return [tuple(Fraction(1 if i == j else 0) for i in range(n)) for j in range(n)]
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r_i, pc in enumerate(pivots):
            v[pc] = -R[r_i][fc]
        basis.append(tuple(v))
    return basis


def left_kernel_basis(M):
    return right_kernel_basis(transpose(M))


def solve(M, b):
    """One particular rational solution of Mx = b, or None.

    Deterministic: free variables are set to zero.
    """
    n = len(M[0]) if M else 0
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(M, b))
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r_i, pc in enumerate(pivots):
        x[pc] = R[r_i][n]
    return tuple(x)


def row_space_basis(M):
    R, pivots = rref(M)
    return [R[i] for i in range(len(pivots))]


def column_space_basis(M):
    return [tuple(col) for col in row_space_basis(transpose(M))]


# ---------------------------------------------------------------------------
# integer matrices: Hermite and Smith
# ---------------------------------------------------------------------------

def _pivot_choice(M, t, m, n):
    """Smallest nonzero |entry| in M[t:, t:], ties by lowest row then column."""
    best = None
    for i in range(t, m):
        for j in range(t, n):
            v = abs(M[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return best


def smith_normal_form(M):
    """U, D, V with U*M*V = D, U and V unimodular, d_i | d_{i+1} >= 0.

    Pivot rule: smallest nonzero absolute value, ties broken by lowest row
    then column index, so outputs are reproducible.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if A else 0
    U = [list(row) for row in iidentity(m)]
    V = [list(row) for row in iidentity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def addmul_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        found = _pivot_choice(A, t, m, n)
        if found is None:
            break
        _, pi, pj = found
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            reduced = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    addmul_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                    reduced = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    addmul_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                    reduced = True
            if not reduced:
                break
        if A[t][t] < 0:
            negate_row(t)
        # enforce divisibility d_t | every later entry
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            addmul_row(t, bad, 1)
            continue
        t += 1
    Ut = tuple(tuple(row) for row in U)
    Dt = tuple(tuple(row) for row in A)
    Vt = tuple(tuple(row) for row in V)
    return Ut, Dt, Vt


def int_det(M):
    """Determinant of a small integer matrix (used to check unimodularity)."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if A[r][c]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = Fraction(1) / A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    if det.denominator != 1:
        raise LcaHeartError("integer determinant came out fractional")
    return int(det)


def hermite_row_form(M):
    """Row-style HNF: returns (H, U) with U*M = H, U unimodular.

    H's nonzero rows are a canonical basis of the row lattice: pivots
    positive, entries above a pivot reduced into [0, pivot).
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if A else 0
    U = [list(row) for row in iidentity(m)]
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        U[r], U[piv] = U[piv], U[r]
        # clear below by gcd steps
        for i in range(r + 1, m):
            while A[i][c]:
                q = A[i][c] // A[r][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                if A[i][c]:
                    A[r], A[i] = A[i], A[r]
                    U[r], U[i] = U[i], U[r]
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in A), tuple(tuple(row) for row in U)


def lattice_basis(vectors, n):
    """Canonical basis of the subgroup of Z^n generated by integer vectors."""
    if not vectors:
        return []
    H, _ = hermite_row_form(tuple(tuple(v) for v in vectors))
    return [row for row in H if any(row)]


def int_kernel_basis(M):
    """Basis of the full lattice {x in Z^n : Mx = 0} for integer M."""
    m = len(M)
    n = len(M[0]) if M else 0
    if m == 0:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    U, D, V = smith_normal_form(M)
    r = sum(1 for i in range(min(m, n)) if D[i][i] != 0)
    cols = []
    for j in range(r, n):
        cols.append(tuple(V[i][j] for i in range(n)))
    return cols


def int_solve(M, b):
    """One integer solution of Mx = b, or None."""
    m = len(M)
    n = len(M[0]) if M else 0
    if m == 0:
        return tuple(0 for _ in range(n))
    U, D, V = smith_normal_form(M)
    c = tuple(sum(U[i][k] * b[k] for k in range(m)) for i in range(m))
    y = [0] * n
    for i in range(min(m, n)):
        d = D[i][i]
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    for i in range(min(m, n), m):
        if c[i]:
            return None
    return tuple(sum(V[i][k] * y[k] for k in range(n)) for i in range(n))


def _clear_denominators(rows):
    """Scale each rational row to integers (row-wise lcm)."""
    out = []
    for row in rows:
        mult = 1
        for x in row:
            mult = lcm(mult, Fraction(x).denominator)
        out.append(tuple(int(Fraction(x) * mult) for x in row))
    return tuple(out)


def rational_int_kernel(M):
    """Basis of {x in Z^n : Mx = 0} for a rational matrix M."""
    return int_kernel_basis(_clear_denominators(M))


def rational_int_solve(M, b):
    """Integer solutions of rational system Mx = b: (x0, lattice) or None."""
    rows = []
    for row, bi in zip(M, b):
        mult = 1
        for x in tuple(row) + (bi,):
            mult = lcm(mult, Fraction(x).denominator)
        rows.append(tuple(int(Fraction(x) * mult) for x in tuple(row) + (bi,)))
    n = len(M[0]) if M else 0
    A = tuple(r[:-1] for r in rows)
    rhs = tuple(r[-1] for r in rows)
    x0 = int_solve(A, rhs) if rows else tuple(0 for _ in range(n))
    if x0 is None:
        return None
    return x0, int_kernel_basis(A) if rows else [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]


# ---------------------------------------------------------------------------
# polynomials over Q in the symbols, and their fraction field
# ---------------------------------------------------------------------------

class Poly:
    """Sparse multivariate polynomial over Q; variables indexed by symbol id."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, q):
        q = Fraction(q)
        return cls({(): q} if q else {})

    @classmethod
    def var(cls, idx):
        return cls({((idx, 1),): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                mono = {}
                for i, e in k1:
                    mono[i] = mono.get(i, 0) + e
                for i, e in k2:
                    mono[i] = mono.get(i, 0) + e
                key = tuple(sorted(mono.items()))
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return Poly(out)

    def monomial_coefficients(self):
        """Mapping monomial -> coefficient (for rational-hull extraction)."""
        return dict(self.terms)


class RatFunc:
    """Unreduced fraction of polynomials; enough field structure for RREF."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def const(cls, q):
        return cls(Poly.const(q))

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError
        return RatFunc(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RatFunc(-self.num, self.den)


def _ratfunc_rref(M, ncols):
    """RREF over the rational-function field; returns (rows, pivots).

    M is a list of lists of RatFunc.
    """
    R = [list(row) for row in M]
    m = len(R)
    pivots = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, m):
            if not R[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        R[r], R[sel] = R[sel], R[r]
        pv = R[r][c]
        R[r] = [x / pv for x in R[r]]
        for i in range(m):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def generic_kernel_poly_basis(sym_columns, nrows):
    """Right kernel, over Q(symbols), of the matrix whose columns are given
    as dicts {symbol_index: rational column vector}.

    Symbols are treated as independent indeterminates (the package-wide
    genericity convention).  Returns a list of kernel vectors with Poly
    entries (denominators cleared), plus the generic rank.
    """
    ncols = len(sym_columns)
    rows = []
    for i in range(nrows):
        row = []
        for col in sym_columns:
            p = Poly()
            for sidx, vec in col.items():
                coef = Poly.const(vec[i]) if sidx == UNIT_INDEX else \
                    Poly({((sidx, 1),): Fraction(vec[i])})
                p = p + coef
            row.append(RatFunc(p))
        rows.append(row)
    R, pivots = _ratfunc_rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        entries = [RatFunc.const(0)] * ncols
        entries[fc] = RatFunc.const(1)
        for r_i, pc in enumerate(pivots):
            entries[pc] = -R[r_i][fc]
        # clear denominators by multiplying through by the product of all of
        # them; scaling a kernel vector keeps it a kernel vector
        poly_entries = []
        for j, e in enumerate(entries):
            prod = e.num
            for k, e2 in enumerate(entries):
                if k != j:
                    prod = prod * e2.den
            poly_entries.append(prod)
        basis.append(poly_entries)
    return basis, len(pivots)


# ---------------------------------------------------------------------------
# symbol-split matrices and the central mixed solver
# ---------------------------------------------------------------------------

@dataclass
class SymMat:
    """Matrix with entries in the scalar space, stored per symbol index."""

    nrows: int
    ncols: int
    comps: dict  # symbol index -> rational matrix

    @classmethod
    def zero(cls, m, n):
        return cls(m, n, {})

    @classmethod
    def from_rational(cls, M):
        m, n = shape(M)
        if any(any(x for x in row) for row in M):
            return cls(m, n, {UNIT_INDEX: mat(M)})
        return cls(m, n, {})

    @classmethod
    def from_scalars(cls, rows, m, n):
        comps = {}
        for i, row in enumerate(rows):
            for j, s in enumerate(row):
                if isinstance(s, CircleScalar):
                    s = s.value
                for idx, q in s.coeffs:
                    comp = comps.setdefault(idx, [[Fraction(0)] * n for _ in range(m)])
                    comp[i][j] = q
        return cls(m, n, {k: mat(v) for k, v in comps.items()})

    def component(self, idx):
        return self.comps.get(idx, zeros(self.nrows, self.ncols))

    def indices(self):
        return sorted(self.comps)

    def to_scalars(self, table):
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(self.ncols):
                acc = {}
                for idx, M in self.comps.items():
                    if M[i][j]:
                        acc[idx] = M[i][j]
                row.append(Scalar.make(table, acc))
            rows.append(tuple(row))
        return tuple(rows)

    def column(self, j):
        return {idx: tuple(M[i][j] for i in range(self.nrows))
                for idx, M in self.comps.items() if any(M[i][j] for i in range(self.nrows))}

    def left_mul(self, F):
        """F (rational) * self."""
        m = len(F)
        return SymMat(m, self.ncols, {idx: mat_mul(F, M) for idx, M in self.comps.items()})

    def right_mul_int(self, Z):
        """self * Z (rational or integer matrix)."""
        Zq = mat(Z)
        n = len(Zq[0]) if Zq else 0
        return SymMat(self.nrows, n,
                      {idx: mat_mul(M, Zq) for idx, M in self.comps.items()})

    def add(self, other):
        comps = dict(self.comps)
        for idx, M in other.comps.items():
            comps[idx] = mat_add(comps[idx], M) if idx in comps else M
        return SymMat(self.nrows, self.ncols,
                      {k: v for k, v in comps.items() if any(any(x for x in r) for r in v)})

    def neg(self):
        return SymMat(self.nrows, self.ncols, {k: mat_neg(v) for k, v in self.comps.items()})

    def sub(self, other):
        return self.add(other.neg())

    def hstack(self, other):
        if other.nrows != self.nrows:
            raise LcaHeartError("hstack row mismatch")
        comps = {}
        for idx in set(self.comps) | set(other.comps):
            comps[idx] = hstack(self.component(idx), other.component(idx))
        return SymMat(self.nrows, self.ncols + other.ncols, comps)

    def vstack(self, other):
        if other.ncols != self.ncols:
            raise LcaHeartError("vstack column mismatch")
        comps = {}
        for idx in set(self.comps) | set(other.comps):
            comps[idx] = vstack(self.component(idx), other.component(idx))
        return SymMat(self.nrows + other.nrows, self.ncols, comps)

    def mul_vec_int(self, v):
        """self * integer vector -> SymVec."""
        return {idx: mat_vec(M, [Fraction(x) for x in v]) for idx, M in self.comps.items()}

    def is_zero(self):
        return not self.comps

    def is_rational(self):
        return all(idx == UNIT_INDEX for idx in self.comps)


def symvec_from_scalars(vec):
    out = {}
    n = len(vec)
    for j, s in enumerate(vec):
        if isinstance(s, CircleScalar):
            s = s.value
        for idx, q in s.coeffs:
            out.setdefault(idx, [Fraction(0)] * n)
            out[idx][j] = q
    return {k: tuple(v) for k, v in out.items()}


def symvec_to_scalars(sv, n, table):
    out = []
    for j in range(n):
        acc = {}
        for idx, v in sv.items():
            if v[j]:
                acc[idx] = v[j]
        out.append(Scalar.make(table, acc))
    return tuple(out)


def symvec_zero():
    return {}


def symvec_add(a, b):
    out = dict(a)
    for idx, v in b.items():
        if idx in out:
            out[idx] = tuple(x + y for x, y in zip(out[idx], v))
        else:
            out[idx] = v
    return {k: v for k, v in out.items() if any(v)}


def symvec_neg(a):
    return {k: tuple(-x for x in v) for k, v in a.items()}


def symvec_sub(a, b):
    return symvec_add(a, symvec_neg(b))


def symvec_is_zero(a):
    return all(not any(v) for v in a.values())


@dataclass
class MixedSolution:
    """Solution set of  A x + B y = t  with x real, y integer.

    All solutions: x = x0 + N z + G c,  y = y0 + Y c  for z real, c integer.
    x-parts are symbol-split vectors; N has rational columns.
    """

    x0: dict            # SymVec of length p
    y0: tuple           # integer vector of length q
    real_basis: list    # list of rational length-p vectors (columns of N)
    lattice: list       # list of integer length-q vectors (columns of Y)
    corrections: list   # list of SymVec length-p, aligned with lattice


def mixed_solve(A, B, t, ncols_real=None):
    """Solve A x + B y = t exactly: x in R^p, y in Z^q.

    A is rational (m x p); B is a SymMat (m x q); t is a SymVec of length m.
    Symbols may appear only in B and t, never as coefficients of x: this is
    what makes the per-symbol split below sound under the Q-linear
    independence convention.  Returns a MixedSolution or None.
    """
    m = len(A)
    p = ncols_real if ncols_real is not None else (len(A[0]) if A else 0)
    q = B.ncols
    if B.nrows != m:
        raise LcaHeartError("mixed_solve shape mismatch")
    if m == 0:
        return MixedSolution(
            x0={}, y0=tuple(0 for _ in range(q)),
            real_basis=[tuple(Fraction(1 if i == j else 0) for i in range(p))
                        for j in range(p)],
            lattice=[tuple(1 if i == j else 0 for i in range(q)) for j in range(q)],
            corrections=[{} for _ in range(q)])

    # 1. integer constraints: left-annihilator of A applied to B y = t
    P = left_kernel_basis(A) if p else [tuple(Fraction(1 if i == j else 0) for i in range(m))
                                        for j in range(m)]
    Pm = tuple(P)
    sym_indices = sorted(set(B.comps) | set(t))
    int_rows = []
    int_rhs = []
    for idx in sym_indices:
        Bc = B.component(idx)
        tc = t.get(idx, tuple(Fraction(0) for _ in range(m)))
        for prow in Pm:
            int_rows.append(tuple(sum((prow[k] * Bc[k][j] for k in range(m)), Fraction(0))
                                  for j in range(q)))
            int_rhs.append(sum((prow[k] * tc[k] for k in range(m)), Fraction(0)))
    if int_rows:
        sol = rational_int_solve(int_rows, int_rhs)
        if sol is None:
            return None
        y0, lattice = sol
    else:
        y0 = tuple(0 for _ in range(q))
        lattice = [tuple(1 if i == j else 0 for i in range(q)) for j in range(q)]

    # 2. particular real part: solve A x = t - B y0, one symbol at a time
    def solve_real(rhs_symvec):
        out = {}
        for idx, vec in rhs_symvec.items():
            if not any(vec):
                continue
            xs = solve(A, vec)
            if xs is None:
                return None
            if any(xs):
                out[idx] = xs
        return out

    resid = symvec_sub(t, B.mul_vec_int(y0))
    x0 = solve_real(resid)
    if x0 is None:
        # the left-annihilator conditions should have prevented this
        return None

    real_basis = right_kernel_basis(A) if p else []

    corrections = []
    for yv in lattice:
        rhs = symvec_neg(B.mul_vec_int(yv))
        g = solve_real(rhs)
        if g is None:
            return None
        corrections.append(g)

    return MixedSolution(x0=x0, y0=y0, real_basis=real_basis,
                         lattice=lattice, corrections=corrections)


def mixed_solvable(A, B, t):
    return mixed_solve(A, B, t) is not None
