"""Closed-subgroup engine on covers of elementary groups.

A subgroup of G is presented on the cover R^p + Z^q as a rational subspace
(the connected directions) plus finitely many generators whose real
coordinates may carry symbols, always together with the cover lattice of G.
Kernels are computed by the mixed real/integer solver; closures by the
rational-hull construction; quotients and embeddings re-present the result
as a canonical elementary group with a typed structure morphism.

Connected components of everything this engine types stay rational; where
an irrational component would be forced (closures along symbolic vector
coordinates, decided generically in the symbols), OutOfFragmentError is
raised instead of mis-typing the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import matrices as mx
from .errors import LcaHeartError, OutOfFragmentError
from .groups import ElcaGroup, ElcaMorphism
from .matrices import SymMat
from .scalars import RATIONALS, UNIT_INDEX, Scalar


# -- cover vectors -----------------------------------------------------------

@dataclass(frozen=True)
class CoverVector:
    """Element of R^p + Z^q with symbol-split real part."""

    real: tuple    # sorted tuple of (symbol_index, coordinate tuple)
    ints: tuple

    @classmethod
    def make(cls, real_symvec, ints):
        clean = tuple(sorted((i, tuple(v)) for i, v in real_symvec.items() if any(v)))
        return cls(clean, tuple(int(x) for x in ints))

    @classmethod
    def rational(cls, coords, ints):
        coords = tuple(Fraction(x) for x in coords)
        sv = {UNIT_INDEX: coords} if any(coords) else {}
        return cls.make(sv, ints)

    def real_dict(self):
        return {i: v for i, v in self.real}

    def real_component(self, idx, p):
        for i, v in self.real:
            if i == idx:
                return v
        return tuple(Fraction(0) for _ in range(p))

    def is_zero(self):
        return not self.real and not any(self.ints)

    def is_rational(self):
        return all(i == UNIT_INDEX for i, _ in self.real)

    def scaled(self, k):
        k = int(k)
        return CoverVector.make({i: tuple(k * x for x in v) for i, v in self.real},
                                tuple(k * x for x in self.ints))

    def plus(self, other):
        sv = self.real_dict()
        for i, v in other.real:
            if i in sv:
                sv[i] = tuple(x + y for x, y in zip(sv[i], v))
            else:
                sv[i] = v
        return CoverVector.make(sv, tuple(x + y for x, y in zip(self.ints, other.ints)))


def lambda_vectors(G):
    return [CoverVector.rational(real, ints) for real, ints in G.lambda_gens()]


def _combo(gens, coeffs):
    """Integer combination of cover vectors (gens nonempty)."""
    acc = CoverVector.make({}, tuple(0 for _ in gens[0].ints))
    for g, co in zip(gens, coeffs):
        if co:
            acc = acc.plus(g.scaled(co))
    return acc


def _reduce_mod_v(g, Vrows, pivots):
    """Subtract the component so the pivot coordinates vanish."""
    if not Vrows:
        return g
    sv = {}
    for idx, vec in g.real:
        coords = list(vec)
        for r, pc in enumerate(pivots):
            coef = coords[pc]
            if coef:
                coords = [x - coef * y for x, y in zip(coords, Vrows[r])]
        if any(coords):
            sv[idx] = tuple(coords)
    return CoverVector.make(sv, g.ints)


# -- presentations -----------------------------------------------------------

@dataclass
class Presented:
    """V_span + <gens> + cover lattice, not necessarily closed."""

    ambient: ElcaGroup
    v_span: list      # rational p-vectors
    gens: list        # CoverVector list; cover-lattice generators included
    table: object = RATIONALS


def image_presentation(f):
    """Set-theoretic image of f inside its target, as a presentation."""
    tgt = f.target
    v_span = [tuple(col) for col in mx.column_space_basis(f.real_block)]
    gens = []
    sm = f.int_real_symmat()
    for j in range(f.source.q):
        col = sm.column(j)
        ints = tuple(f.int_int[i][j] for i in range(tgt.q))
        gens.append(CoverVector.make(dict(col), ints))
    gens.extend(lambda_vectors(tgt))
    return Presented(tgt, v_span, gens, f.table)


def full_presentation(G):
    v = [tuple(Fraction(1 if i == j else 0) for i in range(G.p)) for j in range(G.p)]
    gens = [CoverVector.rational([0] * G.p, [1 if i == j else 0 for i in range(G.q)])
            for j in range(G.q)]
    gens.extend(lambda_vectors(G))
    return Presented(G, v, gens)


def zero_presentation(G):
    return Presented(G, [], lambda_vectors(G))


def _vector_as_symtarget(vec, G):
    """CoverVector -> right-hand side for the membership system."""
    t = {}
    rows = G.p + G.q
    for idx, v in vec.real:
        t[idx] = tuple(v) + tuple(Fraction(0) for _ in range(G.q))
    base = t.get(UNIT_INDEX, tuple(Fraction(0) for _ in range(rows)))
    t[UNIT_INDEX] = tuple(base[:G.p]) + tuple(Fraction(x) for x in vec.ints)
    return {k: v for k, v in t.items() if any(v)}


def membership_system(pres):
    """(A, B) such that x is a member iff A z + B c = x has a mixed solution."""
    G = pres.ambient
    rows = G.p + G.q
    A = tuple(tuple(Fraction(v[i]) if i < G.p else Fraction(0) for v in pres.v_span)
              for i in range(rows))
    comps = {}
    for j, g in enumerate(pres.gens):
        sv = _vector_as_symtarget(g, G)
        for idx, vec in sv.items():
            M = comps.setdefault(idx, [[Fraction(0)] * len(pres.gens) for _ in range(rows)])
            for i in range(rows):
                M[i][j] = vec[i]
    B = SymMat(rows, len(pres.gens), {k: mx.mat(v) for k, v in comps.items()})
    return A, B


def contains(pres, vec):
    """Exact membership of a CoverVector in a presented subgroup."""
    A, B = membership_system(pres)
    t = _vector_as_symtarget(vec, pres.ambient)
    return mx.mixed_solve(A, B, t) is not None


# -- closed subgroups ---------------------------------------------------------

@dataclass
class ClosedSubgroup:
    """Normalized closed subgroup: canonical rational component basis plus a
    basis of the discrete part of S modulo the component."""

    ambient: ElcaGroup
    v_basis: tuple    # RREF rows, rational, length-p vectors
    basis: tuple      # CoverVector basis of S mod component (lattice included)
    table: object = RATIONALS

    def presentation(self):
        return Presented(self.ambient, [tuple(v) for v in self.v_basis],
                         list(self.basis) + lambda_vectors(self.ambient), self.table)

    def contains_vector(self, vec):
        return contains(self.presentation(), vec)

    def is_zero_subgroup(self):
        if self.v_basis:
            return False
        lat = zero_presentation(self.ambient)
        return all(contains(lat, g) for g in self.basis)

    def is_full(self):
        if len(self.v_basis) != self.ambient.p:
            return False
        ints = [list(g.ints) for g in self.basis] \
            + [list(g.ints) for g in lambda_vectors(self.ambient)]
        H = mx.lattice_basis(ints, self.ambient.q)
        return _is_unit_lattice(H, self.ambient.q)

    def equals(self, other):
        if self.ambient != other.ambient:
            return False
        mine = mx.rref(tuple(self.v_basis))[0] if self.v_basis else ()
        theirs = mx.rref(tuple(other.v_basis))[0] if other.v_basis else ()
        if [r for r in mine if any(r)] != [r for r in theirs if any(r)]:
            return False
        pm, pt = self.presentation(), other.presentation()
        return (all(contains(pt, g) for g in self.basis)
                and all(contains(pm, g) for g in other.basis))


def _is_unit_lattice(H_rows, q):
    nz = [r for r in H_rows if any(r)]
    if len(nz) != q:
        return q == 0
    return abs(mx.int_det(tuple(tuple(r) for r in nz))) == 1


def _in_row_space(rows, w):
    if not rows:
        return not any(w)
    sol = mx.solve(mx.transpose(tuple(tuple(r) for r in rows)),
                   tuple(Fraction(x) for x in w))
    return sol is not None


def _int_inverse(U):
    n = len(U)
    if n == 0:
        return ()
    cols = [mx.solve(mx.mat(U), tuple(Fraction(1 if i == j else 0) for i in range(n)))
            for j in range(n)]
    return tuple(tuple(int(cols[j][i]) for j in range(n)) for i in range(n))


def normalize(ambient, v_span, gens, table=RATIONALS):
    """Canonicalize a presentation known to describe a closed subgroup."""
    p, q = ambient.p, ambient.q
    Vt, pivots = mx.rref(tuple(tuple(v) for v in v_span)) if v_span else ((), ())
    Vrows = [row for row in Vt if any(row)]
    pivots = pivots[:len(Vrows)]

    reduced = [g for g in (_reduce_mod_v(g, Vrows, pivots) for g in gens)
               if not g.is_zero()]
    if not reduced:
        return ClosedSubgroup(ambient, tuple(Vrows), (), table)

    m = len(reduced)
    sym_idxs = sorted({i for g in reduced for i, _ in g.real} | {UNIT_INDEX})
    rows = []
    for idx in sym_idxs:
        for coord in range(p):
            rows.append(tuple(g.real_component(idx, p)[coord] for g in reduced))
    for coord in range(q):
        rows.append(tuple(Fraction(g.ints[coord]) for g in reduced))
    rel = mx.rational_int_kernel(tuple(rows))
    if not rel:
        return ClosedSubgroup(ambient, tuple(Vrows), tuple(reduced), table)

    Rel = tuple(tuple(col[i] for col in rel) for i in range(m))  # m x r
    U, D, _ = mx.smith_normal_form(Rel)
    rk = sum(1 for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i])
    if any(D[i][i] != 1 for i in range(rk)):
        raise LcaHeartError("internal: presentation was not closed (torsion relations)")
    Uinv = _int_inverse(U)
    basis = []
    for i in range(rk, m):
        h = _combo(reduced, [Uinv[j][i] for j in range(m)])
        if not h.is_zero():
            basis.append(h)
    return ClosedSubgroup(ambient, tuple(Vrows), tuple(basis), table)


# -- kernels -------------------------------------------------------------------

def kernel_subgroup(f):
    """{x in source : f(x) = 0} as a normalized closed subgroup."""
    src, tgt = f.source, f.target
    m = tgt.p + tgt.q
    A = tuple(tuple(f.real_block[i]) for i in range(tgt.p)) \
        + tuple(tuple(Fraction(0) for _ in range(src.p)) for _ in range(tgt.q))

    B = f.int_real_symmat()
    bot = SymMat.from_rational(mx.mat(f.int_int)) if tgt.q else None
    if bot is not None:
        B = B.vstack(bot)
    lam_cols = [tuple(-Fraction(x) for x in real) + tuple(-Fraction(x) for x in ints)
                for real, ints in tgt.lambda_gens()]
    if lam_cols:
        Lmat = tuple(tuple(col[i] for col in lam_cols) for i in range(m))
        B = B.hstack(SymMat.from_rational(Lmat))

    sol = mx.mixed_solve(A, B, {}, ncols_real=src.p)
    if sol is None:
        raise LcaHeartError("internal: homogeneous system unsolvable")
    v_span = [tuple(v) for v in sol.real_basis]
    gens = [CoverVector.make(dict(corr), yv[:src.q])
            for yv, corr in zip(sol.lattice, sol.corrections)]
    gens.extend(lambda_vectors(src))
    return normalize(src, v_span, gens, f.table)


# -- closures ------------------------------------------------------------------

def closure(pres):
    """Topological closure of a presented subgroup, normalized.

    The connected directions added by the generators are found through the
    rational hull of the generic relation space; symbols are treated as
    algebraically independent wherever a rank over the reals is needed.
    """
    G = pres.ambient
    p, q = G.p, G.q
    n = p + q
    Vrows0 = [tuple(v) + tuple(Fraction(0) for _ in range(q)) for v in pres.v_span]
    Vt, pivots0 = mx.rref(tuple(Vrows0)) if Vrows0 else ((), ())
    V0 = [row for row in Vt if any(row)]
    pivots0 = pivots0[:len(V0)]

    cols = []
    for g in pres.gens:
        sv = _vector_as_symtarget(g, G)
        red = _reduce_mod_v(CoverVector.make(sv, ()), V0, pivots0)
        if red.real:
            cols.append(red.real_dict())

    extra_component = []
    if cols:
        kernel_polys, _ = mx.generic_kernel_poly_basis(cols, n)
        hull_rows = []
        for vec in kernel_polys:
            monomials = set()
            for pol in vec:
                monomials.update(pol.terms)
            for mono in monomials:
                hull_rows.append(tuple(pol.terms.get(mono, Fraction(0)) for pol in vec))
        hull = [row for row in mx.rref(tuple(hull_rows))[0] if any(row)] if hull_rows else []
        if hull:
            imgs = []
            for w in hull:
                acc = {}
                for j, col in enumerate(cols):
                    if w[j]:
                        for idx, vec in col.items():
                            cur = acc.get(idx, tuple(Fraction(0) for _ in range(n)))
                            acc[idx] = tuple(x + w[j] * y for x, y in zip(cur, vec))
                acc = {k: v for k, v in acc.items() if any(v)}
                if acc:
                    imgs.append(acc)
            if imgs:
                rat_rows = [vec for img in imgs for vec in img.values()]
                u_basis = [row for row in mx.rref(tuple(rat_rows))[0] if any(row)]
                _, generic_rank = mx.generic_kernel_poly_basis(imgs, n)
                if len(u_basis) != generic_rank:
                    raise OutOfFragmentError(
                        "closure has an irrational connected component")
                extra_component = u_basis

    Vrows = V0 + list(extra_component)
    Vc = [row for row in mx.rref(tuple(Vrows))[0] if any(row)] if Vrows else []

    v_real = []
    extra_gens = []
    if Vc:
        Bc = mx.transpose(tuple(Vc))  # n x d
        d = len(Vc)
        J = tuple(Bc[p + i] for i in range(q))  # q x d
        kerJ = mx.right_kernel_basis(J) if q else \
            [tuple(Fraction(1 if i == j else 0) for i in range(d)) for j in range(d)]
        for kv in kerJ:
            vec = tuple(sum((Bc[i][t] * kv[t] for t in range(d)), Fraction(0))
                        for i in range(n))
            v_real.append(vec[:p])
        if q:
            ann = mx.left_kernel_basis(J)
            lat = mx.rational_int_kernel(tuple(ann)) if ann else \
                [tuple(1 if i == j else 0 for i in range(q)) for j in range(q)]
            for nvec in lat:
                theta = mx.solve(J, tuple(Fraction(x) for x in nvec))
                if theta is None:
                    raise LcaHeartError("internal: integer point escaped column space")
                full = tuple(sum((Bc[i][t] * theta[t] for t in range(d)), Fraction(0))
                             for i in range(n))
                extra_gens.append(CoverVector.rational(full[:p], [int(x) for x in nvec]))

    new_gens = list(pres.gens) + extra_gens + lambda_vectors(G)
    return normalize(G, v_real, new_gens, pres.table)


def closure_is_self(pres, closed):
    """Whether a presentation was already closed (its closure adds nothing)."""
    for v in closed.v_basis:
        if not _in_row_space(list(pres.v_span), v):
            return False
    return all(contains(pres, g) for g in closed.basis)


# -- presenting a closed subgroup as an elementary group ----------------------

def embedding(S):
    """Canonical elementary group K with an injective closed iota: K -> G.

    Wrapped directions of the component become torus coordinates of K, flat
    directions become vector coordinates; the discrete part is Smith-reduced
    against the cover lattice into free and torsion generators.
    """
    G = S.ambient
    p, a = G.p, G.a
    Vrows = list(S.v_basis)
    d = len(Vrows)

    u_vecs, w_vecs = [], []
    if d:
        Bv = mx.transpose(tuple(Vrows))  # p x d
        topA = tuple(Bv[i] for i in range(a))
        k_theta = mx.right_kernel_basis(topA) if a else \
            [tuple(Fraction(1 if i == j else 0) for i in range(d)) for j in range(d)]
        wt_c = []
        for kv in k_theta:
            vec = tuple(sum((Bv[i][t] * kv[t] for t in range(d)), Fraction(0))
                        for i in range(p))
            wt_c.append(vec[a:])
        if wt_c:
            colmat = mx.transpose(tuple(wt_c))  # c x k0
            ann = mx.left_kernel_basis(colmat)
            lat = mx.rational_int_kernel(tuple(ann)) if ann else \
                [tuple(1 if i == j else 0 for i in range(G.c)) for j in range(G.c)]
            if len(lat) != len(wt_c):
                raise LcaHeartError("internal: component lattice rank mismatch")
            u_vecs = [tuple(Fraction(0) for _ in range(a)) + tuple(Fraction(x) for x in u)
                      for u in lat]
        span = [list(u) for u in u_vecs]
        for v in Vrows:
            if not _in_row_space(span, v):
                w_vecs.append(tuple(v))
                span.append(list(v))
        if len(span) != d:
            raise LcaHeartError("internal: component completion failed")

    basis = list(S.basis)
    m = len(basis)
    lam = lambda_vectors(G)
    _, pivots = mx.rref(tuple(Vrows)) if Vrows else ((), ())
    pivots = pivots[:d]
    lam_red = [_reduce_mod_v(g, Vrows, pivots) for g in lam]

    free_cols = []
    tors = []
    if m:
        M_cols = []
        for lr in lam_red:
            coords = _coords_in_basis(basis, lr, p, G.q)
            if coords is None:
                raise LcaHeartError("internal: cover lattice escaped the subgroup basis")
            M_cols.append(coords)
        if M_cols and any(any(c) for c in M_cols):
            M = tuple(tuple(col[i] for col in M_cols) for i in range(m))
            U, D, Vp = mx.smith_normal_form(M)
            Uinv = _int_inverse(U)
            nlam = len(M_cols)
            for i in range(m):
                e = D[i][i] if i < min(m, nlam) else 0
                if e == 1:
                    continue
                if e == 0:
                    free_cols.append(_combo(basis, [Uinv[j][i] for j in range(m)]))
                else:
                    lam0 = _combo(lam, [Vp[j][i] for j in range(nlam)])
                    tors.append((e, _scale_rational_vector(lam0, Fraction(1, e), p)))
        else:
            free_cols = basis

    tors.sort(key=lambda t: t[0])
    torsion = tuple(e for e, _ in tors)
    K = ElcaGroup(len(w_vecs), len(free_cols), len(u_vecs), torsion)
    tbl = S.table

    RR = [[w_vecs[j][i] for j in range(K.a)] for i in range(a)]
    RT = [[w_vecs[j][i] for j in range(K.a)] for i in range(a, p)]
    TT = [[int(u_vecs[j][i]) for j in range(K.c)] for i in range(a, p)]
    for u in u_vecs:
        if any(u[i] for i in range(a)):
            raise LcaHeartError("internal: wrapped direction touches R coordinates")

    ZR = [[_scalar_entry(free_cols[j], i, tbl) for j in range(K.b)] for i in range(a)]
    ZT = [[_scalar_entry(free_cols[j], i, tbl) for j in range(K.b)] for i in range(a, p)]
    ZZ = [[free_cols[j].ints[i] for j in range(K.b)] for i in range(G.b)]
    ZF = [[free_cols[j].ints[G.b + i] for j in range(K.b)] for i in range(G.f)]
    FT = [[_scalar_entry(tors[j][1], i, tbl) for j in range(K.f)] for i in range(a, p)]
    FF = [[tors[j][1].ints[G.b + i] for j in range(K.f)] for i in range(G.f)]
    for e, kv in tors:
        if not kv.is_rational():
            raise LcaHeartError("internal: torsion generator carries symbols")
        coords = kv.real_component(UNIT_INDEX, p)
        if any(coords[i] for i in range(a)) or any(kv.ints[i] for i in range(G.b)):
            raise LcaHeartError("internal: torsion generator off the compact part")

    iota = ElcaMorphism.from_blocks(K, G, RR=RR, RT=RT, TT=TT, ZR=ZR, ZT=ZT,
                                    ZZ=ZZ, ZF=ZF, FT=FT, FF=FF, table=tbl)
    return K, iota


def _scalar_entry(vec, coord, table):
    acc = {}
    for idx, v in vec.real:
        if v[coord]:
            acc[idx] = v[coord]
    return Scalar.make(table, acc)


def _scale_rational_vector(vec, factor, p):
    if not vec.is_rational():
        raise LcaHeartError("internal: scaling a symbolic vector by a fraction")
    coords = vec.real_component(UNIT_INDEX, p)
    new_real = tuple(factor * x for x in coords)
    ints = []
    for x in vec.ints:
        y = Fraction(x) * factor
        if y.denominator != 1:
            raise LcaHeartError("internal: non-integral scaled lattice coordinate")
        ints.append(int(y))
    sv = {UNIT_INDEX: new_real} if any(new_real) else {}
    return CoverVector.make(sv, ints)


def _coords_in_basis(basis, vec, p, q):
    """Integer coordinates of vec in a free basis of symbolic cover vectors."""
    if not basis:
        return () if vec.is_zero() else None
    m = len(basis)
    sym_idxs = sorted({i for g in basis for i, _ in g.real}
                      | {i for i, _ in vec.real} | {UNIT_INDEX})
    rows, rhs = [], []
    for idx in sym_idxs:
        for coord in range(p):
            rows.append(tuple(g.real_component(idx, p)[coord] for g in basis))
            rhs.append(vec.real_component(idx, p)[coord])
    for coord in range(q):
        rows.append(tuple(Fraction(g.ints[coord]) for g in basis))
        rhs.append(Fraction(vec.ints[coord]))
    sol = mx.rational_int_solve(tuple(rows), tuple(rhs))
    if sol is None:
        return None
    x0, lattice = sol
    if lattice:
        raise LcaHeartError("internal: basis coordinates not unique")
    return x0


# -- quotients -----------------------------------------------------------------

def quotient(S):
    """Canonical elementary quotient Q = G/S with a verified projection.

    Returns (Q, None) when the flat discrete directions of S have no
    rational basis: no typed morphism G -> Q with kernel S exists then,
    because the coset map would need an irrational coefficient on a
    connected coordinate.
    """
    G = S.ambient
    p, q, a = G.p, G.q, G.a
    Vrows = list(S.v_basis)
    d = len(Vrows)
    _, pivots = mx.rref(tuple(Vrows)) if Vrows else ((), ())
    pivots = pivots[:d]
    comp_coords = [i for i in range(p) if i not in pivots]
    p1 = len(comp_coords)

    # rho: cover reals -> complement coordinates (kernel exactly the component)
    rho_mat = []
    for i in comp_coords:
        row = [Fraction(0)] * p
        row[i] = Fraction(1)
        for r, pc in enumerate(pivots):
            row[pc] = -Vrows[r][i]
        rho_mat.append(tuple(row))
    rho_mat = tuple(rho_mat)

    red = []
    for g in S.basis:
        sv = {}
        for idx, v in g.real:
            img = tuple(sum((rho_mat[i][t] * v[t] for t in range(p)), Fraction(0))
                        for i in range(p1))
            if any(img):
                sv[idx] = img
        red.append(CoverVector.make(sv, g.ints))

    # flat discrete part: combinations with zero integer coordinates
    if red:
        int_rows = tuple(tuple(Fraction(g.ints[i]) for g in red) for i in range(q))
        l0_coeffs = mx.rational_int_kernel(int_rows) if q else \
            [tuple(1 if i == j else 0 for i in range(len(red))) for j in range(len(red))]
    else:
        l0_coeffs = []
    l0_vecs = []
    for cv in l0_coeffs:
        g = _combo(red, cv)
        if not g.is_zero():
            l0_vecs.append(g)

    projection_ok = all(g.is_rational() for g in l0_vecs)
    B0 = [g.real_component(UNIT_INDEX, p1) for g in l0_vecs]
    r1 = len(B0)

    N_rows = [tuple(g.ints) for g in red if any(g.ints)]
    Qint, int_proj_rows = _int_quotient(q, N_rows)
    a_Q = p1 - r1
    Qgroup = ElcaGroup(a_Q, Qint.free_rank, r1, Qint.invariant_factors)

    if not projection_ok:
        return Qgroup, None

    if r1:
        B0m = mx.transpose(tuple(B0))  # p1 x r1
        comp_rows = mx.left_kernel_basis(B0m)
        if len(comp_rows) != a_Q:
            raise LcaHeartError("internal: quotient vector rank mismatch")
        tau_rows = _left_inverse_rows(B0, p1)
    else:
        comp_rows = [tuple(Fraction(1 if i == j else 0) for i in range(p1))
                     for j in range(p1)]
        tau_rows = []

    corr = _quotient_corrections(red, comp_rows, tau_rows, a_Q, r1, p1, q, S.table)
    if corr is None:
        return Qgroup, None
    B_R, B_T = corr

    A_R = mx.mat_mul_shaped(tuple(comp_rows), rho_mat, a_Q, p1, p)
    A_T = mx.mat_mul_shaped(tuple(tau_rows), rho_mat, r1, p1, p)
    real_block = tuple(A_R) + tuple(A_T)
    int_real = tuple(tuple(B_R[i][j] for j in range(q)) for i in range(a_Q)) \
        + tuple(tuple(B_T[i][j] for j in range(q)) for i in range(r1))
    pi = ElcaMorphism(G, Qgroup, real_block, int_real, tuple(int_proj_rows))

    if not kernel_subgroup(pi).equals(S):
        raise LcaHeartError("internal: quotient projection has the wrong kernel")
    return Qgroup, pi


def _int_quotient(q, N_rows):
    """Z^q / <rows>: canonical group and full projection row matrix."""
    from .fgab import FgAbGroup, FgAbMorphism, fg_cokernel
    Zq = FgAbGroup(q, ())
    if not N_rows:
        return Zq, mx.iidentity(q)
    f = FgAbMorphism.make(FgAbGroup(len(N_rows), ()), Zq,
                          [[row[i] for row in N_rows] for i in range(q)])
    Qint, pr = fg_cokernel(f)
    return Qint, pr.matrix


def _left_inverse_rows(B0, p1):
    """Rows tau (r1 x p1) with tau applied to B0-columns = identity."""
    r1 = len(B0)
    taus = []
    for i in range(r1):
        target = tuple(Fraction(1 if j == i else 0) for j in range(r1))
        row = mx.solve(tuple(B0), target)  # B0 rows are the lattice vectors
        if row is None:
            raise LcaHeartError("internal: flat lattice basis not independent")
        taus.append(row)
    return taus


def _quotient_corrections(red_gens, comp_rows, tau_rows, a_Q, r1, p1, q, table):
    """Solve the integer-source blocks so the projection kills the basis."""
    B_R = [[table.zero() for _ in range(q)] for _ in range(a_Q)]
    B_T = [[table.zero() for _ in range(q)] for _ in range(r1)]
    m = len(red_gens)
    if m == 0:
        return B_R, B_T
    Mt = tuple(tuple(Fraction(g.ints[j]) for j in range(q)) for g in red_gens)  # m x q

    def imgs(rows, count):
        out = []
        for g in red_gens:
            acc = {}
            for idx, v in g.real:
                img = tuple(sum((rows[i][t] * v[t] for t in range(p1)), Fraction(0))
                            for i in range(count))
                if any(img):
                    acc[idx] = img
            out.append(acc)
        return out

    imgs_R = imgs(comp_rows, a_Q)
    imgs_T = imgs(tau_rows, r1)

    for i in range(a_Q):
        per_sym = {}
        for j, img in enumerate(imgs_R):
            for idx, v in img.items():
                per_sym.setdefault(idx, [Fraction(0)] * m)[j] = v[i]
        for idx, rhsv in per_sym.items():
            sol = mx.solve(Mt, tuple(-x for x in rhsv))
            if sol is None:
                return None
            for jj in range(q):
                if sol[jj]:
                    B_R[i][jj] = B_R[i][jj] + Scalar.make(table, {idx: sol[jj]})

    for i in range(r1):
        per_sym = {}
        for j, img in enumerate(imgs_T):
            for idx, v in img.items():
                per_sym.setdefault(idx, [Fraction(0)] * m)[j] = v[i]
        for idx, rhsv in per_sym.items():
            if idx == UNIT_INDEX:
                continue
            sol = mx.solve(Mt, tuple(-x for x in rhsv))
            if sol is None:
                return None
            for jj in range(q):
                if sol[jj]:
                    B_T[i][jj] = B_T[i][jj] + Scalar.make(table, {idx: sol[jj]})
        rat = per_sym.get(UNIT_INDEX, [Fraction(0)] * m)
        t_mix = {UNIT_INDEX: tuple(-x for x in rat)} if any(rat) else {}
        solmix = mx.mixed_solve(Mt, SymMat.from_rational(mx.identity(m)), t_mix)
        if solmix is None:
            return None
        beta = solmix.x0.get(UNIT_INDEX, tuple(Fraction(0) for _ in range(q)))
        for jj in range(q):
            if beta[jj]:
                B_T[i][jj] = B_T[i][jj] + Scalar.make(table, {UNIT_INDEX: beta[jj]})
    return B_R, B_T


# -- factorizations and surjectivity -------------------------------------------

def is_surjective(f):
    """Set-theoretic surjectivity of a typed morphism."""
    tgt = f.target
    if mx.rank(f.real_block) != tgt.p:
        return False
    ints = [[f.int_int[i][j] for i in range(tgt.q)] for j in range(f.source.q)]
    ints += [list(g.ints) for g in lambda_vectors(tgt)]
    H = mx.lattice_basis(ints, tgt.q)
    return _is_unit_lattice(H, tgt.q)


def factor_through_monic(h, iota):
    """Unique k with iota o k = h, or None when h misses the subgroup."""
    if h.target != iota.target:
        raise LcaHeartError("factorization target mismatch")
    K, A_src = iota.source, h.source
    G = iota.target
    p, q = G.p, G.q

    # real sources: exact rational solves through the injective real block
    real_cols = []
    for j in range(A_src.p):
        col = tuple(h.real_block[i][j] for i in range(p))
        sol = mx.solve(iota.real_block, col)
        if sol is None:
            return None
        real_cols.append(sol)
    k_real = tuple(tuple(real_cols[j][i] for j in range(A_src.p)) for i in range(K.p))

    # integer sources: mixed solve through iota's cover map modulo the lattice
    m = p + q
    A = tuple(tuple(iota.real_block[i]) for i in range(p)) \
        + tuple(tuple(Fraction(0) for _ in range(K.p)) for _ in range(q))
    B = iota.int_real_symmat()
    if q:
        B = B.vstack(SymMat.from_rational(mx.mat(iota.int_int)))
    lam_cols = [tuple(-Fraction(x) for x in real) + tuple(-Fraction(x) for x in ints)
                for real, ints in G.lambda_gens()]
    if lam_cols:
        B = B.hstack(SymMat.from_rational(
            tuple(tuple(col[i] for col in lam_cols) for i in range(m))))

    hsm = h.int_real_symmat()
    k_int_real = [[None] * A_src.q for _ in range(K.p)]
    k_int_int = [[0] * A_src.q for _ in range(K.q)]
    for j in range(A_src.q):
        t = {}
        for idx, vec in hsm.column(j).items():
            t[idx] = tuple(vec) + tuple(Fraction(0) for _ in range(q))
        base = t.get(UNIT_INDEX, tuple(Fraction(0) for _ in range(m)))
        t[UNIT_INDEX] = tuple(base[:p]) + tuple(Fraction(h.int_int[i][j]) for i in range(q))
        t = {k2: v for k2, v in t.items() if any(v)}
        sol = mx.mixed_solve(A, B, t, ncols_real=K.p)
        if sol is None:
            return None
        for i in range(K.p):
            acc = {idx: vec[i] for idx, vec in sol.x0.items() if vec[i]}
            k_int_real[i][j] = Scalar.make(h.table, acc)
        for i in range(K.q):
            k_int_int[i][j] = sol.y0[i]
    k_int_real = tuple(tuple(row) for row in k_int_real)

    k = ElcaMorphism(A_src, K, k_real, k_int_real, tuple(tuple(r) for r in k_int_int))
    if iota.compose(k) != h:
        return None
    return k


def factor_through_epic(pi, h):
    """Unique d with d o pi = h; requires h to kill the kernel of pi."""
    if h.source != pi.source:
        raise LcaHeartError("factorization source mismatch")
    Q = pi.target
    D = h.target
    p, q = Q.p, Q.q
    src = pi.source

    # sections of pi on cover generators of Q
    m = p + q
    A = tuple(tuple(pi.real_block[i]) for i in range(p)) \
        + tuple(tuple(Fraction(0) for _ in range(src.p)) for _ in range(q))
    B = pi.int_real_symmat()
    if q:
        B = B.vstack(SymMat.from_rational(mx.mat(pi.int_int)))
    lam_cols = [tuple(-Fraction(x) for x in real) + tuple(-Fraction(x) for x in ints)
                for real, ints in Q.lambda_gens()]
    if lam_cols:
        B = B.hstack(SymMat.from_rational(
            tuple(tuple(col[i] for col in lam_cols) for i in range(m))))

    # real generators of Q: rational preimages through the real block
    d_real_cols = []
    for j in range(p):
        target = tuple(Fraction(1 if i == j else 0) for i in range(p))
        sect = mx.solve(pi.real_block, target)
        if sect is None:
            raise LcaHeartError("projection real block not surjective")
        img_real = tuple(sum((h.real_block[i][t] * sect[t] for t in range(src.p)),
                             Fraction(0)) for i in range(D.p))
        d_real_cols.append(img_real)
    d_real = tuple(tuple(d_real_cols[j][i] for j in range(p)) for i in range(D.p))

    hsm = h.int_real_symmat()
    d_int_real = [[None] * q for _ in range(D.p)]
    d_int_int = [[0] * q for _ in range(D.q)]
    for j in range(q):
        t = {UNIT_INDEX: tuple(Fraction(0) for _ in range(p))
             + tuple(Fraction(1 if i == j else 0) for i in range(q))}
        sol = mx.mixed_solve(A, B, t, ncols_real=src.p)
        if sol is None:
            raise LcaHeartError("projection misses an integer generator")
        sect_real = sol.x0
        sect_int = sol.y0[:src.q]
        for i in range(D.p):
            acc = {}
            for idx, vec in sect_real.items():
                val = sum((h.real_block[i][t2] * vec[t2] for t2 in range(src.p)),
                          Fraction(0))
                if val:
                    acc[idx] = acc.get(idx, Fraction(0)) + val
            for t2 in range(src.q):
                if sect_int[t2]:
                    s = hsm.column(t2)
                    for idx, vec in s.items():
                        if vec[i]:
                            acc[idx] = acc.get(idx, Fraction(0)) + sect_int[t2] * vec[i]
            d_int_real[i][j] = Scalar.make(h.table, acc)
        for i in range(D.q):
            d_int_int[i][j] = sum(h.int_int[i][t2] * sect_int[t2] for t2 in range(src.q))
    d_int_real = tuple(tuple(row) for row in d_int_real)

    d = ElcaMorphism(Q, D, d_real, d_int_real, tuple(tuple(r) for r in d_int_int))
    if d.compose(pi) != h:
        raise LcaHeartError("factor through epic failed: h does not kill the kernel")
    return d
