"""Elementary locally compact abelian groups R^a + Z^b + T^c + F and their
continuous homomorphisms as typed block matrices.

The Hom-block table is rigid: connected-to-discrete and compact-to-vector
blocks are structurally zero, Hom(R,R) and Hom(R,T) entries are rational,
and irrational coefficients are confined to Hom(Z,R) and Hom(Z,T).  That
typing closes composition without ever multiplying two symbols.

Every group G has a *cover* R^p + Z^q (p = a+c, q = b+f) with a standard
kernel lattice; morphisms are stored as their cover blocks.  All subgroup
computations elsewhere operate on covers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import matrices as mx
from .errors import FragmentTypingError, LcaHeartError, OutOfFragmentError
from .fgab import FgAbGroup
from .matrices import SymMat
from .scalars import (
    RATIONALS,
    CircleScalar,
    Scalar,
    as_scalar,
    circle_reduce,
    common_table,
)


@dataclass(frozen=True)
class ElcaGroup:
    """R^a + Z^b + T^c + F with F a canonical invariant-factor chain."""

    a: int
    b: int
    c: int
    torsion: tuple = ()

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise LcaHeartError("negative rank")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        facs = self.torsion
        if any(d < 2 for d in facs):
            raise LcaHeartError("torsion orders must be >= 2")
        if any(facs[i + 1] % facs[i] for i in range(len(facs) - 1)):
            raise LcaHeartError("torsion must form a divisibility chain")

    @classmethod
    def of(cls, a=0, b=0, c=0, divisors=()):
        """Build with an arbitrary list of finite cyclic orders."""
        fg = FgAbGroup.from_divisors(*divisors)
        if fg.free_rank:
            raise LcaHeartError("divisors must be finite orders")
        return cls(a, b, c, fg.invariant_factors)

    # -- structure predicates ----------------------------------------------

    @property
    def f(self):
        return len(self.torsion)

    def is_compact(self):
        return self.a == 0 and self.b == 0

    def is_discrete(self):
        return self.a == 0 and self.c == 0

    def is_connected(self):
        return self.b == 0 and not self.torsion

    def is_vector_free(self):
        return self.a == 0

    def is_zero(self):
        return self.a == self.b == self.c == 0 and not self.torsion

    def is_compactly_generated(self):
        # every elementary group is R^n + Z^m + compact
        return True

    # -- cover bookkeeping ---------------------------------------------------

    @property
    def p(self):
        """Real cover dimension: R coordinates then T-cover coordinates."""
        return self.a + self.c

    @property
    def q(self):
        """Integer cover dimension: Z coordinates then F-cover coordinates."""
        return self.b + self.f

    def lambda_gens(self):
        """Cover-lattice generators: unit T vectors and order-scaled F vectors,
        each as a (real rational vector, int vector) pair."""
        gens = []
        for j in range(self.c):
            real = tuple(Fraction(1 if i == self.a + j else 0) for i in range(self.p))
            gens.append((real, tuple(0 for _ in range(self.q))))
        for j, d in enumerate(self.torsion):
            ints = tuple(d if i == self.b + j else 0 for i in range(self.q))
            gens.append((tuple(Fraction(0) for _ in range(self.p)), ints))
        return gens

    def dual(self):
        """Pontryagin dual: R and F self-dual, Z and T exchanged."""
        return ElcaGroup(self.a, self.c, self.b, self.torsion)

    def direct_sum_raw(self, other):
        """Concatenated ranks with the torsion recanonicalized.

        Use direct_sum() in elca for the morphism package."""
        fg = FgAbGroup.from_divisors(*(self.torsion + other.torsion))
        return ElcaGroup(self.a + other.a, self.b + other.b, self.c + other.c,
                         fg.invariant_factors)

    def to_fgab(self):
        if not self.is_discrete():
            raise LcaHeartError("only discrete groups convert to FgAb data")
        return FgAbGroup(self.b, self.torsion)

    @classmethod
    def from_fgab(cls, G):
        return cls(0, G.free_rank, 0, G.invariant_factors)

    def __str__(self):
        parts = []
        if self.a:
            parts.append("R" + (f"^{self.a}" if self.a > 1 else ""))
        if self.b:
            parts.append("Z" + (f"^{self.b}" if self.b > 1 else ""))
        if self.c:
            parts.append("T" + (f"^{self.c}" if self.c > 1 else ""))
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"R": self.a, "Z": self.b, "T": self.c, "F": list(self.torsion)}

    @classmethod
    def from_json(cls, data):
        return cls(data["R"], data["Z"], data["T"], tuple(data["F"]))


ZERO_GROUP = ElcaGroup(0, 0, 0)


def _frac_rows(rows, m, n, what):
    rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len(rows) != m or any(len(r) != n for r in rows):
        raise LcaHeartError(f"{what} block must be {m}x{n}")
    return rows


@dataclass(frozen=True)
class ElcaMorphism:
    """Continuous homomorphism of elementary groups as cover blocks.

    real_block : (p2 x p1) rational, with structural zeros and integral
                 torus-to-torus part enforced;
    int_real   : (p2 x q1) scalar entries, torus rows canonical mod 1;
    int_int    : (q2 x q1) integral, finite rows canonical mod the orders.
    """

    source: ElcaGroup
    target: ElcaGroup
    real_block: tuple
    int_real: tuple
    int_int: tuple

    def __post_init__(self):
        src, tgt = self.source, self.target
        rb = _frac_rows(self.real_block, tgt.p, src.p, "real")
        ir_rows = self.int_real
        if len(ir_rows) != tgt.p or any(len(r) != src.q for r in ir_rows):
            raise LcaHeartError("int_real block shape mismatch")
        ii = tuple(tuple(int(x) for x in row) for row in self.int_int)
        if len(ii) != tgt.q or any(len(r) != src.q for r in ii):
            raise LcaHeartError("int_int block shape mismatch")

        table = common_table(*(s.table for row in ir_rows for s in row
                               if isinstance(s, (Scalar, CircleScalar))))

        # canonicalize: torus-target rows of int_real mod 1
        canon_ir = []
        for i in range(tgt.p):
            row = []
            for j in range(src.q):
                s = ir_rows[i][j]
                if isinstance(s, CircleScalar):
                    s = s.value
                elif not isinstance(s, Scalar):
                    s = as_scalar(s, table)
                if i >= tgt.a:
                    s = circle_reduce(s).value
                row.append(s)
            canon_ir.append(tuple(row))
        canon_ir = tuple(canon_ir)

        # canonicalize: finite-target rows of int_int mod the orders
        canon_ii = []
        for i in range(tgt.q):
            row = list(ii[i])
            if i >= tgt.b:
                d = tgt.torsion[i - tgt.b]
                row = [x % d for x in row]
            canon_ii.append(tuple(row))
        canon_ii = tuple(canon_ii)

        object.__setattr__(self, "real_block", rb)
        object.__setattr__(self, "int_real", canon_ir)
        object.__setattr__(self, "int_int", canon_ii)
        object.__setattr__(self, "_table", table)
        self._validate()

    @property
    def table(self):
        return self._table

    def _validate(self):
        src, tgt = self.source, self.target
        # torus source columns: no compact-to-vector or compact-to-discrete parts
        for i in range(tgt.a):
            for j in range(src.a, src.p):
                if self.real_block[i][j]:
                    raise FragmentTypingError("Hom(T, R) is zero in the fragment")
        for i in range(tgt.a, tgt.p):
            for j in range(src.a, src.p):
                if self.real_block[i][j].denominator != 1:
                    raise FragmentTypingError("torus-to-torus block must be integral")
        # real sources never hit discrete targets; that block does not even
        # exist in the storage format (int_int has integer sources only)
        for i in range(tgt.a):
            for j in range(src.b, src.q):
                if not self.int_real[i][j].is_zero():
                    raise FragmentTypingError("Hom(F, R) is zero in the fragment")
        for i in range(tgt.a, tgt.p):
            for j, d in enumerate(src.torsion):
                s = self.int_real[i][src.b + j]
                if not s.is_rational():
                    raise FragmentTypingError("finite-to-torus entries must be rational")
                if (s.rational_part * d).denominator != 1:
                    raise FragmentTypingError(
                        f"finite-to-torus entry {s.rational_part} incompatible with order {d}")
        for i in range(tgt.b):
            for j in range(src.b, src.q):
                if self.int_int[i][j]:
                    raise FragmentTypingError("Hom(F, Z) is zero in the fragment")
        for i, e in enumerate(tgt.torsion):
            for j, d in enumerate(src.torsion):
                x = self.int_int[tgt.b + i][src.b + j]
                if (x * d) % e:
                    raise FragmentTypingError(
                        f"finite block entry {x} does not map Z/{d} into Z/{e}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_blocks(cls, source, target, *, RR=None, ZR=None, ZZ=None, RT=None,
                    ZT=None, TT=None, ZF=None, FT=None, FF=None, table=RATIONALS):
        a1, b1, c1, f1 = source.a, source.b, source.c, source.f
        a2, b2, c2, f2 = target.a, target.b, target.c, target.f

        def frc(block, m, n, name):
            if block is None:
                return mx.zeros(m, n)
            return _frac_rows(block, m, n, name)

        def scl(block, m, n, name):
            if block is None:
                return tuple(tuple(table.zero() for _ in range(n)) for _ in range(m))
            out = []
            if len(block) != m or any(len(r) != n for r in block):
                raise LcaHeartError(f"{name} block must be {m}x{n}")
            for row in block:
                out.append(tuple(s if isinstance(s, (Scalar, CircleScalar))
                                 else as_scalar(s, table) for s in row))
            return tuple(out)

        def itg(block, m, n, name):
            if block is None:
                return mx.izeros(m, n)
            out = tuple(tuple(int(x) for x in row) for row in block)
            if len(out) != m or any(len(r) != n for r in out):
                raise LcaHeartError(f"{name} block must be {m}x{n}")
            return out

        rr = frc(RR, a2, a1, "RR")
        rt = frc(RT, c2, a1, "RT")
        tt = itg(TT, c2, c1, "TT")
        zr = scl(ZR, a2, b1, "ZR")
        zt = scl(ZT, c2, b1, "ZT")
        ft = scl(FT, c2, f1, "FT")
        zz = itg(ZZ, b2, b1, "ZZ")
        zf = itg(ZF, f2, b1, "ZF")
        ff = itg(FF, f2, f1, "FF")

        real = tuple(rr[i] + tuple(Fraction(0) for _ in range(c1)) for i in range(a2)) \
            + tuple(rt[i] + tuple(Fraction(x) for x in tt[i]) for i in range(c2))
        int_real = tuple(zr[i] + tuple(table.zero() for _ in range(f1)) for i in range(a2)) \
            + tuple(zt[i] + ft[i] for i in range(c2))
        int_int = tuple(zz[i] + tuple(0 for _ in range(f1)) for i in range(b2)) \
            + tuple(zf[i] + ff[i] for i in range(f2))
        return cls(source, target, real, int_real, int_int)

    @classmethod
    def zero(cls, source, target):
        return cls.from_blocks(source, target)

    @classmethod
    def identity(cls, group):
        real = mx.identity(group.p)
        int_real = tuple(tuple(RATIONALS.zero() for _ in range(group.q))
                         for _ in range(group.p))
        return cls(group, group, real, int_real, mx.iidentity(group.q))

    # -- block accessors -----------------------------------------------------

    def RR(self):
        return tuple(row[:self.source.a] for row in self.real_block[:self.target.a])

    def RT(self):
        return tuple(row[:self.source.a] for row in self.real_block[self.target.a:])

    def TT(self):
        return tuple(tuple(int(x) for x in row[self.source.a:])
                     for row in self.real_block[self.target.a:])

    def ZR(self):
        return tuple(row[:self.source.b] for row in self.int_real[:self.target.a])

    def ZT(self):
        return tuple(row[:self.source.b] for row in self.int_real[self.target.a:])

    def FT(self):
        return tuple(row[self.source.b:] for row in self.int_real[self.target.a:])

    def ZZ(self):
        return tuple(row[:self.source.b] for row in self.int_int[:self.target.b])

    def ZF(self):
        return tuple(row[:self.source.b] for row in self.int_int[self.target.b:])

    def FF(self):
        return tuple(row[self.source.b:] for row in self.int_int[self.target.b:])

    def int_real_symmat(self):
        return SymMat.from_scalars(self.int_real, self.target.p, self.source.q)

    # -- algebra ---------------------------------------------------------------

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise LcaHeartError("composition source/target mismatch")
        p_mid, q_mid = self.source.p, self.source.q
        real = mx.mat_mul_shaped(self.real_block, other.real_block,
                                 self.target.p, p_mid, other.source.p)
        part1 = other.int_real_symmat().left_mul(self.real_block) \
            if p_mid else SymMat.zero(self.target.p, other.source.q)
        part2 = self.int_real_symmat().right_mul_int(other.int_int) \
            if q_mid else SymMat.zero(self.target.p, other.source.q)
        int_real = part1.add(part2).to_scalars(common_table(self.table, other.table))
        int_int = mx.imat_mul_shaped(self.int_int, other.int_int,
                                     self.target.q, q_mid, other.source.q)
        return ElcaMorphism(other.source, self.target, real, int_real, int_int)

    def __add__(self, other):
        if (other.source, other.target) != (self.source, self.target):
            raise LcaHeartError("sum of morphisms with different endpoints")
        real = mx.mat_add(self.real_block, other.real_block)
        int_real = tuple(tuple(x + y for x, y in zip(r1, r2))
                         for r1, r2 in zip(self.int_real, other.int_real))
        int_int = tuple(tuple(x + y for x, y in zip(r1, r2))
                        for r1, r2 in zip(self.int_int, other.int_int))
        return ElcaMorphism(self.source, self.target, real, int_real, int_int)

    def __neg__(self):
        real = mx.mat_neg(self.real_block)
        int_real = tuple(tuple(-x for x in row) for row in self.int_real)
        int_int = tuple(tuple(-x for x in row) for row in self.int_int)
        return ElcaMorphism(self.source, self.target, real, int_real, int_int)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return (all(all(x == 0 for x in row) for row in self.real_block)
                and all(all(s.is_zero() for s in row) for row in self.int_real)
                and all(all(x == 0 for x in row) for row in self.int_int))

    def is_dualizable(self):
        """The transpose leaves the fragment iff Hom(Z,R) entries carry symbols."""
        return all(s.is_rational() for row in self.int_real[:self.target.a]
                   for s in row[:self.source.b])

    def dual(self):
        """Contravariant Pontryagin transpose: dual(g o f) = dual(f) o dual(g)."""
        if not self.is_dualizable():
            raise OutOfFragmentError(
                "dual would need an irrational Hom(R,T) entry; the morphism's "
                "Hom(Z,R) block carries symbols")
        src, tgt = self.source, self.target
        RR, RT, TT = self.RR(), self.RT(), self.TT()
        ZR, ZT, FT = self.ZR(), self.ZT(), self.FT()
        ZZ, ZF, FF = self.ZZ(), self.ZF(), self.FF()
        table = self.table
        RRd = [[RR[j][i] for j in range(tgt.a)] for i in range(src.a)]
        ZRd = [[RT[j][i] for j in range(tgt.c)] for i in range(src.a)]
        ZZd = [[TT[j][i] for j in range(tgt.c)] for i in range(src.c)]
        RTd = [[ZR[j][i].rational_part for j in range(tgt.a)] for i in range(src.b)]
        ZTd = [[ZT[j][i] for j in range(tgt.c)] for i in range(src.b)]
        TTd = [[ZZ[j][i] for j in range(tgt.b)] for i in range(src.b)]
        # finite blocks carry the order weights of the self-duality pairing
        ZFd = [[int(FT[j][i].rational_part * src.torsion[i]) % src.torsion[i]
                for j in range(tgt.c)] for i in range(src.f)]
        FTd = [[circle_reduce(as_scalar(Fraction(ZF[j][i], tgt.torsion[j]), table)).value
                for j in range(tgt.f)] for i in range(src.b)]
        FFd = [[FF[j][i] * src.torsion[i] // tgt.torsion[j]
                for j in range(tgt.f)] for i in range(src.f)]
        return ElcaMorphism.from_blocks(
            tgt.dual(), src.dual(),
            RR=RRd, ZR=ZRd, ZZ=ZZd, RT=RTd, ZT=ZTd, TT=TTd,
            ZF=ZFd, FT=FTd, FF=FFd, table=table)

    # -- cover application (exact elements) -----------------------------------

    def apply_cover(self, real_vec, int_vec):
        """Image of a cover element; real entries are Scalars."""
        src, tgt = self.source, self.target
        table = self.table
        real_out = []
        for i in range(tgt.p):
            acc = table.zero()
            for j in range(src.p):
                if self.real_block[i][j]:
                    acc = acc + self.real_block[i][j] * as_scalar(real_vec[j], table)
            for j in range(src.q):
                if not self.int_real[i][j].is_zero():
                    acc = acc + int_vec[j] * self.int_real[i][j]
            real_out.append(acc)
        int_out = [sum(self.int_int[i][j] * int_vec[j] for j in range(src.q))
                   for i in range(tgt.q)]
        return tuple(real_out), tuple(int_out)

    def __str__(self):
        return f"{self.source} -> {self.target}"

    def render(self):
        lines = [f"{self.source} -> {self.target}"]
        for name in ("RR", "ZR", "ZZ", "RT", "ZT", "TT", "ZF", "FT", "FF"):
            block = getattr(self, name)()
            if block and block[0]:
                rendered = [[x.render() if isinstance(x, Scalar) else str(x) for x in row]
                            for row in block]
                if any(any(x not in ("0",) for x in row) for row in rendered):
                    lines.append(f"  {name} = {rendered}")
        return "\n".join(lines)


def mx_transpose_scalars(rows):
    m = len(rows)
    n = len(rows[0]) if rows else 0
    return tuple(tuple(rows[i][j] for i in range(m)) for j in range(n))


def direct_sum(G, H):
    """Biproduct with its structure maps.

    Returns (S, incl_G, incl_H, proj_G, proj_H).  The finite part is
    recanonicalized, so the structure maps carry the change of generators.
    """
    S = G.direct_sum_raw(H)
    concat_orders = G.torsion + H.torsion
    k = len(concat_orders)
    if k:
        D = tuple(tuple(concat_orders[i] if i == j else 0 for j in range(k))
                  for i in range(k))
        U, Dd, _ = mx.smith_normal_form(D)
        # U maps the concatenated relation lattice onto the canonical one;
        # x (concat coords) |-> U x (canonical presentation coords)
        diag = [Dd[i][i] for i in range(k)]
        keep = [i for i, d in enumerate(diag) if d > 1]
        if tuple(diag[i] for i in keep) != S.torsion:
            raise LcaHeartError("internal: torsion canonicalization mismatch")
        fwd = tuple(tuple(U[i][j] for j in range(k)) for i in keep)
        Uinv = _int_inverse_small(U)
        bwd = tuple(tuple(Uinv[i][keep[j]] for j in range(len(keep))) for i in range(k))
    else:
        fwd = ()
        bwd = ()

    incl_G = _structured_map(G, S, H, side="left", fwd=fwd, bwd=bwd, role="incl")
    incl_H = _structured_map(H, S, G, side="right", fwd=fwd, bwd=bwd, role="incl")
    proj_G = _structured_map(G, S, H, side="left", fwd=fwd, bwd=bwd, role="proj")
    proj_H = _structured_map(H, S, G, side="right", fwd=fwd, bwd=bwd, role="proj")
    return S, incl_G, incl_H, proj_G, proj_H


def _int_inverse_small(U):
    n = len(U)
    if n == 0:
        return ()
    inv_cols = []
    for j in range(n):
        col = mx.solve(mx.mat(U), tuple(Fraction(1 if i == j else 0) for i in range(n)))
        inv_cols.append(col)
    return tuple(tuple(int(inv_cols[j][i]) for j in range(n)) for i in range(n))


def _structured_map(G, S, other, side, fwd, bwd, role):
    """Inclusion/projection between G and the canonical biproduct S."""
    offs_a = 0 if side == "left" else other.a
    offs_b = 0 if side == "left" else other.b
    offs_c = 0 if side == "left" else other.c
    offs_f = 0 if side == "left" else other.f

    if role == "incl":
        RR = [[Fraction(1 if i == offs_a + j else 0) for j in range(G.a)] for i in range(S.a)]
        ZZ = [[1 if i == offs_b + j else 0 for j in range(G.b)] for i in range(S.b)]
        TT = [[1 if i == offs_c + j else 0 for j in range(G.c)] for i in range(S.c)]
        # concat coordinate offs_f + j, then forward to the canonical chain
        FF = [[fwd[i][offs_f + j] if fwd else 0 for j in range(G.f)] for i in range(S.f)]
        return ElcaMorphism.from_blocks(G, S, RR=RR, ZZ=ZZ, TT=TT, FF=FF)
    else:
        RR = [[Fraction(1 if offs_a + i == j else 0) for j in range(S.a)] for i in range(G.a)]
        ZZ = [[1 if offs_b + i == j else 0 for j in range(S.b)] for i in range(G.b)]
        TT = [[1 if offs_c + i == j else 0 for j in range(S.c)] for i in range(G.c)]
        FF = [[bwd[offs_f + i][j] if bwd else 0 for j in range(S.f)] for i in range(G.f)]
        return ElcaMorphism.from_blocks(S, G, RR=RR, ZZ=ZZ, TT=TT, FF=FF)


def direct_sum_morphisms(f, g):
    """f + g on the canonical biproducts of sources and targets."""
    S_src, iG, iH, pG, pH = direct_sum(f.source, g.source)
    S_tgt, jG, jH, qG, qH = direct_sum(f.target, g.target)
    return jG.compose(f).compose(pG) + jH.compose(g).compose(pH)
