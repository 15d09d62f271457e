"""Finitely generated abelian groups via integer matrices and Smith form.

Groups are always held in canonical form: a free rank plus an ascending
divisibility chain of invariant factors.  Morphisms are integer matrices on
the canonical generators (free generators first, then torsion generators),
with torsion-target rows reduced modulo the target orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import matrices as mx
from .errors import LcaHeartError
from .matrices import smith_normal_form  # re-exported: the engine behind everything here

__all__ = [
    "FgAbGroup", "FgAbMorphism", "smith_normal_form",
    "fg_kernel", "fg_cokernel", "fg_image", "fg_is_isomorphic",
]


@dataclass(frozen=True)
class FgAbGroup:
    free_rank: int
    invariant_factors: tuple

    def __post_init__(self):
        if self.free_rank < 0:
            raise LcaHeartError("negative free rank")
        facs = self.invariant_factors
        if any(d < 2 for d in facs):
            raise LcaHeartError("invariant factors must be >= 2")
        if any(facs[i + 1] % facs[i] for i in range(len(facs) - 1)):
            raise LcaHeartError("invariant factors must form a divisibility chain")

    @classmethod
    def from_divisors(cls, *divisors):
        """Canonicalize an arbitrary direct sum of cyclic groups Z/d (d=0 is Z)."""
        rank = sum(1 for d in divisors if d == 0)
        torsion = [abs(d) for d in divisors if d != 0 and abs(d) != 1]
        if not torsion:
            return cls(rank, ())
        D = tuple(tuple(torsion[i] if i == j else 0 for j in range(len(torsion)))
                  for i in range(len(torsion)))
        _, S, _ = smith_normal_form(D)
        chain = tuple(S[i][i] for i in range(len(torsion)) if S[i][i] > 1)
        return cls(rank, chain)

    @classmethod
    def from_presentation(cls, ngens, relation_rows):
        """Z^ngens modulo the subgroup generated by the given relation rows."""
        if not relation_rows:
            return cls(ngens, ())
        _, D, _ = smith_normal_form(tuple(tuple(r) for r in relation_rows))
        diag = [D[i][i] for i in range(min(len(D), ngens))]
        torsion = [d for d in diag if d > 1]
        rank = ngens - sum(1 for d in diag if d != 0)
        return cls.from_divisors(*([0] * rank + torsion))

    # canonical generator order: free generators first, then torsion
    @property
    def orders(self):
        return (0,) * self.free_rank + self.invariant_factors

    @property
    def ngens(self):
        return self.free_rank + len(self.invariant_factors)

    def is_finite(self):
        return self.free_rank == 0

    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def order(self):
        if not self.is_finite():
            raise LcaHeartError("infinite group has no order")
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def direct_sum(self, other):
        return FgAbGroup.from_divisors(
            *([0] * (self.free_rank + other.free_rank)
              + list(self.invariant_factors) + list(other.invariant_factors)))

    def elements(self):
        """All elements of a finite group, as coordinate tuples."""
        if not self.is_finite():
            raise LcaHeartError("cannot enumerate an infinite group")
        from itertools import product
        return [tuple(t) for t in product(*(range(d) for d in self.invariant_factors))]

    def reduce(self, vector):
        """Canonical representative of a coordinate vector."""
        out = []
        for x, d in zip(vector, self.orders):
            out.append(int(x) % d if d else int(x))
        return tuple(out)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data):
        return cls(data["rank"], tuple(data["torsion"]))


@dataclass(frozen=True)
class FgAbMorphism:
    source: FgAbGroup
    target: FgAbGroup
    matrix: tuple  # rows indexed by target generators, columns by source generators

    def __post_init__(self):
        m = len(self.matrix)
        if m != self.target.ngens:
            raise LcaHeartError("morphism matrix row count mismatch")
        if any(len(row) != self.source.ngens for row in self.matrix):
            raise LcaHeartError("morphism matrix column count mismatch")
        canon = _canonical_matrix(self.source, self.target, self.matrix)
        object.__setattr__(self, "matrix", canon)

    @classmethod
    def make(cls, source, target, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(source, target, rows)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, mx.izeros(target.ngens, source.ngens))

    @classmethod
    def identity(cls, group):
        return cls(group, group, mx.iidentity(group.ngens))

    def __call__(self, vector):
        vec = [int(x) for x in vector]
        img = [sum(row[j] * vec[j] for j in range(len(vec))) for row in self.matrix]
        return self.target.reduce(img)

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise LcaHeartError("composition shape mismatch")
        rows = mx.imat_mul_shaped(self.matrix, other.matrix,
                                  self.target.ngens, self.source.ngens,
                                  other.source.ngens)
        return FgAbMorphism(other.source, self.target, rows)

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.matrix)

    def __str__(self):
        return f"{self.source} -> {self.target}: {self.matrix}"

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": [list(r) for r in self.matrix]}

    @classmethod
    def from_json(cls, data):
        return cls.make(FgAbGroup.from_json(data["source"]),
                        FgAbGroup.from_json(data["target"]),
                        data["matrix"])


def _canonical_matrix(source, target, rows):
    """Reduce torsion rows mod target orders; check order compatibility."""
    s_orders = source.orders
    t_orders = target.orders
    out = []
    for i, row in enumerate(rows):
        e = t_orders[i]
        new_row = []
        for j, x in enumerate(row):
            d = s_orders[j]
            x = int(x)
            if e:
                x %= e
                if d and (x * d) % e:
                    raise LcaHeartError(
                        f"entry {x} does not map Z/{d} into Z/{e}")
            elif d and x:
                raise LcaHeartError("torsion generator cannot map to a free generator")
            new_row.append(x)
        out.append(tuple(new_row))
    return tuple(out)


def _relation_columns(group):
    """Columns generating the relation lattice of the canonical presentation."""
    cols = []
    n = group.ngens
    for j, d in enumerate(group.orders):
        if d:
            cols.append(tuple(d if i == j else 0 for i in range(n)))
    return cols


def _int_inverse(U):
    """Inverse of a unimodular integer matrix."""
    n = len(U)
    inv = []
    for j in range(n):
        col = mx.solve(mx.mat(U), tuple(Fraction(1 if i == j else 0) for i in range(n)))
        inv.append(col)
    return tuple(tuple(int(inv[j][i]) for j in range(n)) for i in range(n))


def _present_subquotient(ambient, gen_cols, rel_cols):
    """Present (sublattice generated by gen_cols + rel_cols) / (rel_cols).

    Everything lives in Z^s where s = ambient.ngens and rel_cols spans the
    relation lattice of the ambient presentation.  Returns (group K,
    embedding FgAbMorphism K -> ambient).
    """
    s = ambient.ngens
    all_gens = list(gen_cols) + list(rel_cols)
    if not all_gens:
        return FgAbGroup(0, ()), FgAbMorphism.make(FgAbGroup(0, ()), ambient,
                                                   mx.izeros(s, 0))
    # canonical basis of the sublattice L
    basis_rows = mx.lattice_basis([tuple(c) for c in all_gens], s)
    r = len(basis_rows)
    B = tuple(tuple(basis_rows[k][i] for k in range(r)) for i in range(s))  # s x r columns
    # express each relation column in the L-basis
    N_cols = []
    for c in rel_cols:
        coords = mx.int_solve(B, tuple(c))
        if coords is None:
            raise LcaHeartError("relation lattice escaped the sublattice")
        N_cols.append(coords)
    if N_cols:
        N = tuple(tuple(col[i] for col in N_cols) for i in range(r))  # r x k
        U, D, _ = smith_normal_form(N)
        Uinv = _int_inverse(U)
        new_gen_cols = mx.imat_mul(B, Uinv)  # s x r, generator i has order D[i][i]
        orders = []
        for i in range(r):
            d = D[i][i] if i < min(len(D), len(D[0]) if D else 0) else 0
            orders.append(d)
    else:
        new_gen_cols = B
        orders = [0] * r
    keep_free = [i for i, d in enumerate(orders) if d == 0]
    keep_tors = [(orders[i], i) for i in range(r) if orders[i] > 1]
    keep_tors.sort()
    K = FgAbGroup.from_divisors(*([0] * len(keep_free) + [d for d, _ in keep_tors]))
    cols = keep_free + [i for _, i in keep_tors]
    emb = tuple(tuple(new_gen_cols[i][j] for j in cols) for i in range(s))
    return K, FgAbMorphism.make(K, ambient, emb)


def fg_kernel(f):
    """Kernel with its embedding: K injects into the source, f o emb = 0."""
    src, tgt = f.source, f.target
    s, t = src.ngens, tgt.ngens
    rel_t = _relation_columns(tgt)
    # solve M x = R_t lambda over Z: stack [M | -R_t]
    M = f.matrix
    stacked = tuple(tuple(M[i][j] for j in range(s)) + tuple(-c[i] for c in rel_t)
                    for i in range(t))
    ker_cols = mx.int_kernel_basis(stacked) if t else \
        [tuple(1 if i == j else 0 for i in range(s)) for j in range(s)]
    L_gens = [tuple(col[:s]) for col in ker_cols]
    K, emb = _present_subquotient(src, L_gens, _relation_columns(src))
    composite = f.compose(emb)
    if not composite.is_zero():
        raise LcaHeartError("internal: kernel embedding does not annihilate")
    return K, emb


def fg_cokernel(f):
    """Cokernel with its projection: target / (image + relations)."""
    tgt = f.target
    t = tgt.ngens
    cols = [tuple(f.matrix[i][j] for i in range(t)) for j in range(f.source.ngens)]
    cols += _relation_columns(tgt)
    if not cols:
        return tgt, FgAbMorphism.identity(tgt)
    A = tuple(tuple(c[i] for c in cols) for i in range(t))  # t x k
    U, D, _ = smith_normal_form(A)
    k = len(cols)
    orders = []
    for i in range(t):
        d = D[i][i] if i < min(t, k) else 0
        orders.append(d)
    keep_free = [i for i, d in enumerate(orders) if d == 0]
    keep_tors = [(orders[i], i) for i in range(t) if orders[i] > 1]
    keep_tors.sort()
    Q = FgAbGroup.from_divisors(*([0] * len(keep_free) + [d for d, _ in keep_tors]))
    rows = keep_free + [i for _, i in keep_tors]
    proj = tuple(tuple(U[i][j] for j in range(t)) for i in rows)
    pr = FgAbMorphism.make(tgt, Q, proj)
    if not pr.compose(f).is_zero():
        raise LcaHeartError("internal: cokernel projection does not annihilate image")
    return Q, pr


def fg_image(f):
    """Image subgroup with its embedding into the target."""
    tgt = f.target
    t = tgt.ngens
    cols = [tuple(f.matrix[i][j] for i in range(t)) for j in range(f.source.ngens)]
    return _present_subquotient(tgt, cols, _relation_columns(tgt))


def fg_is_isomorphic(G, H):
    return G.free_rank == H.free_rank and G.invariant_factors == H.invariant_factors


def fg_is_surjective(f):
    Q, _ = fg_cokernel(f)
    return Q.is_trivial()


def fg_is_injective(f):
    K, _ = fg_kernel(f)
    return K.is_trivial()
