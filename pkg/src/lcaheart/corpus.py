"""Seeded random generation of groups, morphisms and derived objects.

Every generator takes an explicit random.Random instance; the acceptance
suite pins its seeds here so all corpora are reproducible bit for bit.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .fgab import FgAbGroup, FgAbMorphism
from .groups import ElcaGroup, ElcaMorphism
from .scalars import SymbolTable

# the session-wide symbol pair used by the example corpora: one generic
# irrational and an unrelated second one
DEFAULT_TABLE = SymbolTable([("a", 1.4142135623730951), ("b", 2.2360679774997896)])

SEED_SNF = 20240601
SEED_FINITE = 20240602
SEED_DUALITY = 20240603
SEED_THETA = 20240604
SEED_COMPLETION = 20240605
SEED_FAITHFUL = 20240606
SEED_DECOMPOSE = 20240607
SEED_SHADOW = 20240608


def random_fraction(rng, den=6, num=6):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_group(rng, max_rank=2, max_torsion=2, torsion_orders=(2, 3, 4, 6)):
    a = rng.randint(0, max_rank)
    b = rng.randint(0, max_rank)
    c = rng.randint(0, max_rank)
    tors = [rng.choice(torsion_orders) for _ in range(rng.randint(0, max_torsion))]
    return ElcaGroup.of(a, b, c, tors)


def random_scalar(rng, table, symbolic=True):
    s = table.rational(random_fraction(rng))
    if symbolic and rng.random() < 0.5:
        name = rng.choice(table.names)
        s = s + random_fraction(rng, den=3, num=3) * table.symbol(name)
    return s


def random_morphism(rng, src, tgt, table=DEFAULT_TABLE, symbolic=True,
                    dualizable=False):
    """Random typed morphism; dualizable restricts Hom(Z,R) to rationals."""
    RR = [[random_fraction(rng) for _ in range(src.a)] for _ in range(tgt.a)]
    RT = [[random_fraction(rng) for _ in range(src.a)] for _ in range(tgt.c)]
    TT = [[rng.randint(-3, 3) for _ in range(src.c)] for _ in range(tgt.c)]
    ZZ = [[rng.randint(-4, 4) for _ in range(src.b)] for _ in range(tgt.b)]
    ZR = [[random_scalar(rng, table, symbolic and not dualizable)
           for _ in range(src.b)] for _ in range(tgt.a)]
    ZT = [[random_scalar(rng, table, symbolic) for _ in range(src.b)]
          for _ in range(tgt.c)]
    ZF = [[rng.randint(0, max(0, d - 1)) for _ in range(src.b)] for d in tgt.torsion]
    FT = [[Fraction(rng.randrange(d), d) for d in src.torsion] for _ in range(tgt.c)]
    FF = []
    for e in tgt.torsion:
        row = []
        for d in src.torsion:
            step = e // __import__("math").gcd(d, e)
            row.append(step * rng.randrange(0, max(1, e // step)))
        FF.append(row)
    return ElcaMorphism.from_blocks(src, tgt, RR=RR, ZR=ZR, ZZ=ZZ, RT=RT,
                                    ZT=ZT, TT=TT, ZF=ZF, FT=FT, FF=FF,
                                    table=table)


def random_finite_fgab(rng, max_order=512, orders=(2, 3, 4, 5, 8, 9, 6)):
    ds = []
    total = 1
    for _ in range(rng.randint(1, 3)):
        d = rng.choice(orders)
        if total * d > max_order:
            break
        ds.append(d)
        total *= d
    if not ds:
        ds = [rng.choice((2, 3))]
    return FgAbGroup.from_divisors(*ds)


def random_finite_fgab_morphism(rng, S, T):
    import math
    rows = []
    for e in T.orders:
        row = []
        for d in S.orders:
            step = e // math.gcd(d, e)
            row.append(step * rng.randrange(0, max(1, e // step)))
        rows.append(row)
    return FgAbMorphism.make(S, T, rows)


def random_dc_ghost(rng, table=DEFAULT_TABLE, max_tries=60):
    """Random ghost of type d-c: discrete source, compact target, differential
    monic with dense image."""
    from .elca import classify_morphism
    from .heart import HeartObject

    for _ in range(max_tries):
        c = rng.randint(1, 2)
        b = rng.randint(c, c + 1)
        ftors = [rng.choice((2, 3, 4))] if rng.random() < 0.4 else []
        upper = ElcaGroup(0, b, 0)
        lower = ElcaGroup.of(0, 0, c, ftors)
        x = random_morphism(rng, upper, lower, table=table, symbolic=True)
        cls = classify_morphism(x)
        if cls.monic and cls.epic:
            return HeartObject(upper, lower, x)
    raise RuntimeError("could not generate a dense monic differential")


def random_heart_object(rng, table=DEFAULT_TABLE, max_tries=80):
    """Random heart object (monic differential, arbitrary cotorsion part)."""
    from .elca import classify_morphism
    from .heart import HeartObject

    for _ in range(max_tries):
        upper = ElcaGroup(0, rng.randint(0, 2), 0,
                          (rng.choice((2, 4)),) if rng.random() < 0.3 else ())
        lower = random_group(rng, max_rank=2, max_torsion=1)
        if lower.is_zero():
            continue
        x = random_morphism(rng, upper, lower, table=table, symbolic=True)
        if classify_morphism(x).monic:
            return HeartObject(upper, lower, x)
    raise RuntimeError("could not generate a monic differential")


def random_precompact_pga(rng, table=DEFAULT_TABLE, max_tries=60):
    """Random precompact dense-subgroup datum (completion compact)."""
    from .pga import PgaGroup

    ghost = random_dc_ghost(rng, table=table)
    return PgaGroup(ghost.upper.to_fgab(), ghost.lower, ghost.x)
