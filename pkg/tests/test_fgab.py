import random

import pytest

from lcaheart.errors import LcaHeartError
from lcaheart.fgab import (
    FgAbGroup,
    FgAbMorphism,
    fg_cokernel,
    fg_image,
    fg_is_isomorphic,
    fg_kernel,
)

Z = FgAbGroup(1, ())
Z2 = FgAbGroup(2, ())


def test_canonicalization_merges_coprime():
    assert fg_is_isomorphic(FgAbGroup.from_divisors(6), FgAbGroup.from_divisors(2, 3))
    assert FgAbGroup.from_divisors(4, 6).invariant_factors == (2, 12)


def test_non_isomorphic():
    assert not fg_is_isomorphic(FgAbGroup.from_divisors(2, 4), FgAbGroup.from_divisors(8))
    assert fg_is_isomorphic(Z, Z)


def test_presentation():
    # Z^2 / <(2,0)> = Z/2 + Z
    G = FgAbGroup.from_presentation(2, [(2, 0)])
    assert G.free_rank == 1 and G.invariant_factors == (2,)


def test_invalid_chain_rejected():
    with pytest.raises(LcaHeartError):
        FgAbGroup(0, (4, 2))


def test_morphism_validity():
    Z5 = FgAbGroup.from_divisors(5)
    f = FgAbMorphism.make(Z, Z5, [[2]])
    assert f((1,)) == (2,)
    with pytest.raises(LcaHeartError):
        FgAbMorphism.make(Z5, Z, [[1]])  # torsion cannot map to free
    Z2_, Z4 = FgAbGroup.from_divisors(2), FgAbGroup.from_divisors(4)
    with pytest.raises(LcaHeartError):
        FgAbMorphism.make(Z2_, Z4, [[1]])  # 1 does not send Z/2 into Z/4
    FgAbMorphism.make(Z2_, Z4, [[2]])


def test_kernel_times_five():
    f = FgAbMorphism.make(Z, Z, [[5]])
    K, emb = fg_kernel(f)
    assert K.is_trivial()
    g = FgAbMorphism.zero(Z, Z)
    K2, emb2 = fg_kernel(g)
    assert fg_is_isomorphic(K2, Z)


def test_kernel_into_torsion():
    Z5 = FgAbGroup.from_divisors(5)
    f = FgAbMorphism.make(Z, Z5, [[2]])
    K, emb = fg_kernel(f)
    assert fg_is_isomorphic(K, Z)
    assert abs(emb.matrix[0][0]) == 5


def test_kernel_zero_map_rank2():
    f = FgAbMorphism.zero(Z2, Z)
    K, emb = fg_kernel(f)
    assert fg_is_isomorphic(K, Z2)


def test_cokernel_times_five():
    f = FgAbMorphism.make(Z, Z, [[5]])
    Q, pr = fg_cokernel(f)
    assert fg_is_isomorphic(Q, FgAbGroup.from_divisors(5))


def test_cokernel_into_rank2():
    f = FgAbMorphism.make(Z, Z2, [[2], [0]])
    Q, pr = fg_cokernel(f)
    assert fg_is_isomorphic(Q, FgAbGroup.from_divisors(0, 2))


def test_cokernel_torsion():
    Z2_, Z4 = FgAbGroup.from_divisors(2), FgAbGroup.from_divisors(4)
    f = FgAbMorphism.make(Z2_, Z4, [[2]])
    Q, pr = fg_cokernel(f)
    assert fg_is_isomorphic(Q, Z2_)


def brute_kernel_image(f):
    """Exhaustive kernel/image sizes for finite groups."""
    ker = [x for x in f.source.elements() if all(v == 0 for v in f(x))]
    img = {f(x) for x in f.source.elements()}
    return len(ker), len(img)


def random_finite_group(rng):
    ds = [rng.choice([2, 3, 4, 5, 8, 9]) for _ in range(rng.randint(1, 3))]
    G = FgAbGroup.from_divisors(*ds)
    while G.order() > 512:
        ds.pop()
        G = FgAbGroup.from_divisors(*ds)
    return G


def random_finite_morphism(rng, S, T):
    rows = []
    for e in T.orders:
        row = []
        for d in S.orders:
            step = e // __import__("math").gcd(d, e)
            row.append(step * rng.randrange(0, max(1, e // step)))
        rows.append(row)
    return FgAbMorphism.make(S, T, rows)


def test_finite_oracle_agreement():
    rng = random.Random(7)
    for _ in range(120):
        S = random_finite_group(rng)
        T = random_finite_group(rng)
        f = random_finite_morphism(rng, S, T)
        K, emb = fg_kernel(f)
        I, iemb = fg_image(f)
        Q, pr = fg_cokernel(f)
        bk, bi = brute_kernel_image(f)
        assert K.order() == bk
        assert I.order() == bi
        assert Q.order() * bi == T.order()
        # first isomorphism theorem
        assert K.order() * bi == S.order()


def test_rank_nullity_on_free_groups():
    rng = random.Random(11)
    for _ in range(60):
        s, t = rng.randint(1, 4), rng.randint(1, 4)
        S, T = FgAbGroup(s, ()), FgAbGroup(t, ())
        f = FgAbMorphism.make(S, T, [[rng.randint(-5, 5) for _ in range(s)] for _ in range(t)])
        K, _ = fg_kernel(f)
        I, _ = fg_image(f)
        assert K.free_rank + I.free_rank == s
