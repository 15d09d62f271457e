"""Kernels, cokernels, closures, admissibility, pullbacks and bicartesian
squares in the elementary fragment, plus Pontryagin duality.

Conventions match the usual topological-group facts: monic means injective,
epic means dense image, admissible means the set-theoretic image is closed
(equivalently the coimage-to-image comparison is an isomorphism, by the
open mapping theorem on these sigma-compact groups).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import subgroups as sg
from .errors import LcaHeartError
from .groups import ElcaGroup, ElcaMorphism, ZERO_GROUP, direct_sum
from .subgroups import (
    closure,
    closure_is_self,
    contains,
    embedding,
    factor_through_epic,
    factor_through_monic,
    image_presentation,
    kernel_subgroup,
    quotient,
)

__all__ = [
    "ElcaGroup", "ElcaMorphism", "MorphismClassification", "SquareData",
    "compose", "pontryagin_dual", "kernel", "closure_of_image", "cokernel",
    "coimage", "classify_morphism", "admissible_factorization", "pullback",
    "pushout", "is_bicartesian", "is_isomorphism", "direct_sum",
]


def compose(g, f):
    """g o f."""
    return g.compose(f)


def pontryagin_dual(x):
    """Dual group or morphism; contravariant on morphisms."""
    if isinstance(x, ElcaGroup):
        return x.dual()
    if isinstance(x, ElcaMorphism):
        return x.dual()
    raise LcaHeartError("pontryagin_dual expects a group or a morphism")


def kernel(f):
    """(K, iota): closed subgroup of the source with f o iota = 0,
    membership-complete."""
    S = kernel_subgroup(f)
    K, iota = embedding(S)
    if not f.compose(iota).is_zero():
        raise LcaHeartError("internal: kernel embedding not annihilated")
    return K, iota


def closure_of_image(f):
    """(C, m): the closed subgroup closure(f(X)) of the target with its
    embedding; the Kronecker-type density decisions happen here."""
    S = closure(image_presentation(f))
    return embedding(S)


def image_is_closed(f):
    pres = image_presentation(f)
    return closure_is_self(pres, closure(pres))


def cokernel(f):
    """(Q, p): target / closure(image).

    p is None exactly when no typed projection exists (the flat discrete
    part of the image closure has no rational lattice basis); the canonical
    quotient group is still returned.
    """
    S = closure(image_presentation(f))
    return quotient(S)


def coimage(f):
    """(C, p): source / kernel, with the same partial-projection caveat."""
    return quotient(kernel_subgroup(f))


@dataclass(frozen=True)
class MorphismClassification:
    monic: bool
    epic: bool
    admissible: bool

    @property
    def admissible_monic(self):
        return self.monic and self.admissible

    @property
    def admissible_epic(self):
        return self.epic and self.admissible

    def is_isomorphism(self):
        return self.monic and self.epic and self.admissible


def classify_morphism(f):
    """Monic/epic/admissible flags, decided exactly."""
    ker = kernel_subgroup(f)
    monic = ker.is_zero_subgroup()
    pres = image_presentation(f)
    cl = closure(pres)
    epic = cl.is_full()
    admissible = closure_is_self(pres, cl)
    return MorphismClassification(monic, epic, admissible)


def admissible_factorization(f):
    """For admissible f, the witness pair (e, m) with f = m o e,
    e an admissible epic onto the image and m an admissible monic."""
    cls = classify_morphism(f)
    if not cls.admissible:
        return None
    I, m = closure_of_image(f)
    e = factor_through_monic(f, m)
    if e is None:
        raise LcaHeartError("internal: admissible morphism missed its image")
    return e, m


def is_isomorphism(f):
    """Bijective continuous, hence iso by the open mapping theorem."""
    return kernel_subgroup(f).is_zero_subgroup() and sg.is_surjective(f)


def pullback(f, g):
    """Pullback of f: A -> X and g: B -> X: (P, to_A, to_B)."""
    if f.target != g.target:
        raise LcaHeartError("pullback needs a common target")
    S, iA, iB, pA, pB = direct_sum(f.source, g.source)
    diff = f.compose(pA) - g.compose(pB)
    P, iota = kernel(diff)
    return P, pA.compose(iota), pB.compose(iota)


def pushout(f, g):
    """Pushout of f: X -> A and g: X -> B: (Q, from_A, from_B).

    The legs are None when the defining quotient has no typed projection.
    """
    if f.source != g.source:
        raise LcaHeartError("pushout needs a common source")
    S, iA, iB, pA, pB = direct_sum(f.target, g.target)
    diff = iA.compose(f) - iB.compose(g)
    Q, proj = cokernel(diff)
    if proj is None:
        return Q, None, None
    return Q, proj.compose(iA), proj.compose(iB)


@dataclass(frozen=True)
class SquareData:
    """Commuting square: top: A -> B, left: A -> C, right: B -> D,
    bottom: C -> D with right o top = bottom o left."""

    top: ElcaMorphism
    left: ElcaMorphism
    right: ElcaMorphism
    bottom: ElcaMorphism

    def __post_init__(self):
        if (self.top.source != self.left.source
                or self.top.target != self.right.source
                or self.left.target != self.bottom.source
                or self.right.target != self.bottom.target):
            raise LcaHeartError("square endpoints do not match")

    def commutes(self):
        return self.right.compose(self.top) == self.bottom.compose(self.left)


def is_cartesian(sq):
    """A -> C x_D B an isomorphism, tested subgroup-theoretically:
    (left, top): A -> C + B is injective, has closed image, and that image
    equals the kernel of (bottom, -right)."""
    S, iC, iB, pC, pB = direct_sum(sq.left.target, sq.top.target)
    into = iC.compose(sq.left) + iB.compose(sq.top)
    diff = sq.bottom.compose(pC) - sq.right.compose(pB)
    if not kernel_subgroup(into).is_zero_subgroup():
        return False
    pres = image_presentation(into)
    cl = closure(pres)
    if not closure_is_self(pres, cl):
        return False
    return cl.equals(kernel_subgroup(diff))


def is_cocartesian(sq):
    """C +_A B -> D an isomorphism: the combined map (bottom, right) from
    C + B to D is surjective and its kernel is exactly the closure of the
    antidiagonal image of A."""
    S, iC, iB, pC, pB = direct_sum(sq.left.target, sq.top.target)
    anti = iC.compose(sq.left) - iB.compose(sq.top)
    combined = sq.bottom.compose(pC) + sq.right.compose(pB)
    if not sg.is_surjective(combined):
        return False
    cl = closure(image_presentation(anti))
    return kernel_subgroup(combined).equals(cl)


def is_bicartesian(sq):
    """Simultaneously a pullback and a pushout square."""
    if not sq.commutes():
        return False
    return is_cartesian(sq) and is_cocartesian(sq)
