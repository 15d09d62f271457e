"""Exact scalars: the Q-vector space spanned by 1 and declared symbols.

A scalar is a finite Q-linear combination q_0 + q_1*s_1 + ... over a symbol
table whose symbols are assumed Q-linearly independent together with 1.
There is deliberately no scalar*scalar product; all arithmetic the engine
needs is Q-linear.  Circle-valued scalars reduce the rational part mod 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LcaHeartError, MissingShadowError, MixedSymbolTableError

UNIT_INDEX = 0


class SymbolTable:
    """Ordered registry of symbol names, index 0 reserved for the unit 1.

    Shadow values are optional floats used only by the numeric oracle; they
    never enter exact decision procedures.
    """

    def __init__(self, symbols=()):
        names = []
        shadows = []
        for entry in symbols:
            if isinstance(entry, str):
                name, shadow = entry, None
            else:
                name, shadow = entry
            if not name.isidentifier():
                raise LcaHeartError(f"symbol name {name!r} is not an identifier")
            if name in names:
                raise LcaHeartError(f"duplicate symbol name {name!r}")
            if shadow is not None:
                shadow = float(shadow)
                if shadow == 0.0:
                    raise LcaHeartError(f"shadow value for {name!r} must be nonzero")
                if shadow in shadows:
                    raise LcaHeartError(f"shadow values must be pairwise distinct ({name!r})")
            names.append(name)
            shadows.append(shadow)
        self._names = tuple(names)
        self._shadows = tuple(shadows)

    @property
    def names(self):
        return self._names

    def __len__(self):
        # number of basis elements: the unit plus the symbols
        return 1 + len(self._names)

    def __eq__(self, other):
        return (isinstance(other, SymbolTable)
                and self._names == other._names
                and self._shadows == other._shadows)

    def __hash__(self):
        return hash((self._names, self._shadows))

    def __repr__(self):
        return f"SymbolTable({list(zip(self._names, self._shadows))!r})"

    def index_of(self, name):
        try:
            return 1 + self._names.index(name)
        except ValueError:
            raise LcaHeartError(f"unknown symbol {name!r}") from None

    def name_of(self, index):
        if index == UNIT_INDEX:
            return "1"
        return self._names[index - 1]

    def shadow_of(self, index):
        if index == UNIT_INDEX:
            return 1.0
        return self._shadows[index - 1]

    def symbol(self, name):
        """The symbol as a Scalar."""
        return Scalar(self, ((self.index_of(name), Fraction(1)),))

    def rational(self, value):
        q = Fraction(value)
        return Scalar(self, ((UNIT_INDEX, q),) if q else ())

    def zero(self):
        return Scalar(self, ())

    def to_json(self):
        return [[n, s] for n, s in zip(self._names, self._shadows)]

    @classmethod
    def from_json(cls, data):
        return cls([(n, s) for n, s in data])


RATIONALS = SymbolTable()


def common_table(*tables):
    """The shared table of several values; a purely rational table is
    compatible with anything."""
    found = None
    for t in tables:
        if t is None or t == RATIONALS:
            continue
        if found is None:
            found = t
        elif found != t:
            raise MixedSymbolTableError("values live over different symbol tables")
    return found if found is not None else RATIONALS


@dataclass(frozen=True, eq=False)
class Scalar:
    """Canonical sparse Q-linear combination of table basis elements.

    coeffs is a tuple of (index, Fraction) pairs, sorted by index, with no
    stored zero coefficient.  Equality is coefficient-wise; purely rational
    values compare equal across tables.
    """

    table: SymbolTable
    coeffs: tuple

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        if all(i == UNIT_INDEX for i, _ in self.coeffs):
            return True
        return self.table == other.table

    def __hash__(self):
        return hash(self.coeffs)

    def __post_init__(self):
        idxs = [i for i, _ in self.coeffs]
        if idxs != sorted(set(idxs)):
            raise LcaHeartError("scalar coefficients must be sorted and unique")
        if any(q == 0 for _, q in self.coeffs):
            raise LcaHeartError("scalar stores a zero coefficient")
        if any(not (0 <= i < len(self.table)) for i in idxs):
            raise LcaHeartError("scalar coefficient index outside the table")

    @classmethod
    def make(cls, table, mapping):
        coeffs = tuple(sorted((i, Fraction(q)) for i, q in mapping.items() if q != 0))
        return cls(table, coeffs)

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_rational(self):
        return all(i == UNIT_INDEX for i, _ in self.coeffs)

    def component(self, index):
        for i, q in self.coeffs:
            if i == index:
                return q
        return Fraction(0)

    @property
    def rational_part(self):
        return self.component(UNIT_INDEX)

    def symbolic_part(self):
        return Scalar(self.table, tuple((i, q) for i, q in self.coeffs if i != UNIT_INDEX))

    def support(self):
        return tuple(i for i, _ in self.coeffs)

    def is_integer(self):
        return self.is_rational() and self.rational_part.denominator == 1

    # -- arithmetic (Q-linear only) ---------------------------------------

    def _merged(self, other, sign):
        table = common_table(self.table, other.table)
        acc = dict(self.coeffs)
        for i, q in other.coeffs:
            acc[i] = acc.get(i, Fraction(0)) + sign * q
        return Scalar.make(table, acc)

    def __add__(self, other):
        return self._merged(_coerce(other, self.table), 1)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        return self._merged(_coerce(other, self.table), -1)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Scalar(self.table, tuple((i, -q) for i, q in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Scalar):
            raise LcaHeartError("scalars form a Q-vector space; no scalar*scalar product")
        q = Fraction(other)
        if q == 0:
            return Scalar(self.table, ())
        return Scalar(self.table, tuple((i, q * c) for i, c in self.coeffs))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __bool__(self):
        return bool(self.coeffs)

    # -- rendering --------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self.render()!r})"

    def render(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, q in self.coeffs:
            if i == UNIT_INDEX:
                term = str(q)
            elif q == 1:
                term = self.table.name_of(i)
            elif q == -1:
                term = "-" + self.table.name_of(i)
            else:
                term = f"{q}*{self.table.name_of(i)}"
            parts.append(term)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def to_json(self):
        out = {}
        for i, q in self.coeffs:
            key = "0" if i == UNIT_INDEX else self.table.name_of(i)
            out[key] = str(q)
        return {"coeffs": out}

    @classmethod
    def from_json(cls, data, table):
        acc = {}
        for key, val in data["coeffs"].items():
            idx = UNIT_INDEX if key == "0" else table.index_of(key)
            acc[idx] = Fraction(val)
        return cls.make(table, acc)


def _coerce(value, table):
    if isinstance(value, Scalar):
        return value
    return Scalar.make(table, {UNIT_INDEX: Fraction(value)})


def as_scalar(value, table):
    """Coerce a Fraction/int/Scalar to a Scalar over table."""
    return _coerce(value, table)


def linear_combine(terms):
    """Canonical Q-linear combination of (rational, Scalar) terms.

    Purely additive; no symbol is ever multiplied by another symbol.
    """
    table = common_table(*(s.table for _, s in terms))
    acc = {}
    for q, s in terms:
        q = Fraction(q)
        for i, c in s.coeffs:
            acc[i] = acc.get(i, Fraction(0)) + q * c
    return Scalar.make(table, acc)


@dataclass(frozen=True)
class CircleScalar:
    """A scalar regarded in R/Z: rational part reduced into [0, 1).

    Two circle values are equal iff their difference has integral rational
    part and zero symbolic part; the canonical representative makes that
    plain coefficient-wise equality.
    """

    value: Scalar

    def __post_init__(self):
        r = self.value.rational_part
        if not (0 <= r < 1):
            raise LcaHeartError("circle representative must have rational part in [0,1)")

    def is_zero(self):
        return self.value.is_zero()

    @property
    def table(self):
        return self.value.table

    def __add__(self, other):
        if isinstance(other, CircleScalar):
            other = other.value
        return circle_reduce(self.value + other)

    def __neg__(self):
        return circle_reduce(-self.value)

    def __sub__(self, other):
        if isinstance(other, CircleScalar):
            other = other.value
        return circle_reduce(self.value - other)

    def __mul__(self, other):
        return circle_reduce(self.value * other)

    __rmul__ = __mul__

    def render(self):
        return self.value.render()

    def __repr__(self):
        return f"CircleScalar({self.value.render()!r})"

    def to_json(self):
        return self.value.to_json()

    @classmethod
    def from_json(cls, data, table):
        return circle_reduce(Scalar.from_json(data, table))


def circle_reduce(s):
    """Reduce a Scalar mod 1: rational part into [0, 1), symbols unchanged."""
    if isinstance(s, CircleScalar):
        return s
    r = s.rational_part
    frac = r - (r.numerator // r.denominator)
    acc = dict(s.coeffs)
    if frac:
        acc[UNIT_INDEX] = frac
    else:
        acc.pop(UNIT_INDEX, None)
    return CircleScalar(Scalar.make(s.table, acc))


def shadow_eval(s, table=None):
    """Substitute shadow values; numeric-oracle use only."""
    if isinstance(s, CircleScalar):
        s = s.value
    table = table if table is not None else s.table
    total = 0.0
    for i, q in s.coeffs:
        shadow = table.shadow_of(i)
        if shadow is None:
            raise MissingShadowError(
                f"symbol {table.name_of(i)!r} has no shadow value")
        total += float(q) * shadow
    return total
