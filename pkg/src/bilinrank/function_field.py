"""Places, divisors, Riemann-Roch spaces and local expansions on the rational
function field F_q(x).

Local parameters are fixed: the monic irreducible p(x) itself at a finite
place, 1/x at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import MixedFields, PoleAtPlace
from .ff_core import (
    FieldElement,
    FieldSpec,
    Polynomial,
    ResidueRingCoords,
    enumerate_irreducibles,
    extension_field,
    is_irreducible,
    poly_gcd,
    poly_inverse_mod,
    residue_coords,
)
from .linalg import Matrix


@dataclass(frozen=True)
class Place:
    field: FieldSpec
    poly: Polynomial | None = None  # None marks the infinite place

    def __post_init__(self):
        if self.poly is not None:
            if self.poly.field != self.field:
                raise MixedFields("place polynomial over a different field")
            if not self.poly.is_monic() or not is_irreducible(self.poly):
                raise ValueError(f"{self.poly!r} is not monic irreducible")

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def kind(self) -> str:
        return "infinite" if self.poly is None else "finite"

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self) -> tuple[int, int, int]:
        if self.poly is None:
            return (1, 0, 0)
        return (self.poly.degree, 1, self.poly.to_int())

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def encode(self):
        return "inf" if self.poly is None else list(self.poly.coeffs)

    @classmethod
    def decode(cls, field: FieldSpec, data) -> "Place":
        if data == "inf":
            return cls(field)
        return cls(field, Polynomial(field, data))

    def __repr__(self):
        return "P_inf" if self.poly is None else f"P({self.poly!r})"


def infinite_place(field: FieldSpec) -> Place:
    return Place(field)


def places_of_degree(field: FieldSpec, k: int) -> list[Place]:
    """All places of degree k: the infinite place first (k = 1), then finite ones."""
    out = [Place(field)] if k == 1 else []
    out.extend(Place(field, f) for f in enumerate_irreducibles(field, k))
    return out


class Divisor:
    """A formal integer combination of places; immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Place, int] | Iterable[tuple[Place, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Place, int] = {}
        for P, a in items:
            acc[P] = acc.get(P, 0) + a
        self.terms = tuple(sorted(((P, a) for P, a in acc.items() if a), key=lambda t: t[0].sort_key()))

    @property
    def degree(self) -> int:
        return sum(a * P.degree for P, a in self.terms)

    @property
    def support(self) -> list[Place]:
        return [P for P, _ in self.terms]

    def ord(self, P: Place) -> int:
        for Q, a in self.terms:
            if Q == P:
                return a
        return 0

    def is_effective(self) -> bool:
        return all(a > 0 for _, a in self.terms)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self.terms) + list(other.terms))

    def __neg__(self) -> "Divisor":
        return Divisor([(P, -a) for P, a in self.terms])

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __rmul__(self, m: int) -> "Divisor":
        return Divisor([(P, m * a) for P, a in self.terms])

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{a}*{P!r}" for P, a in self.terms)


@dataclass(frozen=True)
class RationalFunction:
    """num/den in lowest terms with den monic."""

    num: Polynomial
    den: Polynomial

    @classmethod
    def make(cls, num: Polynomial, den: Polynomial | None = None) -> "RationalFunction":
        if den is None:
            den = Polynomial.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den) if not num.is_zero() else den.monic()
        num, den = num // g, den // g
        c = num.field.inv(den.lc)
        return cls(num.scale(c), den.scale(c))

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.make(self.num * other.num, self.den * other.den)

    def scale(self, c: int) -> "RationalFunction":
        return RationalFunction.make(self.num.scale(c), self.den)

    def __repr__(self):
        if self.den.degree == 0:
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"


def as_rational(f) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, Polynomial):
        return RationalFunction.make(f)
    raise TypeError(f"not a function: {f!r}")


def _vp(f: Polynomial, p: Polynomial) -> int:
    v = 0
    while not f.is_zero():
        qt, r = divmod(f, p)
        if not r.is_zero():
            break
        f = qt
        v += 1
    return v


def valuation(f, P: Place) -> int:
    f = as_rational(f)
    if f.num.is_zero():
        raise ValueError("valuation of zero is infinite")
    if P.is_infinite:
        return f.den.degree - f.num.degree
    return _vp(f.num, P.poly) - _vp(f.den, P.poly)


def in_riemann_roch_space(f, D: Divisor) -> bool:
    """D + (f) >= 0, checked on supp D, at infinity and at every pole of f."""
    f = as_rational(f)
    if f.num.is_zero():
        return True
    F = f.field
    H = Polynomial.one(F)
    for P, a in D.terms:
        if P.is_infinite:
            continue
        if valuation(f, P) + a < 0:
            return False
        if a > 0:
            H = H * P.poly ** a
    # finite poles off supp D: den must divide the positive part
    if not (H % f.den).is_zero():
        return False
    return valuation(f, Place(F)) + D.ord(Place(F)) >= 0


@dataclass(frozen=True)
class RRBasis:
    divisor: Divisor
    elements: tuple[RationalFunction, ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)


def riemann_roch_basis(D: Divisor, field: FieldSpec | None = None) -> RRBasis:
    """Basis N(x) x^j / h(x), j = 0..deg D, of L(D) on the projective line.

    h carries the positive finite part of D, N the negative finite part; the
    coefficient at infinity only caps the degree.
    """
    if field is None:
        if not D.terms:
            raise ValueError("field required for the zero divisor")
        field = D.terms[0][0].field
    h = Polynomial.one(field)
    N = Polynomial.one(field)
    for P, a in D.terms:
        if P.is_infinite:
            continue
        if a > 0:
            h = h * P.poly ** a
        else:
            N = N * P.poly ** (-a)
    x = Polynomial.x(field)
    elems = tuple(RationalFunction.make(N * x ** j, h) for j in range(D.degree + 1))
    return RRBasis(D, elems)


def residue_field(P: Place) -> FieldSpec:
    if P.is_infinite:
        return P.field
    return extension_field(P.field, P.poly)


def local_expansion(f, P: Place, u: int) -> ResidueRingCoords:
    """First u coefficients of f in the local parameter at P (p(x) or 1/x)."""
    f = as_rational(f)
    F = f.field
    if P.is_infinite:
        v = f.den.degree - f.num.degree if not f.num.is_zero() else u
        if v < 0:
            raise PoleAtPlace(f"{f!r} has a pole at infinity")
        if f.num.is_zero() or v >= u:
            return ResidueRingCoords(1, u, tuple((0,) for _ in range(u)))
        t_u = Polynomial(F, (0,) * u + (1,))
        rn = Polynomial(F, reversed(f.num.coeffs))
        rd = Polynomial(F, reversed(f.den.coeffs))
        series = (rn * poly_inverse_mod(rd, t_u)) % t_u
        cs = (0,) * v + series.coeffs
        cs = cs[:u] + (0,) * (u - len(cs[:u]))
        return ResidueRingCoords(1, u, tuple((c,) for c in cs))
    p = P.poly
    if (f.den % p).is_zero():
        raise PoleAtPlace(f"{f!r} has a pole at {P!r}")
    pu = p ** u
    g = (f.num * poly_inverse_mod(f.den, pu)) % pu
    return residue_coords(g, p, u)


def evaluation_matrix(basis: RRBasis | Sequence, plan_places: Sequence[tuple[Place, int]]) -> Matrix:
    """Matrix of f -> (local expansions at each place) on the given basis.

    Rows run over places in order, then t-power, then residue-field coordinate.
    """
    elems = basis.elements if isinstance(basis, RRBasis) else tuple(basis)
    cols = [
        [c for P, u in plan_places for c in local_expansion(f, P, u).flatten()]
        for f in elems
    ]
    nrows = sum(P.degree * u for P, u in plan_places)
    return [[col[r] for col in cols] for r in range(nrows)]


def reduce_mod_Q(f, Q: Place) -> FieldElement:
    """The value f(Q) in the residue field F_q[x]/(Q)."""
    if Q.is_infinite:
        raise ValueError("Q must be a finite place")
    K = residue_field(Q)
    c = local_expansion(f, Q, 1).coeffs[0]
    return FieldElement(K, K.from_coeffs(c))
