"""Exact arithmetic in F_p, F_{p^k}, polynomial rings over them and the
residue rings F_q[x]/(p(x)^u).

Field elements are passed around as integer *codes*: an element of an
extension with coefficients (c_0, ..., c_{k-1}) over its base field of order b
has code sum(c_i * b**i).  Polynomials store tuples of codes, lowest degree
first, with no trailing zeros.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    DivisionByZero,
    MixedFields,
    NoIrreducibleFound,
    NonMonic,
    NonPrimeCharacteristic,
    ReducibleLocalParameter,
    ReducibleModulus,
)

# fields up to this order get precomputed add/mul tables
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def mobius_count(q: int, k: int) -> int:
    """Number of monic irreducible polynomials of degree k over F_q."""
    total = sum(mobius(d) * q ** (k // d) for d in range(1, k + 1) if k % d == 0)
    return total // k


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**k, raising NonPrimeCharacteristic if q is not a prime power."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return p, k


class FieldSpec:
    """A finite field, either prime or a simple extension of another FieldSpec.

    Build instances with make_field() or extension_field().
    """

    def __init__(self, p: int, k: int = 1, modulus: "Polynomial | None" = None,
                 base: "FieldSpec | None" = None):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.base = base
        self.q = p if base is None else base.q ** k
        self.degree = 1 if base is None else k * base.degree
        self._key = (p, None if base is None else base._key,
                     None if modulus is None else modulus.coeffs)
        self._hash = hash(self._key)
        self._tables = None
        self._np = None

    @property
    def is_prime(self) -> bool:
        return self.base is None

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.q}; {self.modulus!r} over {self.base!r})"

    # -- code <-> coefficient vector
    def to_coeffs(self, code: int) -> tuple[int, ...]:
        if self.base is None:
            return (code,)
        b = self.base.q
        out = []
        for _ in range(self.k):
            code, r = divmod(code, b)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if self.base is None:
            return coeffs[0] % self.p if coeffs else 0
        b = self.base.q
        code = 0
        for c in reversed(coeffs):
            code = code * b + c
        return code

    # -- arithmetic on codes
    def _build_tables(self):
        q = self.q
        add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        self._tables = (add, mul)

    def _add_slow(self, a, b):
        base = self.base
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([base.add(x, y) for x, y in zip(ca, cb)])

    def _mul_slow(self, a, b):
        base = self.base
        prod = _mul_raw(base, _strip(self.to_coeffs(a)), _strip(self.to_coeffs(b)))
        rem = _divmod_raw(base, prod, self.modulus.coeffs)[1]
        return self.from_coeffs(rem + (0,) * (self.k - len(rem)))

    def add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.q <= _TABLE_LIMIT:
            if self._tables is None:
                self._build_tables()
            return self._tables[0][a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        base = self.base
        return self.from_coeffs([base.neg(c) for c in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if self.q <= _TABLE_LIMIT:
            if self._tables is None:
                self._build_tables()
            return self._tables[1][a][b]
        return self._mul_slow(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.base is None:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def scalar(self, n: int) -> int:
        """Code of the integer n viewed in the prime subfield."""
        return n % self.p

    # -- conveniences
    def element(self, x) -> "FieldElement":
        if isinstance(x, int):
            return FieldElement(self, x)
        return FieldElement(self, self.from_coeffs(list(x)))

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, code)

    @property
    def generator(self) -> "FieldElement":
        """The class of x (the adjoined root); 1 for prime fields."""
        return FieldElement(self, self.base.q if self.base is not None and self.k > 1 else 1)

    def np_tables(self):
        """(add, mul, neg) lookup tables as numpy arrays, for vectorized checks."""
        if self._np is None:
            import numpy as np

            q = self.q
            if self.base is None:
                r = np.arange(q, dtype=np.int64)
                add = (r[:, None] + r[None, :]) % q
                mul = (r[:, None] * r[None, :]) % q
                neg = (-r) % q
            else:
                if self._tables is None:
                    self._build_tables()
                add = np.array(self._tables[0], dtype=np.int64)
                mul = np.array(self._tables[1], dtype=np.int64)
                neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
            self._np = (add, mul, neg)
        return self._np


class FieldElement:
    """An element of a FieldSpec; immutable."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        if not 0 <= code < field.q:
            raise ValueError(f"code {code} out of range for {field!r}")
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"{self.field!r} vs {other.field!r}")
            return other.code
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.base is None:
            return str(self.code)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(mono if c == 1 and i else (str(c) if i == 0 else f"{c}*{mono}"))
        return " + ".join(reversed(terms)) or "0"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch a named field operation ('add', 'sub', 'mul', 'inv', 'pow')."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------- raw polys

def _strip(c) -> tuple[int, ...]:
    c = tuple(c)
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _add_raw(F: FieldSpec, a, b):
    if len(a) < len(b):
        a, b = b, a
    if F.base is None:
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)]
    else:
        out = [F.add(x, y) for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return _strip(out)


def _neg_raw(F: FieldSpec, a):
    return tuple(F.neg(x) for x in a)


def _scale_raw(F: FieldSpec, a, c: int):
    if c == 0:
        return ()
    if F.base is None:
        p = F.p
        return tuple((x * c) % p for x in a)
    return _strip(F.mul(x, c) for x in a)


def _mul_raw(F: FieldSpec, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    if F.base is None:
        p = F.p
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return _strip(c % p for c in out)
    add, mul = F.add, F.mul
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return _strip(out)


def _divmod_raw(F: FieldSpec, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), tuple(a)
    r = list(a)
    lc_inv = F.inv(b[-1])
    qc = [0] * (len(a) - db)
    if F.base is None:
        p = F.p
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] % p
            if c:
                c = (c * lc_inv) % p
                qc[i - db] = c
                off = i - db
                for j, bj in enumerate(b):
                    r[off + j] -= c * bj
        return _strip(qc), _strip(x % p for x in r[:db])
    mul, sub = F.mul, F.sub
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = mul(c, lc_inv)
            qc[i - db] = c
            off = i - db
            for j, bj in enumerate(b):
                if bj:
                    r[off + j] = sub(r[off + j], mul(c, bj))
    return _strip(qc), _strip(r[:db])


class Polynomial:
    """A polynomial over a FieldSpec with coefficient codes, lowest degree first."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        if field.base is None:
            cs = [c % field.p for c in cs]
        else:
            for c in cs:
                if not 0 <= c < field.q:
                    raise ValueError(f"coefficient code {c} out of range for {field!r}")
        self.field = field
        self.coeffs = _strip(cs)
        self._hash = None

    @classmethod
    def x(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> "Polynomial":
        return cls(field, (c,))

    @classmethod
    def one(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, (1,))

    @classmethod
    def monic_from_int(cls, field: FieldSpec, k: int, n: int) -> "Polynomial":
        """The n-th monic polynomial of degree k in lexicographic (base-q) order."""
        q = field.q
        cs = []
        for _ in range(k):
            n, r = divmod(n, q)
            cs.append(r)
        cs.append(1)
        return cls(field, cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lc))

    def to_int(self) -> int:
        """Coefficients read low-to-high as base-q digits."""
        q = self.field.q
        n = 0
        for c in reversed(self.coeffs):
            n = n * q + c
        return n

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coeffs]

    def _check(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(self.field, (self.field.scalar(other),))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.field != self.field:
            raise MixedFields(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.field, _add_raw(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, _neg_raw(self.field, self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.field, _mul_raw(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, _scale_raw(self.field, self.coeffs, c))

    def __divmod__(self, other):
        other = self._check(other)
        qc, rc = _divmod_raw(self.field, self.coeffs, other.coeffs)
        return Polynomial(self.field, qc), Polynomial(self.field, rc)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def sort_key(self) -> tuple[int, int]:
        return (self.degree, self.to_int())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_divmod(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    return divmod(f, g)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def poly_xgcd(f: Polynomial, g: Polynomial):
    """(d, s, t) with s*f + t*g = d = gcd(f, g) monic."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = Polynomial.one(F), Polynomial(F)
    t0, t1 = Polynomial(F), Polynomial.one(F)
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv(r0.lc)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_inverse_mod(f: Polynomial, m: Polynomial) -> Polynomial:
    d, s, _ = poly_xgcd(f % m, m)
    if d.degree != 0:
        raise DivisionByZero(f"{f!r} is not invertible modulo {m!r}")
    return s % m


def poly_powmod(f: Polynomial, e: int, m: Polynomial) -> Polynomial:
    result = Polynomial.one(f.field) % m
    base = f % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


@lru_cache(maxsize=4096)
def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test: x^(q^k) = x mod f and gcd(x^(q^(k/r)) - x, f) = 1 for primes r | k."""
    if not f.is_monic():
        raise NonMonic(f"{f!r} is not monic")
    k = f.degree
    if k < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if k == 1:
        return True
    if f.coeffs[0] == 0:
        return False
    F = f.field
    x = Polynomial.x(F)
    frob = [x]
    cur = x
    for _ in range(k):
        cur = poly_powmod(cur, F.q, f)
        frob.append(cur)
    if frob[k] != x:
        return False
    for r in prime_factors(k):
        if poly_gcd(frob[k // r] - x, f).degree > 0:
            return False
    return True


@lru_cache(maxsize=256)
def _irreducibles_cached(field: FieldSpec, k: int) -> tuple[Polynomial, ...]:
    # sieve: reducible iff divisible by a monic irreducible of degree <= k/2
    small = [g for d in range(1, k // 2 + 1) for g in _irreducibles_cached(field, d)]
    out = []
    for n in range(field.q ** k):
        f = Polynomial.monic_from_int(field, k, n)
        if k > 1 and f.coeffs[0] == 0:
            continue
        if all(not (f % g).is_zero() for g in small):
            out.append(f)
    return tuple(out)


def enumerate_irreducibles(field: FieldSpec, k: int) -> list[Polynomial]:
    """All monic irreducibles of degree k over field, in lexicographic order."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    return list(_irreducibles_cached(field, k))


def first_irreducible(field: FieldSpec, k: int) -> Polynomial:
    """Lexicographically smallest monic irreducible of degree k."""
    for n in range(field.q ** k):
        f = Polynomial.monic_from_int(field, k, n)
        if is_irreducible(f):
            return f
    raise NoIrreducibleFound(f"no irreducible of degree {k} over {field!r}")


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    return FieldSpec(p)


def make_field(p: int, k: int = 1, modulus: Polynomial | None = None) -> FieldSpec:
    """F_{p^k}; without a modulus the lexicographically smallest irreducible is used."""
    Fp = prime_field(p)
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1 and modulus is None:
        return Fp
    if modulus is None:
        modulus = first_irreducible(Fp, k)
    if modulus.field != Fp:
        raise MixedFields("modulus must have coefficients in the prime field")
    return extension_field(Fp, modulus)


def extension_field(base: FieldSpec, modulus: Polynomial) -> FieldSpec:
    """base[x]/(modulus) for a monic irreducible modulus over base."""
    if modulus.field != base:
        raise MixedFields("modulus is not defined over the base field")
    if not modulus.is_monic():
        raise NonMonic(f"{modulus!r} is not monic")
    if not is_irreducible(modulus):
        raise ReducibleModulus(f"{modulus!r} is reducible over {base!r}")
    return FieldSpec(base.p, modulus.degree, modulus, base)


def field_of_order(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return make_field(p, k)


def residue_element(field: FieldSpec, f: Polynomial) -> FieldElement:
    """The class of a polynomial over field.base in field = base[x]/(modulus)."""
    if field.base is None:
        return FieldElement(field, f.coeffs[0] if f.coeffs else 0)
    r = f % field.modulus
    return FieldElement(field, field.from_coeffs(r.coeffs + (0,) * (field.k - len(r.coeffs))))


# ---------------------------------------------------------- residue rings

@dataclass(frozen=True)
class ResidueRingCoords:
    """Coordinates of a class of F_q[x]/(p^u) in F_{q^k}[t]/(t^u).

    coeffs[j] holds the k base-field coordinates of the t^j coefficient, on the
    basis 1, x, ..., x^(k-1) of F_q[x]/(p).
    """

    k: int
    u: int
    coeffs: tuple[tuple[int, ...], ...]

    def flatten(self) -> list[int]:
        return [c for block in self.coeffs for c in block]


@lru_cache(maxsize=1024)
def _lift_basis(p: Polynomial, u: int) -> tuple[Polynomial, ...]:
    """Images of 1, x, ..., x^(k-1) under the ring section F_q[x]/(p) -> F_q[x]/(p^u).

    The section sends a class a to (any lift of a)^(Q^m) with Q = q^k and
    Q^m >= u; in characteristic p this kills the p-adic tail and is multiplicative.
    """
    F = p.field
    k = p.degree
    pu = p ** u
    x = Polynomial.x(F)
    if k == 1 or u == 1:
        return tuple((x ** i) % pu for i in range(k))
    order = F.q ** k
    e = order
    while e < u:
        e *= order
    xs = poly_powmod(x, e, pu)
    out = [Polynomial.one(F)]
    for _ in range(k - 1):
        out.append((out[-1] * xs) % pu)
    return tuple(out)


def _lift(c: tuple[int, ...], p: Polynomial, u: int) -> Polynomial:
    F = p.field
    acc = Polynomial(F)
    for ci, b in zip(c, _lift_basis(p, u)):
        if ci:
            acc = acc + b.scale(ci)
    return acc


def _check_local_parameter(p: Polynomial):
    if not p.is_monic() or p.degree < 1 or not is_irreducible(p):
        raise ReducibleLocalParameter(f"{p!r} is not a monic irreducible")


def residue_coords(f: Polynomial, p: Polynomial, u: int) -> ResidueRingCoords:
    """First u coefficients of the p-adic expansion of f, in F_{q^k}[t]/(t^u)."""
    _check_local_parameter(p)
    if u < 1:
        raise ValueError("multiplicity must be >= 1")
    k = p.degree
    r = f % (p ** u)
    out = []
    for j in range(u):
        c = (r % p).coeffs
        c = c + (0,) * (k - len(c))
        out.append(c)
        if j < u - 1:
            r = ((r - _lift(c, p, u)) % (p ** (u - j))) // p
    return ResidueRingCoords(k, u, tuple(out))


def from_residue_coords(coords: ResidueRingCoords, p: Polynomial) -> Polynomial:
    """Inverse of residue_coords: the class in F_q[x]/(p^u) as a reduced polynomial."""
    _check_local_parameter(p)
    u = coords.u
    pu = p ** u
    acc = Polynomial(p.field)
    pj = Polynomial.one(p.field)
    for c in coords.coeffs:
        acc = acc + _lift(c, p, u) * pj
        pj = pj * p
    return acc % pu
