"""Garcia-Stichtenoth tower data and certified bounds on the symmetric bilinear
complexity of multiplication in F_{2^n} and F_{3^n}.

Two towers are used: T2 over F_2 with steps H_{i,s} (s in {0, 1}; H_{i,2} is
H_{i+1,0}) and E over F_3 with steps G_i.  Everything is exact: rationals are
Fractions and quantities involving sqrt(3) or sqrt(2) are QuadraticSurds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NoDataForN, OutOfRange, StepTooSmall

# ------------------------------------------------------------ quadratic surds


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QuadraticSurd:
    """a + b*sqrt(r) with rational a, b and a positive integer radicand r."""

    __slots__ = ("a", "b", "r")

    def __init__(self, a=0, b=0, r: int = 2):
        a, b = _frac(a), _frac(b)
        rt = math.isqrt(r)
        if rt * rt == r:  # perfect square: fold into the rational part
            a, b = a + b * rt, Fraction(0)
        self.a, self.b, self.r = a, b, r

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.b and self.b and other.r != self.r:
                raise ValueError("surds with different radicands")
            return other
        return QuadraticSurd(other, 0, self.r)

    def _radicand(self, o: "QuadraticSurd") -> int:
        return self.r if self.b else o.r

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.r)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        r = self._radicand(o)
        return QuadraticSurd(self.a * o.a + self.b * o.b * r, self.a * o.b + self.b * o.a, r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.b == 0:
            return QuadraticSurd(self.a / o.a, self.b / o.a, self.r)
        # multiply by the conjugate
        den = o.a * o.a - o.b * o.b * o.r
        conj = QuadraticSurd(o.a / den, -o.b / den, o.r)
        return self * conj

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sign(self) -> int:
        a, b, r = self.a, self.b, self.r
        if b == 0:
            return (a > 0) - (a < 0)
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        d = a * a - b * b * r  # nonzero since r is not a square
        return (1 if d > 0 else -1) * (1 if a > 0 else -1)

    def _cmp(self, other) -> int:
        return (self - self._coerce(other)).sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.r if self.b else 0))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def floor(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        m = math.floor(float(self))
        while (self - m).sign() < 0:
            m -= 1
        while (self - (m + 1)).sign() >= 0:
            m += 1
        return m

    def ceil(self) -> int:
        return -((-self).floor())

    def __repr__(self):
        return f"QuadraticSurd({self.a}, {self.b}, {self.r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.r})"
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        term = f"{b}{rad}"
        if self.a == 0:
            return term
        if self.b < 0:
            mag = -self.b
            bm = "" if mag == 1 else f"{mag}*"
            return f"{self.a} - {bm}{rad}"
        return f"{self.a} + {term}"


def sqrt_q_compare(lhs, rhs) -> int:
    """Exact sign of lhs - rhs: -1, 0 or 1."""
    if not isinstance(lhs, QuadraticSurd):
        lhs = QuadraticSurd(lhs, 0, rhs.r if isinstance(rhs, QuadraticSurd) else 2)
    return (lhs - rhs).sign()


def half_power(c: int, e2: int) -> QuadraticSurd:
    """c^(e2/2) exactly, for any integer e2."""
    k, odd = divmod(e2, 2)
    base = Fraction(c) ** k
    return QuadraticSurd(0, base, c) if odd else QuadraticSurd(base, 0, c)


def as_number(x):
    """Fraction when rational, else the surd itself."""
    if isinstance(x, QuadraticSurd) and x.is_rational:
        return x.a
    return x


def fmt(x) -> str:
    """Exact text rendering: integers, 'p/q' strings or surd expressions."""
    if isinstance(x, QuadraticSurd):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


# -------------------------------------------------------------- tower model

@dataclass(frozen=True)
class TowerId:
    name: str  # "T0", "T1", "T2" or "E"
    q: int  # the parameter q of the underlying T0 tower
    constant_field: int
    equations: tuple[str, ...] = ()


T0_EQ = "x_{i+1}^q + x_{i+1} = x_i^q / (x_i^(q-1) + 1)"
INTERMEDIATE_EQ = "t_{i+1}^2 + t_{i+1} = x_i^4 / (x_i^3 + 1)"

T2 = TowerId("T2", 4, 2, (T0_EQ, INTERMEDIATE_EQ))
T1 = TowerId("T1", 4, 16, (T0_EQ, INTERMEDIATE_EQ))
E = TowerId("E", 3, 3, (T0_EQ,))


def T0(q: int) -> TowerId:
    return TowerId("T0", q, q * q, (T0_EQ,))


def tower_for(q: int) -> TowerId:
    if q == 2:
        return T2
    if q == 3:
        return E
    raise OutOfRange(f"bounds are available for q in (2, 3), not {q}")


@dataclass(frozen=True)
class TowerStep:
    tower: TowerId
    i: int
    s: int = 0
    # imported assumptions, never computed here
    ordinary: bool = True
    nonspecial_divisor_g_minus_1: bool = True

    def __post_init__(self):
        if self.i < 0:
            raise ValueError("step level must be >= 0")
        if self.tower.name in ("T2", "T1"):
            if self.s not in (0, 1):
                raise ValueError("sub-level must be 0 or 1; use (i+1, 0) for s = 2")
        elif self.s != 0:
            raise ValueError(f"tower {self.tower.name} has no sub-levels")

    @property
    def label(self) -> str:
        if self.tower.name in ("T2", "T1"):
            return f"H_{self.i}" if self.s == 0 else f"H_{{{self.i},{self.s}}}"
        if self.tower.name == "E":
            return f"G_{self.i}"
        return f"F_{self.i}"

    def next(self) -> "TowerStep":
        if self.tower.name in ("T2", "T1"):
            return TowerStep(self.tower, self.i, 1) if self.s == 0 else TowerStep(self.tower, self.i + 1, 0)
        return TowerStep(self.tower, self.i + 1)

    def prev(self) -> "TowerStep | None":
        if self.tower.name in ("T2", "T1"):
            if self.s == 1:
                return TowerStep(self.tower, self.i, 0)
            return TowerStep(self.tower, self.i - 1, 1) if self.i > 0 else None
        return TowerStep(self.tower, self.i - 1) if self.i > 0 else None


def step(q: int, i: int, s: int = 0) -> TowerStep:
    """Step of the tower used for F_q: H_{i,s} for q = 2, G_i for q = 3."""
    if q == 2 and s == 2:
        i, s = i + 1, 0
    return TowerStep(tower_for(q), i, s)


def steps(q: int) -> Iterable[TowerStep]:
    st = step(q, 0)
    while True:
        yield st
        st = st.next()


# exact values stated for the first steps of T2 (genus, (B_1, B_2, B_4))
STATED_STEP_DATA = {
    (1, 0): (9, (4, 2, 12)),
    (1, 1): (21, (4, 2, 25)),
}


@dataclass(frozen=True)
class StepData:
    step: TowerStep
    genus_exact: int | None
    genus_lower: QuadraticSurd
    genus_upper: QuadraticSurd
    weighted_place_sum_lower: int
    exact_counts: tuple[int, ...] | None

    @property
    def exact_weighted_sum(self) -> int | None:
        if self.exact_counts is None:
            return None
        degs = (1, 2, 4) if len(self.exact_counts) == 3 else (1, 2)
        return sum(k * b for k, b in zip(degs, self.exact_counts))


# ---------------------------------------------------------------- genera

def genus_exact_T0(q: int, i: int) -> int:
    if i < 0:
        raise ValueError("i must be >= 0")
    if i % 2:
        return (q ** ((i + 1) // 2) - 1) ** 2
    return (q ** (i // 2) - 1) * (q ** ((i + 2) // 2) - 1)


def _qpow(q: int, e2: int) -> QuadraticSurd:
    """q^(e2/2); for q = p^2 this is the integer p^e2."""
    r = math.isqrt(q)
    if r * r == q:
        return QuadraticSurd(Fraction(r) ** e2, 0, 2)
    return half_power(q, e2)


def genus_sandwich_T0(q: int, i: int) -> tuple[QuadraticSurd, QuadraticSurd, QuadraticSurd]:
    """(strict lower, loose upper, tight upper) genus bounds for step i of T0(q)."""
    lower = (_qpow(q, i) - 1) * (_qpow(q, i + 1) - 1)
    loose = (_qpow(q, i + 2) - 1) * (_qpow(q, i + 1) - 1)
    tight = _qpow(q, 2 * i + 2) - 2 * _qpow(q, i + 1) + 1
    return lower, loose, tight


def genus_upper_iia(st: TowerStep) -> QuadraticSurd:
    """g_{i,s} <= g_{i+1} / p^(2-s)."""
    return QuadraticSurd(Fraction(genus_exact_T0(4, st.i + 1), 2 ** (2 - st.s)), 0, 2)


def genus_upper_iib(st: TowerStep) -> QuadraticSurd:
    """g_{i,s} <= p^(s-2) (q^(i+2) - 2 q^(i/2+1)) + p^(s-2), with q^(1/2) = p."""
    c = Fraction(2) ** (st.s - 2)
    return QuadraticSurd(c * (4 ** (st.i + 2) - 2 * 2 ** (st.i + 2)) + c, 0, 2)


def genus_exact(st: TowerStep) -> int | None:
    if st.tower.name == "E":
        return genus_exact_T0(3, st.i)
    if st.tower.name == "T0":
        return genus_exact_T0(st.tower.q, st.i)
    if st.s == 0:
        return genus_exact_T0(4, st.i)
    data = STATED_STEP_DATA.get((st.i, st.s))
    return None if data is None else data[0]


def genus_bounds(st: TowerStep) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Exact (lower, upper) genus bounds for a step."""
    name = st.tower.name
    if name in ("E", "T0") or st.s == 0:
        q = 3 if name == "E" else st.tower.q
        lower, _, tight = genus_sandwich_T0(q, st.i)
        return lower, tight
    # intermediate step: a degree-2 extension of H_i inside H_{i+1}
    g_i = genus_exact_T0(4, st.i)
    lower = QuadraticSurd(max(0, 2 * g_i - 1), 0, 2)
    return lower, min(genus_upper_iia(st), genus_upper_iib(st))


def certified_genus(st: TowerStep) -> int:
    g = genus_exact(st)
    return g if g is not None else genus_bounds(st)[1].floor()


# ------------------------------------------------------------ place counts

def placecount_lower(st: TowerStep) -> int:
    """Certified lower bound on sum_{k | d} k B_k (d = 4 for T2, 2 for E)."""
    if st.tower.name == "E":
        return 3 ** st.i * 6
    if st.tower.name == "T2":
        return 4 ** st.i * 12 * 2 ** st.s
    raise ValueError("place counts are available for T2 and E only")


def exact_counts(st: TowerStep) -> tuple[int, ...] | None:
    if st.tower.name != "T2":
        return None
    data = STATED_STEP_DATA.get((st.i, st.s))
    return None if data is None else data[1]


def certified_place_sum(st: TowerStep) -> int:
    counts = exact_counts(st)
    if counts is None:
        return placecount_lower(st)
    return sum(k * b for k, b in zip((1, 2, 4), counts))


def rational_places_exact_T0(q: int, n: int) -> int:
    """Number of degree-one places of step n of T0 over F_{q^2}."""
    if n <= 2:
        raise StepTooSmall("formula holds for n > 2 only")
    p = min(f for f in range(2, q + 1) if q % f == 0)
    return q ** n * (q * q - q) + (2 * q * q if p == 2 else 2 * q)


def step_data(st: TowerStep) -> StepData:
    lo, up = genus_bounds(st)
    return StepData(st, genus_exact(st), lo, up, placecount_lower(st), exact_counts(st))


# ------------------------------------------------------------- capacities

def step_capacity_raw(st: TowerStep) -> int:
    """max { m : 2m + 2g - 1 <= S } on certified data; may be negative."""
    return (certified_place_sum(st) - 2 * certified_genus(st) + 1) // 2


def step_capacity_printed(st: TowerStep) -> QuadraticSurd:
    """The printed lower bounds on the capacity, unfloored."""
    if st.tower.name == "T2":
        p = 2 ** st.s
        return QuadraticSurd(4 ** (st.i + 1) * p + 2 ** (st.i + 2) * p - 1, 0, 2)
    return 4 * half_power(3, st.i + 1) - 1


def step_capacity(st: TowerStep, mode: str = "certified") -> int:
    if mode == "certified":
        return max(0, step_capacity_raw(st))
    if mode == "paper":
        return step_capacity_printed(st).floor()
    raise ValueError(f"unknown mode {mode!r}")


def delta_genus_formula(st: TowerStep) -> int:
    """Unclamped lower bound on the genus gap to the next step."""
    if st.tower.name == "T2":
        return 2 ** st.s * (2 * 4 ** st.i - 3 * 2 ** st.i)
    if st.tower.name == "E":
        return 2 * (3 ** (st.i + 1) - 3 ** ((st.i + 1) // 2))
    raise ValueError("genus gaps are available for T2 and E only")


def delta_genus_lower(st: TowerStep) -> int:
    return max(0, delta_genus_formula(st))


def capacity_slack(st: TowerStep, mode: str = "certified") -> int:
    """min(genus gap, half the place sum); paper mode returns the bare genus-gap formula."""
    full = min(delta_genus_lower(st), placecount_lower(st) // 2)
    if mode == "certified":
        return full
    if st.tower.name == "T2" or st.i >= 2:
        return delta_genus_formula(st)
    return full


# ------------------------------------------------------------- conditions

def _const_field(st: TowerStep) -> int:
    return 2 if st.tower.name == "T2" else 3


def condition_a_rhs(c: int, n: int) -> QuadraticSurd:
    """c^((n-1)/2) (sqrt(c) - 1)."""
    return half_power(c, n - 1) * (QuadraticSurd(0, 1, c) - 1)


def condition_a(st: TowerStep, n: int, g: int | None = None) -> tuple[bool, QuadraticSurd, QuadraticSurd]:
    g = certified_genus(st) if g is None else g
    lhs = QuadraticSurd(2 * g + 1, 0, _const_field(st))
    rhs = condition_a_rhs(_const_field(st), n)
    return lhs <= rhs, lhs, rhs


def condition_c(st: TowerStep, n: int, extra: int = 0) -> tuple[bool, int, int]:
    lhs = certified_place_sum(st) + extra
    rhs = 2 * n + 2 * certified_genus(st) - 1
    return lhs >= rhs, lhs, rhs


THRESHOLD = {2: 19, 3: 13}


def select_step(q: int, n: int) -> TowerStep:
    """First step (in tower order) passing conditions (a) and (c) with b_k = 0."""
    if q not in THRESHOLD:
        raise OutOfRange(f"q must be 2 or 3, not {q}")
    if n < THRESHOLD[q]:
        raise OutOfRange(f"n = {n} is below {THRESHOLD[q]} for q = {q}")
    for st in steps(q):
        if condition_c(st, n)[0] and condition_a(st, n)[0]:
            return st
    raise AssertionError("unreachable")


def log_step_criterion(n: int) -> int:
    """Smallest integer i >= 2 log_3(n/2 - 1)."""
    # i >= 2 log_3(x)  <=>  3^i >= x^2, with x = n/2 - 1 = (n - 2)/2
    x2 = Fraction(n - 2, 2) ** 2
    i = 0
    while 3 ** i < x2:
        i += 1
    return i


# ------------------------------------------------------------ bound reports

@dataclass
class TraceItem:
    label: str
    lhs: object
    rel: str
    rhs: object
    holds: bool

    def recheck(self) -> bool:
        lhs, rhs = self.lhs, self.rhs
        if isinstance(rhs, QuadraticSurd) and not isinstance(lhs, QuadraticSurd):
            lhs = QuadraticSurd(lhs, 0, rhs.r)
        ops = {
            "<=": lambda a, b: a <= b,
            "<": lambda a, b: a < b,
            ">=": lambda a, b: a >= b,
            ">": lambda a, b: a > b,
            "==": lambda a, b: a == b,
        }
        return bool(ops[self.rel](lhs, rhs))

    def to_json(self) -> dict:
        return {"inequality": self.label, "lhs": fmt(self.lhs), "rel": self.rel,
                "rhs": fmt(self.rhs), "status": "holds" if self.holds else "fails"}


def _check(trace: list, label: str, lhs, rel: str, rhs) -> bool:
    item = TraceItem(label, lhs, rel, rhs, False)
    item.holds = item.recheck()
    trace.append(item)
    return item.holds


@dataclass
class BoundReport:
    q: int
    n: int
    mode: str
    step: TowerStep | None
    genus_used: int | None
    branch: str
    b_sum: int | Fraction | None
    bound: Fraction
    source: str = "tower"
    trace: list[TraceItem] = dfield(default_factory=list)
    branches: dict[str, Fraction] = dfield(default_factory=dict)

    @property
    def bound_floor(self) -> int:
        return math.floor(self.bound)

    def reverify(self) -> bool:
        return all(t.recheck() == t.holds for t in self.trace)

    @property
    def certified(self) -> bool:
        return self.mode == "certified" and all(t.holds for t in self.trace)


def _representable_sum(target: int, q: int, counts: tuple[int, ...] | None) -> int | None:
    """Smallest value >= target of sum k b_k that is certainly realizable."""
    if target <= 0:
        return 0
    unit = 4 if q == 2 else 2
    if counts is None:
        # worst case: every place has the largest degree
        return -(-target // unit) * unit
    degs = (1, 2, 4) if q == 2 else (1, 2)
    used = dict.fromkeys(degs, 0)
    rem = target
    for k, b in sorted(zip(degs, counts), reverse=True):
        take = min(b, rem // k)
        used[k] = take
        rem -= take * k
    if rem == 0:
        return target
    spare = [k for k, b in zip(degs, counts) if k >= rem and used[k] < b]
    if not spare:
        return None
    return target - rem + min(spare)


def _eta(q: int) -> tuple[Fraction, Fraction]:
    """(coefficient of n+g+c, coefficient of sum k b_k) and the additive constant."""
    return (Fraction(9, 2), Fraction(9, 4)) if q == 2 else (Fraction(3), Fraction(3, 2))


def _base_bound(q: int, n: int, g: int) -> Fraction:
    return Fraction(9, 2) * (n + g + 1) if q == 2 else Fraction(3) * (n + g)


def _branch_b(q: int, n: int, st: TowerStep, mode: str) -> tuple[Fraction | None, int | None, list[TraceItem]]:
    """Bound from step st with sum k b_k = 2(n - capacity) places doubled."""
    _, beta = _eta(q)
    tb: list[TraceItem] = []
    cap = step_capacity(st, mode)
    need = 2 * (n - cap)
    if mode == "certified":
        b_sum = _representable_sum(need, q, exact_counts(st))
    else:
        b_sum = max(0, need)
    if b_sum is None:
        return None, None, tb
    _, lhs, rhs = condition_a(st, n)
    conds = [_check(tb, f"(a) 2g+1 <= c^((n-1)/2)(sqrt c - 1) on {st.label}", lhs, "<=", rhs)]
    conds.append(_check(tb, f"sum k b_k >= 2(n - capacity) on {st.label}", b_sum, ">=", need))
    conds.append(_check(tb, f"sum k b_k <= sum k B_k on {st.label}", b_sum, "<=", certified_place_sum(st)))
    _, lhs, rhs = condition_c(st, n, b_sum)
    conds.append(_check(tb, f"(c) sum k (B_k + b_k) >= 2n + 2g - 1 on {st.label}", lhs, ">=", rhs))
    # paper mode gates only on b_k <= B_k; other failing inequalities stay in the trace
    gate = all(conds) if mode == "certified" else conds[2]
    if not gate:
        return None, b_sum, tb
    return _base_bound(q, n, certified_genus(st)) + beta * b_sum, b_sum, tb


def pointwise_bound(q: int, n: int, mode: str = "certified",
                    known_values: Mapping[int, object] | None = None) -> BoundReport:
    """Best certified bound for mu^sym_q(n).

    Branch (a) uses the first suitable step with no doubled places; branch (b)
    uses an earlier step and doubles places to make up the missing budget.
    Every earlier step is tried and the minimum is kept.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if mode not in ("certified", "paper"):
        raise ValueError(f"unknown mode {mode!r}")
    if known_values and n in known_values:
        entry = known_values[n]
        value = entry["value"] if isinstance(entry, Mapping) else entry
        src = entry.get("source", "table") if isinstance(entry, Mapping) else "table"
        rep = BoundReport(q, n, mode, None, None, "table", None, Fraction(value), f"table: {src}")
        _check(rep.trace, "table value >= 2n - 1", Fraction(value), ">=", 2 * n - 1)
        return rep
    if q not in THRESHOLD:
        raise OutOfRange(f"q must be 2 or 3, not {q}")
    if n < THRESHOLD[q]:
        raise NoDataForN(f"no tower bound for n = {n} < {THRESHOLD[q]}; supply known values")

    st = select_step(q, n)
    ta: list[TraceItem] = []
    g = certified_genus(st)
    _, lhs, rhs = condition_a(st, n)
    _check(ta, f"(a) 2g+1 <= c^((n-1)/2)(sqrt c - 1) on {st.label}", lhs, "<=", rhs)
    _, lhs, rhs = condition_c(st, n)
    _check(ta, f"(c) sum k B_k >= 2n + 2g - 1 on {st.label}", lhs, ">=", rhs)
    best = BoundReport(q, n, mode, st, g, "a", 0, _base_bound(q, n, g), trace=list(ta))
    branches = {f"a:{st.label}": best.bound}
    lower = st.prev()
    while lower is not None:
        val, b_sum, tb = _branch_b(q, n, lower, mode)
        if val is not None:
            branches[f"b:{lower.label}"] = val
            if val < best.bound:
                best = BoundReport(q, n, mode, lower, certified_genus(lower), "b", b_sum, val,
                                   trace=ta + tb)
        lower = lower.prev()
    best.branches = branches
    _check(best.trace, "bound >= 2n - 1", best.bound, ">=", 2 * n - 1)
    return best


def intercept(q: int) -> Fraction:
    return Fraction(9, 2) if q == 2 else Fraction(0)


TARGET_SLOPE = {2: Fraction(1035, 68), 3: Fraction(1933, 250)}


@dataclass
class SlopeReport:
    q: int
    mode: str
    n_from: int
    n_to: int
    slope: Fraction
    argmax: int
    intercept: Fraction
    target: Fraction

    @property
    def matched(self) -> bool:
        return self.slope <= self.target


def uniform_slope(q: int, n_range: Iterable[int], mode: str = "certified",
                  known_values: Mapping[int, object] | None = None) -> SlopeReport:
    """sup over n of (bound(n) - intercept) / n, compared with the stated target."""
    c = intercept(q)
    ns = list(n_range)
    best, arg = None, None
    for n in ns:
        r = pointwise_bound(q, n, mode, known_values)
        v = (r.bound - c) / n
        if best is None or v > best:
            best, arg = v, n
    return SlopeReport(q, mode, ns[0], ns[-1], best, arg, c, TARGET_SLOPE[q])
