"""Symmetric evaluation/interpolation multiplication algorithms for F_{q^n}/F_q
built on the projective line.

An algorithm is a list of terms (phi, w): phi is a linear form on F_{q^n}
(coordinates on 1, x, ..., x^(n-1) mod Q) and w an element of F_{q^n}, with
x*y = sum phi(x) phi(y) w.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import Sequence

from . import linalg
from .errors import ConditionsNotMet, FieldMismatch, InsufficientPlaces, PoleAtPlace, UnsupportedBase
from .ff_core import (
    FieldElement,
    FieldSpec,
    Polynomial,
    extension_field,
    first_irreducible,
    is_irreducible,
)
from .function_field import (
    Divisor,
    Place,
    evaluation_matrix,
    places_of_degree,
    riemann_roch_basis,
)

# symmetric rank of multiplication in F_{q^k} and of truncated products mod t^u
MU = {1: 1, 2: 3, 4: 9}
M_HAT = {1: 1, 2: 3}
# greedy passes, cheapest cost per unit of budget first
PASSES = ((1, 1), (2, 1), (1, 2), (4, 1), (2, 2), (4, 2))
SEARCH_MAX_DEGREE = 5

Term = tuple[tuple[int, ...], tuple[int, ...]]


# ----------------------------------------------------------- base algorithms

@dataclass(frozen=True)
class BaseAlgorithm:
    """Symmetric algorithm for F_{q^k}[t]/(t^u), F_{q^k} = F_q[x]/(modulus).

    Coordinates are flattened t-power first: index j*k + i holds the x^i
    coordinate of the t^j coefficient.
    """

    field: FieldSpec
    k: int
    u: int
    modulus: Polynomial
    terms: tuple[Term, ...]

    @property
    def rank(self) -> int:
        return len(self.terms)

    @property
    def dim(self) -> int:
        return self.k * self.u


def _karatsuba(F: FieldSpec, L: int) -> list[tuple[list[int], list[int]]]:
    """Symmetric terms for the full product of two length-L polynomials (L a power of 2).

    Each term is (phi on L coefficients, w on 2L-1 product coefficients).
    """
    if L == 1:
        return [([1], [1])]
    h = L // 2
    sub = _karatsuba(F, h)
    one, mone = 1, F.neg(1)
    out = []

    def emit(phi_map, placements):
        for phi, w in sub:
            full_phi = [0] * L
            for j, c in enumerate(phi):
                for off in phi_map:
                    full_phi[off + j] = F.add(full_phi[off + j], c)
            full_w = [0] * (2 * L - 1)
            for shift, sign in placements:
                for j, c in enumerate(w):
                    full_w[shift + j] = F.add(full_w[shift + j], F.mul(sign, c))
            out.append((full_phi, full_w))

    # low*low, high*high, (low+high)*(low+high)
    emit([0], [(0, one), (h, mone)])
    emit([h], [(2 * h, one), (h, mone)])
    emit([0, h], [(h, one)])
    return out


def _reduce_vec(F: FieldSpec, w: Sequence[int], modulus: Polynomial) -> tuple[int, ...]:
    k = modulus.degree
    r = Polynomial(F, w) % modulus
    return r.coeffs + (0,) * (k - len(r.coeffs))


def base_algorithm(q: FieldSpec, k: int, u: int, modulus: Polynomial | None = None) -> BaseAlgorithm:
    """Karatsuba-type symmetric algorithm of rank MU[k] * M_HAT[u]."""
    if k not in MU or u not in M_HAT:
        raise UnsupportedBase(f"no base algorithm for (k={k}, u={u})")
    F = q
    if modulus is None:
        modulus = first_irreducible(F, k)
    if modulus.degree != k:
        raise UnsupportedBase("modulus degree does not match k")
    field_terms = [(tuple(phi), _reduce_vec(F, w, modulus)) for phi, w in _karatsuba(F, k)]
    if u == 1:
        return BaseAlgorithm(F, k, 1, modulus, tuple(field_terms))
    # outer Karatsuba mod t^2: c0 = a0b0, c1 = (a0+a1)(b0+b1) - a0b0 - a1b1
    one, mone = 1, F.neg(1)
    terms = []
    for blocks, outs in (
        ((0,), ((0, one), (1, mone))),
        ((0, 1), ((1, one),)),
        ((1,), ((1, mone),)),
    ):
        for phi, w in field_terms:
            full_phi = [0] * (2 * k)
            for b in blocks:
                full_phi[b * k:(b + 1) * k] = phi
            full_w = [0] * (2 * k)
            for b, sign in outs:
                for i, c in enumerate(w):
                    full_w[b * k + i] = F.add(full_w[b * k + i], F.mul(sign, c))
            terms.append((tuple(full_phi), tuple(full_w)))
    return BaseAlgorithm(F, k, 2, modulus, tuple(terms))


def truncated_product_tensor(F: FieldSpec, k: int, u: int, modulus: Polynomial):
    """T[a][b] = coordinates of e_a * e_b in F_{q^k}[t]/(t^u)."""
    dim = k * u
    T = [[None] * dim for _ in range(dim)]
    for a in range(dim):
        ja, ia = divmod(a, k)
        for b in range(dim):
            jb, ib = divmod(b, k)
            out = [0] * dim
            if ja + jb < u:
                xi = Polynomial(F, [0] * (ia + ib) + [1]) % modulus
                for i, c in enumerate(xi.coeffs):
                    out[(ja + jb) * k + i] = c
            T[a][b] = tuple(out)
    return T


# ------------------------------------------------------------------- plans

@dataclass(frozen=True)
class EvaluationPlan:
    q: FieldSpec
    n: int
    Q: Place
    D: Divisor
    places: tuple[tuple[Place, int], ...]

    @property
    def budget(self) -> int:
        return sum(P.degree * u for P, u in self.places)


def _unit_cost(k: int, u: int) -> int:
    return MU[k] * M_HAT[u]


def _greedy(avail: dict[int, list[Place]], need: int, passes) -> dict[Place, int] | None:
    """Pick places and multiplicities until the budget reaches `need`.

    At each step the next action in pass order is compared with the cheapest
    action that finishes the job; the finisher wins when it costs no more.
    """
    chosen: dict[Place, int] = {}
    budget = 0

    def action(k, u):
        if u == 1:
            P = next((P for P in avail.get(k, ()) if P not in chosen), None)
            return None if P is None else (P, k, _unit_cost(k, 1))
        P = next((P for P in avail.get(k, ()) if chosen.get(P) == 1), None)
        if P is not None:
            return (P, k, _unit_cost(k, 2) - _unit_cost(k, 1))
        P = next((P for P in avail.get(k, ()) if P not in chosen), None)
        return None if P is None else (P, 2 * k, _unit_cost(k, 2))

    while budget < need:
        acts = [(a, u) for k, u in passes if (a := action(k, u)) is not None]
        if not acts:
            return None
        step = acts[0]
        finishers = [t for t in acts if t[0][1] >= need - budget]
        if finishers:
            best = min(finishers, key=lambda t: t[0][2])
            if best[0][2] <= step[0][2]:
                step = best
        (P, inc, _), u = step
        chosen[P] = u
        budget += inc
    return chosen


def _available(F: FieldSpec, d: int, exclude) -> dict[int, list[Place]]:
    return {k: [P for P in places_of_degree(F, k) if P not in exclude] for k in (1, 2, 4) if k <= d}


def _plan_for(F, n, d, Q, D) -> EvaluationPlan | None:
    exclude = set(D.support) | {Q}
    passes = [(k, u) for k, u in PASSES if k <= d]
    chosen = _greedy(_available(F, d, exclude), 2 * n - 1, passes)
    if chosen is None:
        return None
    places = tuple(sorted(chosen.items(), key=lambda t: t[0].sort_key()))
    return EvaluationPlan(F, n, Q, D, places)


def _rank_of(plan: EvaluationPlan) -> int:
    return sum(_unit_cost(P.degree, u) for P, u in plan.places)


def _pair_coeffs(d1: int, d2: int, target: int, bound: int):
    best = None
    for a1 in range(-bound, bound + 1):
        if a1 == 0:
            continue
        rest = target - a1 * d1
        if rest % d2:
            continue
        a2 = rest // d2
        if a2 == 0 or abs(a2) > bound:
            continue
        if best is None or abs(a1) + abs(a2) < abs(best[0]) + abs(best[1]):
            best = (a1, a2)
    return best


def _fallback_divisor(F: FieldSpec, n: int, d: int, Q: Place) -> Divisor | None:
    """A degree n-1 divisor supported on places above the degree cap."""
    target = n - 1
    for e in range(d + 1, 2 * n + 1):
        if target % e == 0 and e != n:
            R = Place(F, first_irreducible(F, e))
            return Divisor([(R, target // e)])
    for e1 in range(d + 1, 2 * n + 1):
        for e2 in range(e1 + 1, 2 * n + 1):
            if n in (e1, e2):
                continue
            ab = _pair_coeffs(e1, e2, target, 2 * n)
            if ab:
                return Divisor([(Place(F, first_irreducible(F, e1)), ab[0]),
                                (Place(F, first_irreducible(F, e2)), ab[1])])
    return None


def select_plan(q: FieldSpec, n: int, d: int = 4, strategy: str = "default") -> EvaluationPlan:
    """Choose Q, D and the evaluation places for F_{q^n}/F_q."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if d not in (1, 2, 4):
        raise UnsupportedBase(f"degree cap {d} not in (1, 2, 4)")
    if strategy not in ("default", "search"):
        raise ValueError(f"unknown strategy {strategy!r}")
    F = q
    Q = Place(F, first_irreducible(F, n))
    inf = Place(F)
    default_D = Divisor([(inf, n - 1)])
    plan = _plan_for(F, n, d, Q, default_D)
    if plan is None:
        D = _fallback_divisor(F, n, d, Q)
        plan = _plan_for(F, n, d, Q, D) if D is not None else None
    if plan is None:
        cap = 2 * sum(k * len(places_of_degree(F, k)) for k in (1, 2, 4) if k <= d)
        raise InsufficientPlaces(f"budget {cap} over places of degree <= {d} is below {2 * n - 1}")
    if strategy == "default":
        return plan
    best, best_rank = plan, _rank_of(plan)
    for D in _search_divisors(F, n, Q):
        cand = _plan_for(F, n, d, Q, D)
        if cand is not None and _rank_of(cand) < best_rank:
            best, best_rank = cand, _rank_of(cand)
    return best


def _search_divisors(F: FieldSpec, n: int, Q: Place):
    low = [P for k in range(1, SEARCH_MAX_DEGREE + 1) for P in places_of_degree(F, k) if P != Q]
    for R in low:
        if (n - 1) % R.degree == 0:
            yield Divisor([(R, (n - 1) // R.degree)])
    for i, R1 in enumerate(low):
        for R2 in low[i + 1:]:
            ab = _pair_coeffs(R1.degree, R2.degree, n - 1, 2 * n)
            if ab:
                yield Divisor([(R1, ab[0]), (R2, ab[1])])


def predicted_rank(plan: EvaluationPlan) -> int:
    total = 0
    for P, u in plan.places:
        if P.degree not in MU or u not in M_HAT:
            raise UnsupportedBase(f"no base algorithm for (k={P.degree}, u={u})")
        total += _unit_cost(P.degree, u)
    return total


# ----------------------------------------------------------- condition check

@dataclass
class ConditionsReport:
    items: list[tuple[str, bool, str]] = dfield(default_factory=list)

    def add(self, name: str, ok: bool, witness: str):
        self.items.append((name, ok, witness))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def failed(self) -> list[str]:
        return [name for name, ok, _ in self.items if not ok]

    def get(self, name: str) -> bool:
        return next(ok for nm, ok, _ in self.items if nm == name)


def _matrices(plan: EvaluationPlan):
    F = plan.q
    B1 = riemann_roch_basis(plan.D, F)
    B2 = riemann_roch_basis(2 * plan.D, F)
    MQ = evaluation_matrix(B1, [(plan.Q, 1)])
    ED = evaluation_matrix(B1, plan.places)
    E2 = evaluation_matrix(B2, plan.places)
    M2Q = evaluation_matrix(B2, [(plan.Q, 1)])
    return MQ, ED, E2, M2Q


def check_conditions(plan: EvaluationPlan) -> ConditionsReport:
    F, n = plan.q, plan.n
    rep = ConditionsReport()
    pts = [P for P, _ in plan.places]
    clash = [P for P in plan.D.support if P == plan.Q or P in pts]
    rep.add("support_disjoint", not clash, f"shared places: {clash}" if clash else "none shared")
    distinct = len(set(pts)) == len(pts) and plan.Q not in pts
    rep.add("places_distinct", distinct, f"{len(pts)} evaluation places")
    qok = not plan.Q.is_infinite and plan.Q.degree == n and is_irreducible(plan.Q.poly)
    rep.add("a_degree_n_place", qok, f"Q = {plan.Q.poly!r}" if not plan.Q.is_infinite else "Q infinite")
    rep.add("b_nonspecial", True, "every degree -1 divisor has dimension 0 at genus 0")
    rep.add("deg_D", plan.D.degree == n - 1, f"deg D = {plan.D.degree}")
    rep.add("c_budget", plan.budget >= 2 * n - 1, f"{plan.budget} >= {2 * n - 1}")
    supported = all(P.degree in MU and u in M_HAT for P, u in plan.places)
    rep.add("base_table", supported, "all (deg P, u) in base table" if supported else "unsupported (deg P, u)")
    if clash or not qok:
        rep.add("ev_Q_bijective", False, "skipped")
        rep.add("ev_P_injective", False, "skipped")
        return rep
    try:
        MQ, _, E2, _ = _matrices(plan)
    except PoleAtPlace as exc:
        rep.add("ev_Q_bijective", False, str(exc))
        rep.add("ev_P_injective", False, str(exc))
        return rep
    rq = linalg.rank(F, MQ)
    rep.add("ev_Q_bijective", rq == n and len(MQ[0]) == n, f"{len(MQ)}x{len(MQ[0])} of rank {rq}")
    cols = len(E2[0]) if E2 else 2 * n - 1
    r2 = linalg.rank(F, E2) if E2 else 0
    rep.add("ev_P_injective", r2 == cols == 2 * n - 1, f"{len(E2)}x{cols} of rank {r2}")
    return rep


# -------------------------------------------------------------- construction

@dataclass(frozen=True)
class SymmetricBilinearAlgorithm:
    q: FieldSpec
    n: int
    modulus_Q: Polynomial
    terms: tuple[Term, ...]
    plan: EvaluationPlan | None = None

    @property
    def rank(self) -> int:
        return len(self.terms)

    @property
    def ext(self) -> FieldSpec:
        return extension_field(self.q, self.modulus_Q)


def build_algorithm(plan: EvaluationPlan) -> SymmetricBilinearAlgorithm:
    rep = check_conditions(plan)
    if not rep.ok:
        raise ConditionsNotMet(", ".join(rep.failed()))
    F, n = plan.q, plan.n
    MQ, ED, E2, M2Q = _matrices(plan)
    Lam = linalg.matmul(F, ED, linalg.inverse(F, MQ))  # R x n
    S = linalg.independent_rows(F, E2)
    E2S_inv = linalg.inverse(F, [E2[i] for i in S])
    PsiS = linalg.matmul(F, M2Q, E2S_inv)  # n x (2n-1)
    R = len(ED)
    Psi = linalg.zeros(n, R)
    for c, i in enumerate(S):
        for r in range(n):
            Psi[r][i] = PsiS[r][c]
    terms = []
    off = 0
    for P, u in plan.places:
        size = P.degree * u
        mod = P.poly if not P.is_infinite else Polynomial.x(F)
        base = base_algorithm(F, P.degree, u, mod)
        block = Lam[off:off + size]
        psi_block = [row[off:off + size] for row in Psi]
        for phi, w in base.terms:
            phi_full = tuple(linalg.matvec(F, linalg.transpose(block), phi))
            w_full = tuple(linalg.matvec(F, psi_block, w))
            terms.append((phi_full, w_full))
        off += size
    return SymmetricBilinearAlgorithm(F, n, plan.Q.poly, tuple(terms), plan)


def multiply_with(alg: SymmetricBilinearAlgorithm, x: FieldElement, y: FieldElement) -> FieldElement:
    K = alg.ext
    if x.field != K or y.field != K:
        raise FieldMismatch("operands are not in the algorithm's field")
    F = alg.q
    X, Y = x.coeffs, y.coeffs
    acc = [0] * alg.n
    for phi, w in alg.terms:
        c = F.mul(linalg.dot(F, phi, X), linalg.dot(F, phi, Y))
        if c:
            acc = [F.add(a, F.mul(c, b)) for a, b in zip(acc, w)]
    return FieldElement(K, K.from_coeffs(acc))


# -------------------------------------------------------------- verification

EXHAUSTIVE_LIMIT = 2 ** 20
SHARD_SIZE = 10_000


@dataclass
class VerificationReport:
    mode: str
    pairs: int
    failures: list[tuple[tuple[int, ...], tuple[int, ...]]]
    asymmetric: int
    rank: int
    n: int
    seed: int | None = None

    @property
    def rank_ok(self) -> bool:
        return self.rank >= 2 * self.n - 1

    @property
    def ok(self) -> bool:
        return not self.failures and not self.asymmetric and self.rank_ok

    def summary(self) -> str:
        good = self.pairs - len(self.failures)
        return f"{good}/{self.pairs} pairs ok"


def product_tensor(F: FieldSpec, modulus: Polynomial):
    """T[i][j] = coordinates of x^(i+j) mod the modulus (schoolbook oracle)."""
    n = modulus.degree
    return [[_reduce_vec(F, [0] * (i + j) + [1], modulus) for j in range(n)] for i in range(n)]


class _Evaluator:
    """Vectorized sum_l phi_l(x) psi_l(y) w_l against a structure tensor."""

    def __init__(self, F: FieldSpec, terms, tensor, dim: int):
        import numpy as np

        self.np = np
        self.F = F
        self.dim = dim
        self.add, self.mul, _ = F.np_tables()
        self.Phi = np.array([t[0] for t in terms], dtype=np.int64).reshape(len(terms), dim)
        self.W = np.array([t[1] for t in terms], dtype=np.int64).reshape(len(terms), -1)
        self.T = np.array(tensor, dtype=np.int64)

    def _lin(self, X, M):
        # rows of X (N x dim) against rows of M (r x dim) -> N x r
        np = self.np
        if self.F.is_prime:
            return (X @ M.T) % self.F.p
        acc = np.zeros((X.shape[0], M.shape[0]), dtype=np.int64)
        for j in range(M.shape[1]):
            acc = self.add[acc, self.mul[X[:, j][:, None], M[:, j][None, :]]]
        return acc

    def _combine(self, C, W):
        np = self.np
        if self.F.is_prime:
            return (C @ W) % self.F.p
        acc = np.zeros((C.shape[0], W.shape[1]), dtype=np.int64)
        for l in range(W.shape[0]):
            acc = self.add[acc, self.mul[C[:, l][:, None], W[l][None, :]]]
        return acc

    def algorithm(self, X, Y):
        Lx, Ly = self._lin(X, self.Phi), self._lin(Y, self.Phi)
        return self._combine(self.mul[Lx, Ly], self.W), self._combine(self.mul[Ly, Lx], self.W)

    def oracle(self, X, Y):
        np = self.np
        dim = self.dim
        if self.F.is_prime:
            P = (X[:, :, None] * Y[:, None, :]).reshape(X.shape[0], dim * dim)
            return (P @ self.T.reshape(dim * dim, -1)) % self.F.p
        acc = np.zeros((X.shape[0], self.T.shape[2]), dtype=np.int64)
        for i in range(dim):
            for j in range(dim):
                c = self.mul[X[:, i], Y[:, j]][:, None]
                acc = self.add[acc, self.mul[c, self.T[i, j][None, :]]]
        return acc


def _digits(np, idx, q: int, dim: int):
    out = np.empty((idx.shape[0], dim), dtype=np.int64)
    for j in range(dim):
        idx, out[:, j] = np.divmod(idx, q)
    return out


def _check_chunk(ev: _Evaluator, X, Y, failures: list, limit: int) -> int:
    np = ev.np
    got, swapped = ev.algorithm(X, Y)
    want = ev.oracle(X, Y)
    bad = np.nonzero((got != want).any(axis=1))[0]
    for b in bad[: max(0, limit - len(failures))]:
        failures.append((tuple(int(v) for v in X[b]), tuple(int(v) for v in Y[b])))
    return int((got != swapped).any(axis=1).sum())


def _random_shard(args):
    F, terms, tensor, dim, seed, shard, count, limit = args
    import numpy as np

    ev = _Evaluator(F, terms, tensor, dim)
    rng = np.random.default_rng([seed, shard])
    X = rng.integers(0, F.q, size=(count, dim), dtype=np.int64)
    Y = rng.integers(0, F.q, size=(count, dim), dtype=np.int64)
    failures: list = []
    asym = _check_chunk(ev, X, Y, failures, limit)
    return failures, asym


def check_terms(F: FieldSpec, terms, tensor, dim: int, mode: str = "auto", samples: int = 100_000,
                seed: int = 0, workers: int = 1, max_failures: int = 20):
    """Compare a term list with a structure tensor; returns (mode, pairs, failures, asymmetric)."""
    import numpy as np

    total = F.q ** (2 * dim)
    if mode == "auto":
        mode = "exhaustive" if total <= EXHAUSTIVE_LIMIT else "random"
    failures: list = []
    asym = 0
    if mode == "exhaustive":
        ev = _Evaluator(F, terms, tensor, dim)
        size = F.q ** dim
        allv = _digits(np, np.arange(size, dtype=np.int64), F.q, dim)
        step = max(1, (1 << 18) // size)
        for start in range(0, size, step):
            xs = np.arange(start, min(size, start + step), dtype=np.int64)
            X = np.repeat(allv[xs], size, axis=0)
            Y = np.tile(allv, (len(xs), 1))
            asym += _check_chunk(ev, X, Y, failures, max_failures)
        return mode, total, failures, asym
    if mode != "random":
        raise ValueError(f"unknown mode {mode!r}")
    shards = []
    for s, start in enumerate(range(0, samples, SHARD_SIZE)):
        shards.append((F, terms, tensor, dim, seed, s, min(SHARD_SIZE, samples - start), max_failures))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_random_shard, shards))
    else:
        results = [_random_shard(a) for a in shards]
    for f, a in results:
        failures.extend(f[: max(0, max_failures - len(failures))])
        asym += a
    return mode, samples, failures, asym


def verify_algorithm(alg: SymmetricBilinearAlgorithm, mode: str = "auto", samples: int = 100_000,
                     seed: int = 0, workers: int = 1) -> VerificationReport:
    """Check x*y against schoolbook multiplication mod Q."""
    tensor = product_tensor(alg.q, alg.modulus_Q)
    mode, pairs, failures, asym = check_terms(alg.q, alg.terms, tensor, alg.n, mode, samples, seed, workers)
    return VerificationReport(mode, pairs, failures, asym, alg.rank, alg.n,
                              seed if mode == "random" else None)


def verify_base(base: BaseAlgorithm) -> VerificationReport:
    tensor = truncated_product_tensor(base.field, base.k, base.u, base.modulus)
    mode, pairs, failures, asym = check_terms(base.field, base.terms, tensor, base.dim, "exhaustive")
    # the lower rank bound does not apply to base algorithms; report it trivially satisfied
    return VerificationReport(mode, pairs, failures, asym, base.rank, 0)
