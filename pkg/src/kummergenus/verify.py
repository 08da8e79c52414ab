"""Independent brute-force oracles and exhaustive sweep campaigns.

Every closed-form quantity in the package is checked here against a
disjoint computation: splitting triples against actual factorization of
X^n - D over the residue extension field (and over F_q[S] after T -> 1/S
for the infinite place), residue symbols against exhaustive n-th power
enumeration, the tame symbol against its direct modular-exponentiation
evaluation, and the decomposition criteria against each other.

Oracles enumerate honestly within hard range caps (no sampling inside an
oracle); sweeps are deterministic given their seed, and their JSON form
contains no volatile fields, so a fixed seed reproduces identical bytes.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from math import gcd, lcm

from .decomposition import genus_splitting_report, prime_above
from .finite_field import FieldElement, FqField, RootOfUnity, factorize, field_construct
from .genus import ambiguous_class_count, galois_structure, genus_degrees, genus_field
from .kummer import (
    INFINITY,
    KummerDatum,
    Place,
    SplittingData,
    datum_normalize,
    extension_invariants,
    local_splitting,
    ramification_index,
)
from .polyring import (
    MonicIrreducible,
    Poly,
    ResidueField,
    binomial_factor_profile,
    enumerate_irreducibles,
    format_poly,
    modexp,
    factor,
)
from .symbols import (
    hilbert_symbol,
    product_formula_check,
    reciprocity_relation,
    residue_symbol,
    tame_place_data,
)

__all__ = [
    "ORACLE_CAP",
    "SweepReport",
    "power_residue_oracle",
    "splitting_oracle",
    "infinity_oracle",
    "tame_symbol_oracle",
    "random_data",
    "sweep_data",
    "reciprocity_sweep",
    "genus_consistency_sweep",
    "symbols_sweep",
    "acceptance_campaigns",
    "run_selftest",
]

# Exhaustive enumeration stays under a second per case up to this residue size.
ORACLE_CAP = 4096


@dataclass
class SweepReport:
    """Outcome of a sweep campaign; failures carry full case inputs."""

    campaign: str
    params: dict
    cases: int = 0
    failures: list = dataclass_field(default_factory=list)
    extras: dict = dataclass_field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **case):
        self.failures.append(case)

    def to_json(self) -> str:
        """Canonical JSON; volatile timing is excluded so bytes are seed-stable."""
        body = {
            "campaign": self.campaign,
            "params": self.params,
            "cases": self.cases,
            "failures": self.failures,
            "extras": self.extras,
            "passed": self.passed,
        }
        return json.dumps(body, sort_keys=True, separators=(",", ":"))

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.campaign}: {state}, {self.cases} cases, {self.elapsed_seconds:.1f}s"


def _parallel_map(fn, items, threads: int = 1):
    """Order-preserving map, optionally fanned out over a thread pool."""
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _divisors(num: int) -> list[int]:
    return [d for d in range(1, num + 1) if num % d == 0]


_PRIME_POOL_CACHE: dict = {}


def primes_up_to(field: FqField, max_degree: int) -> list[MonicIrreducible]:
    """Cached list of monic irreducibles of degree <= max_degree."""
    key = (field, max_degree)
    pool = _PRIME_POOL_CACHE.get(key)
    if pool is None:
        pool = list(enumerate_irreducibles(field, max_degree))
        _PRIME_POOL_CACHE[key] = pool
    return pool


# ---------------------------------------------------------------------------
# Oracles


_POWER_SET_CACHE: dict = {}


def power_residue_oracle(d_poly: Poly, q_prime: MonicIrreducible, n: int) -> bool:
    """Is D an n-th power residue mod Q?  Decided by exhausting the unit group.

    Enumerates every x in (R_T/(Q))^* and collects x^n; the answer is set
    membership of D mod Q.  Range-capped to keep the enumeration honest.
    """
    field = d_poly.field
    if field.q**q_prime.degree > ORACLE_CAP:
        raise ValueError(f"residue field exceeds oracle cap {ORACLE_CAP}")
    if n < 1 or (field.q - 1) % n != 0:
        raise ValueError(f"n = {n} does not divide q-1 = {field.q - 1}")
    rf = ResidueField(q_prime)
    target = rf.from_poly(d_poly)
    if target == rf.zeroi:
        raise ValueError(f"prime {q_prime} divides the numerator")
    key = (field, q_prime.poly.cs, n)
    powers = _POWER_SET_CACHE.get(key)
    if powers is None:
        powers = frozenset(rf.powi(x, n) for x in rf.iter_units())
        _POWER_SET_CACHE[key] = powers
    return target in powers


def _valuation(a_poly: Poly, q_prime: MonicIrreducible) -> tuple[int, Poly]:
    v = 0
    current = a_poly
    while True:
        quo, rem = current.divmod(q_prime.poly)
        if rem.is_zero() and not current.is_zero():
            v += 1
            current = quo
        else:
            return v, current


def _local_oracle(d_poly: Poly, q_prime: MonicIrreducible, n: int) -> SplittingData:
    """Splitting of X^n - D at the finite prime Q, by honest factorization.

    Ramified part: the Newton polygon of X^n - D at Q is the single segment
    from (0, v_Q(D)) to (n, 0); the slope denominator is the ramification
    index.  Residual part: distinct-degree factorization of X^m - u over
    the residue field, u the unit part of D, m = gcd(n, v_Q(D)); the factor
    degrees must agree and give the inertia degree.
    """
    field = d_poly.field
    if field.q**q_prime.degree > ORACLE_CAP:
        raise ValueError(f"residue field exceeds oracle cap {ORACLE_CAP}")
    a, unit = _valuation(d_poly, q_prime)
    m = gcd(n, a)
    e = n // m  # denominator of the Newton slope a/n in lowest terms
    rf = ResidueField(q_prime)
    u = rf.from_poly(unit)
    profile = binomial_factor_profile(rf, m, u)
    if len(profile) != 1:
        raise AssertionError(f"mixed factor degrees {profile} for a Kummer binomial")
    f, count = profile[0]
    if e * f * count != n:
        raise AssertionError("oracle splitting does not multiply to n")
    return SplittingData(e, f, count)


def splitting_oracle(datum: KummerDatum, q_prime: MonicIrreducible) -> SplittingData:
    """(e, f, g) of a finite place by factorization over the residue field."""
    return _local_oracle(datum.D, q_prime, datum.n)


def infinity_oracle(datum: KummerDatum) -> SplittingData:
    """(e_inf, f_inf, number of infinite places), via the substitution T -> 1/S.

    Clears D(1/S) to the polynomial W = D(1/S) * S^(n*ceil(deg D / n)) and
    runs the same finite-place machinery at the prime S of F_q(S).
    """
    n = datum.n
    deg = datum.D.degree
    clear = n * ((deg + n - 1) // n)
    w_poly = datum.D.reverse().shift(clear - deg)
    s_prime = MonicIrreducible(Poly.T(datum.F), _trusted=True)
    return _local_oracle(w_poly, s_prime, n)


def tame_symbol_oracle(r_poly: Poly, s_poly: Poly, place: Place, n: int) -> RootOfUnity:
    """Direct evaluation of the tame symbol, independent of the dlog tables.

    Computes the residue of (-1)^(v(R)v(S)) R^v(S) S^(-v(R)) by modular
    exponentiation and raises it to (q^d - 1)/n.
    """
    field = r_poly.field
    if place.is_infinite:
        deg_r, deg_s = r_poly.degree, s_poly.degree
        c = field.muli(
            field.powi(s_poly.lc, deg_r), field.invi(field.powi(r_poly.lc, deg_s))
        )
        if (deg_r * deg_s) % 2 == 1:
            c = field.negi(c)
        value = field.powi(c, (field.q - 1) // n)
        return _constant_root(field, value, n)
    q_prime = place.prime
    a, r_unit = _valuation(r_poly, q_prime)
    b, s_unit = _valuation(s_poly, q_prime)
    n_order = field.q**q_prime.degree
    t = modexp(r_unit, b, q_prime.poly)
    if a:
        inv = modexp(modexp(s_unit, a, q_prime.poly), n_order - 2, q_prime.poly)
        t = (t * inv) % q_prime.poly
    if (a * b) % 2 == 1:
        t = -t
    value_poly = modexp(t, (n_order - 1) // n, q_prime.poly)
    if value_poly.degree not in (None, 0):
        raise AssertionError("tame residue power is not constant")
    return _constant_root(field, value_poly.coefficient(0), n)


def _constant_root(field: FqField, enc: int, n: int) -> RootOfUnity:
    zeta = field.powi(field.xi_enc, (field.q - 1) // n)
    cur = 1
    for j in range(n):
        if cur == enc:
            return RootOfUnity(field, n, j)
        cur = field.muli(cur, zeta)
    raise AssertionError("oracle value escaped mu_n")


# ---------------------------------------------------------------------------
# Seeded data generation


def random_data(
    field: FqField,
    n: int,
    count: int,
    rng: random.Random,
    max_prime_degree: int = 3,
    max_primes: int = 3,
) -> list[KummerDatum]:
    """Deterministic sample of valid data for K = k(D^(1/n)).

    The first datum is always D = xi (constant, with infinity totally
    inert), so the unit-index and constant-extension paths are exercised
    in every sweep.
    """
    pool = primes_up_to(field, max_prime_degree)
    data = [datum_normalize(field, n, Poly.const(field, field.xi))]
    while len(data) < count:
        r = rng.randrange(0, max_primes + 1) if n > 1 else 0
        primes = rng.sample(pool, r) if r else []
        d_poly = Poly.const(field, rng.randrange(1, field.q))
        for prime in primes:
            d_poly = d_poly * prime.poly ** rng.randrange(1, n)
        try:
            data.append(datum_normalize(field, n, d_poly))
        except ValueError:
            continue
    return data[:count]


def sweep_data(q_list, datum_count: int, seed: int, n_bound: int | None = None):
    """[(field, n, [datum, ...]), ...] for every q in q_list and n | q-1."""
    out = []
    for q in q_list:
        field = _field_for(q)
        for n in _divisors(field.q - 1):
            if n_bound is not None and n > n_bound:
                continue
            rng = random.Random(f"{seed}:{q}:{n}")
            out.append((field, n, random_data(field, n, datum_count, rng)))
    return out


def _field_for(q: int) -> FqField:
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    p, m = fac[0]
    return field_construct(p, m)


# ---------------------------------------------------------------------------
# Case checkers shared by the campaigns


def _datum_label(datum: KummerDatum) -> dict:
    return {"q": datum.q, "n": datum.n, "D": format_poly(datum.D)}


def _check_genus_identities(datum: KummerDatum, report: SweepReport):
    over_k, over_k_rel = genus_degrees(datum)
    amb = ambiguous_class_count(datum)
    inv = extension_invariants(datum)
    invariants = galois_structure(datum)
    prod_inv = 1
    for value in invariants:
        prod_inv *= value
    gfield = genus_field(datum)
    report.cases += 1
    if over_k != datum.n * over_k_rel:
        report.fail(check="degree-product", **_datum_label(datum))
    if amb != over_k_rel:
        report.fail(check="ambiguous-vs-relative-degree", **_datum_label(datum))
    if prod_inv != over_k:
        report.fail(check="abelian-invariants-product", **_datum_label(datum))
    if inv.ik_over_ik != amb:
        report.fail(check="ideal-index-vs-ambiguous", **_datum_label(datum))
    if gfield.degree_over_k != over_k:
        report.fail(check="component-degree", **_datum_label(datum))
    for prime, _ in datum.ram:
        e_i = ramification_index(datum, prime)
        comp = lcm(*[e_j for p_j, e_j in gfield.components if p_j == prime], 1)
        if comp != e_i:
            report.fail(check="component-ramification", P=str(prime), **_datum_label(datum))


def _check_index_formulas(datum: KummerDatum, report: SweepReport):
    n = datum.n
    inf = local_splitting(datum, INFINITY)
    inv = extension_invariants(datum)
    report.cases += 1
    if (n * n) % (inf.e * inf.f) != 0:
        report.fail(check="delta-integrality", **_datum_label(datum))
    if inv.delta_index * inf.e * inf.f != n * n:
        report.fail(check="delta-value", **_datum_label(datum))
    if inv.h1_u_plus != inv.delta_index:
        report.fail(check="h1-equals-delta", **_datum_label(datum))
    if inv.herbrand_u * n != inf.e * inf.f:
        report.fail(check="herbrand", **_datum_label(datum))
    if inv.kinf_mod_n_order != n * n:
        report.fail(check="kinf-class-order", **_datum_label(datum))
    if inv.unit_index_divides != n:
        report.fail(check="unit-index-bound", **_datum_label(datum))
    expected_e = 1
    for prime, _ in datum.ram:
        expected_e *= ramification_index(datum, prime)
    if inv.ik_over_ik != expected_e:
        report.fail(check="ideal-index", **_datum_label(datum))
    totally_inert = inf.e == 1 and inf.f == n
    if totally_inert and inv.unit_index_exact != 1:
        report.fail(check="inert-unit-index", **_datum_label(datum))
    if not totally_inert and inv.unit_index_exact is not None:
        report.fail(check="unit-index-overclaim", **_datum_label(datum))


def _check_splitting_at(datum: KummerDatum, q_prime: MonicIrreducible, report: SweepReport):
    closed = local_splitting(datum, Place.finite(q_prime))
    oracle = _local_oracle(datum.D, q_prime, datum.n)
    report.cases += 1
    label = dict(Q=str(q_prime), **_datum_label(datum))
    if tuple(closed) != tuple(oracle):
        report.fail(check="splitting-vs-oracle", closed=tuple(closed), oracle=tuple(oracle), **label)
    if closed.e * closed.f * closed.g != datum.n:
        report.fail(check="efg-product", **label)
    if datum.exponent_of(q_prime) == 0:
        order = residue_symbol(datum.D, q_prime, datum.n).order
        if closed.f != order:
            report.fail(check="f-vs-symbol-order", f=closed.f, order=order, **label)


def _check_splitting_infinity(datum: KummerDatum, report: SweepReport):
    closed = local_splitting(datum, INFINITY)
    oracle = infinity_oracle(datum)
    report.cases += 1
    if tuple(closed) != tuple(oracle):
        report.fail(
            check="infinity-vs-oracle",
            closed=tuple(closed),
            oracle=tuple(oracle),
            **_datum_label(datum),
        )
    if closed.e * closed.f * closed.g != datum.n:
        report.fail(check="efg-product-infinity", **_datum_label(datum))


def _check_decomposition_at(datum: KummerDatum, q_prime: MonicIrreducible, report: SweepReport):
    if datum.exponent_of(q_prime) != 0:
        return
    prime = prime_above(datum, q_prime)
    rep = genus_splitting_report(datum, prime)
    report.cases += 1
    label = dict(Q=str(q_prime), f=prime.f, **_datum_label(datum))
    if rep.via_b != rep.direct:
        report.fail(check="via-b-vs-direct", via_b=rep.via_b, direct=rep.direct, **label)
    if prime.f == datum.n and not (rep.via_b and rep.direct):
        report.fail(check="inert-full-splitting", **label)
    if datum.r == 0:
        expected = (prime.f * q_prime.degree) % datum.n == 0
        if rep.via_b != expected:
            report.fail(check="constant-extension-criterion", **label)


# ---------------------------------------------------------------------------
# Sweep campaigns


def reciprocity_sweep(
    q_list,
    degree_bound: int,
    seed: int = 0,
    threads: int = 1,
    n_values: str = "all",
) -> SweepReport:
    """Assert the sign-corrected reciprocity identity on every ordered pair
    of distinct monic irreducibles up to the degree bound; tally (without
    asserting) how often the unsigned identity lhs = 1 also holds."""
    report = SweepReport(
        campaign="reciprocity",
        params={"q": list(q_list), "degree_bound": degree_bound, "seed": seed},
    )
    start = time.perf_counter()
    paper_failures: dict[str, int] = {}

    def run_block(block):
        field, n, primes = block
        local_fail = []
        local_paper = 0
        local_cases = 0
        for q_prime in primes:
            for r_prime in primes:
                if q_prime == r_prime:
                    continue
                rec = reciprocity_relation(q_prime, r_prime, n)
                local_cases += 1
                if not rec.carlitz_equality_holds:
                    local_fail.append(
                        {
                            "check": "carlitz-reciprocity",
                            "q": field.q,
                            "n": n,
                            "Q": str(q_prime),
                            "R": str(r_prime),
                            "lhs": rec.lhs.exponent,
                            "sign": rec.sign_factor.exponent,
                        }
                    )
                if not rec.paper_equality_holds:
                    local_paper += 1
        return field.q, n, local_cases, local_fail, local_paper

    blocks = []
    for q in q_list:
        field = _field_for(q)
        primes = primes_up_to(field, degree_bound)
        for n in _divisors(field.q - 1):
            if n_values == "nontrivial" and n == 1:
                continue
            blocks.append((field, n, primes))
    for q, n, cases, fails, paper in _parallel_map(run_block, blocks, threads):
        report.cases += cases
        report.failures.extend(fails)
        if paper:
            paper_failures[f"q={q},n={n}"] = paper
    report.extras["paper_equality_failures"] = paper_failures
    report.extras["paper_equality_failure_total"] = sum(paper_failures.values())
    report.elapsed_seconds = time.perf_counter() - start
    return report


def genus_consistency_sweep(
    q_list=(3, 5, 9),
    datum_count: int = 20,
    seed: int = 0,
    threads: int = 1,
    place_degree: int = 3,
) -> SweepReport:
    """Seeded random data; asserts the degree identities, the ambiguous
    class count, closed-form splitting against the factorization oracle at
    every place up to the degree bound and at infinity, agreement of the
    two genus-decomposition criteria, and full splitting of inert primes."""
    report = SweepReport(
        campaign="genus",
        params={
            "q": list(q_list),
            "datum_count": datum_count,
            "seed": seed,
            "place_degree": place_degree,
        },
    )
    start = time.perf_counter()

    def run_block(block):
        field, n, data = block
        local = SweepReport(campaign="genus", params={})
        primes = primes_up_to(field, place_degree)
        for datum in data:
            _check_genus_identities(datum, local)
            _check_index_formulas(datum, local)
            _check_splitting_infinity(datum, local)
            for q_prime in primes:
                _check_splitting_at(datum, q_prime, local)
                _check_decomposition_at(datum, q_prime, local)
        return local

    blocks = sweep_data(q_list, datum_count, seed)
    for local in _parallel_map(run_block, blocks, threads):
        report.cases += local.cases
        report.failures.extend(local.failures)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def symbols_sweep(
    q_list=(3, 5, 7, 9),
    oracle_cap: int = 343,
    numerator_degree: int = 2,
    pair_degree: int = 3,
    seed: int = 0,
    threads: int = 1,
    full_pair_cap: int = 125,
    slice_width: int = 12,
    cross_check_stride: int = 211,
) -> SweepReport:
    """Residue symbols against the exhaustive power oracle, symbol axioms,
    and the product formula over every coprime ordered pair of monic
    polynomials up to the pair degree, for every n | q-1."""
    report = SweepReport(
        campaign="symbols",
        params={
            "q": list(q_list),
            "oracle_cap": oracle_cap,
            "numerator_degree": numerator_degree,
            "pair_degree": pair_degree,
            "seed": seed,
        },
    )
    start = time.perf_counter()
    for q in q_list:
        field = _field_for(q)
        _symbols_oracle_block(field, oracle_cap, numerator_degree, report, full_pair_cap, slice_width)
        _product_formula_block(field, pair_degree, report, cross_check_stride)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def _nonzero_polys(field: FqField, max_degree: int) -> list[Poly]:
    """Every nonzero polynomial of degree <= max_degree, each exactly once."""
    import itertools as _it

    out = []
    for d in range(max_degree + 1):
        for lead in range(1, field.q):
            for lower in _it.product(range(field.q), repeat=d):
                out.append(Poly(field, lower + (lead,), trusted=True))
    return out


def _monic_polys(field: FqField, degrees) -> list[Poly]:
    import itertools as _it

    out = []
    for d in degrees:
        for digits in _it.product(range(field.q), repeat=d):
            out.append(Poly(field, tuple(reversed(digits)) + (field.onei,), trusted=True))
    return out


def _symbols_oracle_block(field, oracle_cap, numerator_degree, report, full_pair_cap, slice_width):
    q = field.q
    max_d = 1
    while q ** (max_d + 1) <= oracle_cap:
        max_d += 1
    numerators = _nonzero_polys(field, numerator_degree)
    for q_prime in primes_up_to(field, max_d):
        rf = ResidueField(q_prime)
        n_order = rf.order
        for n in _divisors(q - 1):
            # symbol table per residue, from the defining congruence
            exponents = {}
            for idx in range(1, n_order):
                residue = rf.element_at(idx)
                sym = residue_symbol(rf.to_poly(residue), q_prime, n)
                exponents[residue] = sym.exponent
            # (a) agreement with the exhaustive power oracle, all D coprime to Q
            for d_poly in numerators:
                residue = rf.from_poly(d_poly)
                if residue == rf.zeroi:
                    continue
                report.cases += 1
                if (exponents[residue] == 0) != power_residue_oracle(d_poly, q_prime, n):
                    report.fail(
                        check="symbol-vs-power-oracle",
                        q=q,
                        n=n,
                        Q=str(q_prime),
                        D=format_poly(d_poly),
                    )
                if residue_symbol(d_poly, q_prime, n).exponent != exponents[residue]:
                    report.fail(
                        check="symbol-depends-on-residue-only",
                        q=q,
                        n=n,
                        Q=str(q_prime),
                        D=format_poly(d_poly),
                    )
            # (b) constant formula
            for enc in range(1, q):
                report.cases += 1
                direct = field.powi(enc, (q**q_prime.degree - 1) // n)
                sym = residue_symbol(Poly.const(field, enc), q_prime, n)
                if sym.value().enc != direct:
                    report.fail(check="constant-symbol", q=q, n=n, Q=str(q_prime), a=enc)
            # (c) multiplicativity on residues: exhaustive below the pair cap,
            # a fixed deterministic slice above it
            units = [rf.element_at(i) for i in range(1, n_order)]
            if n_order <= full_pair_cap:
                partners = units
            else:
                partners = units[: slice_width] + [rf.element_at(n_order - 1)]
            for x in units:
                ex = exponents[x]
                for y in partners:
                    report.cases += 1
                    if exponents[rf.muli(x, y)] != (ex + exponents[y]) % n:
                        report.fail(
                            check="symbol-multiplicativity",
                            q=q,
                            n=n,
                            Q=str(q_prime),
                            x=str(rf.to_poly(x)),
                            y=str(rf.to_poly(y)),
                        )


def _product_formula_block(field, pair_degree, report, cross_check_stride):
    q = field.q
    monics = _monic_polys(field, range(1, pair_degree + 1))
    factored = []
    for poly in monics:
        _, facs = factor(poly)
        support = frozenset(facs_prime.poly.cs for facs_prime, _ in facs)
        factored.append((poly, facs, support))
    ns = [n for n in _divisors(q - 1)]
    scanned = 0
    for r_poly, r_facs, r_support in factored:
        for s_poly, s_facs, s_support in factored:
            if r_support & s_support:
                continue
            scanned += 1
            data = tame_place_data(r_poly, s_poly, r_facs, s_facs)
            xs = [x for _, x in data]
            for n in ns:
                report.cases += 1
                if sum(x % n for x in xs) % n != 0:
                    report.fail(
                        check="product-formula",
                        q=q,
                        n=n,
                        R=format_poly(r_poly),
                        S=format_poly(s_poly),
                        places={str(pl): x % n for pl, x in data},
                    )
            if scanned % cross_check_stride == 0:
                for n in ns:
                    ok, table = product_formula_check(r_poly, s_poly, n)
                    report.cases += 1
                    if not ok:
                        report.fail(
                            check="product-formula-direct",
                            q=q,
                            n=n,
                            R=format_poly(r_poly),
                            S=format_poly(s_poly),
                        )
                    for place, sym in table.items():
                        oracle = tame_symbol_oracle(r_poly, s_poly, place, n)
                        if sym != oracle:
                            report.fail(
                                check="tame-symbol-vs-direct-oracle",
                                q=q,
                                n=n,
                                R=format_poly(r_poly),
                                S=format_poly(s_poly),
                                place=str(place),
                            )
    report.extras.setdefault("pairs_scanned", {})[f"q={q}"] = scanned


# ---------------------------------------------------------------------------
# Pinned acceptance campaigns (also run by the CLI selftest)


def acceptance_genus_construction(threads: int = 1) -> SweepReport:
    report = SweepReport(
        campaign="genus-construction",
        params={"q": [3, 4, 5, 7, 8, 9, 11, 13], "datum_count": 20, "n_bound": 12, "seed": 0},
    )
    start = time.perf_counter()
    for field, n, data in sweep_data(report.params["q"], 20, 0, n_bound=12):
        del n
        for datum in data:
            _check_genus_identities(datum, report)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def acceptance_residue_symbol_oracle(threads: int = 1) -> SweepReport:
    report = SweepReport(
        campaign="residue-symbol-oracle",
        params={"q": [3, 5, 7, 9], "oracle_cap": 343, "numerator_degree": 2},
    )
    start = time.perf_counter()
    for q in report.params["q"]:
        field = _field_for(q)
        _symbols_oracle_block(field, 343, 2, report, full_pair_cap=125, slice_width=12)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def acceptance_product_formula(threads: int = 1) -> SweepReport:
    report = SweepReport(
        campaign="product-formula",
        params={"q": [3, 5, 7, 9], "pair_degree": 3},
    )
    start = time.perf_counter()
    for q in report.params["q"]:
        field = _field_for(q)
        _product_formula_block(field, 3, report, cross_check_stride=211)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def acceptance_reciprocity(threads: int = 1) -> SweepReport:
    report = reciprocity_sweep([3, 5, 7, 9], 3, seed=0, threads=threads)
    report.campaign = "reciprocity"
    # the unsigned identity must fail somewhere in this range (odd*odd degrees)
    if report.extras.get("paper_equality_failure_total", 0) == 0:
        report.fail(check="expected-unsigned-identity-failures", q="3,5,7,9")
    return report


def acceptance_splitting_oracle(threads: int = 1) -> SweepReport:
    report = SweepReport(
        campaign="splitting-oracle",
        params={"q": [3, 5, 9], "datum_count": 20, "seed": 0, "oracle_cap": ORACLE_CAP},
    )
    start = time.perf_counter()

    def run_block(block):
        field, n, data = block
        local = SweepReport(campaign="splitting-oracle", params={})
        max_d = 1
        while field.q ** (max_d + 1) <= ORACLE_CAP:
            max_d += 1
        primes = primes_up_to(field, max_d)
        for datum in data:
            _check_splitting_infinity(datum, local)
            for q_prime in primes:
                _check_splitting_at(datum, q_prime, local)
        return local

    for local in _parallel_map(run_block, sweep_data([3, 5, 9], 20, 0), threads):
        report.cases += local.cases
        report.failures.extend(local.failures)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def acceptance_decomposition(threads: int = 1) -> SweepReport:
    report = SweepReport(
        campaign="decomposition",
        params={"q": [3, 5, 9], "datum_count": 20, "seed": 0, "place_degree": 3},
    )
    start = time.perf_counter()

    def run_block(block):
        field, n, data = block
        local = SweepReport(campaign="decomposition", params={})
        primes = primes_up_to(field, 3)
        for datum in data:
            for q_prime in primes:
                _check_decomposition_at(datum, q_prime, local)
        return local

    for local in _parallel_map(run_block, sweep_data([3, 5, 9], 20, 0), threads):
        report.cases += local.cases
        report.failures.extend(local.failures)
    report.elapsed_seconds = time.perf_counter() - start
    return report


def acceptance_index_formulas(threads: int = 1) -> SweepReport:
    report = SweepReport(
        campaign="index-formulas",
        params={"q": [3, 5, 9], "datum_count": 20, "seed": 0},
    )
    start = time.perf_counter()
    inert_seen = 0
    for field, n, data in sweep_data([3, 5, 9], 20, 0):
        for datum in data:
            _check_index_formulas(datum, report)
            if extension_invariants(datum).unit_index_exact == 1:
                inert_seen += 1
    report.extras["totally_inert_data"] = inert_seen
    if inert_seen == 0:
        report.fail(check="no-inert-infinity-data")
    report.elapsed_seconds = time.perf_counter() - start
    return report


def acceptance_campaigns():
    """The pinned acceptance battery: (name, runner, time budget in seconds)."""
    return [
        ("genus-construction", acceptance_genus_construction, 10.0),
        ("residue-symbol-oracle", acceptance_residue_symbol_oracle, 30.0),
        ("product-formula", acceptance_product_formula, 60.0),
        ("reciprocity", acceptance_reciprocity, 60.0),
        ("splitting-oracle", acceptance_splitting_oracle, 60.0),
        ("decomposition", acceptance_decomposition, 60.0),
        ("index-formulas", acceptance_index_formulas, 5.0),
    ]


def run_selftest(threads: int = 1, emit=print) -> tuple[bool, list[SweepReport]]:
    """Run the full acceptance battery, printing one line per criterion."""
    reports = []
    all_ok = True
    for name, runner, budget in acceptance_campaigns():
        report = runner(threads=threads)
        reports.append(report)
        ok = report.passed
        all_ok = all_ok and ok
        timing = f"{report.elapsed_seconds:.1f}s (budget {budget:.0f}s)"
        state = "PASS" if ok else "FAIL"
        emit(f"{state} {name}: {report.cases} cases, {timing}")
        if not ok:
            for failure in report.failures[:5]:
                emit(f"    {failure}")
            if len(report.failures) > 5:
                emit(f"    ... {len(report.failures) - 5} more")
    return all_ok, reports
