"""Cyclic Kummer extensions K = k(D^(1/n)) of k = F_q(T), n | q-1.

A validated ``KummerDatum`` carries the normalized shape
D = gamma * P_1^a_1 * ... * P_r^a_r with 1 <= a_i <= n-1 and the class of
D of exact order n in k^*/(k^*)^n, so [K:k] = n.  On top of it this module
computes every local invariant the rest of the package consumes:
ramification indices, splitting triples (e, f, g) at finite places and at
infinity, the index formulas attached to the completion at infinity, and
membership in k_infinity^(*n).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .finite_field import (
    FieldElement,
    FqField,
    RootOfUnity,
    const_nth_power_class,
    field_construct,
    parse_element,
)
from .polyring import (
    MonicIrreducible,
    Poly,
    factor,
    format_poly,
    modexp,
    parse_poly,
)

__all__ = [
    "Place",
    "INFINITY",
    "SplittingData",
    "ExtensionInvariants",
    "KummerDatum",
    "datum_normalize",
    "local_splitting",
    "ramification_index",
    "extension_invariants",
    "is_in_kinfty_nth_powers",
    "extended_hilbert_degree",
]


@dataclass(frozen=True)
class Place:
    """A place of k: a finite prime (monic irreducible) or the pole of T."""

    prime: MonicIrreducible | None = None

    @classmethod
    def finite(cls, prime: MonicIrreducible) -> "Place":
        return cls(prime)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def degree(self) -> int:
        return 1 if self.prime is None else self.prime.degree

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


INFINITY = Place.infinity()


@dataclass(frozen=True)
class SplittingData:
    """Ramification index, inertia degree and number of primes above a place."""

    e: int
    f: int
    g: int

    def __post_init__(self):
        if self.e < 1 or self.f < 1 or self.g < 1:
            raise ValueError("splitting data must be positive")

    @property
    def local_degree(self) -> int:
        return self.e * self.f

    def __iter__(self):
        return iter((self.e, self.f, self.g))


@dataclass(frozen=True)
class ExtensionInvariants:
    """Index data of K/k derived from (e_inf, f_inf) and the finite e_i.

    delta_index      : [prod_{p | inf} K_p^* : Delta] = n^2 / (e_inf f_inf)
    kinf_mod_n_order : |k_inf^* / k_inf^(*n)| = n^2
    unit_index_divides : the unit index [U_K : U_K^+] divides n
    unit_index_exact : 1 when infinity is totally inert, None otherwise
    herbrand_u       : Herbrand quotient of U_K, e_inf f_inf / n
    h1_u_plus        : |H^1(G, U_K^+)| = n^2 / (e_inf f_inf)
    ik_over_ik       : |I_K / I_k| = e_1 ... e_r
    """

    delta_index: int
    kinf_mod_n_order: int
    unit_index_divides: int
    unit_index_exact: int | None
    herbrand_u: Fraction
    h1_u_plus: int
    ik_over_ik: int


class KummerDatum:
    """Validated description of K = k(D^(1/n)); build via :func:`datum_normalize`."""

    __slots__ = ("F", "n", "gamma", "ram", "D")

    def __init__(self, F: FqField, n: int, gamma: FieldElement, ram, D: Poly):
        self.F = F
        self.n = n
        self.gamma = gamma
        self.ram = tuple(ram)
        self.D = D

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def r(self) -> int:
        return len(self.ram)

    def exponent_of(self, prime: MonicIrreducible) -> int:
        """v_P(D) for a finite prime P (0 when unramified)."""
        for p_i, a_i in self.ram:
            if p_i == prime:
                return a_i
        return 0

    def ramified_primes(self) -> list[MonicIrreducible]:
        return [p_i for p_i, _ in self.ram]

    def __eq__(self, other):
        return (
            isinstance(other, KummerDatum)
            and self.F == other.F
            and self.n == other.n
            and self.gamma == other.gamma
            and self.ram == other.ram
        )

    def __hash__(self):
        return hash((self.F, self.n, self.gamma, self.ram))

    def __repr__(self):
        return f"KummerDatum(q={self.q}, n={self.n}, D={format_poly(self.D)})"

    def describe(self) -> str:
        return f"K = k(({format_poly(self.D)})^(1/{self.n})) over GF({self.q})(T)"

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "p": self.F.p,
            "m": self.F.m,
            "modulus": list(self.F.modulus),
            "n": self.n,
            "gamma": str(self.gamma),
            "ram": [{"P": str(p_i), "alpha": a_i} for p_i, a_i in self.ram],
        }

    @classmethod
    def from_json(cls, data) -> "KummerDatum":
        if isinstance(data, str):
            data = json.loads(data)
        field = field_construct(int(data["p"]), int(data["m"]), data.get("modulus"))
        gamma = parse_element(field, data["gamma"])
        d_poly = Poly.const(field, gamma)
        ram = []
        for entry in data["ram"]:
            prime = MonicIrreducible(parse_poly(field, entry["P"]))
            alpha = int(entry["alpha"])
            ram.append((prime, alpha))
            d_poly = d_poly * prime.poly**alpha
        return datum_normalize(field, int(data["n"]), d_poly)


def _class_order(F: FqField, n: int, gamma: FieldElement, exponents) -> int:
    """Order of the class of gamma * prod P_i^(a_i) in k^*/(k^*)^n."""
    order = const_nth_power_class(F, gamma, n).order
    for a_i in exponents:
        order = lcm(order, n // gcd(n, a_i))
    return order


def datum_normalize(F: FqField, n: int, d_raw: Poly, seed: int = 0) -> KummerDatum:
    """Factor D, reduce exponents mod n, and validate the class order.

    Exponent-0 primes are dropped (their n-th-power part is absorbed into
    the extension being unchanged); the datum is rejected when the class of
    the reduced D has order < n in k^*/(k^*)^n.
    """
    if n < 1:
        raise ValueError(f"n = {n} must be positive")
    if (F.q - 1) % n != 0:
        raise ValueError(f"n = {n} does not divide q-1 = {F.q - 1}")
    if d_raw.is_zero():
        raise ValueError("D must be nonzero")
    if d_raw.field != F:
        raise ValueError("field mismatch")
    gamma, raw_factors = factor(d_raw, seed=seed)
    ram = []
    for prime, mult in raw_factors:
        alpha = mult % n
        if alpha:
            ram.append((prime, alpha))
    ram.sort(key=lambda pa: pa[0].poly.canonical_key())
    order = _class_order(F, n, gamma, (a for _, a in ram))
    if order != n:
        raise ValueError(f"degenerate datum: class order {order} < n={n}")
    d_poly = Poly.const(F, gamma)
    for prime, alpha in ram:
        d_poly = d_poly * prime.poly**alpha
    return KummerDatum(F, n, gamma, ram, d_poly)


def ramification_index(datum: KummerDatum, prime: MonicIrreducible) -> int:
    """e_P = n / gcd(n, v_P(D)); 1 for unramified primes."""
    return datum.n // gcd(datum.n, datum.exponent_of(prime))


def _unit_part_residue(d_poly: Poly, prime: MonicIrreducible, valuation: int) -> Poly:
    """(D / P^v) mod P, a nonzero residue."""
    reduced = d_poly
    for _ in range(valuation):
        quo, rem = reduced.divmod(prime.poly)
        if not rem.is_zero():
            raise AssertionError("valuation larger than prime multiplicity")
        reduced = quo
    return reduced % prime.poly


def local_splitting(datum: KummerDatum, place: Place) -> SplittingData:
    """The triple (e, f, g) of the place in K/k; e*f*g = n.

    One code path covers finite places and infinity: with a the valuation
    of D and u the unit part of D at the place, e = n/gcd(n, a), the local
    degree is lcm(e, t) for t the order of u^((q^d - 1)/n) in mu_n, and g
    fills in the product.  At infinity a = -deg D and u is the leading
    coefficient of D.
    """
    n = datum.n
    field = datum.F
    if place.is_infinite:
        a = -datum.D.degree
        e = n // gcd(n, a)
        t = const_nth_power_class(field, datum.gamma, n).order
    else:
        prime = place.prime
        a = datum.exponent_of(prime)
        e = n // gcd(n, a)
        unit = _unit_part_residue(datum.D, prime, a)
        d = prime.degree
        exponent = (field.q**d - 1) // n
        residue = modexp(unit, exponent, prime.poly)
        if residue.degree not in (None, 0):
            raise AssertionError("n-th power class escaped the constant field")
        cls = _constant_to_mu_n(field, residue, n)
        t = cls.order
    local_degree = lcm(e, t)
    return SplittingData(e, local_degree // e, n // local_degree)


def _constant_to_mu_n(field: FqField, residue: Poly, n: int) -> RootOfUnity:
    enc = residue.coefficient(0)
    zeta = field.powi(field.xi_enc, (field.q - 1) // n)
    cur = 1
    for j in range(n):
        if cur == enc:
            return RootOfUnity(field, n, j)
        cur = field.muli(cur, zeta)
    raise AssertionError("residue power is not an n-th root of unity")


def extension_invariants(datum: KummerDatum) -> ExtensionInvariants:
    """All index formulas driven by (e_inf, f_inf) and the finite e_i."""
    n = datum.n
    inf = local_splitting(datum, INFINITY)
    e_inf, f_inf = inf.e, inf.f
    delta = n * n // (e_inf * f_inf)
    product_e = 1
    for prime, _ in datum.ram:
        product_e *= ramification_index(datum, prime)
    totally_inert = e_inf == 1 and f_inf == n
    return ExtensionInvariants(
        delta_index=delta,
        kinf_mod_n_order=n * n,
        unit_index_divides=n,
        unit_index_exact=1 if totally_inert else None,
        herbrand_u=Fraction(e_inf * f_inf, n),
        h1_u_plus=delta,
        ik_over_ik=product_e,
    )


def is_in_kinfty_nth_powers(datum: KummerDatum, numerator: Poly, denominator: Poly | None = None) -> bool:
    """Membership of a nonzero rational function in k_infinity^(*n).

    Because gcd(n, p) = 1, the 1-units at infinity are all n-th powers, so
    membership is decided by the valuation mod n (degree difference) and
    the n-th power class of the leading-coefficient ratio in F_q^*.
    """
    if denominator is None:
        denominator = Poly.one(datum.F)
    if numerator.is_zero() or denominator.is_zero():
        raise ValueError("membership in k_infinity^(*n) is defined for nonzero values")
    n = datum.n
    if (numerator.degree - denominator.degree) % n != 0:
        return False
    field = datum.F
    ratio = field.muli(numerator.lc, field.invi(denominator.lc))
    return const_nth_power_class(field, FieldElement(field, ratio), n).is_one()


def extended_hilbert_degree(datum: KummerDatum, h: int, unit_index: int | None = None) -> int:
    """[K_H^+ : K] = h * n^2 / (e_inf * f_inf * [U_K : U_K^+]).

    The class number h of O_K is supplied by the caller; the unit index is
    taken from the invariants when it is exactly known (totally inert
    infinity), otherwise it must be supplied and divide n.
    """
    if h < 1:
        raise ValueError("class number h must be a positive integer")
    inv = extension_invariants(datum)
    if unit_index is None:
        unit_index = inv.unit_index_exact
        if unit_index is None:
            raise ValueError(
                "unit index [U_K:U_K^+] is not determined by the datum; supply unit_index"
            )
    if unit_index < 1 or datum.n % unit_index != 0:
        raise ValueError(f"unit index {unit_index} does not divide n = {datum.n}")
    numerator = h * inv.delta_index
    if numerator % unit_index != 0:
        raise AssertionError("extended Hilbert degree is not integral")
    return numerator // unit_index
