"""Power residue symbols and tame norm-residue symbols over k = F_q(T).

The n-th power residue symbol (D/Q)_n is the unique n-th root of unity
congruent to D^((q^d - 1)/n) mod Q, d = deg Q.  The Hilbert norm-residue
symbol at a place p is computed by the tame-symbol formula

    t = (-1)^(v(R) v(S)) * R^v(S) * S^(-v(R)),      (R, S)_p = tbar^((q^d-1)/n)

with v the valuation at p (v_inf = -deg) and tbar the residue of t, which
has valuation zero.  The normalization matches the residue symbol: for a
finite place p not dividing R and S = p one gets exactly (R/p)_n.

All symbol values are ``RootOfUnity`` exponents, so comparisons are exact.
Per-prime discrete-log tables over the residue field (built lazily, bounded
size) make symbol evaluation cheap inside exhaustive sweeps; a direct
modular-exponentiation route is kept for residue fields above the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .finite_field import (
    FieldElement,
    FqField,
    RootOfUnity,
    discrete_log,
    factorize,
)
from .kummer import INFINITY, Place
from .polyring import (
    MonicIrreducible,
    Poly,
    ResidueField,
    factor,
    modexp,
    poly_gcd,
)

__all__ = [
    "residue_symbol",
    "residue_symbol_composite",
    "residue_symbol_ideal",
    "hilbert_symbol",
    "product_formula_check",
    "reciprocity_relation",
    "ReciprocityResult",
    "tame_place_data",
    "DLOG_TABLE_CAP",
]

# Residue fields up to this size get full discrete-log tables.
DLOG_TABLE_CAP = 4096


def _check_n(field: FqField, n: int):
    if n < 1 or (field.q - 1) % n != 0:
        raise ValueError(f"n = {n} does not divide q-1 = {field.q - 1}")


def _mu_exponent(field: FqField, enc: int, n: int) -> int:
    """Exponent j with zeta_n^j equal to the given constant encoding."""
    zeta = field.powi(field.xi_enc, (field.q - 1) // n)
    cur = 1
    for j in range(n):
        if cur == enc:
            return j
        cur = field.muli(cur, zeta)
    raise ValueError("value is not an n-th root of unity")


def residue_symbol(d_poly: Poly, q_prime: MonicIrreducible, n: int) -> RootOfUnity:
    """The n-th power residue symbol (D/Q)_n.

    Computed by the defining congruence: D^((q^d - 1)/n) mod Q, which lies
    in mu_n inside the constant field.  Trivial exactly when D is an n-th
    power residue mod Q.
    """
    field = d_poly.field
    _check_n(field, n)
    reduced = d_poly % q_prime.poly
    if reduced.is_zero():
        raise ValueError(f"prime {q_prime} divides the numerator")
    d = q_prime.degree
    value = modexp(reduced, (field.q**d - 1) // n, q_prime.poly)
    if value.degree not in (None, 0):
        raise AssertionError("residue symbol value is not constant")
    return RootOfUnity(field, n, _mu_exponent(field, value.coefficient(0), n))


def residue_symbol_composite(d_poly: Poly, r_poly: Poly, n: int) -> RootOfUnity:
    """(D/R)_n = prod (D/Q_j)_n^(a_j) over the monic prime factorization of R.

    The leading coefficient of R is ignored: the symbol is over the prime
    support of R.
    """
    field = d_poly.field
    _check_n(field, n)
    if r_poly.is_zero() or r_poly.is_constant():
        raise ValueError("composite modulus must be nonconstant")
    if not poly_gcd(d_poly, r_poly).is_constant():
        raise ValueError("numerator and modulus share a factor")
    _, factors = factor(r_poly)
    out = RootOfUnity(field, n, 0)
    for prime, mult in factors:
        out = out * residue_symbol(d_poly, prime, n) ** mult
    return out


def residue_symbol_ideal(d_poly: Poly, ideal, n: int) -> RootOfUnity:
    """(D/a)_n for a fractional ideal a given as [(prime, exponent), ...].

    Exponents may be negative; the product is exponent arithmetic mod n.
    """
    field = d_poly.field
    _check_n(field, n)
    out = RootOfUnity(field, n, 0)
    for prime, exponent in ideal:
        out = out * residue_symbol(d_poly, prime, n) ** exponent
    return out


# -- per-prime residue-field dlog tables --------------------------------------


def _prime_dlog(q_prime: MonicIrreducible):
    """Lazily built (residue field, log table, norm-compression, log(-1)).

    log maps residue tuples to exponents of a fixed generator w; s is the
    discrete log of the norm w^((N-1)/(q-1)) to base xi, so that for any
    unit u = w^L and any n | q-1 one has u^((N-1)/n) = zeta_n^(s*L).
    Returns None above the size cap.
    """
    data = q_prime._dlog
    if data is not None:
        return data if data != "over-cap" else None
    rf = ResidueField(q_prime)
    n_order = rf.order
    if n_order > DLOG_TABLE_CAP:
        q_prime._dlog = "over-cap"
        return None
    prime_factors = [f for f, _ in factorize(n_order - 1)] if n_order > 2 else []
    gen = None
    for idx in range(1, n_order):
        cand = rf.element_at(idx)
        if all(rf.powi(cand, (n_order - 1) // f) != rf.onei for f in prime_factors):
            gen = cand
            break
    log = {}
    cur = rf.onei
    for i in range(n_order - 1):
        log[cur] = i
        cur = rf.muli(cur, gen)
    field = q_prime.field
    norm = rf.powi(gen, (n_order - 1) // (field.q - 1))
    norm_enc = rf.constant_of(norm)
    if norm_enc is None:
        raise AssertionError("norm of a generator escaped the constant field")
    s = discrete_log(field, FieldElement(field, norm_enc))
    log_minus1 = log[rf.negi(rf.onei)]
    data = (rf, log, s, log_minus1)
    q_prime._dlog = data
    return data


def _valuation_and_unit(a_poly: Poly, q_prime: MonicIrreducible) -> tuple[int, Poly]:
    """v_Q(A) and the unit part A / Q^v (not yet reduced mod Q)."""
    v = 0
    current = a_poly
    while True:
        quo, rem = current.divmod(q_prime.poly)
        if rem.is_zero() and not current.is_zero():
            v += 1
            current = quo
        else:
            return v, current


def _finite_place_x(r_poly: Poly, s_poly: Poly, q_prime: MonicIrreducible) -> int | None:
    """x with (R,S)_Q = zeta_n^(x mod n) for every n | q-1; None above cap."""
    data = _prime_dlog(q_prime)
    if data is None:
        return None
    rf, log, s_compress, log_minus1 = data
    a, r_unit = _valuation_and_unit(r_poly, q_prime)
    b, s_unit = _valuation_and_unit(s_poly, q_prime)
    lt = a * b * log_minus1 + b * log[rf.from_poly(r_unit)] - a * log[rf.from_poly(s_unit)]
    lt %= rf.order - 1
    return (s_compress * lt) % (q_prime.field.q - 1)


def _infinite_place_x(r_poly: Poly, s_poly: Poly) -> int:
    """Same convention at infinity: the tame residue is a leading-coefficient ratio."""
    field = r_poly.field
    deg_r, deg_s = r_poly.degree, s_poly.degree
    c = field.onei
    if (deg_r * deg_s) % 2 == 1:
        c = field.negi(c)
    c = field.muli(c, field.powi(s_poly.lc, deg_r))
    c = field.muli(c, field.powi(field.invi(r_poly.lc), deg_s))
    return discrete_log(field, FieldElement(field, c))


def _tame_direct(r_poly: Poly, s_poly: Poly, q_prime: MonicIrreducible, n: int) -> RootOfUnity:
    """Direct modular-exponentiation evaluation, for residue fields above the cap."""
    field = r_poly.field
    a, r_unit = _valuation_and_unit(r_poly, q_prime)
    b, s_unit = _valuation_and_unit(s_poly, q_prime)
    n_order = field.q**q_prime.degree
    t = modexp(r_unit, b, q_prime.poly)
    if a:
        inv = modexp(modexp(s_unit, a, q_prime.poly), n_order - 2, q_prime.poly)
        t = (t * inv) % q_prime.poly
    if (a * b) % 2 == 1:
        t = -t
    value = modexp(t, (n_order - 1) // n, q_prime.poly)
    if value.degree not in (None, 0):
        raise AssertionError("tame symbol value is not constant")
    return RootOfUnity(field, n, _mu_exponent(field, value.coefficient(0), n))


def hilbert_symbol(r_poly: Poly, s_poly: Poly, place: Place, n: int) -> RootOfUnity:
    """The tame Hilbert norm-residue symbol (R, S) at a place of k.

    Trivial whenever both valuations vanish; for a finite place p not
    dividing R it satisfies (R, p)_p = (R/p)_n.
    """
    field = r_poly.field
    _check_n(field, n)
    if r_poly.is_zero() or s_poly.is_zero():
        raise ValueError("tame symbol arguments must be nonzero")
    if not poly_gcd(r_poly, s_poly).is_constant():
        raise ValueError("tame symbol arguments must be coprime")
    if place.is_infinite:
        return RootOfUnity(field, n, _infinite_place_x(r_poly, s_poly) % n)
    x = _finite_place_x(r_poly, s_poly, place.prime)
    if x is not None:
        return RootOfUnity(field, n, x % n)
    return _tame_direct(r_poly, s_poly, place.prime, n)


def tame_place_data(r_poly: Poly, s_poly: Poly, r_factors=None, s_factors=None):
    """n-independent symbol data: [(Place, x), ...] over supp(R*S) and infinity.

    At each listed place the symbol is zeta_n^(x mod n) for every n | q-1;
    it is trivial at all other places.  Factorizations may be passed in to
    avoid refactoring inside sweeps.  Raises when a support prime's residue
    field exceeds the dlog table cap.
    """
    if r_factors is None:
        r_factors = factor(r_poly)[1]
    if s_factors is None:
        s_factors = factor(s_poly)[1]
    support = {prime for prime, _ in r_factors} | {prime for prime, _ in s_factors}
    out = []
    for prime in sorted(support, key=lambda pr: pr.poly.canonical_key()):
        x = _finite_place_x(r_poly, s_poly, prime)
        if x is None:
            raise ValueError(
                f"residue field of {prime} exceeds the dlog table cap {DLOG_TABLE_CAP}"
            )
        out.append((Place.finite(prime), x))
    if support:
        out.append((INFINITY, _infinite_place_x(r_poly, s_poly)))
    return out


def product_formula_check(r_poly: Poly, s_poly: Poly, n: int):
    """Evaluate (R,S) at every place dividing R*S and at infinity.

    Returns (product_is_one, {place: symbol}).  Both valuations vanish away
    from the support, where the tame residue is identically 1, so the
    product over the listed places is the full product over all places.
    """
    field = r_poly.field
    _check_n(field, n)
    if r_poly.is_zero() or s_poly.is_zero():
        raise ValueError("product formula arguments must be nonzero")
    if not poly_gcd(r_poly, s_poly).is_constant():
        raise ValueError("product formula arguments must be coprime")
    _, r_factors = factor(r_poly)
    _, s_factors = factor(s_poly)
    support = {prime for prime, _ in r_factors} | {prime for prime, _ in s_factors}
    table: dict[Place, RootOfUnity] = {}
    total = 0
    for prime in sorted(support, key=lambda pr: pr.poly.canonical_key()):
        sym = hilbert_symbol(r_poly, s_poly, Place.finite(prime), n)
        table[Place.finite(prime)] = sym
        total += sym.exponent
    if support:
        sym = hilbert_symbol(r_poly, s_poly, INFINITY, n)
        table[INFINITY] = sym
        total += sym.exponent
    return total % n == 0, table


@dataclass(frozen=True)
class ReciprocityResult:
    """Both sides of the reciprocity relation for a pair of finite primes.

    lhs = (Q/<R>)_n * (R/<Q>)_n^(-1); sign_factor = [(-1)^(deg Q * deg R)]^((q-1)/n).
    ``carlitz_equality_holds`` asserts lhs == sign_factor; the stronger
    ``paper_equality_holds`` (lhs == 1) can fail and is only recorded.
    """

    lhs: RootOfUnity
    sign_factor: RootOfUnity
    paper_equality_holds: bool
    carlitz_equality_holds: bool


def reciprocity_relation(q_prime: MonicIrreducible, r_prime: MonicIrreducible, n: int) -> ReciprocityResult:
    """Evaluate the reciprocity relation for distinct monic irreducibles."""
    if q_prime == r_prime:
        raise ValueError("reciprocity requires distinct primes")
    field = q_prime.field
    _check_n(field, n)
    lhs = residue_symbol(q_prime.poly, r_prime, n) * residue_symbol(r_prime.poly, q_prime, n).inverse()
    if (q_prime.degree * r_prime.degree) % 2 == 1:
        sign_enc = field.powi(field.negi(field.onei), (field.q - 1) // n)
    else:
        sign_enc = field.onei
    sign_factor = RootOfUnity(field, n, _mu_exponent(field, sign_enc, n))
    return ReciprocityResult(
        lhs=lhs,
        sign_factor=sign_factor,
        paper_equality_holds=lhs.is_one(),
        carlitz_equality_holds=lhs == sign_factor,
    )
