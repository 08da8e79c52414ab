"""Full-decomposition tests for primes of K in the extended genus field.

Two independent criteria are implemented for an unramified prime of K
above Q with norm generator B = Q^f:

* via-B: n | deg B and (B/<P_j>)_{e_j} = 1 for every ramified prime P_j;
* direct: n | f*deg Q and (P_j^*/<Q>)_{e_j}^f = 1 with P_j^* = (-1)^(deg P_j) P_j.

They are linked by reciprocity but evaluated with opposite symbol
orientations, so their agreement is a genuine cross-check and is swept
exhaustively by the verify module.  The n-th-power variants (B/<P_j>)_n
are recorded alongside the e_j-criterion so the gap between the two
normalizations stays measurable.

Also here: the norm condition for a principal prime to split fully in the
extended Hilbert class field, verified for a caller-supplied generator
beta of the prime, with the norm computed as the determinant of the
multiplication-by-beta matrix on the basis 1, y, ..., y^(n-1), y = D^(1/n).
"""

from __future__ import annotations

from dataclasses import dataclass

from .finite_field import RootOfUnity
from .kummer import (
    INFINITY,
    KummerDatum,
    Place,
    SplittingData,
    is_in_kinfty_nth_powers,
    local_splitting,
    ramification_index,
)
from .polyring import MonicIrreducible, Poly, poly_gcd
from .symbols import residue_symbol

__all__ = [
    "PrimeOfK",
    "prime_above",
    "GenusSplittingReport",
    "genus_splitting_report",
    "splits_fully_in_genus_via_B",
    "splits_fully_in_genus_direct",
    "NotAGeneratorError",
    "norm_condition_KH_plus",
]


@dataclass(frozen=True)
class PrimeOfK:
    """A prime of K above a finite prime Q of k; all conjugates share (e, f)."""

    below: MonicIrreducible
    e: int
    f: int

    @property
    def norm_generator(self) -> Poly:
        """Monic generator B = Q^f of the norm of the prime down to k."""
        return self.below.poly**self.f

    @property
    def is_inert_over_k(self) -> bool:
        return self.e == 1 and self.f > 0 and self.f == self.local_degree

    @property
    def local_degree(self) -> int:
        return self.e * self.f


def prime_above(datum: KummerDatum, q_prime: MonicIrreducible, f: int | None = None) -> PrimeOfK:
    """The (conjugacy class of) primes of K above Q, with optional f override."""
    data: SplittingData = local_splitting(datum, Place.finite(q_prime))
    if f is not None and f != data.f:
        raise ValueError(f"inertia degree of {q_prime} is {data.f}, not {f}")
    return PrimeOfK(below=q_prime, e=data.e, f=data.f)


@dataclass(frozen=True)
class GenusSplittingReport:
    """Both criteria plus the per-ramified-prime symbol tables."""

    prime: PrimeOfK
    degree_condition: bool
    via_b: bool
    direct: bool
    via_b_symbols: tuple[tuple[MonicIrreducible, RootOfUnity], ...]
    direct_symbols: tuple[tuple[MonicIrreducible, RootOfUnity], ...]
    via_b_symbols_mod_n: tuple[tuple[MonicIrreducible, RootOfUnity], ...]


def _require_unramified(datum: KummerDatum, prime: PrimeOfK):
    if datum.exponent_of(prime.below) != 0:
        raise ValueError(
            f"{prime.below} ramifies in K; the genus splitting criteria "
            "apply to unramified primes"
        )


def genus_splitting_report(datum: KummerDatum, prime: PrimeOfK) -> GenusSplittingReport:
    """Evaluate both full-splitting criteria for an unramified prime of K."""
    _require_unramified(datum, prime)
    n = datum.n
    b_poly = prime.norm_generator
    degree_condition = b_poly.degree % n == 0
    via_b_symbols = []
    via_b_symbols_n = []
    direct_symbols = []
    field = datum.F
    for p_j, _ in datum.ram:
        e_j = ramification_index(datum, p_j)
        via_b_symbols.append((p_j, residue_symbol(b_poly, p_j, e_j)))
        via_b_symbols_n.append((p_j, residue_symbol(b_poly, p_j, n)))
        p_star = p_j.poly if p_j.degree % 2 == 0 else -p_j.poly
        direct_symbols.append((p_j, residue_symbol(p_star, prime.below, e_j) ** prime.f))
    via_b = degree_condition and all(sym.is_one() for _, sym in via_b_symbols)
    direct = degree_condition and all(sym.is_one() for _, sym in direct_symbols)
    return GenusSplittingReport(
        prime=prime,
        degree_condition=degree_condition,
        via_b=via_b,
        direct=direct,
        via_b_symbols=tuple(via_b_symbols),
        direct_symbols=tuple(direct_symbols),
        via_b_symbols_mod_n=tuple(via_b_symbols_n),
    )


def splits_fully_in_genus_via_B(datum: KummerDatum, prime: PrimeOfK) -> bool:
    """Full splitting in the extended genus field, tested through B = Q^f."""
    return genus_splitting_report(datum, prime).via_b


def splits_fully_in_genus_direct(datum: KummerDatum, prime: PrimeOfK) -> bool:
    """Full splitting tested componentwise with the opposite symbol orientation."""
    return genus_splitting_report(datum, prime).direct


class NotAGeneratorError(ValueError):
    """The supplied element does not generate the expected prime ideal."""


def _norm_of_basis_combination(datum: KummerDatum, coeffs: list[Poly]) -> Poly:
    """N_{K/k}(sum c_i y^i) as det of the regular representation, y^n = D."""
    n = datum.n
    field = datum.F
    zero = Poly.zero(field)
    matrix = [[zero] * n for _ in range(n)]
    for j in range(n):
        # column j holds the coordinates of (sum_i c_i y^i) * y^j
        for i, c in enumerate(coeffs):
            k = i + j
            if k < n:
                matrix[k][j] = matrix[k][j] + c
            else:
                matrix[k - n][j] = matrix[k - n][j] + c * datum.D
    return _poly_det(matrix)


def _poly_det(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant over the polynomial ring."""
    size = len(matrix)
    if size == 0:
        raise ValueError("empty matrix")
    field = matrix[0][0].field
    m = [row[:] for row in matrix]
    sign = 1
    prev = Poly.one(field)
    for k in range(size - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, size) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return Poly.zero(field)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                quo, rem = num.divmod(prev)
                if not rem.is_zero():
                    raise AssertionError("fraction-free elimination left a remainder")
                m[i][j] = quo
            m[i][k] = Poly.zero(field)
        prev = m[k][k]
    det = m[size - 1][size - 1]
    return det if sign == 1 else -det


def _as_poly_pair(field, entry) -> tuple[Poly, Poly]:
    if isinstance(entry, Poly):
        return entry, Poly.one(field)
    num, den = entry
    return num, den


def norm_condition_KH_plus(datum: KummerDatum, prime: PrimeOfK, beta) -> bool:
    """Does the principal prime generated by beta split fully in K_H^+?

    ``beta`` is given by its coordinates on 1, y, ..., y^(n-1) (y = D^(1/n)),
    each coordinate a Poly or a (numerator, denominator) pair.  The element
    must generate the prime: its norm has to be a unit multiple of Q^f,
    which is verified first (failure raises :class:`NotAGeneratorError`).
    The condition itself is membership of the norm in k_infinity^(*n).
    """
    field = datum.F
    n = datum.n
    pairs = [_as_poly_pair(field, entry) for entry in beta]
    if len(pairs) > n:
        raise ValueError(f"beta needs at most n = {n} coordinates")
    while len(pairs) < n:
        pairs.append((Poly.zero(field), Poly.one(field)))
    common_den = Poly.one(field)
    for _, den in pairs:
        if den.is_zero():
            raise ValueError("zero denominator in beta")
        common_den = (common_den * den) // poly_gcd(common_den, den)
    numerators = []
    for num, den in pairs:
        numerators.append(num * (common_den // den))
    norm_num = _norm_of_basis_combination(datum, numerators)
    norm_den = common_den**n
    if norm_num.is_zero():
        raise NotAGeneratorError("beta is zero")
    # reduce the norm to a polynomial: the generator test needs N(beta) integral
    g = poly_gcd(norm_num, norm_den)
    norm_num = norm_num // g
    norm_den = norm_den // g
    if norm_den.degree != 0:
        raise NotAGeneratorError("norm of beta is not integral")
    norm_poly = norm_num * Poly.const(field, field.invi(norm_den.lc))
    expected = prime.norm_generator
    if norm_poly.monic() != expected:
        raise NotAGeneratorError(
            f"norm of beta is not a unit multiple of ({prime.below})^{prime.f}"
        )
    return is_in_kinfty_nth_powers(datum, norm_num, norm_den)
