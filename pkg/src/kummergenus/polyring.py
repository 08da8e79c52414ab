"""The polynomial ring R_T = F_q[T] and its residue fields.

Provides exact ring arithmetic, modular exponentiation, irreducibility
testing, seeded Cantor-Zassenhaus factorization, enumeration of monic
irreducibles, the text grammar for polynomials, and quotient fields
R_T/(Q) used as coefficient domains by the brute-force splitting oracle.

``Poly`` is generic over the coefficient field: coefficients are raw
values (integer encodings for ``FqField``, fixed-length tuples for
``ResidueField``) and all arithmetic goes through the field's raw-op
protocol (addi/subi/negi/muli/invi/powi, zeroi/onei, order, char).

The degree of the zero polynomial is the distinguished sentinel ``None``;
callers branch on it explicitly.
"""

from __future__ import annotations

import itertools
import random
import re

from .finite_field import FieldElement, FqField, factorize

__all__ = [
    "Poly",
    "MonicIrreducible",
    "ResidueField",
    "modexp",
    "poly_gcd",
    "is_irreducible",
    "factor",
    "enumerate_irreducibles",
    "irreducible_count",
    "parse_poly",
    "format_poly",
    "PolyParseError",
    "binomial_factor_profile",
]


class Poly:
    """A polynomial in T over a finite field, trailing zeros trimmed."""

    __slots__ = ("field", "cs")

    def __init__(self, field, coeffs, trusted: bool = False):
        if not trusted:
            zero = field.zeroi
            coeffs = list(coeffs)
            while coeffs and coeffs[-1] == zero:
                coeffs.pop()
            coeffs = tuple(coeffs)
        self.field = field
        self.cs = coeffs

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, (), trusted=True)

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, (field.onei,), trusted=True)

    @classmethod
    def const(cls, field, value) -> "Poly":
        value = _raw(field, value)
        if value == field.zeroi:
            return cls.zero(field)
        return cls(field, (value,), trusted=True)

    @classmethod
    def T(cls, field) -> "Poly":
        return cls(field, (field.zeroi, field.onei), trusted=True)

    @classmethod
    def from_coeffs(cls, field, coeffs) -> "Poly":
        """Build from low-to-high coefficients (ints, digit lists or elements)."""
        return cls(field, [_raw(field, c) for c in coeffs])

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.cs) - 1 if self.cs else None

    def is_zero(self) -> bool:
        return not self.cs

    def is_constant(self) -> bool:
        return len(self.cs) <= 1

    def is_monic(self) -> bool:
        return bool(self.cs) and self.cs[-1] == self.field.onei

    @property
    def lc(self):
        """Leading coefficient (raw value)."""
        if not self.cs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.cs[-1]

    def coefficient(self, i: int):
        return self.cs[i] if 0 <= i < len(self.cs) else self.field.zeroi

    def coefficients(self) -> list[FieldElement]:
        """Coefficients as FieldElements, low to high (base-field polys only)."""
        return [FieldElement(self.field, c) for c in self.cs]

    def canonical_key(self):
        """Total order: by degree, then coefficients from the top down."""
        return (len(self.cs), tuple(reversed(self.cs)))

    # -- ring operations -------------------------------------------------------

    def _same(self, other) -> "Poly":
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError("field mismatch")
        return other

    def __add__(self, other):
        other = self._same(other)
        f = self.field
        a, b = self.cs, other.cs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        addi = f.addi
        for i, c in enumerate(b):
            out[i] = addi(out[i], c)
        return Poly(f, out)

    def __sub__(self, other):
        other = self._same(other)
        f = self.field
        la, lb = len(self.cs), len(other.cs)
        n = max(la, lb)
        zero = f.zeroi
        out = []
        for i in range(n):
            x = self.cs[i] if i < la else zero
            y = other.cs[i] if i < lb else zero
            out.append(f.subi(x, y))
        return Poly(f, out)

    def __neg__(self):
        f = self.field
        return Poly(f, tuple(f.negi(c) for c in self.cs), trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Poly.const(self.field, other)
        other = self._same(other)
        f = self.field
        a, b = self.cs, other.cs
        if not a or not b:
            return Poly.zero(f)
        zero = f.zeroi
        addi, muli = f.addi, f.muli
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj != zero:
                    out[i + j] = addi(out[i + j], muli(ai, bj))
        return Poly(f, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other) -> tuple["Poly", "Poly"]:
        """Quotient and remainder with deg r < deg other."""
        other = self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        f = self.field
        zero = f.zeroi
        db = other.degree
        if self.degree is None or self.degree < db:
            return Poly.zero(f), self
        inv_lc = f.invi(other.cs[-1])
        nz = [(i, c) for i, c in enumerate(other.cs[:-1]) if c != zero]
        rem = list(self.cs)
        quo = [zero] * (len(rem) - db)
        muli, subi = f.muli, f.subi
        for k in range(len(rem) - db - 1, -1, -1):
            c = rem[k + db]
            if c == zero:
                continue
            c = muli(c, inv_lc)
            quo[k] = c
            rem[k + db] = zero
            for i, bc in nz:
                rem[k + i] = subi(rem[k + i], muli(c, bc))
        return Poly(f, quo), Poly(f, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        f = self.field
        if self.cs[-1] == f.onei:
            return self
        inv = f.invi(self.cs[-1])
        return Poly(f, tuple(f.muli(c, inv) for c in self.cs), trusted=True)

    def evaluate(self, x):
        """Horner evaluation; accepts a raw value or FieldElement, returns a FieldElement."""
        f = self.field
        xv = _raw(f, x)
        acc = f.zeroi
        for c in reversed(self.cs):
            acc = f.addi(f.muli(acc, xv), c)
        return FieldElement(f, acc) if isinstance(f, FqField) else acc

    def derivative(self) -> "Poly":
        f = self.field
        out = []
        for i in range(1, len(self.cs)):
            k = i % f.char
            c = self.cs[i]
            acc = f.zeroi
            for _ in range(k):
                acc = f.addi(acc, c)
            out.append(acc)
        return Poly(f, out)

    def reverse(self) -> "Poly":
        """T^deg * self(1/T); trims the new trailing zeros."""
        return Poly(self.field, tuple(reversed(self.cs)))

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k."""
        if self.is_zero() or k == 0:
            return self
        return Poly(self.field, (self.field.zeroi,) * k + self.cs, trusted=True)

    # -- comparisons / hashing -------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.cs == other.cs

    def __hash__(self):
        return hash((self.field.char, self.field.order, self.cs))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if isinstance(self.field, FqField):
            return format_poly(self)
        return f"<poly deg {self.degree} over {self.field}>"


def _raw(field, value):
    """Coerce ints/elements/raw values to the field's raw representation."""
    if isinstance(value, FieldElement):
        if value.field != field:
            raise ValueError("field mismatch")
        return value.enc
    if isinstance(field, FqField):
        return field.element(value).enc
    return value


def modexp(base: Poly, e: int, q_mod: Poly) -> Poly:
    """base^e mod q_mod by square-and-multiply; result degree < deg q_mod."""
    if q_mod.is_zero():
        raise ZeroDivisionError("zero modulus")
    if q_mod.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    if e < 0:
        raise ValueError("negative exponent")
    result = Poly.one(base.field)
    base = base % q_mod
    while e:
        if e & 1:
            result = (result * base) % q_mod
        e >>= 1
        if e:
            base = (base * base) % q_mod
    return result


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_irreducible(f: Poly) -> bool:
    """True iff f is irreducible over its field.

    Distinct-degree criterion: f of degree d is irreducible exactly when it
    shares no factor with T^(q^i) - T for i <= d/2.
    """
    d = f.degree
    if d is None or d < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    if d == 1:
        return True
    field = f.field
    q = field.order
    w = Poly.T(field) % f
    t_poly = Poly.T(field)
    for _ in range(d // 2):
        w = modexp(w, q, f)
        g = poly_gcd(w - t_poly, f)
        if not g.is_constant():
            return False
    return True


# -- factorization -----------------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    """Inverse Frobenius on coefficients: f = g(T^p) => g."""
    field = f.field
    p = field.char
    e = field.order // p  # a^(q/p) is the p-th root of a in F_q
    out = [field.powi(f.coefficient(i), e) for i in range(0, len(f.cs), p)]
    return Poly(field, out)


def _squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    """Monic f as a list of (squarefree part, multiplicity), parts coprime."""
    field = f.field
    p = field.char
    out: dict[int, Poly] = {}

    def accumulate(g: Poly, outer: int):
        d = g.derivative()
        if d.is_zero():
            accumulate(_pth_root(g), outer * p)
            return
        c = poly_gcd(g, d)
        w = (g // c).monic()
        i = 1
        while not w.is_constant():
            y = poly_gcd(w, c)
            z = (w // y).monic()
            if not z.is_constant():
                key = i * outer
                out[key] = out[key] * z if key in out else z
            w = y
            c = (c // y).monic()
            i += 1
        if not c.is_constant():
            accumulate(_pth_root(c), outer * p)

    accumulate(f.monic(), 1)
    return [(part, mult) for mult, part in sorted(out.items())]


def _distinct_degree(f: Poly) -> list[tuple[int, Poly]]:
    """Squarefree monic f -> [(i, product of its irreducible factors of degree i)]."""
    field = f.field
    q = field.order
    t_poly = Poly.T(field)
    out = []
    w = t_poly % f
    rem = f
    i = 0
    while not rem.is_constant():
        i += 1
        if 2 * i > rem.degree:
            out.append((rem.degree, rem))
            break
        w = modexp(w, q, rem)
        g = poly_gcd(w - t_poly, rem)
        if not g.is_constant():
            out.append((i, g))
            rem = (rem // g).monic()
            w = w % rem
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus: split a product of degree-d irreducibles."""
    field = f.field
    if f.degree == d:
        return [f]
    q = field.order
    while True:
        h = Poly(field, [rng.randrange(q) for _ in range(f.degree)])
        if h.is_constant():
            continue
        if q % 2 == 1:
            g = modexp(h, (q**d - 1) // 2, f) - Poly.one(field)
        else:
            # char 2: additive trace map over F_2
            k = d * factorize(q)[0][1]
            s = h % f
            acc = s
            for _ in range(k - 1):
                s = (s * s) % f
                acc = acc + s
            g = acc
        g = poly_gcd(g, f)
        if not g.is_constant() and g.degree < f.degree:
            left = _equal_degree_split(g, d, rng)
            right = _equal_degree_split((f // g).monic(), d, rng)
            return left + right


def factor(f: Poly, seed: int = 0) -> tuple[FieldElement, list[tuple["MonicIrreducible", int]]]:
    """Factor f into its leading coefficient and monic irreducible powers.

    Returns (gamma, [(P, multiplicity), ...]) with factors sorted by
    (degree, graded-lex) and gamma * prod(P^mult) == f.  Equal-degree
    splitting draws from a generator seeded with ``seed``, so the result
    is deterministic.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    field = f.field
    gamma = FieldElement(field, f.lc)
    monic = f.monic()
    if monic.is_constant():
        return gamma, []
    rng = random.Random(seed)
    found: dict[tuple, tuple[Poly, int]] = {}
    for part, mult in _squarefree_parts(monic):
        for d, prod in _distinct_degree(part):
            for irr in _equal_degree_split(prod, d, rng):
                found[irr.cs] = (irr, mult)
    factors = [
        (MonicIrreducible(poly, _trusted=True), mult)
        for poly, mult in sorted(found.values(), key=lambda pm: pm[0].canonical_key())
    ]
    return gamma, factors


class MonicIrreducible:
    """A validated monic irreducible polynomial: a finite prime of F_q(T)."""

    __slots__ = ("poly", "_dlog")

    def __init__(self, poly: Poly, _trusted: bool = False):
        if not _trusted:
            if not poly.is_monic():
                raise ValueError("prime polynomials must be monic")
            if not is_irreducible(poly):
                raise ValueError(f"{poly} is reducible")
        self.poly = poly
        self._dlog = None

    @property
    def field(self):
        return self.poly.field

    @property
    def degree(self) -> int:
        return self.poly.degree

    def residue_order(self) -> int:
        """Size of the residue field R_T/(Q)."""
        return self.field.order**self.degree

    def __eq__(self, other):
        return isinstance(other, MonicIrreducible) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"MonicIrreducible({self.poly})"

    def __str__(self):
        return str(self.poly)


def enumerate_irreducibles(field: FqField, max_degree: int):
    """All monic irreducibles of degree <= max_degree, ascending (degree, graded-lex)."""
    t_poly = Poly.T(field)
    for d in range(1, max_degree + 1):
        if d == 1:
            for enc in range(field.q):
                yield MonicIrreducible(t_poly + Poly.const(field, enc), _trusted=True)
            continue
        for digits in itertools.product(range(field.q), repeat=d):
            # digits run from the T^(d-1) coefficient down to the constant
            coeffs = list(reversed(digits)) + [1]
            cand = Poly(field, coeffs, trusted=True)
            if is_irreducible(cand):
                yield MonicIrreducible(cand, _trusted=True)


def irreducible_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q (necklace count)."""

    def moebius(num: int) -> int:
        out = 1
        for _, e in factorize(num):
            if e > 1:
                return 0
            out = -out
        return out

    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += moebius(e) * q ** (d // e)
    return total // d


# -- residue fields ------------------------------------------------------------


class ResidueField:
    """The residue field R_T/(Q) for a prime Q, as a raw-op coefficient field.

    Elements are fixed-length tuples of base-field encodings (degree-d
    residue written low to high).  Implements the same raw protocol as
    FqField, so the generic Poly machinery factors polynomials over it.
    """

    def __init__(self, q_prime):
        poly = q_prime.poly if isinstance(q_prime, MonicIrreducible) else q_prime
        if not poly.is_monic() or poly.degree < 1:
            raise ValueError("residue field modulus must be monic of degree >= 1")
        base = poly.field
        self.base = base
        self.modulus = poly
        d = poly.degree
        self.d = d
        self.order = base.order**d
        self.char = base.char
        self.zeroi = (0,) * d
        self.onei = ((base.onei,) + (0,) * (d - 1)) if d > 1 else (base.onei,)
        self._init_ops()

    def _init_ops(self):
        base = self.base
        d = self.d
        mod_cs = self.modulus.cs
        if isinstance(base, FqField) and base.m == 1:
            p = base.p
            qnz = [(i, c) for i, c in enumerate(mod_cs[:-1]) if c]

            def muli(x, y):
                prod = [0] * (2 * d - 1)
                for i, xi in enumerate(x):
                    if xi:
                        for j, yj in enumerate(y):
                            prod[i + j] += xi * yj
                for k in range(2 * d - 2, d - 1, -1):
                    c = prod[k] % p
                    if c:
                        off = k - d
                        for i, mc in qnz:
                            prod[off + i] -= c * mc
                return tuple(v % p for v in prod[:d])

            self.addi = lambda x, y: tuple((a + b) % p for a, b in zip(x, y))
            self.subi = lambda x, y: tuple((a - b) % p for a, b in zip(x, y))
            self.negi = lambda x: tuple((-a) % p for a in x)
        else:
            ba, bs, bn, bm = base.addi, base.subi, base.negi, base.muli
            zero = base.zeroi
            qnz = [(i, c) for i, c in enumerate(mod_cs[:-1]) if c != zero]

            def muli(x, y):
                prod = [zero] * (2 * d - 1)
                for i, xi in enumerate(x):
                    if xi != zero:
                        for j, yj in enumerate(y):
                            if yj != zero:
                                prod[i + j] = ba(prod[i + j], bm(xi, yj))
                for k in range(2 * d - 2, d - 1, -1):
                    c = prod[k]
                    if c != zero:
                        off = k - d
                        for i, mc in qnz:
                            prod[off + i] = bs(prod[off + i], bm(c, mc))
                return tuple(prod[:d])

            self.addi = lambda x, y: tuple(ba(a, b) for a, b in zip(x, y))
            self.subi = lambda x, y: tuple(bs(a, b) for a, b in zip(x, y))
            self.negi = lambda x: tuple(bn(a) for a in x)
        self.muli = muli

    def powi(self, x, e: int):
        if e < 0:
            return self.powi(self.invi(x), -e)
        result = self.onei
        while e:
            if e & 1:
                result = self.muli(result, x)
            e >>= 1
            if e:
                x = self.muli(x, x)
        return result

    def invi(self, x):
        if x == self.zeroi:
            raise ZeroDivisionError("inverse of zero residue")
        return self.powi(x, self.order - 2)

    def from_poly(self, poly: Poly):
        """Reduce a base-ring polynomial into a residue tuple."""
        if poly.field != self.base:
            raise ValueError("field mismatch")
        r = poly % self.modulus
        cs = r.cs + (self.base.zeroi,) * (self.d - len(r.cs))
        return tuple(cs)

    def to_poly(self, x) -> Poly:
        return Poly(self.base, x)

    def constant_of(self, x):
        """Base-field encoding if the residue is constant, else None."""
        zero = self.base.zeroi
        if all(c == zero for c in x[1:]):
            return x[0]
        return None

    def element_at(self, index: int):
        """The index-th residue in canonical enumeration order."""
        q = self.base.order
        out = []
        for _ in range(self.d):
            out.append(index % q)
            index //= q
        return tuple(out)

    def iter_elements(self):
        for i in range(self.order):
            yield self.element_at(i)

    def iter_units(self):
        for i in range(1, self.order):
            yield self.element_at(i)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("residue", self.modulus))

    def __repr__(self):
        return f"ResidueField({self.modulus})"


def binomial_factor_profile(rf, m: int, u) -> list[tuple[int, int]]:
    """Factor-degree profile [(degree, count), ...] of X^m - u over a field.

    Distinct-degree factorization specialized to a binomial modulus:
    X^(N^i) mod (X^m - u) is the monomial u^floor(N^i/m) * X^(N^i mod m),
    so each stage costs one exponentiation and one gcd.  ``rf`` is any
    raw-op field (ResidueField or FqField); ``u`` must be a nonzero raw
    value with gcd(m, char) = 1.
    """
    if m < 1:
        raise ValueError("binomial degree must be >= 1")
    if u == rf.zeroi:
        raise ValueError("binomial constant term must be a unit")
    if m % rf.char == 0:
        raise ValueError("inseparable binomial")
    field = rf
    n_order = field.order
    h = Poly(field, [field.negi(u)] + [field.zeroi] * (m - 1) + [field.onei])
    rem = h
    profile = []
    i = 0
    while not rem.is_constant():
        i += 1
        if i > m:
            raise AssertionError("distinct-degree loop overran the binomial degree")
        big = n_order**i
        r = big % m
        s = (big // m) % (n_order - 1) if n_order > 2 else (big // m)
        us = field.powi(u, s)
        # w = u^s * X^r - X
        size = max(r, 1) + 1
        cs = [field.zeroi] * size
        cs[r] = field.addi(cs[r], us)
        cs[1] = field.subi(cs[1], field.onei)
        w = Poly(field, cs)
        g = poly_gcd(w, rem) if not w.is_zero() else rem
        if not g.is_constant():
            count, resid = divmod(g.degree, i)
            if resid:
                raise AssertionError("degree-i product not divisible by i")
            profile.append((i, count))
            rem = (rem // g).monic()
    return profile


# -- text grammar ----------------------------------------------------------------


class PolyParseError(ValueError):
    """Parse failure carrying the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_KINDS = (
    ("INT", re.compile(r"\d+")),
    ("NAME", re.compile(r"[Tg]")),
    ("OP", re.compile(r"[-+*^()]")),
)


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for kind, pattern in _TOKEN_KINDS:
            match = pattern.match(text, i)
            if match:
                tokens.append((kind, match.group(), i))
                i = match.end()
                break
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    expr := ['-'] term (('+'|'-') term)*
    term := atom ('*' atom)*
    atom := INT | 'g' ['^' INT] | 'T' ['^' INT] | '(' expr ')' ['^' INT]
    """

    def __init__(self, field: FqField, text: str):
        self.field = field
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, text, at = self.take()
        if text != value:
            raise PolyParseError(f"expected {value!r}, found {text or 'end of input'!r}", at)

    def parse(self) -> Poly:
        result = self.expr()
        kind, text, at = self.peek()
        if kind != "END":
            raise PolyParseError(f"trailing input {text!r}", at)
        return result

    def expr(self) -> Poly:
        kind, text, _ = self.peek()
        negate = False
        if text in "+-":
            self.take()
            negate = text == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            kind, text, _ = self.peek()
            if text == "+":
                self.take()
                acc = acc + self.term()
            elif text == "-":
                self.take()
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Poly:
        acc = self.atom()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.atom()
        return acc

    def atom(self) -> Poly:
        kind, text, at = self.take()
        if kind == "INT":
            base = Poly.const(self.field, int(text) % self.field.p)
        elif text == "T":
            base = Poly.T(self.field)
        elif text == "g":
            if self.field.m == 1:
                raise PolyParseError(f"symbol g is not valid over F_{self.field.p}", at)
            base = Poly.const(self.field, self.field.element([0, 1]))
        elif text == "(":
            base = self.expr()
            self.expect(")")
        else:
            raise PolyParseError(f"unexpected token {text or 'end of input'!r}", at)
        if self.peek()[1] == "^":
            self.take()
            kind, text, at = self.take()
            if kind != "INT":
                raise PolyParseError("exponent must be a nonnegative integer", at)
            base = base**int(text)
        return base


def parse_poly(field: FqField, text: str) -> Poly:
    """Parse the polynomial text grammar over the given field."""
    if not text.strip():
        raise PolyParseError("empty polynomial", 0)
    return _Parser(field, text).parse()


def format_poly(poly: Poly) -> str:
    """Canonical printer; ``parse_poly`` returns the exact same value."""
    field = poly.field
    if poly.is_zero():
        return "0"
    terms = []
    for i in range(len(poly.cs) - 1, -1, -1):
        c = poly.cs[i]
        if c == field.zeroi:
            continue
        cstr = str(FieldElement(field, c))
        wrapped = f"({cstr})" if ("+" in cstr or "-" in cstr) else cstr
        if i == 0:
            terms.append(wrapped)
        else:
            tpow = "T" if i == 1 else f"T^{i}"
            terms.append(tpow if c == field.onei else f"{wrapped}*{tpow}")
    return "+".join(terms)
