"""Exact arithmetic in small finite fields F_q with q = p^m.

The field fixes a canonical representation so that every derived quantity
(discrete logs, root-of-unity exponents, symbol values) is reproducible
across runs:

* the modulus defaults to the first monic irreducible of degree m over F_p
  in graded-lex coefficient order (leading coefficients compared first);
* the primitive element xi is the least generator of F_q^* in the element
  encoding order.

Elements are encoded as integers in [0, q): the element sum(c_i * g^i),
with digits c_i in [0, p) and g the residue class of the modulus variable,
is encoded as sum(c_i * p^i).  ``FieldElement`` wraps an encoding together
with its field.  Values of the group mu_n of n-th roots of unity are kept
as exponents of zeta_n = xi^((q-1)/n) (``RootOfUnity``), never as raw field
elements, so equality checks are exact integer comparisons.
"""

from __future__ import annotations

import itertools
import re
from math import gcd, isqrt

__all__ = [
    "FqField",
    "FieldElement",
    "RootOfUnity",
    "field_construct",
    "mult_order",
    "const_nth_power_class",
    "discrete_log",
    "is_prime",
    "factorize",
    "parse_element",
]

# Bounds: baby-step/giant-step discrete logs stay exact and fast up to here.
DLOG_BOUND = 1 << 20
# Extension fields up to this size get full addition tables.
_ADD_TABLE_BOUND = 256
# Extension fields are supported up to this size (exp/log multiplication).
_EXT_FIELD_BOUND = 1 << 16


def is_prime(num: int) -> bool:
    if num < 2:
        return False
    if num < 4:
        return True
    if num % 2 == 0:
        return False
    f = 3
    while f * f <= num:
        if num % f == 0:
            return False
        f += 2
    return True


def factorize(num: int) -> list[tuple[int, int]]:
    """Prime factorization of a positive integer by trial division."""
    if num < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    for p in itertools.chain([2], itertools.count(3, 2)):
        if p * p > num:
            break
        if num % p == 0:
            e = 0
            while num % p == 0:
                num //= p
                e += 1
            out.append((p, e))
    if num > 1:
        out.append((num, 1))
    return out


# ---------------------------------------------------------------------------
# Tiny polynomial arithmetic over the prime field F_p, used only to validate
# and search for the extension modulus.  Polynomials are int lists, index i
# holding the coefficient of x^i, trailing zeros trimmed.


def _px_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _px_mul(p, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _px_trim([v % p for v in out])


def _px_mod(p, a, m):
    a = [v % p for v in a]
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for k in range(len(a) - 1, dm - 1, -1):
        c = (a[k] * inv) % p
        if c:
            for i, mc in enumerate(m):
                a[k - dm + i] = (a[k - dm + i] - c * mc) % p
    return _px_trim(a[:dm])


def _px_powmod(p, base, e, m):
    result = [1]
    base = _px_mod(p, base, m)
    while e:
        if e & 1:
            result = _px_mod(p, _px_mul(p, result, base), m)
        e >>= 1
        base = _px_mod(p, _px_mul(p, base, base), m)
    return result


def _px_gcd(p, a, b):
    a, b = list(a), list(b)
    while b:
        dm = len(b) - 1
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) - 1 >= dm and r:
            k = len(r) - 1 - dm
            c = (r[-1] * inv) % p
            for i, bc in enumerate(b):
                r[k + i] = (r[k + i] - c * bc) % p
            _px_trim(r)
        a, b = b, r
    return a


def _px_is_irreducible(p, f) -> bool:
    """Irreducibility over F_p: no factor of degree <= deg(f)/2."""
    d = len(f) - 1
    if d < 1:
        return False
    if f[0] == 0 and d > 1:
        return False
    w = [0, 1]
    for _ in range(d // 2):
        w = _px_powmod(p, w, p, f)
        diff = list(w)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _px_gcd(p, f, _px_trim(diff))
        if len(g) - 1 >= 1:
            return False
    return True


def _first_irreducible(p: int, m: int) -> tuple[int, ...]:
    # Monic degree-m polynomials ordered graded-lex, leading digits first.
    for digits in itertools.product(range(p), repeat=m):
        coeffs = list(reversed(digits)) + [1]
        if _px_is_irreducible(p, coeffs):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class FqField:
    """The finite field F_q, q = p^m, with canonical modulus and generator.

    Raw arithmetic works on integer encodings through ``addi``/``muli``/...;
    the ``FieldElement`` wrapper provides operator syntax on top of it.
    """

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if not isinstance(m, int) or m <= 0:
            raise ValueError(f"m = {m} must be a positive integer")
        q = p**m
        if m > 1 and q > _EXT_FIELD_BOUND:
            raise ValueError(f"extension field size {q} exceeds supported bound")
        self.p = p
        self.m = m
        self.q = q
        # Shared raw-arithmetic protocol (also implemented by residue fields):
        # order/char plus zeroi/onei sentinels for the generic polynomial code.
        self.order = q
        self.char = p
        self.zeroi = 0
        self.onei = 1
        if modulus is None:
            mod = (0, 1) if m == 1 else _first_irreducible(p, m)
        else:
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != m + 1 or mod[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if m == 1:
                pass  # any monic linear works; reduced to canonical form below
            elif not _px_is_irreducible(p, list(mod)):
                raise ValueError("modulus is reducible over the prime field")
        self.modulus = mod
        self._init_ops()
        self.xi_enc = self._find_primitive()

    # -- raw integer-encoding arithmetic ------------------------------------

    def _init_ops(self):
        p, m, q = self.p, self.m, self.q
        if m == 1:
            self.addi = lambda a, b: (a + b) % p
            self.subi = lambda a, b: (a - b) % p
            self.negi = lambda a: (-a) % p
            self.muli = lambda a, b: (a * b) % p
            self.invi = lambda a: pow(a, p - 2, p)
            self.powi = lambda a, e: pow(a, e % (p - 1) if a else e, p) if e >= 0 else pow(
                pow(a, p - 2, p), -e, p
            )
            return

        mod = self.modulus

        def decode(a):
            out = []
            for _ in range(m):
                out.append(a % p)
                a //= p
            return out

        def encode(digits):
            enc = 0
            for d in reversed(digits):
                enc = enc * p + d
            return enc

        self._decode = decode
        self._encode = encode

        def mul_digits(a, b):
            prod = _px_mul(p, decode(a), decode(b))
            red = _px_mod(p, prod, list(mod))
            return encode(red + [0] * (m - len(red)))

        def add_digits(a, b):
            return encode([(x + y) % p for x, y in zip(decode(a), decode(b))])

        # exp/log tables over a generator make multiplication one lookup.
        gen = None
        for cand in range(1, q):
            t = self._order_via(cand, mul_digits)
            if t == q - 1:
                gen = cand
                break
        exp = [1] * (q - 1)
        log = [0] * q
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = mul_digits(cur, gen)
        self._exp, self._log = exp, log
        qm1 = q - 1

        def muli(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[(log[a] + log[b]) % qm1]

        def invi(a):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return exp[(qm1 - log[a]) % qm1]

        def powi(a, e):
            if a == 0:
                if e == 0:
                    return 1
                if e < 0:
                    raise ZeroDivisionError("inverse of zero")
                return 0
            return exp[(log[a] * e) % qm1]

        self.muli, self.invi, self.powi = muli, invi, powi
        if q <= _ADD_TABLE_BOUND:
            table = [add_digits(a, b) for a in range(q) for b in range(q)]
            self.addi = lambda a, b: table[a * q + b]
            neg = [encode([(-d) % p for d in decode(a)]) for a in range(q)]
            self.negi = lambda a: neg[a]
            self.subi = lambda a, b: table[a * q + neg[b]]
        else:
            self.addi = add_digits
            self.negi = lambda a: encode([(-d) % p for d in decode(a)])
            self.subi = lambda a, b: add_digits(a, self.negi(b))

    def _order_via(self, a, mul):
        t = 1
        cur = a
        while cur != 1:
            cur = mul(cur, a)
            t += 1
            if t > self.q:
                raise AssertionError("element order overflow")
        return t

    def _find_primitive(self) -> int:
        qm1 = self.q - 1
        if qm1 == 1:
            return 1
        fac = [f for f, _ in factorize(qm1)]
        for cand in range(2, self.q):
            if all(self.powi(cand, qm1 // f) != 1 for f in fac):
                return cand
        raise AssertionError("no primitive element found")  # unreachable

    # -- public surface ------------------------------------------------------

    @property
    def xi(self) -> "FieldElement":
        """The canonical primitive element of F_q^*."""
        return FieldElement(self, self.xi_enc)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, value) -> "FieldElement":
        """Coerce an encoding, integer (mod p for prime fields) or digit list."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("field mismatch")
            return value
        if isinstance(value, (list, tuple)):
            digits = [int(c) % self.p for c in value]
            if len(digits) > self.m:
                raise ValueError("too many coefficients for this field")
            digits += [0] * (self.m - len(digits))
            enc = 0
            for d in reversed(digits):
                enc = enc * self.p + d
            return FieldElement(self, enc)
        if isinstance(value, int):
            if self.m == 1:
                return FieldElement(self, value % self.p)
            if 0 <= value < self.q:
                return FieldElement(self, value)
            raise ValueError(f"encoding {value} out of range for F_{self.q}")
        raise TypeError(f"cannot coerce {value!r} into F_{self.q}")

    def elements(self):
        for enc in range(self.q):
            yield FieldElement(self, enc)

    def units(self):
        for enc in range(1, self.q):
            yield FieldElement(self, enc)

    def coeffs_of(self, enc: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(enc % self.p)
            enc //= self.p
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, FqField)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"FqField(p={self.p}, m={self.m})"

    def __str__(self):
        return f"GF({self.q})"


_FIELD_CACHE: dict[tuple, FqField] = {}


def field_construct(p: int, m: int = 1, modulus=None) -> FqField:
    """Build (and cache) the field F_{p^m} with a validated modulus.

    Without an explicit modulus the canonical one is chosen, so repeated
    calls return the identical field object.
    """
    key = (p, m, tuple(int(c) for c in modulus) if modulus is not None else None)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = FqField(p, m, modulus)
        _FIELD_CACHE[key] = field
    return field


class FieldElement:
    """An element of an FqField; immutable, compared by value and field."""

    __slots__ = ("field", "enc")

    def __init__(self, field: FqField, enc: int):
        self.field = field
        self.enc = enc

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficient vector over F_p in the basis 1, g, ..., g^(m-1)."""
        return self.field.coeffs_of(self.enc)

    def is_zero(self) -> bool:
        return self.enc == 0

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("field mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.addi(self.enc, other.enc))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.subi(self.enc, other.enc))

    def __rsub__(self, other):
        return self._check(other).__sub__(self)

    def __neg__(self):
        return FieldElement(self.field, self.field.negi(self.enc))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.muli(self.enc, other.enc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.muli(self.enc, self.field.invi(other.enc)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.powi(self.enc, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.invi(self.enc))

    def __eq__(self, other):
        if isinstance(other, int) and self.field.m == 1:
            return self.enc == other % self.field.p
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.enc == other.enc
        )

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.enc))

    def __repr__(self):
        return f"FieldElement({self}, GF({self.field.q}))"

    def __str__(self):
        if self.field.m == 1:
            return str(self.enc)
        terms = []
        for i in range(self.field.m - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                gpow = "g" if i == 1 else f"g^{i}"
                terms.append(gpow if c == 1 else f"{c}*{gpow}")
        return "+".join(terms) if terms else "0"


_ELEM_TERM = re.compile(r"^(?:(\d+)\*)?g(?:\^(\d+))?$|^(\d+)$")


def parse_element(field: FqField, text: str) -> FieldElement:
    """Parse the field-element grammar: decimal integers over prime fields,
    polynomials in ``g`` (e.g. ``g^2+2*g+1``) over extension fields."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty field element")
    # split into signed terms
    terms = []
    sign = 1
    buf = ""
    for ch in s:
        if ch in "+-" and buf:
            terms.append((sign, buf))
            sign = 1 if ch == "+" else -1
            buf = ""
        elif ch in "+-" and not buf and not terms:
            sign = 1 if ch == "+" else -1
        else:
            buf += ch
    if not buf:
        raise ValueError(f"dangling sign in field element {text!r}")
    terms.append((sign, buf))
    total = field.zero()
    for sgn, term in terms:
        match = _ELEM_TERM.match(term)
        if not match:
            raise ValueError(f"bad field-element term {term!r} in {text!r}")
        if match.group(3) is not None:
            value = field.element(int(match.group(3)) % field.p)
        else:
            coeff = int(match.group(1)) if match.group(1) else 1
            power = int(match.group(2)) if match.group(2) else 1
            if power >= field.m and field.m > 1:
                raise ValueError(f"g^{power} is not reduced in F_{field.q}")
            if field.m == 1:
                raise ValueError(f"symbol g is not valid over the prime field F_{field.p}")
            digits = [0] * field.m
            digits[power] = coeff % field.p
            value = field.element(digits)
        total = total + value if sgn > 0 else total - value
    return total


class RootOfUnity:
    """An element of mu_n in F_q^*, stored as an exponent of zeta_n.

    zeta_n = xi^((q-1)/n); the value is zeta_n^exponent.  Arithmetic is
    exponent arithmetic mod n, so symbol comparisons are exact.
    """

    __slots__ = ("field", "n", "exponent")

    def __init__(self, field: FqField, n: int, exponent: int):
        if n <= 0 or (field.q - 1) % n != 0:
            raise ValueError(f"n = {n} does not divide q-1 = {field.q - 1}")
        self.field = field
        self.n = n
        self.exponent = exponent % n

    def value(self) -> FieldElement:
        step = (self.field.q - 1) // self.n
        return FieldElement(self.field, self.field.powi(self.field.xi_enc, step * self.exponent))

    def is_one(self) -> bool:
        return self.exponent == 0

    @property
    def order(self) -> int:
        return self.n // gcd(self.n, self.exponent)

    def _check(self, other):
        if not isinstance(other, RootOfUnity):
            raise TypeError("expected a RootOfUnity")
        if other.field != self.field or other.n != self.n:
            raise ValueError("root-of-unity group mismatch")
        return other

    def __mul__(self, other):
        other = self._check(other)
        return RootOfUnity(self.field, self.n, self.exponent + other.exponent)

    def __truediv__(self, other):
        other = self._check(other)
        return RootOfUnity(self.field, self.n, self.exponent - other.exponent)

    def __pow__(self, k: int):
        return RootOfUnity(self.field, self.n, self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.field, self.n, -self.exponent)

    def __eq__(self, other):
        return (
            isinstance(other, RootOfUnity)
            and self.field == other.field
            and self.n == other.n
            and self.exponent == other.exponent
        )

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.n, self.exponent))

    def __repr__(self):
        return f"RootOfUnity(n={self.n}, exponent={self.exponent}, value={self.value()})"

    def __str__(self):
        return f"zeta_{self.n}^{self.exponent}"


def mult_order(field: FqField, a) -> int:
    """Least t >= 1 with a^t = 1; always divides q-1."""
    a = field.element(a)
    if a.is_zero():
        raise ValueError("multiplicative order of zero is undefined")
    t = field.q - 1
    for f, _ in factorize(t):
        while t % f == 0 and field.powi(a.enc, t // f) == 1:
            t //= f
    return t


def const_nth_power_class(field: FqField, a, n: int) -> RootOfUnity:
    """The class a^((q-1)/n) in mu_n; trivial exactly when a is an n-th power."""
    a = field.element(a)
    if a.is_zero():
        raise ValueError("zero has no n-th power class")
    if n <= 0 or (field.q - 1) % n != 0:
        raise ValueError(f"n = {n} does not divide q-1 = {field.q - 1}")
    r = field.powi(a.enc, (field.q - 1) // n)
    zeta = field.powi(field.xi_enc, (field.q - 1) // n)
    cur = 1
    for j in range(n):
        if cur == r:
            return RootOfUnity(field, n, j)
        cur = field.muli(cur, zeta)
    raise AssertionError("value not in mu_n")  # unreachable


def discrete_log(field: FqField, a) -> int:
    """Exponent x in [0, q-1) with xi^x = a, by baby-step/giant-step."""
    a = field.element(a)
    if a.is_zero():
        raise ValueError("discrete log of zero is undefined")
    if field.q > DLOG_BOUND:
        raise ValueError(f"field size {field.q} exceeds discrete-log bound {DLOG_BOUND}")
    order = field.q - 1
    if order == 1:
        return 0
    step = isqrt(order) + 1
    baby = {}
    cur = 1
    for j in range(step):
        baby.setdefault(cur, j)
        cur = field.muli(cur, field.xi_enc)
    giant = field.invi(field.powi(field.xi_enc, step))
    cur = a.enc
    for i in range(step + 1):
        j = baby.get(cur)
        if j is not None:
            return (i * step + j) % order
        cur = field.muli(cur, giant)
    raise AssertionError("discrete log not found")  # unreachable for a generator xi
