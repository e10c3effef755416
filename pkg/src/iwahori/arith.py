"""Finite fields, truncated Laurent series and the twisted equation solver.

Field elements are encoded as integers ``0 <= code < q`` whose base-p digits are
the coefficients of the polynomial representative (digit ``i`` multiplies
``t**i``).  A :class:`Series` stores such codes for consecutive exponents of the
uniformizer ``e`` together with an absolute precision: the value is known
modulo ``e**prec``.  ``prec`` may be ``INF`` for exact (finite) series.
"""
import math
import random
from functools import lru_cache

from .errors import (DivisionByZero, FieldMismatch, IndeterminateValuation,
                     InvalidTwist, SeriesSyntaxError)

INF = math.inf
TABLE_LIMIT = 256


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- dense polynomials over F_p, coefficient lists low -> high -------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        a = _trim(a)
    return a


def _monic_polys(p, deg):
    for code in range(p ** deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(_trim(poly)) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p, m):
    """Lexicographically least monic irreducible polynomial of degree m over F_p.

    Polynomials are compared on (c_{m-1}, ..., c_0), which is the numeric order
    of the code sum(c_i p**i).  Returned low -> high, length m + 1.
    """
    for poly in _monic_polys(p, m):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")


class Field:
    """The field F_{p^m} plus the default precision window for series over it."""

    def __init__(self, p=5, m=1, prec=32):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.q = p ** m
        self.prec = prec
        self.modulus = least_irreducible(p, m)
        self.tables = self.q <= TABLE_LIMIT
        if self.tables:
            self._build_tables()

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m}, prec={self.prec})"

    def with_prec(self, prec):
        return Field(self.p, self.m, prec)

    # digit <-> code conversion
    def digits(self, code):
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return out

    def encode(self, digits):
        code = 0
        for d in reversed(list(digits)):
            code = code * self.p + d % self.p
        return code

    def _slow_mul(self, a, b):
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        r = _poly_mod([c % p for c in prod], self.modulus, p)
        return self.encode(r + [0] * (m - len(r)))

    def _slow_add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        return self.encode(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def _slow_pow(self, a, k):
        result, base = 1, a
        while k:
            if k & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            k >>= 1
        return result

    def _build_tables(self):
        q = self.q
        self.add_t = [self._slow_add(a, b) for a in range(q) for b in range(q)]
        self.mul_t = [self._slow_mul(a, b) for a in range(q) for b in range(q)]
        self.neg_t = [self.encode(-d for d in self.digits(a)) for a in range(q)]
        self.inv_t = [0] + [self._slow_pow(a, q - 2) for a in range(1, q)]
        self.frob_t = [self._slow_pow(a, self.p) for a in range(q)]

    # scalar operations on codes
    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.tables:
            return self.add_t[a * self.q + b]
        return self._slow_add(a, b)

    def neg(self, a):
        if self.m == 1:
            return -a % self.p
        if self.tables:
            return self.neg_t[a]
        return self.encode(-d for d in self.digits(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        if self.tables:
            return self.mul_t[a * self.q + b]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in F_q")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self.tables:
            return self.inv_t[a]
        return self._slow_pow(a, self.q - 2)

    def pow(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        if self.m == 1:
            return pow(a, k, self.p)
        return self._slow_pow(a, k)

    def frob(self, a):
        if self.m == 1:
            return a
        if self.tables:
            return self.frob_t[a]
        return self._slow_pow(a, self.p)

    def elem(self, value):
        """FieldElem from an int code-in-prime-field or a digit list."""
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        return FieldElem(self, self.encode(value))

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    # series constructors
    def eps(self, k=1, coef=1):
        return Series.monomial(self, k, coef)

    def const(self, coef):
        return Series.monomial(self, 0, coef)

    def zero(self, prec=INF):
        return Series(self, prec, (), prec)

    def one(self):
        return Series.monomial(self, 0, 1)


@lru_cache(maxsize=None)
def get_field(p=5, m=1, prec=32):
    return Field(p, m, prec)


class FieldElem:
    """Element of F_{p^m}; ``coeffs`` lists the polynomial-basis residues."""
    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    @property
    def coeffs(self):
        return self.field.digits(self.code)

    def _other(self, b):
        if isinstance(b, FieldElem):
            if b.field != self.field:
                raise FieldMismatch("operands live in different fields")
            return b.code
        return b % self.field.p

    def __add__(self, b):
        return FieldElem(self.field, self.field.add(self.code, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElem(self.field, self.field.sub(self.code, self._other(b)))

    def __rsub__(self, b):
        return FieldElem(self.field, self.field.sub(self._other(b), self.code))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __mul__(self, b):
        return FieldElem(self.field, self.field.mul(self.code, self._other(b)))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.code))

    def __truediv__(self, b):
        return self * FieldElem(self.field, self._other(b)).inverse()

    def __pow__(self, k):
        return FieldElem(self.field, self.field.pow(self.code, k))

    def frobenius(self):
        return FieldElem(self.field, self.field.frob(self.code))

    def __eq__(self, b):
        if isinstance(b, FieldElem):
            return self.field == b.field and self.code == b.code
        if isinstance(b, int):
            return self.code == b % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return render_coeff(self.field, self.code)


def ff_arith(op, a, b=None):
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
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(a):
    return a.frobenius()


class PlusInfinityToPrecision:
    """Valuation of a series with no nonzero coefficient below its precision."""
    __slots__ = ("prec",)

    def __init__(self, prec):
        self.prec = prec

    def __eq__(self, other):
        return isinstance(other, PlusInfinityToPrecision) and other.prec == self.prec

    def __hash__(self):
        return hash(("zero", self.prec))

    def __repr__(self):
        return f"PlusInfinityToPrecision({self.prec})"


def _normalize(F, v, coeffs, prec):
    """Series from raw data: drop terms beyond prec, strip leading zeros, pad."""
    if prec != INF:
        keep = prec - v
        if keep <= 0:
            return Series(F, prec, (), prec)
        if len(coeffs) > keep:
            coeffs = coeffs[:keep]
    start = 0
    n = len(coeffs)
    while start < n and coeffs[start] == 0:
        start += 1
    if start == n:
        return Series(F, prec, (), prec)
    v += start
    if prec == INF:
        end = n
        while coeffs[end - 1] == 0:
            end -= 1
        return Series(F, v, tuple(coeffs[start:end]), prec)
    out = list(coeffs[start:])
    pad = prec - v - len(out)
    if pad > 0:
        out.extend([0] * pad)
    return Series(F, v, tuple(out), prec)


def _conv(F, x, y, n):
    """First n coefficients of the product of coefficient lists x and y."""
    lx, ly = len(x), len(y)
    n = min(n, lx + ly - 1)
    if F.m == 1:
        out = [0] * n
        for i in range(min(lx, n)):
            xi = x[i]
            if xi:
                lim = min(ly, n - i)
                for j in range(lim):
                    out[i + j] += xi * y[j]
        p = F.p
        return [c % p for c in out]
    out = [0] * n
    add, mul = F.add, F.mul
    for i in range(min(lx, n)):
        xi = x[i]
        if xi:
            for j in range(min(ly, n - i)):
                yj = y[j]
                if yj:
                    out[i + j] = add(out[i + j], mul(xi, yj))
    return out


class Series:
    """Truncated Laurent series sum_{n >= v} c_n e^n known modulo e^prec.

    Normalized form: ``c`` is empty for zero, otherwise ``c[0] != 0``.  Finite
    precision series store every coefficient of exponents v .. prec-1; exact
    series store up to the last nonzero coefficient.
    """
    __slots__ = ("F", "v", "c", "prec")

    def __init__(self, F, v, c, prec):
        self.F = F
        self.v = v
        self.c = c
        self.prec = prec

    @classmethod
    def monomial(cls, F, k, coef=1, prec=INF):
        code = F.elem(coef).code if not isinstance(coef, FieldElem) else coef.code
        if code == 0:
            return F.zero(prec)
        return _normalize(F, k, [code], prec)

    @classmethod
    def from_codes(cls, F, vmin, codes, prec=INF):
        return _normalize(F, vmin, list(codes), prec)

    @classmethod
    def from_coeffs(cls, F, vmin, coeffs, prec=INF):
        codes = [F.elem(c).code if not isinstance(c, FieldElem) else c.code
                 for c in coeffs]
        return _normalize(F, vmin, codes, prec)

    # -- inspection -------------------------------------------------------
    @property
    def vmin(self):
        return self.v

    @property
    def coeffs(self):
        return [FieldElem(self.F, c) for c in self.c]

    @property
    def exact(self):
        return self.prec == INF

    def is_zero(self):
        """True when no nonzero coefficient is known (zero to precision)."""
        return not self.c

    def valuation(self):
        if self.c:
            return self.v
        return PlusInfinityToPrecision(self.prec)

    def val_lb(self):
        """A lower bound for the valuation that is exact for nonzero series."""
        return self.v if self.c else self.prec

    def val_at_least(self, n):
        if self.c:
            return self.v >= n
        if self.prec >= n:
            return True
        raise IndeterminateValuation(
            f"cannot decide val >= {n} for a series zero modulo e^{self.prec}")

    def val_equals(self, n):
        if self.c:
            return self.v == n
        if self.prec > n:
            return False
        raise IndeterminateValuation(
            f"cannot decide val == {n} for a series zero modulo e^{self.prec}")

    def coeff(self, n):
        if n >= self.prec:
            raise IndeterminateValuation(f"coefficient of e^{n} beyond precision")
        i = n - self.v
        code = self.c[i] if 0 <= i < len(self.c) else 0
        return FieldElem(self.F, code)

    def leading(self):
        if not self.c:
            raise IndeterminateValuation("leading coefficient of a zero series")
        return FieldElem(self.F, self.c[0])

    def is_monomial(self):
        return self.prec == INF and len(self.c) == 1

    def __repr__(self):
        return f"Series({render_series(self)!r})"

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.c and self.prec == INF
        if not isinstance(other, Series):
            return NotImplemented
        return (self.F == other.F and self.c == other.c and self.prec == other.prec
                and (self.v == other.v or not self.c))

    def __hash__(self):
        return hash((self.v if self.c else None, self.c, self.prec))

    def agrees(self, other):
        """Equality modulo the common precision."""
        return (self - other).is_zero()

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Series):
            if other.F != self.F:
                raise FieldMismatch("series over different fields")
            return other
        if isinstance(other, (int, FieldElem)):
            return Series.monomial(self.F, 0, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _addsub(self, other, False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _addsub(self, other, True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _addsub(other, self, True)

    def __neg__(self):
        F = self.F
        return Series(F, self.v, tuple(F.neg(c) for c in self.c), self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, coef):
        F = self.F
        code = coef.code if isinstance(coef, FieldElem) else coef % F.p
        if code == 0:
            return F.zero(self.prec)
        if code == 1:
            return self
        return Series(F, self.v, tuple(F.mul(code, c) for c in self.c), self.prec)

    def shift(self, k):
        """Multiply by e^k."""
        return Series(self.F, self.v + k, self.c, self.prec + k)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return _normalize(self.F, self.v, list(self.c), prec)

    def inverse(self):
        if not self.c:
            raise IndeterminateValuation("inverse of a series that is zero to precision")
        F = self.F
        v = self.v
        if self.is_monomial():
            return Series(F, -v, (F.inv(self.c[0]),), INF)
        prec = self.prec - 2 * v if self.prec != INF else -v + F.prec
        n = prec + v
        u = self.c
        r0 = F.inv(u[0])
        out = [r0]
        if F.m == 1:
            p = F.p
            neg_r0 = -r0 % p
            lu = len(u)
            for k in range(1, n):
                s = 0
                for i in range(1, min(k, lu - 1) + 1):
                    s += u[i] * out[k - i]
                out.append(neg_r0 * s % p)
        else:
            neg_r0 = F.neg(r0)
            for k in range(1, n):
                s = 0
                for i in range(1, min(k, len(u) - 1) + 1):
                    if u[i]:
                        s = F.add(s, F.mul(u[i], out[k - i]))
                out.append(F.mul(neg_r0, s))
        return _normalize(F, -v, out, prec)

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(self.F.elem(other).inverse())
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.F.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sigma(self):
        F = self.F
        if F.m == 1:
            return self
        return Series(F, self.v, tuple(F.frob(c) for c in self.c), self.prec)


def _addsub(a, b, negate):
    F = a.F
    prec = min(a.prec, b.prec)
    if not b.c:
        return a.truncate(prec) if prec < a.prec else a
    if not a.c:
        res = -b if negate else b
        return res.truncate(prec) if prec < b.prec else res
    v = min(a.v, b.v)
    end = max(a.v + len(a.c), b.v + len(b.c))
    if prec != INF:
        end = min(end, prec)
    if end <= v:
        return F.zero(prec)
    out = [0] * (end - v)
    off = a.v - v
    for i, c in enumerate(a.c):
        if off + i >= len(out):
            break
        out[off + i] = c
    off = b.v - v
    if F.m == 1:
        p = F.p
        for i, c in enumerate(b.c):
            k = off + i
            if k >= len(out):
                break
            out[k] = (out[k] - c) % p if negate else (out[k] + c) % p
    else:
        for i, c in enumerate(b.c):
            k = off + i
            if k >= len(out):
                break
            out[k] = F.add(out[k], F.neg(c) if negate else c)
    return _normalize(F, v, out, prec)


def _mul(a, b):
    F = a.F
    prec = min(a.prec + b.val_lb(), b.prec + a.val_lb())
    if not a.c or not b.c:
        return F.zero(prec)
    v = a.v + b.v
    if len(a.c) == 1 and a.prec == INF:
        return _normalize(F, v, [F.mul(a.c[0], c) for c in b.c], prec)
    if len(b.c) == 1 and b.prec == INF:
        return _normalize(F, v, [F.mul(b.c[0], c) for c in a.c], prec)
    n = len(a.c) + len(b.c) - 1 if prec == INF else prec - v
    return _normalize(F, v, _conv(F, a.c, b.c, n), prec)


def series_arith(op, a, b=None):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown series operation {op!r}")


def valuation(s):
    return s.valuation()


def apply_sigma(s):
    return s.sigma()


def solve_twisted(r, a, window=None):
    """Solve e^r sigma(y) - y = a for y.

    The solution is unique.  Coefficients follow y_v = -a_v at v = val(a) and
    y_n = y_{n-r}^p - a_n above it.  The result is known modulo
    e^min(a.prec, val(a) + window).
    """
    if r <= 0:
        raise InvalidTwist(f"twist exponent must be positive, got {r}")
    F = a.F
    if not a.c:
        return F.zero(a.prec)
    window = F.prec if window is None else window
    v = a.v
    prec = min(a.prec, v + window)
    n = prec - v
    ac = a.c
    la = len(ac)
    y = [0] * n
    neg, add, frob = F.neg, F.add, F.frob
    for t in range(n):
        yt = neg(ac[t]) if t < la else 0
        if t >= r:
            yt = add(frob(y[t - r]), yt)
        y[t] = yt
    return _normalize(F, v, y, prec)


def random_series(F, rng, val, terms, prec=INF, unit_lead=True):
    """Exact series (or truncated at prec) with valuation val and random tail."""
    lead = rng.randrange(1, F.q) if unit_lead else rng.randrange(F.q)
    coeffs = [lead] + [rng.randrange(F.q) for _ in range(max(terms - 1, 0))]
    return _normalize(F, val, coeffs, prec)


def random_field_series(F, rng, vmin, prec):
    """Finite-precision series with coefficients uniform on exponents vmin..prec-1."""
    return _normalize(F, vmin, [rng.randrange(F.q) for _ in range(prec - vmin)], prec)


# -- text grammar ---------------------------------------------------------

def render_coeff(F, code):
    digits = F.digits(code)
    if all(d == 0 for d in digits[1:]):
        return str(digits[0])
    parts = []
    for i in range(F.m - 1, -1, -1):
        d = digits[i]
        if d == 0:
            continue
        if i == 0:
            parts.append(str(d))
            continue
        mono = "t" if i == 1 else f"t^{i}"
        parts.append(mono if d == 1 else f"{d}*{mono}")
    return "(" + "+".join(parts) + ")"


def render_series(s):
    parts = []
    for i, code in enumerate(s.c):
        if code == 0:
            continue
        k = s.v + i
        coef = render_coeff(s.F, code)
        parts.append(f"e^{k}" if coef == "1" else f"{coef}*e^{k}")
    if s.prec != INF:
        parts.append(f"O(e^{s.prec})")
    return " + ".join(parts) if parts else "0"


class TextParser:
    """Recursive descent parser for series, matrices and Weyl-element text."""

    def __init__(self, text, F):
        self.text = text
        self.F = F
        self.pos = 0

    def error(self, msg, pos=None):
        raise SeriesSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def integer(self, signed=True):
        self.skip()
        start = self.pos
        t = self.text
        if signed and self.pos < len(t) and t[self.pos] in "+-":
            self.pos += 1
        digits_start = self.pos
        while self.pos < len(t) and t[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            self.error("expected an integer", start)
        return int(t[start:self.pos])

    def at_end(self):
        return self.peek() == ""

    def poly_coeff(self):
        """Polynomial in t inside parentheses, returned as a field code."""
        start = self.pos
        self.expect("(")
        F = self.F
        digits = {}
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            c = 1
            if self.peek().isdigit():
                c = self.integer(signed=False)
                if self.peek() == "*":
                    self.pos += 1
                    deg = self.t_power(start)
                else:
                    deg = 0
            else:
                deg = self.t_power(start)
            digits[deg] = digits.get(deg, 0) + sign * c
            ch = self.peek()
            if ch == ")":
                self.pos += 1
                break
            if not ch or ch not in "+-":
                self.error("expected '+', '-' or ')' in polynomial coefficient")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        if digits and max(digits) >= F.m and any(
                digits[d] % F.p for d in digits if d >= F.m):
            raise FieldMismatch(
                f"coefficient of degree {max(digits)} needs a field larger than "
                f"F_{F.p}^{F.m}")
        return F.encode([digits.get(i, 0) for i in range(F.m)])

    def t_power(self, start):
        if self.peek() != "t":
            self.error("expected 't'")
        if self.F.m == 1:
            raise FieldMismatch("coefficient uses 't' but the field is prime")
        self.pos += 1
        if self.peek() == "^":
            self.pos += 1
            return self.integer(signed=False)
        return 1

    def series(self, stop=""):
        F = self.F
        terms = {}
        prec = INF
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            ch = self.peek()
            if ch == "O":
                self.pos += 1
                self.expect("(")
                self.expect("e")
                self.expect("^")
                prec = self.integer()
                self.expect(")")
                break
            code = 1
            if ch == "(":
                code = self.poly_coeff()
                self.expect("*")
                self.mono_exp_required()
                k = self.last_exp
            elif ch.isdigit():
                code = self.integer(signed=False) % F.p
                if self.peek() == "*":
                    self.pos += 1
                    self.mono_exp_required()
                    k = self.last_exp
                else:
                    k = 0
            elif ch == "t":
                code = F.encode([0, 1] + [0] * (F.m - 2)) if F.m > 1 else None
                if code is None:
                    raise FieldMismatch("coefficient uses 't' but the field is prime")
                self.pos += 1
                self.expect("*")
                self.mono_exp_required()
                k = self.last_exp
            elif ch == "e":
                self.mono_exp_required()
                k = self.last_exp
            else:
                self.error("expected a term")
            if sign < 0:
                code = F.neg(code)
            terms[k] = F.add(terms.get(k, 0), code)
            ch = self.peek()
            if ch and ch in "+-":
                sign = -1 if ch == "-" else 1
                self.pos += 1
                continue
            if ch == "" or ch in stop:
                break
            self.error(f"unexpected character {ch!r}")
        if not terms:
            return F.zero(prec)
        lo = min(terms)
        hi = max(terms)
        coeffs = [terms.get(k, 0) for k in range(lo, hi + 1)]
        return _normalize(F, lo, coeffs, prec)

    def mono_exp_required(self):
        self.expect("e")
        if self.peek() == "^":
            self.pos += 1
            self.last_exp = self.integer()
        else:
            self.last_exp = 1


def parse_series(text, F=None):
    F = F or get_field()
    parser = TextParser(text, F)
    s = parser.series()
    if not parser.at_end():
        parser.error("trailing input")
    return s


__all__ = [
    "INF", "Field", "FieldElem", "Series", "PlusInfinityToPrecision", "get_field",
    "ff_arith", "frobenius", "series_arith", "valuation", "apply_sigma",
    "solve_twisted", "parse_series", "render_series", "random_series",
    "least_irreducible", "is_irreducible", "is_prime", "TextParser",
]
