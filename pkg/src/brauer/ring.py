"""Exact scalars over the parameter ring.

Everything downstream works over Z[d] and its fraction field, where d is
the loop parameter of the Brauer algebra.  Two representations:

* ``DeltaScalar`` -- a reduced rational function num/den with Fraction
  coefficients and monic denominator.  Good for small symbolic values
  (contents, seminormal coefficients, gamma factors).
* ``FactoredPoly`` -- a product  unit * prod_i (d + shift_i)^exp_i  with
  the integer unit held as a sign plus prime->exponent map.  Exponents are
  arbitrary Python ints; this is the only representation that survives the
  large determinants, whose plain-integer units would have ~10^26 digits.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "DeltaScalar",
    "FactoredPoly",
    "fp_one",
    "fp_linear",
    "fp_mul",
    "fp_div",
    "fp_pow",
    "fp_from_scalar",
    "fp_finalize",
    "fp_evaluate",
    "fp_expand",
    "fp_to_text",
    "fp_to_json",
    "fp_from_json",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficients low degree -> high degree


def _ptrim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim(
        (a[i] if i < len(a) else _ZERO) + (b[i] if i < len(b) else _ZERO)
        for i in range(n)
    )


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _ptrim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    inv_lead = 1 / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv_lead
        k = len(r) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            r[i + k] -= c * cb
        while r and r[-1] == 0:
            r.pop()
    return _ptrim(q), _ptrim(r)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, 1 / a[-1])
    return a


def _peval(a, x):
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(a, var="d"):
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{mag}{var}" if k == 1 else f"{mag}{var}^{k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class DeltaScalar:
    """A rational function in d, always kept reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(_ONE,)):
        num = _ptrim(_as_fraction(c) for c in num)
        den = _ptrim(_as_fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num = ()
            self.den = (_ONE,)
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pscale(den, 1 / lead)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, q):
        return cls((_as_fraction(q),))

    @classmethod
    def delta(cls):
        return cls((_ZERO, _ONE))

    @classmethod
    def linear(cls, shift, scale=1):
        """scale * (d + shift)."""
        s = _as_fraction(scale)
        return cls((s * _as_fraction(shift), s))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def as_fraction(self):
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return self.num[0] / self.den[0] if self.num else _ZERO

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, DeltaScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return DeltaScalar((_as_fraction(x),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return DeltaScalar(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return DeltaScalar(_pneg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DeltaScalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero DeltaScalar")
        return DeltaScalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, x):
        x = _as_fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at d={x}")
        return _peval(self.num, x) / d

    def __str__(self):
        if self.den == (_ONE,):
            return _pstr(self.num)
        num = _pstr(self.num)
        den = _pstr(self.den)
        return f"({num})/({den})"

    def __repr__(self):
        return f"DeltaScalar({self})"


# ---------------------------------------------------------------------------
# factored polynomials


def _factor_int(m):
    """Prime factorization of m > 0 by trial division (inputs are smooth)."""
    if m <= 0:
        raise ValueError("need a positive integer")
    out = {}
    for p in (2, 3, 5):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    p = 7
    while p * p <= m:
        if p > 10**7:
            raise ValueError(f"residual factor {m} too large to factor")
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _factor_fraction(q):
    q = _as_fraction(q)
    if q == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if q > 0 else -1
    primes = dict(_factor_int(abs(q.numerator)))
    for p, e in _factor_int(q.denominator).items():
        primes[p] = primes.get(p, 0) - e
        if primes[p] == 0:
            del primes[p]
    return sign, primes


def _divisors(m):
    divs = [1]
    for p, e in _factor_int(m).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _norm_shift(s):
    s = _as_fraction(s)
    return int(s) if s.denominator == 1 else s


class FactoredPoly:
    """unit * prod (d + shift)^exp with a prime-factored integer-ish unit.

    Exponents (both of linear factors and of unit primes) may be negative
    while a value is being assembled; fp_finalize checks that the final
    object is an honest element of Z[d].
    """

    __slots__ = ("sign", "unit_primes", "factors")

    def __init__(self, sign, unit_primes=(), factors=()):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign = sign
        up = {}
        for p, e in dict(unit_primes).items():
            if not (isinstance(p, int) and p > 1):
                raise ValueError(f"bad unit prime {p!r}")
            if e:
                up[p] = e
        fs = {}
        for s, e in dict(factors).items():
            if e:
                k = _norm_shift(s)
                fs[k] = fs.get(k, 0) + e
                if fs[k] == 0:
                    del fs[k]
        self.unit_primes = up
        self.factors = fs

    def __eq__(self, other):
        if not isinstance(other, FactoredPoly):
            return NotImplemented
        return (
            self.sign == other.sign
            and self.unit_primes == other.unit_primes
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash(
            (
                self.sign,
                tuple(sorted(self.unit_primes.items())),
                tuple(sorted((str(s), e) for s, e in self.factors.items())),
            )
        )

    def __repr__(self):
        return f"FactoredPoly({fp_to_text(self)!r})"

    def unit_digits(self):
        """Approximate decimal digit count of |unit|."""
        bits = sum(e * math.log10(p) for p, e in self.unit_primes.items() if e > 0)
        return int(bits) + 1

    def unit_value(self):
        val = Fraction(self.sign)
        for p, e in self.unit_primes.items():
            val *= Fraction(p) ** e
        return val


def fp_one():
    return FactoredPoly(1)


def fp_linear(shift, exp=1):
    """(d + shift)^exp."""
    return FactoredPoly(1, {}, {shift: exp})


def fp_mul(a, b):
    up = dict(a.unit_primes)
    for p, e in b.unit_primes.items():
        up[p] = up.get(p, 0) + e
    fs = dict(a.factors)
    for s, e in b.factors.items():
        fs[s] = fs.get(s, 0) + e
    return FactoredPoly(a.sign * b.sign, up, fs)


def fp_div(a, b):
    up = dict(a.unit_primes)
    for p, e in b.unit_primes.items():
        up[p] = up.get(p, 0) - e
    fs = dict(a.factors)
    for s, e in b.factors.items():
        fs[s] = fs.get(s, 0) - e
    return FactoredPoly(a.sign * b.sign, up, fs)


def fp_pow(a, k):
    if k < 0:
        raise ValueError("negative power; use fp_div")
    if k == 0:
        return fp_one()
    return FactoredPoly(
        a.sign if k % 2 else 1,
        {p: e * k for p, e in a.unit_primes.items()},
        {s: e * k for s, e in a.factors.items()},
    )


def _linear_roots(poly):
    """Split a Q-polynomial into lead * prod (d - r); assert it splits."""
    if not poly:
        raise ValueError("cannot factor the zero polynomial")
    lead = poly[-1]
    work = _pscale(poly, 1 / lead)
    roots = {}
    while len(work) > 1:
        if work[0] == 0:
            r = _ZERO
        else:
            denoms = math.lcm(*(c.denominator for c in work))
            ints = [int(c * denoms) for c in work]
            g = math.gcd(*ints)
            ints = [c // g for c in ints]
            r = None
            for q in _divisors(abs(ints[-1])):
                for p in _divisors(abs(ints[0])):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if _peval(work, cand) == 0:
                            r = cand
                            break
                    if r is not None:
                        break
                if r is not None:
                    break
            if r is None:
                raise ValueError(f"{_pstr(poly)} does not split into linear factors over Q")
        work = _pdivmod(work, (-r, _ONE))[0]
        roots[r] = roots.get(r, 0) + 1
    return lead, roots


def fp_from_scalar(value):
    """Factor a DeltaScalar (or exact rational) into FactoredPoly form."""
    if isinstance(value, (int, Fraction)):
        value = DeltaScalar.constant(value)
    if value.is_zero:
        raise ValueError("zero has no factored form")
    num_lead, num_roots = _linear_roots(value.num)
    den_lead, den_roots = _linear_roots(value.den)
    sign, primes = _factor_fraction(num_lead / den_lead)
    factors = {}
    for r, m in num_roots.items():
        factors[-r] = factors.get(-r, 0) + m
    for r, m in den_roots.items():
        factors[-r] = factors.get(-r, 0) - m
    return FactoredPoly(sign, primes, factors)


def fp_finalize(fp):
    """Check that fp lies in Z[d]: integer unit, exponents >= 0, integer shifts."""
    for p, e in fp.unit_primes.items():
        if e < 0:
            raise ValueError(f"unit is not an integer: prime {p} has exponent {e}")
    for s, e in fp.factors.items():
        if e < 0:
            raise ValueError(f"factor (d+{s}) has negative exponent {e}")
        if not isinstance(s, int):
            raise ValueError(f"non-integer shift {s}")
    return fp


def fp_evaluate(fp, x):
    x = _as_fraction(x)
    big = 10**6
    val = Fraction(fp.sign)
    for p, e in fp.unit_primes.items():
        if abs(e) > big:
            raise ValueError("unit exponent too large to evaluate")
        val *= Fraction(p) ** e
    for s, e in fp.factors.items():
        base = x + s
        if base == 0:
            if e < 0:
                raise ZeroDivisionError(f"pole at d={x}")
            return _ZERO if e > 0 else val
        if abs(e) > big and abs(base) != 1:
            raise ValueError("factor exponent too large to evaluate")
        val *= base**e
    return val


def fp_expand(fp, degree_limit=4096):
    """Multiply the factorization back out into a DeltaScalar."""
    total = sum(abs(e) for e in fp.factors.values())
    if total > degree_limit:
        raise ValueError(f"degree {total} exceeds expansion limit {degree_limit}")
    unit = fp.unit_value()
    num = (Fraction(unit.numerator),)
    den = (Fraction(unit.denominator),)
    for s, e in fp.factors.items():
        lin = (_as_fraction(s), _ONE)
        for _ in range(abs(e)):
            if e > 0:
                num = _pmul(num, lin)
            else:
                den = _pmul(den, lin)
    return DeltaScalar(num, den)


def _sorted_factors(fp):
    def key(item):
        s = item[0]
        return (s != 0, abs(Fraction(s)), Fraction(s))

    return sorted(fp.factors.items(), key=key)


_UNIT_DIGIT_LIMIT = 10_000


def fp_to_text(fp, unit_digit_limit=_UNIT_DIGIT_LIMIT):
    pieces = []
    if fp.unit_digits() <= unit_digit_limit:
        unit = fp.unit_value()
        if unit.denominator != 1:
            pieces.append(f"{unit.numerator}/{unit.denominator}")
        elif unit != 1 or not fp.factors:
            pieces.append(str(unit.numerator))
    else:
        if fp.sign < 0:
            pieces.append("-1")
        pieces.extend(
            f"{p}^{e}" for p, e in sorted(fp.unit_primes.items()) if e
        )
    for s, e in _sorted_factors(fp):
        if s == 0:
            base = "d"
        elif isinstance(s, int) and s < 0:
            base = f"(d-{-s})"
        else:
            base = f"(d+{s})"
        pieces.append(base if e == 1 else f"{base}^{e}")
    return " * ".join(pieces) if pieces else "1"


def fp_to_json(fp, unit_digit_limit=_UNIT_DIGIT_LIMIT):
    out = {}
    if not fp.unit_primes or fp.unit_digits() <= unit_digit_limit:
        out["unit"] = str(fp.unit_value())
    else:
        out["unit_factored"] = {
            "sign": fp.sign,
            "primes": [
                {"prime": str(p), "exp": str(e)}
                for p, e in sorted(fp.unit_primes.items())
            ],
        }
    out["factors"] = [
        {"shift": str(s), "exp": str(e)} for s, e in _sorted_factors(fp)
    ]
    return out


def fp_from_json(obj):
    if "unit_factored" in obj:
        uf = obj["unit_factored"]
        sign = int(uf["sign"])
        primes = {int(item["prime"]): int(item["exp"]) for item in uf["primes"]}
    else:
        unit = Fraction(obj["unit"])
        sign, primes = _factor_fraction(unit)
    factors = {}
    for item in obj["factors"]:
        factors[_norm_shift(Fraction(item["shift"]))] = int(item["exp"])
    return FactoredPoly(sign, primes, factors)
