"""Exact scalars: Laurent polynomials in ``q`` over the rationals and their
fraction field Q(q).

Coefficients are stored as ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise; nothing here ever touches floating point.
"""

from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, PoleAtSpecialization, ZeroSpecialization

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "Q",
    "specialize_q",
    "as_rational",
]


def as_rational(c):
    """Normalise an exact rational to ``int`` when integral."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_rational(Fraction(c.numerator, c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


class LaurentPoly:
    """Finite sum ``sum c_k q^k`` with rational ``c_k`` and integer ``k``.

    Instances are immutable. ``terms`` maps exponent to nonzero coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in dict(terms).items():
                c = as_rational(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # terms already clean: int keys, nonzero normalised values
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, k, c=1):
        return cls({k: c})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(0, 0)

    def min_exp(self):
        return min(self._terms) if self._terms else None

    def max_exp(self):
        return max(self._terms) if self._terms else None

    def leading_coefficient(self):
        return self._terms[max(self._terms)] if self._terms else 0

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly({0: x}) if x else _LP_ZERO
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = as_rational(s) if isinstance(s, Fraction) else s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _LP_ZERO
        if len(b) == 1:
            (kb, cb), = b.items()
            if kb == 0 and cb == 1:
                return self
            return LaurentPoly._raw({k + kb: as_rational(c * cb) for k, c in a.items()})
        if len(a) == 1:
            return other * self
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return LaurentPoly._raw({k: as_rational(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._terms) != 1:
                raise DivisionByZero(f"{self} is not a unit in Z[q, q^-1]")
            (k, c), = self._terms.items()
            return LaurentPoly({k * e: Fraction(1) / Fraction(c) ** (-e)})
        result = _LP_ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: as_rational(other)} if other else {})
        if isinstance(other, RationalFunction):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self._terms.get(0, 0))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def shift(self, k):
        """Multiply by ``q^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def evaluate(self, v):
        v = Fraction(v)
        total = Fraction(0)
        for k, c in self._terms.items():
            total += c * v**k
        return as_rational(total)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = str(a)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if a == 1 else f"{a}*{var}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


_LP_ZERO = LaurentPoly._raw({})
_LP_ONE = LaurentPoly._raw({0: 1})


# -- dense polynomial helpers over Q (ascending coefficient lists) -------------

def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = [Fraction(c) for c in a]
    lead = Fraction(b[-1])
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lead
        quot[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        _trim(a)
    return quot, _trim(a)


def _poly_gcd(a, b):
    """Monic gcd of two nonzero dense polynomials over Q."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def _to_dense(p):
    """Split a Laurent polynomial as ``q^s * P(q)`` with ``P(0) != 0``."""
    lo = p.min_exp()
    hi = p.max_exp()
    dense = [0] * (hi - lo + 1)
    for k, c in p._terms.items():
        dense[k - lo] = c
    return lo, dense


def _from_dense(shift, dense):
    return LaurentPoly({i + shift: c for i, c in enumerate(dense) if c})


class RationalFunction:
    """Reduced fraction ``num/den`` of Laurent polynomials.

    The denominator is an ordinary polynomial with nonzero constant term and
    leading coefficient 1; the numerator absorbs any power of ``q``. Zero is
    ``0/1``. These conventions make the representation unique.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly.constant(num)
        if den is None:
            den = _LP_ONE
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(den)
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _reduce(num, den):
        if not num:
            return _LP_ZERO, _LP_ONE
        if den == _LP_ONE:
            return num, den
        if len(den._terms) == 1:
            (k, c), = den._terms.items()
            return num.shift(-k) * LaurentPoly({0: Fraction(1) / Fraction(c)}), _LP_ONE
        sn, pn = _to_dense(num)
        sd, pd = _to_dense(den)
        g = _poly_gcd(pn, pd)
        if len(g) > 1:
            pn, _ = _poly_divmod(pn, g)
            pd, _ = _poly_divmod(pd, g)
        lead = Fraction(pd[-1])
        pn = [Fraction(c) / lead for c in pn]
        pd = [Fraction(c) / lead for c in pd]
        return _from_dense(sn - sd, pn), _from_dense(0, pd)

    @classmethod
    def q(cls):
        return cls(LaurentPoly.monomial(1), _LP_ONE, _reduced=True)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x, _LP_ONE, _reduced=True)
        if isinstance(x, (int, Fraction)):
            return cls(LaurentPoly({0: x}) if x else _LP_ZERO, _LP_ONE, _reduced=True)
        if isinstance(x, Rational):
            return cls.coerce(Fraction(x.numerator, x.denominator))
        raise TypeError(f"cannot coerce {x!r} to a rational function")

    def _other(self, x):
        try:
            return RationalFunction.coerce(x)
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den == _LP_ONE

    def is_constant(self):
        return self.den == _LP_ONE and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.num.constant_value()

    def as_monomial(self):
        """Return ``(c, k)`` when this equals ``c*q^k``, else ``None``."""
        if self.den != _LP_ONE or len(self.num._terms) != 1:
            return None
        (k, c), = self.num._terms.items()
        return c, k

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _LP_ONE and other.den == _LP_ONE:
            return RationalFunction(self.num + other.num, _LP_ONE, _reduced=True)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _LP_ONE and other.den == _LP_ONE:
            return RationalFunction(self.num * other.num, _LP_ONE, _reduced=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num**e, self.den**e, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self.den == _LP_ONE and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.num) if self.den == _LP_ONE else hash((self.num, self.den))
        return self._hash

    def evaluate(self, v):
        d = self.den.evaluate(v)
        if d == 0:
            raise PoleAtSpecialization(f"denominator of {self} vanishes at q = {v}")
        return as_rational(Fraction(self.num.evaluate(v)) / d)

    def __str__(self):
        if self.den == _LP_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


Q = RationalFunction.q()


def specialize_q(x, v):
    """Evaluate ``x`` at the rational ``q = v``.

    Raises ZeroSpecialization for ``v == 0`` and PoleAtSpecialization when a
    denominator vanishes at ``v``.
    """
    v = Fraction(v)
    if v == 0:
        raise ZeroSpecialization("q cannot be specialized to 0")
    if isinstance(x, (int, Fraction)):
        return as_rational(x)
    if isinstance(x, (LaurentPoly, RationalFunction)):
        return x.evaluate(v)
    raise TypeError(f"cannot specialize {x!r}")
