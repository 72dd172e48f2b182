"""PBW normal forms for the quantum matrix algebra O_q(M_{m,n}).

An element is held as a map from ordered monomials
``Y[1,1]^e11 * Y[1,2]^e12 * ... * Y[m,n]^emn`` (exponent tuples, generators
in row-major order) to nonzero scalars. Multiplication straightens products
with the four quadratic relations

    Y[i,b] Y[i,a] = q^-1 Y[i,a] Y[i,b]                        (a < b)
    Y[j,a] Y[i,a] = q^-1 Y[i,a] Y[j,a]                        (i < j)
    Y[j,b] Y[i,a] = Y[i,a] Y[j,b]                             (i < j, a > b)
    Y[j,b] Y[i,a] = Y[i,a] Y[j,b] - (q - q^-1) Y[i,b] Y[j,a]  (i < j, a < b)

read as rewrite rules from left to right.
"""

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .coeff import LaurentPoly, RationalFunction, Q, specialize_q
from .errors import IndexOutOfRange, ShapeMismatch, ZeroSpecialization

__all__ = [
    "AlgebraShape",
    "ExactField",
    "SpecializedField",
    "QuantumMatrixAlgebra",
    "Element",
    "Relation",
    "straighten_word",
    "multiply",
    "homogeneous_component",
    "monomial_count",
    "monomial_text",
]


@dataclass(frozen=True)
class AlgebraShape:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"shape must be at least 1x1, got {self.m}x{self.n}")

    @property
    def ngens(self):
        return self.m * self.n

    @property
    def is_square(self):
        return self.m == self.n

    def generators(self):
        return [(i, a) for i in range(1, self.m + 1) for a in range(1, self.n + 1)]

    def index(self, i, a):
        if not (1 <= i <= self.m and 1 <= a <= self.n):
            raise IndexOutOfRange(f"Y[{i},{a}] is outside the {self.m}x{self.n} shape")
        return (i - 1) * self.n + (a - 1)

    def generator(self, k):
        return divmod(k, self.n)[0] + 1, k % self.n + 1

    def __str__(self):
        return f"{self.m}x{self.n}"


# -- scalar fields -------------------------------------------------------------

class ExactField:
    """Q(q) with q a formal parameter."""

    key = ("exact",)
    zero = RationalFunction.coerce(0)
    one = RationalFunction.coerce(1)
    q = Q

    def coerce(self, x):
        return RationalFunction.coerce(x)

    def specialize(self, x, v):
        return specialize_q(x, v)

    def __eq__(self, other):
        return isinstance(other, ExactField)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "ExactField()"


class SpecializedField:
    """Q with q replaced by a rational ``v`` that is not a root of unity."""

    # Fractions throughout, never ints, so "/" can not produce a float
    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, v):
        v = Fraction(v)
        if v == 0:
            raise ZeroSpecialization("q cannot be specialized to 0")
        if abs(v) == 1:
            raise ValueError(f"q = {v} is a root of unity")
        self.v = v
        self.q = v
        self.key = ("specialized", v)

    def coerce(self, x):
        if isinstance(x, (LaurentPoly, RationalFunction)):
            return Fraction(specialize_q(x, self.v))
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, SpecializedField) and other.v == self.v

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"SpecializedField({self.v})"


@dataclass(frozen=True)
class Relation:
    """One defining relation ``Y_b Y_a - (normal form) = 0`` in the free algebra.

    ``terms`` is a list of ``(coefficient, (x, y))`` with generator indices.
    """

    kind: int
    upper: tuple
    lower: tuple
    terms: tuple

    def label(self):
        (j, b), (i, a) = self.upper, self.lower
        return f"rel{self.kind}: Y[{j},{b}]*Y[{i},{a}]"


class QuantumMatrixAlgebra:
    """O_q(M_{m,n}) over a scalar field, with optional relation overrides.

    ``relation_coeffs`` may override the scalars ``row`` (relation 1),
    ``col`` (relation 2), ``cross`` (relation 3) and ``rect`` (the
    ``q - q^-1`` of relation 4). Overriding them builds a different, usually
    inconsistent, rewriting system; this exists for fault injection.
    """

    def __init__(self, m, n=None, field=None, relation_coeffs=None):
        self.shape = AlgebraShape(m, m if n is None else n)
        self.field = field if field is not None else ExactField()
        F = self.field
        q = F.q
        qinv = F.one / q
        coeffs = {"row": qinv, "col": qinv, "cross": F.one, "rect": q - qinv}
        for name, value in (relation_coeffs or {}).items():
            if name not in coeffs:
                raise KeyError(f"unknown relation coefficient {name!r}")
            coeffs[name] = F.coerce(value)
        self.coeffs = coeffs
        self._rules = self._build_rules()
        self._gen_cache = {}
        self._mono_cache = {}
        self._lock = threading.Lock()

    # -- identity ------------------------------------------------------------

    @property
    def m(self):
        return self.shape.m

    @property
    def n(self):
        return self.shape.n

    @property
    def key(self):
        return (self.shape, self.field.key,
                tuple(sorted((k, str(v)) for k, v in self.coeffs.items())))

    @property
    def is_exact(self):
        return isinstance(self.field, ExactField)

    def __eq__(self, other):
        return isinstance(other, QuantumMatrixAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"QuantumMatrixAlgebra({self.m}, {self.n}, field={self.field!r})"

    def specialized(self, v):
        """The same algebra with q specialised to ``v``."""
        F = SpecializedField(v)
        overrides = {k: F.coerce(c) for k, c in self.coeffs.items()}
        return QuantumMatrixAlgebra(self.m, self.n, field=F, relation_coeffs=overrides)

    # -- relations -------------------------------------------------------------

    def _build_rules(self):
        """Map (larger, smaller) generator index pairs to rewrite results."""
        c = self.coeffs
        rules = {}
        sh = self.shape
        N = sh.ngens
        for hi in range(N):
            j, b = sh.generator(hi)
            for lo in range(hi):
                i, a = sh.generator(lo)
                if i == j:
                    rules[hi, lo] = (1, ((c["row"], (lo, hi)),))
                elif a == b:
                    rules[hi, lo] = (2, ((c["col"], (lo, hi)),))
                elif a > b:
                    rules[hi, lo] = (3, ((c["cross"], (lo, hi)),))
                else:
                    other = ((sh.index(i, b), sh.index(j, a)))
                    rules[hi, lo] = (4, ((self.field.one, (lo, hi)), (-c["rect"], other)))
        return rules

    def relations(self):
        """All defining relations as free-algebra combinations equal to 0."""
        out = []
        one = self.field.one
        for (hi, lo), (kind, rhs) in sorted(self._rules.items()):
            terms = [(one, (hi, lo))] + [(-cf, word) for cf, word in rhs]
            out.append(Relation(kind, self.shape.generator(hi), self.shape.generator(lo),
                                tuple(terms)))
        return out

    def rewrite_pair(self, hi, lo):
        """Rewrite ``Y_hi * Y_lo`` (hi > lo, internal indices)."""
        return self._rules[hi, lo][1]

    # -- constructors ------------------------------------------------------------

    def _unit_mono(self):
        return (0,) * self.shape.ngens

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {self._unit_mono(): self.field.one})

    def scalar(self, c):
        c = self.field.coerce(c)
        return Element(self, {self._unit_mono(): c} if c else {})

    def q(self):
        return self.scalar(self.field.q)

    def gen(self, i, a):
        k = self.shape.index(i, a)
        mono = [0] * self.shape.ngens
        mono[k] = 1
        return Element(self, {tuple(mono): self.field.one})

    def generators(self):
        return [self.gen(i, a) for i, a in self.shape.generators()]

    def monomial(self, exponents, coeff=None):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != self.shape.ngens or min(exponents, default=0) < 0:
            raise ValueError(f"bad exponent vector {exponents}")
        c = self.field.one if coeff is None else self.field.coerce(coeff)
        return Element(self, {exponents: c} if c else {})

    def word(self, word):
        """Product of generators ``[(i, a), ...]`` in the given order."""
        result = self.one()
        for i, a in word:
            result = result * self.gen(i, a)
        return result

    def element(self, terms):
        """Element from ``{exponent tuple: scalar}`` (already ordered monomials)."""
        F = self.field
        clean = {}
        for mono, c in terms.items():
            c = F.coerce(c)
            if c:
                clean[tuple(mono)] = c
        return Element(self, clean)

    # -- straightening core --------------------------------------------------------

    def _mono_times_gen(self, mono, g):
        key = (mono, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        last = len(mono) - 1
        while last >= 0 and not mono[last]:
            last -= 1
        if last <= g:
            new = list(mono)
            new[g] += 1
            result = {tuple(new): self.field.one}
        else:
            prefix = list(mono)
            prefix[last] -= 1
            prefix = tuple(prefix)
            result = {}
            for cf, (x, y) in self._rules[last, g][1]:
                for m1, c1 in self._mono_times_gen(prefix, x).items():
                    c1 = cf * c1
                    for m2, c2 in self._mono_times_gen(m1, y).items():
                        s = result.get(m2)
                        s = c1 * c2 if s is None else s + c1 * c2
                        if s:
                            result[m2] = s
                        else:
                            result.pop(m2, None)
        # racing writers store equal values, so no lock is needed for reads
        self._gen_cache[key] = result
        return result

    def _mono_times_mono(self, ma, mb):
        key = (ma, mb)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        current = {ma: self.field.one}
        for g, e in enumerate(mb):
            for _ in range(e):
                nxt = {}
                for m, c in current.items():
                    for m2, c2 in self._mono_times_gen(m, g).items():
                        s = nxt.get(m2)
                        s = c * c2 if s is None else s + c * c2
                        if s:
                            nxt[m2] = s
                        else:
                            nxt.pop(m2, None)
                current = nxt
        self._mono_cache[key] = current
        return current

    def clear_cache(self):
        with self._lock:
            self._gen_cache.clear()
            self._mono_cache.clear()


def _accumulate(out, mono, c):
    s = out.get(mono)
    s = c if s is None else s + c
    if s:
        out[mono] = s
    else:
        out.pop(mono, None)


def monomial_text(mono, shape):
    parts = []
    for k, e in enumerate(mono):
        if e:
            i, a = shape.generator(k)
            parts.append(f"Y[{i},{a}]" if e == 1 else f"Y[{i},{a}]^{e}")
    return "*".join(parts)


def _scalar_parts(c):
    """Split a scalar into (negative, text, compound) for printing."""
    if isinstance(c, RationalFunction):
        num = c.num
        neg = num.leading_coefficient() < 0
        if neg:
            num = -num
        if c.is_polynomial():
            compound = len(num.terms) > 1
            return neg, str(num), compound
        return neg, f"({num})/({c.den})", False
    c = Fraction(c)
    return c < 0, str(abs(c)), False


def _sort_key(mono):
    return (sum(mono), mono)


class Element:
    """An element of O_q(M_{m,n}) in PBW normal form.

    Immutable by convention. Supports ``+ - *`` with other elements and with
    scalars, ``**`` with nonnegative integer exponents, and exact equality.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self._terms = terms

    # -- inspection -------------------------------------------------------------

    @property
    def shape(self):
        return self.algebra.shape

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """(monomial, coefficient) pairs in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _sort_key(t[0]), reverse=True)

    def monomials(self):
        return [m for m, _ in self.items()]

    def coefficient(self, mono):
        return self._terms.get(tuple(mono), self.algebra.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def degree(self):
        """Total degree of the highest nonzero component; -1 for zero."""
        return max((sum(m) for m in self._terms), default=-1)

    def low_degree(self):
        return min((sum(m) for m in self._terms), default=-1)

    def degrees(self):
        return sorted({sum(m) for m in self._terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def is_scalar(self):
        return all(not any(m) for m in self._terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError("element is not a scalar")
        return self._terms.get(self.algebra._unit_mono(), self.algebra.field.zero)

    def homogeneous_component(self, d):
        return Element(self.algebra, {m: c for m, c in self._terms.items() if sum(m) == d})

    def multidegree(self, mono):
        """Row and column contents of a monomial."""
        sh = self.shape
        rows = [0] * sh.m
        cols = [0] * sh.n
        for k, e in enumerate(mono):
            if e:
                rows[k // sh.n] += e
                cols[k % sh.n] += e
        return tuple(rows), tuple(cols)

    def multidegrees(self):
        return sorted({self.multidegree(m) for m in self._terms})

    def multihomogeneous_component(self, md):
        return Element(self.algebra,
                       {m: c for m, c in self._terms.items() if self.multidegree(m) == md})

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if other.algebra is self.algebra:
            return
        if other.algebra.shape != self.algebra.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape} differ")
        if other.algebra != self.algebra:
            raise ValueError("elements live in different algebras (field or relations differ)")

    def _lift(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        try:
            return self.algebra.scalar(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            _accumulate(out, m, c)
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = self.algebra.field.coerce(c)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        alg = self.algebra
        out = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                c = ca * cb
                for m, cm in alg._mono_times_mono(ma, mb).items():
                    _accumulate(out, m, c * cm)
        return Element(alg, out)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("elements only have nonnegative integer powers")
        result = self.algebra.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            if other.algebra.shape != self.algebra.shape:
                return False
            return self._terms == other._terms
        try:
            return self._terms == self.algebra.scalar(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.algebra.shape, frozenset(self._terms.items())))

    # -- conversions ---------------------------------------------------------------

    def specialize(self, v):
        """Image under q -> v, living in ``algebra.specialized(v)``."""
        target = self.algebra.specialized(v)
        return target.element({m: specialize_q(c, v) for m, c in self._terms.items()})

    def to_text(self):
        """Canonical text: graded-lex descending, ``coeff*Y[i,a]^e*...``."""
        if not self._terms:
            return "0"
        items = self.items()
        sh = self.shape
        if len(items) == 1 and not any(items[0][0]):
            c = items[0][1]
            return str(c)
        out = []
        for mono, c in items:
            neg, text, compound = _scalar_parts(c)
            mtext = monomial_text(mono, sh)
            if compound:
                text = f"({text})"
            if not mtext:
                body = text
            elif text == "1":
                body = mtext
            else:
                body = f"{text}*{mtext}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    __str__ = to_text

    def __repr__(self):
        return f"Element({self.to_text()})"


# -- module-level operations ---------------------------------------------------------

def straighten_word(word, algebra, strategy="leftmost", rng=None):
    """Normal form of a product of generators by direct word rewriting.

    ``word`` is a sequence of ``(i, a)`` pairs. Each step picks an adjacent
    out-of-order pair (leftmost, rightmost or random per ``strategy``) and
    replaces it with the right-hand side of its relation. This is the
    reference route; :func:`multiply` uses a memoised equivalent.
    """
    sh = algebra.shape
    start = tuple(sh.index(i, a) for i, a in word)
    if rng is None:
        rng = random.Random(0)
    pending = {start: algebra.field.one}
    result = {}
    while pending:
        nxt = {}
        for w, c in pending.items():
            inversions = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
            if not inversions:
                mono = [0] * sh.ngens
                for g in w:
                    mono[g] += 1
                _accumulate(result, tuple(mono), c)
                continue
            if strategy == "leftmost":
                k = inversions[0]
            elif strategy == "rightmost":
                k = inversions[-1]
            elif strategy == "random":
                k = rng.choice(inversions)
            else:
                raise ValueError(f"unknown strategy {strategy!r}")
            for cf, (x, y) in algebra.rewrite_pair(w[k], w[k + 1]):
                _accumulate(nxt, w[:k] + (x, y) + w[k + 2:], c * cf)
        pending = nxt
    return Element(algebra, result)


def multiply(a, b):
    if a.algebra.shape != b.algebra.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a * b


def homogeneous_component(x, d):
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return x.homogeneous_component(d)


def monomial_count(shape, d):
    """Dimension of the degree-``d`` component: PBW monomials in m*n letters."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return comb(d + shape.ngens - 1, d)
