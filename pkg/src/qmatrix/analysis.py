"""q-commutation certificates, the center in bounded degree, graded
derivations and division by normal elements, all by exact linear algebra.

Every solver uses the Z^m x Z^n grading by row and column content: each
generator ``Y[i,a]`` has weight ``(e_i, e_a)`` and all four relations are
homogeneous for it, so commutators, Leibniz residuals and products by a
multihomogeneous element never mix weights. Systems therefore split into
small independent blocks.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .coeff import RationalFunction
from .errors import NoUniformTwist, NotInIdeal
from .linalg import LinearSpace, kernel, rref, solve
from .pbw import Element, ExactField, QuantumMatrixAlgebra, _sort_key

log = logging.getLogger(__name__)

__all__ = [
    "TwistCertificate",
    "DerivationCandidate",
    "q_commutation_twist",
    "is_normal_qcentral",
    "is_central",
    "conjugate_past_normal",
    "right_divide_by_normal",
    "monomials_of_degree",
    "monomials_of_multidegree",
    "center_basis",
    "graded_derivation_space",
    "inner_derivation",
    "inner_derivation_space",
    "derivation_vector",
    "DEFAULT_SPECIALIZATIONS",
    "space_elements",
    "space_derivations",
    "vector_to_derivation",
]

DEFAULT_SPECIALIZATIONS = (2, 3, 5)


# -- q-commutation -------------------------------------------------------------

def _q_exponent(ratio, F):
    """Integer k with ratio == q^k in the field ``F``, else None."""
    if isinstance(F, ExactField):
        mono = RationalFunction.coerce(ratio).as_monomial()
        if mono is None or mono[0] != 1:
            return None
        return mono[1]
    ratio = Fraction(ratio)
    if ratio <= 0 and F.v > 0:
        return None
    k = round(math.log(abs(ratio)) / math.log(abs(F.v)))
    return k if F.v**k == ratio else None


def _as_generator(algebra, g):
    if isinstance(g, Element):
        mono = g.monomials()
        if len(mono) != 1 or sum(mono[0]) != 1 or g.coefficient(mono[0]) != 1:
            raise ValueError(f"{g} is not a generator")
        return algebra.shape.generator(mono[0].index(1))
    return tuple(g)


def q_commutation_twist(u, g):
    """The integer k with ``u * g == q^k * g * u``.

    The candidate k is read off one monomial of ``g * u`` and then checked
    on the whole product. Raises NoUniformTwist when no such k exists.
    """
    if not u:
        raise ValueError("u must be nonzero")
    alg = u.algebra
    i, a = _as_generator(alg, g)
    gen = alg.gen(i, a)
    ug = u * gen
    gu = gen * u
    mono, c1 = gu.items()[0]
    c2 = ug.coefficient(mono)
    k = _q_exponent(c2 / c1, alg.field) if c2 else None
    if k is None or ug != gu.scale(alg.field.q ** k):
        raise NoUniformTwist(f"{u} does not q-commute with Y[{i},{a}]", generator=(i, a))
    return k


@dataclass
class TwistCertificate:
    """``element * Y[i,a] == q^twists[(i,a)] * Y[i,a] * element`` for all generators."""

    element: Element
    twists: dict

    def verify(self):
        u = self.element
        alg = u.algebra
        q = alg.field.q
        for (i, a), k in self.twists.items():
            g = alg.gen(i, a)
            if u * g != (g * u).scale(q ** k):
                return False
        return True

    def to_json(self):
        return {
            "element": self.element.to_text(),
            "twists": [{"generator": [i, a], "k": k} for (i, a), k in sorted(self.twists.items())],
            "verified": self.verify(),
        }


def is_normal_qcentral(u):
    """Certificate that ``u`` q-commutes with every generator.

    Raises NoUniformTwist (carrying the first failing generator) otherwise;
    that rules out q-centrality only, not normality.
    """
    twists = {g: q_commutation_twist(u, g) for g in u.algebra.shape.generators()}
    return TwistCertificate(u, twists)


def is_central(u):
    alg = u.algebra
    return all(u * g == g * u for g in alg.generators())


def conjugate_past_normal(cert, x):
    """The element ``x'`` with ``x * u == u * x'``, read off the twist table."""
    u = cert.element
    alg = u.algebra
    q = alg.field.q
    sh = alg.shape
    ks = [cert.twists[g] for g in sh.generators()]
    out = {}
    for mono, c in x.items():
        total = sum(e * k for e, k in zip(mono, ks))
        out[mono] = c * q ** (-total)
    xp = alg.element(out)
    if x * u != u * xp:
        raise ArithmeticError("conjugation identity failed to re-verify")
    return xp


# -- monomial enumeration ------------------------------------------------------------

def monomials_of_degree(shape, d):
    N = shape.ngens
    out = []
    for combo in combinations_with_replacement(range(N), d):
        mono = [0] * N
        for g in combo:
            mono[g] += 1
        out.append(tuple(mono))
    return sorted(out, key=_sort_key, reverse=True)


def monomials_of_multidegree(shape, rows, cols):
    """Exponent matrices with the given row and column sums."""
    m, n = shape.m, shape.n
    if sum(rows) != sum(cols) or min(rows + cols, default=0) < 0:
        return []
    out = []

    def fill(i, colleft, acc):
        if i == m:
            if not any(colleft):
                out.append(tuple(acc))
            return
        for row in _compositions(rows[i], colleft):
            fill(i + 1, [c - r for c, r in zip(colleft, row)], acc + list(row))

    fill(0, list(cols), [])
    return sorted(out, key=_sort_key, reverse=True)


def _compositions(total, caps):
    if len(caps) == 1:
        if total <= caps[0]:
            yield (total,)
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - first, caps[1:]):
            yield (first,) + rest


def _multidegree(shape, mono):
    rows = [0] * shape.m
    cols = [0] * shape.n
    for k, e in enumerate(mono):
        if e:
            rows[k // shape.n] += e
            cols[k % shape.n] += e
    return tuple(rows), tuple(cols)


# -- block solver --------------------------------------------------------------------

def _columns_to_rows(columns):
    """Transpose column dicts ``{row label: value}`` to sparse rows."""
    labels = {}
    rows = []
    for j, col in enumerate(columns):
        for label, v in col.items():
            r = labels.get(label)
            if r is None:
                r = labels[label] = len(rows)
                rows.append({})
            rows[r][j] = v
    return rows, list(labels)


def _block_kernel(build_columns, algebra, mode):
    """Kernel of the linear map whose columns ``build_columns(alg)`` returns.

    ``mode`` is ``"exact"`` or a rational ``v``. In specialized mode the
    pivot structure and an independent row set are found at ``q = v``; the
    kernel is then re-derived over Q(q) from that square subsystem and
    checked against every exact row. A failed check falls back to full
    exact elimination.
    """
    exact_cols = build_columns(algebra)
    ncols = len(exact_cols)
    rows, labels = _columns_to_rows(exact_cols)
    one = algebra.field.one
    if mode == "exact" or not rows:
        return kernel(rows, ncols, one)
    spec_cols = build_columns(algebra.specialized(mode))
    srows, slabels = _columns_to_rows(spec_cols)
    _, pcols, used = rref(srows, track=True)
    index = {lab: r for r, lab in enumerate(labels)}
    chosen = [rows[index[slabels[r]]] for r in used]
    pset = set(pcols)
    free = [f for f in range(ncols) if f not in pset]
    basis = []
    ok = True
    # pivot columns first so the pivot block reduces to the identity
    order = pcols + free
    pos = {c: k for k, c in enumerate(order)}
    sub = [{pos[c]: v for c, v in row.items()} for row in chosen]
    reduced, subpiv = rref(sub)
    if subpiv != list(range(len(pcols))):
        ok = False
    else:
        for f in free:
            vec = {f: one}
            for p, prow in zip(pcols, reduced):
                c = prow.get(pos[f])
                if c:
                    vec[p] = -c
            basis.append(vec)
        for row in rows:
            for vec in basis:
                s = sum((row[c] * v for c, v in vec.items() if c in row), algebra.field.zero)
                if s:
                    ok = False
                    break
            if not ok:
                break
    if not ok:
        log.warning("specialization at q=%s was not generic; falling back to exact elimination", mode)
        return kernel(rows, ncols, one)
    return rref(basis)[0]


def _exact(algebra):
    if algebra.is_exact:
        return algebra
    raise ValueError("solvers work over the exact algebra; pass mode=v to specialize")


def _algebra(n_or_algebra):
    if isinstance(n_or_algebra, QuantumMatrixAlgebra):
        return n_or_algebra
    return QuantumMatrixAlgebra(n_or_algebra)


# -- center ------------------------------------------------------------------------

def center_basis(n_or_algebra, maxdeg, mode="exact"):
    """Basis of the central elements of degree <= ``maxdeg``.

    Coordinates are all monomials of degree <= ``maxdeg`` in descending
    graded-lex order; the basis is in RREF over Q(q).
    """
    alg = _exact(_algebra(n_or_algebra))
    sh = alg.shape
    coords = [m for d in range(maxdeg, -1, -1) for m in monomials_of_degree(sh, d)]
    index = {m: k for k, m in enumerate(coords)}
    blocks = {}
    for m in coords:
        blocks.setdefault(_multidegree(sh, m), []).append(m)
    basis = []
    for monos in blocks.values():
        def build(a, monos=monos):
            cols = []
            gens = a.generators()
            for mono in monos:
                x = a.monomial(mono)
                col = {}
                for k, g in enumerate(gens):
                    for mm, c in (x * g - g * x).terms.items():
                        col[k, mm] = c
                cols.append(col)
            return cols

        for vec in _block_kernel(build, alg, mode):
            basis.append({index[monos[j]]: v for j, v in vec.items()})
    space = LinearSpace(coords, basis, {"kind": "center", "shape": str(sh), "maxdeg": maxdeg,
                                        "mode": "exact" if mode == "exact" else f"q={mode}"})
    return space


def space_elements(space, algebra):
    """Basis vectors of a space with monomial coordinates, as elements."""
    return [algebra.element({space.coords[c]: v for c, v in vec.items()}) for vec in space.basis]


# -- derivations --------------------------------------------------------------------

@dataclass
class DerivationCandidate:
    """A linear map given on generators, extended by the Leibniz rule."""

    algebra: QuantumMatrixAlgebra
    images: dict = field(default_factory=dict)

    def image(self, i, a):
        return self.images.get((i, a)) or self.algebra.zero()

    def apply(self, x):
        """d(x) for ``x`` in PBW form: sum over positions of the word."""
        alg = self.algebra
        sh = alg.shape
        out = alg.zero()
        for mono, c in x.items():
            word = [g for g, e in enumerate(mono) for _ in range(e)]
            for pos, g in enumerate(word):
                left = alg.word([sh.generator(h) for h in word[:pos]])
                right = alg.word([sh.generator(h) for h in word[pos + 1:]])
                out = out + (left * self.image(*sh.generator(g)) * right).scale(c)
        return out

    def residuals(self):
        """Leibniz image of every defining relation; all zero for a derivation."""
        alg = self.algebra
        sh = alg.shape
        gens = alg.generators()
        out = []
        for rel in alg.relations():
            r = alg.zero()
            for c, (x, y) in rel.terms:
                dx = self.image(*sh.generator(x))
                dy = self.image(*sh.generator(y))
                r = r + (dx * gens[y] + gens[x] * dy).scale(c)
            out.append((rel, r))
        return out

    def is_derivation(self):
        return all(not r for _, r in self.residuals())

    def to_json(self):
        return {f"Y[{i},{a}]": img.to_text() for (i, a), img in sorted(self.images.items()) if img}


def _derivation_coords(sh, degree):
    monos = monomials_of_degree(sh, degree)
    return [(g, m) for g in sh.generators() for m in monos]


def derivation_vector(d, coords):
    index = {c: k for k, c in enumerate(coords)}
    vec = {}
    for g, img in d.images.items():
        for mono, c in img.terms.items():
            vec[index[g, mono]] = c
    return vec


def vector_to_derivation(vec, coords, algebra):
    images = {}
    for k, v in vec.items():
        g, mono = coords[k]
        images.setdefault(g, {})[mono] = v
    return DerivationCandidate(algebra, {g: algebra.element(t) for g, t in images.items()})


def graded_derivation_space(n_or_algebra, shift=1, mode="exact"):
    """All maps ``d`` with ``d(Y) in R_{1+shift}`` satisfying the Leibniz
    rule on every defining relation.

    Unknowns are split by torus weight ``multidegree(M) - multidegree(Y)``.
    """
    alg = _exact(_algebra(n_or_algebra))
    sh = alg.shape
    deg = 1 + shift
    coords = _derivation_coords(sh, deg)
    index = {c: k for k, c in enumerate(coords)}
    blocks = {}
    for g, mono in coords:
        rows, cols = _multidegree(sh, mono)
        i, a = g
        w = (tuple(r - (k == i - 1) for k, r in enumerate(rows)),
             tuple(c - (k == a - 1) for k, c in enumerate(cols)))
        blocks.setdefault(w, []).append((g, mono))

    basis = []
    for unknowns in blocks.values():
        def build(a, unknowns=unknowns):
            gens = a.generators()
            rels = a.relations()
            cols = []
            for (gi, ga), mono in unknowns:
                gidx = sh.index(gi, ga)
                M = a.monomial(mono)
                col = {}
                for r, rel in enumerate(rels):
                    acc = a.zero()
                    for c, (x, y) in rel.terms:
                        if x == gidx:
                            acc = acc + (M * gens[y]).scale(c)
                        if y == gidx:
                            acc = acc + (gens[x] * M).scale(c)
                    for mm, v in acc.terms.items():
                        col[r, mm] = v
                cols.append(col)
            return cols

        for vec in _block_kernel(build, alg, mode):
            basis.append({index[unknowns[j]]: v for j, v in vec.items()})
    return LinearSpace(coords, basis, {"kind": "derivations", "shape": str(sh), "shift": shift,
                                       "mode": "exact" if mode == "exact" else f"q={mode}"})


def inner_derivation(x):
    """ad_x : y -> x*y - y*x on the generators."""
    alg = x.algebra
    return DerivationCandidate(alg, {g: x * alg.gen(*g) - alg.gen(*g) * x
                                     for g in alg.shape.generators()})


def inner_derivation_space(n_or_algebra, shift=1):
    """Span of ad_M for all monomials M of degree ``shift``, in the
    coordinates of :func:`graded_derivation_space`."""
    alg = _exact(_algebra(n_or_algebra))
    sh = alg.shape
    coords = _derivation_coords(sh, 1 + shift)
    vecs = [derivation_vector(inner_derivation(alg.monomial(m)), coords)
            for m in monomials_of_degree(sh, shift)]
    return LinearSpace(coords, vecs, {"kind": "inner derivations", "shape": str(sh), "shift": shift})


def space_derivations(space, algebra):
    return [vector_to_derivation(v, space.coords, algebra) for v in space.basis]


# -- principal normal ideals -----------------------------------------------------------

def right_divide_by_normal(v, u):
    """``w`` with ``v == u * w``; raises NotInIdeal when none exists.

    ``u`` may be an Element or a TwistCertificate. For multihomogeneous
    ``u`` each weight component of ``v`` is solved separately; otherwise the
    unknowns range over the degree band forced by the grading.
    """
    if isinstance(u, TwistCertificate):
        u = u.element
    if not u:
        raise ValueError("cannot divide by zero")
    alg = v.algebra
    sh = alg.shape
    if not v:
        return alg.zero()
    umd = u.multidegrees()
    if len(umd) == 1:
        (urows, ucols), = umd
        w = alg.zero()
        for vrows, vcols in v.multidegrees():
            target_r = [a - b for a, b in zip(vrows, urows)]
            target_c = [a - b for a, b in zip(vcols, ucols)]
            if min(target_r + target_c) < 0:
                raise NotInIdeal(f"{v} is not in the ideal generated by {u}")
            monos = monomials_of_multidegree(sh, target_r, target_c)
            part = v.multihomogeneous_component((vrows, vcols))
            w = w + _solve_division(part, u, monos)
        return w
    lo = v.low_degree() - u.low_degree()
    hi = v.degree() - u.degree()
    if hi < 0 or lo > hi:
        raise NotInIdeal(f"{v} is not in the ideal generated by {u}")
    monos = [m for d in range(max(lo, 0), hi + 1) for m in monomials_of_degree(sh, d)]
    return _solve_division(v, u, monos)


def _solve_division(v, u, monos):
    alg = v.algebra
    if not monos:
        raise NotInIdeal(f"{v} is not in the ideal generated by {u}")
    cols = [(u * alg.monomial(m)).terms for m in monos]
    rows, labels = _columns_to_rows(cols)
    index = {lab: r for r, lab in enumerate(labels)}
    extra = [mm for mm in v.terms if mm not in index]
    if extra:
        raise NotInIdeal(f"{v} is not in the ideal generated by {u}")
    rhs = [v.coefficient(lab) for lab in labels]
    x = solve(rows, rhs, len(monos))
    if x is None:
        raise NotInIdeal(f"{v} is not in the ideal generated by {u}")
    w = alg.element({monos[j]: c for j, c in x.items()})
    if u * w != v:
        raise ArithmeticError("division result failed to re-verify")
    return w
