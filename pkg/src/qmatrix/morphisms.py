"""Maps given by generator images: application, relation checking,
composition, and the torus and transpose automorphisms."""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import NotRankOne, ShapeMismatch

__all__ = [
    "GeneratorMap",
    "MapReport",
    "TorusParam",
    "apply_map",
    "check_map",
    "identity_map",
    "torus_automorphism",
    "transpose_automorphism",
    "compose",
    "recognize_torus",
    "diagonal_scalars",
    "scalar_ratio",
    "graded_image_ok",
]

HOM = "hom"
ANTI = "anti"


class GeneratorMap:
    """A candidate (anti-)endomorphism fixed by the images of the generators.

    ``kind`` is ``"hom"`` or ``"anti"``. ``verified`` is only ever set by
    :func:`check_map`.
    """

    def __init__(self, algebra, images, kind=HOM):
        if kind not in (HOM, ANTI):
            raise ValueError(f"kind must be {HOM!r} or {ANTI!r}")
        gens = algebra.shape.generators()
        missing = [g for g in gens if g not in images]
        extra = [g for g in images if g not in gens]
        if missing or extra:
            raise ValueError(f"images must cover exactly the generators "
                             f"(missing {missing}, unexpected {extra})")
        for img in images.values():
            if img.algebra.shape != algebra.shape:
                raise ShapeMismatch("image lives in an algebra of another shape")
        self.algebra = algebra
        self.images = dict(images)
        self.kind = kind
        self.verified = False

    def image(self, i, a):
        return self.images[i, a]

    def __call__(self, x):
        return apply_map(self, x)

    def __eq__(self, other):
        return (isinstance(other, GeneratorMap) and self.kind == other.kind
                and self.images == other.images)

    def __repr__(self):
        return f"GeneratorMap({self.algebra.shape}, kind={self.kind!r}, verified={self.verified})"


@dataclass
class MapReport:
    passed: bool
    checked: int
    failures: list = field(default_factory=list)

    def to_json(self):
        return {"passed": self.passed, "checked": self.checked, "failures": self.failures}


@dataclass(frozen=True)
class TorusParam:
    """Row scalars ``a`` and column scalars ``b`` with ``b[-1] == 1``."""

    a: tuple
    b: tuple

    def __post_init__(self):
        if any(not x for x in self.a) or any(not x for x in self.b):
            raise ValueError("torus parameters must be nonzero")
        if self.b[-1] != 1:
            raise ValueError("the last column parameter is fixed to 1")

    @classmethod
    def from_free(cls, a, b_free):
        """Square-case ``h = (a_1..a_n, b_1..b_{n-1})``."""
        return cls(tuple(a), tuple(b_free) + (1,))

    def __mul__(self, other):
        return TorusParam(tuple(x * y for x, y in zip(self.a, other.a)),
                          tuple(x * y for x, y in zip(self.b, other.b)))


def apply_map(f, x):
    """Extend the generator images linearly and (anti-)multiplicatively."""
    if x.algebra.shape != f.algebra.shape:
        raise ShapeMismatch(f"map on {f.algebra.shape} applied to element of {x.shape}")
    alg = f.algebra
    sh = alg.shape
    imgs = [f.images[g] for g in sh.generators()]
    powers = {}

    def power(g, e):
        key = (g, e)
        if key not in powers:
            powers[key] = imgs[g] if e == 1 else power(g, e - 1) * imgs[g]
        return powers[key]

    result = alg.zero()
    for mono, c in x.items():
        order = range(len(mono)) if f.kind == HOM else reversed(range(len(mono)))
        term = alg.one()
        for g in order:
            if mono[g]:
                term = term * power(g, mono[g])
        result = result + term.scale(c)
    return result


def check_map(f):
    """Substitute the images into every defining relation.

    For an anti-homomorphism each product is reversed. Failures are
    reported as data; ``f.verified`` is set when all residuals vanish.
    """
    alg = f.algebra
    sh = alg.shape
    imgs = [f.images[g] for g in sh.generators()]
    failures = []
    relations = alg.relations()
    for rel in relations:
        residual = alg.zero()
        for c, (x, y) in rel.terms:
            prod = imgs[x] * imgs[y] if f.kind == HOM else imgs[y] * imgs[x]
            residual = residual + prod.scale(c)
        if residual:
            failures.append({"relation": rel.kind,
                             "indices": [list(rel.upper), list(rel.lower)],
                             "residual": residual.to_text()})
    report = MapReport(not failures, len(relations), failures)
    f.verified = report.passed
    return report


def identity_map(algebra):
    return GeneratorMap(algebra, {g: algebra.gen(*g) for g in algebra.shape.generators()})


def torus_automorphism(algebra, h):
    """``Y[i,a] -> a_i b_a Y[i,a]`` (``b_n = 1``)."""
    sh = algebra.shape
    if len(h.a) != sh.m or len(h.b) != sh.n:
        raise ShapeMismatch(f"torus parameter sizes {len(h.a)}, {len(h.b)} do not fit {sh}")
    images = {(i, a): algebra.gen(i, a).scale(h.a[i - 1] * h.b[a - 1])
              for i, a in sh.generators()}
    return GeneratorMap(algebra, images)


def transpose_automorphism(algebra):
    if not algebra.shape.is_square:
        raise ShapeMismatch("the transpose needs a square shape")
    return GeneratorMap(algebra, {(i, a): algebra.gen(a, i) for i, a in algebra.shape.generators()})


def compose(f, g):
    """The map ``f o g``; two anti maps compose to a homomorphism."""
    if f.algebra.shape != g.algebra.shape:
        raise ShapeMismatch("cannot compose maps on different shapes")
    kind = HOM if f.kind == g.kind else ANTI
    images = {gen: apply_map(f, img) for gen, img in g.images.items()}
    return GeneratorMap(f.algebra, images, kind)


def diagonal_scalars(f):
    """``{(i, a): lam}`` when every image is ``lam * Y[i,a]``, else ``None``."""
    out = {}
    for (i, a), img in f.images.items():
        gen = f.algebra.gen(i, a)
        lam = scalar_ratio(img, gen)
        if lam is None or not lam:
            return None
        out[i, a] = lam
    return out


def recognize_torus(lam, m=None, n=None):
    """Factor ``lam[i, a] = a_i * b_a`` with ``b_n = 1``.

    ``lam`` is a mapping ``(i, a) -> scalar`` or a list of rows. Raises
    NotRankOne naming a violated condition
    ``lam[i,a] lam[j,b] == lam[i,b] lam[j,a]``.
    """
    if not hasattr(lam, "items"):
        rows = [list(r) for r in lam]
        lam = {(i + 1, a + 1): v for i, r in enumerate(rows) for a, v in enumerate(r)}
    m = m or max(i for i, _ in lam)
    n = n or max(a for _, a in lam)
    for key in [(i, a) for i in range(1, m + 1) for a in range(1, n + 1)]:
        if key not in lam or not lam[key]:
            raise ValueError(f"entry {key} missing or zero")
    for i, j in combinations(range(1, m + 1), 2):
        for a, b in combinations(range(1, n + 1), 2):
            if lam[i, a] * lam[j, b] != lam[i, b] * lam[j, a]:
                raise NotRankOne(
                    f"lam[{i},{a}]*lam[{j},{b}] != lam[{i},{b}]*lam[{j},{a}]",
                    witness=(i, j, a, b))
    a_s = tuple(lam[i, n] for i in range(1, m + 1))
    b_s = tuple(lam[1, a] / lam[1, n] for a in range(1, n + 1))
    return TorusParam(a_s, b_s)


def scalar_ratio(x, y):
    """The scalar ``mu`` with ``x == mu * y``, or ``None``."""
    if not y:
        return None
    mono, cy = y.items()[0]
    mu = x.coefficient(mono) / cy
    if x == y.scale(mu):
        return mu
    return None


def graded_image_ok(f, x):
    """Image of homogeneous ``x`` of degree d has nothing below d and a
    nonzero degree-d part."""
    if not x or not x.is_homogeneous():
        raise ValueError("graded_image_ok needs a nonzero homogeneous element")
    d = x.degree()
    y = apply_map(f, x)
    return bool(y) and y.low_degree() == d
