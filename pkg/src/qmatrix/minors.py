"""Quantum minors, the staircase normal elements ``b_i`` and the
anti-endomorphism ``gamma``."""

from itertools import permutations, product

from .errors import IndexOutOfRange, SizeMismatch, ShapeMismatch

__all__ = [
    "inversions",
    "check_index_set",
    "complement",
    "quantum_minor",
    "quantum_determinant",
    "b_index_sets",
    "b_element",
    "normal_from_polynomial",
    "gamma_images",
    "gamma",
]


def inversions(w):
    """Length of a permutation given in one-line notation."""
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def check_index_set(s, bound, what="index set"):
    s = tuple(int(x) for x in s)
    if any(b <= a for a, b in zip(s, s[1:])):
        raise ValueError(f"{what} {list(s)} must be strictly increasing")
    for x in s:
        if not 1 <= x <= bound:
            raise IndexOutOfRange(f"{what} entry {x} outside [1, {bound}]")
    return s


def complement(s, n):
    s = set(s)
    return tuple(x for x in range(1, n + 1) if x not in s)


def quantum_minor(algebra, rows, cols):
    """[rows | cols] = sum over w in S_t of (-q)^l(w) Y[r1,c_w(1)] ... Y[rt,c_w(t)].

    The empty minor is 1.
    """
    rows = check_index_set(rows, algebra.m, "row set")
    cols = check_index_set(cols, algebra.n, "column set")
    if len(rows) != len(cols):
        raise SizeMismatch(f"minor needs equal sizes, got {len(rows)} rows and {len(cols)} columns")
    F = algebra.field
    minus_q = -F.q
    result = algebra.zero()
    for w in permutations(range(len(rows))):
        word = [(rows[k], cols[w[k]]) for k in range(len(rows))]
        result = result + algebra.word(word).scale(minus_q ** inversions(w))
    return result


def quantum_determinant(algebra):
    if not algebra.shape.is_square:
        raise ShapeMismatch("the quantum determinant needs a square shape")
    full = range(1, algebra.n + 1)
    return quantum_minor(algebra, full, full)


def b_index_sets(i, n):
    """Row and column sets of ``b_i``; ``b_{2n}`` is the empty minor."""
    if not 1 <= i <= 2 * n:
        raise IndexOutOfRange(f"b_{i} undefined for n = {n}; need 1 <= i <= {2 * n}")
    if i <= n:
        return tuple(range(1, i + 1)), tuple(range(n - i + 1, n + 1))
    return tuple(range(i - n + 1, n + 1)), tuple(range(1, 2 * n - i + 1))


def b_element(algebra, i):
    if not algebra.shape.is_square:
        raise ShapeMismatch("b_i is defined for square shapes")
    rows, cols = b_index_sets(i, algebra.n)
    return quantum_minor(algebra, rows, cols)


def normal_from_polynomial(algebra, poly):
    """Build ``u = sum a_I prod_j b_j^{i_j} b_{n+j}^{r_j - i_j}`` from ``V``.

    ``poly`` maps exponent tuples ``(i_1, ..., i_n)`` to rational
    coefficients; ``r_j`` is the degree of ``V`` in ``X_j``. Factors are
    multiplied for ascending ``j`` with ``b_{n+j}`` right after ``b_j``.
    """
    n = algebra.n
    terms = {tuple(k): c for k, c in poly.items() if c}
    for k in terms:
        if len(k) != n or min(k) < 0:
            raise ValueError(f"exponent {k} is not a point of N^{n}")
    if not terms:
        return algebra.zero()
    r = [max(k[j] for k in terms) for j in range(n)]
    b = {i: b_element(algebra, i) for i in range(1, 2 * n + 1)}
    u = algebra.zero()
    for k, c in terms.items():
        term = algebra.one()
        for j in range(1, n + 1):
            term = term * b[j] ** k[j - 1] * b[n + j] ** (r[j - 1] - k[j - 1])
        u = u + term.scale(c)
    return u


def gamma_images(algebra):
    """Generator images ``Y[i,a] -> (-q)^(i-a) [~a | ~i]``."""
    if not algebra.shape.is_square:
        raise ShapeMismatch("gamma is defined for square shapes")
    n = algebra.n
    minus_q = -algebra.field.q
    return {
        (i, a): quantum_minor(algebra, complement([a], n), complement([i], n)).scale(minus_q ** (i - a))
        for i, a in product(range(1, n + 1), repeat=2)
    }


def gamma(x, images=None):
    """Apply the anti-endomorphism: reverse each PBW word, then substitute."""
    from .morphisms import GeneratorMap, apply_map

    alg = x.algebra
    f = GeneratorMap(alg, images or gamma_images(alg), kind="anti")
    return apply_map(f, x)
