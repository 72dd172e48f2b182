"""Reference implementations that share no code with the engine's rewriting.

The relations are written out by hand from their defining formulas, and
the minor oracle straightens words with sympy coefficients using its own
leftmost rewriter.
"""

from itertools import permutations, product

import sympy
from sympy.combinatorics import Permutation

from qmatrix import Q

qs = sympy.Symbol("q")


def relation_instances(m, n):
    """Yield ``(upper, lower, expected)``: ``Y_upper * Y_lower`` equals the
    linear combination ``expected = [(coeff in Q(q), [(i,a), (j,b)]), ...]``
    of ordered words."""
    gens = list(product(range(1, m + 1), range(1, n + 1)))
    for (i, a), (j, b) in product(gens, gens):
        if (i, a) >= (j, b):
            continue
        if i == j:
            yield (j, b), (i, a), [(1 / Q, [(i, a), (j, b)])]
        elif a == b:
            yield (j, b), (i, a), [(1 / Q, [(i, a), (j, b)])]
        elif a > b:
            yield (j, b), (i, a), [(1, [(i, a), (j, b)])]
        else:
            yield (j, b), (i, a), [(1, [(i, a), (j, b)]), (-(Q - 1 / Q), [(i, b), (j, a)])]


def _rewrite_pair(x, y):
    """Y_x Y_y with x > y as a list of (sympy coeff, (first, second))."""
    (j, b), (i, a) = x, y
    if i == j or a == b:
        return [(1 / qs, (y, x))]
    if a > b:
        return [(sympy.Integer(1), (y, x))]
    return [(sympy.Integer(1), (y, x)), (-(qs - 1 / qs), ((i, b), (j, a)))]


def naive_straighten(words):
    """Normal form of ``{word tuple: sympy coeff}`` as ``{sorted word: coeff}``."""
    todo = dict(words)
    done = {}
    while todo:
        w, c = todo.popitem()
        k = next((k for k in range(len(w) - 1) if w[k] > w[k + 1]), None)
        if k is None:
            done[w] = sympy.simplify(done.get(w, 0) + c)
            continue
        for cf, pair in _rewrite_pair(w[k], w[k + 1]):
            nw = w[:k] + pair + w[k + 2:]
            todo[nw] = todo.get(nw, 0) + c * cf
    return {w: c for w, c in done.items() if sympy.simplify(c) != 0}


def brute_minor(rows, cols):
    """Sum over S_t of (-q)^inv(w) Y[r1, c_w(1)] ... Y[rt, c_w(t)], straightened."""
    t = len(rows)
    words = {}
    for w in permutations(range(t)):
        inv = Permutation(list(w)).inversions()
        word = tuple((rows[k], cols[w[k]]) for k in range(t))
        words[word] = words.get(word, 0) + (-qs) ** inv
    return naive_straighten(words)


def rf_to_sympy(c):
    """Engine scalar (RationalFunction or rational) to a sympy expression."""
    if hasattr(c, "num"):
        num = sum(sympy.Rational(str(v)) * qs**e for e, v in c.num.items())
        den = sum(sympy.Rational(str(v)) * qs**e for e, v in c.den.items())
        return num / den
    return sympy.Rational(str(c))


def engine_to_words(x):
    """Engine element as ``{sorted word: sympy coeff}``."""
    sh = x.algebra.shape
    out = {}
    for mono, c in x.items():
        word = []
        for k, e in enumerate(mono):
            word += [sh.generator(k)] * e
        out[tuple(word)] = rf_to_sympy(c)
    return out


def words_equal(a, b):
    keys = set(a) | set(b)
    return all(sympy.simplify(a.get(k, 0) - b.get(k, 0)) == 0 for k in keys)
