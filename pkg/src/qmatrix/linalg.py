"""Sparse exact Gaussian elimination over any field whose elements support
``+ - * /`` and truthiness (``Fraction``, :class:`RationalFunction`).

Vectors are dicts ``column -> nonzero scalar``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import AmbientMismatch

__all__ = [
    "rref",
    "kernel",
    "solve",
    "reduce_vector",
    "LinearSpace",
    "Comparison",
    "compare_spaces",
]


def _axpy(target, factor, row):
    """target -= factor * row, in place."""
    for col, val in row.items():
        s = target.get(col)
        s = -factor * val if s is None else s - factor * val
        if s:
            target[col] = s
        else:
            target.pop(col, None)


def _inverse(x):
    if hasattr(x, "inverse"):
        return x.inverse()
    return Fraction(1) / x


def reduce_vector(vec, pivots):
    """Reduce ``vec`` against RREF rows ``pivots`` (``{pivot col: row}``)."""
    r = dict(vec)
    for p in [p for p in r if p in pivots]:
        f = r.get(p)
        if f:
            _axpy(r, f, pivots[p])
    return r


def rref(rows, track=False):
    """Reduced row echelon form.

    Returns ``(pivot_rows, pivot_cols)``; pivot rows are listed in ascending
    pivot order. With ``track=True`` also returns the input positions of the
    rows that contributed a new pivot (they span the row space).
    """
    pivots = {}
    used = []
    for k, row in enumerate(rows):
        r = reduce_vector(row, pivots)
        if not r:
            continue
        lead = min(r)
        inv = _inverse(r[lead])
        r = {c: v * inv for c, v in r.items()}
        for p, prow in pivots.items():
            f = prow.get(lead)
            if f:
                _axpy(prow, f, r)
        pivots[lead] = r
        used.append(k)
    cols = sorted(pivots)
    out = [pivots[c] for c in cols]
    if track:
        return out, cols, used
    return out, cols


def kernel(rows, ncols, one=1):
    """Canonical (RREF) basis of ``{x : row . x = 0 for all rows}``."""
    reduced, pcols = rref(rows)
    pset = set(pcols)
    vectors = []
    for f in range(ncols):
        if f in pset:
            continue
        v = {f: one}
        for p, prow in zip(pcols, reduced):
            c = prow.get(f)
            if c:
                v[p] = -c
        vectors.append(v)
    return rref(vectors)[0]


def solve(rows, rhs, ncols):
    """One solution of ``rows . x = rhs`` or ``None`` when inconsistent.

    ``rhs`` is a list of scalars aligned with ``rows``. Free variables are
    set to zero.
    """
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    reduced, pcols = rref(aug)
    if ncols in pcols:
        return None
    x = {}
    for p, prow in zip(pcols, reduced):
        c = prow.get(ncols)
        if c:
            x[p] = c
    return x


class LinearSpace:
    """Subspace of the coordinate space on ``coords`` with a canonical basis.

    The basis is kept in reduced row echelon form with columns in the order
    of ``coords``, so two equal spaces have identical bases.
    """

    def __init__(self, coords, basis, description=None):
        self.coords = list(coords)
        self.description = description or {}
        self.basis, self.pivots = rref([dict(v) for v in basis])

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        return not reduce_vector(vec, dict(zip(self.pivots, self.basis)))

    def labelled(self, vec):
        return {self.coords[c]: v for c, v in sorted(vec.items())}

    def __eq__(self, other):
        return (isinstance(other, LinearSpace) and self.coords == other.coords
                and self.basis == other.basis)

    def __repr__(self):
        return f"LinearSpace(dim={self.dim}, ambient={len(self.coords)})"


@dataclass
class Comparison:
    relation: str  # "equal", "A<B", "B<A" or "incomparable"
    in_a_not_b: dict = None
    in_b_not_a: dict = None


def compare_spaces(A, B):
    """Decide inclusion between two subspaces of the same ambient space.

    Witnesses are basis vectors of one space that reduce to nonzero modulo
    the other.
    """
    if A.coords != B.coords:
        raise AmbientMismatch("spaces live in different coordinate spaces")
    wa = next((v for v in A.basis if not B.contains(v)), None)
    wb = next((v for v in B.basis if not A.contains(v)), None)
    if wa is None and wb is None:
        rel = "equal"
    elif wa is None:
        rel = "A<B"
    elif wb is None:
        rel = "B<A"
    else:
        rel = "incomparable"
    return Comparison(rel, wa, wb)
