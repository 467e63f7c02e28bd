"""Exact coefficient fields and Gauss-Jordan elimination over them.

Vectors are plain lists, matrices are lists of row lists.  Nothing here
touches floating point: the rationals use ``int`` where possible and
``fractions.Fraction`` otherwise, prime fields use reduced ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class RationalField:
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, int):
            return int(x)
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} to an exact rational")

    def reduce(self, x):
        return x

    def div(self, a, b):
        if type(a) is int and type(b) is int:
            q, r = divmod(a, b)
            if not r:
                return q
            return Fraction(a, b)
        r = Fraction(a) / b
        return r.numerator if r.denominator == 1 else r

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(0)

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        self.characteristic = p

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} to GF({p})")

    def reduce(self, x):
        return x % self.characteristic

    def div(self, a, b):
        p = self.characteristic
        return a * pow(b, -1, p) % p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(self.characteristic)

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = RationalField()


def field_for(characteristic: int):
    """Return QQ for characteristic 0, otherwise the prime field."""
    return QQ if characteristic == 0 else PrimeField(characteristic)


# -- elimination ------------------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int, field=QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a copy of ``rows``.

    Returns ``(nonzero_rows, pivot_columns)``; pivots are taken as the first
    nonzero entry found going down each column.
    """
    m = [list(r) for r in rows]
    red = field.reduce
    div = field.div
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not m[p][c]:
            p += 1
        if p == nrows:
            continue
        m[r], m[p] = m[p], m[r]
        row = m[r]
        piv = row[c]
        if piv != 1:
            row = [div(x, piv) if x else x for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [red(x - f * y) if y else x for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int, field=QQ) -> int:
    if not rows or not ncols:
        return 0
    return len(rref(rows, ncols, field)[1])


def kernel(rows: Sequence[Sequence], ncols: int, field=QQ) -> tuple[list[list], list[int]]:
    """Basis of {x : rows . x = 0} together with its free columns.

    Basis vector ``k`` is 1 at free column ``free[k]`` and 0 at every other
    free column, so the coordinates of a kernel vector in this basis are just
    its entries at the free columns.
    """
    if not rows:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)], list(range(ncols))
    red, pivots = rref(rows, ncols, field)
    pset = set(pivots)
    free = [c for c in range(ncols) if c not in pset]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            x = row[f]
            if x:
                v[pc] = field.reduce(-x)
        basis.append(v)
    return basis, free


def nullspace(rows: Sequence[Sequence], ncols: int, field=QQ) -> list[list]:
    return kernel(rows, ncols, field)[0]


def column_space_complement(cols: Sequence[Sequence], dim: int, field=QQ) -> tuple[list[list], list[int], list[int]]:
    """Echelon data for the span of ``cols`` inside ``field^dim``.

    Returns ``(echelon_rows, pivots, complement)`` where ``complement`` lists
    standard basis indices whose unit vectors span a complement of the span.
    """
    if not cols:
        return [], [], list(range(dim))
    red, piv = rref(cols, dim, field)
    pset = set(piv)
    return red, piv, [c for c in range(dim) if c not in pset]


def reduce_against(vec: Sequence, echelon: Sequence[Sequence], pivots: Sequence[int], field=QQ) -> list:
    """Subtract multiples of reduced echelon rows so ``vec`` vanishes at every pivot."""
    v = list(vec)
    red = field.reduce
    for row, pc in zip(echelon, pivots):
        f = v[pc]
        if f:
            v = [red(x - f * y) if y else x for x, y in zip(v, row)]
    return v


def transpose(m: Sequence[Sequence], nrows: int, ncols: int) -> list[list]:
    if nrows == 0:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int, ncols: int, field=QQ) -> list[list]:
    """Product of an ``len(a) x inner`` and an ``inner x ncols`` matrix."""
    red = field.reduce
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                acc = [s + x * y for s, y in zip(acc, b[k])]
        out.append([red(s) for s in acc] if field.characteristic else acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence, field=QQ) -> list:
    red = field.reduce
    return [red(sum(x * y for x, y in zip(row, v) if x and y)) for row in a]


def zero_matrix(nrows: int, ncols: int) -> list[list]:
    return [[0] * ncols for _ in range(nrows)]


def identity_matrix(n: int) -> list[list]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
