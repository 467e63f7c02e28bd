"""Dense exact matrices, permutation matrices and integer polynomials."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NonSquare, Singular
from .fields import QQ, rref


def _exact(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return _exact(Fraction(x))
    raise TypeError(f"{x!r} is not an exact rational")


class RationalMatrix:
    """Immutable dense matrix with arbitrary-precision rational entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(_exact(x) for x in row) for row in entries)
        if not data or not data[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows")
        self.rows = len(data)
        self.cols = ncols
        self._data = data

    @classmethod
    def _trusted(cls, data) -> RationalMatrix:
        m = object.__new__(cls)
        m._data = tuple(tuple(r) for r in data)
        m.rows = len(m._data)
        m.cols = len(m._data[0])
        return m

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls._trusted([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls._trusted([[0] * cols for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"RationalMatrix({self.to_lists()!r})"

    def __str__(self):
        cells = [[str(x) for x in r] for r in self._data]
        width = max(len(c) for r in cells for c in r)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix._trusted(
            [[_exact(x + y) for x, y in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix._trusted(
            [[_exact(x - y) for x, y in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix._trusted([[-x for x in r] for r in self._data])

    def scale(self, c) -> RationalMatrix:
        c = _exact(c)
        return RationalMatrix._trusted([[_exact(c * x) for x in r] for r in self._data])

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if isinstance(other, PermutationMatrix):
            other = other.to_matrix()
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        b = other._data
        n = other.cols
        out = []
        for row in self._data:
            acc = [0] * n
            for k, x in enumerate(row):
                if x:
                    acc = [s + x * y if y else s for s, y in zip(acc, b[k])]
            out.append([_exact(s) for s in acc])
        return RationalMatrix._trusted(out)

    def transpose(self) -> RationalMatrix:
        return RationalMatrix._trusted(list(zip(*self._data)))

    @property
    def T(self) -> RationalMatrix:
        return self.transpose()

    def __pow__(self, k: int) -> RationalMatrix:
        if not self.is_square:
            raise NonSquare(f"{self.shape} matrix has no powers")
        if k < 0:
            return self.inverse() ** (-k)
        result = RationalMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- predicates ---------------------------------------------------------

    def is_integral(self) -> bool:
        return all(type(x) is int for r in self._data for x in r)

    def is_identity(self) -> bool:
        return self.is_square and all(
            x == (1 if i == j else 0) for i, r in enumerate(self._data) for j, x in enumerate(r)
        )

    def is_zero(self) -> bool:
        return all(not x for r in self._data for x in r)

    # -- inversion ----------------------------------------------------------

    def inverse(self) -> RationalMatrix:
        """Exact inverse by fraction-free Gauss-Jordan elimination.

        Rows are first scaled to integers; the elimination then keeps every
        entry integral (each division by the previous pivot is exact), so a
        unit-triangular integer input never produces a Fraction.
        """
        if not self.is_square:
            raise NonSquare(f"cannot invert a {self.shape} matrix")
        n = self.rows
        aug = []
        for i, row in enumerate(self._data):
            d = 1
            for x in row:
                if type(x) is Fraction:
                    d = d * x.denominator // math.gcd(d, x.denominator)
            left = [int(x * d) for x in row]
            right = [0] * n
            right[i] = d
            aug.append(left + right)
        prev = 1
        for k in range(n):
            p = k
            while p < n and not aug[p][k]:
                p += 1
            if p == n:
                raise Singular("matrix is singular")
            if p != k:
                aug[k], aug[p] = aug[p], aug[k]
            piv_row = aug[k]
            piv = piv_row[k]
            for i in range(n):
                if i == k:
                    continue
                ri = aug[i]
                f = ri[k]
                if f:
                    aug[i] = [(piv * x - f * y) // prev for x, y in zip(ri, piv_row)]
                elif piv != prev:
                    aug[i] = [piv * x // prev for x in ri]
            prev = piv
        out = []
        for i in range(n):
            d = aug[i][i]
            out.append([_exact(Fraction(x, d)) if x % d else x // d for x in aug[i][n:]])
        return RationalMatrix._trusted(out)

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> list[list]:
        """Integers stay integers, other rationals become ``"p/q"`` strings."""
        return [[x if type(x) is int else f"{x.numerator}/{x.denominator}" for x in r] for r in self._data]

    @classmethod
    def from_json(cls, data: Sequence[Sequence]) -> RationalMatrix:
        return cls(data)


class PermutationMatrix:
    """Permutation matrix stored by images: ``image[j] = i`` means entry (i, j) is 1."""

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        image = tuple(int(i) for i in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a permutation of 0..{len(image) - 1}")
        if not image:
            raise DimensionMismatch("permutation matrices must be non-empty")
        self.image = image

    @classmethod
    def identity(cls, n: int) -> PermutationMatrix:
        return cls(range(n))

    def __len__(self):
        return len(self.image)

    def __eq__(self, other):
        if isinstance(other, PermutationMatrix):
            return self.image == other.image
        return NotImplemented

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"PermutationMatrix({list(self.image)})"

    def __call__(self, j: int) -> int:
        return self.image[j]

    def inverse(self) -> PermutationMatrix:
        inv = [0] * len(self.image)
        for j, i in enumerate(self.image):
            inv[i] = j
        return PermutationMatrix(inv)

    def transpose(self) -> PermutationMatrix:
        return self.inverse()

    def __matmul__(self, other):
        if isinstance(other, PermutationMatrix):
            return PermutationMatrix(self.image[j] for j in other.image)
        return self.to_matrix() @ other

    def __rmatmul__(self, other):
        return other @ self.to_matrix()

    def to_matrix(self) -> RationalMatrix:
        n = len(self.image)
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(self.image):
            rows[i][j] = 1
        return RationalMatrix._trusted(rows)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.image)):
            if start in seen:
                continue
            cyc = []
            j = start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))


# -- polynomials ------------------------------------------------------------

def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = QQ.div(a[-1], lead)
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] = _exact(a[shift + i] - f * c)
    return _trim(q), a


def _poly_monic(a: list) -> list:
    lead = a[-1]
    return [QQ.div(c, lead) for c in a]


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return _poly_monic(a) if a else []


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [_exact(c) for c in out]


def _poly_lcm(a: list, b: list) -> list:
    g = _poly_gcd(a, b)
    return _poly_monic(_poly_divmod(_poly_mul(a, b), g)[0])


class IntPolynomial:
    """Primitive integer polynomial, coefficients lowest degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable):
        coeffs = _trim([_exact(c) for c in coefficients])
        if coeffs:
            den = 1
            for c in coeffs:
                if type(c) is Fraction:
                    den = math.lcm(den, c.denominator)
            ints = [int(c * den) for c in coeffs]
            g = math.gcd(*ints)
            if ints[-1] < 0:
                g = -g
            coeffs = [c // g for c in ints]
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"IntPolynomial({list(self.coefficients)})"

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)

    def __call__(self, matrix: RationalMatrix) -> RationalMatrix:
        """Evaluate at a square matrix by Horner's rule."""
        if not matrix.is_square:
            raise NonSquare("polynomials are evaluated at square matrices")
        n = matrix.rows
        result = RationalMatrix.zeros(n, n)
        ident = RationalMatrix.identity(n)
        for c in reversed(self.coefficients):
            result = result @ matrix + ident.scale(c)
        return result

    def divides(self, other: IntPolynomial) -> bool:
        if not self.coefficients:
            return not other.coefficients
        return not _poly_divmod(list(other.coefficients), list(self.coefficients))[1]

    def to_json(self) -> list[int]:
        return list(self.coefficients)


# -- the operations ---------------------------------------------------------

def coxeter_from_cartan(cartan: RationalMatrix) -> RationalMatrix:
    """Return ``-M^{-1} M^T``; integral whenever ``M`` is unimodular."""
    if not cartan.is_square:
        raise NonSquare(f"Cartan matrix must be square, got {cartan.shape}")
    cox = -(cartan.inverse() @ cartan.transpose())
    if cartan.is_integral() and _is_unit_triangular(cartan):
        assert cox.is_integral(), "unit-triangular Cartan matrix gave a non-integral Coxeter matrix"
    return cox


def _is_unit_triangular(m: RationalMatrix) -> bool:
    n = m.rows
    if any(m[i, i] != 1 for i in range(n)):
        return False
    upper = all(not m[i, j] for i in range(n) for j in range(i))
    lower = all(not m[i, j] for i in range(n) for j in range(i + 1, n))
    return upper or lower


def minimal_polynomial(a: RationalMatrix) -> IntPolynomial:
    """Minimal polynomial from Krylov sequences of the standard basis vectors.

    For each unit vector not already inside the accumulated Krylov space the
    least linear dependency among ``e, Ae, A^2 e, ...`` gives its annihilator;
    the least common multiple of those annihilators is the answer.
    """
    if not a.is_square:
        raise NonSquare(f"minimal polynomial of a {a.shape} matrix")
    n = a.rows
    data = a._data
    span_rows: list[list] = []
    span_piv: list[int] = []
    result = [1]
    for j in range(n):
        e = [0] * n
        e[j] = 1
        if _in_span(e, span_rows, span_piv):
            continue
        ann, krylov = _annihilator(data, e, n)
        result = _poly_lcm(result, ann)
        span_rows, span_piv = rref(span_rows + krylov, n)
    return IntPolynomial(result)


def _in_span(v: list, rows: list, pivots: list) -> bool:
    v = list(v)
    for row, pc in zip(rows, pivots):
        f = v[pc]
        if f:
            v = [_exact(x - f * y) for x, y in zip(v, row)]
    return not any(v)


def _annihilator(data, e: list, n: int) -> tuple[list, list]:
    """Monic annihilating polynomial of ``e`` under ``data`` and its Krylov vectors."""
    # Each stored row keeps the reduced vector and its expression in terms of
    # the Krylov iterates, so a dependency can be read off directly.
    basis: list[tuple[list, list, int]] = []
    krylov = []
    v = e
    k = 0
    while True:
        combo = [0] * (k + 1)
        combo[k] = 1
        w = list(v)
        for vec, comb, pc in basis:
            f = w[pc]
            if f:
                w = [_exact(x - f * y) for x, y in zip(w, vec)]
                combo = [_exact(c - f * (comb[i] if i < len(comb) else 0)) for i, c in enumerate(combo)]
        nz = next((i for i, x in enumerate(w) if x), None)
        if nz is None:
            return _poly_monic(_trim(combo)), krylov
        piv = w[nz]
        w = [QQ.div(x, piv) for x in w]
        combo = [QQ.div(c, piv) for c in combo]
        # keep earlier rows reduced at the new pivot so lookups stay valid
        new_basis = []
        for vec, comb, pc in basis:
            f = vec[nz]
            if f:
                vec = [_exact(x - f * y) for x, y in zip(vec, w)]
                comb = [
                    _exact((comb[i] if i < len(comb) else 0) - f * combo[i]) for i in range(len(combo))
                ]
            new_basis.append((vec, comb, pc))
        basis = new_basis + [(w, combo, nz)]
        krylov.append(list(v))
        v = [_exact(sum(x * y for x, y in zip(row, v) if x and y)) for row in data]
        k += 1


def check_identity_square(a: RationalMatrix) -> bool:
    """True iff ``a @ a`` is exactly the identity."""
    if not a.is_square:
        raise NonSquare(f"{a.shape} matrix")
    return (a @ a).is_identity()


def check_nilpotent_shift(a: RationalMatrix) -> bool:
    """True iff ``(a + id)^2`` is exactly zero."""
    if not a.is_square:
        raise NonSquare(f"{a.shape} matrix")
    b = a + RationalMatrix.identity(a.rows)
    return (b @ b).is_zero()


def permutation_from_matrix(m: RationalMatrix) -> PermutationMatrix:
    if not m.is_square:
        raise NonSquare("permutation matrices are square")
    image = []
    for j in range(m.cols):
        col = m.column(j)
        ones = [i for i, x in enumerate(col) if x == 1]
        if len(ones) != 1 or sum(1 for x in col if x) != 1:
            raise ValueError(f"column {j} is not a unit vector")
        image.append(ones[0])
    return PermutationMatrix(image)
