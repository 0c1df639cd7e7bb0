"""Exact dense linear algebra over Q or a prime field F_p.

Matrices are lists of rows.  Scalars are Python ints (kept integral when
possible) or :class:`fractions.Fraction` over Q, and ints in ``[0, p)`` over
F_p.  Everything here is pure: inputs are never mutated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Q (characteristic 0) or F_p."""

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            return self(Fraction(x))
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def norm(self, x):
        p = self.characteristic
        if p:
            return x % p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        p = self.characteristic
        if p:
            return pow(x, -1, p)
        if isinstance(x, int):
            return 1 if x == 1 else (-1 if x == -1 else Fraction(1, x))
        return self.norm(1 / x)

    def div(self, a, b):
        return self.norm(a * self.inv(b))


QQ = Field(0)


class NoSolution(Exception):
    """Raised by :func:`solve`; ``certificate`` is a left-kernel vector y with y.rhs != 0."""

    def __init__(self, certificate):
        super().__init__("linear system has no solution")
        self.certificate = certificate


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    data: tuple = field(repr=False)
    field: Field = QQ

    @classmethod
    def from_rows(cls, rows, F: Field = QQ, cols: int | None = None):
        rows = [tuple(F(x) for x in r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), ncols, tuple(rows), F)

    @classmethod
    def zeros(cls, r: int, c: int, F: Field = QQ):
        return cls(r, c, tuple((0,) * c for _ in range(r)), F)

    @classmethod
    def identity(cls, n: int, F: Field = QQ):
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), F)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def tolist(self):
        return [list(r) for r in self.data]

    def column(self, j):
        return [r[j] for r in self.data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return Mat(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)), self.field)

    def __matmul__(self, other: "Mat"):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return Mat(self.rows, other.cols, tuple(tuple(matmul(self.data, other.data, self.field, other.cols))), self.field)

    def __eq__(self, other):
        return isinstance(other, Mat) and (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))


def matmul(A, B, F: Field, bcols: int | None = None):
    """Row-list product A @ B, skipping zero entries of A."""
    if bcols is None:
        bcols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * bcols
        for k, a in enumerate(row):
            if a:
                brow = B[k]
                for j in range(bcols):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        out.append(tuple(F.norm(x) for x in acc))
    return out


def matvec(A, v, F: Field):
    return [F.norm(sum(a * x for a, x in zip(row, v) if a and x)) for row in A]


def _rref_rows(rows, ncols, F: Field):
    """Return (reduced rows without zero rows, pivot columns)."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        prow = M[r]
        inv = F.inv(prow[c])
        if inv != 1:
            prow = [F.norm(x * inv) if x else 0 for x in prow]
            M[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = M[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = F.norm(row[j] - f * prow[j])
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rref(m: Mat):
    """Reduced row-echelon form: (reduced matrix, pivot columns, rank)."""
    red, piv = _rref_rows(m.data, m.cols, m.field)
    full = red + [[0] * m.cols for _ in range(m.rows - len(red))]
    return Mat(m.rows, m.cols, tuple(tuple(r) for r in full), m.field), piv, len(piv)


def rank(m: Mat) -> int:
    return len(_rref_rows(m.data, m.cols, m.field)[1])


def rank_rows(rows, ncols, F: Field) -> int:
    return len(_rref_rows(rows, ncols, F)[1])


def kernel_vectors(rows, ncols, F: Field):
    """Basis of {x : A x = 0} as a list of vectors."""
    red, piv = _rref_rows(rows, ncols, F)
    pset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, pc in enumerate(piv):
            x = red[r][free]
            if x:
                v[pc] = F.norm(-x)
        basis.append(v)
    return basis


def kernel(m: Mat) -> Mat:
    """Matrix whose columns are a basis of the right kernel of m."""
    vecs = kernel_vectors(m.data, m.cols, m.field)
    if not vecs:
        return Mat(m.cols, 0, tuple(() for _ in range(m.cols)), m.field)
    return Mat(m.cols, len(vecs), tuple(zip(*vecs)), m.field)


def solve(m: Mat, rhs: Mat) -> Mat:
    """One particular solution x of m @ x = rhs, or raise NoSolution."""
    if rhs.rows != m.rows:
        raise ValueError(f"dimension mismatch: {m.rows} rows vs rhs {rhs.rows}")
    F = m.field
    aug = [list(m.data[i]) + list(rhs.data[i]) + [1 if j == i else 0 for j in range(m.rows)]
           for i in range(m.rows)]
    ncols = m.cols + rhs.cols + m.rows
    red, piv = _rref_rows(aug, ncols, F)
    for r, pc in enumerate(piv):
        if pc >= m.cols:
            # row r is 0 on the m-block: its tracking block is a left-kernel vector
            if pc < m.cols + rhs.cols:
                y = red[r][m.cols + rhs.cols:]
                raise NoSolution(list(y))
            break
    x = [[0] * rhs.cols for _ in range(m.cols)]
    for r, pc in enumerate(piv):
        if pc >= m.cols:
            break
        for j in range(rhs.cols):
            x[pc][j] = red[r][m.cols + j]
    return Mat(m.cols, rhs.cols, tuple(tuple(r) for r in x), F)


class Subspace:
    """A subspace of F^n held as RREF basis rows.

    ``coords`` gives coordinates of a member vector against the basis,
    ``reduce`` the canonical remainder (zero on pivot columns), and
    ``complement`` the non-pivot coordinates, whose unit vectors span a
    complement.
    """

    __slots__ = ("n", "F", "rows", "pivots", "_pidx")

    def __init__(self, n: int, F: Field, vectors=()):
        self.n = n
        self.F = F
        vectors = [v for v in vectors if any(v)]
        self.rows, self.pivots = _rref_rows(vectors, n, F) if vectors else ([], [])
        self._pidx = {p: i for i, p in enumerate(self.pivots)}

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, v):
        F = self.F
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.n):
                    if row[j]:
                        v[j] = F.norm(v[j] - c * row[j])
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def coords(self, v):
        return [v[p] for p in self.pivots]

    def complement(self):
        pset = self._pidx
        return [j for j in range(self.n) if j not in pset]

    def quotient_coords(self, v, comp=None):
        r = self.reduce(v)
        return [r[j] for j in (comp if comp is not None else self.complement())]

    def basis(self):
        return [list(r) for r in self.rows]

    def extended(self, vectors):
        return Subspace(self.n, self.F, list(self.rows) + [list(v) for v in vectors])

    def __le__(self, other: "Subspace"):
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.pivots == other.pivots and \
            [list(r) for r in self.rows] == [list(r) for r in other.rows]

    def intersection(self, other: "Subspace") -> "Subspace":
        a, b = self.rows, other.rows
        if not a or not b:
            return Subspace(self.n, self.F)
        # x.a = y.b  <=>  [a; -b]^T (x, y) = 0
        cols = [list(r) for r in a] + [[self.F.norm(-x) for x in r] for r in b]
        A = [list(c) for c in zip(*cols)]
        ker = kernel_vectors(A, len(cols), self.F)
        vecs = []
        for k in ker:
            v = [0] * self.n
            for coef, r in zip(k[:len(a)], a):
                if coef:
                    for j in range(self.n):
                        if r[j]:
                            v[j] += coef * r[j]
            vecs.append([self.F.norm(x) for x in v])
        return Subspace(self.n, self.F, vecs)
