"""Square matrices over Q(zeta_N) and the exact linear algebra they need."""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycContext, CycNumber, cyc_from_json, root_of_unity
from .errors import (
    ContextMismatch,
    NotInvertible,
    OrderCapExceeded,
    OrderNotInContext,
    ShapeError,
    ValidationError,
)

DEFAULT_ELEMENT_ORDER_CAP = 3**8

Vector = tuple  # tuple of CycNumber


def rref(rows: list[list[CycNumber]]) -> tuple[list[list[CycNumber]], list[int]]:
    """Reduced row echelon form; pivots taken as the first nonzero entry in column order."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows: list[list[CycNumber]], ncols: int, ctx: CycContext) -> list[Vector]:
    """Kernel of the matrix with the given rows, as a canonical (RREF) basis."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero()] * ncols
        v[f] = ctx.one()
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return canonical_basis(basis)


def canonical_basis(vectors) -> list[Vector]:
    """RREF basis of the span of ``vectors`` (empty list for the zero space)."""
    if not vectors:
        return []
    red, _ = rref([list(v) for v in vectors])
    return [tuple(r) for r in red]


def normalize_point(v) -> Vector:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("zero vector has no projective point")
    inv = lead.inverse()
    return tuple(x * inv for x in v)


class CycMatrix:
    """Immutable n x n matrix over Q(zeta_N)."""

    __slots__ = ("ctx", "rows", "_hash")

    def __init__(self, rows, ctx: CycContext | None = None):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0:
            raise ShapeError("empty matrix")
        if any(len(r) != n for r in rows):
            raise ShapeError(f"matrix is not square: row lengths {[len(r) for r in rows]}")
        if ctx is None:
            ctx = next(x.ctx for r in rows for x in r if isinstance(x, CycNumber))
        fixed = []
        for r in rows:
            out = []
            for x in r:
                if not isinstance(x, CycNumber):
                    x = ctx.rational(x)
                elif x.ctx != ctx:
                    raise ContextMismatch("matrix entries from different cyclotomic fields")
                out.append(x)
            fixed.append(tuple(out))
        self.ctx = ctx
        self.rows = tuple(fixed)
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity_matrix(cls, n: int, ctx: CycContext) -> CycMatrix:
        return cls.scalar(n, ctx.one())

    @classmethod
    def scalar(cls, n: int, c: CycNumber) -> CycMatrix:
        z = c.ctx.zero()
        return cls([[c if i == j else z for j in range(n)] for i in range(n)], c.ctx)

    @classmethod
    def diagonal(cls, entries, ctx: CycContext) -> CycMatrix:
        entries = [e if isinstance(e, CycNumber) else ctx.rational(e) for e in entries]
        n = len(entries)
        z = ctx.zero()
        return cls([[entries[i] if i == j else z for j in range(n)] for i in range(n)], ctx)

    @classmethod
    def diagonal_roots(cls, exponents, ctx: CycContext) -> CycMatrix:
        """diag(zeta^k1, zeta^k2, ...)."""
        return cls.diagonal([root_of_unity(k, ctx) for k in exponents], ctx)

    @classmethod
    def from_json(cls, data, ctx: CycContext) -> CycMatrix:
        return cls([[cyc_from_json(x, ctx) for x in row] for row in data], ctx)

    # -- protocol shared with the group engine -----------------------------

    @property
    def n(self) -> int:
        return len(self.rows)

    def identity(self) -> CycMatrix:
        return CycMatrix.identity_matrix(self.n, self.ctx)

    def sort_key(self):
        return tuple(x.sort_key() for r in self.rows for x in r)

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, CycMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"CycMatrix(N={self.ctx.root_order}, [{body}])"

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: CycMatrix):
        if other.n != self.n:
            raise ShapeError(f"dimension mismatch: {self.n} vs {other.n}")
        if other.ctx != self.ctx:
            raise ContextMismatch("matrices over different cyclotomic fields")

    def __mul__(self, other):
        if isinstance(other, CycNumber):
            return CycMatrix([[x * other for x in r] for r in self.rows], self.ctx)
        if not isinstance(other, CycMatrix):
            return NotImplemented
        self._check(other)
        n = self.n
        zero = self.ctx.zero()
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for j in range(n):
                acc = zero
                col = cols[j]
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CycMatrix(out, self.ctx)

    def __add__(self, other: CycMatrix) -> CycMatrix:
        self._check(other)
        return CycMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ctx
        )

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        self._check(other)
        return CycMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ctx
        )

    def __pow__(self, k: int) -> CycMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.identity()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> CycMatrix:
        n = self.n
        one, zero = self.ctx.one(), self.ctx.zero()
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise NotInvertible("singular matrix")
        return CycMatrix([row[n:] for row in red], self.ctx)

    def conjugate(self, by: CycMatrix) -> CycMatrix:
        """by * self * by^-1."""
        return by * self * by.inverse()

    def apply(self, v) -> Vector:
        zero = self.ctx.zero()
        out = []
        for r in self.rows:
            acc = zero
            for a, x in zip(r, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self) -> CycMatrix:
        return CycMatrix(list(zip(*self.rows)), self.ctx)

    def entries(self):
        return [x for r in self.rows for x in r]

    def is_identity(self) -> bool:
        return all(
            (x.is_one() if i == j else x.is_zero())
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return self.is_diagonal() and all(self.rows[i][i] == d for i in range(self.n))

    def diagonal_entries(self) -> list[CycNumber]:
        return [self.rows[i][i] for i in range(self.n)]

    def embed(self, ctx: CycContext) -> CycMatrix:
        return CycMatrix([[x.embed(ctx) for x in r] for r in self.rows], ctx)


def block_diagonal(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    if a.ctx != b.ctx:
        raise ContextMismatch("block_diagonal needs a common field")
    zero = a.ctx.zero()
    n1, n2 = a.n, b.n
    rows = [list(r) + [zero] * n2 for r in a.rows]
    rows += [[zero] * n1 + list(r) for r in b.rows]
    return CycMatrix(rows, a.ctx)


def matrix_from_rows(rows, ctx: CycContext) -> CycMatrix:
    """Convenience: integers, Fractions, or CycNumbers in nested lists."""
    return CycMatrix(rows, ctx)


def element_order(g: CycMatrix, cap: int = DEFAULT_ELEMENT_ORDER_CAP) -> int:
    """Least m <= cap with g^m == I."""
    g.inverse()  # raises NotInvertible for singular input
    x = g
    m = 1
    while not x.is_identity():
        m += 1
        if m > cap:
            raise OrderCapExceeded(f"element order exceeds cap {cap} (possibly infinite)")
        x = x * g
    return m


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs (eigenvalue, canonical eigenspace basis), by increasing root exponent."""

    pairs: tuple[tuple[CycNumber, tuple[Vector, ...]], ...]

    def eigenvalues(self) -> list[CycNumber]:
        return [lam for lam, _ in self.pairs]

    def dimensions(self) -> list[int]:
        return [len(b) for _, b in self.pairs]


def eigenspace(g: CycMatrix, lam: CycNumber) -> list[Vector]:
    shifted = g - CycMatrix.scalar(g.n, lam)
    return nullspace([list(r) for r in shifted.rows], g.n, g.ctx)


def eigen_decompose(g: CycMatrix, cap: int = DEFAULT_ELEMENT_ORDER_CAP) -> EigenDecomposition:
    """Eigenspaces of a finite-order matrix whose order divides N.

    Only roots of unity of order dividing ord(g) are tried; no characteristic
    polynomial is formed.
    """
    m = element_order(g, cap)
    N = g.ctx.root_order
    if N % m:
        raise OrderNotInContext(f"element order {m} does not divide root order {N}")
    pairs = []
    for k in range(N):
        if (k * m) % N:
            continue
        lam = root_of_unity(k, g.ctx)
        basis = eigenspace(g, lam)
        if basis:
            pairs.append((lam, tuple(basis)))
    if sum(len(b) for _, b in pairs) != g.n:
        raise ArithmeticError("eigenspaces do not span; matrix is not diagonalizable")
    return EigenDecomposition(tuple(pairs))


def parse_matrix(data, ctx: CycContext, field: str = "matrix") -> CycMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValidationError(f"{field}: expected a non-empty list of rows")
    n = len(data)
    for i, r in enumerate(data):
        if len(r) != n:
            raise ValidationError(f"{field}: row {i} has {len(r)} entries, expected {n} (not square)")
    rows = []
    for i, r in enumerate(data):
        row = []
        for j, x in enumerate(r):
            try:
                row.append(cyc_from_json(x, ctx))
            except ValidationError as exc:
                raise ValidationError(f"{field}[{i}][{j}]: {exc}") from None
        rows.append(row)
    return CycMatrix(rows, ctx)
