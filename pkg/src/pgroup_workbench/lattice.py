"""Finite groups of integer matrices acting on Z^n, and their invariant sublattices."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotUnimodular, OrderCapExceeded, ShapeError, ValidationError
from .groups import DEFAULT_CLOSURE_CAP, FiniteGroup, closure
from .matrices import DEFAULT_ELEMENT_ORDER_CAP


class IntMatrix:
    """Immutable square integer matrix; acts on column vectors."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ShapeError("integer matrix must be square and non-empty")
        self.rows = rows
        self._hash = None

    @classmethod
    def identity_matrix(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def identity(self) -> IntMatrix:
        return IntMatrix.identity_matrix(self.n)

    def sort_key(self):
        return tuple(x for r in self.rows for x in r)

    def to_json(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __mul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if other.n != self.n:
            raise ShapeError(f"dimension mismatch: {self.n} vs {other.n}")
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __pow__(self, k: int) -> IntMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.identity(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, v) -> tuple[int, ...]:
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self.rows)

    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        m = [list(r) for r in self.rows]
        n = self.n
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k]), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse(self) -> IntMatrix:
        """Inverse over Z; raises NotUnimodular unless det = +-1."""
        d = self.det()
        if d not in (1, -1):
            raise NotUnimodular(f"determinant {d} is not a unit in Z")
        n = self.n
        # adjugate via cofactors
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i
                ]
                cof = IntMatrix(minor).det() if n > 1 else 1
                adj[j][i] = (-1) ** (i + j) * cof
        return IntMatrix([[d * x for x in r] for r in adj])

    def conjugate(self, by: IntMatrix) -> IntMatrix:
        return by * self * by.inverse()

    def is_identity(self) -> bool:
        return all(x == int(i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))


def parse_int_matrix(data, field: str = "matrix") -> IntMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValidationError(f"{field}: expected a non-empty list of rows")
    n = len(data)
    rows = []
    for i, r in enumerate(data):
        if len(r) != n:
            raise ValidationError(f"{field}: row {i} has {len(r)} entries, expected {n} (not square)")
        row = []
        for j, x in enumerate(r):
            if isinstance(x, bool):
                raise ValidationError(f"{field}[{i}][{j}]: not an integer")
            if isinstance(x, int):
                row.append(x)
            elif isinstance(x, str) and x.strip().lstrip("+-").isdigit():
                row.append(int(x))
            else:
                raise ValidationError(f"{field}[{i}][{j}]: {x!r} is not an integer")
        rows.append(row)
    return IntMatrix(rows)


def int_element_order(g: IntMatrix, cap: int = DEFAULT_ELEMENT_ORDER_CAP) -> int:
    g.inverse()
    x, m = g, 1
    while not x.is_identity():
        m += 1
        if m > cap:
            raise OrderCapExceeded(f"element order exceeds cap {cap} (possibly infinite)")
        x = x * g
    return m


def int_closure(gens, cap: int = DEFAULT_CLOSURE_CAP, dimension: int | None = None) -> FiniteGroup:
    gens = list(gens)
    for g in gens:
        g.inverse()
    if not gens and dimension is None:
        raise ShapeError("dimension needed for an empty generator list")
    identity = gens[0].identity() if gens else IntMatrix.identity_matrix(dimension)
    return closure(gens, cap=cap, identity=identity)


def is_cyclic(G: FiniteGroup) -> bool:
    return any(G.element_order(i) == G.order for i in range(G.order))


# -- integer normal forms ---------------------------------------------------------


def hermite_normal_form(rows) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by ``rows``; zero rows dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        # Euclid on column c among rows r..
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r]]


def integer_kernel(rows, ncols: int) -> list[list[int]]:
    """Basis of {v in Z^ncols : A v = 0}, returned in HNF.

    Column operations reduce A to echelon form while the same operations are
    applied to an identity matrix U; columns of U that end up opposite zero
    columns of A U span the kernel, and that span is saturated.
    """
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(dst, src, q):
        # column dst -= q * column src
        for M in (A, U):
            for row in M:
                row[dst] -= q * row[src]

    def swap(a, b):
        for M in (A, U):
            for row in M:
                row[a], row[b] = row[b], row[a]

    c0 = 0
    for row_i in range(len(A)):
        if c0 == ncols:
            break
        while True:
            nz = [c for c in range(c0, ncols) if A[row_i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda c: abs(A[row_i][c]))
            swap(c0, piv)
            clean = True
            for c in range(c0 + 1, ncols):
                if A[row_i][c]:
                    colop(c, c0, A[row_i][c] // A[row_i][c0])
                    if A[row_i][c]:
                        clean = False
            if clean:
                break
        if any(A[row_i][c] for c in range(c0, ncols)):
            c0 += 1
    basis = [[U[i][c] for i in range(ncols)] for c in range(c0, ncols)]
    return hermite_normal_form(basis)


def smith_normal_form(rows) -> list[int]:
    """Diagonal of the Smith normal form (invariant factors, zeros included)."""
    m = [list(r) for r in rows]
    if not m:
        return []
    nr, nc = len(m), len(m[0])
    diag = []
    for t in range(min(nr, nc)):
        nz = [(i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
        if not nz:
            diag.extend([0] * (min(nr, nc) - t))
            break
        while True:
            i, j = min(
                ((i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]),
                key=lambda ij: abs(m[ij[0]][ij[1]]),
            )
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                dirty |= m[i][t] != 0
            for j in range(t + 1, nc):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                dirty |= m[t][j] != 0
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if m[i][j] % p),
                None,
            )
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
        diag.append(abs(m[t][t]))
    return diag


@dataclass(frozen=True)
class Sublattice:
    rank: int
    basis: tuple[tuple[int, ...], ...]

    def to_json(self):
        return {"rank": self.rank, "basis": [list(b) for b in self.basis]}


def invariant_sublattice(gens, cap: int = DEFAULT_ELEMENT_ORDER_CAP, dimension: int | None = None) -> Sublattice:
    """Lattice vectors fixed by every generator: the integer kernel of stacked (g - I)."""
    gens = list(gens)
    if not gens:
        if dimension is None:
            raise ShapeError("dimension needed for an empty generator list")
        n = dimension
        return Sublattice(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    n = gens[0].n
    rows = []
    for g in gens:
        int_element_order(g, cap)
        rows.extend(list(r) for r in (g - g.identity()).rows)
    basis = integer_kernel(rows, n)
    expected_rank = n - sum(1 for d in smith_normal_form(rows) if d)
    if len(basis) != expected_rank:
        raise ArithmeticError("kernel rank disagrees with Smith normal form")
    return Sublattice(len(basis), tuple(tuple(b) for b in basis))
