"""Projective actions: PGL images, fixed loci, orbits, semi-invariant polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cyclotomic import CycContext, CycNumber, cyc_from_json
from .errors import ShapeError, TupleCapExceeded, ValidationError, ZeroPolynomial
from .groups import DEFAULT_CLOSURE_CAP, FiniteGroup, closure
from .matrices import (
    DEFAULT_ELEMENT_ORDER_CAP,
    CycMatrix,
    canonical_basis,
    eigen_decompose,
    normalize_point,
    nullspace,
)

DEFAULT_TUPLE_CAP = 3**8


class ProjElement:
    """Class of a matrix in PGL_n, represented with first nonzero entry (row-major) equal to 1."""

    __slots__ = ("rep",)

    def __init__(self, matrix: CycMatrix):
        if isinstance(matrix, ProjElement):
            matrix = matrix.rep
        lead = next(x for x in matrix.entries() if x)
        self.rep = matrix if lead.is_one() else matrix * lead.inverse()

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def ctx(self) -> CycContext:
        return self.rep.ctx

    def identity(self) -> ProjElement:
        return ProjElement(self.rep.identity())

    def inverse(self) -> ProjElement:
        return ProjElement(self.rep.inverse())

    def __mul__(self, other: ProjElement) -> ProjElement:
        if not isinstance(other, ProjElement):
            return NotImplemented
        return ProjElement(self.rep * other.rep)

    def __eq__(self, other):
        return isinstance(other, ProjElement) and self.rep == other.rep

    def __hash__(self):
        return hash(("proj", self.rep))

    def __repr__(self):
        return f"ProjElement({self.rep!r})"

    def sort_key(self):
        return self.rep.sort_key()

    def to_json(self):
        return self.rep.to_json()


def _matrix(x) -> CycMatrix:
    return x.rep if isinstance(x, ProjElement) else x


def pgl_image(G: FiniteGroup, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Image of a matrix group in PGL_n."""
    return closure(
        [ProjElement(g) for g in G.generators],
        cap=cap,
        identity=ProjElement(_matrix(G.identity)),
    )


def scalar_elements(G: FiniteGroup) -> list[CycMatrix]:
    return [g for g in G.elements if _matrix(g).is_scalar()]


@dataclass(frozen=True)
class ProjSubspace:
    """Projective subspace spanned by an RREF basis."""

    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def to_json(self):
        return {"dim": self.dim, "basis": [[x.to_json() for x in v] for v in self.basis]}

    def sort_key(self):
        return (len(self.basis), tuple(tuple(x.sort_key() for x in v) for v in self.basis))


def _generator_matrices(G) -> list[CycMatrix]:
    if isinstance(G, FiniteGroup):
        return [_matrix(g) for g in G.generators]
    return [_matrix(g) for g in G]


def fixed_subspaces(
    G,
    order_cap: int = DEFAULT_ELEMENT_ORDER_CAP,
    tuple_cap: int = DEFAULT_TUPLE_CAP,
) -> list[ProjSubspace]:
    """Maximal subspaces of P^(n-1) fixed pointwise by G.

    A point is fixed iff its vector is a common eigenvector of all
    generators, so the fixed locus is the union over eigenvalue tuples of
    the intersections of the corresponding eigenspaces.  ``G`` may be a
    FiniteGroup (of matrices or projective classes) or a generator list.
    """
    gens = _generator_matrices(G)
    if not gens:
        if not isinstance(G, FiniteGroup):
            raise ShapeError("a bare empty generator list has no dimension")
        ident = _matrix(G.identity)
        return [ProjSubspace(tuple(canonical_basis([list(r) for r in ident.rows])))]
    spectra = [eigen_decompose(g, order_cap).eigenvalues() for g in gens]
    count = 1
    for s in spectra:
        count *= len(s)
    if count > tuple_cap:
        raise TupleCapExceeded(f"{count} eigenvalue tuples exceed cap {tuple_cap}")
    n = gens[0].n
    ctx = gens[0].ctx
    found = {}
    for chi in product(*spectra):
        rows = []
        for g, lam in zip(gens, chi):
            shifted = g - CycMatrix.scalar(n, lam)
            rows.extend(list(r) for r in shifted.rows)
        basis = nullspace(rows, n, ctx)
        if basis:
            sub = ProjSubspace(tuple(basis))
            found[sub.basis] = sub
    return sorted(found.values(), key=ProjSubspace.sort_key)


def is_fixed_point(v, G: FiniteGroup) -> bool:
    """Direct check that every element of G maps the line through v to itself."""
    p = normalize_point(v)
    return all(normalize_point(_matrix(g).apply(p)) == p for g in G.elements)


def orbit(point, G: FiniteGroup) -> list[tuple]:
    """G-orbit of a projective point, as normalized vectors in canonical order."""
    p = normalize_point(point)
    n = _matrix(G.identity).n
    if len(p) != n:
        raise ShapeError(f"point has {len(p)} coordinates, group acts on dimension {n}")
    pts = {normalize_point(_matrix(g).apply(p)) for g in G.elements}
    return sorted(pts, key=lambda v: tuple(x.sort_key() for x in v))


# -- polynomials -----------------------------------------------------------------


def monomial_order_key(exponents: tuple[int, ...]):
    """Monomials are listed in descending lexicographic order of exponent vectors."""
    return tuple(-e for e in exponents)


class Polynomial:
    """Sparse polynomial in n variables with coefficients in Q(zeta_N)."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, terms: dict, nvars: int, ctx: CycContext):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ShapeError(f"exponent vector {e} does not have {nvars} entries")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            if not isinstance(c, CycNumber):
                c = ctx.rational(c)
            if c:
                clean[e] = c
        self.ctx = ctx
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def from_json(cls, data, ctx: CycContext, nvars: int | None = None) -> Polynomial:
        if not isinstance(data, list):
            raise ValidationError("polynomial: expected a list of terms")
        terms: dict = {}
        for i, t in enumerate(data):
            if not isinstance(t, dict) or "exponents" not in t or "coeff" not in t:
                raise ValidationError(f"polynomial term {i}: needs 'exponents' and 'coeff'")
            e = t["exponents"]
            if not isinstance(e, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in e
            ):
                raise ValidationError(f"polynomial term {i}: exponents must be non-negative integers")
            if nvars is None:
                nvars = len(e)
            if len(e) != nvars:
                raise ValidationError(f"polynomial term {i}: expected {nvars} exponents, got {len(e)}")
            try:
                c = cyc_from_json(t["coeff"], ctx)
            except ValidationError as exc:
                raise ValidationError(f"polynomial term {i}: {exc}") from None
            key = tuple(e)
            terms[key] = terms.get(key, ctx.zero()) + c
        if nvars is None:
            raise ValidationError("polynomial: no terms, cannot infer number of variables")
        return cls(terms, nvars, ctx)

    def to_json(self):
        return [{"exponents": list(e), "coeff": self.terms[e].to_json()} for e in self.monomials()]

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=monomial_order_key)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.monomials():
            mono = "*".join(
                f"z{i + 1}" if k == 1 else f"z{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            c = self.terms[e]
            if not mono:
                parts.append(f"({c})")
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __add__(self, other: Polynomial) -> Polynomial:
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return Polynomial(terms, self.nvars, self.ctx)

    def __mul__(self, other):
        if isinstance(other, CycNumber):
            return Polynomial({e: c * other for e, c in self.terms.items()}, self.nvars, self.ctx)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return Polynomial(terms, self.nvars, self.ctx)

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial({(0,) * self.nvars: self.ctx.one()}, self.nvars, self.ctx)
        for _ in range(k):
            result = result * self
        return result

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial({e: c for e, c in self.terms.items() if sum(e) == d}, self.nvars, self.ctx)

    def substitute(self, g: CycMatrix) -> Polynomial:
        """f^g(z) = f(g z): each variable z_i becomes the linear form sum_j g_ij z_j."""
        if g.n != self.nvars:
            raise ShapeError(f"matrix of size {g.n} on a polynomial in {self.nvars} variables")
        n = self.nvars
        linear = []
        for i in range(n):
            terms = {}
            for j, a in enumerate(g.rows[i]):
                if a:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = a
            linear.append(Polynomial(terms, n, self.ctx))
        powers: dict = {}
        result = Polynomial({}, n, self.ctx)
        for e, c in self.terms.items():
            term = Polynomial({(0,) * n: c}, n, self.ctx)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = linear[i] ** k
                    term = term * powers[(i, k)]
            result = result + term
        return result

    def diagonal_action(self, g: CycMatrix) -> Polynomial:
        """Shortcut for diagonal g: z^e scales by prod g_ii^e_i."""
        if not g.is_diagonal():
            raise ValueError("diagonal_action needs a diagonal matrix")
        diag = g.diagonal_entries()
        out = {}
        for e, c in self.terms.items():
            m = c
            for d, k in zip(diag, e):
                if k:
                    m = m * d**k
            out[e] = m
        return Polynomial(out, self.nvars, self.ctx)


def homogeneous_part(f: Polynomial, d: int) -> Polynomial:
    return f.homogeneous_part(d)


def act(f: Polynomial, g: CycMatrix) -> Polynomial:
    return f.diagonal_action(g) if g.is_diagonal() else f.substitute(g)


@dataclass(frozen=True)
class Character:
    """Generator index -> root of unity multiplier."""

    values: tuple[CycNumber, ...]

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values)

    def to_json(self):
        return [v.to_json() for v in self.values]


@dataclass(frozen=True)
class FailureWitness:
    """First generator under which f^g is not proportional to f.

    ``reference_multiplier`` is the ratio on the leading monomial of f; the
    offending monomial's ratio differs (None when f^g has a monomial absent
    from f).
    """

    generator: int
    reference_monomial: tuple[int, ...]
    reference_multiplier: CycNumber
    monomial: tuple[int, ...]
    multiplier: CycNumber | None

    def to_json(self):
        return {
            "generator": self.generator + 1,
            "reference_monomial": list(self.reference_monomial),
            "reference_multiplier": self.reference_multiplier.to_json(),
            "monomial": list(self.monomial),
            "multiplier": None if self.multiplier is None else self.multiplier.to_json(),
        }


@dataclass(frozen=True)
class SemiInvariance:
    """Outcome of a semi-invariance test, one multiplier (or None) per generator."""

    multipliers: tuple
    witness: FailureWitness | None

    @property
    def character(self) -> Character | None:
        if self.witness is not None:
            return None
        return Character(tuple(self.multipliers))

    @property
    def is_semi_invariant(self) -> bool:
        return self.witness is None

    @property
    def is_invariant(self) -> bool:
        return self.witness is None and all(m.is_one() for m in self.multipliers)

    def failing_generators(self) -> list[int]:
        return [i for i, m in enumerate(self.multipliers) if m is None]

    def to_json(self):
        return {
            "semi_invariant": self.is_semi_invariant,
            "invariant": self.is_invariant,
            "multipliers": [None if m is None else m.to_json() for m in self.multipliers],
            "failing_generators": [i + 1 for i in self.failing_generators()],
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _proportionality(f: Polynomial, fg: Polynomial, gen: int):
    lead = f.monomials()[0]
    ratio = fg.terms.get(lead, f.ctx.zero()) / f.terms[lead]
    for e in f.monomials():
        r = fg.terms.get(e, f.ctx.zero()) / f.terms[e]
        if r != ratio:
            return None, FailureWitness(gen, lead, ratio, e, r)
    for e in sorted(fg.terms, key=monomial_order_key):
        if e not in f.terms:
            return None, FailureWitness(gen, lead, ratio, e, None)
    return ratio, None


def semi_invariant(f: Polynomial, G) -> SemiInvariance:
    """Test f^g = chi(g) f for every generator g, under f^g(z) = f(g z)."""
    if f.is_zero():
        raise ZeroPolynomial("semi-invariance of the zero polynomial is undefined")
    gens = _generator_matrices(G)
    multipliers = []
    witness = None
    for k, g in enumerate(gens):
        if g.n != f.nvars:
            raise ShapeError(f"generator {k + 1} has size {g.n}, polynomial has {f.nvars} variables")
        ratio, w = _proportionality(f, act(f, g), k)
        if w is not None and witness is None:
            witness = w
        multipliers.append(ratio)
    return SemiInvariance(tuple(multipliers), witness)
