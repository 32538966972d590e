"""Built-in groups and polynomials, and the registry of verification checks."""

from __future__ import annotations

import random
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from typing import Callable

from .cyclotomic import get_context, root_of_unity
from .errors import ClosureCapExceeded, UnknownId
from .groups import (
    DEFAULT_BRUTEFORCE_CAP,
    DEFAULT_CLOSURE_CAP,
    augment_generators,
    center,
    closure,
    exponent,
    extension_generators,
    frattini,
    frattini_by_maximal_subgroups,
    index,
    is_abelian,
    is_normal,
    is_p_group,
    min_generators,
    min_generators_bruteforce,
    p_power_exponent,
    quotient_order,
    subgroup_generated,
    sylow_p,
)
from .lattice import IntMatrix, int_closure, invariant_sublattice, is_cyclic
from .matrices import CycMatrix, block_diagonal
from .projective import (
    Polynomial,
    ProjElement,
    fixed_subspaces,
    homogeneous_part,
    orbit,
    pgl_image,
    scalar_elements,
    semi_invariant,
)

PASS, FAIL, DISCREPANCY = "PASS", "FAIL", "DISCREPANCY"


@dataclass(frozen=True)
class Fact:
    prop: str
    expected: object
    provenance: str


@dataclass
class CatalogEntry:
    """One built-in object.

    ``kind`` is "group" (cyclotomic matrices), "projective" (cyclotomic
    lifts of a PGL group), "integer" (matrices over Z) or "polynomial".
    """

    id: str
    description: str
    kind: str
    root_order: int | None
    dimension: int
    generators: list = field(default_factory=list)
    polynomial: Polynomial | None = None
    expected_facts: list[Fact] = field(default_factory=list)

    def group(self, cap: int = DEFAULT_CLOSURE_CAP):
        if self.kind == "integer":
            return int_closure(self.generators, cap=cap, dimension=self.dimension)
        if self.kind not in ("group", "projective"):
            raise TypeError(f"{self.id} is a {self.kind}, not a group")
        G = closure(self.generators, cap=cap, identity=_identity(self))
        return pgl_image(G, cap=cap) if self.kind == "projective" else G

    def lift_group(self, cap: int = DEFAULT_CLOSURE_CAP):
        """The matrix group itself, also for projective entries."""
        return closure(self.generators, cap=cap, identity=_identity(self))


def _identity(entry: CatalogEntry) -> CycMatrix:
    return CycMatrix.identity_matrix(entry.dimension, get_context(entry.root_order))


# -- constructions -----------------------------------------------------------------


def heisenberg_matrices(N: int = 3) -> tuple[CycMatrix, CycMatrix]:
    """X (cyclic coordinate shift) and Y = diag(1, w, w^2), w a primitive cube root."""
    ctx = get_context(N)
    w = N // 3
    X = CycMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]], ctx)
    Y = CycMatrix.diagonal_roots([0, w, 2 * w], ctx)
    return X, Y


def lift_D(N: int = 3) -> CycMatrix:
    """diag(1, 1, w); normalizes <X, Y> with D X D^-1 = X Y and D Y D^-1 = Y."""
    ctx = get_context(N)
    D = CycMatrix.diagonal_roots([0, 0, N // 3], ctx)
    X, Y = heisenberg_matrices(N)
    if D * X * D.inverse() != X * Y or D * Y * D.inverse() != Y:
        raise ArithmeticError("D does not act on <X, Y> as expected")
    return D


def fermat_generators(ctx=None) -> list[CycMatrix]:
    ctx = ctx or get_context(3)
    w = ctx.root_order // 3
    return [CycMatrix.diagonal_roots([w * (i == j) for j in range(4)], ctx) for i in range(3)]


def fermat_cubic(ctx=None) -> Polynomial:
    ctx = ctx or get_context(3)
    return Polynomial({tuple(3 * (i == j) for j in range(4)): 1 for i in range(4)}, 4, ctx)


def sigma_t(degrees=(1, 1, 1)) -> tuple[CycMatrix, CycMatrix]:
    """sigma with lambda_i a primitive root of unity of degree ``degrees[i]`` (a power of 3), and t.

    sigma = [[0, l2, 0], [0, 0, l3], [l1, 0, 0]], t = diag(1, w, w^2).
    """
    for d in degrees:
        if p_power_exponent(d, 3) is None:
            raise ValueError(f"lambda degree {d} is not a power of 3")
    N = lcm(3, *degrees)
    ctx = get_context(N)
    l1, l2, l3 = (root_of_unity(N // d, ctx) for d in degrees)
    z = ctx.zero()
    sigma = CycMatrix([[z, l2, z], [z, z, l3], [l1, z, z]], ctx)
    w = N // 3
    t = CycMatrix.diagonal_roots([0, w, 2 * w], ctx)
    return sigma, t


def cA1_generators(ctx=None) -> list[CycMatrix]:
    ctx = ctx or get_context(3)
    w = ctx.root_order // 3
    return [
        CycMatrix.diagonal_roots([w, -w, 0, 0], ctx),
        CycMatrix.diagonal_roots([w, 0, -w, 0], ctx),
        CycMatrix.diagonal_roots([0, 0, 0, w], ctx),
    ]


def cA1_polynomial(ctx=None) -> Polynomial:
    ctx = ctx or get_context(3)
    return Polynomial({(2, 0, 0, 0): 1, (0, 1, 1, 0): 1, (0, 0, 0, 3): 1}, 4, ctx)


ORDER3_GL2Z = IntMatrix([[0, -1], [1, -1]])
PERM3_GL3Z = IntMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def _entry_heisenberg():
    X, Y = heisenberg_matrices()
    return CatalogEntry(
        "heisenberg", "Heisenberg group H3 = <X, Y> in SL_3 over Q(zeta_3)", "group", 3, 3, [X, Y],
        expected_facts=[
            Fact("order", 27, "CLAIM"),
            Fact("center_order", 3, "CLAIM"),
            Fact("min_generators", 2, "CLAIM"),
            Fact("exponent", 3, "CLAIM"),
        ],
    )


def _entry_lift_D():
    return CatalogEntry(
        "heisenberg_lift_D", "D = diag(1, 1, zeta_3), acting on H3 by x -> xy, y -> y",
        "group", 3, 3, [lift_D()],
        expected_facts=[Fact("order", 3, "DERIVED")],
    )


def _entry_heisenberg_extended():
    X, Y = heisenberg_matrices()
    return CatalogEntry(
        "heisenberg_extended", "<X, Y, D>, an extension of H3 by C3", "group", 3, 3, [X, Y, lift_D()],
        expected_facts=[Fact("order", 81, "DERIVED"), Fact("pgl_order", 27, "CLAIM")],
    )


def _entry_c3c3():
    X, Y = heisenberg_matrices()
    return CatalogEntry(
        "c3c3_pgl2", "image of H3 in PGL_3: C3 x C3 acting on P^2", "projective", 3, 3, [X, Y],
        expected_facts=[Fact("order", 9, "CLAIM"), Fact("fixed_subspaces", 0, "CLAIM")],
    )


def _entry_fermat():
    return CatalogEntry(
        "fermat_group", "(C3)^3 scaling x1, x2, x3 on P^3", "group", 3, 4, fermat_generators(),
        expected_facts=[Fact("order", 27, "TRIVIAL"), Fact("min_generators", 3, "CLAIM")],
    )


def _entry_fermat_poly():
    return CatalogEntry(
        "fermat_cubic_poly", "Fermat cubic x1^3 + x2^3 + x3^3 + x4^3", "polynomial", 3, 4,
        polynomial=fermat_cubic(),
        expected_facts=[Fact("invariant_under:fermat_group", True, "CLAIM")],
    )


def _entry_product():
    ctx = get_context(3)
    I4 = CycMatrix.identity_matrix(4, ctx)
    I2 = CycMatrix.identity_matrix(2, ctx)
    gens = [block_diagonal(g, I2) for g in fermat_generators(ctx)]
    gens.append(block_diagonal(I4, CycMatrix.diagonal_roots([0, 1], ctx)))
    return CatalogEntry(
        "product_c3_4", "(C3)^3 x C3, block diagonal in dimension 6", "group", 3, 6, gens,
        expected_facts=[Fact("order", 81, "TRIVIAL"), Fact("min_generators", 4, "CLAIM")],
    )


def _entry_sigma_t(degrees=(1, 1, 1)):
    sigma, t = sigma_t(degrees)
    name = "sigma_t(%d,%d,%d)" % tuple(degrees)
    return CatalogEntry(
        name, "sigma (weighted 3-cycle) and t = diag(1, w, w^2)", "group", sigma.ctx.root_order, 3,
        [sigma, t],
    )


def _entry_cA1_group():
    return CatalogEntry(
        "cA1_group", "<diag(w,w^-1,1,1), diag(w,1,w^-1,1), diag(1,1,1,w)>", "group", 3, 4,
        cA1_generators(),
        expected_facts=[Fact("order", 27, "CLAIM")],
    )


def _entry_cA1_poly():
    return CatalogEntry(
        "cA1_poly", "z1^2 + z2 z3 + z4^3", "polynomial", 3, 4, polynomial=cA1_polynomial(),
        expected_facts=[Fact("invariant_under:cA1_group", True, "CLAIM (disputed)")],
    )


def _entry_order3_gl2z():
    return CatalogEntry(
        "order3_gl2z", "[[0,-1],[1,-1]], order 3 in GL_2(Z)", "integer", None, 2, [ORDER3_GL2Z],
        expected_facts=[Fact("order", 3, "DERIVED"), Fact("invariant_rank", 0, "DERIVED")],
    )


def _entry_perm3_gl3z():
    return CatalogEntry(
        "perm3_gl3z", "3-cycle permutation matrix in GL_3(Z)", "integer", None, 3, [PERM3_GL3Z],
        expected_facts=[Fact("order", 3, "TRIVIAL"), Fact("invariant_rank", 1, "DERIVED")],
    )


_BUILDERS: dict[str, Callable[[], CatalogEntry]] = {
    "heisenberg": _entry_heisenberg,
    "heisenberg_lift_D": _entry_lift_D,
    "heisenberg_extended": _entry_heisenberg_extended,
    "c3c3_pgl2": _entry_c3c3,
    "fermat_group": _entry_fermat,
    "fermat_cubic_poly": _entry_fermat_poly,
    "product_c3_4": _entry_product,
    "sigma_t": _entry_sigma_t,
    "cA1_group": _entry_cA1_group,
    "cA1_poly": _entry_cA1_poly,
    "order3_gl2z": _entry_order3_gl2z,
    "perm3_gl3z": _entry_perm3_gl3z,
}

BUILTIN_IDS = tuple(_BUILDERS)

_SIGMA_RE = re.compile(r"^sigma_t\((\d+),(\d+),(\d+)\)$")


@lru_cache(maxsize=None)
def builtin(id: str) -> CatalogEntry:
    """Look up a built-in object; ``sigma_t(d1,d2,d3)`` takes the lambda degrees."""
    key = id.replace(" ", "")
    m = _SIGMA_RE.match(key)
    if m:
        try:
            return _entry_sigma_t(tuple(int(x) for x in m.groups()))
        except ValueError as exc:
            raise UnknownId(str(exc)) from None
    if key not in _BUILDERS:
        raise UnknownId(f"unknown catalog id {id!r}; known: {', '.join(BUILTIN_IDS)}")
    return _BUILDERS[key]()


@lru_cache(maxsize=None)
def _group(id: str, cap: int = DEFAULT_CLOSURE_CAP):
    return builtin(id).group(cap)


@lru_cache(maxsize=None)
def _lift(id: str, cap: int = DEFAULT_CLOSURE_CAP):
    return builtin(id).lift_group(cap)


def sigma_t_scalar_group():
    """<sigma, t, zeta_9 I> with all lambda = 1, over Q(zeta_9)."""
    ctx = get_context(9)
    sigma, t = sigma_t((1, 1, 1))
    sigma, t = sigma.embed(ctx), t.embed(ctx)
    return closure([sigma, t, CycMatrix.scalar(3, root_of_unity(1, ctx))])


def catalog_p_groups() -> dict[str, object]:
    """Every catalog 3-group (plus derived constructions) used by cross-checks."""
    groups = {
        "heisenberg": _group("heisenberg"),
        "heisenberg_lift_D": _group("heisenberg_lift_D"),
        "heisenberg_extended": _group("heisenberg_extended"),
        "heisenberg_extended_pgl": pgl_image(_group("heisenberg_extended")),
        "c3c3_pgl2": _group("c3c3_pgl2"),
        "fermat_group": _group("fermat_group"),
        "product_c3_4": _group("product_c3_4"),
        "sigma_t(1,1,1)": _group("sigma_t(1,1,1)"),
        "sigma_t_scalar": sigma_t_scalar_group(),
        "cA1_group": _group("cA1_group"),
        "order3_gl2z": _group("order3_gl2z"),
        "perm3_gl3z": _group("perm3_gl3z"),
    }
    return groups


def random_unimodular(n: int, rng: random.Random, steps: int = 6) -> IntMatrix:
    """Product of random elementary matrices (and a sign flip)."""
    M = IntMatrix.identity_matrix(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        E = [[int(a == b) for b in range(n)] for a in range(n)]
        E[i][j] = rng.choice([-2, -1, 1, 2])
        M = M * IntMatrix(E)
    if rng.random() < 0.5:
        F = [[int(a == b) for b in range(n)] for a in range(n)]
        F[0][0] = -1
        M = M * IntMatrix(F)
    return M


def random_rational_matrix(n: int, ctx, rng: random.Random) -> CycMatrix:
    while True:
        M = CycMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], ctx)
        try:
            M.inverse()
            return M
        except Exception:
            continue


def random_gl2_three_group(rng: random.Random, cap: int = 729):
    """Random conjugate (over Q) of a diagonal 3-subgroup of GL_2(Q(zeta_9))."""
    ctx = get_context(9)
    k = rng.randint(1, 3)
    gens = [CycMatrix.diagonal_roots([rng.randrange(9), rng.randrange(9)], ctx) for _ in range(k)]
    P = random_rational_matrix(2, ctx, rng)
    return closure([g.conjugate(P) for g in gens], cap=cap)


# -- verification checks -----------------------------------------------------------


@dataclass
class CheckResult:
    id: str
    verdict: str
    computed: object
    expected: object
    provenance: str
    published_claim: object = None

    def to_json(self):
        out = {
            "id": self.id,
            "verdict": self.verdict,
            "computed": self.computed,
            "expected": self.expected,
            "provenance": self.provenance,
        }
        if self.published_claim is not None:
            out["published_claim"] = self.published_claim
        return out


@dataclass(frozen=True)
class Check:
    id: str
    run: Callable[[], object]
    expected: object
    provenance: str
    # for audited claims: what the source asserts, when it differs from ``expected``
    published_claim: object = None

    def evaluate(self) -> CheckResult:
        computed = self.run()
        if self.published_claim is not None:
            if computed == self.published_claim:
                verdict = PASS
            elif computed == self.expected:
                verdict = DISCREPANCY
            else:
                verdict = FAIL
        else:
            verdict = PASS if computed == self.expected else FAIL
        return CheckResult(self.id, verdict, computed, self.expected, self.provenance, self.published_claim)


def _heisenberg_center():
    G = _group("heisenberg")
    Z = center(G)
    scalars = frozenset(G.index[g] for g in scalar_elements(G))
    return {"order": Z.order, "equals_scalars": Z.members == scalars}


def _commutator_xy():
    X, Y = heisenberg_matrices()
    C = X * Y * X.inverse() * Y.inverse()
    ctx = X.ctx
    return {
        "scalar": C.is_scalar(),
        "value": C.rows[0][0].to_json(),
        "is_zeta_squared": C == CycMatrix.scalar(3, root_of_unity(2, ctx)),
    }


def _lift_relations():
    X, Y = heisenberg_matrices()
    D = CycMatrix.diagonal_roots([0, 0, 1], X.ctx)
    return {"DXD^-1=XY": D * X * D.inverse() == X * Y, "DYD^-1=Y": D * Y * D.inverse() == Y}


def _extended_normal():
    E = _group("heisenberg_extended")
    X, Y = heisenberg_matrices()
    H = subgroup_generated(E, [X, Y])
    return {"normal": is_normal(E, H), "index": index(E, H), "quotient_order": quotient_order(E, H)}


def _extended_pgl():
    P = pgl_image(_group("heisenberg_extended"))
    return {
        "order": P.order,
        "exponent": exponent(P),
        "abelian": is_abelian(P),
        "min_generators": min_generators(P, 3),
    }


def _fixed_count(id: str, lift: bool = True):
    G = _lift(id) if lift else _group(id)
    return [s.dim for s in fixed_subspaces(G)]


def _burnside_agreement():
    out = {}
    for name, G in catalog_p_groups().items():
        if G.order <= DEFAULT_BRUTEFORCE_CAP and is_p_group(G, 3):
            out[name] = min_generators(G, 3) == min_generators_bruteforce(G)
    return out


def _frattini_agreement():
    out = {}
    for name, G in catalog_p_groups().items():
        if G.order <= DEFAULT_BRUTEFORCE_CAP and is_p_group(G, 3):
            out[name] = frattini(G, 3) == frattini_by_maximal_subgroups(G)
    return out


def _semi(poly_id: str, group_id: str):
    return semi_invariant(builtin(poly_id).polynomial, builtin(group_id).generators)


def _cA1_status():
    r = _semi("cA1_poly", "cA1_group")
    return {
        "failing_generators": [i + 1 for i in r.failing_generators()],
        "trivial_on": [i + 1 for i, m in enumerate(r.multipliers) if m is not None and m.is_one()],
        "invariant": r.is_invariant,
    }


def _gl2z_random_ranks(trials: int = 100, seed: int = 3):
    rng = random.Random(seed)
    ranks = set()
    for _ in range(trials):
        P = random_unimodular(2, rng)
        ranks.add(invariant_sublattice([ORDER3_GL2Z.conjugate(P)]).rank)
    return sorted(ranks)


def _gl2_property(trials: int = 100, seed: int = 9):
    rng = random.Random(seed)
    ok = True
    for _ in range(trials):
        G = random_gl2_three_group(rng)
        P = pgl_image(G)
        ok &= is_p_group(G, 3) and is_abelian(G) and min_generators(G, 3) <= 2
        ok &= any(P.element_order(i) == P.order for i in range(P.order))
    return ok


def _gln_bound():
    out = {}
    for name, G in catalog_p_groups().items():
        ident = G.identity
        if isinstance(ident, IntMatrix):
            continue
        n = ident.n
        if isinstance(ident, ProjElement):
            out[name] = min_generators(G, 3) <= n - 1
        else:
            out[name] = min_generators(G, 3) <= n and min_generators(pgl_image(G), 3) <= n - 1
    return out


def _augment_pairs():
    E = _group("heisenberg_extended")
    H3 = _group("heisenberg")
    F = _group("fermat_group")
    X, Y = heisenberg_matrices()
    cases = [
        (H3, [g for g in center(H3).elements if not g.is_identity()][:1]),
        (H3, list(H3.generators)),
        (F, [F.generators[0]]),
        (E, [X, Y]),
        (E, []),
    ]
    ok = True
    for G, gens in cases:
        res = augment_generators(G, gens)
        H = subgroup_generated(G, gens)
        bound = len(gens) + p_power_exponent(G.order // H.order, 3)
        ok &= len(res) <= bound and subgroup_generated(G, res).order == G.order
    return ok


def _extension_pairs():
    H3 = _group("heisenberg")
    E = _group("heisenberg_extended")
    X, Y = heisenberg_matrices()
    cases = [(H3, center(H3)), (E, subgroup_generated(E, [X, Y])), (E, subgroup_generated(E, [])),
             (E, center(E)), (E, frattini(E, 3))]
    sizes = []
    ok = True
    for G, N in cases:
        res = extension_generators(G, N)
        dN = min_generators(N, 3)
        PhiN = G.generated(frattini(G, 3).members | N.members)
        dQ = p_power_exponent(G.order // len(PhiN), 3)
        ok &= subgroup_generated(G, res).order == G.order and len(res) <= dN + dQ
        sizes.append(len(res))
    return {"ok": ok, "sizes": sizes}


def _sylow_cases():
    X, Y = heisenberg_matrices()
    out = []
    for extra in (CycMatrix.diagonal([1, 1, -1], X.ctx), CycMatrix.scalar(3, X.ctx.rational(-1))):
        G = closure([X, Y, extra])
        out.append({"group_order": G.order, "sylow_order": sylow_p(G, 3).order})
    return out


def _sigma_t_scalar():
    G = sigma_t_scalar_group()
    return {"order": G.order, "min_generators": min_generators(G, 3),
            "bruteforce": min_generators_bruteforce(G)}


def _trivial_rank():
    G = closure([], identity=CycMatrix.identity_matrix(3, get_context(3)))
    return min_generators(G, 3)


def _heisenberg_orders():
    X, Y = heisenberg_matrices()
    from .matrices import element_order

    Z = X * Y * X.inverse() * Y.inverse()
    return [element_order(X), element_order(Y), element_order(Z)]


def _unipotent_infinite():
    from .errors import OrderCapExceeded
    from .matrices import element_order

    U = CycMatrix([[1, 1], [0, 1]], get_context(3))
    try:
        element_order(U, cap=100)
        return "finite"
    except OrderCapExceeded:
        return "OrderCapExceeded"


def _adversarial_gl2():
    """Non-commuting order-3 pairs in GL_2: the closure is infinite or not a 3-group."""
    ctx = get_context(3)
    A = CycMatrix([[0, -1], [1, -1]], ctx)
    outcomes = []
    for P in ([[1, 1], [0, 1]], [[2, 1], [1, 1]], [[1, 0], [1, 1]]):
        B = A.conjugate(CycMatrix(P, ctx))
        try:
            G = closure([A, B], cap=243)
            outcomes.append("abelian" if is_p_group(G, 3) and is_abelian(G) else "not-3-group"
                            if not is_p_group(G, 3) else "NONABELIAN")
        except ClosureCapExceeded:
            outcomes.append("cap")
    return "NONABELIAN" not in outcomes


def gl3z_probe_pairs(rng: random.Random, trials: int):
    """Pairs of order-3 elements of GL_3(Z), all conjugates of the 3-cycle.

    Half the pairs are unrelated conjugates (their closure is usually infinite
    or not a 3-group); the other half share a normalizer, so the closure is a
    finite 3-group and the cyclicity claim is actually exercised.
    """
    swap = IntMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])  # inverts the 3-cycle
    for k in range(trials):
        U = random_unimodular(3, rng)
        a = PERM3_GL3Z.conjugate(U)
        if k % 2:
            b = PERM3_GL3Z.conjugate(random_unimodular(3, rng))
        else:
            w = rng.choice([PERM3_GL3Z, swap, swap * PERM3_GL3Z])
            b = (PERM3_GL3Z ** rng.choice([1, 2])).conjugate(U * w)
        yield a, b


def _gl3z_random_cyclic(trials: int = 20, seed: int = 5):
    rng = random.Random(seed)
    ok = True
    finite = 0
    for a, b in gl3z_probe_pairs(rng, trials):
        try:
            G = int_closure([a, b], cap=243)
        except ClosureCapExceeded:
            continue
        if is_p_group(G, 3):
            finite += 1
            ok &= is_cyclic(G)
    return ok and finite > 0


def _checks() -> list[Check]:
    F = "fermat_group"
    return [
        Check("heisenberg-order", lambda: _group("heisenberg").order, 27, "CLAIM"),
        Check("heisenberg-generator-orders", _heisenberg_orders, [3, 3, 3], "CLAIM"),
        Check("heisenberg-center", _heisenberg_center, {"order": 3, "equals_scalars": True}, "CLAIM"),
        Check("heisenberg-rank", lambda: min_generators(_group("heisenberg"), 3), 2, "CLAIM"),
        Check("heisenberg-exponent", lambda: exponent(_group("heisenberg")), 3, "CLAIM"),
        Check("heisenberg-frattini-is-center",
              lambda: frattini(_group("heisenberg"), 3) == center(_group("heisenberg")), True, "DERIVED"),
        Check("heisenberg-commutator", _commutator_xy,
              {"scalar": True, "value": {"0": "-1", "1": "-1"}, "is_zeta_squared": True}, "DERIVED"),
        Check("heisenberg-center-index",
              lambda: index(_group("heisenberg"), center(_group("heisenberg"))), 9, "CLAIM"),
        Check("heisenberg-lift-relations", _lift_relations, {"DXD^-1=XY": True, "DYD^-1=Y": True}, "DERIVED"),
        Check("heisenberg-extended-order", lambda: _group("heisenberg_extended").order, 81, "DERIVED"),
        Check("heisenberg-extended-normal", _extended_normal,
              {"normal": True, "index": 3, "quotient_order": 3}, "CLAIM"),
        Check("heisenberg-extended-pgl", _extended_pgl,
              {"order": 27, "exponent": 3, "abelian": False, "min_generators": 2}, "CLAIM"),
        Check("c3c3-pgl-order", lambda: [_group("c3c3_pgl2").order, is_abelian(_group("c3c3_pgl2"))],
              [9, True], "CLAIM"),
        Check("c3c3-no-fixed-points", lambda: _fixed_count("c3c3_pgl2"), [], "CLAIM"),
        Check("y-fixed-points", lambda: [s.dim for s in fixed_subspaces([heisenberg_matrices()[1]])],
              [0, 0, 0], "TRIVIAL"),
        Check("fermat-rank", lambda: min_generators(_group(F), 3), 3, "CLAIM"),
        Check("fermat-fixed-points", lambda: _fixed_count(F, lift=False), [0, 0, 0, 0], "DERIVED"),
        Check("fermat-orbit-length",
              lambda: len(orbit([get_context(3).one()] * 4, _group(F))), 27, "DERIVED"),
        Check("fermat-cubic-invariant", lambda: _semi("fermat_cubic_poly", F).is_invariant, True, "CLAIM"),
        Check("product-c3-4", lambda: [_group("product_c3_4").order, min_generators(_group("product_c3_4"), 3)],
              [81, 4], "CLAIM"),
        Check("burnside-bruteforce-agreement", lambda: all(_burnside_agreement().values()), True, "DERIVED"),
        Check("frattini-maximal-agreement", lambda: all(_frattini_agreement().values()), True, "DERIVED"),
        Check("cA1-quadratic-part",
              lambda: homogeneous_part(cA1_polynomial(), 2) == Polynomial(
                  {(2, 0, 0, 0): 1, (0, 1, 1, 0): 1}, 4, get_context(3)), True, "CLAIM"),
        Check("cA1-semiinvariance", _cA1_status,
              {"failing_generators": [1, 2], "trivial_on": [3], "invariant": False}, "DERIVED",
              published_claim={"failing_generators": [], "trivial_on": [1, 2, 3], "invariant": True}),
        Check("gl2z-order3-invariant-rank", lambda: invariant_sublattice([ORDER3_GL2Z]).rank, 0, "DERIVED"),
        Check("gl2z-random-conjugate-ranks", _gl2z_random_ranks, [0], "CLAIM"),
        Check("gl3z-perm-invariant",
              lambda: invariant_sublattice([PERM3_GL3Z]).to_json(), {"rank": 1, "basis": [[1, 1, 1]]},
              "DERIVED"),
        Check("gl3z-perm-cyclic", lambda: is_cyclic(_group("perm3_gl3z")), True, "TRIVIAL"),
        Check("gl3z-random-3groups-cyclic", _gl3z_random_cyclic, True, "CLAIM"),
        Check("gl2-3groups-abelian", _gl2_property, True, "CLAIM"),
        Check("gl2-adversarial-pairs", _adversarial_gl2, True, "CLAIM"),
        Check("gln-rank-bound", lambda: all(_gln_bound().values()), True, "CLAIM"),
        Check("sigma-t-scalar-rank", _sigma_t_scalar, {"order": 81, "min_generators": 3, "bruteforce": 3},
              "DERIVED"),
        Check("sylow-3-subgroups", _sylow_cases,
              [{"group_order": 216, "sylow_order": 27}, {"group_order": 54, "sylow_order": 27}], "DERIVED"),
        Check("lemma-augment-generators", _augment_pairs, True, "DERIVED"),
        Check("lemma-extension-generators", lambda: _extension_pairs()["ok"], True, "DERIVED"),
        Check("trivial-group-rank", _trivial_rank, 0, "TRIVIAL"),
        Check("unipotent-infinite-order", _unipotent_infinite, "OrderCapExceeded", "TRIVIAL"),
    ]


CHECKS = {c.id: c for c in _checks()}
CHECK_IDS = tuple(sorted(CHECKS))


def verify(check_id: str = "all", threads: int = 1) -> list[CheckResult]:
    """Run one check or all of them; results are ordered by check id."""
    if check_id == "all":
        ids = list(CHECK_IDS)
    elif check_id in CHECKS:
        ids = [check_id]
    else:
        raise UnknownId(f"unknown check {check_id!r}")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: CHECKS[i].evaluate(), ids))
    else:
        results = [CHECKS[i].evaluate() for i in ids]
    return sorted(results, key=lambda r: r.id)
