from __future__ import annotations

import random

import numpy as np
import pytest

import oracles
from pgroup_workbench.catalog import (
    _group,
    catalog_p_groups,
    fermat_generators,
    heisenberg_matrices,
    lift_D,
    random_gl2_three_group,
    sigma_t_scalar_group,
)
from pgroup_workbench.cyclotomic import get_context, root_of_unity
from pgroup_workbench.errors import (
    BruteForceCapExceeded,
    ClosureCapExceeded,
    NotAPGroup,
    NotASubset,
    NotNormal,
)
from pgroup_workbench.groups import (
    all_subgroups,
    augment_generators,
    center,
    closure,
    commutator_subgroup,
    commutator_subgroup_all_pairs,
    coset_representatives,
    direct_product,
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
    power_subgroup,
    quotient,
    quotient_order,
    subgroup_generated,
    sylow_p,
)
from pgroup_workbench.matrices import CycMatrix
from pgroup_workbench.projective import pgl_image

CTX3 = get_context(3)


def floats(mats):
    return [oracles.matrix(m.to_json(), m.ctx.root_order) for m in mats]


def test_heisenberg_against_float_oracle():
    X, Y = heisenberg_matrices()
    G = closure([X, Y])
    elems = oracles.close(floats([X, Y]), 3)
    assert G.order == len(elems) == 27
    assert center(G).order == oracles.center_size(elems) == 3
    assert exponent(G) == oracles.exponent(elems) == 3
    assert is_abelian(G) is oracles.is_abelian(elems) is False
    assert min_generators(G, 3) == oracles.brute_rank(elems, 3) == 2


def test_heisenberg_center_is_scalar_subgroup():
    G = _group("heisenberg")
    Z = center(G)
    assert all(g.is_scalar() for g in Z.elements)
    assert {g.rows[0][0] for g in Z.elements} == {root_of_unity(k, CTX3) for k in range(3)}
    assert index(G, Z) == 9 and is_normal(G, Z)


def test_lift_relations_and_extended_group():
    X, Y = heisenberg_matrices()
    D = lift_D()
    assert D * X * D.inverse() == X * Y
    assert D * Y * D.inverse() == Y
    G = closure([X, Y, D])
    assert G.order == len(oracles.close(floats([X, Y, D]), 3)) == 81
    H = subgroup_generated(G, [X, Y])
    assert is_normal(G, H) and quotient_order(G, H) == 3
    P = pgl_image(G)
    proj = oracles.close(floats([X, Y, D]), 3, projective=True)
    assert P.order == len(proj) == 27
    assert exponent(P) == oracles.exponent(proj, projective=True) == 3
    assert not is_abelian(P)


def test_closure_is_generator_order_independent():
    X, Y = heisenberg_matrices()
    D = lift_D()
    a = closure([X, Y, D])
    b = closure([D, Y, X, X * Y])
    assert a.elements == b.elements


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        closure([CycMatrix([[1, 1], [0, 1]], CTX3)], cap=50)


def test_group_axioms_exhaustively():
    G = _group("heisenberg_extended")
    ident = G.identity_index
    for i in range(G.order):
        assert G.mul(i, G.inv(i)) == ident
        for j in range(0, G.order, 7):
            assert G.elements[G.mul(i, j)] == G.elements[i] * G.elements[j]


@pytest.mark.parametrize("name", sorted(catalog_p_groups()))
def test_catalog_frattini_routes_agree(name):
    G = catalog_p_groups()[name]
    if G.order > 729:
        pytest.skip("above brute-force cap")
    p = 3
    Phi = frattini(G, p)
    assert Phi == frattini_by_maximal_subgroups(G)
    assert is_normal(G, Phi)
    Q = quotient(G, Phi)
    # elementary abelian quotient: order p^d with every element of order p
    assert Q.order == p ** min_generators(G, p)
    assert min_generators(G, p) == min_generators_bruteforce(G)


def test_frattini_examples():
    G = _group("heisenberg")
    assert frattini(G, 3) == center(G)
    assert frattini(_group("fermat_group"), 3).order == 1
    cyc9 = closure([CycMatrix.scalar(3, root_of_unity(1, get_context(9)))])
    Phi = frattini(cyc9, 3)
    assert Phi.order == 3
    with pytest.raises(NotAPGroup):
        frattini(closure([CycMatrix([[0, 1], [1, 0]], CTX3)]), 3)


def test_commutator_routes_agree():
    for G in catalog_p_groups().values():
        assert commutator_subgroup(G) == commutator_subgroup_all_pairs(G)
        if is_abelian(G):
            assert commutator_subgroup(G).order == 1


def test_power_subgroup_and_lagrange():
    G = _group("heisenberg_extended")
    assert power_subgroup(G, 3).order in (1, 3)
    for S in all_subgroups(G):
        assert G.order % S.order == 0
        assert len(coset_representatives(G, S)) == index(G, S)


def test_min_generators_examples():
    assert min_generators(_group("heisenberg"), 3) == 2
    assert min_generators(_group("fermat_group"), 3) == 3
    trivial = closure([], identity=CycMatrix.identity_matrix(3, CTX3))
    assert min_generators(trivial, 3) == 0 and min_generators_bruteforce(trivial) == 0
    _, Y = heisenberg_matrices()
    assert min_generators_bruteforce(closure([Y])) == 1
    S = sigma_t_scalar_group()
    assert S.order == 81
    assert min_generators_bruteforce(S) == min_generators(S, 3) == 3


def test_bruteforce_cap():
    with pytest.raises(BruteForceCapExceeded):
        min_generators_bruteforce(_group("heisenberg_extended"), cap=27)


def test_not_a_subset_and_not_normal():
    G = _group("heisenberg")
    with pytest.raises(NotASubset):
        subgroup_generated(G, [lift_D()])
    E = _group("heisenberg_extended")
    X, _ = heisenberg_matrices()
    S = subgroup_generated(E, [X])
    assert not is_normal(E, S)
    with pytest.raises(NotNormal):
        quotient(E, S)
    with pytest.raises(NotNormal):
        extension_generators(E, S)


def _span(G, elems):
    return subgroup_generated(G, elems).order


def test_augment_generators_examples():
    H3 = _group("heisenberg")
    z = [g for g in center(H3).elements if not g.is_identity()][0]
    out = augment_generators(H3, [z])
    assert len(out) <= 3 and _span(H3, out) == 27
    assert augment_generators(H3, list(H3.generators)) == list(H3.generators)
    F = _group("fermat_group")
    out = augment_generators(F, [F.generators[0]])
    assert len(out) <= 3 and _span(F, out) == F.order


@pytest.mark.parametrize("seed", range(10))
def test_augment_bound_on_random_subgroups(seed):
    rng = random.Random(seed)
    G = _group("heisenberg_extended")
    gens = [G.elements[rng.randrange(G.order)] for _ in range(rng.randint(0, 2))]
    H = subgroup_generated(G, gens)
    out = augment_generators(G, gens)
    assert _span(G, out) == G.order
    assert len(out) <= len(gens) + p_power_exponent(G.order // H.order, 3)


def test_extension_generators_examples():
    H3 = _group("heisenberg")
    out = extension_generators(H3, center(H3))
    assert len(out) == 3 and _span(H3, out) == 27
    E = _group("heisenberg_extended")
    X, Y = heisenberg_matrices()
    out = extension_generators(E, subgroup_generated(E, [X, Y]))
    assert len(out) <= 3 and _span(E, out) == 81
    trivial = subgroup_generated(E, [])
    out = extension_generators(E, trivial)
    assert _span(E, out) == 81 and len(out) == min_generators(E, 3)


def test_direct_product_examples():
    F = _group("fermat_group")
    c3 = closure([CycMatrix.diagonal_roots([0, 1], CTX3)])
    P = direct_product(F, c3)
    assert P.order == 81 and P.identity.n == 6 and min_generators(P, 3) == 4
    assert P.order == len(oracles.close(floats(P.generators), 6))
    trivial = closure([], identity=CycMatrix.identity_matrix(1, CTX3))
    H3 = _group("heisenberg")
    Q = direct_product(H3, trivial)
    assert Q.order == 27 and min_generators(Q, 3) == 2
    c = direct_product(c3, c3)
    assert c.order == 9 and min_generators(c, 3) == 2


@pytest.mark.parametrize("seed", range(8))
def test_subgroups_of_products_respect_factor_bounds(seed):
    rng = random.Random(seed)
    G1, G2 = _group("heisenberg"), _group("fermat_group")
    P = direct_product(G1, G2)
    bound = min_generators(G1, 3) + min_generators(G2, 3)
    gens = [P.elements[rng.randrange(P.order)] for _ in range(rng.randint(1, 6))]
    H = subgroup_generated(P, gens)
    assert min_generators(H, 3) <= bound


def test_sylow_examples():
    X, Y = heisenberg_matrices()
    H3 = _group("heisenberg")
    assert sylow_p(H3, 3).order == 27
    # with a sign: C2 x C2 x C2 x H3, order 216
    G = closure([X, Y, CycMatrix.diagonal([1, 1, -1], CTX3)])
    S = sylow_p(G, 3)
    assert G.order == len(oracles.close(floats(G.generators), 3)) == 216
    assert S.order == 27 and is_p_group(S, 3)
    G54 = closure([X, Y, CycMatrix.scalar(3, CTX3.rational(-1))])
    assert G54.order == 54 and sylow_p(G54, 3).order == 27
    trivial = closure([], identity=CycMatrix.identity_matrix(2, CTX3))
    assert sylow_p(trivial, 3).order == 1


@pytest.mark.parametrize("seed", range(6))
def test_gl2_three_groups_are_abelian(seed):
    G = random_gl2_three_group(random.Random(seed))
    assert is_p_group(G, 3) and is_abelian(G) and min_generators(G, 3) <= 2
    elems = oracles.close(floats(G.generators), 2)
    assert len(elems) == G.order and oracles.is_abelian(elems)


def test_catalog_gln_bound():
    for name, G in catalog_p_groups().items():
        ident = G.identity
        n = getattr(ident, "n", None)
        if n is None or not hasattr(ident, "ctx"):
            continue
        assert min_generators(G, 3) <= n, name


def test_cayley_table_matches_products():
    G = _group("heisenberg")
    T = G.table
    assert T is not None and T.shape == (27, 27)
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, 27, size=(40, 2)):
        assert T[i, j] == G.index[G.elements[i] * G.elements[j]]
