"""Finite groups generated by matrices, and their structure.

A :class:`FiniteGroup` is the full enumeration of ``<generators>``, sorted by
the elements' ``sort_key`` so that element indices are canonical.  Elements
only need ``*``, hashing, ``sort_key()`` and ``identity()``; cyclotomic
matrices, projective classes and integer matrices all qualify.

Everything past closure works on element indices.  Products come from a
right-multiplication table by generators plus a BFS word for every element,
with a full Cayley table built lazily for small groups.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import (
    BruteForceCapExceeded,
    ClosureCapExceeded,
    NotAPGroup,
    NotASubset,
    NotNormal,
    ShapeError,
)

DEFAULT_CLOSURE_CAP = int(os.environ.get("PGROUP_WORKBENCH_MAX_ORDER", 3**12))
DEFAULT_BRUTEFORCE_CAP = 729
CAYLEY_TABLE_CAP = 2187


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def p_power_exponent(n: int, p: int) -> int | None:
    """k with n == p**k, else None."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class FiniteGroup:
    def __init__(self, generators, elements, right, words, identity_index):
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._right = right
        self._words = words
        self.identity_index = identity_index
        self._table = None

    def __repr__(self):
        return f"<FiniteGroup order={self.order} gens={len(self.generators)}>"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index[g] for g in self.generators)

    @property
    def identity(self):
        return self.elements[self.identity_index]

    # -- index arithmetic ----------------------------------------------------

    @property
    def table(self) -> np.ndarray | None:
        """Full Cayley table (row i, column j -> index of g_i * g_j), if small enough."""
        if self._table is None and self.order <= CAYLEY_TABLE_CAP:
            n = self.order
            right = np.asarray(self._right, dtype=np.int64).reshape(n, -1)
            table = np.empty((n, n), dtype=np.int64)
            table[:, self.identity_index] = np.arange(n)
            for j in self._bfs_order:
                if j == self.identity_index:
                    continue
                parent, s = self._parent[j]
                table[:, j] = right[table[:, parent], s]
            self._table = table
            self._table_rows = table.tolist()
        return self._table

    @cached_property
    def _parent(self):
        parent = {}
        for j, w in enumerate(self._words):
            if w:
                x = self.identity_index
                for s in w[:-1]:
                    x = self._right[x][s]
                parent[j] = (x, w[-1])
        return parent

    @cached_property
    def _bfs_order(self):
        return sorted(range(self.order), key=lambda j: len(self._words[j]))

    def mul(self, i: int, j: int) -> int:
        if self.table is not None:
            return self._table_rows[i][j]
        x = i
        right = self._right
        for s in self._words[j]:
            x = right[x][s]
        return x

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(i), -k)
        x = self.identity_index
        for _ in range(k):
            x = self.mul(x, i)
        return x

    def element_order(self, i: int) -> int:
        return self._orders[i]

    @cached_property
    def _orders(self) -> list[int]:
        orders = []
        for i in range(self.order):
            x, m = i, 1
            while x != self.identity_index:
                x = self.mul(x, i)
                m += 1
            orders.append(m)
        return orders

    def inv(self, i: int) -> int:
        return self._inverses[i]

    @cached_property
    def _inverses(self) -> list[int]:
        return [self.power(i, self._orders[i] - 1) for i in range(self.order)]

    def commutator(self, i: int, j: int) -> int:
        """[g, h] = g h g^-1 h^-1."""
        return self.mul(self.mul(self.mul(i, j), self.inv(i)), self.inv(j))

    def conj(self, i: int, by: int) -> int:
        """by * g * by^-1."""
        return self.mul(self.mul(by, i), self.inv(by))

    def indices_of(self, elements) -> list[int]:
        try:
            return [self.index[g] for g in elements]
        except KeyError:
            raise NotASubset("element not in group") from None

    def generated(self, gens) -> frozenset[int]:
        """Subgroup generated by a collection of element indices."""
        gens = [g for g in dict.fromkeys(gens) if g != self.identity_index]
        seen = {self.identity_index}
        queue = deque([self.identity_index])
        mul = self.mul
        while queue:
            x = queue.popleft()
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def whole(self) -> Subgroup:
        return Subgroup(self, frozenset(range(self.order)))

    def subgroup(self, elements) -> Subgroup:
        """Subgroup generated by matrices (or other elements) of this group."""
        return Subgroup(self, self.generated(self.indices_of(elements)))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of an enumerated ambient group, as a set of element indices."""

    group: FiniteGroup
    members: frozenset

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.group is self.group
            and other.members == self.members
        )

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.group!r}>"

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        i = self.group.index.get(g)
        return i is not None and i in self.members

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def indices(self) -> list[int]:
        return sorted(self.members)

    @property
    def elements(self) -> list:
        return [self.group.elements[i] for i in self.indices]

    def generating_indices(self) -> list[int]:
        """A small generating set, adjoining the canonically smallest missing element."""
        G = self.group
        chosen: list[int] = []
        current = frozenset([G.identity_index])
        for i in self.indices:
            if i not in current:
                chosen.append(i)
                current = G.generated(chosen)
                if current == self.members:
                    break
        return chosen

    def as_group(self, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
        G = self.group
        gens = [G.elements[i] for i in self.generating_indices()]
        return closure(gens, cap=cap, identity=G.identity)

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return self.members <= other.members


def _sub(G) -> Subgroup:
    return G if isinstance(G, Subgroup) else G.whole()


def closure(generators, cap: int = DEFAULT_CLOSURE_CAP, identity=None) -> FiniteGroup:
    """Enumerate <generators> breadth-first.

    Raises ClosureCapExceeded once more than ``cap`` elements are found.
    """
    generators = list(generators)
    if identity is None:
        if not generators:
            raise ValueError("identity must be given for an empty generator list")
        identity = generators[0].identity()
    for g in generators:
        if g.identity() != identity:
            raise ShapeError("generators do not share a shape/field")
        inverse = getattr(g, "inverse", None)
        if inverse is not None:
            inverse()  # NotInvertible / NotUnimodular surface here
    found = {identity: 0}
    order = [identity]
    right: list[list[int]] = []
    words: list[tuple[int, ...]] = [()]
    head = 0
    while head < len(order):
        x = order[head]
        row = []
        for s, g in enumerate(generators):
            y = x * g
            j = found.get(y)
            if j is None:
                j = len(order)
                if j >= cap:
                    raise ClosureCapExceeded(
                        f"closure exceeds {cap} elements (group may be infinite)"
                    )
                found[y] = j
                order.append(y)
                words.append(words[head] + (s,))
            row.append(j)
        right.append(row)
        head += 1
    # relabel canonically
    perm = sorted(range(len(order)), key=lambda i: order[i].sort_key())
    new_index = [0] * len(order)
    for new, old in enumerate(perm):
        new_index[old] = new
    elements = [order[old] for old in perm]
    new_right = [[new_index[j] for j in right[old]] for old in perm]
    new_words = [words[old] for old in perm]
    return FiniteGroup(generators, elements, new_right, new_words, new_index[0])


# -- structure queries ---------------------------------------------------------


def is_abelian(G) -> bool:
    H = _sub(G)
    gens = H.generating_indices()
    mul = H.group.mul
    return all(mul(a, b) == mul(b, a) for k, a in enumerate(gens) for b in gens[k + 1 :])


def exponent(G) -> int:
    H = _sub(G)
    e = 1
    for i in H.members:
        e = _lcm(e, H.group.element_order(i))
    return e


def is_p_group(G, p: int) -> bool:
    return p_power_exponent(_sub(G).order, p) is not None


def center(G) -> Subgroup:
    H = _sub(G)
    A = H.group
    gens = H.generating_indices()
    return Subgroup(
        A, frozenset(i for i in H.members if all(A.mul(i, s) == A.mul(s, i) for s in gens))
    )


def normal_closure(G, indices) -> Subgroup:
    """Smallest subgroup of G normal in G containing ``indices``."""
    H = _sub(G)
    A = H.group
    gens = H.generating_indices()
    current = A.generated(indices)
    while True:
        extra = [A.conj(x, s) for x in current for s in gens]
        grown = A.generated(list(current) + extra) if any(e not in current for e in extra) else current
        if grown == current:
            return Subgroup(A, current)
        current = grown


def commutator_subgroup(G) -> Subgroup:
    """Normal closure of commutators of generators; equals <[g,h] : g,h in G>."""
    H = _sub(G)
    A = H.group
    gens = H.generating_indices()
    comms = [A.commutator(a, b) for a in gens for b in gens]
    return normal_closure(H, comms)


def commutator_subgroup_all_pairs(G) -> Subgroup:
    H = _sub(G)
    A = H.group
    return Subgroup(A, A.generated([A.commutator(a, b) for a in H.members for b in H.members]))


def power_subgroup(G, p: int) -> Subgroup:
    """<g^p : g in G>."""
    H = _sub(G)
    A = H.group
    return Subgroup(A, A.generated([A.power(i, p) for i in H.members]))


def _require_p_group(H: Subgroup, p: int):
    if not is_prime(p):
        raise NotAPGroup(f"{p} is not prime")
    if p_power_exponent(H.order, p) is None:
        raise NotAPGroup(f"group of order {H.order} is not a {p}-group")


def frattini(G, p: int) -> Subgroup:
    """Frattini subgroup of a p-group as <commutators, p-th powers>."""
    H = _sub(G)
    _require_p_group(H, p)
    A = H.group
    comm = commutator_subgroup(H)
    pows = power_subgroup(H, p)
    return Subgroup(A, A.generated(list(comm.members) + list(pows.members)))


def all_subgroups(G, cap: int = DEFAULT_BRUTEFORCE_CAP) -> list[Subgroup]:
    """Every subgroup, found by joining cyclic subgroups until the lattice stops growing."""
    H = _sub(G)
    if H.order > cap:
        raise BruteForceCapExceeded(f"subgroup lattice limited to order {cap}")
    A = H.group
    cyclic = {}
    for i in H.indices:
        c = A.generated([i])
        cyclic.setdefault(c, i)
    found = {frozenset([A.identity_index]): []}
    frontier = [frozenset([A.identity_index])]
    while frontier:
        nxt = []
        for S in frontier:
            gens = found[S]
            for c, g in cyclic.items():
                if c <= S:
                    continue
                T = A.generated(gens + [g])
                if T not in found:
                    found[T] = gens + [g]
                    nxt.append(T)
        frontier = nxt
    return [Subgroup(A, S) for S in sorted(found, key=lambda s: (len(s), sorted(s)))]


def maximal_subgroups(G, cap: int = DEFAULT_BRUTEFORCE_CAP) -> list[Subgroup]:
    H = _sub(G)
    proper = [S for S in all_subgroups(H, cap) if S.order < H.order]
    return [S for S in proper if not any(S.members < T.members for T in proper)]


def frattini_by_maximal_subgroups(G, cap: int = DEFAULT_BRUTEFORCE_CAP) -> Subgroup:
    """Intersection of all maximal subgroups, by exhaustive lattice search."""
    H = _sub(G)
    members = H.members
    for M in maximal_subgroups(H, cap):
        members = members & M.members
    return Subgroup(H.group, members)


def min_generators(G, p: int) -> int:
    """d(G) = log_p |G / Phi(G)| (Burnside basis theorem)."""
    H = _sub(G)
    _require_p_group(H, p)
    phi = frattini(H, p)
    return p_power_exponent(H.order // phi.order, p)


def minimal_generating_set(G, p: int) -> list[int]:
    """A generating set of size d(G), grown greedily modulo the Frattini subgroup."""
    H = _sub(G)
    _require_p_group(H, p)
    A = H.group
    chosen: list[int] = []
    phi = list(frattini(H, p).members)
    current = A.generated(phi)
    for i in H.indices:
        if current == H.members:
            break
        if i not in current:
            chosen.append(i)
            current = A.generated(phi + chosen)
    return chosen


def min_generators_bruteforce(G, cap: int = DEFAULT_BRUTEFORCE_CAP) -> int:
    """Smallest k such that some k elements generate G, by exhaustive search.

    Candidates are one generator per cyclic subgroup (replacing g by another
    generator of <g> never changes what a set generates), and an element
    already inside the span of earlier choices is never adjoined.
    """
    H = _sub(G)
    if H.order > cap:
        raise BruteForceCapExceeded(f"brute-force search limited to order {cap}")
    if H.order == 1:
        return 0
    A = H.group
    target = H.members
    reps = {}
    for i in H.indices:
        c = A.generated([i])
        reps.setdefault(c, i)
    candidates = sorted(reps.values())

    def search(start, chosen, span, depth):
        for pos in range(start, len(candidates)):
            g = candidates[pos]
            if g in span:
                continue
            new_span = A.generated(chosen + [g])
            if new_span == target:
                return True
            if depth > 1 and search(pos + 1, chosen + [g], new_span, depth - 1):
                return True
        return False

    k = 1
    while True:
        if search(0, [], frozenset([A.identity_index]), k):
            return k
        k += 1


# -- subgroup tools --------------------------------------------------------------


def subgroup_generated(G, elements) -> Subgroup:
    H = _sub(G)
    idx = H.group.indices_of(elements)
    if any(i not in H.members for i in idx):
        raise NotASubset("elements outside the group")
    return Subgroup(H.group, H.group.generated(idx))


def _check_inside(H: Subgroup, S: Subgroup):
    if S.group is not H.group or not S.members <= H.members:
        raise NotASubset("subgroup is not contained in the group")


def is_normal(G, S: Subgroup) -> bool:
    H = _sub(G)
    _check_inside(H, S)
    A = H.group
    gens = H.generating_indices()
    sgens = S.generating_indices()
    return all(A.conj(x, g) in S.members for x in sgens for g in gens)


def index(G, S: Subgroup) -> int:
    H = _sub(G)
    _check_inside(H, S)
    return H.order // S.order


def coset_representatives(G, S: Subgroup) -> list[int]:
    """Canonically smallest element of every left coset gS."""
    H = _sub(G)
    _check_inside(H, S)
    A = H.group
    seen: set[int] = set()
    reps = []
    for g in H.indices:
        if g in seen:
            continue
        reps.append(g)
        seen.update(A.mul(g, s) for s in S.members)
    return reps


@dataclass
class Quotient:
    """G/N as a coset table: cosets are numbered by their smallest element."""

    group: FiniteGroup
    normal: Subgroup
    representatives: list[int]
    coset_of: dict

    @property
    def order(self) -> int:
        return len(self.representatives)

    def mul(self, a: int, b: int) -> int:
        A = self.group
        return self.coset_of[A.mul(self.representatives[a], self.representatives[b])]


def quotient(G, N: Subgroup) -> Quotient:
    H = _sub(G)
    if not is_normal(H, N):
        raise NotNormal("quotient needs a normal subgroup")
    reps = coset_representatives(H, N)
    A = H.group
    coset_of = {}
    for c, g in enumerate(reps):
        for n in N.members:
            coset_of[A.mul(g, n)] = c
    return Quotient(A, N, reps, coset_of)


def quotient_order(G, S: Subgroup) -> int:
    return quotient(G, S).order


def augment_generators(G, H_gens) -> list:
    """Extend generators of a subgroup to generators of G.

    Repeatedly adjoins the canonically smallest element outside the current
    subgroup; in a p-group each step lowers the index by at least p.
    """
    H = _sub(G)
    A = H.group
    chosen = A.indices_of(H_gens)
    if any(i not in H.members for i in chosen):
        raise NotASubset("generators lie outside the group")
    current = A.generated(chosen)
    for i in H.indices:
        if current == H.members:
            break
        if i not in current:
            chosen.append(i)
            current = A.generated(chosen)
    return [A.elements[i] for i in chosen]


def extension_generators(G, N: Subgroup, p: int | None = None) -> list:
    """Generators of N followed by one lift per generator of G/N.

    For p-groups both halves are minimal, so the result has d(N) + d(G/N)
    elements.  Otherwise lifts are adjoined greedily.
    """
    H = _sub(G)
    if not is_normal(H, N):
        raise NotNormal("extension_generators needs a normal subgroup")
    A = H.group
    if p is None:
        p = _prime_of(H.order)
    if p is not None:
        n_gens = minimal_generating_set(N, p)
        base = list(N.members) + list(frattini(H, p).members)
    else:
        n_gens = N.generating_indices()
        base = list(N.members)
    lifts: list[int] = []
    current = A.generated(base)
    for i in H.indices:
        if current == H.members:
            break
        if i not in current:
            lifts.append(i)
            current = A.generated(base + lifts)
    return [A.elements[i] for i in n_gens + lifts]


def _prime_of(n: int) -> int | None:
    """The prime p with n a power of p (None for 1 or mixed orders)."""
    for p in range(2, n + 1):
        if n % p == 0:
            return p if p_power_exponent(n, p) is not None else None
    return None


def direct_product(G1: FiniteGroup, G2: FiniteGroup, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Block-diagonal product of two cyclotomic matrix groups."""
    from .cyclotomic import get_context
    from .matrices import block_diagonal

    c1, c2 = G1.identity.ctx, G2.identity.ctx
    ctx = get_context(_lcm(c1.root_order, c2.root_order))
    I1 = G1.identity.embed(ctx)
    I2 = G2.identity.embed(ctx)
    gens = [block_diagonal(g.embed(ctx), I2) for g in G1.generators]
    gens += [block_diagonal(I1, g.embed(ctx)) for g in G2.generators]
    return closure(gens, cap=cap, identity=block_diagonal(I1, I2))


def sylow_p(G, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by adjoining p-elements from the normalizer."""
    H = _sub(G)
    A = H.group
    target = 1
    n = H.order
    while n % p == 0:
        n //= p
        target *= p
    P = frozenset([A.identity_index])
    while len(P) < target:
        gens = Subgroup(A, P).generating_indices()
        for g in H.indices:
            if g in P or p_power_exponent(A.element_order(g), p) is None:
                continue
            if all(A.conj(x, g) in P for x in gens):
                P = A.generated(list(P) + [g])
                break
        else:
            raise ArithmeticError("no p-element normalizes the current p-subgroup")
    return Subgroup(A, P)

