"""Independent floating-point oracles.

Nothing here touches the exact engine: matrices are numpy complex arrays,
elements are hashed by rounding, and linear algebra is SVD based.  The
tests compare the exact results against these.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

TOL = 1e-8


def zeta(N: int, k: int = 1) -> complex:
    return np.exp(2j * np.pi * k / N)


def to_complex(x, N: int) -> complex:
    """Evaluate a serialized cyclotomic number {k: "p/q"} (or plain rational)."""
    if isinstance(x, dict):
        return sum(float(Fraction(v)) * zeta(N, int(k)) for k, v in x.items())
    return complex(float(Fraction(x)))


def matrix(rows, N: int) -> np.ndarray:
    return np.array([[to_complex(x, N) for x in r] for r in rows], dtype=complex)


def _key(M: np.ndarray):
    return tuple(np.round(M, 6).flatten().tolist())


def _proj_key(M: np.ndarray):
    flat = M.flatten()
    k = next(i for i, x in enumerate(flat) if abs(x) > TOL)
    return _key(M / flat[k])


def close(gens, n: int, projective: bool = False, cap: int = 5000) -> list[np.ndarray]:
    key = _proj_key if projective else _key
    I = np.eye(n, dtype=complex)
    seen = {key(I): I}
    frontier = [I]
    while frontier:
        nxt = []
        for A in frontier:
            for g in gens:
                B = A @ g
                k = key(B)
                if k not in seen:
                    seen[k] = B
                    nxt.append(B)
                    if len(seen) > cap:
                        raise RuntimeError("oracle closure cap")
        frontier = nxt
    return list(seen.values())


def order_of(M: np.ndarray, projective: bool = False, cap: int = 1000) -> int:
    key = _proj_key if projective else _key
    I = np.eye(M.shape[0])
    P = M.copy()
    for k in range(1, cap + 1):
        if key(P) == key(I):
            return k
        P = P @ M
    raise RuntimeError("oracle order cap")


def commutes(A, B) -> bool:
    return np.allclose(A @ B, B @ A, atol=TOL)


def center_size(elements) -> int:
    return sum(all(commutes(z, g) for g in elements) for z in elements)


def exponent(elements, projective: bool = False) -> int:
    return int(np.lcm.reduce([order_of(g, projective) for g in elements]))


def is_abelian(elements) -> bool:
    return all(commutes(a, b) for a, b in itertools.combinations(elements, 2))


def brute_rank(elements, n: int, projective: bool = False, max_d: int = 3) -> int:
    """Smallest k such that some k elements generate the whole group."""
    total = len(elements)
    if total == 1:
        return 0
    for k in range(1, max_d + 1):
        for combo in itertools.combinations(elements, k):
            if len(close(list(combo), n, projective)) == total:
                return k
    raise RuntimeError("oracle rank above max_d")


def nullity(A: np.ndarray) -> int:
    s = np.linalg.svd(A, compute_uv=False)
    return int(A.shape[1] - np.sum(s > 1e-7))


def fixed_locus_dims(gens, n: int, N: int) -> list[int]:
    """Projective dimensions of the maximal common-eigenvector subspaces.

    For every tuple of N-th roots of unity (one per generator) stack the
    matrices g_i - lambda_i I and read off the nullity.
    """
    if not gens:
        return [n - 1]
    dims = []
    for lams in itertools.product(range(N), repeat=len(gens)):
        A = np.vstack([g - zeta(N, k) * np.eye(n) for g, k in zip(gens, lams)])
        d = nullity(A)
        if d:
            dims.append(d - 1)
    return sorted(dims)


def rational_rank_of_fixed_space(int_gens, n: int) -> int:
    if not int_gens:
        return n
    A = np.vstack([np.array(g, dtype=float) - np.eye(n) for g in int_gens])
    return nullity(A)


def evaluate_poly(terms, z: np.ndarray, N: int) -> complex:
    total = 0j
    for t in terms:
        c = to_complex(t["coeff"], N)
        total += c * np.prod([z[i] ** e for i, e in enumerate(t["exponents"])])
    return total


def semi_invariant_ratio(terms, g: np.ndarray, N: int, rng: np.random.Generator, samples: int = 4):
    """f(g z) / f(z) at random points; a constant iff f is semi-invariant under g."""
    n = g.shape[0]
    ratios = []
    for _ in range(samples):
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        ratios.append(evaluate_poly(terms, g @ z, N) / evaluate_poly(terms, z, N))
    constant = all(abs(r - ratios[0]) < 1e-6 for r in ratios)
    return constant, ratios[0]
