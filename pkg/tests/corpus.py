"""Deterministic test corpora and independent oracles.

Nothing here calls the code under test except to filter generated tensors
(weak irreducibility), and that filter is itself cross-checked against
``brute_force_weakly_irreducible``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from tensorbounds import Hypergraph, SparseTensor, apply, is_connected, row_sums
from tensorbounds.irreducibility import is_weakly_irreducible


# -- oracles ----------------------------------------------------------------

def brute_force_weakly_irreducible(T: SparseTensor) -> bool:
    """Scan every nonempty proper subset I; reducible iff some I has no
    entry with lead in I and a tail index outside I."""
    n = T.dim
    entries = [(row[0], set(row[1:])) for row in T.indices.tolist()]
    for size in range(1, n):
        for I in itertools.combinations(range(n), size):
            I = set(I)
            if not any(lead in I and not tail <= I for lead, tail in entries):
                return False
    return True


def dense_apply(T: SparseTensor, x) -> np.ndarray:
    """``T x^{m-1}`` by repeated contraction of the dense array."""
    out = T.to_dense()
    for _ in range(T.order - 1):
        out = out @ np.asarray(x, dtype=float)
    return out


def dense_matrix_rho(T: SparseTensor) -> float:
    assert T.order == 2
    return float(np.max(np.abs(np.linalg.eigvals(T.to_dense()))))


def h1_q_rho() -> float:
    """1 + s^2 with s the real root of s^3 - s - 2."""
    s = brentq(lambda s: s**3 - s - 2, 1.0, 2.0, xtol=1e-15)
    return 1.0 + s * s


# -- named instances --------------------------------------------------------

def matrix(rows) -> SparseTensor:
    return SparseTensor.from_dense(np.array(rows, dtype=float))


P3 = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
STAR = [[0, 1, 1, 1], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]]
TRIANGLE = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
H1 = Hypergraph(4, 3, ((0, 1, 2), (0, 1, 3)))


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    return Hypergraph(n, k, tuple(itertools.combinations(range(n), k)))


# -- random generators ------------------------------------------------------

def offdiagonal_tuples(m: int, n: int):
    return [t for t in itertools.product(range(n), repeat=m) if len(set(t)) > 1 or n == 1]


def random_tensor(rng, m, n, density, allow=None) -> SparseTensor:
    """Random tensor, zero-diagonal unless n == 1; may be reducible."""
    cands = allow if allow is not None else offdiagonal_tuples(m, n)
    keep = rng.random(len(cands)) < density
    if not keep.any():
        keep[rng.integers(len(cands))] = True
    chosen = [c for c, k in zip(cands, keep) if k]
    vals = rng.uniform(0.1, 2.0, len(chosen))
    return SparseTensor(m, n, np.array(chosen).reshape(-1, m), vals)


def random_irreducible(rng, m, n, density, allow=None) -> SparseTensor:
    while True:
        T = random_tensor(rng, m, n, density, allow)
        if is_weakly_irreducible(T):
            return T


def random_bipartite(rng, m, n, density) -> tuple[SparseTensor, set[int]]:
    """Weakly irreducible tensor whose entries cross a random split U / W."""
    while True:
        U = set(int(i) for i in np.flatnonzero(rng.random(n) < 0.5))
        if 0 < len(U) < n:
            break
    W = set(range(n)) - U
    allow = [t for t in itertools.product(range(n), repeat=m)
             if (t[0] in U and set(t[1:]) <= W) or (t[0] in W and set(t[1:]) <= U)]
    return random_irreducible(rng, m, n, density, allow), U


def random_connected_hypergraph(rng, n, k, extra=3) -> Hypergraph:
    low = -(-(n - 1) // (k - 1))
    while True:
        count = int(rng.integers(low, low + extra + 1))
        edges = {tuple(sorted(int(v) for v in rng.choice(n, k, replace=False))) for _ in range(count)}
        H = Hypergraph(n, k, tuple(sorted(edges)))
        if is_connected(H):
            return H


@dataclass
class Case:
    """A bounds problem: rho(A + diag(t)) with weights R."""

    name: str
    A: SparseTensor
    t: np.ndarray
    R: np.ndarray
    expected_rho: float | None = None


def sandwich_corpus(count=200, seed=20170601) -> list[Case]:
    rng = np.random.default_rng(seed)
    cases = []
    for c in range(count):
        m = (2, 3, 4)[c % 3]
        n = int(rng.integers(2, 7))
        density = float(rng.uniform(0.2, 0.9))
        A = random_irreducible(rng, m, n, density)
        t = rng.uniform(0.0, 2.0, n)
        R = rng.uniform(0.5, 2.0, n)
        cases.append(Case(f"random-{c}-m{m}-n{n}", A, t, R))
    return cases


def uniform_corpus(count=20, seed=7) -> list[Case]:
    """Shifts chosen so every t_i + S_i/R_i^(m-1) equals a common value."""
    rng = np.random.default_rng(seed)
    cases = []
    for c in range(count):
        m = (2, 3, 4)[c % 3]
        n = int(rng.integers(2, 6))
        A = random_irreducible(rng, m, n, float(rng.uniform(0.3, 0.8)))
        R = rng.uniform(0.5, 2.0, n)
        T = apply(A, R) / R ** (m - 1)
        value = float(T.max() + rng.uniform(0.0, 1.0))
        t = value - T
        cases.append(Case(f"uniform-{c}-m{m}-n{n}", A, t, R, expected_rho=value))
    return cases


def bipartite_corpus(count=20, seed=11) -> list[Case]:
    """Split tensors with shifts making the two-class identities hold."""
    rng = np.random.default_rng(seed)
    cases = []
    for c in range(count):
        m = (2, 3, 4)[c % 3]
        n = int(rng.integers(2, 6))
        A, U = random_bipartite(rng, m, n, float(rng.uniform(0.4, 0.9)))
        R = rng.uniform(0.5, 2.0, n)
        T = apply(A, R) / R ** (m - 1)
        L = float(rng.uniform(0.5, 2.0)) ** (m - 1)
        part = np.array([L * T[i] if i in U else T[i] / L for i in range(n)])
        alpha = float(part.max() + rng.uniform(0.0, 1.0))
        cases.append(Case(f"bipartite-{c}-m{m}-n{n}", A, alpha - part, R, expected_rho=alpha))
    return cases


def plain_bipartite_corpus(count=15, seed=13) -> list[Case]:
    """Split tensors with random shifts (identities generally fail)."""
    rng = np.random.default_rng(seed)
    cases = []
    for c in range(count):
        m = (2, 3, 4)[c % 3]
        n = int(rng.integers(3, 7))
        A, _ = random_bipartite(rng, m, n, float(rng.uniform(0.4, 0.9)))
        cases.append(Case(f"plain-bipartite-{c}-m{m}-n{n}", A,
                          rng.uniform(0.0, 2.0, n), rng.uniform(0.5, 2.0, n)))
    return cases


def reducibility_corpus(count=120, seed=5) -> list[SparseTensor]:
    """Mixed reducible / irreducible tensors, n <= 8, sparse enough that
    both outcomes occur."""
    rng = np.random.default_rng(seed)
    out = []
    for c in range(count):
        m = (2, 3, 4)[c % 3]
        n = int(rng.integers(1, 9 if m < 4 else 7))
        density = float(rng.uniform(0.02, 0.4)) if m > 2 else float(rng.uniform(0.1, 0.6))
        out.append(random_tensor(rng, m, n, density))
    return out


def equal_rowsum(A: SparseTensor, value: float) -> SparseTensor:
    """Rescale each lead slice so all row sums equal ``value``."""
    r = row_sums(A)
    return SparseTensor(A.order, A.dim, A.indices, A.values * (value / r[A.leads]))
