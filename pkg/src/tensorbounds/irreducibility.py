"""Weak irreducibility via the representation matrix and its digraph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import PreconditionError
from .tensor import SparseTensor


@dataclass(frozen=True)
class BipartitionWitness:
    """Split of the index set into classes ``U`` and ``W``.

    Every stored entry has its lead in one class and its whole tail in the
    other. ``ell`` is only filled in by the bounds module.
    """

    U: frozenset[int]
    W: frozenset[int]
    ell: float | None = None


def _first_occurrence_mask(T: SparseTensor) -> np.ndarray:
    # mask[e, c] is True when tail column c holds an index not seen earlier in the tail
    tails = T.tails
    mask = np.ones(tails.shape, dtype=bool)
    for c in range(1, tails.shape[1]):
        mask[:, c] = np.all(tails[:, :c] != tails[:, c:c + 1], axis=1)
    return mask


def representation_matrix(T: SparseTensor) -> np.ndarray:
    """Dense ``n x n`` matrix ``G`` with ``G[i, j]`` the total of entries
    ``a[i, i2, ..., im]`` whose tail contains ``j``.

    Each entry contributes once per distinct index in its tail.
    """
    G = np.zeros((T.dim, T.dim))
    mask = _first_occurrence_mask(T)
    for c in range(T.order - 1):
        sel = mask[:, c]
        np.add.at(G, (T.leads[sel], T.tails[sel, c]), T.values[sel])
    return G


def _arc_graph(T: SparseTensor):
    n, m = T.dim, T.order
    rows = np.repeat(T.leads, m - 1)
    cols = T.tails.reshape(-1)
    return coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)).tocsr()


def is_weakly_irreducible(T: SparseTensor) -> bool:
    """True iff the digraph of ``G(T)`` is strongly connected."""
    if T.dim == 1:
        return True
    ncomp, _ = connected_components(_arc_graph(T), directed=True, connection="strong")
    return ncomp == 1


def neighbor_nonempty_check(T: SparseTensor) -> bool:
    """Every index has a nonempty ``N(i)`` and lies in some ``N(k)``."""
    has_out = np.zeros(T.dim, dtype=bool)
    has_in = np.zeros(T.dim, dtype=bool)
    has_out[T.leads] = True
    has_in[T.tails.reshape(-1)] = True
    return bool(has_out.all() and has_in.all())


def bipartition_structure(T: SparseTensor) -> BipartitionWitness | None:
    """Find ``U``/``W`` with every entry's lead and tail in opposite classes.

    Index 0 is always placed in ``U``. Returns None when no such split exists.
    """
    if not T.has_zero_diagonal():
        raise PreconditionError("bipartition search requires a zero diagonal")
    if not is_weakly_irreducible(T):
        raise PreconditionError("bipartition search requires a weakly irreducible tensor")
    n = T.dim
    # parity constraints: 1 = different class, 0 = same class
    adj = [[] for _ in range(n)]
    for lead, *tail in T.indices.tolist():
        first = tail[0]
        adj[lead].append((first, 1))
        adj[first].append((lead, 1))
        for other in tail[1:]:
            adj[first].append((other, 0))
            adj[other].append((first, 0))

    color = [-1] * n
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, parity in adj[u]:
            want = color[u] ^ parity
            if color[v] == -1:
                color[v] = want
                queue.append(v)
            elif color[v] != want:
                return None
    if -1 in color:
        return None
    U = frozenset(i for i in range(n) if color[i] == 0)
    W = frozenset(i for i in range(n) if color[i] == 1)
    if not U or not W:
        return None
    return BipartitionWitness(U, W)
