"""Covering subspace codes in the Grassmannian G_q(n, k).

A covering code here is a multiset of k-dimensional subspaces of
GF(q)^n such that every selection of ``alpha`` codewords (with
repetition counted, i.e. every size-``alpha`` sub-multiset) spans a
subspace of dimension at least ``delta + k``.  Codes are stored as
ordered tuples; repeated codewords are legal and meaningful.

The module provides deterministic enumeration of Grassmannians, a
verifier that reports the worst witness on failure, and an exhaustive
branch-and-bound search for the maximum code size at small parameters.
The search is exact-or-flagged: it either completes and returns a
certified maximum or stops at a node budget and says so.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

import numpy as np

from .ffield import FieldSpec
from .linalg import SubspaceQ, gaussian_binomial, rank_of_array

#: Refuse to enumerate Grassmannians larger than this.
ENUMERATION_LIMIT = 10**6

#: Default node budget for the exhaustive maximum-size search.
NODE_LIMIT = 10**7


@dataclass(frozen=True)
class CoverWitness:
    """A failing selection: codeword indices and the dimension they span."""

    indices: tuple[int, ...]
    achieved_dim: int
    required_dim: int


@dataclass(frozen=True)
class CoveringCode:
    """A multiset of subspaces with declared covering parameters.

    Storage does not enforce the covering property (``is_covering_code``
    does); it enforces only structural consistency: every codeword lives
    in GF(q)^n and has dimension at most k.  Dimension below k is
    tolerated at storage time so that degenerate inputs can be loaded
    and then rejected by verification with a useful witness.
    """

    field: FieldSpec
    n: int
    k: int
    delta: int
    alpha: int
    codewords: tuple[SubspaceQ, ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 0 or self.k > self.n:
            raise ValueError(f"bad ambient/dimension pair (n={self.n}, k={self.k})")
        if self.alpha < 2:
            raise ValueError(f"alpha must be >= 2, got {self.alpha}")
        for i, c in enumerate(self.codewords):
            if c.field != self.field or c.ambient != self.n:
                raise ValueError(f"codeword {i} lives in the wrong space")
            if c.dim > self.k:
                raise ValueError(f"codeword {i} has dimension {c.dim} > k = {self.k}")

    @property
    def size(self) -> int:
        return len(self.codewords)


def enumerate_grassmannian(n: int, k: int, field: FieldSpec, cap: int = ENUMERATION_LIMIT) -> list[SubspaceQ]:
    """All k-dimensional subspaces of GF(q)^n in a pinned canonical order.

    Subspaces are emitted grouped by the pivot-column set of their
    canonical basis (pivot sets in lexicographic order), and within a
    group by the free entries read row-major as a base-q counter, most
    significant first.  For G(2, 1) over GF(2) this yields
    span(1,0), span(1,1), span(0,1).

    Raises ValueError if the Grassmannian has more than ``cap`` elements.
    """
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = gaussian_binomial(n, k, field.q)
    if total > cap:
        raise ValueError(f"Grassmannian has {total} elements, above the cap {cap}")
    q = field.q
    out: list[SubspaceQ] = []
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free_cells = [
            (i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivot_set
        ]
        template = np.zeros((k, n), dtype=np.int16)
        for i, p in enumerate(pivots):
            template[i, p] = 1
        for assignment in product(range(q), repeat=len(free_cells)):
            m = template.copy()
            for (i, j), v in zip(free_cells, assignment):
                m[i, j] = v
            basis = tuple(tuple(int(x) for x in row) for row in m)
            out.append(SubspaceQ._from_canonical(field, n, basis))
    assert len(out) == total
    return out


def is_covering_code(code: CoveringCode) -> tuple[bool, Optional[CoverWitness]]:
    """Exhaustively verify the covering property.

    Scans every size-``alpha`` sub-multiset.  On failure returns the
    witness with the smallest achieved dimension, breaking ties by the
    lexicographically first index tuple.  Raises ValueError when the
    code has fewer than ``alpha`` codewords (the property would be
    vacuous) or when ``delta + k`` exceeds the ambient dimension.
    """
    if code.size < code.alpha:
        raise ValueError(f"need at least alpha={code.alpha} codewords to verify, have {code.size}")
    need = code.delta + code.k
    if need > code.n:
        raise ValueError(f"required span {need} exceeds the ambient dimension {code.n}")
    arrays = [c.basis_array() for c in code.codewords]
    worst: Optional[CoverWitness] = None
    for sel in combinations(range(code.size), code.alpha):
        got = rank_of_array(np.vstack([arrays[i] for i in sel]), code.field)
        if got < need and (worst is None or got < worst.achieved_dim):
            worst = CoverWitness(indices=sel, achieved_dim=got, required_dim=need)
    return (worst is None), worst


@dataclass
class SearchResult:
    """Outcome of the exhaustive maximum-size search."""

    size: int
    code: Optional[CoveringCode]
    exact: bool
    nodes: int = 0


def max_covering_code(
    n: int,
    k: int,
    delta: int,
    alpha: int,
    field: FieldSpec,
    node_limit: int = NODE_LIMIT,
    target_size: Optional[int] = None,
    cap: int = ENUMERATION_LIMIT,
) -> SearchResult:
    """Exhaustive search for the largest covering code, exact or flagged.

    Explores multisets of Grassmannian elements in non-decreasing index
    order, pruning as soon as a size-``alpha`` sub-multiset of the
    current selection fails the span requirement (adding codewords never
    repairs a violated selection, so the pruning is sound).  Every
    extension attempt costs one node; if the budget runs out the best
    code found so far is returned with ``exact=False``.

    ``target_size`` stops the search once a valid code of that size is
    found; the result is then a decision witness, not a maximum, and
    ``exact`` is False unless the tree finished anyway.

    Requires ``1 <= delta`` and ``delta + k <= n``; with ``delta == 0``
    every multiset is a covering code and no maximum exists.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1 for the maximum to be finite")
    if delta + k > n:
        raise ValueError(f"need delta + k <= n, got {delta} + {k} > {n}")
    if alpha < 2:
        raise ValueError(f"alpha must be >= 2, got {alpha}")
    candidates = enumerate_grassmannian(n, k, field, cap=cap)
    arrays = [c.basis_array() for c in candidates]
    need = delta + k

    best: list[int] = []
    best_size = 0
    nodes = 0
    exhausted = False
    reached_target = False

    chosen: list[int] = []
    chosen_arrays: list[np.ndarray] = []

    def extension_ok(cand_arr: np.ndarray) -> bool:
        if len(chosen) < alpha - 1:
            return True
        for sub in combinations(range(len(chosen)), alpha - 1):
            stacked = [chosen_arrays[i] for i in sub] + [cand_arr]
            if rank_of_array(np.vstack(stacked), field) < need:
                return False
        return True

    def dfs(start: int) -> bool:
        # returns True to abort the whole search (budget or target hit)
        nonlocal best, best_size, nodes, exhausted, reached_target
        if len(chosen) > best_size:
            best_size = len(chosen)
            best = list(chosen)
            if target_size is not None and best_size >= target_size:
                reached_target = True
                return True
        # alpha copies of one codeword span only k < k + delta, so each
        # candidate contributes at most alpha - 1 picks: branches that
        # cannot beat the best size are cut without exploring them
        if len(chosen) + (len(candidates) - start) * (alpha - 1) <= best_size:
            return False
        for idx in range(start, len(candidates)):
            nodes += 1
            if nodes > node_limit:
                exhausted = True
                return True
            if extension_ok(arrays[idx]):
                chosen.append(idx)
                chosen_arrays.append(arrays[idx])
                stop = dfs(idx)
                chosen.pop()
                chosen_arrays.pop()
                if stop:
                    return True
        return False

    dfs(0)
    exact = not exhausted and not reached_target
    code = None
    if best:
        code = CoveringCode(
            field=field,
            n=n,
            k=k,
            delta=delta,
            alpha=alpha,
            codewords=tuple(candidates[i] for i in best),
        )
    return SearchResult(size=best_size, code=code, exact=exact, nodes=nodes)
