"""Generalized combination networks and their linear solutions.

The network has one source holding ``h`` messages, ``r`` middle nodes
fed by ``ell`` parallel links each, and one receiver per ``alpha``-subset
of middle nodes; a receiver sees the ``alpha * ell`` links of its middle
nodes plus ``epsilon`` direct links from the source.  A ``(q, t)``-linear
solution assigns to middle node ``i`` a coding matrix ``A_i`` of shape
``(ell*t, h*t)`` over GF(q); it is valid when every receiver's stacked
coding matrix has rank at least ``(h - epsilon) * t``, which makes the
direct links sufficient to complete decoding.

Solutions correspond exactly to covering subspace codes: the row spaces
of valid ``A_i`` form a code in G_q(h*t, ell*t) in which every ``alpha``
codewords span at least ``(h - epsilon) * t`` dimensions, and back.
``compute_qs`` / ``compute_qv`` ride that bridge, deciding solvability
per field size with the exhaustive covering-code search and reporting
honestly when a decision hit its node budget.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from math import comb, log2
from typing import Optional

import numpy as np

from .ffield import FieldSpec, field_from_size, prime_powers
from .grasscode import CoveringCode, max_covering_code
from .linalg import MatrixQ, SubspaceQ, rank_of_array, solve_exact, stack_matrices

#: Default node budget handed to the covering-code search per decision.
DECISION_NODE_LIMIT = 10**7


class SolvabilityClass(enum.Enum):
    TRIVIAL = "TRIVIAL"
    NONTRIVIAL = "NONTRIVIAL"
    UNSOLVABLE = "UNSOLVABLE"


@dataclass(frozen=True)
class NetworkParams:
    """Parameters (h, r, alpha, ell, epsilon) of a combination network."""

    h: int
    r: int
    alpha: int
    ell: int
    epsilon: int

    def __post_init__(self):
        if self.alpha < 2:
            raise ValueError(f"alpha must be >= 2, got {self.alpha}")
        if self.r < self.alpha:
            raise ValueError(f"need r >= alpha, got r={self.r}, alpha={self.alpha}")
        if self.h < 1 or self.ell < 1:
            raise ValueError("h and ell must be >= 1")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")

    @property
    def n_receivers(self) -> int:
        return comb(self.r, self.alpha)

    def receivers(self) -> list[tuple[int, ...]]:
        """All receivers as lexicographic alpha-subsets of middle nodes (0-based)."""
        return list(combinations(range(self.r), self.alpha))


def classify(params: NetworkParams) -> SolvabilityClass:
    """TRIVIAL iff h <= ell+epsilon, UNSOLVABLE iff h > alpha*ell+epsilon."""
    if params.h <= params.ell + params.epsilon:
        return SolvabilityClass.TRIVIAL
    if params.h > params.alpha * params.ell + params.epsilon:
        return SolvabilityClass.UNSOLVABLE
    return SolvabilityClass.NONTRIVIAL


@dataclass(frozen=True)
class LinearSolution:
    """Middle-node coding matrices for a network at blocklength ``t``."""

    params: NetworkParams
    field: FieldSpec
    t: int
    matrices: tuple[MatrixQ, ...]

    def __post_init__(self):
        p = self.params
        if self.t < 1:
            raise ValueError("blocklength t must be >= 1")
        if len(self.matrices) != p.r:
            raise ValueError(f"expected {p.r} coding matrices, got {len(self.matrices)}")
        want = (p.ell * self.t, p.h * self.t)
        for i, a in enumerate(self.matrices):
            if a.field != self.field:
                raise ValueError(f"matrix {i} is over the wrong field")
            if (a.rows, a.cols) != want:
                raise ValueError(
                    f"matrix {i} has shape {a.rows}x{a.cols}, expected {want[0]}x{want[1]}"
                )


def verify_solution(sol: LinearSolution) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Check the rank condition at every receiver.

    Returns ``(True, None)`` if for each alpha-subset the stacked matrix
    has rank at least ``(h - epsilon) * t``, else ``(False, subset)``
    with the lexicographically first violating subset (0-based middle
    node indices).  Raises ValueError on UNSOLVABLE parameters.
    """
    p = sol.params
    if classify(p) is SolvabilityClass.UNSOLVABLE:
        raise ValueError("network is unsolvable; verification is meaningless")
    need = max(0, (p.h - p.epsilon) * sol.t)
    data = [a.data for a in sol.matrices]
    for subset in combinations(range(p.r), p.alpha):
        stacked = np.vstack([data[i] for i in subset])
        if rank_of_array(stacked, sol.field) < need:
            return False, subset
    return True, None


def solution_from_code(code: CoveringCode, params: NetworkParams, t: int) -> LinearSolution:
    """Interpret covering-code codewords as middle-node coding matrices.

    Requires the code parameters to match the network at blocklength t:
    ambient ``h*t``, dimension ``ell*t``, covering surplus
    ``(h - ell - epsilon) * t``, same ``alpha``, and exactly ``r``
    codewords.  Codewords of dimension below ``ell*t`` are padded with
    zero rows.
    """
    p = params
    want = (p.h * t, p.ell * t, (p.h - p.ell - p.epsilon) * t, p.alpha)
    got = (code.n, code.k, code.delta, code.alpha)
    if want != got:
        raise ValueError(f"code parameters {got} do not match the network's {want}")
    if code.size != p.r:
        raise ValueError(f"need exactly r={p.r} codewords, got {code.size}")
    field = code.field
    mats = []
    for c in code.codewords:
        rows = c.basis_array()
        if rows.shape[0] < p.ell * t:
            pad = np.zeros((p.ell * t - rows.shape[0], p.h * t), dtype=np.int16)
            rows = np.vstack([rows, pad])
        mats.append(MatrixQ(field, rows))
    return LinearSolution(params=p, field=field, t=t, matrices=tuple(mats))


def code_from_solution(sol: LinearSolution) -> CoveringCode:
    """Row spaces of the coding matrices as a covering-code candidate."""
    p = sol.params
    return CoveringCode(
        field=sol.field,
        n=p.h * sol.t,
        k=p.ell * sol.t,
        delta=(p.h - p.ell - p.epsilon) * sol.t,
        alpha=p.alpha,
        codewords=tuple(SubspaceQ.from_matrix(a) for a in sol.matrices),
    )


def derive_direct_link_matrices(sol: LinearSolution) -> list[MatrixQ]:
    """Greedy direct-link coding matrices, one per receiver.

    For each receiver the rows of ``B_i`` are the standard basis vectors
    of GF(q)^(h*t), taken in index order, that extend the receiver's
    stacked coding matrix to full rank ``h*t``; the remainder is zero
    rows, giving shape ``(epsilon*t, h*t)``.  Requires a verified
    solution (ValueError otherwise).
    """
    ok, witness = verify_solution(sol)
    if not ok:
        raise ValueError(f"solution is invalid (witness subset {witness})")
    p = sol.params
    ht = p.h * sol.t
    out = []
    for subset in combinations(range(p.r), p.alpha):
        stacked = np.vstack([sol.matrices[i].data for i in subset])
        rank = rank_of_array(stacked, sol.field)
        picked = []
        current = stacked
        for j in range(ht):
            if rank == ht:
                break
            e = np.zeros((1, ht), dtype=np.int16)
            e[0, j] = 1
            trial = np.vstack([current, e])
            trial_rank = rank_of_array(trial, sol.field)
            if trial_rank > rank:
                picked.append(j)
                current = trial
                rank = trial_rank
        assert len(picked) <= p.epsilon * sol.t
        b = np.zeros((p.epsilon * sol.t, ht), dtype=np.int16)
        for row, j in enumerate(picked):
            b[row, j] = 1
        out.append(MatrixQ(sol.field, b))
    return out


def simulate(sol: LinearSolution, messages: MatrixQ) -> list[MatrixQ]:
    """Encode, transmit and decode at every receiver.

    ``messages`` is an ``(h, t)`` matrix (row i = message i).  Returns
    the per-receiver decoded message matrices; each must equal the
    input when the solution verifies.  Raises ValueError on a singular
    receiver system, which signals an invalid solution.
    """
    p = sol.params
    if (messages.rows, messages.cols) != (p.h, sol.t):
        raise ValueError(f"messages must be {p.h}x{sol.t}")
    if messages.field != sol.field:
        raise ValueError("messages are over the wrong field")
    x = MatrixQ(sol.field, messages.data.reshape(p.h * sol.t, 1))
    direct = derive_direct_link_matrices(sol)
    decoded = []
    for recv_index, subset in enumerate(combinations(range(p.r), p.alpha)):
        blocks = [sol.matrices[i] for i in subset] + [direct[recv_index]]
        m = stack_matrices(blocks)
        y = m @ x
        z = solve_exact(m, y)
        decoded.append(MatrixQ(sol.field, z.data.reshape(p.h, sol.t)))
    return decoded


def random_solution_search(
    params: NetworkParams,
    field: FieldSpec,
    t: int,
    trials: int,
    seed: int,
) -> Optional[LinearSolution]:
    """Draw i.i.d. uniform coding matrices until a draw verifies.

    Each trial uses its own generator derived from ``(seed, trial)``,
    so the result is reproducible and independent of scheduling.
    Returns the first verifying solution, or None after ``trials``
    draws (absence is an outcome, not an error).
    """
    if classify(params) is not SolvabilityClass.NONTRIVIAL:
        raise ValueError("random search expects a NONTRIVIAL network")
    p = params
    for trial in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))
        mats = tuple(
            MatrixQ(field, rng.integers(0, field.q, size=(p.ell * t, p.h * t), dtype=np.int64))
            for _ in range(p.r)
        )
        sol = LinearSolution(params=p, field=field, t=t, matrices=mats)
        ok, _ = verify_solution(sol)
        if ok:
            return sol
    return None


# ---------------------------------------------------------------------------
# Smallest-alphabet searches.
# ---------------------------------------------------------------------------


def _admits_solution(params: NetworkParams, q: int, t: int, node_limit: int) -> tuple[bool, bool]:
    """Decide whether a (q, t)-linear solution exists.

    Returns ``(admits, conclusive)``.  The decision reduces to whether
    the maximum covering code in G_q(h*t, ell*t) with surplus
    ``(h-ell-epsilon)*t`` reaches size r; the search stops early once r
    codewords are found (conclusive yes) and is conclusive as a no only
    when its tree completed within the node budget.  A Grassmannian too
    large to enumerate counts as inconclusive, not as an error.
    """
    p = params
    field = field_from_size(q)
    try:
        res = max_covering_code(
            n=p.h * t,
            k=p.ell * t,
            delta=(p.h - p.ell - p.epsilon) * t,
            alpha=p.alpha,
            field=field,
            node_limit=node_limit,
            target_size=p.r,
        )
    except ValueError:
        return False, False
    if res.size >= p.r:
        return True, True
    return False, res.exact


def compute_qs(
    params: NetworkParams,
    q_cap: int = 64,
    node_limit: int = DECISION_NODE_LIMIT,
) -> tuple[Optional[int], bool]:
    """Smallest field size admitting a scalar (t = 1) solution.

    Iterates prime powers ``q <= q_cap`` in increasing order.  Returns
    ``(q, exact)`` where ``exact`` is False if any smaller q's decision
    was inconclusive, or ``(None, False)`` when no q below the cap
    admits a solution.  TRIVIAL networks return ``(2, True)``;
    UNSOLVABLE parameters raise ValueError.
    """
    cls = classify(params)
    if cls is SolvabilityClass.UNSOLVABLE:
        raise ValueError("network is unsolvable at any alphabet")
    if cls is SolvabilityClass.TRIVIAL:
        return 2, True
    all_conclusive = True
    for q in prime_powers(q_cap):
        admits, conclusive = _admits_solution(params, q, 1, node_limit)
        if admits:
            return q, all_conclusive
        if not conclusive:
            all_conclusive = False
    return None, False


def compute_qv(
    params: NetworkParams,
    qt_cap: int = 64,
    node_limit: int = DECISION_NODE_LIMIT,
) -> tuple[Optional[int], bool]:
    """Smallest vector-space size q^t admitting a (q, t)-linear solution.

    Candidate pairs (q, t) with ``q^t <= qt_cap`` are tried in
    increasing q^t order, ties broken by smaller t.  Returns
    ``(q**t, exact)``; ``exact`` requires every strictly smaller q^t to
    have been conclusively refuted.  TRIVIAL networks return
    ``(2, True)``; UNSOLVABLE parameters raise ValueError.
    """
    cls = classify(params)
    if cls is SolvabilityClass.UNSOLVABLE:
        raise ValueError("network is unsolvable at any alphabet")
    if cls is SolvabilityClass.TRIVIAL:
        return 2, True
    candidates = []
    for q in prime_powers(qt_cap):
        value = q
        t = 1
        while value <= qt_cap:
            candidates.append((value, t, q))
            t += 1
            value = q**t
    candidates.sort(key=lambda c: (c[0], c[1]))
    inconclusive_below: list[int] = []
    for value, t, q in candidates:
        admits, conclusive = _admits_solution(params, q, t, node_limit)
        if admits:
            exact = all(v >= value for v in inconclusive_below)
            return value, exact
        if not conclusive:
            inconclusive_below.append(value)
    return None, False


@dataclass(frozen=True)
class GapEstimate:
    """Measured scalar/vector alphabet minima and their log2 gap."""

    solvability: SolvabilityClass
    qs: Optional[int]
    qv: Optional[int]
    qs_exact: bool
    qv_exact: bool
    q_cap: int
    qt_cap: int

    @property
    def gap(self) -> Optional[float]:
        if self.qs is None or self.qv is None:
            return None
        return log2(self.qs) - log2(self.qv)


def estimate_gap(
    params: NetworkParams,
    q_cap: int = 64,
    qt_cap: int = 64,
    node_limit: int = DECISION_NODE_LIMIT,
) -> GapEstimate:
    """Compute qs and qv by brute force and report the achieved gap."""
    qs, qs_exact = compute_qs(params, q_cap, node_limit)
    qv, qv_exact = compute_qv(params, qt_cap, node_limit)
    return GapEstimate(
        solvability=classify(params),
        qs=qs,
        qv=qv,
        qs_exact=qs_exact,
        qv_exact=qv_exact,
        q_cap=q_cap,
        qt_cap=qt_cap,
    )
