"""Closed-form bounds on network size, field size and the scalar/vector gap.

Every evaluator returns a :class:`BoundReport` rather than raising on a
domain violation: parameter sweeps must not abort mid-table, so side
conditions are recorded as named assumption checks and ``valid`` is the
conjunction.  Values are exact (int or Fraction) where the formula is
integral and double-precision floats where it involves the constants
``gamma`` (the q-binomial ratio bound, 3.48 by default) or ``beta``
(the random-coding constant).  A value that cannot be computed at all
(division by zero, log of a non-positive number) is reported as None
with ``valid=False``.

Shared constants and exponents:

- ``theta(h, ell, eps, alpha) = alpha - floor((h-eps)/ell) + 1``
- ``f(t) = (alpha*ell+eps-h)*eps*t^2 + (alpha*ell+2*eps-h)*t + 1``,
  the exponent of the random-coding (local lemma) lower bound,
- ``g(t) = max(ell*t, (h-ell)*t) * (min(ell*t, (h-ell)*t) - (h-ell-eps)*t + 1)``,
  the exponent of the rank-metric construction lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, e as EULER_E, factorial, log2, sqrt
from typing import Optional, Union

from .linalg import gaussian_binomial

#: Default constant bounding [n k]_q / q^(k(n-k)) from above, any q >= 2.
GAMMA = 3.48

Number = Union[int, float, Fraction]


def gamma_exact(q: int) -> float:
    """The exact supremum of [n k]_q / q^(k(n-k)): prod_{i>=1} (1-q^-i)^-1."""
    if q < 2:
        raise ValueError("need q >= 2")
    prod = 1.0
    i = 1
    while True:
        nxt = prod / (1.0 - q**-i)
        if nxt == prod:
            return prod
        prod = nxt
        i += 1


def theta(h: int, ell: int, eps: int, alpha: int) -> int:
    """Hyperplane-count parameter of the scalar upper bounds."""
    return alpha - (h - eps) // ell + 1


def beta(alpha: int, gamma: float = GAMMA) -> float:
    """Random-coding constant ((alpha-1)! / (2 e gamma alpha))^(1/(alpha-1))."""
    if alpha < 2:
        raise ValueError("need alpha >= 2")
    return (factorial(alpha - 1) / (2 * EULER_E * gamma * alpha)) ** (1.0 / (alpha - 1))


def f_exponent(h: int, ell: int, eps: int, alpha: int, t: int) -> int:
    """Exponent polynomial of the random-coding lower bound."""
    return (alpha * ell + eps - h) * eps * t * t + (alpha * ell + 2 * eps - h) * t + 1


def g_exponent(h: int, ell: int, eps: int, t: int) -> int:
    """Exponent polynomial of the rank-metric lower bound."""
    a = max(ell * t, (h - ell) * t)
    b = min(ell * t, (h - ell) * t)
    return a * (b - (h - ell - eps) * t + 1)


@dataclass(frozen=True)
class BoundReport:
    """A bound value together with its validity domain audit trail."""

    name: str
    value: Optional[Number]
    valid: bool
    assumptions: tuple[tuple[str, bool], ...]
    details: dict = dc_field(default_factory=dict)

    def failed_assumptions(self) -> list[str]:
        return [name for name, ok in self.assumptions if not ok]


def _report(name: str, value: Optional[Number], checks: list[tuple[str, bool]], **details) -> BoundReport:
    return BoundReport(
        name=name,
        value=value,
        valid=all(ok for _, ok in checks) and value is not None,
        assumptions=tuple(checks),
        details=details,
    )


def middle_ub_exact(h: int, ell: int, eps: int, alpha: int, q: int, t: int) -> BoundReport:
    """Exact covering-count upper bound on the number of middle nodes.

    ``[(eps+ell)t, eps*t]_q * (theta * (q^(ell*t+1)-1)/(q-1) - 1)
    + floor((h-eps)/ell) - 1``, an integer.  Meaningful for
    ``h - eps >= 2*ell`` and ``theta >= 1``; computed regardless and
    flagged.
    """
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("h, ell, t >= 1", h >= 1 and ell >= 1 and t >= 1),
        ("eps >= 0", eps >= 0),
        ("h - eps >= 2*ell", h - eps >= 2 * ell),
        ("alpha*ell >= h - eps", alpha * ell >= h - eps),
    ]
    th = theta(h, ell, eps, alpha)
    gb = gaussian_binomial((eps + ell) * t, eps * t, q)
    col = Fraction(q ** (ell * t + 1) - 1, q - 1)
    val = gb * (th * col - 1) + (h - eps) // ell - 1
    assert val.denominator == 1
    return _report("middle_ub_exact", int(val), checks, theta=th)


def middle_ub_relaxed(
    h: int, ell: int, eps: int, alpha: int, q: int, t: int, gamma: float = GAMMA
) -> BoundReport:
    """Relaxed form of the covering-count upper bound.

    ``gamma * theta * q^(ell*t*(eps*t+1)) + alpha - theta``; a real
    number comparable across q.  Same domain as the exact form.
    """
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("h, ell, t >= 1", h >= 1 and ell >= 1 and t >= 1),
        ("eps >= 0", eps >= 0),
        ("h - eps >= 2*ell", h - eps >= 2 * ell),
        ("alpha*ell >= h - eps", alpha * ell >= h - eps),
    ]
    th = theta(h, ell, eps, alpha)
    val = gamma * th * q ** (ell * t * (eps * t + 1)) + alpha - th
    return _report("middle_ub_relaxed", val, checks, theta=th, gamma=gamma)


def middle_ub_pairwise(h: int, ell: int, eps: int, q: int, t: int, gamma: float = GAMMA) -> BoundReport:
    """Packing upper bound for two-subset coverage (alpha = 2).

    Exact value ``[ht, m]_q / [ell*t, m]_q`` with
    ``m = 2*ell*t - (h-eps)*t + 1`` as a Fraction; the relaxed real form
    ``gamma * q^((h-ell)(2*ell+eps-h)t^2 + (h-ell)t)`` is reported in
    details.  Undefined when the denominator q-binomial vanishes
    (m > ell*t, i.e. the subspace dimension cannot host m dimensions).
    """
    m = 2 * ell * t - (h - eps) * t + 1
    checks = [
        ("h, ell, t >= 1", h >= 1 and ell >= 1 and t >= 1),
        ("eps >= 0", eps >= 0),
        ("2*ell*t - (h-eps)*t + 1 >= 0", m >= 0),
        ("m <= ell*t (denominator nonzero)", 0 <= m <= ell * t),
    ]
    relaxed = gamma * float(q) ** ((h - ell) * (2 * ell + eps - h) * t * t + (h - ell) * t)
    den = gaussian_binomial(ell * t, m, q) if m >= 0 else 0
    if den == 0:
        return _report("middle_ub_pairwise", None, checks, relaxed=relaxed, m=m)
    val = Fraction(gaussian_binomial(h * t, m, q), den)
    if val.denominator == 1:
        val = int(val)
    return _report("middle_ub_pairwise", val, checks, relaxed=relaxed, m=m)


def middle_lb_lll(
    h: int,
    ell: int,
    eps: int,
    alpha: int,
    q: int,
    t: int,
    gamma: float = GAMMA,
    plus_one: bool = False,
) -> BoundReport:
    """Random-coding lower bound on achievable middle-layer size.

    Any ``r <= beta * q^(f(t)/(alpha-1))`` admits a (q, t)-linear
    solution.  ``plus_one=True`` restores the additive 1 that the
    simplified form drops.
    """
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("h, ell, t >= 1", h >= 1 and ell >= 1 and t >= 1),
        ("ell + eps < h", ell + eps < h),
        ("h <= alpha*ell + eps", h <= alpha * ell + eps),
    ]
    if alpha < 2:
        return _report("middle_lb_lll", None, checks)
    b = beta(alpha, gamma)
    ft = f_exponent(h, ell, eps, alpha, t)
    val = b * float(q) ** (ft / (alpha - 1))
    if plus_one:
        val += 1.0
    return _report("middle_lb_lll", val, checks, beta=b, f=ft, plus_one=plus_one)


def middle_lb_mrd(h: int, ell: int, eps: int, alpha: int, q: int, t: int) -> BoundReport:
    """Rank-metric construction lower bound ``(alpha-1) * q^g(t)``, exact.

    Valid for ``h <= 2*ell + eps`` (the construction regime); the
    branch of ``g`` is reported: ``ell*eps*t^2 + ell*t`` when
    ``h <= 2*ell``, else ``(h-ell)(2*ell+eps-h)t^2 + (h-ell)t``.
    """
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("h, ell, t >= 1", h >= 1 and ell >= 1 and t >= 1),
        ("ell + eps < h", ell + eps < h),
        ("h <= 2*ell + eps", h <= 2 * ell + eps),
    ]
    gt = g_exponent(h, ell, eps, t)
    branch = "ell*eps*t^2 + ell*t" if h <= 2 * ell else "(h-ell)(2ell+eps-h)t^2 + (h-ell)t"
    val = (alpha - 1) * q**gt if alpha >= 2 and gt >= 0 else None
    return _report("middle_lb_mrd", val, checks, g=gt, branch=branch)


def bad_event_prob_ub(
    h: int, ell: int, eps: int, alpha: int, q: int, t: int, gamma: float = GAMMA
) -> BoundReport:
    """Upper bound on the probability that one receiver fails under
    uniform random coding matrices:
    ``2*gamma * q^((h-alpha*ell-eps)*eps*t^2 + (h-alpha*ell-2*eps)*t - 1)``.
    """
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("h, ell, t >= 1", h >= 1 and ell >= 1 and t >= 1),
        ("h <= alpha*ell + eps", h <= alpha * ell + eps),
    ]
    exponent = (h - alpha * ell - eps) * eps * t * t + (h - alpha * ell - 2 * eps) * t - 1
    val = 2 * gamma * float(q) ** exponent
    return _report("bad_event_prob_ub", val, checks, exponent=exponent)


def dependency_degree(r: int, alpha: int) -> tuple[int, int]:
    """Dependency counts among receiver failure events.

    Returns ``(bound, exact)``: the union-bound estimate
    ``alpha * C(r-1, alpha-1)`` and the exact overlap count
    ``C(r, alpha) - C(r-alpha, alpha)``.
    """
    if alpha < 2 or r < alpha:
        raise ValueError("need 2 <= alpha <= r")
    bound = alpha * comb(r - 1, alpha - 1)
    exact = comb(r, alpha) - comb(r - alpha, alpha)
    return bound, exact


def field_size_necessary(
    h: int, ell: int, eps: int, alpha: int, r: int, t: int, gamma: float = GAMMA
) -> BoundReport:
    """Necessary lower threshold on q^t for a (q, t)-linear solution.

    ``((r+theta-alpha)/(gamma*theta))^(1/(ell*(eps*t+1)))`` when
    ``h >= 2*ell + eps``, else
    ``(r/(gamma*(alpha-1)))^(1/(ell*(eps*t+1)))``.
    """
    first_case = h >= 2 * ell + eps
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("r, h, ell, t >= 1", r >= 1 and h >= 1 and ell >= 1 and t >= 1),
        ("eps >= 0", eps >= 0),
    ]
    if first_case:
        th = theta(h, ell, eps, alpha)
        checks.append(("theta >= 1", th >= 1))
        checks.append(("r + theta - alpha > 0", r + th - alpha > 0))
        if th < 1 or r + th - alpha <= 0:
            return _report("field_size_necessary", None, checks, case="h >= 2ell+eps", theta=th)
        val = ((r + th - alpha) / (gamma * th)) ** (1.0 / (ell * (eps * t + 1)))
        return _report("field_size_necessary", val, checks, case="h >= 2ell+eps", theta=th)
    val = (r / (gamma * (alpha - 1))) ** (1.0 / (ell * (eps * t + 1)))
    return _report("field_size_necessary", val, checks, case="h < 2ell+eps")


def field_size_sufficient(
    h: int, ell: int, eps: int, alpha: int, r: int, t: int, gamma: float = GAMMA
) -> BoundReport:
    """Sufficient threshold on q^t: any q^t at or above it solves the network.

    ``(r/beta)^((alpha-1)*t/f(t))`` when ``h >= 2*ell + eps``, else
    ``(r/(alpha-1))^(t/g(t))``.
    """
    first_case = h >= 2 * ell + eps
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("r, h, ell, t >= 1", r >= 1 and h >= 1 and ell >= 1 and t >= 1),
        ("eps >= 0", eps >= 0),
        ("h <= alpha*ell + eps", h <= alpha * ell + eps),
    ]
    if first_case:
        ft = f_exponent(h, ell, eps, alpha, t)
        checks.append(("f(t) > 0", ft > 0))
        if ft <= 0 or alpha < 2:
            return _report("field_size_sufficient", None, checks, case="h >= 2ell+eps", f=ft)
        b = beta(alpha, gamma)
        val = (r / b) ** ((alpha - 1) * t / ft)
        return _report("field_size_sufficient", val, checks, case="h >= 2ell+eps", f=ft, beta=b)
    gt = g_exponent(h, ell, eps, t)
    checks.append(("g(t) > 0", gt > 0))
    if gt <= 0 or alpha < 2:
        return _report("field_size_sufficient", None, checks, case="h < 2ell+eps", g=gt)
    val = (r / (alpha - 1)) ** (t / gt)
    return _report("field_size_sufficient", val, checks, case="h < 2ell+eps", g=gt)


def _smallest_t(predicate, t_limit: int) -> Optional[int]:
    t = 1
    while t <= t_limit:
        if predicate(t):
            return t
        t += 1
    return None


def gap_lower_bound(
    h: int,
    ell: int,
    eps: int,
    alpha: int,
    r: int,
    gamma: float = GAMMA,
    t_limit: int = 10**6,
) -> BoundReport:
    """Lower bound on log2(qs) - log2(qv) via a base-2 blocklength search.

    First finds the smallest t such that a (2, t)-linear solution is
    guaranteed by the sufficient threshold; subtracting it from the
    scalar necessary bound gives the gap bound:

    - ``log2((r+theta-alpha)/(gamma*theta))/(ell*(eps+1)) - t_delta``
      when ``h >= 2*ell + eps``, with ``2^(f(t_delta)/(alpha-1)) >= r/beta``;
    - ``log2(r/(gamma*(alpha-1)))/(ell*(eps+1)) - t_star`` otherwise,
      with ``2^g(t_star) >= r/(alpha-1)``.

    The linear t-scan is guarded by ``t_limit``; exhaustion is reported
    as an invalid result with a diagnostic, which is reachable when the
    exponent polynomial is constant in t (e.g. eps = 0, h = alpha*ell).
    """
    first_case = h >= 2 * ell + eps
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("r, h, ell >= 1", r >= 1 and h >= 1 and ell >= 1),
        ("eps >= 0", eps >= 0),
    ]
    if alpha < 2:
        return _report("gap_lower_bound", None, checks)
    if first_case:
        th = theta(h, ell, eps, alpha)
        b = beta(alpha, gamma)
        checks.append(("theta >= 1", th >= 1))
        checks.append(("r + theta - alpha > 0", r + th - alpha > 0))
        t_delta = _smallest_t(
            lambda t: 2.0 ** (f_exponent(h, ell, eps, alpha, t) / (alpha - 1)) >= r / b, t_limit
        )
        checks.append(("t-search terminated", t_delta is not None))
        if th < 1 or r + th - alpha <= 0 or t_delta is None:
            return _report(
                "gap_lower_bound", None, checks, case="h >= 2ell+eps", theta=th, t=t_delta
            )
        val = log2((r + th - alpha) / (gamma * th)) / (ell * (eps + 1)) - t_delta
        return _report("gap_lower_bound", val, checks, case="h >= 2ell+eps", theta=th, t=t_delta)
    t_star = _smallest_t(lambda t: 2.0 ** g_exponent(h, ell, eps, t) >= r / (alpha - 1), t_limit)
    checks.append(("t-search terminated", t_star is not None))
    if t_star is None:
        return _report("gap_lower_bound", None, checks, case="h < 2ell+eps", t=None)
    val = log2(r / (gamma * (alpha - 1))) / (ell * (eps + 1)) - t_star
    return _report("gap_lower_bound", val, checks, case="h < 2ell+eps", t=t_star)


def gap_lower_bound_closed(
    h: int, ell: int, eps: int, alpha: int, r: int, gamma: float = GAMMA
) -> BoundReport:
    """Closed-form gap lower bound (no integer search), direct-link case.

    Requires ``eps >= 1``.  For ``h <= 2*ell + eps``:
    ``(log2(r/(alpha-1)) - 2)/(ell*(eps+1)) - sqrt(log2(r/(alpha-1))/(ell*eps))``;
    otherwise
    ``log2((r+theta-alpha)/(gamma*theta))/(ell*(eps+1))
    - sqrt((alpha-1)*log2(r/beta) / ((alpha*ell+eps-h)*eps))``.
    """
    checks = [
        ("alpha >= 2", alpha >= 2),
        ("r, h, ell >= 1", r >= 1 and h >= 1 and ell >= 1),
        ("eps >= 1", eps >= 1),
    ]
    if alpha < 2 or eps < 1:
        return _report("gap_lower_bound_closed", None, checks)
    if h <= 2 * ell + eps:
        ratio = r / (alpha - 1)
        checks.append(("log2(r/(alpha-1)) >= 0", ratio >= 1))
        if ratio < 1:
            return _report("gap_lower_bound_closed", None, checks, case="h <= 2ell+eps")
        big_l = log2(ratio)
        val = (big_l - 2) / (ell * (eps + 1)) - sqrt(big_l / (ell * eps))
        return _report("gap_lower_bound_closed", val, checks, case="h <= 2ell+eps")
    th = theta(h, ell, eps, alpha)
    b = beta(alpha, gamma)
    denom = (alpha * ell + eps - h) * eps
    checks.append(("theta >= 1", th >= 1))
    checks.append(("r + theta - alpha > 0", r + th - alpha > 0))
    checks.append(("(alpha*ell+eps-h)*eps > 0", denom > 0))
    checks.append(("r >= beta", r >= b))
    if th < 1 or r + th - alpha <= 0 or denom <= 0 or r < b:
        return _report("gap_lower_bound_closed", None, checks, case="h > 2ell+eps", theta=th)
    val = log2((r + th - alpha) / (gamma * th)) / (ell * (eps + 1)) - sqrt(
        (alpha - 1) * log2(r / b) / denom
    )
    return _report("gap_lower_bound_closed", val, checks, case="h > 2ell+eps", theta=th)
