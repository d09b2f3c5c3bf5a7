"""Closed forms for star-versus-clique Ramsey quantities, and an exact auditor
for the arithmetic inequalities used in the large-``n`` lower-bound argument.

All integer formulas use exact integer arithmetic; the auditor works over
:class:`fractions.Fraction` so that no rounding can create or hide a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator


class DomainError(ValueError):
    """Parameters outside the domain where a formula is stated."""


@dataclass(frozen=True)
class Params:
    k: int
    n: int

    def __post_init__(self):
        if self.k < 2 or self.n < 2:
            raise DomainError(f"need k >= 2 and n >= 2, got k={self.k}, n={self.n}")


def _params(k: int, n: int) -> Params:
    return Params(k, n)


def ramsey_star_clique(k: int, n: int) -> int:
    """``r(K_{1,k}, K_n) = k(n-1) + 1``."""
    _params(k, n)
    return k * (n - 1) + 1


def rhat_star(k: int, n: int) -> int:
    """Restricted size Ramsey number of ``K_{1,k}`` versus ``K_n``."""
    r = ramsey_star_clique(k, n)
    if k >= n or k % 2 == 1:
        return math.comb(r, 2) - math.comb(k, 2)
    return math.comb(r, 2) - k * (n - 1) // 2


def large_n_threshold(k: int) -> int:
    return k**3 + 2 * k**2 + 2 * k


def rhat_theorem3(k: int, n: int) -> int:
    """Size Ramsey number in the regime ``n >= k^3 + 2k^2 + 2k``."""
    _params(k, n)
    if n < large_n_threshold(k):
        raise DomainError(f"n={n} is below the threshold {large_n_threshold(k)} for k={k}")
    r = ramsey_star_clique(k, n)
    if k % 2 == 1:
        return math.comb(r, 2) - math.comb(k, 2)
    return math.comb(r, 2) - k * (n - 1) // 2


def f_threshold(k: int, n: int) -> int:
    """``floor((kn - 2k^2) / (k+1)^2)``; may be negative for small ``n``."""
    _params(k, n)
    return (k * n - 2 * k * k) // (k + 1) ** 2


def r_prime(k: int, n: int) -> int:
    _params(k, n)
    if k % 2 == 1:
        return math.comb(k, 2) + 1
    return k * (n - 1) // 2 + 1


def pikhurko_lower_bound(k: int, n: int) -> int:
    """``k^2 * C(n-1, 2)``: edge lower bound for any arrowing graph."""
    if k < 2 or n < 1:
        raise DomainError(f"need k >= 2 and n >= 1, got k={k}, n={n}")
    return k * k * math.comb(n - 1, 2)


def erdos_etal_lower_bound(k: int, n: int, eps: float) -> float:
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie strictly between 0 and 1, got {eps}")
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    return max(k * k / 2, (1 - eps) * ((n - 2) ** 2 // 4) * k * k / 2)


def pikhurko_counterexample_bound(k: int) -> float:
    """``k^2 + sqrt(2) k^{3/2} + k``."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    return k * k + math.sqrt(2) * k**1.5 + k


def erdos_construction_edges(k: int) -> int:
    """Edges of ``K_{k+1} + complement(K_k)``: ``C(2k+1, 2) - C(k, 2)``."""
    return math.comb(2 * k + 1, 2) - math.comb(k, 2)


def compare_counterexample_bound(k: int) -> dict:
    """Raw comparison of the counterexample bound against the construction's edge count.

    ``strictly_below`` is decided exactly: ``k^2 + sqrt2 k^{3/2} + k < (3k^2+3k)/2``
    is equivalent to ``8k < (k+1)^2`` for positive ``k``.
    """
    bound = pikhurko_counterexample_bound(k)
    construction = erdos_construction_edges(k)
    return {
        "k": k,
        "counterexample_bound": bound,
        "construction_edges": construction,
        "strictly_below": 8 * k < (k + 1) ** 2,
    }


# ---------------------------------------------------------------------------
# inequality audit


@dataclass
class AuditReport:
    inequality: str
    description: str
    grid: dict
    points: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return f"OK (0 violations over {self.points} points)"
        return f"FAIL ({len(self.violations)} violations over {self.points} points)"

    def row(self) -> str:
        return f"{self.inequality:<18} {self.summary()}"

    def to_dict(self) -> dict:
        return {
            "inequality": self.inequality,
            "description": self.description,
            "grid": self.grid,
            "points": self.points,
            "violations": self.violations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> AuditReport:
        return cls(data["inequality"], data["description"], data["grid"], data["points"], data["violations"])


def _q(x) -> Fraction:
    return Fraction(x)


def _slope(k: int, n: int, i: int) -> Fraction:
    # lower bound on the surplus l_i used throughout the proof chain
    return Fraction(k * (n - i) - 2 * k * k, (k + 1) ** 2)


@lru_cache(maxsize=64)
def _slope_prefix(k: int, n: int) -> tuple[Fraction, ...]:
    """``out[m] = sum of _slope(k, n, i) for 1 <= i <= m`` for m < n."""
    out = [Fraction(0)]
    for i in range(1, n):
        out.append(out[-1] + _slope(k, n, i))
    return tuple(out)


def _lemma6(k: int, n: int, t: int) -> tuple[Fraction, Fraction]:
    r = ramsey_star_clique(k, n)
    lhs = r * t + _q(math.comb(t, 2)) + t * (k + 1) + Fraction(t * (k + 1), 2) - t * (t + 1) * (k + 1) ** 2
    return lhs, _q(0)


def _lemma6_residual(k: int, n: int, t: int) -> tuple[Fraction, Fraction]:
    # e(H') lower bound after removing the t parts must reach R'
    r = ramsey_star_clique(k, n)
    bound = (r * t + math.comb(t, 2) + r_prime(k, n)
             - t * (k + 1) * ((t + 1) * (k + 1) - 1) + Fraction(t * (k + 1), 2))
    return bound, _q(r_prime(k, n))


def _sub11_star_term(k: int, n: int) -> tuple[Fraction, Fraction]:
    t1 = k * (n - 2) + 1 + -(-k // 2)
    return _q(k * t1), Fraction(k * k * (2 * n - 3) + 2 * k, 2)


def _sub11_total(k: int, n: int) -> tuple[Fraction, Fraction]:
    return rhat_star(k, n - 1) + Fraction(k * k * (2 * n - 3) + 2 * k, 2), _q(rhat_star(k, n))


def _sub12_floor(k: int, n: int) -> tuple[Fraction, Fraction]:
    lhs = (f_threshold(k, n) + k // 2 + 2) * (n - k)
    rhs = (Fraction(k * n - 2 * k * k, (k + 1) ** 2) + k // 2 + 1) * (n - k)
    return _q(lhs), rhs


def _sub12_linear(k: int, n: int) -> tuple[Fraction, Fraction]:
    lhs = (Fraction(k * n - 2 * k * k, (k + 1) ** 2) + k // 2 + 1) * (n - k)
    return lhs, Fraction(k * k * (2 * n - 3) + k, 2)


def _sub12_total(k: int, n: int) -> tuple[Fraction, Fraction]:
    return rhat_star(k, n - 1) + Fraction(k * k * (2 * n - 3) + k, 2), _q(rhat_star(k, n))


def _m1_is_f(k: int, n: int) -> tuple[Fraction, Fraction]:
    return _q(f_threshold(k, n - 1)), _q(0)


def _case2_sum(k: int, n: int, j: int) -> tuple[Fraction, Fraction]:
    # parity-specific deficit: kj - k^2 j/2 for even k, (kj - k^2 j)/2 for odd k
    total = k * _slope_prefix(k, n)[j - 1]
    tail = k * j - Fraction(k * k * j, 2) if k % 2 == 0 else Fraction(k * j - k * k * j, 2)
    return total + tail, _q(0)


def _case2_factored(k: int, n: int, j: int) -> tuple[Fraction, Fraction]:
    c = k - 2 if k % 2 == 0 else k - 1
    return 2 * k * n - k * j - 4 * k * k - c * (k + 1) ** 2 * Fraction(j, j - 1), _q(0)


def _case2_identity(k: int, n: int, j: int) -> tuple[Fraction, Fraction]:
    factored = k * (j - 1) * _case2_factored(k, n, j)[0] / (2 * (k + 1) ** 2)
    return _case2_sum(k, n, j)[0], factored


def _case3_sum(k: int, n: int, j: int) -> tuple[Fraction, Fraction]:
    c = k - 2 if k % 2 == 0 else k - 1
    total = k * _slope_prefix(k, n)[n - 3 * k - 3]
    return total - Fraction(k * c * j, 2), _q(0)


def _case3_factored(k: int, n: int, j: int) -> tuple[Fraction, Fraction]:
    c = k - 2 if k % 2 == 0 else k - 1
    return _q(k * (n - 3 * k - 3) * (n - k + 2) - (k + 1) ** 2 * c * j), _q(0)


def _case3_identity(k: int, n: int, j: int) -> tuple[Fraction, Fraction]:
    return _case3_sum(k, n, j)[0], k * _case3_factored(k, n, j)[0] / (2 * (k + 1) ** 2)


def _case4_sum(k: int, n: int) -> Fraction:
    return 2 * k * _slope_prefix(k, n)[n - 3 * k - 3] + 2 * k * (3 * k - 1)


def _case4(k: int, n: int) -> tuple[Fraction, Fraction]:
    if k % 2 == 0:
        return _case4_sum(k, n) + k * k + 2 * k * n, _q(k * k * n + 6 * k)
    return _case4_sum(k, n) + 2 * k * k + k * n, _q(k * k * n + 6 * k)


def _case4_identity(k: int, n: int) -> tuple[Fraction, Fraction]:
    closed = Fraction(k * k * (n - 3 * k - 3) * (n - k + 2), (k + 1) ** 2) + 2 * k * (3 * k - 1)
    return _case4_sum(k, n), closed


def _case4_reduction(k: int, n: int) -> tuple[Fraction, Fraction]:
    # the target bound k^2(n-1)^2/2 (even) or C(k(n-1)+1,2)-C(k,2) (odd), against
    # the accumulated layer count with the sum term taken at the same lower bound
    s = _case4_sum(k, n) / (2 * k)
    lhs = k * k + 2 * k * k * (n - 3) + k * (n - 3) + Fraction(k * k * (n - 3) * (n - 4), 2) + k * s
    return lhs, _q(rhat_star(k, n))


@dataclass(frozen=True)
class _Inequality:
    ident: str
    description: str
    relation: str  # ">=" or "=="
    evaluate: Callable
    indices: Callable[[int, int], Iterable[tuple]]


def _no_index(k: int, n: int) -> Iterator[tuple]:
    yield ()


def _t_range(k: int, n: int) -> Iterator[tuple]:
    for t in range(0, f_threshold(k, n) + 1):
        yield (t,)


def _case2_j(k: int, n: int) -> Iterator[tuple]:
    for j in range(2, n - 3 * k - 3 + 1):
        yield (j,)


def _case3_j(k: int, n: int) -> Iterator[tuple]:
    for j in range(n - 3 * k - 2, n - 4 + 1):
        yield (j,)


INEQUALITIES: tuple[_Inequality, ...] = (
    _Inequality("lemma6", "Rt + C(t,2) + t(k+1) + t(k+1)/2 - t(t+1)(k+1)^2 >= 0, 0 <= t <= f(k,n)",
                ">=", _lemma6, _t_range),
    _Inequality("lemma6-residual", "residual edge bound after t parts reaches R'",
                ">=", _lemma6_residual, _t_range),
    _Inequality("case1-m1", "m_1 = f(k,n-1), i.e. f(k,n-1) >= 0", ">=", _m1_is_f, _no_index),
    _Inequality("subcase1.1-star", "k|T_1| >= (k^2(2n-3)+2k)/2 for |T_1| = k(n-2)+1+ceil(k/2)",
                ">=", _sub11_star_term, _no_index),
    _Inequality("subcase1.1", "rhat*(n-1) + (k^2(2n-3)+2k)/2 >= rhat*(n)", ">=", _sub11_total, _no_index),
    _Inequality("subcase1.2-floor", "(f+floor(k/2)+2)(n-k) >= ((kn-2k^2)/(k+1)^2+floor(k/2)+1)(n-k)",
                ">=", _sub12_floor, _no_index),
    _Inequality("subcase1.2-linear", "((kn-2k^2)/(k+1)^2+floor(k/2)+1)(n-k) >= (k^2(2n-3)+k)/2",
                ">=", _sub12_linear, _no_index),
    _Inequality("subcase1.2", "rhat*(n-1) + (k^2(2n-3)+k)/2 >= rhat*(n)", ">=", _sub12_total, _no_index),
    _Inequality("case2", "k*sum l_i + deficit >= 0 with l_i >= (k(n-i)-2k^2)/(k+1)^2, 2 <= j <= n-3k-3",
                ">=", _case2_sum, _case2_j),
    _Inequality("case2-factored", "2kn - kj - 4k^2 - c(k+1)^2 j/(j-1) >= 0 (c = k-2 even, k-1 odd)",
                ">=", _case2_factored, _case2_j),
    _Inequality("case2-identity", "summed bound equals k(j-1)(...)/(2(k+1)^2)", "==", _case2_identity, _case2_j),
    _Inequality("case3", "k*sum_{i<=n-3k-3} l_i - c k j/2 >= 0, n-3k-2 <= j <= n-4",
                ">=", _case3_sum, _case3_j),
    _Inequality("case3-factored", "k(n-3k-3)(n-k+2) - (k+1)^2 c j >= 0", ">=", _case3_factored, _case3_j),
    _Inequality("case3-identity", "summed bound equals k(...)/(2(k+1)^2)", "==", _case3_identity, _case3_j),
    _Inequality("case4", "2k sum l_i + k^2 + 2kn >= k^2 n + 6k (even); 2k sum l_i + 2k^2 + kn >= k^2 n + 6k (odd)",
                ">=", _case4, _no_index),
    _Inequality("case4-identity", "2k sum l_i bound equals k^2(n-3k-3)(n-k+2)/(k+1)^2 + 2k(3k-1)",
                "==", _case4_identity, _no_index),
    _Inequality("case4-total", "accumulated layer bound >= rhat*(k,n)", ">=", _case4_reduction, _no_index),
)

INEQUALITY_IDS = tuple(q.ident for q in INEQUALITIES)
_BY_ID = {q.ident: q for q in INEQUALITIES}


def _holds(q: _Inequality, lhs: Fraction, rhs: Fraction) -> bool:
    return lhs >= rhs if q.relation == ">=" else lhs == rhs


def evaluate_point(ident: str, k: int, n: int, index: Iterable[int] = ()) -> bool:
    """Re-evaluate one inequality at one grid point; True when it holds."""
    q = _BY_ID[ident]
    return _holds(q, *q.evaluate(k, n, *index))


def audit_inequalities(
    k_range: Iterable[int] = range(2, 6),
    n_window: int = 50,
    *,
    n_start: Callable[[int], int] = large_n_threshold,
    only: Iterable[str] | None = None,
) -> list[AuditReport]:
    """Evaluate each inequality over ``k`` in ``k_range`` and ``n`` in a window above the threshold."""
    ks = list(k_range)
    if not ks or n_window < 1:
        raise ValueError("audit grid is empty")
    chosen = INEQUALITIES if only is None else [q for q in INEQUALITIES if q.ident in set(only)]
    reports = []
    for q in chosen:
        rep = AuditReport(q.ident, q.description,
                          {"k": ks, "n_start": [n_start(k) for k in ks], "n_window": n_window})
        for k in ks:
            for n in range(n_start(k), n_start(k) + n_window):
                for idx in q.indices(k, n):
                    lhs, rhs = q.evaluate(k, n, *idx)
                    rep.points += 1
                    if not _holds(q, lhs, rhs):
                        rep.violations.append({"k": k, "n": n, "index": list(idx),
                                               "lhs": str(lhs), "rhs": str(rhs)})
        reports.append(rep)
    return reports
