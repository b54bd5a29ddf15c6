"""Numeric verification of the appendix inequalities and cross-checks that
tie the counting formulas to brute force.

Inequalities that only hold 'for sufficiently large' parameters are run as
threshold scans reporting the empirical threshold; count comparisons use
exact integers throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .counting import (
    bipartite_star_count_q3,
    chromatic_polynomial,
    count_colorings,
    footprint_count_q3,
    turan_coloring_count,
)
from .graphs import Graph, BipartitionSpec, semi_complete, turan, turan_edge_count

__all__ = [
    "CheckResult",
    "check_Fq",
    "check_partition_colors",
    "check_claim5_inequality",
    "check_turan_routine",
    "cross_check_counting",
    "run_all_checks",
]

_GUARD = 1e-12  # comparison guard band for real-valued checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    grid: str
    worst_case: tuple
    passed: bool
    details: dict | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "grid": self.grid,
            "worst_case": list(self.worst_case),
            "passed": self.passed,
            "details": self.details or {},
        }


def _fq(q: float, x: np.ndarray) -> np.ndarray:
    return np.log(q / (q - x)) * np.log(q / x)


def check_Fq(
    q_range: Sequence[int] = range(3, 201),
    points_per_unit: int = 200,
) -> CheckResult:
    """F_q(x) = log(q/(q-x)) log(q/x): strictly unimodal with peak at q/2 and
    symmetric about it; and F_q(3) > 2 F_q(1) (q-3)/(q-2) for q >= 9."""
    if points_per_unit < 100:
        raise ValueError("need grid resolution >= 100 points per unit")
    worst_margin = math.inf
    worst_input = None
    ok = True
    for q in q_range:
        xs = np.arange(1, q * points_per_unit) / points_per_unit
        vals = _fq(float(q), xs)
        half = q / 2.0
        xs_left = xs[xs < half]
        dl = np.diff(vals[xs < half])
        if dl.size:
            i = int(np.argmin(dl))
            if dl[i] < worst_margin:
                worst_margin = float(dl[i])
                worst_input = (q, "increase", float(xs_left[i]))
            if dl[i] <= _GUARD:
                ok = False
        xs_right = xs[xs > half]
        dr = -np.diff(vals[xs > half])
        if dr.size:
            i = int(np.argmin(dr))
            if dr[i] < worst_margin:
                worst_margin = float(dr[i])
                worst_input = (q, "decrease", float(xs_right[i]))
            if dr[i] <= _GUARD:
                ok = False
        # symmetry about q/2
        sym = np.max(np.abs(vals - _fq(float(q), q - xs)))
        if sym > _GUARD:
            ok = False
            worst_input = (q, "symmetry", float(sym))
    g9 = h9 = None
    for q in q_range:
        if q < 9:
            continue
        g = _fq(float(q), np.array([3.0]))[0]
        h = 2.0 * _fq(float(q), np.array([1.0]))[0] * (q - 3) / (q - 2)
        if q == 9:
            g9, h9 = float(g), float(h)
        margin = float(g - h)
        if margin < worst_margin:
            worst_margin = margin
            worst_input = (q, "F_q(3) vs 2F_q(1)(q-3)/(q-2)", margin)
        if margin <= _GUARD:
            ok = False
    details = {}
    if g9 is not None:
        details = {"g(9)": g9, "h(9)": h9}
    return CheckResult(
        name="Fq_unimodal_and_tail",
        grid=f"q in [{min(q_range)},{max(q_range)}], {points_per_unit} pts/unit",
        worst_case=(worst_input, worst_margin),
        passed=ok,
        details=details,
    )


def check_partition_colors(
    t_range: Sequence[int] = (3, 4, 5, 6),
    ratio_grid: Sequence[float] | None = None,
    a_grid: Sequence[int] = range(1, 41),
) -> CheckResult:
    """The color-split sum: with b/a >= log t / log((t-1)/(t-2)),
    (i) i^a (t-i)^b falls by a factor >= 1.5^a at each step of i, and
    (ii) sum_i C(t,i) i^a (t-i)^b <= 1.1 t (t-1)^b once a clears a per-t
    threshold, which is scanned for and reported.  Exact integers only."""
    ok = True
    worst = None
    thresholds: dict[int, int | None] = {}
    for t in t_range:
        min_ratio = math.log(t) / math.log((t - 1) / (t - 2))
        ratios = list(ratio_grid) if ratio_grid else [min_ratio]
        for ratio in ratios:
            if ratio < min_ratio - 1e-12:
                raise ValueError(
                    f"ratio {ratio} below the required b/a >= {min_ratio:.4f} for t={t}"
                )
            threshold = None
            for a in a_grid:
                b = math.ceil(a * ratio)
                # (i): exact comparison, 2^a * i^a (t-i)^b >= 3^a (i+1)^a (t-i-1)^b
                for i in range(1, t - 1):
                    lhs = 2**a * i**a * (t - i) ** b
                    rhs = 3**a * (i + 1) ** a * (t - i - 1) ** b
                    if lhs < rhs:
                        ok = False
                        worst = ((t, a, b, i), "step-ratio fails")
                # (ii): 10 * sum <= 11 * t * (t-1)^b
                total = sum(
                    math.comb(t, i) * i**a * (t - i) ** b for i in range(1, t)
                )
                holds = 10 * total <= 11 * t * (t - 1) ** b
                if holds and threshold is None:
                    threshold = a
                if threshold is not None and not holds:
                    ok = False
                    worst = ((t, a, b), "sum bound regressed after threshold")
            if ratio == ratios[0]:
                thresholds[t] = threshold
            if threshold is None:
                ok = False
                worst = ((t, "no a in grid"), "sum bound never holds")
    return CheckResult(
        name="partition_colors_dominant_term",
        grid=f"t in {list(t_range)}, a in [{min(a_grid)},{max(a_grid)}]",
        worst_case=(worst, None),
        passed=ok,
        details={"first_a_where_sum_bound_holds": thresholds},
    )


def check_claim5_inequality(
    sample_count: int = 100_000, seed: int = 0
) -> CheckResult:
    """s = largest integer with s(n-s) >= m satisfies s >= v1 - ceil(sqrt(t))
    whenever m <= n^2/4 and v1(n-v1) >= m-t; random integer samples."""
    rng = np.random.default_rng(seed)
    worst_margin = None
    worst_input = None
    ok = True
    checked = 0
    while checked < sample_count:
        n = int(rng.integers(2, 101))
        mmax = n * n // 4
        if mmax < 1:
            continue
        m = int(rng.integers(1, mmax + 1))
        t = int(rng.integers(0, 51))
        if m - t <= 0:
            v_lo, v_hi = 1, n - 1
        else:
            disc = n * n - 4 * (m - t)
            if disc < 0:
                continue
            v_hi = min((n + math.isqrt(disc)) // 2, n - 1)
            v_lo = max(n - v_hi, 1)
        if v_lo > v_hi:
            continue
        v1 = int(rng.integers(v_lo, v_hi + 1))
        s = (n + math.isqrt(n * n - 4 * m)) // 2
        ceil_rt = 0 if t == 0 else math.isqrt(t - 1) + 1
        margin = s - (v1 - ceil_rt)
        if worst_margin is None or margin < worst_margin:
            worst_margin = margin
            worst_input = (n, m, t, v1, s)
        if margin < 0:
            ok = False
        checked += 1
    return CheckResult(
        name="claim5_bipartition_size",
        grid=f"{sample_count} seeded samples, n <= 100, t <= 50",
        worst_case=(worst_input, worst_margin),
        passed=ok,
    )


def check_turan_routine(
    q_range: Sequence[int] = (4, 5, 6, 7, 8),
    n_range: Sequence[int] | None = None,
) -> CheckResult:
    """The Turan count beats q! 2^((q-1)(n-q)) 2^(-(q/(q-1))(delta+C(q-1,2)) + 2C(q,2))
    for all n past a per-q threshold; exact big-integer comparison after
    raising both sides to the (q-1)-th power."""
    ok = True
    worst = None
    thresholds: dict[int, int | None] = {}
    for q in q_range:
        ns = list(n_range) if n_range else list(range(q - 1, 61))
        threshold = None
        for n in ns:
            if n < q - 1:
                continue
            delta = turan_edge_count(n, q - 1) - turan_edge_count(n - q + 1, q - 1)
            # exponent of 2 is E = (q-1)(n-q) - (q/(q-1)) (delta + C(q-1,2)) + 2 C(q,2);
            # multiply through by q-1 to stay in integers
            e_scaled = (
                (q - 1) ** 2 * (n - q)
                - q * (delta + math.comb(q - 1, 2))
                + 2 * math.comb(q, 2) * (q - 1)
            )
            lhs_m = turan_coloring_count(n, q) // math.factorial(q)
            if e_scaled >= 0:
                holds = lhs_m ** (q - 1) > 2**e_scaled
            else:
                holds = lhs_m ** (q - 1) * 2 ** (-e_scaled) > 1
            if holds and threshold is None:
                threshold = n
            if threshold is not None and not holds:
                ok = False
                worst = ((q, n), "inequality regressed after threshold")
        thresholds[q] = threshold
        if threshold is None:
            ok = False
            worst = ((q, "no n in range"), "inequality never holds")
    return CheckResult(
        name="turan_count_vs_degree_bound",
        grid=f"q in {list(q_range)}, n scanned to {max(n_range) if n_range else 60}",
        worst_case=(worst, None),
        passed=ok,
        details={"first_n_where_bound_holds": thresholds},
    )


def cross_check_counting(limit: int | None = None, seed: int = 0) -> CheckResult:
    """Backend agreement and formula-vs-brute-force suites.

    Runs the Turan closed form against the backtracking counter, the
    bipartite-star formula against both star orientations, footprint
    counting on stress cases, and backtracking against the chromatic
    polynomial on seeded random graphs.
    """
    n_cap = limit if limit is not None else 12
    failures = []
    checked = 0

    for q in (3, 4, 5):
        for n in range(q - 1, n_cap + 1):
            checked += 1
            if turan_coloring_count(n, q) != count_colorings(turan(n, q - 1), q):
                failures.append(("turan", n, q))

    for a in range(1, 6):
        for b in range(a, 6):
            for r in range(0, a):
                for side in ("smaller", "larger"):
                    checked += 1
                    g = semi_complete(BipartitionSpec(a, b, r, side))
                    if bipartite_star_count_q3(a, b, r) != count_colorings(g, 3):
                        failures.append(("bipartite-star", a, b, r, side))

    # K_{3,3} minus two disjoint edges: footprint s = 2
    g = Graph(6, frozenset({(u, 3 + v) for u in range(3) for v in range(3)})
              - {(0, 3), (1, 4)})
    checked += 1
    if footprint_count_q3(g, ([0, 1, 2], [3, 4, 5])) != count_colorings(g, 3):
        failures.append(("footprint", "K33-2disjoint"))

    rng = np.random.default_rng(seed)
    for _ in range(30):
        n = int(rng.integers(2, 8))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        mask = int(rng.integers(0, 2 ** len(pairs)))
        g = Graph(n, frozenset(p for i, p in enumerate(pairs) if (mask >> i) & 1))
        poly = chromatic_polynomial(g)
        for q in (2, 3, 4):
            checked += 1
            if count_colorings(g, q) != poly(q):
                failures.append(("backend", n, sorted(g.edges), q))

    return CheckResult(
        name="counting_cross_checks",
        grid=f"turan n <= {n_cap}; stars a <= b <= 5; 30 seeded random graphs",
        worst_case=(failures[0] if failures else None, len(failures)),
        passed=not failures,
        details={"cases_checked": checked},
    )


def run_all_checks(sample_count: int = 100_000, seed: int = 0) -> list[CheckResult]:
    """The full verification suite with default grids."""
    return [
        check_Fq(),
        check_partition_colors(),
        check_claim5_inequality(sample_count=sample_count, seed=seed),
        check_turan_routine(),
        cross_check_counting(seed=seed),
    ]


def format_report(results: Iterable[CheckResult]) -> str:
    lines = []
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {status}  {r.grid}")
        if not r.passed:
            lines.append(f"{'':<{width}}        worst: {r.worst_case}")
    return "\n".join(lines)
