"""The two quadratically-constrained linear programs over color-subset
vectors: closed forms, numeric solvers, and stationarity diagnostics.

Problem 1 maximizes obj = sum_A alpha_A log|A| over the simplex
(v(alpha) = 1, alpha >= 0) subject to the quadratic edge-density constraint
e(alpha) >= gamma.  Problem 2 drops the vertex constraint, excludes the full
color set, normalizes e(alpha) >= 1, and maximizes
obj* = sum_A alpha_A log(|A|/q).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SubsetVector",
    "ProgramValues",
    "OptResult",
    "SweepResult",
    "subset_name",
    "parse_subset_name",
    "partitions_of",
    "evaluate",
    "kappa",
    "feasible_gamma_max",
    "opt_closed_form_sparse",
    "opt_closed_form_q3",
    "opt2_closed_form",
    "solve_opt2_partition",
    "solve_opt2_all_partitions",
    "solve_opt1_numeric",
    "stationarity_residual",
    "KKT_TOL",
    "NUMERIC_MATCH_TOL",
]

# configured thresholds: converged KKT residual, and the tolerance at which
# numeric solutions are compared against closed forms
KKT_TOL = 1e-9
NUMERIC_MATCH_TOL = 1e-6

MULTISTART_COUNT = 64
_MAX_Q = 12


def subset_name(mask: int) -> str:
    """Render a color-subset bitmask as '{1,3}' (bit i <-> color i+1)."""
    elems = [str(i + 1) for i in range(mask.bit_length()) if (mask >> i) & 1]
    return "{" + ",".join(elems) + "}"


def parse_subset_name(name: str) -> int:
    text = name.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    mask = 0
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        i = int(part)
        if i < 1:
            raise ValueError(f"colors are numbered from 1, got {i}")
        mask |= 1 << (i - 1)
    if mask == 0:
        raise ValueError(f"empty subset in {name!r}")
    return mask


class SubsetVector:
    """Vector indexed by the nonempty subsets of [q] (bitmasks 1..2^q-1)."""

    __slots__ = ("q", "values")

    def __init__(self, q: int, entries: dict[int, float] | np.ndarray | None = None):
        if not (1 <= q <= _MAX_Q):
            raise ValueError(f"need 1 <= q <= {_MAX_Q}, got q={q}")
        self.q = q
        vals = np.zeros(1 << q)
        if isinstance(entries, np.ndarray):
            if entries.shape != vals.shape:
                raise ValueError("entry array must have length 2^q")
            vals[:] = entries
        elif entries:
            for key, val in entries.items():
                mask = parse_subset_name(key) if isinstance(key, str) else int(key)
                if not (1 <= mask < (1 << q)):
                    raise ValueError(f"subset mask {mask} out of range for q={q}")
                vals[mask] = val
        vals[0] = 0.0
        neg = vals.min()
        if neg < -1e-9:
            raise ValueError(f"entries must be nonnegative, found {neg}")
        np.clip(vals, 0.0, None, out=vals)
        self.values = vals

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])

    def as_dict(self) -> dict[int, float]:
        return {m: float(v) for m, v in enumerate(self.values) if m and v != 0.0}

    def named_dict(self) -> dict[str, float]:
        return {subset_name(m): v for m, v in self.as_dict().items()}

    def support(self, tol: float = 0.0) -> list[int]:
        return [m for m in range(1, 1 << self.q) if self.values[m] > tol]

    def scaled(self, t: float) -> "SubsetVector":
        return SubsetVector(self.q, self.values * t)

    def subset_name(self, mask: int) -> str:
        return subset_name(mask)

    def __repr__(self):  # pragma: no cover
        return f"SubsetVector(q={self.q}, {self.named_dict()})"


@dataclass(frozen=True)
class ProgramValues:
    """(obj, v, e, obj*) evaluated at one vector."""

    obj: float
    v: float
    e: float
    obj_star: float


@dataclass(frozen=True)
class OptResult:
    value: float
    argmax: SubsetVector
    support: tuple[int, ...]
    kkt_residual: float
    method: str  # "closed-form" | "numeric"
    regime: str | None = None

    def to_dict(self) -> dict:
        out = {
            "value": self.value,
            "alpha": self.argmax.named_dict(),
            "support": [subset_name(m) for m in self.support],
            "kkt_residual": self.kkt_residual,
            "method": self.method,
        }
        if self.regime is not None:
            out["regime"] = self.regime
        return out


def _sizes_for(q: int) -> np.ndarray:
    return np.array([bin(m).count("1") for m in range(1 << q)], dtype=float)


def evaluate(alpha: SubsetVector) -> ProgramValues:
    """The four program quantities; e sums unordered disjoint pairs once."""
    q = alpha.q
    vals = alpha.values
    sizes = _sizes_for(q)
    logs = np.zeros(1 << q)
    logs[1:] = np.log(sizes[1:])
    obj = float(vals @ logs)
    v = float(vals.sum())
    # subset-sum (zeta) transform, then pair each A with the sum over its
    # complement's subsets
    f = vals.copy()
    for i in range(q):
        bit = 1 << i
        idx = np.arange(1 << q)
        has = (idx & bit) != 0
        f[has] += f[idx[has] ^ bit]
    full = (1 << q) - 1
    comp_sums = f[full ^ np.arange(1 << q)]
    e = 0.5 * float(vals @ comp_sums)
    star = logs - math.log(q)
    star[0] = 0.0
    obj_star = float(vals[1:full] @ star[1:full])
    return ProgramValues(obj=obj, v=v, e=e, obj_star=obj_star)


def kappa(q: int) -> float:
    """Density threshold below which the sparse closed form solves
    Problem 1; roughly 1/(q log q)."""
    if q < 2:
        raise ValueError("need q >= 2")
    ratio = math.log(q / (q - 1)) / math.log(q)
    return (math.sqrt(ratio) + 1.0 / math.sqrt(ratio)) ** -2


def feasible_gamma_max(q: int) -> float:
    """Largest e(alpha) over the simplex: (q-1)/(2q), attained on the
    all-singletons vector."""
    return (q - 1) / (2 * q)


def opt_closed_form_sparse(q: int, gamma: float) -> OptResult:
    """Unique Problem-1 solution for 0 <= gamma <= kappa(q):
    mass on one singleton, its complement, and the full set."""
    if q < 3:
        raise ValueError("need q >= 3")
    kq = kappa(q)
    if not (-1e-15 <= gamma <= kq + 1e-12):
        raise ValueError(f"gamma={gamma} outside [0, kappa_{q}={kq:.6g}]")
    gamma = min(max(gamma, 0.0), kq)
    full = (1 << q) - 1
    l1 = math.log(q / (q - 1))
    lq = math.log(q)
    if gamma == 0.0:
        vec = SubsetVector(q, {full: 1.0})
        return OptResult(lq, vec, (full,), 0.0, "closed-form")
    a1 = math.sqrt(gamma * l1 / lq)
    a_rest = gamma / a1
    vec = SubsetVector(q, {1: a1, full ^ 1: a_rest, full: 1.0 - a1 - a_rest})
    value = lq - 2.0 * math.sqrt(gamma * l1 * lq)
    return OptResult(value, vec, tuple(vec.support()), 0.0, "closed-form")


def opt_closed_form_q3(gamma: float) -> OptResult:
    """Complete Problem-1 solution for q = 3 on 0 <= gamma <= 1/3.

    Three regimes: the sparse form up to c = kappa(3) ~ 0.1969, a pure
    bipartite split up to 1/4, then the tripartite-leaning form up to the
    Turan density 1/3.
    """
    if not (-1e-15 <= gamma <= 1.0 / 3.0 + 1e-12):
        raise ValueError(f"gamma={gamma} outside [0, 1/3]")
    gamma = min(max(gamma, 0.0), 1.0 / 3.0)
    c = kappa(3)
    log2, log3 = math.log(2), math.log(3)
    A1, A2, A3, A12, A123 = 1, 2, 4, 3, 7
    if gamma <= c:
        base = opt_closed_form_sparse(3, gamma)
        # relabel to the conventional (alpha_3, alpha_12) support
        if gamma == 0.0:
            return OptResult(base.value, base.argmax, base.support, 0.0, "closed-form", "i")
        a3 = math.sqrt(gamma * math.log(1.5) / log3)
        a12 = gamma / a3
        vec = SubsetVector(3, {A3: a3, A12: a12, A123: 1.0 - a3 - a12})
        return OptResult(base.value, vec, tuple(vec.support()), 0.0, "closed-form", "i")
    if gamma <= 0.25:
        a12 = (1.0 + math.sqrt(1.0 - 4.0 * gamma)) / 2.0
        vec = SubsetVector(3, {A12: a12, A3: 1.0 - a12})
        return OptResult(a12 * log2, vec, tuple(vec.support()), 0.0, "closed-form", "ii")
    a12 = (1.0 - math.sqrt(12.0 * gamma - 3.0)) / 2.0
    a_single = (1.0 - 2.0 * a12) / 3.0
    vec = SubsetVector(
        3, {A12: a12, A1: a_single, A2: a_single, A3: (1.0 + a12) / 3.0}
    )
    return OptResult(a12 * log2, vec, tuple(vec.support()), 0.0, "closed-form", "iii")


def opt2_closed_form(q: int) -> OptResult:
    """Unique Problem-2 solution: one singleton against its complement,
    value -2 sqrt(log(q/(q-1)) log q)."""
    if q < 3:
        raise ValueError("need q >= 3")
    full = (1 << q) - 1
    l1 = math.log(q / (q - 1))
    lq = math.log(q)
    a1 = math.sqrt(l1 / lq)
    vec = SubsetVector(q, {1: a1, full ^ 1: 1.0 / a1})
    value = -2.0 * math.sqrt(l1 * lq)
    return OptResult(value, vec, tuple(vec.support()), 0.0, "closed-form")


# ---------------------------------------------------------------------------
# integer partitions and the per-partition reduction


SizePartition = tuple[int, ...]


def partitions_of(q: int, min_parts: int = 1) -> list[SizePartition]:
    """Integer partitions of q in descending-lex order, filtered to at
    least ``min_parts`` parts."""
    out: list[SizePartition] = []

    def rec(remaining: int, max_part: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(max_part, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(q, q, [])
    return [p for p in out if len(p) >= min_parts]


def partition_masks(q: int, partition: SizePartition) -> list[int]:
    """The lexicographically first set partition realizing the sizes:
    ascending part sizes take consecutive colors starting at color 1."""
    masks = []
    start = 0
    for size in sorted(partition):
        masks.append(((1 << size) - 1) << start)
        start += size
    return masks


def _validate_partition(q: int, partition: SizePartition) -> tuple[int, ...]:
    parts = tuple(sorted((int(p) for p in partition), reverse=True))
    if not parts or any(p < 1 for p in parts):
        raise ValueError(f"invalid partition {partition}")
    if sum(parts) != q:
        raise ValueError(f"partition {partition} does not sum to q={q}")
    if len(parts) < 2:
        raise ValueError("single-part partition gives e = 0 and is infeasible")
    return parts


def _reduced_problem(q: int, parts: tuple[int, ...]):
    """Collapse equal-size parts (they carry equal values at any optimum)
    into one variable each.  Returns (distinct sizes, multiplicities,
    linear coefficients c, quadratic matrix Q) with e(z) = z^T Q z / 2."""
    distinct = sorted(set(parts))
    mult = np.array([parts.count(d) for d in distinct], dtype=float)
    c = np.array([parts.count(d) * math.log(d / q) for d in distinct])
    Q = np.outer(mult, mult) - np.diag(mult)
    return distinct, mult, c, Q


def _project_simplex(x: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {u >= 0, sum u = 1}."""
    u = np.sort(x)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, len(x) + 1)
    cond = u - css / ks > 0
    rho = np.nonzero(cond)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(x - theta, 0.0)


def _pg_ratio_ascent(c: np.ndarray, Q: np.ndarray, u0: np.ndarray, iters: int = 300):
    """Projected-gradient ascent of f(u) = (c.u)/sqrt(e(u)) on the simplex.

    obj* is homogeneous of degree 1 and e of degree 2, so the optimum of
    the original problem is the best direction rescaled to e = 1.
    """

    def e_of(u):
        return 0.5 * float(u @ Q @ u)

    u = _project_simplex(u0.astype(float))
    if e_of(u) < 1e-12:
        u = _project_simplex(0.5 * u + 0.5 * np.full_like(u, 1.0 / len(u)))
    f = float(c @ u) / math.sqrt(max(e_of(u), 1e-300))
    step = 1.0
    for _ in range(iters):
        g = Q @ u
        e = max(e_of(u), 1e-300)
        grad = c / math.sqrt(e) - (float(c @ u) / (2.0 * e**1.5)) * g
        improved = False
        trial = step
        for _ in range(40):
            u2 = _project_simplex(u + trial * grad)
            e2 = e_of(u2)
            if e2 > 1e-14:
                f2 = float(c @ u2) / math.sqrt(e2)
                if f2 > f + 1e-15:
                    u, f = u2, f2
                    step = trial * 1.5
                    improved = True
                    break
            trial *= 0.5
        if not improved:
            break
    return u, f


def _newton_polish_partition(c: np.ndarray, Q: np.ndarray, z0: np.ndarray):
    """Newton's method on the stationarity system c_S + lambda (Qz)_S = 0,
    e(z) = 1, with active-set dropping when a coordinate hits zero.
    Returns (z, lambda, residual) or None."""
    k = len(c)
    active = [i for i in range(k) if z0[i] > 1e-9]
    if not active:
        return None
    for _ in range(k + 1):
        S = np.array(active)
        z = np.zeros(k)
        z[S] = np.maximum(z0[S], 1e-12)
        e = 0.5 * float(z @ Q @ z)
        if e > 1e-300:
            z /= math.sqrt(e)
        w = (Q @ z)[S]
        denom = float(w @ w)
        lam = -float(c[S] @ w) / denom if denom > 0 else 1.0
        ok = False
        for _ in range(80):
            w_full = Q @ z
            F = np.concatenate([c[S] + lam * w_full[S], [0.5 * float(z @ Q @ z) - 1.0]])
            if np.max(np.abs(F)) < 1e-13:
                ok = True
                break
            J = np.zeros((len(S) + 1, len(S) + 1))
            J[: len(S), : len(S)] = lam * Q[np.ix_(S, S)]
            J[: len(S), -1] = w_full[S]
            J[-1, : len(S)] = w_full[S]
            try:
                delta = np.linalg.solve(J, -F)
            except np.linalg.LinAlgError:
                delta, *_ = np.linalg.lstsq(J, -F, rcond=None)
            z[S] += delta[: len(S)]
            lam += delta[-1]
        if not ok:
            return None
        if np.all(z[S] > -1e-12):
            z[S] = np.maximum(z[S], 0.0)
            w_full = Q @ z
            resid = max(
                float(np.max(np.abs(c[S] + lam * w_full[S]))),
                abs(0.5 * float(z @ Q @ z) - 1.0),
            )
            return z, lam, resid
        worst = S[int(np.argmin(z[S]))]
        active.remove(worst)
        if not active:
            return None
        z0 = np.maximum(z, 0.0)
    return None


def _partition_starts(k: int, rng: np.random.Generator, count: int) -> list[np.ndarray]:
    starts = [np.full(k, 1.0 / k)]
    uniform = starts[0]
    for i in range(k):
        ind = np.full(k, 0.05 / max(k - 1, 1))
        ind[i] = 0.95
        starts.append(ind)
    while len(starts) < count:
        starts.append(_project_simplex(rng.exponential(1.0, size=k)))
    return starts[:count]


def solve_opt2_partition(
    q: int,
    partition: SizePartition,
    *,
    starts: int = MULTISTART_COUNT,
    seed: int = 0,
) -> OptResult:
    """Maximum of obj* over Feas* restricted to supports realizing the given
    size partition.

    Equal-size parts share one variable; the direction on the simplex is
    optimized by projected gradient with deterministic multi-starts, the
    winner is rescaled to e = 1 and polished by Newton on the stationarity
    system, which is then verified.
    """
    parts = _validate_partition(q, partition)
    distinct, mult, c, Q = _reduced_problem(q, parts)
    rng = np.random.default_rng(seed)
    best = None
    for u0 in _partition_starts(len(distinct), rng, starts):
        u, _ = _pg_ratio_ascent(c, Q, u0)
        e = 0.5 * float(u @ Q @ u)
        if e < 1e-14:
            continue
        z = u / math.sqrt(e)
        polished = _newton_polish_partition(c, Q, z)
        if polished is None:
            cand = (float(c @ z), 1e-3, z)
        else:
            z2, _, resid = polished
            cand = (float(c @ z2), resid, z2)
        if (
            best is None
            or cand[0] > best[0] + 1e-12
            or (abs(cand[0] - best[0]) <= 1e-12 and cand[1] < best[1])
        ):
            best = cand
    if best is None:  # pragma: no cover - simplex starts always yield e > 0
        raise RuntimeError(f"no feasible direction found for partition {parts}")
    value, resid, z = best
    masks = partition_masks(q, parts)
    sizes_sorted = sorted(parts)
    entries: dict[int, float] = {}
    for mask, size in zip(masks, sizes_sorted):
        entries[mask] = float(z[distinct.index(size)])
    vec = SubsetVector(q, entries)
    support = tuple(vec.support(1e-12))
    if len(support) == len(masks):
        resid = max(resid, stationarity_residual(vec))
    return OptResult(value, vec, support, resid, "numeric")


@dataclass(frozen=True)
class SweepResult:
    q: int
    rows: tuple[tuple[SizePartition, OptResult], ...]
    argmax_partition: SizePartition = field(default=())

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "argmax_partition": list(self.argmax_partition),
            "rows": [
                {"partition": list(p), **r.to_dict()} for p, r in self.rows
            ],
        }


def solve_opt2_all_partitions(
    q: int, *, starts: int = MULTISTART_COUNT, seed: int = 0
) -> SweepResult:
    """One numeric maximization per integer partition of q with at least two
    parts, flagging the winning partition."""
    if q < 3:
        raise ValueError("need q >= 3")
    if q > 8:
        warnings.warn(
            f"sweep over all partitions of q={q} may be slow", RuntimeWarning
        )
    rows = []
    best_idx = 0
    parts_list = partitions_of(q, min_parts=2)
    for i, parts in enumerate(parts_list):
        res = solve_opt2_partition(q, parts, starts=starts, seed=seed)
        rows.append((parts, res))
        if res.value > rows[best_idx][1].value:
            best_idx = i
    return SweepResult(q, tuple(rows), rows[best_idx][0])


# ---------------------------------------------------------------------------
# Problem 1, full 2^q - 1 vector


def _disjoint_matrix(q: int) -> np.ndarray:
    full = (1 << q) - 1
    masks = np.arange(1, full + 1)
    return ((masks[:, None] & masks[None, :]) == 0).astype(float)


def _opt1_starts(q: int, rng: np.random.Generator, count: int) -> list[np.ndarray]:
    """Deterministic start list: the full-set vertex, the uniform direction,
    every two-part indicator direction, then seeded randoms up to ``count``
    (the indicators are never dropped, so for large q the list may exceed
    ``count``)."""
    full = (1 << q) - 1
    dim = full
    starts = []
    top = np.zeros(dim)
    top[full - 1] = 1.0
    starts.append(top)
    starts.append(np.full(dim, 1.0 / dim))
    for a in range(1, full):
        comp = full ^ a
        if a < comp:
            two = np.zeros(dim)
            two[a - 1] = 0.5
            two[comp - 1] = 0.5
            starts.append(two)
    while len(starts) < count:
        starts.append(_project_simplex(rng.exponential(1.0, size=dim)))
    return starts


def _restore_feasibility(D, gamma, alpha, iters=300):
    """Projected-gradient ascent on e(alpha) until e >= gamma (or until e
    stops improving).  Pulls iterates off the degenerate alpha_[q] vertex,
    where the quadratic's gradient vanishes."""

    def e_of(a):
        return 0.5 * float(a @ (D @ a))

    a = alpha
    step = 0.5
    for _ in range(iters):
        e = e_of(a)
        if e >= gamma - 1e-13:
            break
        g = D @ a
        if float(g @ g) < 1e-24:
            # exactly at the degenerate vertex: mix toward uniform
            a = _project_simplex(0.5 * a + 0.5 * np.full_like(a, 1.0 / len(a)))
            continue
        improved = False
        trial = step
        for _ in range(40):
            a2 = _project_simplex(a + trial * g)
            if e_of(a2) > e + 1e-16:
                a = a2
                step = trial * 1.5
                improved = True
                break
            trial *= 0.5
        if not improved:
            break
    return a


def _al_maximize(c, D, gamma, alpha0, inner_iters=250, outer_iters=25):
    """Augmented-Lagrangian loop for max c.alpha s.t. e >= gamma on the
    simplex (the simplex itself handles v = 1 and alpha >= 0 by
    projection).  Iterates that leave the feasible region are pulled back
    by a restoration step before the penalty is strengthened."""

    def e_of(a):
        return 0.5 * float(a @ (D @ a))

    alpha = _restore_feasibility(D, gamma, _project_simplex(alpha0.astype(float)))
    lam, mu = 1.0, 64.0
    prev_viol = math.inf
    for _ in range(outer_iters):
        step = 0.5
        phi_prev = -math.inf
        for _ in range(inner_iters):
            Da = D @ alpha
            g = e_of(alpha) - gamma
            slack = max(0.0, lam / mu - g)
            grad = c + mu * slack * Da
            phi = float(c @ alpha) - 0.5 * mu * slack * slack
            improved = False
            trial = step
            for _ in range(40):
                a2 = _project_simplex(alpha + trial * grad)
                g2 = e_of(a2) - gamma
                s2 = max(0.0, lam / mu - g2)
                phi2 = float(c @ a2) - 0.5 * mu * s2 * s2
                if phi2 > phi + 1e-15:
                    alpha = a2
                    step = trial * 1.5
                    improved = True
                    break
                trial *= 0.5
            if not improved or abs(phi - phi_prev) < 1e-15:
                break
            phi_prev = phi
        g = e_of(alpha) - gamma
        viol = max(0.0, -g)
        lam = mu * max(0.0, lam / mu - g)
        if viol < 1e-12:
            break
        alpha = _restore_feasibility(D, gamma, alpha)
        if viol > 0.25 * prev_viol:
            mu *= 4.0
        prev_viol = viol
    return alpha, lam


def _newton_polish_opt1(c, D, gamma, alpha0, support_tol=1e-6):
    """Newton refinement of the KKT system on the detected support with
    both constraints (e = gamma, v = 1) active."""
    dim = len(c)
    active = [i for i in range(dim) if alpha0[i] > support_tol]
    if not active:
        return None
    alpha = np.maximum(alpha0, 0.0)
    for _ in range(min(dim, 12)):
        S = np.array(active)
        a = np.zeros(dim)
        a[S] = np.maximum(alpha[S], 1e-12)
        a /= a.sum()
        Da = D @ a
        denomtag = float(Da[S] @ Da[S])
        lam = 1.0
        nu = float(np.mean(c[S]))
        if denomtag > 0:
            # least-squares init for (lam, nu) from stationarity rows
            A = np.stack([Da[S], -np.ones(len(S))], axis=1)
            sol, *_ = np.linalg.lstsq(A, -c[S], rcond=None)
            lam, nu = float(sol[0]), float(sol[1])
        ok = False
        for _ in range(80):
            Da = D @ a
            F = np.concatenate(
                [
                    c[S] + lam * Da[S] - nu,
                    [0.5 * float(a @ Da) - gamma, float(a.sum()) - 1.0],
                ]
            )
            if np.max(np.abs(F)) < 1e-13:
                ok = True
                break
            k = len(S)
            J = np.zeros((k + 2, k + 2))
            J[:k, :k] = lam * D[np.ix_(S, S)]
            J[:k, k] = Da[S]
            J[:k, k + 1] = -1.0
            J[k, :k] = Da[S]
            J[k + 1, :k] = 1.0
            try:
                delta = np.linalg.solve(J, -F)
            except np.linalg.LinAlgError:
                delta, *_ = np.linalg.lstsq(J, -F, rcond=None)
            a[S] += delta[:k]
            lam += delta[k]
            nu += delta[k + 1]
        if not ok:
            return None
        if np.all(a[S] > -1e-10):
            a[S] = np.maximum(a[S], 0.0)
            return a, lam, nu
        worst = S[int(np.argmin(a[S]))]
        active.remove(worst)
        if not active:
            return None
        alpha = np.maximum(a, 0.0)
    return None


def solve_opt1_numeric(
    q: int,
    gamma: float,
    *,
    starts: int = MULTISTART_COUNT,
    seed: int = 0,
) -> OptResult:
    """Numeric Problem-1 solver over the full 2^q - 1 vector:
    augmented-Lagrangian iterations with deterministic multi-start, then a
    Newton polish of the active KKT system."""
    if not (2 <= q <= 10):
        raise ValueError("numeric Problem-1 solver supports 2 <= q <= 10")
    gmax = feasible_gamma_max(q)
    if gamma < -1e-15 or gamma > gmax + 1e-12:
        raise ValueError(
            f"gamma={gamma} infeasible: the simplex admits e up to (q-1)/(2q)={gmax:.6g}"
        )
    gamma = min(max(gamma, 0.0), gmax)
    full = (1 << q) - 1
    sizes = np.array([bin(m + 1).count("1") for m in range(full)], dtype=float)
    c = np.log(sizes)
    if gamma == 0.0:
        vec = SubsetVector(q, {full: 1.0})
        return OptResult(math.log(q), vec, (full,), 0.0, "numeric")
    D = _disjoint_matrix(q)
    rng = np.random.default_rng(seed)
    best = None
    best_infeasible = None
    for a0 in _opt1_starts(q, rng, starts):
        a, lam = _al_maximize(c, D, gamma, a0)
        polished = _newton_polish_opt1(c, D, gamma, a)
        if polished is not None:
            a2, lam2, nu2 = polished
            e2 = 0.5 * float(a2 @ D @ a2)
            if e2 >= gamma - 1e-9 and abs(a2.sum() - 1.0) < 1e-9:
                resid = _kkt_residual_opt1(c, D, gamma, a2, lam2, nu2)
                cand = (float(c @ a2), resid, a2, lam2, nu2)
            else:
                polished = None
        if polished is None:
            Da = D @ a
            nu = float(np.mean((c + lam * Da)[a > 1e-8])) if np.any(a > 1e-8) else 0.0
            resid = _kkt_residual_opt1(c, D, gamma, a, lam, nu)
            cand = (float(c @ a), resid, a, lam, nu)
        # a candidate must actually satisfy the constraints to compete
        feas_viol = max(
            max(0.0, gamma - 0.5 * float(cand[2] @ D @ cand[2])),
            abs(float(cand[2].sum()) - 1.0),
        )
        if feas_viol > 1e-9:
            if best_infeasible is None or cand[1] < best_infeasible[1]:
                best_infeasible = cand
            continue
        if (
            best is None
            or cand[0] > best[0] + 1e-12
            or (abs(cand[0] - best[0]) <= 1e-12 and cand[1] < best[1])
        ):
            best = cand
    if best is None:
        # non-convergence: report the best effort with its residual
        best = best_infeasible
    value, resid, a, lam, nu = best
    entries = {m + 1: float(a[m]) for m in range(full) if a[m] > 0.0}
    vec = SubsetVector(q, entries)
    return OptResult(value, vec, tuple(vec.support(1e-12)), resid, "numeric")


def _kkt_residual_opt1(c, D, gamma, a, lam, nu) -> float:
    Da = D @ a
    stat = c + lam * Da - nu
    on = a > 1e-10
    resid = 0.0
    if np.any(on):
        resid = float(np.max(np.abs(stat[on])))
    if np.any(~on):
        resid = max(resid, float(np.max(np.maximum(stat[~on], 0.0))))
    e = 0.5 * float(a @ Da)
    resid = max(resid, abs(a.sum() - 1.0))
    resid = max(resid, max(0.0, gamma - e))
    if lam > 1e-10:
        resid = max(resid, abs(e - gamma))
    resid = max(resid, max(0.0, -lam))
    return resid


# ---------------------------------------------------------------------------
# stationarity diagnostics (Problem 2)


def stationarity_residual(
    alpha: SubsetVector,
    restrict_to_support: bool = True,
    support_tol: float = 1e-12,
) -> float:
    """Largest violation of the I_A = 2 J_A stationarity system, where
    I_A = alpha_A * sum_{B != A} alpha_B and
    J_A = alpha_A * log(|A|/q) / obj*(alpha).

    Requires the support to be a partition of [q]; any optimum of
    Problem 2 restricted to a partition support satisfies I = 2J.
    """
    q = alpha.q
    full = (1 << q) - 1
    support = alpha.support(support_tol)
    union = 0
    total_bits = 0
    for m in support:
        union |= m
        total_bits += bin(m).count("1")
    if union != full or total_bits != q:
        raise ValueError(
            "support must be a partition of [q] "
            f"(got {[subset_name(m) for m in support]})"
        )
    vals = alpha.values
    star = evaluate(alpha).obj_star
    if abs(star) < 1e-300:
        raise ValueError("obj*(alpha) = 0; stationarity ratios undefined")
    total = float(vals.sum())
    masks = support if restrict_to_support else range(1, full + 1)
    worst = 0.0
    for m in masks:
        a = float(vals[m])
        i_a = a * (total - a)
        size = bin(m).count("1")
        j_a = a * math.log(size / q) / star
        worst = max(worst, abs(i_a - 2.0 * j_a))
    return worst
