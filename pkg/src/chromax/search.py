"""Exhaustive search over n-vertex m-edge graphs for coloring/clique
extremes, with classification against the predicted extremal families.

The labeled edge-subset space can be split into contiguous ranges by
combinatorial unranking and searched in parallel; partial results merge
deterministically.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Literal

from .counting import (
    _falling_factorial,
    _partition_counts_masks,
    bipartite_star_count_q3,
    count_cliques,
    count_colorings,
)
from .graphs import Graph, canonical_mask, encode

__all__ = [
    "SearchReport",
    "PendantCaseReport",
    "enumerate_graphs",
    "search_max_colorings",
    "search_min_colorings",
    "search_max_cliques",
    "classify_extremal",
    "pendant_case_report",
    "SEARCH_VERTEX_CAP",
    "LABELED_ENUM_CAP",
]

SEARCH_VERTEX_CAP = 8
LABELED_ENUM_CAP = 10**8

Objective = Literal["max-colorings", "min-colorings", "max-cliques"]


@dataclass(frozen=True)
class SearchReport:
    n: int
    m: int
    objective: Objective
    extremal_value: int
    witnesses: tuple[Graph, ...]
    tags: tuple[tuple[str, ...], ...]
    graphs_examined: int
    dedup: bool
    q: int | None = None
    t: int | None = None

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "objective": self.objective,
            "extremal_value": self.extremal_value,
            "witnesses": [encode(g, "graph6").decode("ascii") for g in self.witnesses],
            "tags": [list(t) for t in self.tags],
            "graphs_examined": self.graphs_examined,
            "dedup": self.dedup,
        }
        if self.q is not None:
            out["q"] = self.q
        if self.t is not None:
            out["t"] = self.t
        return out


def _slots(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _check_instance(n: int, m: int) -> int:
    if n < 0 or m < 0:
        raise ValueError("need n, m >= 0")
    if n > SEARCH_VERTEX_CAP:
        raise ValueError(f"exhaustive search limited to n <= {SEARCH_VERTEX_CAP}")
    total = n * (n - 1) // 2
    if m > total:
        raise ValueError(f"m={m} exceeds C({n},2)={total}")
    count = math.comb(total, m)
    if count > LABELED_ENUM_CAP:
        raise ValueError(f"labeled space C({total},{m})={count} exceeds cap")
    return count


def enumerate_graphs(n: int, m: int, dedup: bool = False) -> Iterator[Graph]:
    """All labeled m-edge graphs on n vertices, or one representative per
    isomorphism class (canonical-form filtering) when dedup is on."""
    _check_instance(n, m)
    pairs = _slots(n)
    if not dedup:
        for combo in combinations(range(len(pairs)), m):
            yield Graph(n, frozenset(pairs[i] for i in combo))
        return
    seen = set()
    for combo in combinations(range(len(pairs)), m):
        mask = 0
        for i in combo:
            mask |= 1 << i
        canon = canonical_mask(n, mask)
        if canon not in seen:
            seen.add(canon)
            yield Graph(n, frozenset(pairs[i] for i in combo))


# ---------------------------------------------------------------------------
# search engine


def _colorings_from_combo(adj: list[int], q: int) -> int:
    counts = _partition_counts_masks(adj, min(q, len(adj)))
    return sum(c * _falling_factorial(q, j) for j, c in enumerate(counts) if c)


def _cliques_from_adj(adj: list[int], t: int) -> int:
    n = len(adj)
    if t == 1:
        return n
    total = 0

    def rec(cands: int, depth: int) -> None:
        nonlocal total
        c = cands
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            if depth + 1 == t:
                total += 1
            else:
                rec(cands & adj[v] & ~((1 << (v + 1)) - 1), depth + 1)

    for v in range(n):
        rec(adj[v] & ~((1 << (v + 1)) - 1), 1)
    return total


def _component_sizes(n: int, combo_pairs) -> tuple[int, list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deg = [0] * n
    for u, v in combo_pairs:
        deg[u] += 1
        deg[v] += 1
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    sizes: dict[int, int] = {}
    iso = 0
    for v in range(n):
        if deg[v] == 0:
            iso += 1
        else:
            r = find(v)
            sizes[r] = sizes.get(r, 0) + 1
    return iso, list(sizes.values())


def _tree_bound(n: int, combo_pairs, q: int) -> int:
    """Upper bound q^iso * prod q (q-1)^(t-1) over components; a connected
    t-vertex graph has at most q (q-1)^(t-1) colorings."""
    iso, comp_sizes = _component_sizes(n, combo_pairs)
    bound = q**iso
    for t in comp_sizes:
        bound *= q * (q - 1) ** (t - 1)
    return bound


def _scan_range(
    n: int,
    m: int,
    objective: Objective,
    param: int,
    start: int | None = None,
    stop: int | None = None,
):
    """Scan a contiguous slice of the labeled combination space (the whole
    space when start/stop are None).  Returns (best, witness_masks, examined)."""
    pairs = _slots(n)
    total_slots = len(pairs)
    maximize = objective != "min-colorings"
    best = None
    witnesses: list[int] = []
    examined = 0

    if start is None:
        combo_iter = combinations(range(total_slots), m)
    else:
        combo_iter = _combo_slice(total_slots, m, start, stop)

    for combo in combo_iter:
        examined += 1
        combo_pairs = [pairs[i] for i in combo]
        if objective == "max-colorings" and best is not None:
            if _tree_bound(n, combo_pairs, param) < best:
                continue
        adj = [0] * n
        for u, v in combo_pairs:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if objective == "max-cliques":
            value = _cliques_from_adj(adj, param)
        else:
            value = _colorings_from_combo(adj, param)
        mask = 0
        for i in combo:
            mask |= 1 << i
        if best is None or (value > best if maximize else value < best):
            best = value
            witnesses = [mask]
        elif value == best:
            witnesses.append(mask)
    return best, witnesses, examined


def _combo_slice(n_slots: int, k: int, start: int, stop: int):
    combo = _unrank_combination(start, n_slots, k)
    for _ in range(stop - start):
        yield tuple(combo)
        combo = _next_combination(combo, n_slots)
        if combo is None:
            break


def _unrank_combination(rank: int, n_slots: int, k: int) -> list[int]:
    """Lexicographic unranking of a k-subset of range(n_slots)."""
    combo = []
    x = 0
    for i in range(k):
        while True:
            rest = math.comb(n_slots - x - 1, k - i - 1)
            if rank < rest:
                combo.append(x)
                x += 1
                break
            rank -= rest
            x += 1
    return combo


def _next_combination(combo: list[int], n_slots: int) -> list[int] | None:
    k = len(combo)
    combo = list(combo)
    for i in range(k - 1, -1, -1):
        if combo[i] != n_slots - k + i:
            combo[i] += 1
            for j in range(i + 1, k):
                combo[j] = combo[j - 1] + 1
            return combo
    return None


def _scan_worker(args):
    return _scan_range(*args)


def _search(
    n: int,
    m: int,
    objective: Objective,
    param: int,
    dedup: bool,
    threads: int,
) -> SearchReport:
    labeled_total = _check_instance(n, m)
    maximize = objective != "min-colorings"

    if dedup:
        best = None
        witness_masks: list[int] = []
        examined = 0
        for g in enumerate_graphs(n, m, dedup=True):
            examined += 1
            if objective == "max-cliques":
                value = count_cliques(g, param)
            else:
                value = count_colorings(g, param)
            mask = _graph_mask(g)
            if best is None or (value > best if maximize else value < best):
                best, witness_masks = value, [mask]
            elif value == best:
                witness_masks.append(mask)
    elif threads > 1 and labeled_total > 4 * threads:
        chunk = (labeled_total + threads - 1) // threads
        ranges = [
            (n, m, objective, param, lo, min(lo + chunk, labeled_total))
            for lo in range(0, labeled_total, chunk)
        ]
        partials = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(_scan_worker, ranges))
        best = None
        witness_masks = []
        examined = 0
        for value, masks, count in partials:
            examined += count
            if value is None:
                continue
            if best is None or (value > best if maximize else value < best):
                best, witness_masks = value, list(masks)
            elif value == best:
                witness_masks.extend(masks)
    else:
        best, witness_masks, examined = _scan_range(n, m, objective, param)

    pairs = _slots(n)
    canon = sorted({canonical_mask(n, mask) for mask in witness_masks})
    witnesses = tuple(
        Graph(n, frozenset(pairs[i] for i in range(len(pairs)) if (mask >> i) & 1))
        for mask in canon
    )
    q = param if objective != "max-cliques" else None
    t = param if objective == "max-cliques" else None
    tags = tuple(tuple(classify_extremal(g, q)) for g in witnesses)
    return SearchReport(
        n=n,
        m=m,
        objective=objective,
        extremal_value=best if best is not None else 0,
        witnesses=witnesses,
        tags=tags,
        graphs_examined=examined,
        dedup=dedup,
        q=q,
        t=t,
    )


def _graph_mask(g: Graph) -> int:
    pairs = _slots(g.n)
    index = {p: i for i, p in enumerate(pairs)}
    mask = 0
    for e in g.edges:
        mask |= 1 << index[e]
    return mask


def search_max_colorings(
    n: int, m: int, q: int, *, dedup: bool = False, threads: int = 1
) -> SearchReport:
    """Exact maximum of the q-coloring count over all n-vertex m-edge
    graphs, with every witness attaining it (up to isomorphism)."""
    if q < 1:
        raise ValueError("need q >= 1")
    return _search(n, m, "max-colorings", q, dedup, threads)


def search_min_colorings(
    n: int, m: int, q: int, *, dedup: bool = False, threads: int = 1
) -> SearchReport:
    """Exact minimum of the q-coloring count over all n-vertex m-edge
    graphs."""
    if q < 1:
        raise ValueError("need q >= 1")
    return _search(n, m, "min-colorings", q, dedup, threads)


def search_max_cliques(
    n: int, m: int, t: int, *, dedup: bool = False, threads: int = 1
) -> SearchReport:
    """Exact maximum of the t-clique count over all n-vertex m-edge
    graphs."""
    if t < 1:
        raise ValueError("need t >= 1")
    return _search(n, m, "max-cliques", t, dedup, threads)


# ---------------------------------------------------------------------------
# classification


def _bipartition(core: Graph) -> tuple[list[int], list[int]] | None:
    """2-coloring of a connected graph, or None if not bipartite or not
    connected."""
    if core.n == 0:
        return None
    adj = core.adjacency_masks()
    color = [-1] * core.n
    color[0] = 0
    stack = [0]
    seen = 1
    while stack:
        v = stack.pop()
        nb = adj[v]
        while nb:
            u = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            if color[u] == -1:
                color[u] = 1 - color[v]
                seen += 1
                stack.append(u)
            elif color[u] == color[v]:
                return None
    if seen != core.n:
        return None
    side0 = [v for v in range(core.n) if color[v] == 0]
    side1 = [v for v in range(core.n) if color[v] == 1]
    return side0, side1


def _complete_multipartite_parts(core: Graph) -> list[int] | None:
    """Part sizes if the graph is complete multipartite, else None.
    Vertices share a part iff they are non-adjacent with identical
    neighborhoods."""
    if core.n == 0:
        return None
    adj = core.adjacency_masks()
    # in a complete multipartite graph the neighborhood of a part is the
    # complement of that part's vertex set
    full = (1 << core.n) - 1
    part_masks: dict[int, int] = {}
    for v in range(core.n):
        part_masks.setdefault(adj[v], 0)
        part_masks[adj[v]] |= 1 << v
    sizes = []
    for nbhd, members in part_masks.items():
        if nbhd != full ^ members:
            return None
        sizes.append(bin(members).count("1"))
    return sorted(sizes, reverse=True)


def _is_linial(g: Graph) -> bool:
    m = g.m
    if m == 0:
        return True
    k = 1
    while (k + 1) * k // 2 <= m:
        k += 1
    l = m - k * (k - 1) // 2
    core = g.without_isolated()
    expected_core = k if l == 0 else k + 1
    if core.n != expected_core:
        return False
    if l == 0:
        return core.m == k * (k - 1) // 2
    deg = core.degrees()
    for x in range(core.n):
        if deg[x] != l:
            continue
        rest = [v for v in range(core.n) if v != x]
        if all(core.has_edge(u, v) for i, u in enumerate(rest) for v in rest[i + 1 :]):
            return True
    return False


def classify_extremal(g: Graph, q: int | None = None) -> list[str]:
    """Structural tags after stripping isolated vertices: which predicted
    extremal families the graph belongs to."""
    tags: list[str] = []
    core = g.without_isolated()

    bip = _bipartition(core) if core.n else None
    if bip is not None:
        a_side, b_side = sorted(bip, key=len)
        a, b = len(a_side), len(b_side)
        host = {(min(u, v), max(u, v)) for u in a_side for v in b_side}
        missing = sorted(host - core.edges)
        if len(missing) < a:
            star_ok = len(missing) == 0
            center = None
            if missing:
                common = set(missing[0])
                for e in missing[1:]:
                    common &= set(e)
                if common:
                    star_ok = True
                    center = max(
                        common,
                        key=lambda v: len(b_side) if v in set(b_side) else len(a_side),
                    )
            if star_ok:
                tags.append("semi-complete+isolated")
                if center is not None:
                    center_size = b if center in set(b_side) else a
                    other = a if center in set(b_side) else b
                    if center_size >= other:
                        tags.append("correctly-oriented")

    # complete bipartite plus a pendant edge
    deg = core.degrees()
    for v in range(core.n):
        if deg[v] != 1:
            continue
        rest = [u for u in range(core.n) if u != v]
        remap = {u: i for i, u in enumerate(rest)}
        sub = Graph(
            len(rest),
            frozenset(
                (remap[x], remap[y]) for x, y in core.edges if v not in (x, y)
            ),
        )
        sub_bip = _bipartition(sub)
        if sub_bip is not None and sub.m == len(sub_bip[0]) * len(sub_bip[1]):
            tags.append("complete-bipartite+pendant")
            break

    parts = _complete_multipartite_parts(core)
    if parts is not None and len(parts) >= 2 and max(parts) - min(parts) <= 1:
        tags.append(f"turan({len(parts)})")
    elif core.n == 0 and g.n > 0:
        tags.append("turan(1)")

    if _is_linial(g):
        tags.append("linial")

    return tags if tags else ["none"]


# ---------------------------------------------------------------------------
# the pendant-edge tie


@dataclass(frozen=True)
class PendantCaseReport:
    r: int
    n: int
    m: int
    pendant_count: int
    semicomplete_count: int
    counts_equal: bool
    search: SearchReport | None = None
    ties_exhaustive_max: bool | None = None

    def to_dict(self) -> dict:
        out = {
            "r": self.r,
            "n": self.n,
            "m": self.m,
            "pendant_count": self.pendant_count,
            "semicomplete_count": self.semicomplete_count,
            "counts_equal": self.counts_equal,
        }
        if self.search is not None:
            out["exhaustive_max"] = self.search.extremal_value
            out["ties_exhaustive_max"] = self.ties_exhaustive_max
        return out


def pendant_case_report(r: int, *, threads: int = 1) -> PendantCaseReport:
    """The (n, m) = (3r+1, 2r^2+1) tie: K_{r,2r} plus a pendant edge versus
    the semi-complete subgraph of K_{r,2r+1} with r-1 missing edges.

    Every 3-coloring of K_{r,2r} extends in exactly 2 ways to the pendant
    vertex, so the two closed-form counts agree; for r <= 2 the exhaustive
    maximum is also computed and compared (informational: the tie is only
    claimed optimal for large r).
    """
    if r < 1:
        raise ValueError("need r >= 1")
    n, m = 3 * r + 1, 2 * r * r + 1
    pendant = 2 * (3 * 2**r + 3 * 2 ** (2 * r) - 6)
    semi = bipartite_star_count_q3(r, 2 * r + 1, r - 1)
    search = None
    ties = None
    if r <= 2:
        search = search_max_colorings(n, m, 3, threads=threads)
        ties = search.extremal_value == pendant
    return PendantCaseReport(
        r=r,
        n=n,
        m=m,
        pendant_count=pendant,
        semicomplete_count=semi,
        counts_equal=pendant == semi,
        search=search,
        ties_exhaustive_max=ties,
    )
