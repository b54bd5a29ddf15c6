"""Exact counting of proper colorings, chromatic polynomials, acyclic
orientations, cliques, and the closed-form counting formulas.

All counts are exact Python integers; no floating point enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, canonical_mask

__all__ = [
    "ChromaticPolynomial",
    "count_colorings",
    "coloring_partition_counts",
    "chromatic_polynomial",
    "acyclic_orientations",
    "turan_coloring_count",
    "bipartite_star_count_q3",
    "footprint_count_q3",
    "count_cliques",
    "CHROMATIC_CAP",
]

# deletion-contraction is exponential; keep it to desk scale
CHROMATIC_CAP = 12


@dataclass(frozen=True)
class ChromaticPolynomial:
    """P_G as integer coefficients, index = power of q."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * q + c
        return acc

    def validate(self) -> None:
        """Whitney sign alternation, monic leading term, P(0) = 0 for n >= 1."""
        n = self.degree
        if n >= 1 and self.coefficients[-1] != 1:
            raise ValueError("leading coefficient must be 1")
        if n >= 1 and self.coefficients[0] != 0:
            raise ValueError("P(0) must vanish")
        for k, c in enumerate(self.coefficients):
            if c != 0 and (c > 0) != ((n - k) % 2 == 0):
                raise ValueError(f"coefficient of q^{k} breaks sign alternation")


def _falling_factorial(q: int, j: int) -> int:
    acc = 1
    for i in range(j):
        acc *= q - i
    return acc


def _components(n: int, adj: list[int]) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            nb = adj[v]
            while nb:
                u = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _partition_counts_masks(adj: list[int], max_classes: int) -> list[int]:
    """Number of partitions of the vertices into exactly j independent
    classes, for j = 0..max_classes.

    Backtracking over vertices (callers pass them in descending-degree
    order); a vertex either joins a non-conflicting existing class or opens
    a new one, so each unordered partition is generated once.
    """
    n = len(adj)
    counts = [0] * (max_classes + 1)
    if n == 0:
        counts[0] = 1
        return counts
    forbid: list[int] = []

    def rec(v: int) -> None:
        if v == n:
            counts[len(forbid)] += 1
            return
        bit = 1 << v
        av = adj[v]
        for i in range(len(forbid)):
            if not forbid[i] & bit:
                saved = forbid[i]
                forbid[i] = saved | av
                rec(v + 1)
                forbid[i] = saved
        if len(forbid) < max_classes:
            forbid.append(av)
            rec(v + 1)
            forbid.pop()

    rec(0)
    return counts


def _component_partition_counts(g: Graph, max_classes: int) -> list[list[int]]:
    """Partition counts for each non-singleton connected component, with
    vertices visited in descending-degree order."""
    adj_full = g.adjacency_masks()
    deg = g.degrees()
    out = []
    for comp in _components(g.n, adj_full):
        if len(comp) == 1:
            continue
        order = sorted(comp, key=lambda v: (-deg[v], v))
        index = {v: i for i, v in enumerate(order)}
        adj = [0] * len(order)
        for v in order:
            nb = adj_full[v]
            while nb:
                u = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                adj[index[v]] |= 1 << index[u]
        out.append(_partition_counts_masks(adj, min(max_classes, len(order))))
    return out


def coloring_partition_counts(g: Graph, max_classes: int) -> list[int]:
    """Partitions of V(G) into exactly j independent classes (j <= max),
    convolved over connected components."""
    acc = [1]
    pieces = [[0, 1]] * len(g.isolated_vertices())
    pieces.extend(_component_partition_counts(g, max_classes))
    for piece in pieces:
        nxt = [0] * (min(max_classes, (len(acc) - 1) + (len(piece) - 1)) + 1)
        for i, x in enumerate(acc):
            if x == 0:
                continue
            for j, y in enumerate(piece):
                if y and i + j < len(nxt):
                    nxt[i + j] += x * y
        acc = nxt
    return acc


def count_colorings(g: Graph, q: int, method: str = "backtracking") -> int:
    """Exact number of proper q-colorings.

    The default backend is backtracking with pruning (isolated vertices are
    peeled off as a q^k factor, components multiply, and color classes are
    counted up to color symmetry).  ``method="polynomial"`` evaluates the
    chromatic polynomial instead.
    """
    if q < 0:
        raise ValueError("need q >= 0")
    if method == "polynomial":
        return chromatic_polynomial(g)(q)
    if method != "backtracking":
        raise ValueError(f"unknown method {method!r}")
    if q == 0:
        return 1 if g.n == 0 else 0
    iso = len(g.isolated_vertices())
    total = q**iso
    for counts in _component_partition_counts(g, q):
        comp_total = sum(
            cnt * _falling_factorial(q, j) for j, cnt in enumerate(counts) if cnt
        )
        if comp_total == 0:
            return 0
        total *= comp_total
    return total


# ---------------------------------------------------------------------------
# chromatic polynomial via deletion-contraction


def _poly_mul(p: list[int], r: list[int]) -> list[int]:
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(r):
                if b:
                    out[i + j] += a * b
    return out


def _poly_sub(p: list[int], r: list[int]) -> list[int]:
    out = list(p) + [0] * max(0, len(r) - len(p))
    for j, b in enumerate(r):
        out[j] -= b
    return out


def _poly_pow_linear(c0: int, c1: int, k: int) -> list[int]:
    """(c0 + c1*q)^k."""
    out = [1]
    base = [c0, c1]
    for _ in range(k):
        out = _poly_mul(out, base)
    return out


_chrom_memo: dict[tuple[int, int], tuple[int, ...]] = {}


def _chrom_edges(n: int, edges: frozenset[tuple[int, int]]) -> list[int]:
    """Chromatic polynomial of a connected graph (coefficient list)."""
    m = len(edges)
    if m == 0:
        return [0] * n + [1]
    if m == n - 1:
        # tree: q (q-1)^(n-1)
        return _poly_mul([0, 1], _poly_pow_linear(-1, 1, n - 1))
    if m == n * (n - 1) // 2:
        # complete: q (q-1) ... (q-n+1)
        poly = [1]
        for i in range(n):
            poly = _poly_mul(poly, [-i, 1])
        return poly
    degs = [0] * n
    for u, v in edges:
        degs[u] += 1
        degs[v] += 1
    if m == n and all(d == 2 for d in degs):
        # cycle: (q-1)^n + (-1)^n (q-1)
        poly = _poly_pow_linear(-1, 1, n)
        sign = 1 if n % 2 == 0 else -1
        poly[0] += -1 * sign
        poly[1] += 1 * sign
        return poly

    key = None
    if n <= 8:
        mask = 0
        for u, v in edges:
            mask |= 1 << _slot(u, v, n)
        key = (n, canonical_mask(n, mask))
        hit = _chrom_memo.get(key)
        if hit is not None:
            return list(hit)

    # contract a max-degree edge to converge on dense base cases quickly
    u, v = max(edges, key=lambda e: (degs[e[0]] + degs[e[1]], e))
    deleted = edges - {(u, v)}
    p_del = _chrom_component_split(n, deleted)
    contracted = set()
    for x, y in deleted:
        x2 = u if x == v else x
        y2 = u if y == v else y
        if x2 == y2:
            continue
        x2, y2 = (x2, y2) if x2 < y2 else (y2, x2)
        contracted.add((x2, y2))
    remap = {w: (w if w < v else w - 1) for w in range(n) if w != v}
    cont_edges = frozenset((remap[x], remap[y]) for x, y in contracted)
    p_con = _chrom_component_split(n - 1, cont_edges)
    poly = _poly_sub(p_del, p_con)
    if key is not None:
        _chrom_memo[key] = tuple(poly)
    return poly


def _slot(u: int, v: int, n: int) -> int:
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def _chrom_component_split(n: int, edges: frozenset[tuple[int, int]]) -> list[int]:
    g = Graph(n, edges)
    adj = g.adjacency_masks()
    poly = [1]
    iso = 0
    for comp in _components(n, adj):
        if len(comp) == 1:
            iso += 1
            continue
        index = {v: i for i, v in enumerate(comp)}
        sub = frozenset(
            (index[u], index[v]) for u, v in edges if u in index and v in index
        )
        poly = _poly_mul(poly, _chrom_edges(len(comp), sub))
    if iso:
        poly = [0] * iso + poly
    return poly


def chromatic_polynomial(g: Graph, cap: int = CHROMATIC_CAP) -> ChromaticPolynomial:
    """Exact chromatic polynomial by deletion-contraction.

    Memoized on a canonical form for subproblems with <= 8 vertices.
    Rejects graphs above ``cap`` vertices.
    """
    if g.n > cap:
        raise ValueError(f"chromatic_polynomial limited to n <= {cap}, got n={g.n}")
    return ChromaticPolynomial(tuple(_chrom_component_split(g.n, g.edges)))


def acyclic_orientations(g: Graph, cap: int = CHROMATIC_CAP) -> int:
    """|P_G(-1)|, the number of acyclic orientations."""
    return abs(chromatic_polynomial(g, cap)(-1))


# ---------------------------------------------------------------------------
# closed-form counting formulas


def turan_coloring_count(n: int, q: int) -> int:
    """q-colorings of the Turan graph with q-1 parts:
    q! * [(q-1+r) 2^(s-1) - q + 2] where n = s(q-1) + r, 0 <= r < q-1."""
    if q < 3:
        raise ValueError("need q >= 3")
    if n < q - 1:
        raise ValueError(f"need n >= q-1 so every part is nonempty, got n={n}, q={q}")
    s, r = divmod(n, q - 1)
    fact = 1
    for i in range(2, q + 1):
        fact *= i
    return fact * ((q - 1 + r) * 2 ** (s - 1) - q + 2)


def bipartite_star_count_q3(a: int, b: int, r: int) -> int:
    """3-colorings of K_{a,b} minus an r-edge star:
    3*2^a + 3*2^b - 6 + 6*(2^r - 1)."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    if not (0 <= r < max(a, b)):
        raise ValueError(f"need 0 <= r < max(a,b), got r={r}")
    return 3 * 2**a + 3 * 2**b - 6 + 6 * (2**r - 1)


def footprint_count_q3(g: Graph, partition: tuple[list[int], list[int]]) -> int:
    """3-colorings of a bipartite-host subgraph by footprint counting.

    Every coloring that repeats a color across the bipartition forces a set
    of host edges to be absent (its footprint); for 3 colors each nonempty
    complete bipartite footprint contributes exactly 6 colorings, giving
    3*2^a + 3*2^b - 6 + 6s with s computed by explicit subset enumeration.
    """
    side_a, side_b = list(partition[0]), list(partition[1])
    vs = sorted(side_a + side_b)
    if vs != list(range(g.n)) or set(side_a) & set(side_b):
        raise ValueError("partition must split the vertices into two disjoint sides")
    in_a = set(side_a)
    for u, v in g.edges:
        if (u in in_a) == (v in in_a):
            raise ValueError(
                f"edge ({u},{v}) lies within one side: not a subgraph of the "
                "complete bipartite host"
            )
    a, b = len(side_a), len(side_b)
    host = {(min(u, v), max(u, v)) for u in side_a for v in side_b}
    missing = sorted(host - g.edges)
    if len(missing) >= max(a, b):
        raise ValueError(
            f"{len(missing)} missing edges, need fewer than max(a,b)={max(a, b)}"
        )
    full_b = {v: True for v in side_a}
    for u, v in missing:
        x = u if u in in_a else v
        full_b[x] = False
    if not any(full_b.values()):
        raise ValueError("no A-side vertex is complete to B")
    full_a = {v: True for v in side_b}
    for u, v in missing:
        y = v if u in in_a else u
        full_a[y] = False
    if not any(full_a.values()):
        raise ValueError("no B-side vertex is complete to A")
    s = 0
    for pick in range(1, 1 << len(missing)):
        subset = [missing[i] for i in range(len(missing)) if (pick >> i) & 1]
        pa = {u if u in in_a else v for u, v in subset}
        pb = {v if u in in_a else u for u, v in subset}
        if len(subset) == len(pa) * len(pb):
            s += 1
    return 3 * 2**a + 3 * 2**b - 6 + 6 * s


def count_cliques(g: Graph, t: int) -> int:
    """Exact number of t-cliques."""
    if t < 1:
        raise ValueError("need t >= 1")
    if t == 1:
        return g.n
    if t == 2:
        return g.m
    adj = g.adjacency_masks()
    total = 0

    def rec(cands: int, depth: int) -> None:
        nonlocal total
        if depth == t:
            return
        c = cands
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            if depth + 1 == t:
                total += 1
            else:
                rec(cands & adj[v] & ~((1 << (v + 1)) - 1), depth + 1)

    # seed with each vertex, extending only to higher-numbered candidates
    for v in range(g.n):
        rec(adj[v] & ~((1 << (v + 1)) - 1), 1)
    return total
