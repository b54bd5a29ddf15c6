"""Simple undirected graphs and the named extremal constructions.

Everything here is a pure function of its inputs.  Graphs are immutable
once built and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator, Literal

__all__ = [
    "Graph",
    "BipartitionSpec",
    "GraphFormatError",
    "VERTEX_CAP",
    "turan",
    "turan_edge_count",
    "semi_complete",
    "g_alpha",
    "g_alpha_prime",
    "sparse_optimal",
    "linial_graph",
    "pendant_graph",
    "encode",
    "decode",
    "canonical_edges",
    "are_isomorphic",
]

# Cap for search-oriented code paths: adjacency rows of a 64-vertex graph
# fit a single machine word.
VERTEX_CAP = 64


class GraphFormatError(ValueError):
    """Malformed graph serialization; ``offset`` is the failing byte."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Isolated vertices count toward ``n``; edges are unordered pairs
    stored as ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        edges = frozenset(self._normalize(self.edges))
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")

    @staticmethod
    def _normalize(pairs: Iterable[tuple[int, int]]) -> Iterator[tuple[int, int]]:
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            yield (u, v) if u < v else (v, u)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency_masks(self) -> list[int]:
        """Neighbor bitmask per vertex (requires n <= VERTEX_CAP for speed,
        but works for any n)."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def isolated_vertices(self) -> list[int]:
        deg = self.degrees()
        return [v for v in range(self.n) if deg[v] == 0]

    def without_isolated(self) -> "Graph":
        """Copy with isolated vertices removed, remaining vertices relabeled
        in order."""
        deg = self.degrees()
        keep = [v for v in range(self.n) if deg[v] > 0]
        remap = {v: i for i, v in enumerate(keep)}
        return Graph(len(keep), frozenset((remap[u], remap[v]) for u, v in self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m})"


CenterSide = Literal["smaller", "larger"]


@dataclass(frozen=True)
class BipartitionSpec:
    """Parameters of a complete bipartite graph minus a star.

    ``a <= b`` are the side sizes, ``r < a`` is the number of missing
    edges, and ``center_side`` says which side hosts the star's center.
    The center side is explicit because for ``a == b`` neither side is
    'the larger' one.
    """

    a: int
    b: int
    r: int = 0
    center_side: CenterSide = "larger"

    def __post_init__(self):
        if not (1 <= self.a <= self.b):
            raise ValueError(f"need 1 <= a <= b, got a={self.a}, b={self.b}")
        if not (0 <= self.r < self.a):
            raise ValueError(
                f"number of missing edges must satisfy 0 <= r < a, got r={self.r}, a={self.a}"
            )
        if self.center_side not in ("smaller", "larger"):
            raise ValueError(f"unknown center_side {self.center_side!r}")


def _complete_multipartite(part_sizes: list[int]) -> Graph:
    n = sum(part_sizes)
    bounds = []
    start = 0
    for s in part_sizes:
        bounds.append((start, start + s))
        start += s
    edges = set()
    for i in range(len(bounds)):
        for j in range(i + 1, len(bounds)):
            for u in range(*bounds[i]):
                for v in range(*bounds[j]):
                    edges.add((u, v))
    return Graph(n, frozenset(edges))


def turan(n: int, r: int) -> Graph:
    """Turan graph: complete r-partite graph on n vertices with part sizes
    as equal as possible (differing by at most 1)."""
    if not (1 <= r <= n):
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    small, extra = divmod(n, r)
    sizes = [small + 1] * extra + [small] * (r - extra)
    return _complete_multipartite(sizes)


def turan_edge_count(n: int, r: int) -> int:
    """Edge count of the Turan graph with r parts; n < r is allowed here
    (empty parts), giving the complete graph."""
    if r <= 0:
        raise ValueError("need r >= 1")
    if n <= 0:
        return 0
    small, extra = divmod(n, r)
    sizes = [small + 1] * extra + [small] * (r - extra)
    total = 0
    for i in range(r):
        for j in range(i + 1, r):
            total += sizes[i] * sizes[j]
    return total


def semi_complete(spec: BipartitionSpec) -> Graph:
    """K_{a,b} minus an r-edge star.

    Side A is vertices ``0..a-1``, side B is ``a..a+b-1``.  The star's
    center is the first vertex of ``center_side``; its missing edges go to
    the first r vertices of the opposite side.
    """
    a, b, r = spec.a, spec.b, spec.r
    missing: set[tuple[int, int]] = set()
    if r > 0:
        if spec.center_side == "larger":
            center = a  # first B-side vertex
            missing = {(u, center) for u in range(r)}
        else:
            center = 0  # first A-side vertex
            missing = {(center, a + j) for j in range(r)}
    edges = {(u, a + j) for u in range(a) for j in range(b)} - missing
    return Graph(a + b, frozenset(edges))


def _subset_size(mask: int) -> int:
    return bin(mask).count("1")


def _cluster_sizes(n: int, alpha, v_tol: float = 1e-9) -> dict[int, int]:
    """Round n*alpha_A to integer cluster sizes.

    Floors everything, then hands the remaining vertices one each to the
    clusters with the largest fractional parts (ties: smallest bitmask).
    Each |V_A| then differs from n*alpha_A by less than 1.
    """
    values = alpha.as_dict()
    for mask, val in values.items():
        if val < -1e-12:
            raise ValueError(f"negative entry alpha[{alpha.subset_name(mask)}] = {val}")
    total = sum(values.values())
    if abs(total - 1.0) > v_tol:
        raise ValueError(f"need v(alpha) = 1 within tolerance, got {total}")
    sizes = {}
    fracs = []
    assigned = 0
    for mask in sorted(values):
        target = n * max(values[mask], 0.0)
        lo = int(math.floor(target))
        sizes[mask] = lo
        assigned += lo
        fracs.append((-(target - lo), mask))
    leftover = n - assigned
    fracs.sort()
    i = 0
    while leftover > 0 and i < len(fracs):
        sizes[fracs[i][1]] += 1
        leftover -= 1
        i += 1
    # float dust can leave a vertex or two unplaced; give them to the
    # smallest bitmasks deterministically
    i = 0
    masks = sorted(sizes)
    while leftover > 0:
        sizes[masks[i % len(masks)]] += 1
        leftover -= 1
        i += 1
    return sizes


def g_alpha(n: int, alpha, q: int) -> Graph:
    """Cluster construction: one cluster per nonempty color subset, sized by
    rounding n*alpha_A, with complete bipartite joins exactly between
    clusters whose index sets are disjoint."""
    if q != alpha.q:
        raise ValueError(f"alpha is over {alpha.q} colors, expected {q}")
    sizes = _cluster_sizes(n, alpha)
    ranges = {}
    start = 0
    for mask in sorted(sizes):
        ranges[mask] = range(start, start + sizes[mask])
        start += sizes[mask]
    edges = set()
    masks = sorted(m for m in sizes if sizes[m] > 0)
    for i, ma in enumerate(masks):
        for mb in masks[i + 1 :]:
            if ma & mb == 0:
                edges.update((u, v) for u in ranges[ma] for v in ranges[mb])
    return Graph(n, frozenset(edges))


def g_alpha_prime(n: int, m: int, alpha, q: int) -> Graph:
    """Edge-deficit repair of :func:`g_alpha`.

    Returns g_alpha(n, alpha, q) if it already has >= m edges.  Otherwise
    adds the k missing edges as a k-edge bipartite graph inside the largest
    non-singleton cluster, provided that cluster has >= 2*ceil(sqrt(k))
    vertices; else falls back to turan(n, q).
    """
    from .optimize import evaluate  # local import to avoid a cycle

    vals = evaluate(alpha)
    gamma = m / (n * n)
    # rounding can cost up to 2^q * n edges, so accept densities short by
    # that much; that is exactly the deficit the construction repairs
    if vals.e < gamma - (2**q) / n - 1e-9:
        raise ValueError(
            f"alpha infeasible for m={m}: e(alpha)={vals.e:.6g} < m/n^2={gamma:.6g}"
        )
    base = g_alpha(n, alpha, q)
    if base.m >= m:
        return base
    k = m - base.m
    sizes = _cluster_sizes(n, alpha)
    candidates = [
        (sz, mask) for mask, sz in sizes.items() if _subset_size(mask) >= 2 and sz > 0
    ]
    side = math.isqrt(k)
    if side * side < k:
        side += 1
    if candidates:
        best_size, best_mask = max(candidates, key=lambda t: (t[0], -t[1]))
        if best_size >= 2 * side:
            start = 0
            for mask in sorted(sizes):
                if mask == best_mask:
                    break
                start += sizes[mask]
            u1 = list(range(start, start + side))
            u2 = list(range(start + side, start + 2 * side))
            extra = []
            for i in range(side):
                for j in range(side):
                    if len(extra) == k:
                        break
                    extra.append((u1[i], u2[j]))
            return Graph(n, base.edges | frozenset(extra))
    return turan(n, q)


def sparse_optimal(n: int, m: int, q: int) -> Graph:
    """The near-optimal sparse construction: a complete bipartite graph
    K_{ceil(t1), ceil(t2)} with t1/t2 = log(q/(q-1))/log(q) and t1*t2 = m,
    plus isolated vertices up to n."""
    if q < 2:
        raise ValueError("need q >= 2")
    if m < 0:
        raise ValueError("need m >= 0")
    if m == 0:
        return Graph(n)
    ratio = math.log(q / (q - 1)) / math.log(q)
    t1 = math.sqrt(m * ratio)
    t2 = m / t1
    a = math.ceil(t1)
    b = math.ceil(t2)
    if a + b > n:
        raise ValueError(f"n={n} too small: the two sides need {a}+{b} vertices")
    edges = {(u, a + j) for u in range(a) for j in range(b)}
    return Graph(n, frozenset(edges))


def linial_graph(n: int, m: int) -> Graph:
    """The simultaneous minimizer: K_k plus one vertex adjacent to l clique
    vertices plus isolated vertices, where m = C(k,2) + l with k > l >= 0."""
    if m < 0:
        raise ValueError("need m >= 0")
    if m > n * (n - 1) // 2:
        raise ValueError(f"m={m} exceeds C({n},2)")
    if m == 0:
        return Graph(n)
    k = 1
    while (k + 1) * k // 2 <= m:
        k += 1
    l = m - k * (k - 1) // 2
    needed = k if l == 0 else k + 1
    if needed > n:  # pragma: no cover - implied by m <= C(n,2)
        raise ValueError(f"n={n} too small for K_{k} plus attachment vertex")
    edges = {(u, v) for u in range(k) for v in range(u + 1, k)}
    edges.update((u, k) for u in range(l))
    return Graph(n, frozenset(edges))


def pendant_graph(a: int, b: int) -> Graph:
    """K_{a,b} plus a pendant edge, attached to the first a-side vertex.
    All attachment points give isomorphic graphs."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    edges = {(u, a + j) for u in range(a) for j in range(b)}
    edges.add((0, a + b))
    return Graph(a + b + 1, frozenset(edges))


# ---------------------------------------------------------------------------
# serialization


def encode(g: Graph, format: str = "edge-list") -> bytes:
    if format in ("edge-list", "el"):
        lines = [f"{g.n} {g.m}\n"]
        lines.extend(f"{u} {v}\n" for u, v in g.sorted_edges())
        return "".join(lines).encode("ascii")
    if format in ("graph6", "g6"):
        return _encode_graph6(g)
    raise ValueError(f"unknown format {format!r}")


def decode(data: bytes, format: str = "edge-list") -> Graph:
    if format in ("edge-list", "el"):
        return _decode_edge_list(data)
    if format in ("graph6", "g6"):
        return _decode_graph6(data)
    raise ValueError(f"unknown format {format!r}")


def _decode_edge_list(data: bytes) -> Graph:
    text = data.decode("ascii", errors="replace")
    offset = 0
    lines = text.splitlines(keepends=True)
    if not lines:
        raise GraphFormatError("empty input", 0)
    header = lines[0].split()
    if len(header) != 2:
        raise GraphFormatError("header must be 'n m'", 0)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError("header must contain two integers", 0) from None
    offset = len(lines[0].encode("ascii", errors="replace"))
    edges = []
    for idx, line in enumerate(lines[1:], start=1):
        stripped = line.strip()
        if not stripped:
            offset += len(line.encode("ascii", errors="replace"))
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise GraphFormatError(f"edge line {idx} must be 'u v'", offset)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"edge line {idx} has non-integer vertex", offset) from None
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u},{v}) invalid for n={n}", offset)
        edges.append((min(u, v), max(u, v)))
        offset += len(line.encode("ascii", errors="replace"))
    if len(edges) != m or len(set(edges)) != len(edges):
        raise GraphFormatError(
            f"declared m={m} but found {len(set(edges))} distinct edges", offset
        )
    return Graph(n, frozenset(edges))


def _encode_graph6(g: Graph) -> bytes:
    n = g.n
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    elif n <= 258047:
        out.append(126)
        out.append(((n >> 12) & 63) + 63)
        out.append(((n >> 6) & 63) + 63)
        out.append((n & 63) + 63)
    else:
        raise ValueError("graph6 encoding supported for n <= 258047")
    bits = []
    adj = set(g.edges)
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in adj else 0)
    while len(bits) % 6:
        bits.append(0)
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out)


def _decode_graph6(data: bytes) -> Graph:
    data = data.strip()
    if not data:
        raise GraphFormatError("empty graph6 input", 0)
    pos = 0
    if data[0] == 126:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size field", len(data))
        n = 0
        for k in range(1, 4):
            c = data[k] - 63
            if not (0 <= c < 64):
                raise GraphFormatError("invalid graph6 size byte", k)
            n = (n << 6) | c
        pos = 4
    else:
        n = data[0] - 63
        if not (0 <= n <= 62):
            raise GraphFormatError("invalid graph6 size byte", 0)
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise GraphFormatError(
            f"expected {nbytes} adjacency bytes for n={n}, got {len(data) - pos}", pos
        )
    bits = []
    for k in range(pos, len(data)):
        c = data[k] - 63
        if not (0 <= c < 64):
            raise GraphFormatError("invalid graph6 data byte", k)
        for shift in range(5, -1, -1):
            bits.append((c >> shift) & 1)
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits", len(data) - 1)
    edges = set()
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.add((i, j))
            idx += 1
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# canonical labeling (exact, n <= 8)

_PERM_CACHE: dict[int, list[list[int]]] = {}


def _edge_index(u: int, v: int, n: int) -> int:
    if u > v:
        u, v = v, u
    # index into the list of pairs in lexicographic order
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def _perm_edge_maps(n: int) -> list[list[int]]:
    """For each permutation of range(n), the induced map on edge slots."""
    maps = _PERM_CACHE.get(n)
    if maps is None:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        maps = []
        for p in permutations(range(n)):
            maps.append([_edge_index(p[u], p[v], n) for u, v in pairs])
        _PERM_CACHE[n] = maps
    return maps


def edge_mask(g: Graph) -> int:
    mask = 0
    for u, v in g.edges:
        mask |= 1 << _edge_index(u, v, g.n)
    return mask


def canonical_mask(n: int, mask: int) -> int:
    """Minimum edge-slot bitmask over all n! vertex permutations."""
    if n > 8:
        raise ValueError(f"canonical form limited to n <= 8, got n={n}")
    if mask == 0:
        return 0
    bits = [i for i in range(n * (n - 1) // 2) if (mask >> i) & 1]
    best = None
    for emap in _perm_edge_maps(n):
        cand = 0
        for i in bits:
            cand |= 1 << emap[i]
        if best is None or cand < best:
            best = cand
    return best


def canonical_edges(g: Graph) -> frozenset[tuple[int, int]]:
    """Canonical edge set: the minimum adjacency encoding over all vertex
    permutations.  Isomorphism-invariant; n <= 8."""
    mask = canonical_mask(g.n, edge_mask(g))
    pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    return frozenset(pairs[i] for i in range(len(pairs)) if (mask >> i) & 1)


def canonical_graph(g: Graph) -> Graph:
    return Graph(g.n, canonical_edges(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_edges(g) == canonical_edges(h)
