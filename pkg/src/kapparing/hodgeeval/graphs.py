"""Stable trees (compact-type dual graphs) and the strata families used for pairings.

Families, by the moduli space they live in:

* ``S``  (g, n=1), p in P(g-1): elliptic chain E1* - ... - E_{l+1}, p_i - 1 tails on E_i.
* ``T``  (g, n=2), p in P(g): elliptic chain E1* - ... - E_l*, p_i - 1 tails on E_i.
* ``U``  (g, n=0), p in P*(g-1): genus-2 X - E2 - ... - E_{l+1}; p_1 - 2 tails on X.
* ``U_prime`` (g, n=0), p in P(g-2): E0 - E1 - ... - E_{l+1}, p_i - 1 tails on E_i.
* ``V``  (g=0, n), p in P(d, n-d-2): rational chain with p_1+2, p_i+1, ..., p_m+2 markings.
* ``W``  (g, n=1) and ``W_tilde`` (g, n=2): the comb/chain graphs built from the odd
  and even parts of p, with the genus deficit moved onto the marked vertex.

Every vertex of these graphs has lambda_g socle dimension equal to one part of p
(or 0), which is what makes the pairing matrices triangular.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..partitions import Partition, normalize, partitions
from .integrals import socle_dimension

__all__ = [
    "DualGraph",
    "Stratum",
    "FAMILIES",
    "build_stratum",
    "stratum_class",
    "trade_genus_for_markings",
    "family_index_set",
    "w_genus",
    "stable_trees",
]

FAMILIES = ("S", "T", "U", "U_prime", "V", "W", "W_tilde")


@dataclass(frozen=True)
class DualGraph:
    """A stable tree: vertices (genus, marking labels) and edges (i, j), i < j."""

    vertices: tuple[tuple[int, tuple[int, ...]], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        verts = tuple((int(g), tuple(sorted(m))) for g, m in self.vertices)
        edges = tuple(sorted((min(a, b), max(a, b)) for a, b in self.edges))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        k = len(verts)
        if k == 0:
            raise ValueError("a dual graph needs at least one vertex")
        if len(edges) != k - 1 or len(set(edges)) != len(edges):
            raise ValueError("dual graph of compact type must be a tree")
        parent = list(range(k))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in edges:
            if not (0 <= a < k and 0 <= b < k) or a == b:
                raise ValueError(f"bad edge {(a, b)}")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise ValueError("dual graph has a cycle")
            parent[ra] = rb
        labels = [x for _, m in verts for x in m]
        if len(set(labels)) != len(labels):
            raise ValueError("marking labels must be distinct")
        for v, (g, _) in enumerate(verts):
            if g < 0 or 2 * g - 2 + self.valence(v) <= 0:
                raise ValueError(f"vertex {v} (genus {g}, valence {self.valence(v)}) is unstable")

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def valence(self, v: int) -> int:
        """Edges plus markings at v."""
        return self.degree(v) + len(self.vertices[v][1])

    @property
    def genus(self) -> int:
        return sum(g for g, _ in self.vertices)

    @property
    def n(self) -> int:
        return sum(len(m) for _, m in self.vertices)

    @property
    def codim(self) -> int:
        return len(self.edges)

    def marking_vertex(self, label: int) -> int:
        for v, (_, m) in enumerate(self.vertices):
            if label in m:
                return v
        raise KeyError(f"no marking {label}")

    def socle_dims(self) -> list[int]:
        return [socle_dimension(g, self.valence(v)) for v, (g, _) in enumerate(self.vertices)]

    def to_json(self) -> dict:
        return {
            "vertices": [{"genus": g, "markings": list(m)} for g, m in self.vertices],
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class Stratum:
    """A stratum class times psi powers at markings: prod psi_i^k_i * [graph]."""

    graph: DualGraph
    psi: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return self.graph.codim + sum(k for _, k in self.psi)

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["psi"] = {str(i): k for i, k in self.psi}
        return out


class _Builder:
    """Accumulates vertices/edges; markings are placeholders numbered later."""

    def __init__(self):
        self.genus: list[int] = []
        self.marks: list[list[str]] = []
        self.edges: list[tuple[int, int]] = []

    def vertex(self, g: int, marks: Iterable[str] = ()) -> int:
        self.genus.append(g)
        self.marks.append(list(marks))
        return len(self.genus) - 1

    def join(self, a: int, b: int):
        self.edges.append((a, b))

    def tails(self, v: int, count: int, genus: int = 1):
        for _ in range(count):
            self.join(v, self.vertex(genus))

    def chain(self, genera: Sequence[int]) -> list[int]:
        vs = [self.vertex(g) for g in genera]
        for a, b in zip(vs, vs[1:]):
            self.join(a, b)
        return vs

    def build(self, first: Optional[Sequence[str]] = None) -> DualGraph:
        # named markings in `first` get labels 1, 2, ...; the rest follow in vertex order
        order = list(first or [])
        for ms in self.marks:
            for m in ms:
                if m not in order:
                    order.append(m)
        label = {m: i + 1 for i, m in enumerate(order)}
        verts = [(g, tuple(label[m] for m in ms)) for g, ms in zip(self.genus, self.marks)]
        return DualGraph(tuple(verts), tuple(self.edges))


def _check_partition(p: Partition, total: int, max_len: Optional[int], family: str):
    if sum(p) != total or (max_len is not None and len(p) > max_len):
        bound = "" if max_len is None else f" of length <= {max_len}"
        raise ValueError(f"family {family} needs a partition of {total}{bound}, got {list(p)}")


def _graph_S(p: Partition, g: int) -> DualGraph:
    _check_partition(p, g - 1, None, "S")
    b = _Builder()
    chain = b.chain([1] * (len(p) + 1))
    b.marks[chain[0]].append("x")
    for v, part in zip(chain, p):
        b.tails(v, part - 1)
    return b.build()


def _graph_T(p: Partition, g: int) -> DualGraph:
    _check_partition(p, g, None, "T")
    if not p:
        raise ValueError("family T needs g >= 1")
    b = _Builder()
    chain = b.chain([1] * len(p))
    b.marks[chain[0]].append("x")
    b.marks[chain[-1]].append("y")
    for v, part in zip(chain, p):
        b.tails(v, part - 1)
    return b.build(["x", "y"])


def _graph_U(p: Partition, g: int) -> DualGraph:
    _check_partition(p, g - 1, None, "U")
    if not p or p[0] < 2:
        raise ValueError("family U excludes the longest partition (1,...,1)")
    b = _Builder()
    chain = b.chain([2] + [1] * len(p))
    b.tails(chain[0], p[0] - 2)
    for v, part in zip(chain[1:], p[1:]):
        b.tails(v, part - 1)
    return b.build()


def _graph_U_prime(p: Partition, g: int) -> DualGraph:
    _check_partition(p, g - 2, None, "U_prime")
    b = _Builder()
    chain = b.chain([1] * (len(p) + 2))
    for v, part in zip(chain[1:], p):
        b.tails(v, part - 1)
    return b.build()


def _graph_V(p: Partition, n: int) -> DualGraph:
    d = sum(p)
    m = n - d - 2
    _check_partition(p, d, m, "V")
    if m < 1:
        raise ValueError(f"family V needs d <= n-3, got d={d}, n={n}")
    parts = list(p) + [0] * (m - len(p))
    b = _Builder()
    chain = b.chain([0] * m)
    counter = iter(range(1, n + 1))
    if m == 1:
        b.marks[chain[0]] = [str(next(counter)) for _ in range(n)]
    else:
        for i, v in enumerate(chain):
            extra = 2 if i in (0, m - 1) else 1
            b.marks[v] = [str(next(counter)) for _ in range(parts[i] + extra)]
    return b.build()


def w_genus(p: Partition, two_pointed: bool) -> int:
    """Genus of the W (one marking) or W_tilde (two markings) core graph for p."""
    d, l = sum(p), len(p)
    if not two_pointed:
        # 2g - 1 = d + l if d + l is odd, else d + l + 1
        return (d + l + 1) // 2 if (d + l) % 2 else (d + l + 2) // 2
    if d == 0:
        return 0
    # 2g = d + l if d + l is even, else d + l + 1
    return (d + l) // 2 if (d + l) % 2 == 0 else (d + l + 1) // 2


def _split_parity(p: Partition) -> tuple[list[int], list[int]]:
    odd = [x for x in p if x % 2]
    even = [x for x in p if x % 2 == 0]
    return odd, even


def _attach_A(b: _Builder, odd: Sequence[int]) -> list[int]:
    return b.chain([(x + 1) // 2 for x in odd])


def _attach_comb(b: _Builder, spine: Sequence[int], teeth: Sequence[int]) -> list[int]:
    """Comb with teeth on the first len(teeth) spine vertices; returns the spine."""
    sp = b.chain(spine)
    for v, h in zip(sp, teeth):
        b.join(v, b.vertex(h))
    return sp


def _graph_W(p: Partition, g: int) -> tuple[DualGraph, int]:
    """Core W graph with the marked vertex's genus raised to reach g; returns (graph, delta)."""
    d = sum(p)
    _check_partition(p, d, 2 * g - 1 - d, "W")
    odd, even = _split_parity(p)
    core = w_genus(p, False)
    delta = g - core
    if delta < 0:
        raise ValueError("partition too long for genus g")
    b = _Builder()
    A = _attach_A(b, odd)
    bcount = len(even)
    if (d + len(p)) % 2:
        r = (bcount + 1) // 2
        spine = [x // 2 for x in even[: r - 1]] + [even[r - 1] // 2 + 1]
        teeth = [x // 2 + 1 for x in even[r : 2 * r - 1]]
        B = _attach_comb(b, spine, teeth)
        if A:
            b.join(A[0], B[0])
            star = A[-1]
        else:
            star = B[0]
    elif bcount:
        r = bcount // 2
        spine = [x // 2 for x in even[: r - 1]] + [even[r - 1] // 2 + 1]
        teeth = [x // 2 + 1 for x in even[r : 2 * r - 1]]
        B = _attach_comb(b, spine, teeth)
        c = b.vertex(even[2 * r - 1] // 2)
        b.join(c, b.vertex(1))
        if A:
            b.join(A[0], B[0])
            b.join(A[-1], c)
        else:
            b.join(B[0], c)
        star = c
    else:
        e = b.vertex(1)
        if A:
            b.join(A[-1], e)
            star = A[0]
        else:
            star = e
    b.marks[star].append("x")
    b.genus[star] += delta
    return b.build(), delta


def _graph_W_tilde(p: Partition, g: int) -> tuple[DualGraph, int]:
    d = sum(p)
    _check_partition(p, d, 2 * g - d, "W_tilde")
    odd, even = _split_parity(p)
    b = _Builder()
    if d == 0:
        # no core graph: one genus-g vertex with both markings, class psi_1^(2g-1)
        if g < 1:
            raise ValueError("W_tilde with empty partition needs g >= 1")
        b.vertex(g, ["x", "y"])
        return b.build(["x", "y"]), g
    core = w_genus(p, True)
    delta = g - core
    if delta < 0:
        raise ValueError("partition too long for genus g")
    A = _attach_A(b, odd)
    bcount = len(even)
    if (d + len(p)) % 2 == 0 and bcount:
        r = bcount // 2
        spine = [x // 2 for x in even[:r]]
        teeth = [x // 2 + 1 for x in even[r : 2 * r - 1]]
        B = _attach_comb(b, spine, teeth)
        c = b.vertex(even[2 * r - 1] // 2 + 1)
        if A:
            b.join(B[0], A[0])
            b.join(A[-1], c)
        else:
            b.join(B[0], c)
        star = B[-1]
    elif (d + len(p)) % 2 == 0:
        star = A[0]
        b.marks[A[0]].append("x")
        b.marks[A[-1]].append("y")
        b.genus[star] += delta
        return b.build(["x", "y"]), delta
    else:
        r = (bcount + 1) // 2
        spine = [x // 2 for x in even[:r]]
        teeth = [x // 2 + 1 for x in even[r : 2 * r - 1]]
        B = _attach_comb(b, spine, teeth)
        e = b.vertex(1)
        if A:
            b.join(B[0], A[0])
            b.join(A[-1], e)
        else:
            b.join(B[0], e)
        star = B[-1]
    b.marks[star].extend(["x", "y"])
    b.genus[star] += delta
    return b.build(["x", "y"]), delta


def trade_genus_for_markings(graph: DualGraph, count: int) -> DualGraph:
    """Lower the genus of `count` vertices by one each, adding 2 markings per step.

    Socle dimensions are unchanged.  The vertex of smallest positive genus (lowest
    index on ties) is traded first, so elliptic components go before others.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    genus = [g for g, _ in graph.vertices]
    marks = [list(m) for _, m in graph.vertices]
    nxt = graph.n + 1
    for _ in range(count):
        cands = [(g, v) for v, g in enumerate(genus) if g > 0]
        if not cands:
            raise ValueError("not enough genus to trade")
        _, v = min(cands)
        genus[v] -= 1
        marks[v] += [nxt, nxt + 1]
        nxt += 2
    return DualGraph(tuple(zip(genus, map(tuple, marks))), graph.edges)


def build_stratum(family: str, p: Sequence[int], g: int = 0, n: int = 0) -> DualGraph:
    """The dual graph of the stratum of `family` indexed by p (see module doc)."""
    return stratum_class(family, p, g, n).graph


def _base_family(family: str, n: int) -> tuple[int, int]:
    """(base number of markings, number of trades) for a family used on M_{g,n}."""
    base = {"S": 1, "W": 1, "T": 2, "W_tilde": 2}.get(family)
    if base is None:
        return n, 0
    if n < base or (n - base) % 2:
        raise ValueError(f"family {family} reaches n = {base}, {base + 2}, ..., not n = {n}")
    return base, (n - base) // 2


def stratum_class(family: str, p: Sequence[int], g: int = 0, n: Optional[int] = None) -> Stratum:
    """The class paired against kappa monomials, on M_{g,n}.

    For S, T, W, W_tilde with more markings than the base family carries, the
    class is built in genus g + t and then t genus units are traded for
    2t markings.  For V, g must be 0 and n is the number of markings.
    """
    p = normalize(p)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    default_n = {"S": 1, "T": 2, "U": 0, "U_prime": 0, "W": 1, "W_tilde": 2}
    if n is None:
        if family == "V":
            raise ValueError("family V needs n")
        n = default_n[family]
    if family == "V":
        if g != 0:
            raise ValueError("family V lives in genus 0")
        return Stratum(_graph_V(p, n))
    if family in ("U", "U_prime"):
        if n != 0:
            raise ValueError(f"family {family} lives on M_g (n = 0)")
        if g < 2:
            raise ValueError(f"family {family} needs g >= 2")
        graph = _graph_U(p, g) if family == "U" else _graph_U_prime(p, g)
        return Stratum(graph)
    base, trades = _base_family(family, n)
    gh = g + trades
    if gh < 1:
        raise ValueError(f"family {family} needs positive genus after untrading")
    psi: tuple[tuple[int, int], ...] = ()
    if family == "S":
        graph = _graph_S(p, gh)
    elif family == "T":
        graph = _graph_T(p, gh)
    elif family == "W":
        graph, delta = _graph_W(p, gh)
        psi = ((1, 2 * delta),) if delta else ()
    else:
        graph, delta = _graph_W_tilde(p, gh)
        k = 2 * delta - 1 if not p else 2 * delta
        psi = ((1, k),) if k else ()
    if trades:
        graph = trade_genus_for_markings(graph, trades)
    return Stratum(graph, psi)


def family_index_set(family: str, g: int = 0, n: Optional[int] = None, d: Optional[int] = None) -> list[Partition]:
    """Row/column partitions of the square pairing matrix for a family."""
    if family in ("S", "mu"):
        base, t = _base_family("S", 1 if n is None else n)
        return partitions(g + t - 1)
    if family in ("T", "nu"):
        base, t = _base_family("T", 2 if n is None else n)
        return partitions(g + t)
    if family in ("U", "omega"):
        return [q for q in partitions(g - 1) if q and q[0] >= 2]
    if family in ("U_prime", "omega_prime"):
        return partitions(g - 2)
    if family in ("V", "genus0_V"):
        if n is None or d is None:
            raise ValueError("genus-0 V family needs n and d")
        return partitions(d, n - d - 2)
    if family in ("W", "w"):
        base, t = _base_family("W", 1 if n is None else n)
        if d is None:
            raise ValueError("w family needs d")
        return partitions(d, 2 * (g + t) - 1 - d)
    if family in ("W_tilde", "w_tilde"):
        base, t = _base_family("W_tilde", 2 if n is None else n)
        if d is None:
            raise ValueError("w_tilde family needs d")
        return partitions(d, 2 * (g + t) - d)
    raise ValueError(f"unknown family {family!r}")


# --- unmarked stable trees ------------------------------------------------


def _canon(adj: list[list[int]], label: list[int]) -> tuple:
    """Canonical form of a labelled tree (minimum over all roots of the AHU code)."""

    def code(v, parent):
        return (label[v], tuple(sorted(code(w, v) for w in adj[v] if w != parent)))

    return min(code(r, -1) for r in range(len(adj)))


def _tree_shapes(k: int) -> list[list[tuple[int, int]]]:
    """Unlabelled trees on k vertices, each as an edge list."""
    trees = [[]]
    for size in range(2, k + 1):
        seen = {}
        for edges in trees:
            for v in range(size - 1):
                new = edges + [(v, size - 1)]
                adj = [[] for _ in range(size)]
                for a, b in new:
                    adj[a].append(b)
                    adj[b].append(a)
                key = _canon(adj, [0] * size)
                seen.setdefault(key, new)
        trees = list(seen.values())
    return trees if k > 1 else [[]]


def stable_trees(g: int, edges: int) -> list[DualGraph]:
    """Unmarked stable trees of total genus g with the given number of edges, up to isomorphism."""
    k = edges + 1
    out = {}
    for shape in _tree_shapes(k):
        adj = [[] for _ in range(k)]
        for a, b in shape:
            adj[a].append(b)
            adj[b].append(a)
        deg = [len(x) for x in adj]

        def genera(i, left):
            if i == k:
                if left == 0:
                    yield []
                return
            lo = 0 if deg[i] >= 3 else (1 if deg[i] >= 1 or k == 1 else 2)
            if k == 1:
                lo = 2
            for gi in range(lo, left + 1):
                for tail in genera(i + 1, left - gi):
                    yield [gi] + tail

        for gs in genera(0, g):
            key = _canon(adj, gs)
            if key not in out:
                out[key] = DualGraph(tuple((x, ()) for x in gs), tuple(shape))
    return [out[k_] for k_ in sorted(out)]
