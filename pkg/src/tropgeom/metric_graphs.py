"""Abstract tropical curves as metric graphs.

A graph is connected, may have parallel edges and loops, and carries edge
lengths that are positive rationals or infinity.  Leaf edges (edges with a
1-valent endpoint) are infinite; punctures and marked points are flags on
1-valent vertices.  Genus is the first Betti number.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Dict, FrozenSet, List, Sequence, Tuple, Union

from .errors import FormatError
from .geometry import as_fraction, format_rational, parse_rational

Length = Union[Fraction, float]  # Fraction > 0, or math.inf

ISOMETRY_VERTEX_GUARD = 12


def _check_length(length) -> Length:
    if length == inf:
        return inf
    length = as_fraction(length)
    if length <= 0:
        raise ValueError(f"edge length must be positive, got {length}")
    return length


@dataclass(frozen=True)
class MetricGraph:
    """Connected multigraph with lengths and leaf flags.

    `edges` is a tuple of (a, b, length); loops (a == b) are allowed and
    count twice toward valence.  `marked` and `punctures` are disjoint sets
    of 1-valent vertex ids.
    """

    num_vertices: int
    edges: Tuple[Tuple[int, int, Length], ...]
    marked: FrozenSet[int] = frozenset()
    punctures: FrozenSet[int] = frozenset()

    def __post_init__(self):
        edges = tuple((a, b, _check_length(l)) for (a, b, l) in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "marked", frozenset(self.marked))
        object.__setattr__(self, "punctures", frozenset(self.punctures))
        n = self.num_vertices
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        for a, b, _ in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge endpoint out of range: ({a}, {b})")
        if not self._is_connected():
            raise ValueError("graph must be connected")
        if self.marked & self.punctures:
            raise ValueError("a vertex cannot be both marked and a puncture")
        val = self.valences()
        for v in self.marked | self.punctures:
            if val[v] != 1:
                raise ValueError(f"flagged vertex {v} is not 1-valent")
        for a, b, l in edges:
            leaf_edge = val[a] == 1 or val[b] == 1
            if leaf_edge and l != inf:
                raise ValueError(f"leaf edge ({a},{b}) must have infinite length")
            if not leaf_edge and l == inf:
                raise ValueError(f"interior edge ({a},{b}) must be finite")

    def _is_connected(self) -> bool:
        adj: Dict[int, set] = {v: set() for v in range(self.num_vertices)}
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    def valences(self) -> List[int]:
        val = [0] * self.num_vertices
        for a, b, _ in self.edges:
            if a == b:
                val[a] += 2
            else:
                val[a] += 1
                val[b] += 1
        return val

    def genus(self) -> int:
        """First Betti number: edges - vertices + 1 (the graph is connected)."""
        return len(self.edges) - self.num_vertices + 1

    def puncture_count(self) -> int:
        return len(self.punctures)

    def finite_total_length(self) -> Fraction:
        return sum((l for _, _, l in self.edges if l != inf), Fraction(0))

    def to_json(self) -> dict:
        verts = []
        for v in range(self.num_vertices):
            rec: dict = {"id": v}
            if v in self.marked:
                rec["marked"] = True
            if v in self.punctures:
                rec["puncture"] = True
            verts.append(rec)
        edges = [
            {"a": a, "b": b, "length": "inf" if l == inf else format_rational(l)}
            for a, b, l in self.edges
        ]
        return {"vertices": verts, "edges": edges}

    @classmethod
    def from_json(cls, data: dict) -> "MetricGraph":
        try:
            ids = [int(rec["id"]) for rec in data["vertices"]]
            if sorted(ids) != list(range(len(ids))):
                raise FormatError("vertex ids must be 0..n-1")
            marked = {int(r["id"]) for r in data["vertices"] if r.get("marked")}
            punctures = {int(r["id"]) for r in data["vertices"] if r.get("puncture")}
            edges = []
            for rec in data["edges"]:
                raw = rec["length"]
                length = inf if raw == "inf" else parse_rational(raw)
                edges.append((int(rec["a"]), int(rec["b"]), length))
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad graph JSON: {exc}") from exc
        return cls(
            num_vertices=len(ids), edges=tuple(edges), marked=marked, punctures=punctures
        )

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for v in range(self.num_vertices):
            attrs = []
            if v in self.marked:
                attrs.append('shape="square"')
            if v in self.punctures:
                attrs.append('style="dashed"')
            lines.append(f"  {v} [{', '.join(attrs)}];" if attrs else f"  {v};")
        for a, b, l in self.edges:
            label = "inf" if l == inf else format_rational(l)
            lines.append(f'  {a} -- {b} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- constructions -----------------------------------------------------------


def circle(length) -> MetricGraph:
    return MetricGraph(num_vertices=1, edges=((0, 0, as_fraction(length)),))


def theta_graph(l1, l2, l3) -> MetricGraph:
    edges = tuple((0, 1, as_fraction(l)) for l in (l1, l2, l3))
    return MetricGraph(num_vertices=2, edges=edges)


def segment() -> MetricGraph:
    """A single infinite edge between two leaves (the projective line)."""
    return MetricGraph(num_vertices=2, edges=((0, 1, inf),))


@dataclass(frozen=True)
class EdgePoint:
    """Point inside edge `edge_index`, at `distance` from its first endpoint."""

    edge_index: int
    distance: Fraction


@dataclass(frozen=True)
class ModificationTrace:
    """What to contract to undo a modification: the new ray and leaf."""

    ray_edge_index: int
    leaf_vertex: int
    attached_at: int


def modify(
    graph: MetricGraph, x: Union[int, EdgePoint]
) -> Tuple[MetricGraph, ModificationTrace]:
    """Attach an infinite ray at x, subdividing an edge when x is interior.

    Genus and puncture count are untouched; the trace records the leaf and
    ray whose contraction recovers the original curve.  On an infinite edge
    the distance is measured from the non-leaf endpoint (a doubly-infinite
    edge is homogeneous, so any interior point is equivalent).
    """
    val = graph.valences()
    if isinstance(x, int):
        if not 0 <= x < graph.num_vertices:
            raise ValueError(f"no vertex {x}")
        if val[x] == 1:
            raise ValueError("cannot modify at a 1-valent vertex")
        attach = x
        n = graph.num_vertices
        new_edges = list(graph.edges)
    else:
        if not 0 <= x.edge_index < len(graph.edges):
            raise ValueError(f"no edge {x.edge_index}")
        a, b, length = graph.edges[x.edge_index]
        d = as_fraction(x.distance)
        if d <= 0:
            raise ValueError("interior point needs positive distance")
        if length == inf:
            if val[a] == 1 and val[b] == 1:
                sub = (inf, inf)
            else:
                if val[a] == 1:
                    a, b = b, a
                sub = (d, inf)
        else:
            if not d < length:
                raise ValueError(f"distance {d} outside edge of length {length}")
            sub = (d, length - d)
        attach = graph.num_vertices
        n = graph.num_vertices + 1
        new_edges = [e for k, e in enumerate(graph.edges) if k != x.edge_index]
        new_edges.append((a, attach, sub[0]))
        new_edges.append((attach, b, sub[1]))
    leaf = n
    ray_index = len(new_edges)
    new_edges.append((attach, leaf, inf))
    out = MetricGraph(
        num_vertices=n + 1,
        edges=tuple(new_edges),
        marked=graph.marked,
        punctures=graph.punctures,
    )
    return out, ModificationTrace(
        ray_edge_index=ray_index, leaf_vertex=leaf, attached_at=attach
    )


def _relabel(edges, marked, punctures, keep: Sequence[int]) -> MetricGraph:
    order = sorted(keep)
    new_id = {v: k for k, v in enumerate(order)}
    return MetricGraph(
        num_vertices=len(order),
        edges=tuple((new_id[a], new_id[b], l) for a, b, l in edges),
        marked=frozenset(new_id[v] for v in marked if v in new_id),
        punctures=frozenset(new_id[v] for v in punctures if v in new_id),
    )


def minimal_model(graph: MetricGraph) -> MetricGraph:
    """Contract leaf edges at unmarked, non-puncture 1-valent vertices.

    Defined for positive genus, or genus 0 with at least two marked leaves;
    idempotent, and genus preserving since only leaves disappear.
    """
    if graph.genus() == 0 and len(graph.marked) < 2:
        raise ValueError("genus-0 curve needs >= 2 marked points for a minimal model")
    edges = list(graph.edges)
    alive = set(range(graph.num_vertices))
    protected = graph.marked | graph.punctures
    while True:
        val: Dict[int, int] = {v: 0 for v in alive}
        for a, b, _ in edges:
            val[a] += 2 if a == b else 1
            if a != b:
                val[b] += 1
        leaves = [v for v in alive if val[v] == 1 and v not in protected]
        if not leaves:
            break
        v = leaves[0]
        edges = [e for e in edges if v not in (e[0], e[1])]
        alive.remove(v)
    return _relabel(edges, graph.marked, graph.punctures, alive)


def smoothed(graph: MetricGraph) -> MetricGraph:
    """Suppress unflagged 2-valent vertices, which are metrically invisible.

    The two incident edges merge into one of summed length; a bare circle
    keeps one vertex carrying a loop.  Isometric graphs acquire identical
    combinatorics after smoothing.
    """
    edges = list(graph.edges)
    alive = set(range(graph.num_vertices))
    protected = graph.marked | graph.punctures
    changed = True
    while changed:
        changed = False
        val: Dict[int, int] = {v: 0 for v in alive}
        for a, b, _ in edges:
            val[a] += 2 if a == b else 1
            if a != b:
                val[b] += 1
        for v in sorted(alive):
            if v in protected or val[v] != 2:
                continue
            incident = [k for k, e in enumerate(edges) if v in (e[0], e[1])]
            if len(incident) != 2:
                continue  # a single loop at v: a bare circle, keep
            k1, k2 = incident
            a1, b1, l1 = edges[k1]
            a2, b2, l2 = edges[k2]
            u = a1 if b1 == v else b1
            w = a2 if b2 == v else b2
            length = inf if inf in (l1, l2) else l1 + l2
            for k in (k2, k1):
                edges.pop(k)
            edges.append((u, w, length))
            alive.remove(v)
            changed = True
            break
    return _relabel(edges, graph.marked, graph.punctures, alive)


def _edge_profile(graph: MetricGraph, v: int) -> tuple:
    loops = sorted("inf" if l == inf else str(l) for a, b, l in graph.edges if a == b == v)
    plain = sorted(
        "inf" if l == inf else str(l)
        for a, b, l in graph.edges
        if (a == v) != (b == v)
    )
    return (tuple(loops), tuple(plain))


def _invariant(graph: MetricGraph, v: int, val: List[int]) -> tuple:
    return (val[v], v in graph.marked, v in graph.punctures, _edge_profile(graph, v))


def _edge_table(graph: MetricGraph) -> Dict[tuple, tuple]:
    table: Dict[tuple, list] = {}
    for a, b, l in graph.edges:
        key = (min(a, b), max(a, b))
        table.setdefault(key, []).append("inf" if l == inf else str(l))
    return {k: tuple(sorted(v)) for k, v in table.items()}


def is_isometric(
    g1: MetricGraph, g2: MetricGraph, *, max_vertices: int = ISOMETRY_VERTEX_GUARD
) -> bool:
    """Exact isometry of metric graphs, up to invisible 2-valent vertices.

    Both graphs are smoothed first, then matched by exhaustive backtracking
    over vertex bijections with valence/flag/length-profile pruning.  Inputs
    above the vertex guard are rejected.
    """
    for g in (g1, g2):
        if g.num_vertices > max_vertices:
            raise ValueError(
                f"graph has {g.num_vertices} vertices; guard is {max_vertices}"
            )
    a, b = smoothed(g1), smoothed(g2)
    if a.num_vertices != b.num_vertices or len(a.edges) != len(b.edges):
        return False
    val_a, val_b = a.valences(), b.valences()
    inv_a = [_invariant(a, v, val_a) for v in range(a.num_vertices)]
    inv_b = [_invariant(b, v, val_b) for v in range(b.num_vertices)]
    if sorted(inv_a) != sorted(inv_b):
        return False
    table_a, table_b = _edge_table(a), _edge_table(b)

    n = a.num_vertices
    mapping: Dict[int, int] = {}
    used = set()

    def consistent(v: int, w: int) -> bool:
        if inv_a[v] != inv_b[w]:
            return False
        if table_a.get((v, v)) != table_b.get((w, w)):
            return False
        for u, img in mapping.items():
            key_a = (min(u, v), max(u, v))
            key_b = (min(img, w), max(img, w))
            if table_a.get(key_a) != table_b.get(key_b):
                return False
        return True

    def backtrack(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if backtrack(v + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return backtrack(0)


def enumerate_trivalent(genus: int) -> List[MetricGraph]:
    """All connected trivalent multigraphs of the given genus, up to iso.

    Every vertex has valence exactly 3 (loops count twice) and there are no
    leaves; unit lengths are used since only the combinatorics matter here.
    """
    if genus < 2:
        raise ValueError("trivalent graphs without leaves need genus >= 2")
    n = 2 * genus - 2
    m = 3 * genus - 3
    slots = [(a, b) for a in range(n) for b in range(a, n)]
    found: List[MetricGraph] = []
    seen_keys: set = set()

    def finish(multiset):
        counts = [0] * n
        for a, b in multiset:
            counts[a] += 2 if a == b else 1
            if a != b:
                counts[b] += 1
        if any(c != 3 for c in counts):
            return
        try:
            g = MetricGraph(
                num_vertices=n, edges=tuple((a, b, Fraction(1)) for a, b in multiset)
            )
        except ValueError:
            return  # disconnected
        key = _canonical_multigraph_key(n, multiset)
        if key not in seen_keys:
            seen_keys.add(key)
            found.append(g)

    def rec(slot_idx, chosen, counts):
        if len(chosen) == m:
            finish(chosen)
            return
        if slot_idx == len(slots):
            return
        a, b = slots[slot_idx]
        for copies in range(m - len(chosen) + 1):
            new_counts = list(counts)
            for _ in range(copies):
                new_counts[a] += 2 if a == b else 1
                if a != b:
                    new_counts[b] += 1
            if new_counts[a] > 3 or new_counts[b] > 3:
                break
            rec(slot_idx + 1, chosen + [(a, b)] * copies, new_counts)

    rec(0, [], [0] * n)
    return found


def _canonical_multigraph_key(n: int, edge_list) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        relabeled = sorted(
            (min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edge_list
        )
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best
