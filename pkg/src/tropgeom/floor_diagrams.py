"""Floor diagrams and the curve counts they compute.

A floor diagram of degree d and genus g is a connected oriented weighted
acyclic graph with first Betti number g, exactly d sources (1-valent, one
outgoing weight-1 edge each), and divergence 1 at every other vertex
(weight in minus weight out).  Such a diagram has 2d vertices and 2d-1+g
edges.  Summing, over isomorphism classes, the number of markings times
the product of squared edge weights gives the count of degree-d genus-g
plane curves through 3d-1+g generic points; replacing the square by an
all-weights-odd indicator gives the real signed count.

Markings are counted up to automorphisms of the diagram: the raw number
of linear extensions of the edge/floor poset, divided by the order of the
automorphism group (the action on extensions is free).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .errors import CapacityError, FormatError, MarkingError

MAX_DEGREE = 6
MAX_GENUS = 4

FloorEdge = Tuple[int, int, int]  # (tail, head, weight)


@dataclass(frozen=True)
class FloorDiagram:
    """Floors are vertices 0..d-1, sources d..2d-1; edges point upward."""

    degree: int
    genus: int
    edges: Tuple[FloorEdge, ...]

    def __post_init__(self):
        problems = self.validate()
        if problems:
            raise ValueError("invalid floor diagram: " + "; ".join(problems))

    # -- structure -----------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return 2 * self.degree

    def is_source(self, v: int) -> bool:
        return v >= self.degree

    def floors(self) -> range:
        return range(self.degree)

    def floor_edges(self) -> List[Tuple[int, FloorEdge]]:
        return [(k, e) for k, e in enumerate(self.edges) if e[0] < self.degree]

    def source_edges(self) -> List[Tuple[int, FloorEdge]]:
        return [(k, e) for k, e in enumerate(self.edges) if e[0] >= self.degree]

    def source_count(self, floor: int) -> int:
        return sum(1 for _, (u, v, _) in self.source_edges() if v == floor)

    def validate(self) -> List[str]:
        """Re-check every axiom from scratch; empty list means valid."""
        d, g = self.degree, self.genus
        problems: List[str] = []
        n = 2 * d
        if d < 1:
            return ["degree must be >= 1"]
        if g < 0:
            problems.append("genus must be >= 0")
        for u, v, w in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                problems.append(f"edge ({u},{v}) endpoint out of range")
                return problems
            if w < 1:
                problems.append(f"edge ({u},{v}) has weight {w} < 1")
            if v >= d:
                problems.append(f"edge ({u},{v}) points into a source")
        if len(self.edges) != 2 * d - 1 + g:
            problems.append(
                f"expected {2 * d - 1 + g} edges, found {len(self.edges)}"
            )
        indeg = [0] * n
        outdeg = [0] * n
        in_w = [0] * n
        out_w = [0] * n
        for u, v, w in self.edges:
            outdeg[u] += 1
            indeg[v] += 1
            out_w[u] += w
            in_w[v] += w
        for s in range(d, n):
            if not (outdeg[s] == 1 and indeg[s] == 0):
                problems.append(f"source {s} is not 1-valent with one outgoing edge")
            for u, v, w in self.edges:
                if u == s and w != 1:
                    problems.append(f"source edge at {s} has weight {w} != 1")
        for v in range(d):
            if in_w[v] - out_w[v] != 1:
                problems.append(
                    f"floor {v} has divergence {in_w[v] - out_w[v]} != 1"
                )
        # connectivity of the underlying undirected graph
        adj: Dict[int, set] = {v: set() for v in range(n)}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for w_ in adj[stack.pop()]:
                if w_ not in seen:
                    seen.add(w_)
                    stack.append(w_)
        if len(seen) != n:
            problems.append("diagram is not connected")
        elif len(self.edges) - n + 1 != g:
            problems.append(
                f"first Betti number is {len(self.edges) - n + 1}, expected {g}"
            )
        # acyclicity via iterated source removal on the orientation
        remaining = {v: indeg[v] for v in range(n)}
        out_adj: Dict[int, List[int]] = {v: [] for v in range(n)}
        for u, v, _ in self.edges:
            out_adj[u].append(v)
        queue = [v for v in range(n) if remaining[v] == 0]
        removed = 0
        while queue:
            v = queue.pop()
            removed += 1
            for w_ in out_adj[v]:
                remaining[w_] -= 1
                if remaining[w_] == 0:
                    queue.append(w_)
        if removed != n:
            problems.append("orientation has a directed cycle")
        return problems

    # -- marking poset ---------------------------------------------------------

    def element_ids(self) -> List[str]:
        """M(D): edges then floors, as the public 'e<k>' / 'v<k>' names."""
        return [f"e{k}" for k in range(len(self.edges))] + [
            f"v{v}" for v in self.floors()
        ]

    def _poset(self) -> Tuple[int, List[int], List[int]]:
        """(n_elements, preds bitmasks, succs bitmasks) of immediate relations."""
        E = len(self.edges)
        n = E + self.degree
        preds = [0] * n
        succs = [0] * n
        for k, (u, v, _) in enumerate(self.edges):
            head_el = E + v
            preds[head_el] |= 1 << k
            succs[k] |= 1 << head_el
            if u < self.degree:
                tail_el = E + u
                preds[k] |= 1 << tail_el
                succs[tail_el] |= 1 << k
        return n, preds, succs

    # -- serialization ---------------------------------------------------------

    def to_json(self, marking: Optional[Sequence[str]] = None) -> dict:
        verts = [
            {"id": f"v{v}", "source": bool(self.is_source(v))}
            for v in range(self.num_vertices)
        ]
        edges = [
            {"from": f"v{u}", "to": f"v{v}", "weight": w} for u, v, w in self.edges
        ]
        out = {
            "degree": self.degree,
            "genus": self.genus,
            "vertices": verts,
            "edges": edges,
        }
        if marking is not None:
            out["marking"] = list(marking)
        return out

    @classmethod
    def from_json(cls, data: dict) -> Tuple["FloorDiagram", Optional[Tuple[str, ...]]]:
        """Parse a diagram record; returns (diagram, marking or None)."""
        try:
            d = int(data["degree"])
            g = int(data["genus"])
            ids = [rec["id"] for rec in data["vertices"]]
            flags = {rec["id"]: bool(rec.get("source", False)) for rec in data["vertices"]}
            if len(ids) != len(set(ids)):
                raise FormatError("duplicate vertex ids")
            floors = [i for i in ids if not flags[i]]
            sources = [i for i in ids if flags[i]]
            remap = {i: k for k, i in enumerate(floors)}
            remap.update({i: len(floors) + k for k, i in enumerate(sources)})
            edges = tuple(
                (remap[rec["from"]], remap[rec["to"]], int(rec["weight"]))
                for rec in data["edges"]
            )
            marking = data.get("marking")
            if marking is not None:
                marking = tuple(str(m) for m in marking)
        except FormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad diagram JSON: {exc}") from exc
        try:
            diagram = cls(degree=d, genus=g, edges=edges)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        return diagram, marking

    def to_dot(self, name: str = "D") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for v in range(self.num_vertices):
            if self.is_source(v):
                lines.append(f'  v{v} [shape=point, style=filled, fillcolor=black];')
            else:
                lines.append(f'  v{v} [shape=circle, label=""];')
        for u, v, w in self.edges:
            label = f' [label="{w}"]' if w >= 2 else ""
            lines.append(f"  v{u} -> v{v}{label};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MarkedFloorDiagram:
    """A diagram plus an increasing bijection {1..3d-1+g} -> edges + floors.

    `marking[k]` is the element receiving label k+1; the order must extend
    the diagram's partial order.
    """

    diagram: FloorDiagram
    marking: Tuple[str, ...]

    def __post_init__(self):
        ids = self.diagram.element_ids()
        if sorted(self.marking) != sorted(ids):
            raise MarkingError("marking is not a bijection onto edges and floors")
        pos = {el: k for k, el in enumerate(self.marking)}
        E = len(self.diagram.edges)
        for k, (u, v, _) in enumerate(self.diagram.edges):
            if u < self.diagram.degree and pos[f"v{u}"] > pos[f"e{k}"]:
                raise MarkingError(f"floor v{u} must precede edge e{k}")
            if pos[f"e{k}"] > pos[f"v{v}"]:
                raise MarkingError(f"edge e{k} must precede floor v{v}")

    def to_json(self) -> dict:
        return self.diagram.to_json(marking=self.marking)


# -- multiplicities ------------------------------------------------------------


def multiplicity(diagram: FloorDiagram) -> int:
    """Product of the squares of all edge weights."""
    out = 1
    for _, _, w in diagram.edges:
        out *= w * w
    return out


def real_multiplicity(diagram: FloorDiagram) -> int:
    """0 when some edge weight is even, else 1."""
    return 0 if any(w % 2 == 0 for _, _, w in diagram.edges) else 1


# -- enumeration ---------------------------------------------------------------


def _check_guard(d: int, g: int, max_degree: int, max_genus: int) -> None:
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    if d > max_degree or g > max_genus:
        raise CapacityError(
            f"(d={d}, g={g}) exceeds the guard (max degree {max_degree}, "
            f"max genus {max_genus}); raise the limit explicitly to proceed"
        )


def _core_candidates(d: int, g: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[FloorEdge, ...]]]:
    """Yield (source counts per floor, floor edges) over topological labelings.

    Floors are processed by tail; when floor i's outgoing edges are fixed its
    in-weight is final, so divergence feasibility prunes early.
    """
    m_ff = d - 1 + g
    wcap = max(1, d - 1)
    if d == 1:
        if g == 0:
            yield ((1,), ())
        return

    def out_options(i: int, budget: int) -> Iterator[List[FloorEdge]]:
        """All multisets of up to `budget` weighted edges from floor i upward."""
        pairs = [(j, w) for j in range(i + 1, d) for w in range(1, wcap + 1)]

        def rec(start: int, left: int) -> Iterator[List[FloorEdge]]:
            yield []
            if left == 0:
                return
            for idx in range(start, len(pairs)):
                j, w = pairs[idx]
                for rest in rec(idx, left - 1):
                    yield [(i, j, w)] + rest

        return rec(0, budget)

    def walk(i: int, edges: List[FloorEdge], in_w: List[int], k_sum: int):
        if i == d:
            if len(edges) != m_ff:
                return
            ks = []
            ok = True
            for v in range(d):
                out_v = sum(w for (a, b, w) in edges if a == v)
                kv = 1 + out_v - in_w[v]
                if kv < 0:
                    ok = False
                    break
                ks.append(kv)
            if not ok or sum(ks) != d:
                return
            # connectivity over floors
            parent = list(range(d))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b, _ in edges:
                parent[find(a)] = find(b)
            if len({find(v) for v in range(d)}) != 1:
                return
            yield tuple(ks), tuple(sorted(edges))
            return
        budget = m_ff - len(edges)
        for out in out_options(i, budget):
            out_total = sum(w for _, _, w in out)
            kv = 1 + out_total - in_w[i]
            if kv < 0 or k_sum + kv > d:
                continue
            new_in = list(in_w)
            for _, j, w in out:
                new_in[j] += w
            yield from walk(i + 1, edges + out, new_in, k_sum + kv)

    yield from walk(0, [], [0] * d, 0)


def _canonical_core(
    d: int, ks: Tuple[int, ...], fedges: Tuple[FloorEdge, ...]
) -> Tuple[Tuple[int, ...], Tuple[FloorEdge, ...]]:
    """Lex-least relabeling of the floors among topological labelings."""
    best = None
    for perm in itertools.permutations(range(d)):
        relabeled = sorted((perm[i], perm[j], w) for (i, j, w) in fedges)
        if any(i >= j for i, j, _ in relabeled):
            continue
        new_ks = [0] * d
        for old in range(d):
            new_ks[perm[old]] = ks[old]
        key = (tuple(new_ks), tuple(relabeled))
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def _assemble(d: int, g: int, ks: Tuple[int, ...], fedges: Tuple[FloorEdge, ...]) -> FloorDiagram:
    edges: List[FloorEdge] = list(fedges)
    s = d
    for v in range(d):
        for _ in range(ks[v]):
            edges.append((s, v, 1))
            s += 1
    return FloorDiagram(degree=d, genus=g, edges=tuple(edges))


def enumerate_diagrams(
    d: int, g: int, *, max_degree: int = MAX_DEGREE, max_genus: int = MAX_GENUS
) -> List[FloorDiagram]:
    """All isomorphism classes of floor diagrams of degree d and genus g.

    Deterministic: diagrams come back sorted by their canonical core.  An
    empty list means no diagram supports these parameters (e.g. the genus
    exceeds what the degree allows).
    """
    _check_guard(d, g, max_degree, max_genus)
    seen = {}
    for ks, fedges in _core_candidates(d, g):
        key = _canonical_core(d, ks, fedges)
        if key not in seen:
            seen[key] = True
    return [_assemble(d, g, ks, fedges) for ks, fedges in sorted(seen)]


# -- automorphisms and markings --------------------------------------------------


def _core_of(diagram: FloorDiagram) -> Tuple[Tuple[int, ...], Tuple[FloorEdge, ...]]:
    ks = tuple(diagram.source_count(v) for v in diagram.floors())
    fedges = tuple(sorted(e for _, e in diagram.floor_edges()))
    return ks, fedges


def _floor_automorphisms(diagram: FloorDiagram) -> List[Tuple[int, ...]]:
    d = diagram.degree
    ks, fedges = _core_of(diagram)
    multiset = sorted(fedges)
    autos = []
    for perm in itertools.permutations(range(d)):
        if any(ks[perm[v]] != ks[v] for v in range(d)):
            continue
        if sorted((perm[i], perm[j], w) for (i, j, w) in fedges) == multiset:
            autos.append(perm)
    return autos


def automorphism_order(diagram: FloorDiagram) -> int:
    """|Aut| including permutations of parallel equal-weight edges and sources."""
    order = len(_floor_automorphisms(diagram))
    ks, fedges = _core_of(diagram)
    for kv in ks:
        order *= math.factorial(kv)
    for _, mult in _parallel_classes(fedges).items():
        order *= math.factorial(len(mult))
    return order


def _parallel_classes(fedges: Sequence[FloorEdge]) -> Dict[FloorEdge, List[int]]:
    classes: Dict[FloorEdge, List[int]] = {}
    for idx, e in enumerate(fedges):
        classes.setdefault(e, []).append(idx)
    return classes


def count_linear_extensions(diagram: FloorDiagram) -> int:
    """Number of increasing bijections {1..n} -> M(D), not yet modulo Aut."""
    n, preds, succs = diagram._poset()
    full = (1 << n) - 1
    memo = {0: 1}

    def count(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        total = 0
        m = mask
        while m:
            bit = m & -m
            x = bit.bit_length() - 1
            m ^= bit
            if succs[x] & mask:
                continue  # not maximal in this downset
            total += count(mask ^ bit)
        memo[mask] = total
        return total

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n * 4 + 100))
    try:
        return count(full)
    finally:
        sys.setrecursionlimit(old)


def count_markings(diagram: FloorDiagram) -> int:
    """Markings up to isomorphism: linear extensions / |Aut| (free action)."""
    raw = count_linear_extensions(diagram)
    aut = automorphism_order(diagram)
    assert raw % aut == 0, "automorphism action on extensions must be free"
    return raw // aut


def _linear_extensions(n: int, preds: List[int]) -> Iterator[Tuple[int, ...]]:
    order: List[int] = []
    placed = 0

    def rec() -> Iterator[Tuple[int, ...]]:
        nonlocal placed
        if len(order) == n:
            yield tuple(order)
            return
        for x in range(n):
            bit = 1 << x
            if placed & bit or (preds[x] & ~placed):
                continue
            order.append(x)
            placed |= bit
            yield from rec()
            order.pop()
            placed ^= bit

    yield from rec()


def _marking_orbit_rep(
    diagram: FloorDiagram, ext: Tuple[int, ...], floor_autos: List[Tuple[int, ...]]
) -> Tuple[int, ...]:
    """Lex-least image of an extension under the automorphism action.

    For a fixed floor permutation the freedom over parallel edges and over
    source edges sharing a floor is independent per class, so a greedy
    first-seen-gets-smallest-id assignment already minimizes the sequence.
    """
    E = len(diagram.edges)
    d = diagram.degree
    fedge_class: Dict[int, FloorEdge] = {}
    class_members: Dict[FloorEdge, List[int]] = {}
    source_class: Dict[int, int] = {}
    source_members: Dict[int, List[int]] = {}
    for k, (u, v, w) in enumerate(diagram.edges):
        if u < d:
            fedge_class[k] = (u, v, w)
            class_members.setdefault((u, v, w), []).append(k)
        else:
            source_class[k] = v
            source_members.setdefault(v, []).append(k)

    best = None
    for perm in floor_autos:
        next_in_class: Dict[tuple, int] = {}
        image: List[int] = []
        for x in ext:
            if x >= E:  # a floor element
                image.append(E + perm[x - E])
                continue
            if x in fedge_class:
                u, v, w = fedge_class[x]
                target = (perm[u], perm[v], w)
                slot = next_in_class.get(("f", target), 0)
                next_in_class[("f", target)] = slot + 1
                image.append(class_members[target][slot])
            else:
                target_floor = perm[source_class[x]]
                slot = next_in_class.get(("s", target_floor), 0)
                next_in_class[("s", target_floor)] = slot + 1
                image.append(source_members[target_floor][slot])
        key = tuple(image)
        if best is None or key < best:
            best = key
    return best


def enumerate_markings(diagram: FloorDiagram) -> List[Tuple[str, ...]]:
    """All markings of a diagram up to isomorphism, in a canonical order."""
    n, preds, _ = diagram._poset()
    floor_autos = _floor_automorphisms(diagram)
    ids = diagram.element_ids()
    reps = set()
    for ext in _linear_extensions(n, preds):
        reps.add(_marking_orbit_rep(diagram, ext, floor_autos))
    expected = count_markings(diagram)
    assert len(reps) == expected, "orbit count disagrees with extension count"
    return [tuple(ids[x] for x in rep) for rep in sorted(reps)]


def enumerate_marked(
    d: int, g: int, *, max_degree: int = MAX_DEGREE, max_genus: int = MAX_GENUS
) -> List[MarkedFloorDiagram]:
    """All marked diagrams of degree d and genus g, up to isomorphism."""
    out: List[MarkedFloorDiagram] = []
    for diagram in enumerate_diagrams(d, g, max_degree=max_degree, max_genus=max_genus):
        for marking in enumerate_markings(diagram):
            out.append(MarkedFloorDiagram(diagram=diagram, marking=marking))
    return out


# -- counts ----------------------------------------------------------------------


def gw_count(
    d: int, g: int, *, max_degree: int = MAX_DEGREE, max_genus: int = MAX_GENUS
) -> int:
    """Degree-d genus-g plane curves through 3d-1+g generic points."""
    total = 0
    for diagram in enumerate_diagrams(d, g, max_degree=max_degree, max_genus=max_genus):
        total += count_markings(diagram) * multiplicity(diagram)
    return total


def welschinger_count(
    d: int, g: int, *, max_degree: int = MAX_DEGREE, max_genus: int = MAX_GENUS
) -> int:
    """Signed real count: markings weighted by the all-odd-weights indicator."""
    total = 0
    for diagram in enumerate_diagrams(d, g, max_degree=max_degree, max_genus=max_genus):
        total += count_markings(diagram) * real_multiplicity(diagram)
    return total


def kontsevich_oracle(d: int) -> int:
    """Rational plane curve counts N(d) from the classical recursion.

    N(1) = 1 and
    N(d) = sum over d1+d2=d of N(d1) N(d2) d1^2 d2 *
           (d2 * C(3d-4, 3d1-2) - d1 * C(3d-4, 3d1-1)),
    entirely independent of floor diagrams; exact integers throughout.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    table = {1: 1}
    for n in range(2, d + 1):
        total = 0
        for d1 in range(1, n):
            d2 = n - d1
            total += (
                table[d1]
                * table[d2]
                * d1 * d1 * d2
                * (
                    d2 * math.comb(3 * n - 4, 3 * d1 - 2)
                    - d1 * math.comb(3 * n - 4, 3 * d1 - 1)
                )
            )
        table[n] = total
    return table[d]
