"""The integral-distance graph and an independent automorphism-group engine.

The engine knows nothing about fields or the map family: it computes the
automorphism group of an arbitrary undirected graph by equitable-coloring
refinement and individualization backtracking, so it serves as an unbiased
cross-check for the group assembled from map parameters.

Colorings are ordered partitions (lists of vertex lists).  Refinement splits
cells by neighbor counts into a splitter cell and orders the fragments by
count value.  Both choices are label-invariant: an automorphism carrying one
individualization sequence to another carries the refined partitions onto
each other cell by cell, which is what makes cross-branch comparison by cell
positions sound.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InternalInconsistencyError, TooLargeError
from .field import Field
from . import space, transform
from .space import DEFAULT_MAX_POINTS

MAX_AUT_VERTICES = 750


@dataclass(frozen=True)
class IntegralGraph:
    """Vertices are canonical point indices; edge u~v iff the squared
    distance between the points is a square (u != v)."""

    adjacency: np.ndarray
    field: Field
    n: int

    @property
    def num_vertices(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum()) // 2


def build_integral_graph(field: Field, n: int,
                         max_points: int = DEFAULT_MAX_POINTS) -> IntegralGraph:
    total = space.check_size(field, n, max_points)
    adj = space.integral_matrix(field, n, max_points).copy()
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    return IntegralGraph(adj, field, n)


def complement_graph(graph: IntegralGraph) -> IntegralGraph:
    adj = ~graph.adjacency
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    return IntegralGraph(adj, graph.field, graph.n)


def flip_edge(graph: IntegralGraph, u: int, v: int) -> IntegralGraph:
    """Copy of the graph with one adjacency bit toggled (a test hook)."""
    if u == v:
        raise ValueError("cannot toggle a loop")
    adj = graph.adjacency.copy()
    adj[u, v] = not adj[u, v]
    adj[v, u] = adj[u, v]
    adj.setflags(write=False)
    return IntegralGraph(adj, graph.field, graph.n)


def _as_matrix(graph) -> np.ndarray:
    if isinstance(graph, IntegralGraph):
        return graph.adjacency
    adj = np.asarray(graph, dtype=bool)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency must be a square matrix")
    return adj


# ---------------------------------------------------------------------------
# equitable refinement on ordered partitions
# ---------------------------------------------------------------------------

def _refine_cells(adj: np.ndarray, cells, worklist=None):
    """Coarsest equitable refinement of an ordered partition.

    Every splitter snapshot is a former cell, hence a union of current
    cells, so splitting by it is sound; new fragments are enqueued, which
    guarantees every surviving cell was used as a splitter after its
    creation.  Fragment order inside a split is by neighbor count.
    """
    cells = [list(c) for c in cells]
    queue = deque([list(c) for c in (worklist if worklist is not None else cells)])
    while queue:
        splitter = queue.popleft()
        counts = adj[:, splitter].sum(axis=1)
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups = {}
            for v in cell:
                groups.setdefault(int(counts[v]), []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            for key in sorted(groups):
                new_cells.append(groups[key])
                queue.append(groups[key])
        cells = new_cells
    return cells


def _individualize(cells, v):
    out = []
    fragments = None
    for cell in cells:
        if v in cell:
            rest = [w for w in cell if w != v]
            out.append([v])
            fragments = [[v]]
            if rest:
                out.append(rest)
                fragments.append(rest)
        else:
            out.append(cell)
    if fragments is None:
        raise ValueError(f"vertex {v} not present in the coloring")
    return out, fragments


def refine_coloring(graph, initial=None):
    """Public equitable refinement; cells are returned ordered by their
    least vertex so the color numbering follows first-seen vertex index."""
    adj = _as_matrix(graph)
    if initial is None:
        initial = [list(range(adj.shape[0]))]
    covered = sorted(v for cell in initial for v in cell)
    if covered != list(range(adj.shape[0])):
        raise ValueError("initial coloring must partition the vertex set")
    cells = _refine_cells(adj, initial)
    cells.sort(key=lambda c: min(c))
    return [tuple(sorted(c)) for c in cells]


# ---------------------------------------------------------------------------
# automorphism group search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutGroupResult:
    order: int
    generators: tuple
    node_count: int


def _first_target_cell(cells):
    best_pos, best_len = -1, None
    for pos, cell in enumerate(cells):
        m = len(cell)
        if m > 1 and (best_len is None or m < best_len):
            best_pos, best_len = pos, m
    return best_pos


def _cell_sizes(cells):
    return tuple(len(c) for c in cells)


def automorphism_group(graph, *, max_vertices: int = MAX_AUT_VERTICES) -> AutGroupResult:
    """Exact automorphism group order and verified generators.

    A base of vertices is fixed along the leftmost individualization path
    until the refinement is discrete.  Levels are processed deepest first:
    at level i the orbit of base[i] under the stabilizer of base[:i] is
    grown by exhaustive search for one automorphism per orbit candidate,
    every found generator being checked edge by edge before use.  The group
    order is the product of the orbit lengths, and any automorphism fixing
    the whole base is the identity because the final coloring is discrete.
    """
    adj = _as_matrix(graph)
    num = adj.shape[0]
    if num > max_vertices:
        raise TooLargeError(f"{num} vertices exceed the search bound {max_vertices}")
    if num == 0:
        return AutGroupResult(1, (), 0)

    node_count = 0

    root = _refine_cells(adj, [list(range(num))])
    path = [root]
    base = []
    target_pos = []
    cur = root
    while True:
        pos = _first_target_cell(cur)
        if pos < 0:
            break
        v = min(cur[pos])
        base.append(v)
        target_pos.append(pos)
        split, frags = _individualize(cur, v)
        cur = _refine_cells(adj, split, worklist=frags)
        path.append(cur)
    path_sizes = [_cell_sizes(c) for c in path]
    leaf_base = [c[0] for c in path[-1]]

    def verify(perm: np.ndarray) -> bool:
        return bool(np.array_equal(adj[perm][:, perm], adj))

    def extend(depth, cells):
        """Search for one automorphism extending the current branch."""
        nonlocal node_count
        node_count += 1
        if _cell_sizes(cells) != path_sizes[depth]:
            return None
        if depth == len(base):
            perm = np.empty(num, dtype=np.int64)
            for k, cell in enumerate(cells):
                perm[leaf_base[k]] = cell[0]
            return perm if verify(perm) else None
        pos = target_pos[depth]
        for v in sorted(cells[pos]):
            split, frags = _individualize(cells, v)
            result = extend(depth + 1, _refine_cells(adj, split, worklist=frags))
            if result is not None:
                return result
        return None

    generators = []

    def orbit_of(start, level):
        """Orbit of `start` under the found generators; every generator in
        hand fixes base[:level] pointwise, so this closure stays inside the
        stabilizer of the level prefix."""
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for g in generators:
                y = int(g[x])
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    order = 1
    for level in range(len(base) - 1, -1, -1):
        cell = path[level][target_pos[level]]
        b = base[level]
        orbit = orbit_of(b, level)
        for c in sorted(cell):
            if c in orbit:
                continue
            split, frags = _individualize(path[level], c)
            found = extend(level + 1, _refine_cells(adj, split, worklist=frags))
            if found is not None:
                generators.append(found)
                orbit = orbit_of(b, level)
        order *= len(orbit)

    for g in generators:
        if not verify(g):
            raise InternalInconsistencyError(
                "search produced a non-automorphism generator")
    gens = tuple(tuple(g.tolist()) for g in generators)
    return AutGroupResult(order, gens, node_count)


# ---------------------------------------------------------------------------
# classification verdict
# ---------------------------------------------------------------------------

class Verdict(enum.Enum):
    EQUAL = "equal"
    STRICTLY_LARGER = "strictly-larger"
    VIOLATION = "violation"


@dataclass(frozen=True)
class ClassificationReport:
    verdict: Verdict
    aut_order: int
    semiaffine_order: int
    containment_ok: bool
    extra_example: tuple | None
    node_count: int
    aut_generators: tuple


def expected_verdict(field: Field, n: int) -> Verdict:
    """Equal for n >= 3 and for planes over q = 3 mod 4, strictly larger
    for planes over q = 1 mod 4."""
    if n >= 3 or field.q % 4 == 3:
        return Verdict.EQUAL
    return Verdict.STRICTLY_LARGER


def verify_classification(field: Field, n: int, *,
                          graph: IntegralGraph | None = None,
                          max_points: int = DEFAULT_MAX_POINTS) -> ClassificationReport:
    """Compare the graph automorphism group with the map-family group.

    Checks that every map-family permutation preserves adjacency, then
    compares orders.  Equal and StrictlyLarger are the two legitimate
    outcomes; anything else (containment failure, or a smaller graph group)
    is a Violation.
    """
    if graph is None:
        graph = build_integral_graph(field, n, max_points)
    aut = automorphism_group(graph)
    sa = transform.semiaffine_group(field, n, max_points=max_points)
    sa_arr = np.asarray(sa, dtype=np.int32)
    ok = bool(transform.batch_preserves(sa_arr, graph.adjacency).all())
    extra = None
    if ok and aut.order > len(sa):
        verdict = Verdict.STRICTLY_LARGER
        sa_set = set(sa)
        for g in aut.generators:
            if g not in sa_set:
                extra = g
                break
    elif ok and aut.order == len(sa):
        verdict = Verdict.EQUAL
    else:
        verdict = Verdict.VIOLATION
    return ClassificationReport(verdict, aut.order, len(sa), ok, extra,
                                aut.node_count, aut.generators)


# ---------------------------------------------------------------------------
# interchange formats
# ---------------------------------------------------------------------------

GRAPH6_MAX = 68719476735


def graph6_bytes(graph) -> bytes:
    """Standard 6-bit upper-triangle encoding with size header."""
    adj = _as_matrix(graph)
    num = adj.shape[0]
    if num > GRAPH6_MAX:
        raise ValueError(f"graph6 supports at most {GRAPH6_MAX} vertices")
    if num <= 62:
        header = bytes([num + 63])
    elif num <= 258047:
        header = bytes([126]) + _graph6_chunks(num, 3)
    else:
        header = bytes([126, 126]) + _graph6_chunks(num, 6)
    bits = []
    for j in range(1, num):
        for i in range(j):
            bits.append(1 if adj[i, j] else 0)
    body = bytearray()
    for start in range(0, len(bits), 6):
        group = bits[start:start + 6]
        group += [0] * (6 - len(group))
        value = 0
        for b in group:
            value = (value << 1) | b
        body.append(value + 63)
    return header + bytes(body) + b"\n"


def _graph6_chunks(value: int, count: int) -> bytes:
    out = bytearray()
    for shift in range((count - 1) * 6, -1, -6):
        out.append(((value >> shift) & 63) + 63)
    return bytes(out)


def parse_graph6(data) -> np.ndarray:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    line = data.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise ValueError("empty graph6 input")
    codes = [ord(ch) - 63 for ch in line]
    if any(c < 0 or c > 63 for c in codes):
        raise ValueError("invalid graph6 character")
    if codes[0] < 63:
        num, pos = codes[0], 1
    elif len(codes) >= 2 and codes[1] < 63:
        num = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        pos = 4
    else:
        num = 0
        for c in codes[2:8]:
            num = (num << 6) | c
        pos = 8
    bits = []
    for c in codes[pos:]:
        for shift in range(5, -1, -1):
            bits.append((c >> shift) & 1)
    needed = num * (num - 1) // 2
    if len(bits) < needed:
        raise ValueError("graph6 payload too short")
    adj = np.zeros((num, num), dtype=bool)
    idx = 0
    for j in range(1, num):
        for i in range(j):
            if bits[idx]:
                adj[i, j] = adj[j, i] = True
            idx += 1
    return adj


def dimacs_text(graph) -> str:
    """DIMACS edge format: p-line then one 1-indexed e-line per edge, u < v."""
    adj = _as_matrix(graph)
    num = adj.shape[0]
    edges = [(i, j) for i in range(num) for j in range(i + 1, num) if adj[i, j]]
    lines = [f"p edge {num} {len(edges)}"]
    lines.extend(f"e {i + 1} {j + 1}" for i, j in edges)
    return "\n".join(lines) + "\n"


def parse_dimacs(text) -> np.ndarray:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    num = None
    adj = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise ValueError(f"bad DIMACS problem line: {raw!r}")
            num = int(parts[2])
            adj = np.zeros((num, num), dtype=bool)
        elif parts[0] == "e":
            if adj is None:
                raise ValueError("DIMACS edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < num and 0 <= v < num):
                raise ValueError(f"DIMACS edge out of range: {raw!r}")
            adj[u, v] = adj[v, u] = True
        else:
            raise ValueError(f"unknown DIMACS line: {raw!r}")
    if adj is None:
        raise ValueError("DIMACS input has no problem line")
    return adj
