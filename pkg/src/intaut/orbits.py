"""Orbit partitions under permutation generators, the orbit structure of the
scalar-orthogonal group, point-stabilizer orbits, and orbital-graph
connectivity."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NotAGroupError, TooLargeError
from .field import Field
from . import space, transform
from .space import DEFAULT_MAX_POINTS, SphereClass


class UnionFind:
    """Disjoint sets over range(n) with path halving and union by size."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]

    def groups(self):
        out = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class OrbitDecomposition:
    """Disjoint orbits covering the index range, each sorted, ordered by
    least element."""

    orbits: tuple

    def sizes(self):
        return tuple(len(o) for o in self.orbits)

    def as_sets(self):
        return frozenset(frozenset(o) for o in self.orbits)

    @property
    def rank(self):
        return len(self.orbits)


def orbits_under(perms, size: int) -> OrbitDecomposition:
    """Orbit partition of range(size) under the group the perms generate."""
    uf = UnionFind(size)
    for perm in perms:
        if isinstance(perm, np.ndarray):
            perm = perm.tolist()
        if len(perm) != size:
            raise ValueError(
                f"permutation length {len(perm)} does not match size {size}")
        for k in range(size):
            uf.union(k, perm[k])
    groups = sorted(uf.groups().values(), key=lambda o: o[0])
    return OrbitDecomposition(tuple(tuple(o) for o in groups))


def classify_partition(field: Field, n: int,
                       max_points: int = DEFAULT_MAX_POINTS) -> OrbitDecomposition:
    """Point indices grouped by norm class, empty classes omitted."""
    classes = space.class_of_point(field, n, max_points)
    buckets = {cls: [] for cls in SphereClass}
    for k, cls in enumerate(classes):
        buckets[cls].append(k)
    groups = sorted((o for o in buckets.values() if o), key=lambda o: o[0])
    return OrbitDecomposition(tuple(tuple(o) for o in groups))


def reflection_matrix(field: Field, v) -> tuple:
    """The hyperplane reflection fixing the orthogonal complement of v.

    tau_v(x) = x - (2 <x,v> / <v,v>) v, defined for <v,v> != 0; it satisfies
    tau tau^T = I and depends on v only up to a scalar.
    """
    w = space.norm(field, v)
    if w == 0:
        raise ValueError("reflection vector must have nonzero norm")
    n = len(v)
    factor = field.mul(field.add(1, 1), field.inv(w))  # 2 / <v,v>
    rows = []
    for i in range(n):
        coef = field.mul(factor, v[i])
        row = []
        for j in range(n):
            val = field.neg(field.mul(coef, v[j]))
            if i == j:
                val = field.add(val, 1)
            row.append(val)
        rows.append(tuple(row))
    return tuple(rows)


def m_generators(field: Field, n: int,
                 max_points: int = DEFAULT_MAX_POINTS) -> list:
    """Permutations generating the scalar-orthogonal group {x -> a x M}.

    The orthogonal part is generated by the reflections tau_v over all
    anisotropic v (one representative per projective class); the scalar part
    by a single primitive scalar map.  Full matrix enumeration is avoided on
    purpose: it is infeasible already for moderate n even when q^n is small.
    """
    total = space.check_size(field, n, max_points)
    gens = []
    rho = field.primitive_element()
    scalar_matrix = tuple(tuple(rho if i == j else 0 for j in range(n))
                          for i in range(n))
    gens.append(transform.map_permutation_array(
        field, n, 1, 0, scalar_matrix, (0,) * n))
    classes = space.class_of_point(field, n, max_points)
    seen = set()
    for k in range(1, total):
        if classes[k] in (SphereClass.ORIGIN, SphereClass.ISOTROPIC):
            continue
        v = space.point_of_index(field, n, k)
        lead = next(c for c in v if c)
        unit = tuple(field.mul(field.inv(lead), c) for c in v)
        if unit in seen:
            continue
        seen.add(unit)
        tau = reflection_matrix(field, unit)
        gens.append(transform.map_permutation_array(
            field, n, 1, 0, tau, (0,) * n))
    return gens


def m_orbits(field: Field, n: int,
             max_points: int = DEFAULT_MAX_POINTS) -> OrbitDecomposition:
    """Orbits of the scalar-orthogonal group on the point set."""
    total = space.check_size(field, n, max_points)
    return orbits_under(m_generators(field, n, max_points), total)


def stabilizer_orbits(group, fixed_index: int, *,
                      verify_closure: bool = False) -> OrbitDecomposition:
    """Orbits of the subgroup of `group` fixing fixed_index.

    `group` must be an explicit list (or array of rows) of permutations
    closed under composition; with verify_closure the closure is checked and
    a violation raises NotAGroupError.
    """
    if len(group) == 0:
        raise ValueError("group must be a nonempty permutation list")
    size = len(group[0])
    if not 0 <= fixed_index < size:
        raise ValueError(f"fixed index {fixed_index} out of range")
    if verify_closure:
        members = {tuple(int(x) for x in g) for g in group}
        if transform.identity_perm(size) not in members:
            raise NotAGroupError("group does not contain the identity")
        for f in members:
            if transform.invert_perm(f) not in members:
                raise NotAGroupError("group is not closed under inversion")
            for g in members:
                if transform.compose_perms(f, g) not in members:
                    raise NotAGroupError("group is not closed under composition")
    stab = [g for g in group if g[fixed_index] == fixed_index]
    return orbits_under(stab, size)


class OrbitalStatus(enum.Enum):
    CONNECTED = "connected"
    DISCONNECTED = "disconnected"
    DEGENERATE = "degenerate"      # empty step class


def orbital_neighbors(field: Field, n: int, sphere_class: SphereClass,
                      index: int,
                      max_points: int = DEFAULT_MAX_POINTS) -> tuple:
    """Out-neighbors x + y of the vertex x, over all y in the step class;
    out-degree therefore equals the class cardinality."""
    if sphere_class is SphereClass.ORIGIN:
        raise ValueError("step class must be one of the nonzero classes")
    total = space.check_size(field, n, max_points)
    classes = space.class_of_point(field, n, max_points)
    x = space.point_of_index(field, n, index)
    out = []
    for k in range(total):
        if classes[k] is sphere_class:
            y = space.point_of_index(field, n, k)
            out.append(space.canonical_index(field, space.vec_add(field, x, y)))
    return tuple(out)


def orbital_connected(field: Field, n: int, sphere_class: SphereClass,
                      max_points: int = DEFAULT_MAX_POINTS) -> OrbitalStatus:
    """Connectivity of the graph with steps x -> x + y over y in the class.

    The step set is closed under negation (squaring kills the sign), which is
    verified rather than assumed, so directed and undirected connectivity
    agree and a breadth-first search settles the question.
    """
    if sphere_class is SphereClass.ORIGIN:
        raise ValueError("connectivity is defined for the nonzero classes only")
    total = space.check_size(field, n, max_points)
    classes = space.class_of_point(field, n, max_points)
    steps = [space.point_of_index(field, n, k)
             for k in range(total) if classes[k] is sphere_class]
    if not steps:
        return OrbitalStatus.DEGENERATE
    step_set = set(steps)
    for s in steps:
        if tuple(field.neg(c) for c in s) not in step_set:
            raise AssertionError("step class is not symmetric; unreachable")
    seen = bytearray(total)
    seen[0] = 1
    frontier = [(0,) * n]
    reached = 1
    while frontier:
        nxt = []
        for x in frontier:
            for s in steps:
                y = space.vec_add(field, x, s)
                k = space.canonical_index(field, y)
                if not seen[k]:
                    seen[k] = 1
                    reached += 1
                    nxt.append(y)
        frontier = nxt
    return OrbitalStatus.CONNECTED if reached == total else OrbitalStatus.DISCONNECTED


def close_group_array(generators, size: int, *,
                      limit: int = 2_000_000) -> np.ndarray:
    """Explicit elements of the generated group, one permutation per row.

    Breadth-first closure under right multiplication with vectorised
    composition; in a finite group positive words in the generators reach
    every element, so no inverses are needed.
    """
    for g in generators:
        transform.check_bijection(tuple(g), size)
    gens = [np.asarray(g, dtype=np.int32) for g in generators]
    identity = np.arange(size, dtype=np.int32)
    seen = {identity.tobytes()}
    elements = [identity]
    frontier = np.stack([identity])
    while frontier.shape[0] and gens:
        new_rows = []
        for g in gens:
            composed = frontier[:, g]      # rows f -> f o g
            for row in composed:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    new_rows.append(row)
        if len(seen) > limit:
            raise TooLargeError(f"group closure exceeded {limit} elements")
        if not new_rows:
            break
        frontier = np.stack(new_rows)
        elements.extend(new_rows)
    return np.stack(elements)


def close_permutation_group(generators, size: int, *,
                            limit: int = 2_000_000) -> list:
    """Element list of the generated group, sorted lexicographically."""
    arr = close_group_array(generators, size, limit=limit)
    out = [tuple(row.tolist()) for row in arr]
    out.sort()
    return out
