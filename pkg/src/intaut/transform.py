"""Distance-compatible affine-semilinear maps and their point permutations.

A map is the tuple (scale, frob, matrix, shift) acting on row vectors as

    x  ->  scale * frobenius(x, frob) @ matrix + shift

with a nonzero scalar, a power of the coordinatewise p-th-power map, a
matrix satisfying M M^T = I, and a translation vector.  Permutations of the
point set are stored as tuples of image indices, the common currency of all
group computations here.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import NotABijectionError, TooLargeError
from .field import Field
from . import space
from .space import DEFAULT_MAX_POINTS

# ---------------------------------------------------------------------------
# matrices (tuples of row tuples of element indices)
# ---------------------------------------------------------------------------


def mat_identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(A) -> tuple:
    return tuple(zip(*A))


def mat_mul(field: Field, A, B) -> tuple:
    n, m = len(A), len(B[0])
    inner = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = 0
            for k in range(inner):
                acc = field.add(acc, field.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_neg(field: Field, A) -> tuple:
    return tuple(tuple(field.neg(x) for x in row) for row in A)


def mat_scale(field: Field, c: int, A) -> tuple:
    return tuple(tuple(field.mul(c, x) for x in row) for row in A)


def row_times_matrix(field: Field, x, A) -> tuple:
    n = len(A[0])
    out = []
    for j in range(n):
        acc = 0
        for i, xi in enumerate(x):
            acc = field.add(acc, field.mul(xi, A[i][j]))
        out.append(acc)
    return tuple(out)


def is_orthogonal(field: Field, A) -> bool:
    """True iff A @ A^T is the identity."""
    n = len(A)
    for i in range(n):
        for j in range(i, n):
            acc = 0
            for k in range(n):
                acc = field.add(acc, field.mul(A[i][k], A[j][k]))
            if acc != (1 if i == j else 0):
                return False
    return True


# ---------------------------------------------------------------------------
# the map family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemiaffineMap:
    """Parameters of one distance-compatible map.

    scale: nonzero element index; frob: exponent of the p-th-power map in
    [0, h); matrix: n x n with M M^T = I; shift: translation point.
    """

    scale: int
    frob: int
    matrix: tuple
    shift: tuple


def identity_map(field: Field, n: int) -> SemiaffineMap:
    return SemiaffineMap(1, 0, mat_identity(n), (0,) * n)


def normalize_map(field: Field, m: SemiaffineMap) -> SemiaffineMap:
    """Pick the representative of {(s, M), (-s, -M)} with the smaller scale index."""
    neg_scale = field.neg(m.scale)
    if neg_scale < m.scale:
        return SemiaffineMap(neg_scale, m.frob, mat_neg(field, m.matrix), m.shift)
    return m


def apply_map(field: Field, m: SemiaffineMap, x) -> tuple:
    if len(x) != len(m.shift):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(m.shift)}")
    y = tuple(field.frobenius(c, m.frob) for c in x)
    y = row_times_matrix(field, y, m.matrix)
    y = tuple(field.mul(m.scale, c) for c in y)
    return tuple(field.add(a, b) for a, b in zip(y, m.shift))


def to_permutation(field: Field, n: int, m: SemiaffineMap,
                   max_points: int = DEFAULT_MAX_POINTS) -> tuple:
    """Point permutation induced by the map, images indexed canonically."""
    space.check_size(field, n, max_points)
    arr = map_permutation_array(field, n, m.scale, m.frob, m.matrix, m.shift)
    perm = tuple(arr.tolist())
    if len(set(perm)) != len(perm):
        raise NotABijectionError("map does not induce a bijection")
    return perm


def _encode_points(field: Field, coords: np.ndarray) -> np.ndarray:
    q = field.q
    n = coords.shape[1]
    acc = coords[:, n - 1].astype(np.int64)
    for j in range(n - 2, -1, -1):
        acc = acc * q + coords[:, j]
    return acc.astype(np.int32)


def map_permutation_array(field, n, scale, frob, matrix, shift) -> np.ndarray:
    """Image index of every point under the given parameters, as one
    vectorised gather pass over the field tables (no bijectivity check)."""
    tb = space.bulk_tables(field)
    pts = space.point_matrix(field, n)
    X = tb.frob[frob][pts]
    cols = []
    for j in range(n):
        acc = tb.mul[X[:, 0], matrix[0][j]]
        for i in range(1, n):
            acc = tb.add[acc, tb.mul[X[:, i], matrix[i][j]]]
        if scale != 1:
            acc = tb.mul[acc, scale]
        if shift[j] != 0:
            acc = tb.add[acc, shift[j]]
        cols.append(acc)
    return _encode_points(field, np.stack(cols, axis=1))


# ---------------------------------------------------------------------------
# orthogonal matrix enumeration
# ---------------------------------------------------------------------------

def unit_sphere(field: Field, n: int,
                max_points: int = DEFAULT_MAX_POINTS) -> list:
    """All vectors of squared norm one, in canonical index order."""
    space.check_size(field, n, max_points)
    return [p for p in space.enumerate_points(field, n, max_points)
            if space.norm(field, p) == 1]


def enumerate_orthogonal(field: Field, n: int, *,
                         max_points: int = DEFAULT_MAX_POINTS,
                         limit: int = 500_000) -> list:
    """All n x n matrices with M M^T = I, by row-extension backtracking.

    Rows are drawn from the norm-one sphere in ascending point order, each
    new row orthogonal to all earlier ones, so the output is ordered
    lexicographically by the row index vectors.
    """
    candidates = unit_sphere(field, n, max_points)
    out = []

    def dot(u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = field.add(acc, field.mul(a, b))
        return acc

    def extend(rows):
        if len(rows) == n:
            out.append(tuple(rows))
            if len(out) > limit:
                raise TooLargeError(
                    f"orthogonal enumeration exceeded {limit} matrices")
            return
        for v in candidates:
            if all(dot(v, r) == 0 for r in rows):
                rows.append(v)
                extend(rows)
                rows.pop()

    extend([])
    return out


def orthogonal_bruteforce(field: Field, n: int, *,
                          limit: int = 20_000_000) -> list:
    """Independent oracle: scan all q^(n*n) matrices and keep M M^T = I."""
    q = field.q
    total = q ** (n * n)
    if total > limit:
        raise TooLargeError(f"{total} candidate matrices exceed the scan bound")
    rows_all = space.enumerate_points(field, n, max_points=max(q ** n, 1))
    out = []

    def extend(rows):
        if len(rows) == n:
            if is_orthogonal(field, rows):
                out.append(tuple(rows))
            return
        for v in rows_all:
            rows.append(v)
            extend(rows)
            rows.pop()

    extend([])
    return out


# ---------------------------------------------------------------------------
# the full permutation group of the map family
# ---------------------------------------------------------------------------

def linear_actions(field: Field, n: int, *,
                   max_points: int = DEFAULT_MAX_POINTS) -> list:
    """Distinct point permutations of the shift-free maps, as numpy rows.

    Parameter tuples (scale, frob, matrix) are deduplicated by action; the
    expected collision is exactly (s, M) with (-s, -M).
    """
    orth = enumerate_orthogonal(field, n, max_points=max_points)
    zero = (0,) * n
    seen = {}
    for i in range(field.h):
        for a in range(1, field.q):
            for A in orth:
                arr = map_permutation_array(field, n, a, i, A, zero)
                seen.setdefault(arr.tobytes(), arr)
    return list(seen.values())


def translation_array(field: Field, n: int,
                      max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Row b = permutation induced by the translation x -> x + point(b)."""
    total = space.check_size(field, n, max_points)
    tb = space.bulk_tables(field)
    pts = space.point_matrix(field, n)
    cols = []
    for j in range(n):
        col = pts[:, j]
        cols.append(tb.add[col[None, :], col[:, None]])  # [b, k]
    stacked = np.stack(cols, axis=2).reshape(total * total, n)
    return _encode_points(field, stacked).reshape(total, total)


def semiaffine_group(field: Field, n: int, *,
                     max_points: int = DEFAULT_MAX_POINTS,
                     max_elements: int = 200_000) -> list:
    """Every point permutation induced by the map family, deduplicated by
    action and sorted lexicographically."""
    total = space.check_size(field, n, max_points)
    linear = linear_actions(field, n, max_points=max_points)
    if len(linear) * total > max_elements:
        raise TooLargeError(
            f"map family has {len(linear) * total} elements, over the bound "
            f"{max_elements}")
    trans = translation_array(field, n, max_points)
    blocks = [trans[:, l] for l in linear]     # rows: shift after linear part
    all_perms = np.concatenate(blocks, axis=0)
    uniq = np.unique(all_perms, axis=0)
    if uniq.shape[0] != len(linear) * total:
        # distinct linear actions stay distinct after composing with every
        # translation; a collision here means the dedup above was wrong
        raise AssertionError("unexpected action collision in group assembly")
    return [tuple(row) for row in uniq.tolist()]


# ---------------------------------------------------------------------------
# permutation utilities
# ---------------------------------------------------------------------------

def identity_perm(size: int) -> tuple:
    return tuple(range(size))


def compose_perms(f, g) -> tuple:
    """f after g: result[k] = f[g[k]]."""
    return tuple(f[x] for x in g)


def invert_perm(p) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def check_bijection(perm, size: int):
    if len(perm) != size:
        raise NotABijectionError(
            f"permutation has length {len(perm)}, expected {size}")
    if len(set(perm)) != size or min(perm) < 0 or max(perm) >= size:
        raise NotABijectionError("image list is not a bijection on the index range")


def batch_preserves(perms: np.ndarray, relation: np.ndarray,
                    chunk: int = 256) -> np.ndarray:
    """For each permutation row p, whether relation[p[u], p[v]] == relation[u, v]
    for all pairs; vectorised in chunks."""
    m = perms.shape[0]
    out = np.empty(m, dtype=bool)
    for start in range(0, m, chunk):
        block = perms[start:start + chunk]
        mapped = relation[block[:, :, None], block[:, None, :]]
        out[start:start + chunk] = (mapped == relation[None, :, :]).all(axis=(1, 2))
    return out


# ---------------------------------------------------------------------------
# recognition and the verification predicates
# ---------------------------------------------------------------------------

def recognize_semiaffine(field: Field, n: int, perm,
                         max_points: int = DEFAULT_MAX_POINTS):
    """Decompose a point permutation into map parameters, or return None.

    The shift is the image of the origin.  After removing it, the images of
    the basis vectors give a candidate matrix B for each Frobenius exponent
    (basis vectors are fixed by the p-th-power map); if the whole permutation
    agrees with x -> frobenius(x) @ B, then B B^T must be a scalar c times
    the identity and c must be a square a^2, yielding matrix = B / a.
    """
    total = space.check_size(field, n, max_points)
    check_bijection(perm, total)
    q = field.q
    shift = space.point_of_index(field, n, perm[0])
    neg_shift = tuple(field.neg(c) for c in shift)

    # centered[k] = index of (image of point k) - shift
    trans = map_permutation_array(field, n, 1, 0, mat_identity(n), neg_shift)
    centered = [int(trans[v]) for v in perm]

    B = tuple(space.point_of_index(field, n, centered[q ** j])
              for j in range(n))
    for i in range(field.h):
        candidate = map_permutation_array(field, n, 1, i, B, (0,) * n)
        if centered != candidate.tolist():
            continue
        prod = mat_mul(field, B, mat_transpose(B))
        c = prod[0][0]
        if c == 0 or any(prod[i0][j0] != (c if i0 == j0 else 0)
                         for i0 in range(n) for j0 in range(n)):
            continue
        root = next((a for a in range(1, q) if field.mul(a, a) == c), None)
        if root is None:
            continue
        inv_root = field.inv(root)
        A = mat_scale(field, inv_root, B)
        return normalize_map(field, SemiaffineMap(root, i, A, shift))
    return None


def preserves_integral(field: Field, n: int, perm,
                       max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """Whether the integral-distance relation is preserved in both directions."""
    total = space.check_size(field, n, max_points)
    check_bijection(perm, total)
    rel = space.integral_matrix(field, n, max_points)
    p = np.asarray(perm, dtype=np.int64)
    return bool(np.array_equal(rel[p][:, p], rel))


def satisfies_zero_iff(field: Field, n: int, perm,
                       max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """Whether distance zero is preserved in both directions over all pairs."""
    total = space.check_size(field, n, max_points)
    check_bijection(perm, total)
    rel = space.zero_distance_matrix(field, n, max_points)
    p = np.asarray(perm, dtype=np.int64)
    return bool(np.array_equal(rel[p][:, p], rel))


@functools.lru_cache(maxsize=None)
def _cone_index_sets(field: Field, n: int, max_points: int) -> tuple:
    pts = space.enumerate_points(field, n, max_points)
    out = []
    for vertex in pts:
        members = space.cone(field, n, vertex, max_points)
        out.append(frozenset(space.canonical_index(field, p) for p in members))
    return tuple(out)


def preserves_cones(field: Field, n: int, perm,
                    max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """Whether the image of every cone is the cone of the image vertex.

    Logically equivalent to satisfies_zero_iff; implemented independently via
    explicit cone sets so the two routes can be checked against each other.
    """
    total = space.check_size(field, n, max_points)
    check_bijection(perm, total)
    cones = _cone_index_sets(field, n, max_points)
    for vertex in range(total):
        image = {perm[x] for x in cones[vertex]}
        if image != cones[perm[vertex]]:
            return False
    return True


# ---------------------------------------------------------------------------
# permutation file format: one line of space-separated images; '#' comments
# ---------------------------------------------------------------------------

def write_permutation_file(path, perm):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(" ".join(str(v) for v in perm))
        fh.write("\n")


def read_permutation_file(path, expected_size=None) -> tuple:
    tokens = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens.extend(line.split())
    try:
        perm = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ValueError(f"malformed permutation file {path}: {exc}") from None
    size = expected_size if expected_size is not None else len(perm)
    check_bijection(perm, size)
    return perm
