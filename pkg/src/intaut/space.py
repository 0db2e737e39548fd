"""Points of the n-dimensional affine space over GF(q), the squared-distance
form, the square/non-square classification of vectors, and cones.

A point is a tuple of n element indices; its canonical index is the mixed
radix value sum(x[j] * q**j), so coordinate 0 is least significant.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .errors import TooLargeError
from .field import Field

DEFAULT_MAX_POINTS = 100_000


class SphereClass(enum.Enum):
    """Classification of a vector by its squared norm."""

    ORIGIN = "origin"
    ISOTROPIC = "isotropic"          # nonzero, norm 0
    SQUARE = "square"                # norm a nonzero square
    NONSQUARE = "nonsquare"          # norm a non-square


@dataclass(frozen=True)
class SphereCounts:
    """Sizes of the three nonzero norm classes; eps is 0 iff q = 1 mod 4."""

    isotropic: int
    square: int
    nonsquare: int
    eps: int


def num_points(field: Field, n: int) -> int:
    return field.q ** n


def check_size(field: Field, n: int, max_points: int = DEFAULT_MAX_POINTS):
    total = num_points(field, n)
    if total > max_points:
        raise TooLargeError(
            f"q^n = {total} exceeds the enumeration bound {max_points}")
    return total


def point_of_index(field: Field, n: int, k: int) -> tuple:
    if not 0 <= k < field.q ** n:
        raise ValueError(f"point index {k} out of range")
    q = field.q
    coords = []
    for _ in range(n):
        coords.append(k % q)
        k //= q
    return tuple(coords)


def canonical_index(field: Field, point) -> int:
    q = field.q
    k = 0
    for x in reversed(point):
        if not 0 <= x < q:
            raise ValueError(f"coordinate {x} out of range for GF({q})")
        k = k * q + x
    return k


def enumerate_points(field: Field, n: int, max_points: int = DEFAULT_MAX_POINTS):
    """All points in canonical index order."""
    check_size(field, n, max_points)
    q = field.q
    if n == 1:
        return [(x,) for x in range(q)]
    pts = [()]
    for _ in range(n):
        pts = [p + (x,) for x in range(q) for p in pts]
    return pts


def vec_sub(field: Field, x, y) -> tuple:
    _check_dims(x, y)
    return tuple(field.sub(a, b) for a, b in zip(x, y))


def vec_add(field: Field, x, y) -> tuple:
    _check_dims(x, y)
    return tuple(field.add(a, b) for a, b in zip(x, y))


def _check_dims(x, y):
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")


def norm(field: Field, v) -> int:
    """Sum of squared coordinates."""
    acc = 0
    for x in v:
        acc = field.add(acc, field.mul(x, x))
    return acc


def distance(field: Field, x, y) -> int:
    """Squared Euclidean distance sum((x_i - y_i)^2), a field element."""
    _check_dims(x, y)
    acc = 0
    for a, b in zip(x, y):
        d = field.sub(a, b)
        acc = field.add(acc, field.mul(d, d))
    return acc


def is_integral(field: Field, x, y) -> bool:
    """True iff the squared distance is a square (zero included)."""
    return field.is_square(distance(field, x, y))


def classify(field: Field, v) -> SphereClass:
    if all(x == 0 for x in v):
        return SphereClass.ORIGIN
    w = norm(field, v)
    if w == 0:
        return SphereClass.ISOTROPIC
    if field.is_square(w):
        return SphereClass.SQUARE
    return SphereClass.NONSQUARE


def sphere_counts_enumerated(field: Field, n: int,
                             max_points: int = DEFAULT_MAX_POINTS) -> SphereCounts:
    """Exact class sizes by classifying every point; the brute-force oracle."""
    check_size(field, n, max_points)
    norms = _norm_array(field, n)
    tb = bulk_tables(field)
    zero_norms = int(np.count_nonzero(norms == 0))
    squares = int(np.count_nonzero(tb.is_square[norms]))
    return SphereCounts(isotropic=zero_norms - 1,  # origin excluded
                        square=squares - zero_norms,
                        nonsquare=field.q ** n - squares,
                        eps=0 if field.q % 4 == 1 else 1)


def sphere_counts_formula(field: Field, n: int) -> SphereCounts:
    """Closed-form class sizes, split by the parity of n; exact integers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = field.q
    eps = 0 if q % 4 == 1 else 1

    def sgn(k):
        return -1 if k & 1 else 1

    if n % 2:
        s0 = q ** (n - 1) - 1
        t_hi = sgn(eps * ((n + 3) // 2)) * q ** ((n + 1) // 2)
        t_lo = sgn(eps * ((n - 1) // 2)) * q ** ((n - 1) // 2)
        splus = (q ** n - q ** (n - 1) + t_hi - t_lo) // 2
        sminus = (q ** n - q ** (n - 1) - t_hi + t_lo) // 2
    else:
        s = sgn(eps * (n // 2))
        s0 = q ** (n - 1) + s * q ** (n // 2) - s * q ** ((n - 2) // 2) - 1
        half = (q ** n - q ** (n - 1) - s * q ** (n // 2)
                + s * q ** ((n - 2) // 2)) // 2
        splus = sminus = half
    return SphereCounts(s0, splus, sminus, eps)


def cone(field: Field, n: int, vertex,
         max_points: int = DEFAULT_MAX_POINTS) -> frozenset:
    """All points at squared distance zero from the vertex (vertex included)."""
    check_size(field, n, max_points)
    if len(vertex) != n:
        raise ValueError(f"vertex has dimension {len(vertex)}, expected {n}")
    out = []
    for p in enumerate_points(field, n, max_points):
        if distance(field, p, vertex) == 0:
            out.append(p)
    return frozenset(out)


# ---------------------------------------------------------------------------
# bulk views used by the permutation and graph machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BulkTables:
    """Field operation tables as numpy arrays, for vectorised gather loops."""

    add: np.ndarray        # q x q
    mul: np.ndarray        # q x q
    neg: np.ndarray        # q
    square_of: np.ndarray  # q, square_of[a] = a*a
    is_square: np.ndarray  # q, bool
    frob: np.ndarray       # h x q


@functools.lru_cache(maxsize=None)
def bulk_tables(field: Field) -> BulkTables:
    q = field.q
    add = np.array([[field.add(a, b) for b in range(q)] for a in range(q)],
                   dtype=np.int32)
    mul = np.array([[field.mul(a, b) for b in range(q)] for a in range(q)],
                   dtype=np.int32)
    neg = np.array([field.neg(a) for a in range(q)], dtype=np.int32)
    square_of = np.array([field.mul(a, a) for a in range(q)], dtype=np.int32)
    sq = np.array([field.is_square(a) for a in range(q)], dtype=bool)
    frob = np.array([[field.frobenius(a, i) for a in range(q)]
                     for i in range(field.h)], dtype=np.int32)
    return BulkTables(add, mul, neg, square_of, sq, frob)


@functools.lru_cache(maxsize=None)
def point_matrix(field: Field, n: int) -> np.ndarray:
    """q^n x n array of coordinates, row k = point_of_index(k)."""
    q = field.q
    total = q ** n
    ks = np.arange(total, dtype=np.int64)
    cols = [(ks // q ** j) % q for j in range(n)]
    return np.stack(cols, axis=1).astype(np.int32)


def _norm_array(field: Field, n: int) -> np.ndarray:
    """norms[k] = sum of squared coordinates of point k."""
    tb = bulk_tables(field)
    pts = point_matrix(field, n)
    acc = tb.square_of[pts[:, 0]]
    for j in range(1, n):
        acc = tb.add[acc, tb.square_of[pts[:, j]]]
    return acc


@functools.lru_cache(maxsize=None)
def distance_matrix(field: Field, n: int,
                    max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """q^n x q^n array of squared distances between all point pairs."""
    total = check_size(field, n, max_points)
    if total * total > 4_000_000:
        raise TooLargeError(
            f"pairwise table with {total}^2 entries exceeds the bulk bound")
    tb = bulk_tables(field)
    pts = point_matrix(field, n)
    neg = tb.neg
    acc = None
    for j in range(n):
        col = pts[:, j]
        diff = tb.add[col[:, None], neg[col][None, :]]
        term = tb.square_of[diff]
        acc = term if acc is None else tb.add[acc, term]
    return acc


def integral_matrix(field: Field, n: int,
                    max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Boolean matrix of the integral-distance relation (diagonal True)."""
    tb = bulk_tables(field)
    return tb.is_square[distance_matrix(field, n, max_points)]


def zero_distance_matrix(field: Field, n: int,
                         max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Boolean matrix of the distance-zero relation (diagonal True)."""
    return distance_matrix(field, n, max_points) == 0


@functools.lru_cache(maxsize=None)
def class_of_point(field: Field, n: int,
                   max_points: int = DEFAULT_MAX_POINTS) -> tuple:
    """SphereClass of every point, indexed by canonical point index."""
    check_size(field, n, max_points)
    norms = _norm_array(field, n)
    tb = bulk_tables(field)
    out = []
    for k, w in enumerate(norms.tolist()):
        if k == 0:
            out.append(SphereClass.ORIGIN)
        elif w == 0:
            out.append(SphereClass.ISOTROPIC)
        elif tb.is_square[w]:
            out.append(SphereClass.SQUARE)
        else:
            out.append(SphereClass.NONSQUARE)
    return tuple(out)
