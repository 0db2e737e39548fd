"""Integral-distance geometry over odd-order finite fields.

Exact arithmetic in GF(p^h), the squared-distance relation on affine
points, the group of distance-compatible affine-semilinear maps, orbit
analysis, and an independent graph-automorphism engine that verifies the
two group computations against each other.
"""

from .errors import (InternalInconsistencyError, NotABijectionError,
                     NotAGroupError, TooLargeError)
from .field import Field, make_field, is_irreducible, least_irreducible, poly_str
from .space import (SphereClass, SphereCounts, DEFAULT_MAX_POINTS,
                    canonical_index, point_of_index, enumerate_points,
                    distance, norm, is_integral, classify,
                    sphere_counts_enumerated, sphere_counts_formula, cone)
from .transform import (SemiaffineMap, identity_map, normalize_map, apply_map,
                        to_permutation, enumerate_orthogonal,
                        orthogonal_bruteforce, is_orthogonal, semiaffine_group,
                        recognize_semiaffine, preserves_integral,
                        satisfies_zero_iff, preserves_cones,
                        compose_perms, invert_perm, identity_perm,
                        read_permutation_file, write_permutation_file)
from .orbits import (OrbitDecomposition, OrbitalStatus, UnionFind,
                     orbits_under, classify_partition, m_orbits,
                     stabilizer_orbits, orbital_connected, orbital_neighbors,
                     close_permutation_group, reflection_matrix)
from .graph import (IntegralGraph, AutGroupResult, ClassificationReport,
                    Verdict, build_integral_graph, complement_graph, flip_edge,
                    refine_coloring, automorphism_group, verify_classification,
                    expected_verdict, graph6_bytes, parse_graph6,
                    dimacs_text, parse_dimacs)

__version__ = "0.1.0"
