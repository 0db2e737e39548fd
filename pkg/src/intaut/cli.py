"""Command-line front end.

Every subcommand prints key/value pairs: aligned text for humans, or one
key<TAB>value pair per line with --output tsv for scripting.  Exit codes:
0 all checks in their predicted state, 1 a mathematical check failed,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import TooLargeError
from .field import Field, poly_str
from . import graph as graphmod
from . import orbits as orbitsmod
from . import space, transform
from .graph import Verdict
from .orbits import OrbitalStatus
from .space import SphereClass

USAGE_ERROR = 2
CHECK_FAILED = 1

# full-group cone checks fall back to a deterministic sample beyond this
CONE_CHECK_BUDGET = 500_000


class Reporter:
    def __init__(self, mode):
        self.mode = mode
        self.pairs = []

    def emit(self, key, value):
        if isinstance(value, bool):
            value = "yes" if value else "no"
        self.pairs.append((key, str(value)))

    def flush(self):
        if self.mode == "tsv":
            for k, v in self.pairs:
                print(f"{k}\t{v}")
        else:
            width = max((len(k) for k, _ in self.pairs), default=0)
            for k, v in self.pairs:
                print(f"{k:<{width}}  {v}")


class ConfigError(Exception):
    pass


def _parse_modulus(text):
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ConfigError(f"modulus must be a comma-separated integer list: {text!r}")


def _build_field(args) -> Field:
    try:
        modulus = _parse_modulus(args.modulus) if args.modulus else None
        return Field(args.p, args.h, modulus)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _common_flags(sub, with_n=True):
    sub.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    sub.add_argument("--h", type=int, default=1, help="extension degree")
    if with_n:
        sub.add_argument("--n", type=int, required=True, help="space dimension")
    sub.add_argument("--modulus", type=str, default=None,
                     help="modulus coefficients, constant term first, e.g. 1,0,1")
    sub.add_argument("--max-points", type=int, default=space.DEFAULT_MAX_POINTS,
                     help="enumeration bound on q^n")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker count (computations are deterministic)")
    sub.add_argument("--output", choices=("text", "tsv"), default="text")


def _validate_common(args, min_n=None):
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    if args.max_points < 1:
        raise ConfigError("--max-points must be >= 1")
    if min_n is not None and getattr(args, "n", None) is not None and args.n < min_n:
        raise ConfigError(f"--n must be >= {min_n} for this subcommand")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_field_info(args) -> int:
    _validate_common(args)
    field = _build_field(args)
    rep = Reporter(args.output)
    rep.emit("p", field.p)
    rep.emit("h", field.h)
    rep.emit("q", field.q)
    rep.emit("modulus", poly_str(field.modulus))
    squares = [a for a in field.elements() if field.is_square(a)]
    rep.emit("square_count", len(squares))
    rep.emit("nonsquare_count", field.q - len(squares))
    if field.q <= 128:
        rep.emit("squares", " ".join(map(str, squares)))
    rep.flush()
    return 0


def cmd_spheres(args) -> int:
    _validate_common(args, min_n=1)
    field = _build_field(args)
    formula = space.sphere_counts_formula(field, args.n)
    enumerated = space.sphere_counts_enumerated(field, args.n, args.max_points)
    rep = Reporter(args.output)
    rep.emit("q", field.q)
    rep.emit("n", args.n)
    rep.emit("eps", formula.eps)
    rep.emit("isotropic_formula", formula.isotropic)
    rep.emit("square_formula", formula.square)
    rep.emit("nonsquare_formula", formula.nonsquare)
    rep.emit("isotropic_enumerated", enumerated.isotropic)
    rep.emit("square_enumerated", enumerated.square)
    rep.emit("nonsquare_enumerated", enumerated.nonsquare)
    match = formula == enumerated
    rep.emit("verdict", "MATCH" if match else "MISMATCH")
    rep.flush()
    return 0 if match else CHECK_FAILED


def _orbital_report(rep, field, n, max_points):
    statuses = {}
    for cls in (SphereClass.ISOTROPIC, SphereClass.SQUARE, SphereClass.NONSQUARE):
        status = orbitsmod.orbital_connected(field, n, cls, max_points)
        statuses[cls] = status
        rep.emit(f"orbital_{cls.value}", status.value)
    return statuses


def cmd_verify(args) -> int:
    _validate_common(args, min_n=2)
    field = _build_field(args)
    n = args.n
    rep = Reporter(args.output)
    rep.emit("q", field.q)
    rep.emit("n", n)
    gates = []

    formula = space.sphere_counts_formula(field, n)
    enumerated = space.sphere_counts_enumerated(field, n, args.max_points)
    sphere_ok = formula == enumerated
    rep.emit("sphere_match", sphere_ok)
    gates.append(sphere_ok)

    morb = orbitsmod.m_orbits(field, n, args.max_points)
    part = orbitsmod.classify_partition(field, n, args.max_points)
    morb_ok = morb.as_sets() == part.as_sets()
    rep.emit("m_orbits_match", morb_ok)
    gates.append(morb_ok)

    statuses = _orbital_report(rep, field, n, args.max_points)
    if n >= 3:
        gates.append(all(s is OrbitalStatus.CONNECTED for s in statuses.values()))

    g = graphmod.build_integral_graph(field, n, args.max_points)
    if args.corrupt:
        g = graphmod.flip_edge(g, 0, 1)
        rep.emit("corrupted", True)
    report = graphmod.verify_classification(field, n, graph=g,
                                            max_points=args.max_points)
    rep.emit("aut_order", report.aut_order)
    rep.emit("semiaffine_order", report.semiaffine_order)
    rep.emit("containment", report.containment_ok)
    rep.emit("verdict", report.verdict.value)
    expected = graphmod.expected_verdict(field, n)
    rep.emit("expected_verdict", expected.value)
    gates.append(report.verdict is expected)
    if report.verdict is Verdict.STRICTLY_LARGER:
        rep.emit("aut_to_semiaffine_ratio",
                 f"{report.aut_order}/{report.semiaffine_order}")
        if report.extra_example is not None:
            rep.emit("extra_automorphism",
                     " ".join(map(str, report.extra_example)))

    if report.verdict is not Verdict.VIOLATION:
        elements = orbitsmod.close_group_array(
            report.aut_generators, g.num_vertices)
        rep.emit("group_elements", len(elements))

        zero_rel = space.zero_distance_matrix(field, n, args.max_points)
        zero_ok = transform.batch_preserves(elements, zero_rel)
        zero_failures = int((~zero_ok).sum())
        rep.emit("zero_iff_checked", len(elements))
        rep.emit("zero_iff_failures", zero_failures)

        if len(elements) * g.num_vertices <= CONE_CHECK_BUDGET:
            cone_sample = elements
        else:
            cone_sample = elements[:500]
        cone_failures = sum(
            not transform.preserves_cones(field, n, tuple(perm.tolist()),
                                          args.max_points)
            for perm in cone_sample)
        rep.emit("cone_checked", len(cone_sample))
        rep.emit("cone_failures", cone_failures)

        stab = orbitsmod.stabilizer_orbits(elements, 0)
        subdegrees = sorted(len(o) for o in stab.orbits if 0 not in o)
        rep.emit("rank", stab.rank)
        rep.emit("subdegrees", " ".join(map(str, subdegrees)))
        if n >= 3 or field.q % 4 == 3:
            gates.append(zero_failures == 0 and cone_failures == 0)
        if n >= 3:
            expected_sub = sorted(x for x in (formula.isotropic, formula.square,
                                              formula.nonsquare) if x)
            gates.append(stab.rank == len(expected_sub) + 1
                         and subdegrees == expected_sub)

    ok = all(gates)
    rep.emit("status", "ok" if ok else "fail")
    rep.flush()
    return 0 if ok else CHECK_FAILED


def cmd_recognize(args) -> int:
    _validate_common(args, min_n=1)
    field = _build_field(args)
    n = args.n
    total = field.q ** n
    try:
        perm = transform.read_permutation_file(args.perm_file, total)
    except (OSError, ValueError) as exc:
        # NotABijectionError is a ValueError: malformed input, not a math failure
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    result = transform.recognize_semiaffine(field, n, perm, args.max_points)
    rep = Reporter(args.output)
    if result is None:
        rep.emit("result", "NOT-SEMIAFFINE")
        rep.flush()
        return CHECK_FAILED
    rep.emit("result", "semiaffine")
    rep.emit("scale", result.scale)
    rep.emit("frob", result.frob)
    rep.emit("matrix", "; ".join(" ".join(map(str, row)) for row in result.matrix))
    rep.emit("shift", " ".join(map(str, result.shift)))
    rep.flush()
    return 0


def cmd_export(args) -> int:
    _validate_common(args, min_n=1)
    field = _build_field(args)
    try:
        g = graphmod.build_integral_graph(field, args.n, args.max_points)
        if args.format == "graph6":
            payload = graphmod.graph6_bytes(g)
        else:
            payload = graphmod.dimacs_text(g).encode("ascii")
    except (TooLargeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    with open(args.out, "wb") as fh:
        fh.write(payload)
    rep = Reporter(args.output)
    rep.emit("format", args.format)
    rep.emit("vertices", g.num_vertices)
    rep.emit("edges", g.num_edges)
    rep.emit("path", args.out)
    rep.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intaut",
        description="Integral-distance geometry over GF(p^h): sphere counts, "
                    "symmetry groups and their verification.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_info = subs.add_parser("field-info", help="field parameters and square census")
    _common_flags(p_info, with_n=False)
    p_info.set_defaults(func=cmd_field_info)

    p_sph = subs.add_parser("spheres", help="norm-class sizes: formula vs enumeration")
    _common_flags(p_sph)
    p_sph.set_defaults(func=cmd_spheres)

    p_ver = subs.add_parser("verify", help="full verification suite for one instance")
    _common_flags(p_ver)
    p_ver.add_argument("--corrupt", action="store_true",
                       help="test hook: toggle one adjacency bit before verifying")
    p_ver.set_defaults(func=cmd_verify)

    p_rec = subs.add_parser("recognize", help="decompose a permutation file")
    _common_flags(p_rec)
    p_rec.add_argument("--perm-file", required=True, help="permutation file path")
    p_rec.set_defaults(func=cmd_recognize)

    p_exp = subs.add_parser("export", help="write the graph in graph6 or DIMACS form")
    _common_flags(p_exp)
    p_exp.add_argument("--format", choices=("graph6", "dimacs"), required=True)
    p_exp.add_argument("--out", required=True, help="output file path")
    p_exp.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
