"""Command line interface.

Exit codes: 0 success (verify: mesh is a constant-defect surface),
1 verified but not constant-defect, 2 bad input, parameters or files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CcpError
from .fileio import load_mesh, save_mesh
from .generators import CATALOG, FamilyRequest, generate_family
from .mesh import DEFAULT_TOLERANCES
from .surgery import DrillSpec, drill_repeat
from .verify import format_report, verify


def _parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise CcpError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = float(v)
    return out


def _defect_tolerance(args):
    if getattr(args, "tolerance", None) is not None:
        return args.tolerance
    env = os.environ.get("CCP_TOLERANCE")
    return float(env) if env else None


def cmd_generate(args) -> int:
    req = FamilyRequest(args.family, args.genus,
                        _parse_params(args.param), args.prefer_fewest)
    mesh = generate_family(req)
    if args.seed is not None:
        # reserved for randomized replays of the drill axis phase
        mesh = mesh.with_metadata()
        mesh.metadata.provenance.append(f"seed={args.seed}")
    save_mesh(mesh, args.output)
    print(f"wrote {args.output}: {mesh.n_vertices} vertices, "
          f"{mesh.n_edges} edges, {mesh.n_faces} faces", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    mesh = load_mesh(args.file)
    report = verify(mesh, DEFAULT_TOLERANCES,
                    defect_tolerance=_defect_tolerance(args))
    if args.json:
        print(json.dumps(report.to_dict(), indent=1))
    else:
        print(format_report(report))
    return 0 if report.verdict in ("ccp_embedded", "ccp_immersed") else 1


def cmd_catalog(_args) -> int:
    rows = [("family", "genus", "vertices", "orientable", "description")]
    rows += [(f.family, f.genus_range, f.vertex_count, f.orientable,
              f.description) for f in CATALOG]
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return 0


def cmd_drill(args) -> int:
    mesh = load_mesh(args.file)
    spec = DrillSpec(args.face_a, args.face_b, args.n,
                     radius=args.radius, phase=args.phase)
    out = drill_repeat(mesh, spec, args.k)
    save_mesh(out, args.output)
    print(f"wrote {args.output}: {out.n_vertices} vertices",
          file=sys.stderr)
    return 0


def cmd_export(args) -> int:
    mesh = load_mesh(args.file)
    save_mesh(mesh, args.output)
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ccp",
        description="Generate, modify and verify constant-curvature "
                    "polyhedra.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a catalog family")
    g.add_argument("--family", required=True,
                   choices=[f.family for f in CATALOG])
    g.add_argument("--genus", type=int)
    g.add_argument("--param", action="append", metavar="K=V")
    g.add_argument("--prefer-fewest", action="store_true",
                   help="dispatch to the fewest-vertex construction")
    g.add_argument("--seed", type=int,
                   help="reserved: randomized drill-phase replays")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="verify a mesh file")
    v.add_argument("file")
    v.add_argument("--tolerance", type=float,
                   help="defect-constancy tolerance in radians "
                        "(or env CCP_TOLERANCE)")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", help="list the family catalog")
    c.set_defaults(func=cmd_catalog)

    d = sub.add_parser("drill", help="tunnel a prism between two faces")
    d.add_argument("file")
    d.add_argument("--face-a", type=int, required=True)
    d.add_argument("--face-b", type=int, required=True)
    d.add_argument("--n", type=int, required=True, help="prism order")
    d.add_argument("--k", type=int, default=1, help="number of drills")
    d.add_argument("--radius", type=float)
    d.add_argument("--phase", type=float, default=0.0)
    d.add_argument("-o", "--output", required=True)
    d.set_defaults(func=cmd_drill)

    e = sub.add_parser("export", help="convert a mesh to OBJ/STL/JSON")
    e.add_argument("file")
    e.add_argument("-o", "--output", required=True)
    e.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CcpError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
