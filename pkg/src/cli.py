"""
CLI entrypoint: tiling export, verification runs, quotient categories, category dumps.
Usage:
  python -m src.cli tessellate --n 3 --format off
  python -m src.cli verify --n 3
  python -m src.cli verify --max-n 5 --report out/report.json
  python -m src.cli quotient --n 2 --sublattice "1,1;-1,2"
  python -m src.cli export exterior --n 3

Exit codes: 0 pass, 1 mismatch or user error, 2 internal error.
"""
import argparse
import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INTERNAL = 2

EXPORT_KINDS = ("exterior", "coamoeba", "cover", "delta", "cones")

LOGGER = logging.getLogger("src.cli")


def _parse_sublattice(text: str) -> list[list[int]]:
    try:
        return [[int(c) for c in vector.split(",")] for vector in text.split(";") if vector.strip()]
    except ValueError as e:
        from src.errors import ConfigError

        raise ConfigError(f"Cannot parse sublattice {text!r}; expected 'a,b;c,d'") from e


def _check_n(n: int) -> None:
    from src.errors import ConfigError

    if n < 1:
        raise ConfigError(f"n must be at least 1, got {n}")


def _output(args: argparse.Namespace, settings, default_name: str) -> Path:
    return Path(args.output) if args.output else Path(settings.output_dir) / default_name


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="coamoeba_engine")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--config", default=None, help="Engine YAML (default config/engine.yaml)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    tess = subparsers.add_parser("tessellate", help="Export the permutohedral tiling of the torus")
    tess.add_argument("--n", type=int, required=True)
    tess.add_argument("--format", choices=("off", "obj", "json"), default="json")
    tess.add_argument("--cover-patch", type=int, nargs="?", const=1, default=None, metavar="RADIUS",
                      help="Export a patch of the universal cover instead of the fundamental cells")
    tess.add_argument("--output", default=None, help="Output file")

    ver = subparsers.add_parser("verify", help="Verify the coamoeba and cone categories against the exterior category")
    ver.add_argument("--n", type=int, default=None, help="Single n (default: verify_min_n..max_n)")
    ver.add_argument("--max-n", type=int, default=None)
    ver.add_argument("--window-radius", type=int, default=None)
    ver.add_argument("--report", default=None, help="JSON report path")
    ver.add_argument("--inject-sign-flip", action="store_true", help="Corrupt one structure constant (test hook)")
    ver.add_argument("--samples", type=int, default=None, help="Random points for the tiling check (0 skips it)")

    quo = subparsers.add_parser("quotient", help="Category of the quotient of the cover by a sublattice")
    quo.add_argument("--n", type=int, required=True)
    quo.add_argument("--sublattice", default=None,
                     help="Basis in lambda-coordinates, 'v1;v2;...'; default: the finite-subgroup sublattice")
    quo.add_argument("--output", default=None)

    exp = subparsers.add_parser("export", help="Dump a category as JSON")
    exp.add_argument("kind", choices=EXPORT_KINDS)
    exp.add_argument("--n", type=int, required=True)
    exp.add_argument("--radius", type=int, default=None,
                     help="Cover window radius (cover, default 1) or cone window radius (delta, cones, default n)")
    exp.add_argument("--output", default=None)
    return parser


def cmd_tessellate(args: argparse.Namespace, settings) -> int:
    from src.geometry.mesh import export_mesh
    from src.geometry.permutohedron import build_tessellation

    _check_n(args.n)
    t = build_tessellation(args.n)
    suffix = "_cover" if args.cover_patch is not None else ""
    path = _output(args, settings, f"tessellation_n{args.n}{suffix}.{args.format}")
    result = export_mesh(t, args.format, path, cover_patch=args.cover_patch)
    print(result, flush=True)
    print(f"Wrote {path}", flush=True)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings) -> int:
    from src.mirror.verify import run_verification
    from src.serialization import verification_run_dump, write_json

    reports = []
    for n in settings.verify_range(args.n, args.max_n):
        report = run_verification(
            n,
            radius=settings.radius_for(n),
            inject_flip=args.inject_sign_flip,
            heartbeat_interval_sec=settings.heartbeat_interval_sec,
            sample_count=settings.sample_count,
            sample_seed=settings.sample_seed,
        )
        reports.append(report)
        print(f"n={n}: {report.verdict} ({sum(c.cases for c in report.checks)} cases)", flush=True)
        for m in report.mismatches[:10]:
            print(f"  [{m.check}] {m.key}: expected {m.expected}, got {m.actual}", flush=True)
        if len(report.mismatches) > 10:
            print(f"  ... {len(report.mismatches) - 10} more", flush=True)
    path = Path(args.report) if args.report else Path(settings.output_dir) / "verify_report.json"
    dump = verification_run_dump(reports)
    write_json(path, dump, settings.schema_version)
    print(f"Verdict: {dump.verdict}. Report: {path}", flush=True)
    return EXIT_OK if dump.verdict == "pass" else EXIT_FAIL


def cmd_quotient(args: argparse.Namespace, settings) -> int:
    from src.geometry.coamoeba import build_coamoeba, finite_subgroup_sublattice, quotient_by_sublattice
    from src.serialization import category_dump, write_json

    _check_n(args.n)
    basis = _parse_sublattice(args.sublattice) if args.sublattice else finite_subgroup_sublattice(args.n)
    cat = quotient_by_sublattice(build_coamoeba(args.n), basis)
    path = _output(args, settings, f"quotient_n{args.n}.json")
    write_json(path, category_dump(cat, "quotient", args.n), settings.schema_version)
    print(f"objects={len(cat.objects)}", flush=True)
    for (x, y), dim in sorted(cat.hom_dims().items()):
        if x != y:
            print(f"  hom({x}, {y}) = {dim}", flush=True)
    print(f"Wrote {path}", flush=True)
    return EXIT_OK


def cmd_export(args: argparse.Namespace, settings) -> int:
    from src.geometry.coamoeba import CoverWindow, build_coamoeba, category_of, cover_category
    from src.mirror.beilinson import build_exterior_category
    from src.mirror.verify import build_cone_system, build_delta_category, window_for
    from src.serialization import (
        category_dump,
        cohomology_table_dump,
        cover_category_dump,
        write_json,
    )

    n = args.n
    _check_n(n)
    if args.kind in ("delta", "cones"):
        radius = args.radius if args.radius is not None else settings.radius_for(n)
    else:
        radius = args.radius if args.radius is not None else 1
    if args.kind == "exterior":
        dump = category_dump(build_exterior_category(n), "exterior", n)
    elif args.kind == "coamoeba":
        dump = category_dump(category_of(build_coamoeba(n)), "coamoeba", n)
    elif args.kind == "cover":
        dump = cover_category_dump(cover_category(build_coamoeba(n), CoverWindow.around_origin(n, radius)), n)
    elif args.kind == "delta":
        dump = category_dump(build_delta_category(n, window_for(n, radius)), "delta", n)
    else:
        dump = cohomology_table_dump(build_cone_system(n, radius))
    path = _output(args, settings, f"{args.kind}_n{n}.json")
    write_json(path, dump, settings.schema_version)
    print(f"Wrote {path}", flush=True)
    return EXIT_OK


COMMANDS = {
    "tessellate": cmd_tessellate,
    "verify": cmd_verify,
    "quotient": cmd_quotient,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    # Ensure src is importable when run as module
    project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
    if project_root not in sys.path:
        sys.path.insert(0, project_root)
    load_dotenv()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    from src.errors import CoamoebaError
    from src.settings import load_settings

    try:
        overrides = {
            "max_n": getattr(args, "max_n", None),
            "window_radius": getattr(args, "window_radius", None),
            "sample_count": getattr(args, "samples", None),
        }
        settings = load_settings(overrides, config_path=args.config)
        return COMMANDS[args.command](args, settings)
    except CoamoebaError as e:
        print(f"Error: {e}", file=sys.stderr, flush=True)
        return EXIT_FAIL
    except Exception:
        LOGGER.exception("Internal error in %s", args.command)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
