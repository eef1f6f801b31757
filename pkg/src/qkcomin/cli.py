"""Command-line front end.

Commands: product, dist, neighborhood, table, verify, cache.  All JSON
output is canonical (fixed key order, compact separators) so identical
invocations produce byte-identical output.  Exit codes: 0 success, 1
verification violations, 2 usage or parse errors, 3 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from qkcomin import cache as diskcache
from qkcomin.quantum import (
    Space,
    curve_neighborhood_index,
    dist,
    get_space,
    structure_table,
    verify_space,
)
from qkcomin.weyl import format_partition, parse_partition

DEFAULT_CEILING_NONEQUIVARIANT = 8
DEFAULT_CEILING_EQUIVARIANT = 5

_SPACE_RE = re.compile(r"^gr:(\d+),(\d+)$")


class UsageError(ValueError):
    pass


def _parse_space(text: str, equivariant: bool, use_cache: bool) -> Space:
    m = _SPACE_RE.match(text.strip())
    if not m:
        raise UsageError(f"bad space {text!r}; expected gr:m,n")
    mm, nn = int(m.group(1)), int(m.group(2))
    if not 0 < mm < nn:
        raise UsageError(f"bad space {text!r}; need 0 < m < n")
    if equivariant:
        ceiling = int(os.environ.get("QK_CEILING_EQUIVARIANT", DEFAULT_CEILING_EQUIVARIANT))
    else:
        ceiling = int(os.environ.get("QK_CEILING_NONEQUIVARIANT", DEFAULT_CEILING_NONEQUIVARIANT))
    if nn > ceiling:
        raise UsageError(
            f"space {text} exceeds the configured ceiling n <= {ceiling} "
            f"({'equivariant' if equivariant else 'non-equivariant'})"
        )
    return get_space(mm, nn, equivariant, use_cache)


def _parse_box_partition(space: Space, text: str, name: str) -> tuple:
    lam = parse_partition(text)
    if len(lam) > space.m or (lam and lam[0] > space.n - space.m):
        raise UsageError(
            f"--{name} {text!r} does not fit in the {space.m}x{space.n - space.m} box"
        )
    return lam


def _emit(doc, out_path):
    text = json.dumps(doc, separators=(",", ":")) + "\n"
    _write_text(text, out_path)


def _write_text(text: str, out_path):
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            raise SystemExit(3)
    else:
        sys.stdout.write(text)


def _sorted_pairs(space: Space) -> list:
    parts = sorted(space.partitions, key=lambda lam: (sum(lam), lam))
    return [(u, v) for u in parts for v in parts]


def _pair_doc(space: Space, u: tuple, v: tuple, v_basis: str) -> dict:
    return structure_table(space, u, v, v_basis).to_json_dict()


_WORKER_ARGS = None


def _worker_init(m, n, equivariant, use_cache, cache_dir):
    global _WORKER_ARGS
    if cache_dir:
        os.environ["QK_CACHE_DIR"] = cache_dir
    _WORKER_ARGS = (m, n, equivariant, use_cache)


def _worker_pair(args):
    u, v, v_basis = args
    m, n, equivariant, use_cache = _WORKER_ARGS
    space = get_space(m, n, equivariant, use_cache)
    return u, v, _pair_doc(space, u, v, v_basis)


def cmd_product(args) -> int:
    space = _parse_space(args.space, args.equivariant, not args.no_cache)
    u = _parse_box_partition(space, args.u, "u")
    v = _parse_box_partition(space, args.v, "v")
    _emit(_pair_doc(space, u, v, args.v_basis), args.out)
    return 0


def cmd_dist(args) -> int:
    space = _parse_space(args.space, args.equivariant, not args.no_cache)
    u = _parse_box_partition(space, args.u, "u")
    v = _parse_box_partition(space, args.v, "v")
    _emit({"dist": dist(space, u, v)}, args.out)
    return 0


def cmd_neighborhood(args) -> int:
    space = _parse_space(args.space, args.equivariant, not args.no_cache)
    w = _parse_box_partition(space, args.w, "w")
    if args.d < 0:
        raise UsageError("--d must be non-negative")
    lam = curve_neighborhood_index(space, w, args.d)
    _emit({"w_minus_d": format_partition(lam)}, args.out)
    return 0


def cmd_table(args) -> int:
    space = _parse_space(args.space, args.equivariant, not args.no_cache)
    pairs = _sorted_pairs(space)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if jobs > 1 and len(pairs) > 8:
        space.model.table("plain")  # warm the shared disk cache first
        space.model.table("opposite")
        from concurrent.futures import ProcessPoolExecutor

        work = [(u, v, args.v_basis) for u, v in pairs]
        docs = {}
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_worker_init,
            initargs=(
                space.m,
                space.n,
                space.equivariant,
                space.use_cache,
                os.environ.get("QK_CACHE_DIR"),
            ),
        ) as pool:
            for u, v, doc in pool.map(_worker_pair, work, chunksize=8):
                docs[(u, v)] = doc
        lines = [json.dumps(docs[p], separators=(",", ":")) for p in pairs]
    else:
        lines = [
            json.dumps(_pair_doc(space, u, v, args.v_basis), separators=(",", ":"))
            for u, v in pairs
        ]
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    space = _parse_space(args.space, args.equivariant, not args.no_cache)
    checks = tuple(args.checks.split(",")) if args.checks else ("sum", "hom", "mindeg")
    unknown = set(checks) - {"sum", "hom", "mindeg"}
    if unknown:
        raise UsageError(f"unknown checks: {','.join(sorted(unknown))}")
    report = verify_space(space, checks=checks, oracle=args.oracle)
    for line in report.violations:
        sys.stdout.write(line + "\n")
    if report.passed:
        sys.stdout.write(f"PASS pairs={report.pairs}\n")
        return 0
    sys.stdout.write(f"FAIL pairs={report.pairs} violations={len(report.violations)}\n")
    return 1


def cmd_cache(args) -> int:
    if args.action == "path":
        sys.stdout.write(str(diskcache.cache_dir()) + "\n")
    elif args.action == "stats":
        _emit(diskcache.stats(), None)
    elif args.action == "clear":
        _emit({"removed": diskcache.clear()}, None)
    return 0


def _add_common(p, partitions=()):
    p.add_argument("--space", required=True, help="gr:m,n")
    p.add_argument("--equivariant", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=None)
    for name in partitions:
        p.add_argument(f"--{name}", required=True, help="partition, e.g. '2,1' ('' for empty)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qk",
        description="Exact (equivariant) quantum K-theory of Grassmannians.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", help="structure table of one product")
    _add_common(p, ("u", "v"))
    p.add_argument("--v-basis", choices=("plain", "opposite"), default="plain")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("dist", help="minimal connecting curve degree")
    _add_common(p, ("u", "v"))
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("neighborhood", help="curve neighborhood index w(-d)")
    _add_common(p, ("w",))
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_neighborhood)

    p = sub.add_parser("table", help="tables for all pairs")
    _add_common(p)
    p.add_argument("--v-basis", choices=("plain", "opposite"), default="plain")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the identity checks")
    _add_common(p)
    p.add_argument("--checks", default=None, help="comma list of sum,hom,mindeg")
    p.add_argument("--oracle", action="store_true", help="enable moment-graph cross-checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", help="cache maintenance")
    p.add_argument("action", choices=("path", "clear", "stats"))
    p.set_defaults(func=cmd_cache)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
