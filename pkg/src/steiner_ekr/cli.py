"""Command-line front end.

Verbs: generate, validate, enumerate, classify, onan, max-size (design verbs),
bound, sweep (parameter verbs).  Exit status 0 on success, 1 on a domain
error (diagnostic on stderr), 2 on a usage error.  Identical argv always
produces byte-identical output, for any worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds, designs
from .bounds import BoundReport, _render
from .designs import Design, load_design, save_design
from .ekr import (
    classification_report,
    enumerate_maximal_ekr,
    find_onan,
    max_ekr_size,
    maximal_family_sizes,
)
from .errors import DomainError

_BUILTINS = {
    "projective": designs.projective_plane,
    "affine": designs.affine_plane,
    "pg3": designs.pg3_line_design,
    "unital": designs.hermitian_unital,
    "hermitian-unital": designs.hermitian_unital,
    "sts13": designs.sts13,
    "kgraph": designs.complete_graph,
    "complete": designs.complete_graph,
}


def _parse_design(spec: str) -> Design:
    if spec.startswith("file:"):
        return load_design(spec[5:])
    name, _, arg = spec.partition(":")
    maker = _BUILTINS.get(name)
    if maker is None:
        known = ", ".join(sorted(set(_BUILTINS)))
        raise DomainError(f"unknown design '{name}'; expected one of {known}, or file:PATH")
    if not arg:
        if name == "sts13":
            arg = "1"
        else:
            raise DomainError(f"design '{name}' needs a parameter, e.g. {name}:3")
    try:
        value = int(arg)
    except ValueError:
        raise DomainError(f"design parameter {arg!r} is not an integer") from None
    return maker(value)


def _summary(design: Design, spec: str) -> dict:
    p = design.params
    return {"source": spec, "v": p.v, "k": p.k, "b": p.b, "r": p.r}


def _print_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _csv_row(cells) -> str:
    out = []
    for c in cells:
        c = str(c)
        if any(ch in c for ch in ',"\n'):
            c = '"' + c.replace('"', '""') + '"'
        out.append(c)
    return ",".join(out) + "\n"


def _workers(args) -> int:
    if getattr(args, "workers", None) is not None:
        return max(1, args.workers)
    raw = os.environ.get("EKR_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise DomainError(f"EKR_WORKERS={raw!r} is not an integer") from None


# -- design verbs ------------------------------------------------------------


def _cmd_generate(args) -> int:
    design = _parse_design(args.design)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            save_design(design, fh)
    else:
        save_design(design, sys.stdout)
    return 0


def _cmd_validate(args) -> int:
    design = _parse_design(args.design)
    info = _summary(design, args.design)
    info["valid"] = True
    if args.format == "json":
        _print_json(info)
    elif args.format == "csv":
        sys.stdout.write(_csv_row(["v", "k", "b", "r", "valid"]))
        sys.stdout.write(_csv_row([info["v"], info["k"], info["b"], info["r"], "true"]))
    else:
        sys.stdout.write(
            f"valid 2-({info['v']},{info['k']},1) design: "
            f"{info['b']} blocks, replication {info['r']}\n"
        )
    return 0


def _cmd_enumerate(args) -> int:
    design = _parse_design(args.design)
    workers = _workers(args)
    if args.size_only:
        sizes = maximal_family_sizes(design, min_size=args.min_size, workers=workers)
        if args.format == "json":
            _print_json(
                {
                    "design": _summary(design, args.design),
                    "min_size": args.min_size,
                    "sizes": {str(s): c for s, c in sizes.items()},
                }
            )
        elif args.format == "csv":
            sys.stdout.write(_csv_row(["size", "count"]))
            for s, c in sizes.items():
                sys.stdout.write(_csv_row([s, c]))
        else:
            sys.stdout.write(f"maximal families with at least {args.min_size} blocks:\n")
            for s, c in sizes.items():
                sys.stdout.write(f"  size {s}: {c}\n")
        return 0
    families = enumerate_maximal_ekr(
        design, min_size=args.min_size, max_count=args.max_count, workers=workers
    )
    if args.format == "json":
        _print_json(
            {
                "design": _summary(design, args.design),
                "min_size": args.min_size,
                "count": len(families),
                "families": [
                    {"size": len(f), "blocks": list(f.indices())} for f in families
                ],
            }
        )
    elif args.format == "csv":
        sys.stdout.write(_csv_row(["size", "blocks"]))
        for f in families:
            sys.stdout.write(_csv_row([len(f), " ".join(map(str, f.indices()))]))
    else:
        sys.stdout.write(f"maximal families: {len(families)}\n")
        for f in families:
            sys.stdout.write(f"  [{len(f)}] {' '.join(map(str, f.indices()))}\n")
    return 0


def _cmd_classify(args) -> int:
    design = _parse_design(args.design)
    families = enumerate_maximal_ekr(
        design, min_size=args.min_size, max_count=args.max_count, workers=_workers(args)
    )
    report = classification_report(design, families, source=args.design)
    if args.format == "json":
        _print_json(report)
    elif args.format == "csv":
        sys.stdout.write(
            _csv_row(["label", "size", "count", "covered", "max_multiplicity", "witness"])
        )
        for t in report["types"]:
            sys.stdout.write(
                _csv_row(
                    [
                        t["label"],
                        t["size"],
                        t["count"],
                        t["covered"],
                        t["max_multiplicity"],
                        " ".join(map(str, t["witness"])),
                    ]
                )
            )
    else:
        sys.stdout.write(
            f"types: {len(report['types'])} (maximal families: {report['family_count']})\n"
        )
        for t in report["types"]:
            sys.stdout.write(
                f"  {t['label']}: size {t['size']}, count {t['count']}, "
                f"covered {t['covered']}, max multiplicity {t['max_multiplicity']}\n"
            )
            sys.stdout.write(f"    witness: {' '.join(map(str, t['witness']))}\n")
    return 0


def _cmd_onan(args) -> int:
    design = _parse_design(args.design)
    witness = find_onan(design)
    if args.format == "json":
        _print_json(
            {
                "design": _summary(design, args.design),
                "found": witness is not None,
                "blocks": list(witness) if witness else None,
            }
        )
    elif args.format == "csv":
        sys.stdout.write(_csv_row(["found", "blocks"]))
        sys.stdout.write(
            _csv_row(
                ["true", " ".join(map(str, witness))] if witness else ["false", ""]
            )
        )
    else:
        if witness:
            sys.stdout.write(f"o'nan configuration: blocks {' '.join(map(str, witness))}\n")
        else:
            sys.stdout.write("o'nan configuration: none\n")
    return 0


def _cmd_max_size(args) -> int:
    design = _parse_design(args.design)
    best = max_ekr_size(design)
    if args.format == "json":
        _print_json(
            {
                "design": _summary(design, args.design),
                "size": len(best),
                "witness": list(best.indices()),
            }
        )
    elif args.format == "csv":
        sys.stdout.write(_csv_row(["size", "witness"]))
        sys.stdout.write(_csv_row([len(best), " ".join(map(str, best.indices()))]))
    else:
        sys.stdout.write(f"maximum family size: {len(best)}\n")
        sys.stdout.write(f"  witness: {' '.join(map(str, best.indices()))}\n")
    return 0


# -- parameter verbs ---------------------------------------------------------


def _require(parser, args, formula, names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        parser.error(f"formula '{formula}' needs {' '.join('--' + n for n in missing)}")


def _bound_payload(parser, args) -> dict:
    f = args.formula
    if f == "counting":
        _require(parser, args, f, ["k", "r", "excess"])
        return bounds.counting_bound(args.k, args.r, args.excess).as_json()
    if f == "counting-deficit":
        _require(parser, args, f, ["k", "deficit", "excess"])
        return bounds.counting_bound_deficit(args.k, args.deficit, args.excess).as_json()
    if f == "multiplicity-cap":
        _require(parser, args, f, ["k", "max-mult"])
        value = bounds.multiplicity_cap_bound(args.k, args.max_mult)
        return BoundReport(
            "multiplicity-cap", {"k": args.k, "max_mult": args.max_mult}, value, value
        ).as_json()
    if f == "cover-range":
        _require(parser, args, f, ["k", "shortfall"])
        lo, hi = bounds.cover_range_submax(args.k, args.shortfall)
        return {
            "formula": "cover-range",
            "inputs": {"k": args.k, "shortfall": args.shortfall},
            "low": _render(lo),
            "high": _render(hi),
        }
    if f == "replication":
        _require(parser, args, f, ["k", "r"])
        verdict = bounds.replication_threshold(args.k, args.r)
        return {
            "formula": "replication",
            "inputs": {"k": args.k, "r": args.r},
            "threshold": args.k * args.k - args.k + 1,
            "verdict": verdict.value,
        }
    if f == "near-extremal":
        _require(parser, args, f, ["k", "r"])
        verdict = bounds.near_extremal_threshold(args.k, args.r)
        return {
            "formula": "near-extremal",
            "inputs": {"k": args.k, "r": args.r},
            "window_low": _render(bounds.near_extremal_cutoff(args.k)),
            "window_high": args.k * args.k - args.k,
            "verdict": verdict.value,
        }
    if f == "unital-counting":
        _require(parser, args, f, ["q", "excess"])
        return bounds.unital_counting_bound(args.q, args.excess).as_json()
    if f == "unital-second":
        _require(parser, args, f, ["q"])
        return bounds.unital_second_max_bound(args.q).as_json()
    if f == "pencil-uniqueness":
        _require(parser, args, f, ["k", "v"])
        met = bounds.pencil_uniqueness_threshold(args.k, args.v)
        return {
            "formula": "pencil-uniqueness",
            "inputs": {"k": args.k, "v": args.v},
            "threshold": 1 + args.k * args.k * (args.k - 1),
            "met": met,
        }
    if f == "discriminant":
        _require(parser, args, f, ["k", "excess"])
        value = bounds.discriminant(args.excess, args.k)
        return {
            "formula": "discriminant",
            "inputs": {"k": args.k, "b": args.excess},
            "value": value,
        }
    parser.error(f"unknown formula '{f}'")


def _flat_text(payload: dict) -> str:
    lines = []
    for key, val in payload.items():
        if isinstance(val, dict):
            cell = " ".join(f"{k}={_scalar(v)}" for k, v in val.items())
        elif isinstance(val, list):
            cell = "; ".join(_scalar(v) for v in val)
        else:
            cell = _scalar(val)
        lines.append(f"{key}: {cell}\n")
    return "".join(lines)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _emit_payload(payload: dict, fmt: str) -> None:
    if fmt == "json":
        _print_json(payload)
    elif fmt == "csv":
        keys = list(payload)
        sys.stdout.write(_csv_row(keys))
        sys.stdout.write(_csv_row([_scalar(payload[k]) for k in keys]))
    else:
        sys.stdout.write(_flat_text(payload))


def _cmd_bound(parser):
    def run(args) -> int:
        _emit_payload(_bound_payload(parser, args), args.format)
        return 0

    return run


def _cmd_sweep(parser):
    def run(args) -> int:
        c = args.check
        if c == "deficit-grid":
            _require(parser, args, c, ["k"])
            if args.k == "all":
                k = "all"
            else:
                try:
                    k = int(args.k)
                except ValueError:
                    parser.error(f"--k must be an integer or 'all', got {args.k!r}")
            cert = bounds.sweep_deficit_grid(k)
        elif c == "large-k":
            cert = bounds.sweep_large_k(k_max=args.k_max)
        elif c == "moments":
            _require(parser, args, c, ["l", "a", "excess", "r"])
            cert = bounds.certify_moment_inequality(
                args.l, args.a, args.excess, args.r, budget=args.budget
            )
        else:
            parser.error(f"unknown check '{c}'")
        _emit_payload(cert.as_json(), args.format)
        return 0

    return run


# -- parser ------------------------------------------------------------------


def _add_design_opts(p, enumerating=False):
    p.add_argument("--design", required=True, help="builtin name:param or file:PATH")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    if enumerating:
        p.add_argument("--min-size", type=int, default=1)
        p.add_argument("--max-count", type=int, default=None)
        p.add_argument("--workers", type=int, default=None, help="default $EKR_WORKERS or 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steiner-ekr",
        description="Construct 2-(v,k,1) designs and analyze their maximal "
        "intersecting block families.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("generate", help="write a design file")
    p.add_argument("--design", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("validate", help="check the pair axiom and report parameters")
    _add_design_opts(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("enumerate", help="list all maximal intersecting families")
    _add_design_opts(p, enumerating=True)
    p.add_argument("--size-only", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("classify", help="group maximal families by isomorphism type")
    _add_design_opts(p, enumerating=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("onan", help="search for an O'Nan configuration")
    _add_design_opts(p)
    p.set_defaults(func=_cmd_onan)

    p = sub.add_parser("max-size", help="find one maximum intersecting family")
    _add_design_opts(p)
    p.set_defaults(func=_cmd_max_size)

    p = sub.add_parser("bound", help="evaluate one bound or threshold exactly")
    p.add_argument(
        "--formula",
        required=True,
        choices=[
            "counting",
            "counting-deficit",
            "multiplicity-cap",
            "cover-range",
            "replication",
            "near-extremal",
            "unital-counting",
            "unital-second",
            "pencil-uniqueness",
            "discriminant",
        ],
    )
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--deficit", type=int)
    p.add_argument("--excess", type=int)
    p.add_argument("--max-mult", type=int)
    p.add_argument("--shortfall", type=int)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=_cmd_bound(p))

    p = sub.add_parser("sweep", help="run an inequality sweep and print its certificate")
    p.add_argument("--check", required=True, choices=["deficit-grid", "large-k", "moments"])
    p.add_argument("--k", help="block size, or 'all' for the whole table")
    p.add_argument("--k-max", type=int, default=50)
    p.add_argument("--l", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--excess", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=_cmd_sweep(p))

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
