"""Command-line interface: ``motifmoments <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 moment order beyond what the radius
supports, 4 unreadable or malformed input, 5 verification failure,
6 graph not connected where connectivity is required.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .canon import build_atlas, motif_name
from .consensus import ConsensusConfig, distributed_moment
from .errors import (
    CapabilityError,
    ConfigurationError,
    ConnectivityError,
    EdgeListError,
    MotifMomentsError,
    ParameterError,
)
from .graph import complete, emit_edge_list, erdos_renyi, parse_edge_list, path, ring, star
from .local import build_detector_table, check_capability, sum_check
from .motifs import (
    census,
    closed_form_walk_count,
    closed_walk_count,
    walk_count_from_motifs,
)
from .walks import build_coefficient_table

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPABILITY = 3
EXIT_INPUT = 4
EXIT_VERIFY = 5
EXIT_CONNECTIVITY = 6

GENERATORS = {"ring": ring, "path": path, "complete": complete, "star": star}


class _InputError(Exception):
    pass


def _read_graph(args):
    try:
        if args.input in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _InputError(str(exc)) from exc
    return parse_edge_list(text)


def _header(args) -> str:
    return f"# motifmoments schema={SCHEMA_VERSION} command={args.command}"


def _table(args, columns, rows) -> list[str]:
    """Render rows as TSV (with a '#' column header) or as key=value lines."""
    if args.format == "tsv":
        return ["#" + "\t".join(columns)] + ["\t".join(str(c) for c in row) for row in rows]
    return [" ".join(f"{k}={v}" for k, v in zip(columns, row)) for row in rows]


def _fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- commands -------------------------------------------------------------------


def cmd_gen(args) -> list[str]:
    if args.n < 1:
        raise ParameterError("n must be >= 1")
    if args.kind == "er":
        if args.p is None:
            raise ParameterError("gen er needs a probability p")
        g = erdos_renyi(args.n, args.p, args.seed)
    else:
        if args.p is not None:
            raise ParameterError(f"gen {args.kind} takes no probability")
        g = GENERATORS[args.kind](args.n)
    return emit_edge_list(g).splitlines()


def cmd_atlas(args) -> list[str]:
    return [_header(args)] + build_atlas(args.k).to_catalog().splitlines()


def cmd_coeffs(args) -> list[str]:
    return [_header(args)] + build_coefficient_table(args.k_max).to_text().splitlines()


def cmd_detectors(args) -> list[str]:
    radii = tuple(int(r) for r in args.radii.split(","))
    return [_header(args)] + build_detector_table(args.k, radii).to_text().splitlines()


def cmd_census(args) -> list[str]:
    g = _read_graph(args)
    found = census(g, args.k)
    atlas = build_atlas(args.k)
    rows = [
        (key.hex, motif_name(key) or f"g{atlas.member(key).id}", count)
        for key, count in found.counts.items()
    ]
    return [_header(args)] + _table(args, ("motif", "name", "count"), rows)


def cmd_moments(args) -> list[str]:
    g = _read_graph(args)
    if g.node_count == 0:
        raise ParameterError("graph has no nodes")
    if args.k_max < 1:
        raise ParameterError("k_max must be >= 1")
    method = args.method
    if method == "motifs" and args.k_max > 7:
        raise CapabilityError("motif weights are tabulated for k <= 7", args.k_max, 7)
    if method == "closed-form" and args.k_max > 5:
        raise CapabilityError("closed forms exist for k <= 5", args.k_max, 5)
    n = g.node_count
    rows = []
    for k in range(1, args.k_max + 1):
        counts = {}
        if method in ("trace", "all"):
            counts["trace"] = closed_walk_count(g, k)
        if method in ("motifs", "all") and k <= 7:
            counts["motifs"] = walk_count_from_motifs(g, k)
        if method in ("closed-form", "all") and k <= 5:
            counts["closed-form"] = closed_form_walk_count(g, k)
        primary = counts.get("trace", counts.get("motifs", counts.get("closed-form")))
        value = Fraction(primary, n)
        row = [k, primary, f"{float(value):.12g}", _fraction(value)]
        if method == "all":
            row += [counts.get(m, "-") for m in ("motifs", "trace", "closed-form")]
            row.append("yes" if len(set(counts.values())) == 1 else "NO")
        rows.append(row)
    columns = ["k", "n_mk", "mk", "mk_exact"]
    if method == "all":
        columns += ["motifs", "trace", "closed_form", "agree"]
    return [_header(args)] + _table(args, columns, rows)


def cmd_distsim(args) -> list[str]:
    g = _read_graph(args)
    cfg = ConsensusConfig(
        tolerance=args.tolerance,
        max_rounds=args.max_rounds,
        record_every=args.trace_every,
        absolute=args.absolute,
    )
    result = distributed_moment(g, args.r, args.k, cfg)
    if args.trace_output:
        with open(args.trace_output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(result.trace.to_tsv())
    if args.measurements:
        with open(args.measurements, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(m.to_text() + "\n" for m in result.measurements)
    lines = [_header(args), result.summary()]
    if not result.trace.converged:
        lines.append(f"# not converged after {result.trace.rounds} rounds")
    return lines


def cmd_verify(args) -> tuple[list[str], bool]:
    g = _read_graph(args)
    check_capability(args.k_max, args.r)
    if args.k_max > 7:
        raise ConfigurationError("verification covers k <= 7")
    lines = [_header(args)]
    ok = True
    for k in range(2, args.k_max + 1):
        report = sum_check(g, args.r, k)
        lines.extend(report.lines())
        ok = ok and report.ok
    lines.append("PASS" if ok else "FAIL")
    return lines, ok


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="edge-list file ('-' for stdin)")
    common.add_argument("--output", "-o", help="write results here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--format", choices=("tsv", "text"), default="tsv")

    parser = argparse.ArgumentParser(
        prog="motifmoments",
        description="Spectral moments of graphs from motif counts and local views.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate an edge list")
    p.add_argument("kind", choices=("ring", "path", "complete", "star", "er"))
    p.add_argument("n", type=int, help="nodes (leaves for star)")
    p.add_argument("p", type=float, nargs="?", help="edge probability (er only)")

    p = sub.add_parser("atlas", parents=[common], help="list connected motifs with <= k nodes and edges")
    p.add_argument("--k", type=int, default=4)

    p = sub.add_parser("coeffs", parents=[common], help="closed-walk weights per motif")
    p.add_argument("--k-max", type=int, default=7)

    p = sub.add_parser("detectors", parents=[common], help="detector counts per motif and radius")
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--radii", default="1,2,3")

    p = sub.add_parser("census", parents=[common], help="motif frequencies of a graph")
    p.add_argument("--k", type=int, default=4)

    p = sub.add_parser("moments", parents=[common], help="spectral moments m_1..m_kmax")
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--method", choices=("motifs", "trace", "closed-form", "all"), default="all")

    p = sub.add_parser("distsim", parents=[common], help="simulate decentralized moment estimation")
    p.add_argument("--r", type=int, required=True, help="neighbourhood radius")
    p.add_argument("--k", type=int, required=True, help="moment order")
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--absolute", action="store_true", help="treat tolerance as absolute")
    p.add_argument("--max-rounds", type=int, default=100_000)
    p.add_argument("--trace-every", type=int, default=0, help="snapshot period in rounds")
    p.add_argument("--trace-output", help="write round/node/value TSV here")
    p.add_argument("--measurements", help="write per-node measurements here")

    p = sub.add_parser("verify", parents=[common], help="check the local-to-global identities")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    status = EXIT_OK
    try:
        if args.command == "verify":
            lines, ok = cmd_verify(args)
            status = EXIT_OK if ok else EXIT_VERIFY
        else:
            lines = COMMANDS[args.command](args)
    except CapabilityError as exc:
        print(f"motifmoments: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (EdgeListError, _InputError) as exc:
        print(f"motifmoments: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConnectivityError as exc:
        print(f"motifmoments: {exc}", file=sys.stderr)
        return EXIT_CONNECTIVITY
    except (ParameterError, ConfigurationError, MotifMomentsError) as exc:
        print(f"motifmoments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


COMMANDS = {
    "gen": cmd_gen,
    "atlas": cmd_atlas,
    "coeffs": cmd_coeffs,
    "detectors": cmd_detectors,
    "census": cmd_census,
    "moments": cmd_moments,
    "distsim": cmd_distsim,
}


if __name__ == "__main__":
    sys.exit(main())
