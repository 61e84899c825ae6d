"""Command-line front end.

Subcommands: ``dist`` (pairwise distance matrix), ``consensus`` (central
partition), ``fuzzy`` (membership-matrix embedding and comparison),
``verify`` (closed forms against path searches), ``lattice`` (small
reports).  Data goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 verification mismatch, 2 malformed input,
3 inconsistent ground sets, 4 metric without closed-form consensus,
5 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fuzzy as fz
from . import hasse
from .consensus import (
    Instance,
    UnsupportedMetricError,
    brute_force_consensus,
    consensus as consensus_center,
)
from .metrics import DistanceKind, hd
from .partition import (
    EnumerationCapError,
    FUNCTIONALS,
    GroundSetMismatchError,
    Partition,
    atom_pairs,
    available_sizes,
    bell_number,
    canonicalize,
    enumerate_partitions,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_INCONSISTENT = 3
EXIT_UNSUPPORTED_METRIC = 4
EXIT_CAP = 5


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fmt(value, integral):
    return str(int(value)) if integral else format(float(value), ".6f")


def read_clusterings(path, fmt=None):
    """Load label rows from a csv or json clustering file, canonicalized."""
    if fmt is None:
        fmt = "json" if str(path).lower().endswith(".json") else "csv"
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    rows = []
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_PARSE, f"{path}: invalid json: {exc}")
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise CliError(EXIT_PARSE, f"{path}: expected an array of label arrays")
        rows = data
    else:
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([cell.strip() for cell in line.split(",")])
    if not rows:
        raise CliError(EXIT_PARSE, f"{path}: no clusterings found")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise CliError(EXIT_INCONSISTENT, f"{path}: rows have differing lengths")
    try:
        return [canonicalize(r) for r in rows]
    except (ValueError, TypeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: bad labels: {exc}")


def read_membership(path):
    """Load a membership matrix from its json document form.

    Layout: {"n": int, "clusters": [{"support": [elements]?,
    "memberships": [n reals]}, ...]}; element memberships across clusters
    must sum to 1 within 1e-6.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"{path}: invalid json: {exc}")
    if not isinstance(doc, dict) or "n" not in doc or "clusters" not in doc:
        raise CliError(EXIT_PARSE, f"{path}: expected keys 'n' and 'clusters'")
    n = doc["n"]
    clusters = doc["clusters"]
    if not isinstance(n, int) or n < 1 or not isinstance(clusters, list) or not clusters:
        raise CliError(EXIT_PARSE, f"{path}: malformed 'n' or 'clusters'")
    columns = []
    supports = []
    for idx, cluster in enumerate(clusters):
        if not isinstance(cluster, dict) or "memberships" not in cluster:
            raise CliError(EXIT_PARSE, f"{path}: cluster {idx} lacks 'memberships'")
        memberships = cluster["memberships"]
        if not isinstance(memberships, list) or len(memberships) != n:
            raise CliError(
                EXIT_INCONSISTENT,
                f"{path}: cluster {idx} has {len(memberships)} memberships, expected {n}",
            )
        try:
            columns.append([float(x) for x in memberships])
        except (TypeError, ValueError):
            raise CliError(EXIT_PARSE, f"{path}: cluster {idx} has non-numeric entries")
        supports.append(cluster.get("support", range(n)))
    rows = [[columns[l][i] for l in range(len(columns))] for i in range(n)]
    try:
        return fz.MembershipMatrix(rows, supports, row_sum_tol=1e-6)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}")


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_dist(args):
    parts = read_clusterings(args.input, args.input_format)
    if len(parts) < 2:
        raise CliError(EXIT_PARSE, "need at least 2 clusterings")
    metric = DistanceKind.parse(args.metric)
    m = len(parts)
    try:
        matrix = [
            [metric.evaluate(parts[a], parts[b]) for b in range(m)] for a in range(m)
        ]
    except GroundSetMismatchError as exc:
        raise CliError(EXIT_INCONSISTENT, str(exc))
    if args.format == "json":
        cast = int if metric.is_integral else float
        payload = {
            "metric": metric.value,
            "n": parts[0].n,
            "count": m,
            "matrix": [[cast(v) for v in row] for row in matrix],
        }
        _emit(json.dumps(payload) + "\n", args.output)
    else:
        lines = [
            "\t".join(_fmt(v, metric.is_integral) for v in row) for row in matrix
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_consensus(args):
    parts = read_clusterings(args.input, args.input_format)
    if len(parts) < 2:
        raise CliError(EXIT_PARSE, "need at least 2 clusterings")
    metric = DistanceKind.parse(args.metric)
    inst = Instance(tuple(parts))
    lines = []
    if args.brute_force:
        result = brute_force_consensus(inst, metric)
        for p in result.partitions:
            lines.append("partition\t" + ",".join(map(str, p.labels)))
        objective = result.objective
    else:
        try:
            center, objective = consensus_center(inst, metric)
        except UnsupportedMetricError as exc:
            raise CliError(EXIT_UNSUPPORTED_METRIC, f"{exc}; pass --brute-force")
        lines.append("partition\t" + ",".join(map(str, center.labels)))
    lines.append("objective\t" + _fmt(objective, metric.is_integral))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _coords_line(tag, coords):
    return tag + "\t" + " ".join(format(c, ".6f") for c in coords)


def cmd_fuzzy(args):
    first = read_membership(args.first)
    second = read_membership(args.second)
    if first.n != second.n:
        raise CliError(
            EXIT_INCONSISTENT, f"ground sets differ: {first.n} vs {second.n}"
        )
    ya, yb = fz.embed(first), fz.embed(second)
    lines = [_coords_line("a", ya.coords), _coords_line("b", yb.coords)]
    value = fz.fuzzy_distance(ya, yb, args.norm)
    lines.append(f"{'d1' if args.norm == 'l1' else 'd2'}\t{value:.6f}")
    if args.decompose:
        for tag, y in (("a", ya), ("b", yb)):
            combo = fz.decompose(y)
            lines.append(f"decomposition\t{tag}\tresidual\t{combo.residual_norm:.6f}")
            for part, coef in combo.terms:
                lines.append(
                    f"term\t{tag}\t" + ",".join(map(str, part.labels)) + f"\t{coef:.6f}"
                )
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args):
    if args.f not in FUNCTIONALS:
        raise CliError(
            EXIT_PARSE, f"unknown functional {args.f!r}; choose from {sorted(FUNCTIONALS)}"
        )
    descriptor = FUNCTIONALS[args.f]
    n = args.n
    ruling = hasse.classify(n, descriptor.evaluate)
    graph = hasse.build_hasse(n)
    values = [descriptor.evaluate(v) for v in graph.vertices]
    worst = 0.0
    pairs = 0
    for src in range(len(graph.vertices)):
        dist, _ = hasse._dijkstra(graph, values, src)
        p = graph.vertices[src]
        for dst in range(src + 1, len(graph.vertices)):
            expected = hasse.closed_form_delta(descriptor, p, graph.vertices[dst])
            worst = max(worst, abs(dist[dst] - expected))
            pairs += 1
    passed = worst <= 1e-9
    lines = [
        f"functional\t{descriptor.name}",
        f"declared\t{descriptor.order_direction}\t{descriptor.modularity}",
        f"classified\tsymmetric={str(ruling.symmetric).lower()}"
        f"\torder={ruling.order_direction}"
        f"\tsupermodular={str(ruling.supermodular).lower()}"
        f"\tsubmodular={str(ruling.submodular).lower()}"
        f"\ttotally_positive={str(ruling.totally_positive).lower()}",
        f"pairs\t{pairs}",
        f"max_deviation\t{worst:.3e}",
        "PASS" if passed else "FAIL",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def cmd_lattice(args):
    n = args.n
    if args.report == "sizes":
        _emit(",".join(map(str, available_sizes(n))) + "\n", args.output)
    elif args.report == "bell":
        _emit(f"{bell_number(n)}\n", args.output)
    else:
        parts = enumerate_partitions(n)
        k = n * (n - 1) // 2
        rows = sorted(
            parts,
            key=lambda p: (
                p.rank,
                p.size,
                tuple(-(p.indicator_bits >> i & 1) for i in range(k)),
            ),
        )
        header = "# atoms\t" + "\t".join(f"{i},{j}" for i, j in atom_pairs(n))
        lines = [header]
        for p in rows:
            bits = [str(p.indicator_bits >> i & 1) for i in range(k)]
            lines.append(",".join(map(str, p.labels)) + "\t" + "\t".join(bits))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="partlat",
        description="Distances, consensus and reports on the lattice of set partitions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    metric_names = sorted(
        {"hd", "vi", "mmd", "rank", "logical", "cosize", "relation"}
        | {"delta_rank", "delta_logical", "delta_cosize", "relation_matrix"}
    )

    p_dist = sub.add_parser("dist", help="pairwise distance matrix of a clustering file")
    p_dist.add_argument("input")
    p_dist.add_argument("--metric", required=True, choices=metric_names)
    p_dist.add_argument("--input-format", choices=["csv", "json"], default=None)
    p_dist.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p_dist.add_argument("--output", default=None)
    p_dist.set_defaults(func=cmd_dist)

    p_cons = sub.add_parser("consensus", help="central partition of a clustering file")
    p_cons.add_argument("input")
    p_cons.add_argument("--metric", required=True, choices=metric_names)
    p_cons.add_argument("--brute-force", action="store_true")
    p_cons.add_argument("--input-format", choices=["csv", "json"], default=None)
    p_cons.add_argument("--output", default=None)
    p_cons.set_defaults(func=cmd_consensus)

    p_fuzzy = sub.add_parser("fuzzy", help="embed and compare two membership matrices")
    p_fuzzy.add_argument("first")
    p_fuzzy.add_argument("second")
    p_fuzzy.add_argument("--norm", choices=["l1", "l2"], default="l1")
    p_fuzzy.add_argument("--decompose", action="store_true")
    p_fuzzy.add_argument("--output", default=None)
    p_fuzzy.set_defaults(func=cmd_fuzzy)

    p_verify = sub.add_parser(
        "verify", help="check closed-form distances against path searches"
    )
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--f", required=True)
    p_verify.add_argument("--output", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_lat = sub.add_parser("lattice", help="small lattice reports")
    p_lat.add_argument("--n", type=int, required=True)
    p_lat.add_argument("--report", choices=["sizes", "bell", "table2"], required=True)
    p_lat.add_argument("--output", default=None)
    p_lat.set_defaults(func=cmd_lattice)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"partlat: {exc}", file=sys.stderr)
        return exc.code
    except EnumerationCapError as exc:
        print(f"partlat: {exc}", file=sys.stderr)
        return EXIT_CAP
    except GroundSetMismatchError as exc:
        print(f"partlat: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
