"""Pipeline orchestration, JSON report assembly, and the command line.

The `analyze` subcommand ingests a graph (edge-list file or named family),
runs distances -> distance-regularity -> spectra -> Krein -> Q-orderings ->
Norton identities, and emits one JSON report. Reports are deterministic:
keys sorted, floats printed with 17 significant digits, so identical inputs
produce byte-identical output.

Exit codes: 0 ok, 1 not distance-regular (or diameter < 2), 2 no Q-polynomial
ordering, 3 input or parse error, 4 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import families, norton, qpoly, spectral
from .errors import (
    DegenerateDenominator,
    DegenerateSpectrum,
    DiameterTooSmall,
    DisconnectedGraph,
    EdgeListParseError,
    EigensolverFailure,
    IdempotencyViolation,
    InvalidFamilyParams,
    KreinInvariantViolation,
    NortonError,
    NotConstantOnDistanceClasses,
    NotDistanceRegular,
    SpectralInvariantViolation,
)
from .graph_core import Graph, check_distance_regular, distance_matrix

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NOT_DISTANCE_REGULAR = 1
EXIT_NO_Q_ORDERING = 2
EXIT_INPUT_ERROR = 3
EXIT_NUMERICAL_FAILURE = 4

_NUMERICAL_ERRORS = (
    EigensolverFailure,
    DegenerateSpectrum,
    IdempotencyViolation,
    SpectralInvariantViolation,
    KreinInvariantViolation,
    NotConstantOnDistanceClasses,
    DegenerateDenominator,
)


# ---------------------------------------------------------------------------
# deterministic JSON

def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite value {x!r} in report")
    return format(x, ".17g")


def render_json(value, indent: int = 0) -> str:
    """Serialize with sorted keys and 17-significant-digit floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(k))}: {render_json(v, indent + 1)}"
            for k, v in sorted(value.items())
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not len(value):
            return "[]"
        items = [f"{inner}{render_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


# ---------------------------------------------------------------------------
# edge-list input

def parse_edge_list(path: str) -> Graph:
    """Read `n m` then m lines `u v`. Blank lines and `#` comments are
    ignored; loops, duplicates, and out-of-range endpoints are errors."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read().splitlines()
    header = None
    n = m = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(raw, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if header is None:
            if len(parts) != 2:
                raise EdgeListParseError(path, lineno, f"expected header 'n m', got {text!r}")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError(path, lineno, f"header values must be integers, got {text!r}")
            if n <= 0:
                raise EdgeListParseError(path, lineno, f"vertex count must be positive, got {n}")
            if m < 0:
                raise EdgeListParseError(path, lineno, f"edge count must be nonnegative, got {m}")
            header = lineno
            continue
        if len(edges) == m:
            raise EdgeListParseError(path, lineno, f"expected {m} edges, found extra data {text!r}")
        if len(parts) != 2:
            raise EdgeListParseError(path, lineno, f"expected edge 'u v', got {text!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(path, lineno, f"edge endpoints must be integers, got {text!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListParseError(path, lineno, f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise EdgeListParseError(path, lineno, f"loop at vertex {u} is not allowed")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListParseError(path, lineno, f"duplicate edge ({u},{v})")
        seen.add(key)
        edges.append((u, v))
    if header is None:
        raise EdgeListParseError(path, len(raw) + 1, "file contains no header line")
    if len(edges) != m:
        raise EdgeListParseError(path, len(raw) + 1, f"expected {m} edges, file ended after {len(edges)}")
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# report assembly

@dataclass
class AnalysisOutcome:
    report: dict
    exit_code: int
    product_rows: list[dict] | None = None


def _compressed_row(x: int, y: int, ctx: norton.NortonContext) -> dict:
    th, ds = ctx.theta, ctx.dual_theta
    i = int(ctx.dm.dist[x, y])
    denom = ctx.n * (th[1] - th[2])
    if i == 0:
        # the i=0 product collapses to a single multiple of E xhat
        return {
            "x": x, "y": y, "i": 0,
            "coefMinus": 0.0, "coefPlus": 0.0,
            "coefX": norton.q111_from_formula(ctx) / ctx.n, "coefY": 0.0,
        }
    return {
        "x": x, "y": y, "i": i,
        "coefMinus": (ds[i - 1] - ds[i]) / denom,
        "coefPlus": (ds[i + 1] - ds[i]) / denom if i < ctx.d else 0.0,
        "coefX": (th[1] - th[2]) * ds[i] / denom,
        "coefY": (th[2] - th[0]) / denom,
    }


def _product_rows(ctx: norton.NortonContext, ordering_index: int, compressed: bool) -> list[dict]:
    rows = []
    for x in range(ctx.n):
        for y in range(ctx.n):
            if compressed:
                row = _compressed_row(x, y, ctx)
            else:
                vec = norton.norton_product_direct(ctx.ex(x), ctx.ex(y), ctx)
                row = {"x": x, "y": y, "coefficients": [float(c) for c in vec]}
            row["orderingIndex"] = ordering_index
            rows.append(row)
    return rows


def _ordering_entry(
    decomp, kt, dm, A, idata, qs, tol: float, with_associators: bool
) -> tuple[dict, norton.NortonContext]:
    ctx = norton.make_context(A, dm, idata, decomp, qs, tol)
    s = qs.source_idempotent
    residuals = {
        "recurrence": float(qpoly.verify_recurrence(qs, idata, ctx.theta[1]).max()),
        "theta2Identity": float(qpoly.theta2_identity_check(ctx.theta, qs.dual_theta, tol)),
        "cibi": float(norton.cibi_identity_check(ctx).max()),
        "balancedSet": float(norton.balanced_set_max_residual(ctx)),
        "oracleVsFormula": float(norton.formula_equivalence_residual(ctx)),
        "oracleVsSymmetric": float(norton.symmetric_equivalence_residual(ctx)),
        "sumIdentity": float(max(norton.sum_identity_max(ctx))),
        "q111Delta": abs(float(kt.q[s, s, s]) - norton.q111_from_formula(ctx)),
    }
    entry = {
        "ordering": [int(v) for v in qs.ordering],
        "dualEigenvalues": [float(v) for v in qs.dual_theta],
        "residuals": residuals,
    }
    if with_associators:
        entry["maxAssociatorNorm"] = float(norton.max_associator_norm(ctx))
    return entry, ctx


def analyze_graph(
    g: Graph,
    source: str,
    tol: float = spectral.DEFAULT_TOL,
    nz_threshold: float = qpoly.DEFAULT_NZ_THRESHOLD,
    with_associators: bool = False,
    with_products: bool = False,
    compressed: bool = False,
) -> AnalysisOutcome:
    """Run the full pipeline on one graph and build the report payload."""
    base = {
        "schemaVersion": SCHEMA_VERSION,
        "graph": {"n": g.n, "source": source},
        "toleranceUsed": float(tol),
    }
    try:
        dm = distance_matrix(g)
        idata = check_distance_regular(g, dm)
    except NotDistanceRegular as exc:
        h, i, j, x, y = exc.witness
        base["status"] = "notDistanceRegular"
        base["message"] = str(exc)
        base["witness"] = {
            "h": h, "i": i, "j": j, "x": x, "y": y,
            "expected": exc.expected, "actual": exc.actual,
        }
        return AnalysisOutcome(report=base, exit_code=EXIT_NOT_DISTANCE_REGULAR)
    except (DiameterTooSmall, DisconnectedGraph) as exc:
        base["status"] = "notDistanceRegular"
        base["message"] = str(exc)
        base["witness"] = None
        return AnalysisOutcome(report=base, exit_code=EXIT_NOT_DISTANCE_REGULAR)

    A = g.adjacency.astype(np.float64)
    decomp = spectral.spectral_decomposition(A, idata, tol)
    kt = spectral.krein_parameters(decomp)
    kt.validate(tol)
    skeletons = qpoly.find_q_polynomial_orderings(kt, nz_threshold)
    structures = qpoly.complete_structures(skeletons, decomp, dm, tol)

    d = idata.d
    base["intersectionArray"] = {
        "a": [int(v) for v in idata.a],
        "b": [int(v) for v in idata.b[:d]],
        "c": [int(v) for v in idata.c[1:]],
    }
    base["eigenvalues"] = [
        {"theta": float(t), "multiplicity": float(m)}
        for t, m in zip(decomp.theta, decomp.mult)
    ]
    base["kreinTensor"] = [
        {"h": h, "i": i, "j": j, "value": float(kt.q[h, i, j])}
        for h in range(d + 1)
        for i in range(d + 1)
        for j in range(d + 1)
    ]

    entries = []
    product_rows: list[dict] = []
    for index, qs in enumerate(structures):
        entry, ctx = _ordering_entry(decomp, kt, dm, A, idata, qs, tol, with_associators)
        entries.append(entry)
        if with_products:
            product_rows.extend(_product_rows(ctx, index, compressed))
    base["qOrderings"] = entries
    base["status"] = "ok" if entries else "noQOrdering"
    if with_products:
        base["products"] = product_rows
    return AnalysisOutcome(
        report=base,
        exit_code=EXIT_OK if entries else EXIT_NO_Q_ORDERING,
        product_rows=product_rows if with_products else None,
    )


def product_rows_to_csv(rows: list[dict], compressed: bool) -> str:
    """Flatten dump rows to CSV text with the same float formatting as JSON."""
    lines = []
    if compressed:
        lines.append("ordering,x,y,i,coef_minus,coef_plus,coef_x,coef_y")
        for r in rows:
            lines.append(
                ",".join(
                    [str(r["orderingIndex"]), str(r["x"]), str(r["y"]), str(r["i"])]
                    + [_format_float(r[k]) for k in ("coefMinus", "coefPlus", "coefX", "coefY")]
                )
            )
    else:
        lines.append("ordering,x,y,coefficients...")
        for r in rows:
            lines.append(
                ",".join(
                    [str(r["orderingIndex"]), str(r["x"]), str(r["y"])]
                    + [_format_float(c) for c in r["coefficients"]]
                )
            )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# command line

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which collides with the
    # "no Q-ordering" code; remap to the input-error code.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_INPUT_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="drgnorton", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="analyze one graph and emit a JSON report")
    src = an.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="edge-list file: 'n m' then m lines 'u v'")
    src.add_argument("--family", choices=families.FAMILY_KINDS, help="named graph family")
    an.add_argument("--params", default=None, help="comma-separated integer family parameters")
    an.add_argument("--tolerance", type=float, default=spectral.DEFAULT_TOL)
    an.add_argument("--nz-threshold", type=float, default=qpoly.DEFAULT_NZ_THRESHOLD,
                    help="relative cutoff deciding which Krein parameters count as nonzero")
    an.add_argument("--output", metavar="PATH", default=None, help="report destination (default stdout)")
    an.add_argument("--dump-products", action="store_true", help="include the product table")
    an.add_argument("--compressed", action="store_true",
                    help="dump per-pair scalar coefficients instead of full vectors")
    an.add_argument("--associators", action="store_true",
                    help="sweep all vertex triples for the largest associator norm (O(n^3))")
    an.add_argument("--format", choices=("json", "csv"), default="json",
                    help="product dump format; csv goes to --products-output")
    an.add_argument("--products-output", metavar="PATH", default="products.csv")
    an.add_argument("--max-vertices", type=int, default=families.DEFAULT_MAX_VERTICES)
    return parser


def _load_graph(args) -> tuple[Graph, str]:
    if args.graph is not None:
        return parse_edge_list(args.graph), f"file:{args.graph}"
    params: tuple[int, ...] = ()
    if args.params:
        try:
            params = tuple(int(p) for p in args.params.split(","))
        except ValueError:
            raise InvalidFamilyParams(f"--params must be comma-separated integers, got {args.params!r}")
    spec = families.FamilySpec(kind=args.family, params=params)
    g = families.generate(spec, max_vertices=args.max_vertices)
    label = args.family if not params else f"{args.family}({','.join(map(str, params))})"
    return g, f"family:{label}"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        g, source = _load_graph(args)
    except (EdgeListParseError, InvalidFamilyParams, OSError) as exc:
        print(f"drgnorton: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    embed_products = args.dump_products and args.format == "json"
    try:
        outcome = analyze_graph(
            g,
            source,
            tol=args.tolerance,
            nz_threshold=args.nz_threshold,
            with_associators=args.associators,
            with_products=args.dump_products,
            compressed=args.compressed,
        )
    except _NUMERICAL_ERRORS as exc:
        print(f"drgnorton: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE
    except NortonError as exc:
        print(f"drgnorton: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    report = dict(outcome.report)
    if outcome.product_rows is not None and not embed_products:
        report.pop("products", None)
    text = render_json(report) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if outcome.product_rows is not None and args.format == "csv":
        with open(args.products_output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(product_rows_to_csv(outcome.product_rows, args.compressed))
    return outcome.exit_code
