"""Command-line interface.

Subcommands: validate, weights, inconsistency, decompose, approximate,
iterate, report, serve. Matrix files are positional CSV or labeled JSON
(``--format`` forces one; otherwise a ``.json`` suffix selects JSON).
Exit codes: 0 success, 1 usage or I/O problem, 2 validation failure,
3 numeric failure. Human-facing weight output is rounded to two decimals;
``report`` emits one JSON object at full precision.
"""

from __future__ import annotations

import argparse
import json
import string
import sys

from . import __version__
from .core import (
    DEFAULT_RECIP_TOL,
    PCMatrix,
    Tolerance,
    inconsistency,
    is_consistent,
    new_pc_matrix,
    worst_triad,
)
from .decomp import decompose
from .errors import PCError
from .extend import approximate_once, iterate_to_consistency
from .io import FORMATS, MatrixDocument, parse, serialize
from .weights import geometric_mean_weights, rank_entities

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3

REPORT_SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the documented usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="pcdecomp", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="matrix file, or - for stdin")
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="input format (default: by file suffix, csv otherwise)")
    common.add_argument("--recip-tol", type=float, default=DEFAULT_RECIP_TOL,
                        help="reciprocity tolerance at validation (default %(default)s)")

    sub.add_parser("validate", parents=[common], help="check the matrix and exit 0/2")
    sub.add_parser("weights", parents=[common], help="print weights and ranking")
    sub.add_parser("inconsistency", parents=[common], help="print the indicator and worst triad")
    sub.add_parser("decompose", parents=[common], help="3x3 only: print k, Y, Z and both factors")
    sub.add_parser("approximate", parents=[common], help="one approximation step, matrix to stdout")

    p_iter = sub.add_parser("iterate", parents=[common], help="iterate to consistency, print the trace")
    p_iter.add_argument("--tol", type=float, default=Tolerance().consistency_eps,
                        help="convergence threshold on the indicator (default %(default)s)")
    p_iter.add_argument("--max-iter", type=int, default=100,
                        help="iteration cap (default %(default)s)")

    sub.add_parser("report", parents=[common], help="full analysis as one JSON object")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)

    return parser


def _detect_format(path: str, forced: str | None) -> str:
    if forced:
        return forced
    return "json" if path.lower().endswith(".json") else "csv"


def _load(args) -> tuple[MatrixDocument, PCMatrix, list[str]]:
    fmt = _detect_format(args.file, args.format)
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as handle:
            text = handle.read()
    doc = parse(text, fmt)
    matrix = new_pc_matrix(doc.matrix, recip_tol=args.recip_tol)
    labels = doc.labels if doc.labels is not None else _default_labels(doc.n)
    return doc, matrix, labels


def _default_labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_uppercase[:n])
    return [f"E{i + 1}" for i in range(n)]


def _cmd_validate(args) -> int:
    _, matrix, _ = _load(args)
    print(f"valid (n={matrix.n})")
    return EXIT_OK


def _cmd_weights(args) -> int:
    _, matrix, labels = _load(args)
    w = geometric_mean_weights(matrix)
    for label, value in zip(labels, w.values):
        print(f"{label} {value:.2f}")
    print("ranking: " + " > ".join(rank_entities(w, labels)))
    return EXIT_OK


def _cmd_inconsistency(args) -> int:
    _, matrix, _ = _load(args)
    print(f"inconsistency {inconsistency(matrix)!r}")
    if matrix.n >= 3:
        triad, deviation = worst_triad(matrix)
        print(f"worst triad ({triad.i}, {triad.j}, {triad.k}) deviation {deviation!r}")
    else:
        print("worst triad none (n < 3)")
    return EXIT_OK


def _matrix_csv(m: PCMatrix) -> str:
    return serialize(MatrixDocument(matrix=m.entries), "csv")


def _cmd_decompose(args) -> int:
    _, matrix, _ = _load(args)
    result = decompose(matrix)
    x, y, z = result.log_params
    print(f"k {result.ortho.k!r}")
    print(f"Y {result.consistent.y!r}")
    print(f"Z {result.consistent.z!r}")
    print(f"log x {x!r}")
    print(f"log y {y!r}")
    print(f"log z {z!r}")
    print("A_H:")
    sys.stdout.write(_matrix_csv(result.ortho.matrix))
    print("A_L:")
    sys.stdout.write(_matrix_csv(result.consistent.matrix))
    return EXIT_OK


def _cmd_approximate(args) -> int:
    doc, matrix, _ = _load(args)
    fmt = _detect_format(args.file, args.format)
    step = approximate_once(matrix)
    out = MatrixDocument(matrix=step.entries, labels=doc.labels, metadata=doc.metadata)
    sys.stdout.write(serialize(out, fmt))
    print(f"inconsistency {inconsistency(matrix)!r} -> {inconsistency(step)!r}", file=sys.stderr)
    return EXIT_OK


def _cmd_iterate(args) -> int:
    doc, matrix, _ = _load(args)
    fmt = _detect_format(args.file, args.format)
    trace = iterate_to_consistency(
        matrix, tol=Tolerance(consistency_eps=args.tol), max_iter=args.max_iter
    )
    for step in trace.steps:
        print(f"step {step.index} inconsistency {step.inconsistency!r} change {step.max_change!r}")
    print(f"converged {'true' if trace.converged else 'false'}")
    print("final:")
    out = MatrixDocument(matrix=trace.final.entries, labels=doc.labels, metadata=doc.metadata)
    sys.stdout.write(serialize(out, fmt))
    return EXIT_OK


def _report_payload(matrix: PCMatrix, labels: list[str]) -> dict:
    w = geometric_mean_weights(matrix)
    payload: dict = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "n": matrix.n,
        "labels": labels,
        "matrix": matrix.entries.tolist(),
        "valid": True,
        "consistent": is_consistent(matrix),
        "weights": w.values.tolist(),
        "ranking": rank_entities(w, labels),
        "inconsistency": inconsistency(matrix),
        "worst_triad": None,
        "decomposition": None,
        "approximate": None,
        "iterate": None,
    }
    if matrix.n >= 3:
        triad, deviation = worst_triad(matrix)
        payload["worst_triad"] = {
            "i": triad.i, "j": triad.j, "k": triad.k, "deviation": deviation,
        }
        step = approximate_once(matrix)
        payload["approximate"] = {
            "matrix": step.entries.tolist(),
            "inconsistency": inconsistency(step),
        }
        trace = iterate_to_consistency(matrix)
        payload["iterate"] = {
            "converged": trace.converged,
            "steps": [
                {"index": s.index, "inconsistency": s.inconsistency, "max_change": s.max_change}
                for s in trace.steps
            ],
            "final": trace.final.entries.tolist(),
        }
    if matrix.n == 3:
        result = decompose(matrix)
        x, y, z = result.log_params
        payload["decomposition"] = {
            "k": result.ortho.k,
            "Y": result.consistent.y,
            "Z": result.consistent.z,
            "log_params": [x, y, z],
            "ortho": result.ortho.matrix.entries.tolist(),
            "consistent": result.consistent.matrix.entries.tolist(),
        }
    return payload


def _cmd_report(args) -> int:
    _, matrix, labels = _load(args)
    print(json.dumps(_report_payload(matrix, labels), indent=2))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "weights": _cmd_weights,
    "inconsistency": _cmd_inconsistency,
    "decompose": _cmd_decompose,
    "approximate": _cmd_approximate,
    "iterate": _cmd_iterate,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PCError as exc:
        print(f"pcdecomp: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OverflowError as exc:
        print(f"pcdecomp: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"pcdecomp: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
