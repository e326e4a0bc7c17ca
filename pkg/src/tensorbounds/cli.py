"""Command-line front end.

Exit status: 0 success, 2 bad input, 3 precondition violated,
4 power iteration did not converge.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import BoundReport, general_bounds, row_sum_bounds, rowsum_weighted_bounds
from .errors import ConvergenceError, InputError, PreconditionError
from .hypergraph import (DEFAULT_CAP, Hypergraph, adjacency_bounds, adjacency_tensor,
                         is_connected, matrix_bounds, parse_hypergraph, qlaplacian_bounds,
                         signless_laplacian_tensor)
from .irreducibility import bipartition_structure, is_weakly_irreducible, neighbor_nonempty_check
from .spectral import IterationConfig, perron
from .tensor import SparseTensor, add_diagonal, parse_tensor, row_sums

EXIT_INPUT, EXIT_PRECONDITION, EXIT_CONVERGENCE = 2, 3, 4


# -- serialization ----------------------------------------------------------

def _float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def to_json(obj) -> str:
    """Key-sorted JSON with floats at 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_text(obj, prefix="") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for k, v in sorted(obj.items()):
            key = f"{prefix}.{k}" if prefix else k
            if isinstance(v, dict):
                lines += to_text(v, key)
            else:
                lines.append(f"{key}: {to_json(v)}")
        return lines
    return [f"{prefix}: {to_json(obj)}"]


# -- input handling ---------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_input(path: str):
    text = _read(path)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            kind = line.split()[0]
            break
    else:
        raise InputError(f"{path} is empty")
    if kind == "tensor":
        T = parse_tensor(text)
        return T, {"file": path, "kind": "tensor", "order": T.order, "n": T.dim, "entries": T.nnz}
    if kind == "hypergraph":
        H = parse_hypergraph(text)
        return H, {"file": path, "kind": "hypergraph", "order": H.k, "n": H.n, "edges": len(H.edges)}
    raise InputError(f"{path}: unknown file kind {kind!r} (expected 'tensor' or 'hypergraph')")


def _read_vector(spec: str, n: int, what: str) -> np.ndarray:
    path = spec[len("file:"):]
    vals = []
    for lineno, raw in enumerate(_read(path).splitlines(), start=1):
        for f in raw.split("#", 1)[0].split():
            try:
                vals.append(float(f))
            except ValueError:
                raise InputError(f"{path}: malformed number {f!r}", lineno) from None
    if len(vals) != n:
        raise InputError(f"{path}: {what} file has {len(vals)} values, expected {n}")
    return np.array(vals)


def _as_tensor(obj, cap: int, operator: str = "adjacency") -> SparseTensor:
    if isinstance(obj, SparseTensor):
        return obj
    return signless_laplacian_tensor(obj, cap) if operator == "qlap" else adjacency_tensor(obj, cap)


def _one_based(pair):
    return [int(i) + 1 for i in pair]


def _bound_fields(rep: BoundReport, pairs: bool) -> dict:
    out = {
        "method": rep.method,
        "lower": rep.lower,
        "upper": rep.upper,
        "argmin": _one_based(rep.argmin),
        "argmax": _one_based(rep.argmax),
        "equality": None,
    }
    if rep.equality is not None:
        eq = {"kind": rep.equality.kind, "value": rep.equality.value}
        if rep.equality.partition is not None:
            part = rep.equality.partition
            eq.update(U=sorted(i + 1 for i in part.U), W=sorted(i + 1 for i in part.W), ell=part.ell)
        out["equality"] = eq
    if pairs and rep.pair_values is not None:
        out["pair_values"] = [[i + 1, j + 1, f] for i, j, f in rep.pair_values]
    return out


def _oracle_fields(B: SparseTensor, cfg: IterationConfig, rep: BoundReport | None = None):
    est = perron(B, cfg)
    out = {
        "rho": est.rho,
        "residual": est.residual,
        "iterations": est.iterations,
        "bracket_width": est.bracket_width,
    }
    if rep is not None:
        out["sandwich_margin"] = min(est.rho - rep.lower, rep.upper - est.rho)
    return est, out


def _config(args) -> IterationConfig:
    return IterationConfig(tol=args.tol, max_iter=args.max_iter, shift=args.shift)


# -- subcommands ------------------------------------------------------------

def cmd_check(args, obj) -> dict:
    out = {}
    if isinstance(obj, Hypergraph):
        out["connected"] = is_connected(obj)
        out["degrees"] = [int(d) for d in obj.degrees()]
        T = adjacency_tensor(obj, args.cap)
    else:
        T = obj
    irreducible = is_weakly_irreducible(T)
    r = row_sums(T)
    out.update(
        weakly_irreducible=irreducible,
        neighbor_nonempty=neighbor_nonempty_check(T),
        zero_diagonal=T.has_zero_diagonal(),
        row_sum_min=float(r.min()),
        row_sum_max=float(r.max()),
        bipartition=None,
    )
    if irreducible and T.has_zero_diagonal() and T.dim >= 2:
        split = bipartition_structure(T)
        if split is not None:
            out["bipartition"] = {"U": sorted(i + 1 for i in split.U), "W": sorted(i + 1 for i in split.W)}
    return out


def cmd_rho(args, obj) -> dict:
    B = _as_tensor(obj, args.cap, args.operator)
    _, out = _oracle_fields(B, _config(args))
    if isinstance(obj, Hypergraph):
        out["operator"] = args.operator
    return out


def cmd_bounds(args, obj) -> dict:
    A = _as_tensor(obj, args.cap)
    n = A.dim
    if args.shifts == "none":
        t = np.zeros(n)
    elif args.shifts.startswith("file:"):
        t = _read_vector(args.shifts, n, "shift")
    else:
        raise InputError(f"--shifts must be 'none' or 'file:<path>', got {args.shifts!r}")

    est = None
    if args.oracle:
        if not A.has_zero_diagonal():
            raise PreconditionError("bounds need a tensor with zero diagonal")
        B = add_diagonal(A, t)
        est, oracle = _oracle_fields(B, _config(args))

    if args.weights == "rowsum":
        rep = rowsum_weighted_bounds(A, t, est=est, pairs=args.pairs)
    elif args.weights == "unit":
        rep = general_bounds(A, t, None, est=est, pairs=args.pairs)
    elif args.weights.startswith("file:"):
        R = _read_vector(args.weights, n, "weight")
        rep = general_bounds(A, t, R, est=est, pairs=args.pairs)
    else:
        raise InputError(f"--weights must be rowsum, unit or file:<path>, got {args.weights!r}")

    out = _bound_fields(rep, args.pairs)
    rs = row_sum_bounds(add_diagonal(A, t))
    out["row_sum_bounds"] = {"lower": rs.lower, "upper": rs.upper, "uniform": rs.equality is not None}
    if est is not None:
        oracle["sandwich_margin"] = min(est.rho - rep.lower, rep.upper - est.rho)
        out.update(oracle)
    return out


def cmd_hg(args, H) -> dict:
    if not isinstance(H, Hypergraph):
        raise InputError("hg expects a hypergraph file")
    if args.weights in ("degree", "unit"):
        b = args.weights
    elif args.weights.startswith("file:"):
        b = _read_vector(args.weights, H.n, "weight")
    else:
        raise InputError(f"--weights must be degree, unit or file:<path>, got {args.weights!r}")

    est = oracle = None
    if args.oracle:
        B = _as_tensor(H, args.cap, args.operator)
        if not is_connected(H):
            raise PreconditionError("hypergraph is not connected")
        est, oracle = _oracle_fields(B, _config(args))

    if H.k == 2:
        rep = matrix_bounds(H, args.operator, b, est=est)
        route = "matrix"
    else:
        fn = qlaplacian_bounds if args.operator == "qlap" else adjacency_bounds
        rep = fn(H, b)
        route = "closed-form"
    out = _bound_fields(rep, False)
    out.update(operator=args.operator, route=route)
    if oracle is not None:
        oracle["sandwich_margin"] = min(est.rho - rep.lower, rep.upper - est.rho)
        out.update(oracle)
    return out


COMMANDS = {"check": cmd_check, "rho": cmd_rho, "bounds": cmd_bounds, "hg": cmd_hg}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="tensor or hypergraph text file")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="max stored entries when materializing a hypergraph tensor")
    common.add_argument("--timing", action="store_true", help="add elapsed_ms to the report")

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--tol", type=float, default=1e-12)
    oracle.add_argument("--max-iter", type=int, default=100_000)
    oracle.add_argument("--shift", type=float, default=1.0)

    parser = argparse.ArgumentParser(
        prog="tensorbounds",
        description="Spectral radius bounds for nonnegative weakly irreducible tensors.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common], help="weak irreducibility and structure")

    p = sub.add_parser("rho", parents=[common, oracle], help="spectral radius by power iteration")
    p.add_argument("--operator", choices=("adjacency", "qlap"), default="adjacency",
                   help="tensor to build from a hypergraph file")

    p = sub.add_parser("bounds", parents=[common, oracle], help="pair bounds for a tensor")
    p.add_argument("--weights", default="rowsum", help="rowsum | unit | file:<path>")
    p.add_argument("--shifts", default="none", help="none | file:<path>")
    p.add_argument("--pairs", action="store_true", help="emit the full pair table")
    p.add_argument("--oracle", action="store_true", help="also run the power iteration")

    p = sub.add_parser("hg", parents=[common, oracle], help="closed-form hypergraph bounds")
    p.add_argument("--operator", choices=("adjacency", "qlap"), default="adjacency")
    p.add_argument("--weights", default="degree", help="degree | unit | file:<path>")
    p.add_argument("--oracle", action="store_true", help="also run the power iteration")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    start = time.perf_counter()
    try:
        obj, descriptor = load_input(args.file)
        report = {"command": args.command, "input": descriptor}
        report.update(COMMANDS[args.command](args, obj))
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except ConvergenceError as exc:
        print(f"not converged: {exc}", file=stderr)
        return EXIT_CONVERGENCE
    if args.timing:
        report["elapsed_ms"] = (time.perf_counter() - start) * 1000.0

    if args.format == "json":
        stdout.write(to_json(report) + "\n")
    else:
        stdout.write("\n".join(to_text(report)) + "\n")
    return 0


def main():
    sys.exit(run())
