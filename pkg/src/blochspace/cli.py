"""Command-line front end: ``blochspace <command> ...``.

Exit codes: check uses 0/1/2 for INSIDE/OUTSIDE/BOUNDARY and 3 for a
method disagreement; ppt uses 0/1/2 for SEPARABLE/ENTANGLED/PPT_INCONCLUSIVE.
Usage errors exit 64, domain errors 65, I/O errors 74.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from .errors import BlochError
from .generators import build_generator_basis, structure_constants
from .membership import DEFAULT_TOL, Decision, eigenvalue_oracle, is_bloch_vector
from .sampling import KINDS, sample_states
from .sections3 import SectionSpec, boundary_curves, section_cells
from .separability import CompositeDims, ppt_verdict
from .statemap import bloch_to_matrix, matrix_to_bloch

EX_USAGE = 64
EX_DATAERR = 65
EX_IOERR = 74
EX_DISAGREE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    return format(float(x), ".17g")


def to_json(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise BlochError("non-finite value in output")
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    return "[" + ", ".join(to_json(x) for x in obj) + "]"


def encode_matrix(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def decode_matrix(data) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise BlochError(f"matrix JSON must be an NxN array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def load_json_arg(value: str):
    """Read a JSON file, or parse ``value`` itself as an inline JSON literal."""
    if os.path.exists(value):
        try:
            with open(value) as fh:
                return json.load(fh)
        except json.JSONDecodeError as exc:
            raise BlochError(f"{value}: invalid JSON ({exc})") from exc
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        raise OSError(f"cannot read {value!r}: no such file") from None


def _open_out(path):
    return open(path, "w", newline="") if path else None


def _emit(text, out=None):
    (out or sys.stdout).write(text)


def _default_tol():
    env = os.environ.get("BLOCH_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise UsageError(f"BLOCH_TOL={env!r} is not a number") from None


def cmd_generators(args):
    basis = build_generator_basis(args.n)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["index", "row", "col", "re", "im"])
        for idx, m in enumerate(basis.matrices, start=1):
            for r in range(basis.n):
                for c in range(basis.n):
                    w.writerow([idx, r + 1, c + 1, fmt(m[r, c].real), fmt(m[r, c].imag)])
    else:
        _emit(to_json([encode_matrix(m) for m in basis.matrices]) + "\n")
    return 0


def cmd_structure_constants(args):
    sc = structure_constants(args.n)
    lines = ["i,j,k,f,g"]
    lines += [f"{i},{j},{k},{fmt(f)},{fmt(g)}" for i, j, k, f, g in sc.triples()]
    _emit("\n".join(lines) + "\n")
    return 0


def cmd_to_rho(args):
    basis = build_generator_basis(args.n)
    v = np.asarray(load_json_arg(args.vector), dtype=np.float64)
    _emit(to_json(encode_matrix(bloch_to_matrix(v, basis))) + "\n")
    return 0


def cmd_to_bloch(args):
    rho = decode_matrix(load_json_arg(args.matrix))
    basis = build_generator_basis(rho.shape[0])
    _emit(to_json(matrix_to_bloch(rho, basis)) + "\n")
    return 0


def _verdict_dict(v):
    return {"decision": v.decision.name, "margins": list(v.margins), "failing_index": v.failing_index}


def _verdict_table(label, v):
    head = "a_i" if label == "coeff" else "eigenvalue"
    rows = [f"method: {label}", f"decision: {v.decision.name}", f"{'i':>3}  {head}"]
    for idx, m in enumerate(v.margins, start=1):
        flag = "  <- fails" if v.failing_index == idx else ""
        rows.append(f"{idx:>3}  {fmt(m)}{flag}")
    return "\n".join(rows) + "\n"


def cmd_check(args):
    basis = build_generator_basis(args.n)
    v = np.asarray(load_json_arg(args.vector), dtype=np.float64)
    verdicts = {}
    if args.method in ("coeff", "both"):
        verdicts["coeff"] = is_bloch_vector(v, basis, args.tol)
    if args.method in ("eigen", "both"):
        verdicts["eigen"] = eigenvalue_oracle(bloch_to_matrix(v, basis), args.tol)
    decisions = {x.decision for x in verdicts.values()}
    code = EX_DISAGREE if len(decisions) > 1 else int(next(iter(decisions)))
    if args.json:
        payload = {k: _verdict_dict(x) for k, x in verdicts.items()}
        if args.method == "both":
            payload["agree"] = code != EX_DISAGREE
        _emit(to_json(payload) + "\n")
    else:
        _emit("\n".join(_verdict_table(k, x) for k, x in verdicts.items()))
        if code == EX_DISAGREE:
            _emit("methods disagree\n")
    return code


def cmd_section(args):
    spec = SectionSpec(args.i, args.j, resolution=args.res)
    li, lj, cells, _ = section_cells(spec, build_generator_basis(3), args.tol)
    out = _open_out(args.out)
    try:
        w = csv.writer(out or sys.stdout, lineterminator="\n")
        w.writerow(["lambda_i", "lambda_j", "class"])
        for x, y, c in zip(li, lj, cells):
            w.writerow([fmt(x), fmt(y), c])
    finally:
        if out:
            out.close()
    if args.emit_boundary:
        with open(args.emit_boundary, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["curve", "point", "lambda_i", "lambda_j"])
            for name, (xs, ys) in boundary_curves(args.i, args.j).items():
                for p, (x, y) in enumerate(zip(xs, ys)):
                    w.writerow([name, p, fmt(x), fmt(y)])
    return 0


def cmd_ppt(args):
    dims = CompositeDims.parse(args.dims)
    rho = decode_matrix(load_json_arg(args.matrix))
    v = ppt_verdict(rho, dims, args.tol)
    _emit(f"decision: {v.decision.name}\nmin_margin: {fmt(v.min_margin)}\n")
    return int(v.decision)


def cmd_sample(args):
    vecs = sample_states(args.n, args.count, args.kind, args.seed)
    out = _open_out(args.out)
    try:
        for row in vecs:
            _emit(to_json(row) + "\n", out)
    finally:
        if out:
            out.close()
    return 0


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return value


def build_parser(default_tol: float = DEFAULT_TOL) -> argparse.ArgumentParser:
    p = _Parser(prog="blochspace", description="Bloch-vector geometry for N-level systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("generators", cmd_generators, "Dump the generalized Gell-Mann basis.")
    sp.add_argument("--n", type=int, required=True)
    fmt_group = sp.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", action="store_true", help="JSON (default): list of NxN [re, im] arrays")
    fmt_group.add_argument("--csv", action="store_true", help="CSV rows index,row,col,re,im")

    sp = add("structure-constants", cmd_structure_constants, "Dump nonzero f and g as CSV.")
    sp.add_argument("--n", type=int, required=True)

    sp = add("to-rho", cmd_to_rho, "Map a Bloch vector to its unit-trace Hermitian matrix.")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--vector", required=True, help="JSON file (or inline JSON) with N^2-1 reals")

    sp = add("to-bloch", cmd_to_bloch, "Map a unit-trace Hermitian matrix to its Bloch vector.")
    sp.add_argument("--matrix", required=True, help="JSON file (or inline JSON): NxN array of [re, im]")

    sp = add("check", cmd_check, "Decide whether a vector is a physical Bloch vector.")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--vector", required=True, help="JSON file (or inline JSON) with N^2-1 reals")
    sp.add_argument("--tol", type=_positive_float, default=default_tol)
    sp.add_argument("--method", choices=("coeff", "eigen", "both"), default="coeff")
    sp.add_argument("--json", action="store_true")

    sp = add("section", cmd_section, "Sample a 2-D section of the qutrit Bloch space.")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--res", type=int, default=401)
    sp.add_argument("--out")
    sp.add_argument("--emit-boundary", metavar="PATH")
    sp.add_argument("--tol", type=_positive_float, default=default_tol)

    sp = add("ppt", cmd_ppt, "Peres-Horodecki PPT test on a bipartite state.")
    sp.add_argument("--dims", required=True, help="e.g. 2x2 or 2x3")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--tol", type=_positive_float, default=default_tol)

    sp = add("sample", cmd_sample, "Emit seeded random Bloch vectors, one JSON array per line.")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--kind", choices=KINDS, default="mixed")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_tol())
    except UsageError as exc:
        print(f"blochspace: error: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    try:
        return args.func(args)
    except (BlochError, ValueError) as exc:
        print(f"blochspace: invalid input: {exc}", file=sys.stderr)
        return EX_DATAERR
    except OSError as exc:
        print(f"blochspace: I/O error: {exc}", file=sys.stderr)
        return EX_IOERR


if __name__ == "__main__":
    sys.exit(main())
