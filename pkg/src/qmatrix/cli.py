"""Command-line front end.

Exit status: 0 when every check passes, 1 on a verification failure and 2
on usage, parse or shape errors.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import analysis
from .errors import ExpressionSyntaxError, NoUniformTwist, QMatrixError
from .expr import evaluate_text
from .linalg import compare_spaces
from .minors import quantum_determinant, quantum_minor
from .pbw import QuantumMatrixAlgebra
from .verify import default_manifest, load_manifest, replay_n3_proof, run_records

__all__ = ["main", "build_parser"]

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _index_list(text):
    try:
        return tuple(int(x) for x in text.strip("[]").split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated index list: {text!r}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="qmatrix", description="Exact computations in O_q(M_{m,n}).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="number of columns (and rows unless --m)")
    common.add_argument("--m", type=int, default=None, help="number of rows")
    common.add_argument("--q", type=_fraction, default=None, help="specialize q to this rational")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    s.add_argument("expr")
    s = sub.add_parser("minor", parents=[common], help="expand a quantum minor")
    s.add_argument("rows", type=_index_list)
    s.add_argument("cols", type=_index_list)
    sub.add_parser("det", parents=[common], help="expand the quantum determinant")
    s = sub.add_parser("verify", parents=[common], help="run the identity suite")
    s.add_argument("--manifest", default=None)
    s = sub.add_parser("replay", parents=[common], help="replay the n = 3 proof steps")
    s.add_argument("--manifest", default=None)
    s = sub.add_parser("center", parents=[common], help="central elements of bounded degree")
    s.add_argument("--maxdeg", type=int, default=2)
    s.add_argument("--exact", action="store_true", help="full elimination over Q(q)")
    s = sub.add_parser("derivations", parents=[common], help="graded derivations of degree shift")
    s.add_argument("--shift", type=int, default=1)
    s.add_argument("--exact", action="store_true", help="full elimination over Q(q)")
    s = sub.add_parser("normal-check", parents=[common], help="q-central certificate")
    s.add_argument("expr")
    s = sub.add_parser("twist", parents=[common], help="k with u*Y = q^k*Y*u")
    s.add_argument("expr")
    s.add_argument("generator", help="a generator such as Y[1,2]")
    return p


def _algebra(args):
    if args.n < 1 or (args.m is not None and args.m < 1):
        raise UsageError("shape dimensions must be positive")
    alg = QuantumMatrixAlgebra(args.m or args.n, args.n)
    if args.q is not None:
        alg = alg.specialized(args.q)
    return alg


def _mode(args):
    if getattr(args, "exact", False):
        return "exact"
    return args.q if args.q is not None else analysis.DEFAULT_SPECIALIZATIONS[0]


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_element(args, x):
    _emit(args, {"shape": [x.algebra.m, x.algebra.n], "element": x.to_text()}, x.to_text())
    return OK


def _cmd_suite(args, report):
    lines = [f"{r.name}: {r.status}" + ("" if r.passed else
             f" (residual {r.residual.to_text() if r.residual is not None else r.detail})")
             for r in report.results]
    lines.append(f"{len(report.results) - len(report.failures)}/{len(report.results)} passed")
    _emit(args, report.to_json(), "\n".join(lines))
    return OK if report.passed else FAILED


def _cmd_center(args):
    alg = QuantumMatrixAlgebra(args.m or args.n, args.n)
    space = analysis.center_basis(alg, args.maxdeg, _mode(args))
    elems = analysis.space_elements(space, alg)
    checks = [analysis.is_central(e) for e in elems]
    payload = {
        "shape": [alg.m, alg.n], "maxdeg": args.maxdeg, "mode": space.description["mode"],
        "dim": space.dim, "basis": [e.to_text() for e in elems],
        "residuals": ["0" if ok else "nonzero" for ok in checks],
    }
    text = f"dim {space.dim}\n" + "\n".join(e.to_text() for e in elems)
    _emit(args, payload, text)
    return OK if all(checks) else FAILED


def _cmd_derivations(args):
    alg = QuantumMatrixAlgebra(args.m or args.n, args.n)
    space = analysis.graded_derivation_space(alg, args.shift, _mode(args))
    inner = analysis.inner_derivation_space(alg, args.shift)
    cmp = compare_spaces(space, inner)
    ders = analysis.space_derivations(space, alg)
    residual_ok = [d.is_derivation() for d in ders]
    payload = {
        "shape": [alg.m, alg.n], "shift": args.shift, "mode": space.description["mode"],
        "dim": space.dim, "inner_dim": inner.dim, "comparison": cmp.relation,
        "basis": [d.to_json() for d in ders],
        "residuals": ["0" if ok else "nonzero" for ok in residual_ok],
        "witness_space_not_inner": _witness(space, cmp.in_a_not_b, alg),
        "witness_inner_not_space": _witness(space, cmp.in_b_not_a, alg),
    }
    text = (f"dim {space.dim}, inner span dim {inner.dim}, relation: {cmp.relation}\n"
            + "\n".join(json.dumps(d.to_json(), sort_keys=True) for d in ders))
    _emit(args, payload, text)
    return OK if all(residual_ok) else FAILED


def _witness(space, vec, alg):
    if vec is None:
        return None
    return analysis.vector_to_derivation(vec, space.coords, alg).to_json()


def _cmd_normal(args, alg):
    u = evaluate_text(args.expr, alg)
    try:
        cert = analysis.is_normal_qcentral(u)
    except NoUniformTwist as exc:
        payload = {"element": u.to_text(), "q_central": False, "generator": list(exc.generator or ()),
                   "message": str(exc)}
        _emit(args, payload, f"not q-central: {exc}")
        return FAILED
    payload = cert.to_json()
    payload["q_central"] = True
    text = "q-central\n" + "\n".join(f"Y[{i},{a}]: q^{k}" for (i, a), k in sorted(cert.twists.items()))
    _emit(args, payload, text)
    return OK if payload["verified"] else FAILED


def _cmd_twist(args, alg):
    u = evaluate_text(args.expr, alg)
    g = evaluate_text(args.generator, alg)
    try:
        k = analysis.q_commutation_twist(u, g)
    except NoUniformTwist as exc:
        _emit(args, {"element": u.to_text(), "generator": args.generator, "k": None}, str(exc))
        return FAILED
    _emit(args, {"element": u.to_text(), "generator": args.generator, "k": k}, str(k))
    return OK


def dispatch(args):
    cmd = args.command
    if cmd in ("center", "derivations"):
        return _cmd_center(args) if cmd == "center" else _cmd_derivations(args)
    alg = _algebra(args)
    if cmd == "nf":
        return _cmd_element(args, evaluate_text(args.expr, alg))
    if cmd == "minor":
        return _cmd_element(args, quantum_minor(alg, args.rows, args.cols))
    if cmd == "det":
        return _cmd_element(args, quantum_determinant(alg))
    if cmd == "verify":
        if args.manifest is None and alg.n not in (2, 3):
            raise UsageError("shipped identity suites exist for n = 2 and n = 3")
        path = args.manifest or default_manifest(f"identities_n{alg.n}.json")
        return _cmd_suite(args, run_records(load_manifest(path), alg))
    if cmd == "replay":
        if alg.n != 3 or alg.m != 3:
            raise UsageError("the replay is for the 3x3 case")
        return _cmd_suite(args, replay_n3_proof(alg, args.manifest))
    if cmd == "normal-check":
        return _cmd_normal(args, alg)
    if cmd == "twist":
        return _cmd_twist(args, alg)
    raise UsageError(f"unknown command {cmd}")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return dispatch(args)
    except (UsageError, ExpressionSyntaxError, QMatrixError, ValueError, IndexError,
            OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
