"""Command-line front end.

Every subcommand prints one JSON report (or a plain-text rendering).
The exit status is 0 when all verdicts hold and 2 when some verdict
fails.  Malformed input and operational errors exit with 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .berger import AtomicMeasure, BergmanMeasure, RecursionSpec, berger_measure, is_subnormal_recursive, measure_from_atoms
from .errors import WShiftError
from .extension import extension_weights, is_subnormal, tail_measure
from .hankel import hankel, is_k_hyponormal
from .numerics import as_fraction, fmt_q, q_json
from .perturb import gap_witness, modulus_h2, omega_interval, theorem32_check
from .quad import dn_table, is_positively_quad_hyponormal, is_quad_hyponormal
from .shifts import WeightSequence, is_hyponormal_up_to

EXIT_OK, EXIT_INPUT, EXIT_FAILS = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _load_sequence(path: str) -> WeightSequence:
    try:
        return WeightSequence.from_json(_load_json(path))
    except WShiftError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_measure(path: str, precision: int):
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: measure JSON must be an object")
    try:
        if data.get("kind") == "bergman":
            return BergmanMeasure(int(data.get("m", 0)), as_fraction(data.get("scale", 1)))
        if "atoms" in data:
            return measure_from_atoms(data["atoms"], data["densities"])
        if "phi" in data:
            return berger_measure(RecursionSpec(data["phi"], data["gamma"]), precision)
        if "tail" in data:
            found = tail_measure(WeightSequence.from_json(data))
            if found is None:
                raise InputError(f"{path}: tail has no recognized Berger measure")
            m0, mu = found
            if m0 != 0:
                raise InputError(f"{path}: sequence is not recursive from index 0 (starts at {m0})")
            return berger_measure(mu, precision) if isinstance(mu, RecursionSpec) else mu
    except KeyError as exc:
        raise InputError(f"{path}: missing field {exc}") from exc
    except (WShiftError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    raise InputError(f"{path}: expected atoms/densities, phi/gamma, a bergman kind or a sequence")


def _recursion_args(args) -> RecursionSpec:
    if args.path:
        data = _load_json(args.path)
        try:
            return RecursionSpec(data["phi"], data["gamma"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"{args.path}: expected phi and gamma lists") from exc
    if args.phi is None or args.gamma is None:
        raise InputError("berger needs a JSON file or both --phi and --gamma")
    return RecursionSpec(_qlist(args.phi), _qlist(args.gamma))


def _qlist(text: str) -> list[Fraction]:
    return [as_fraction(part) for part in text.split(",") if part.strip()]


def _fails(*verdicts) -> bool:
    return any(v.fails for v in verdicts)


# --- subcommands: each returns (report dict, failed flag, csv rows) ---


def cmd_analyze(args):
    seq = _load_sequence(args.path)
    N = args.nmax
    hypo = is_hyponormal_up_to(seq, N)
    khypo = {str(k): is_k_hyponormal(seq, k, N) for k in range(2, args.kmax + 1)}
    quad = is_quad_hyponormal(seq, N)
    pqh = is_positively_quad_hyponormal(seq, N)
    sub = is_subnormal(seq, args.precision)
    report = {
        "input": seq.to_json(),
        "hyponormal": hypo.to_json(),
        "k_hyponormal": {k: v.to_json() for k, v in khypo.items()},
        "quadratically_hyponormal": quad.to_json(),
        "positively_quadratically_hyponormal": pqh.to_json(),
        "subnormal": sub.to_json(),
    }
    rows = [["test", "verdict", "n"]]
    rows.append(["hyponormal", hypo.status, hypo.n])
    rows += [[f"{k}-hyponormal", v.status, v.n] for k, v in khypo.items()]
    rows += [["quad", quad.status, quad.n], ["pqh", pqh.status, pqh.n], ["subnormal", sub.status, sub.n]]
    return report, _fails(hypo, quad, pqh, sub, *khypo.values()), rows


def cmd_khypo(args):
    seq = _load_sequence(args.path)
    v = is_k_hyponormal(seq, args.k, args.nmax, certify=args.certify)
    rows = [["n", "det"]] + [[n, fmt_q(hankel(seq, n, args.k).matrix.det())] for n in range(min(args.nmax, v.n if v.fails else args.nmax) + 1)]
    return {"input": seq.to_json(), "k_hyponormal": v.to_json()}, v.fails, rows


def _dn_rows(seq, N):
    rows = [["n", "i", "c"]]
    for d in dn_table(seq, N):
        rows += [[d.n, i, fmt_q(d[i])] for i in range(d.n + 2)]
    return rows


def cmd_quadhypo(args):
    seq = _load_sequence(args.path)
    v = is_quad_hyponormal(seq, args.nmax)
    return {"input": seq.to_json(), "quadratically_hyponormal": v.to_json()}, v.fails, _dn_rows(seq, args.nmax)


def cmd_pqh(args):
    seq = _load_sequence(args.path)
    v = is_positively_quad_hyponormal(seq, args.nmax)
    return {"input": seq.to_json(), "positively_quadratically_hyponormal": v.to_json()}, v.fails, _dn_rows(seq, args.nmax)


def cmd_berger(args):
    spec = _recursion_args(args)
    mu = berger_measure(spec, args.precision)
    v = is_subnormal_recursive(spec, args.precision)
    report = {"recursion": spec.to_json(), "measure": mu.to_json(), "subnormal": v.to_json()}
    rows = [["atom", "density"]] + [[str(a), str(d)] for a, d in zip(mu.atoms, mu.densities)]
    return report, v.fails, rows


def cmd_extend(args):
    mu = _load_measure(args.path, args.precision)
    if isinstance(mu, AtomicMeasure) and not mu.valid:
        raise InputError("measure is not a valid Berger measure: " + ", ".join(mu.reasons))
    rep = extension_weights(mu, args.steps)
    rows = [["j", "x_j^2", "kind"]] + [[j, fmt_q(x), "forced"] for j, x in enumerate(rep.forced, start=1)]
    if rep.bound is not None:
        rows.append([args.steps, fmt_q(rep.bound), "upper_bound"])
    return {"measure": mu.to_json(), "extension": rep.to_json()}, not rep.feasible, rows


def _interval_rows(res):
    return [
        ["endpoint", "member", "enclosure_lo", "enclosure_hi", "closed"],
        ["lower", fmt_q(res.lower_in), fmt_q(res.lower.lo), fmt_q(res.lower.hi), res.lower_closed],
        ["upper", fmt_q(res.upper_in), fmt_q(res.upper.lo), fmt_q(res.upper.hi), res.upper_closed],
    ]


def cmd_omega(args):
    seq = _load_sequence(args.path)
    res = omega_interval(seq, args.k, args.j, args.tol, args.nmax)
    return {"input": seq.to_json(), "interval": res.to_json()}, False, _interval_rows(res)


def cmd_h2(args):
    res = modulus_h2(args.a, args.b, args.c, args.tol, args.nmax)
    report = {
        "a": fmt_q(args.a),
        "b": fmt_q(args.b),
        "c": fmt_q(args.c),
        "H2": q_json(res.upper_in),
        "H2_enclosure": res.upper.to_json(),
        "interval": res.to_json(),
    }
    return report, False, _interval_rows(res)


def cmd_gap(args):
    seq = _load_sequence(args.path)
    x, two, pqh = gap_witness(seq, args.j, args.tol, args.nmax)
    report = {
        "input": seq.to_json(),
        "j": args.j,
        "witness_sq": q_json(x),
        "two_hyponormal": two.to_json(),
        "positively_quadratically_hyponormal": pqh.to_json(),
    }
    return report, False, [["witness_sq", "two_hyponormal", "pqh"], [fmt_q(x), two.status, pqh.status]]


def cmd_theorem32(args):
    sub, two = theorem32_check(args.a, args.b, args.c, args.j, args.x, args.nmax)
    report = {
        "a": fmt_q(args.a),
        "b": fmt_q(args.b),
        "c": fmt_q(args.c),
        "j": args.j,
        "x": fmt_q(args.x),
        "subnormal": sub.to_json(),
        "two_hyponormal": two.to_json(),
        "agree": sub.holds == two.holds,
    }
    return report, _fails(sub, two), [["subnormal", "two_hyponormal"], [sub.status, two.status]]


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines += _text(val, indent + 1)
        else:
            lines.append(f"{pad}{key}: {val}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=as_fraction, default=Fraction(1, 10**12), help="bisection tolerance (default 1e-12)")
    common.add_argument("--nmax", type=int, default=50, help="horizon N for index-wise tests (default 50)")
    common.add_argument("--precision", type=int, default=50, help="significant digits for irrational atoms (default 50)")
    common.add_argument("--out", help="also write the JSON report to this file")
    common.add_argument("--csv", help="write a flat table for external plotting")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")

    ap = argparse.ArgumentParser(prog="wshift", description="Exact positivity tests for unilateral weighted shifts.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="run every test on a sequence file")
    p.add_argument("path")
    p.add_argument("--kmax", type=int, default=3)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("khypo", parents=[common], help="k-hyponormality via Hankel moment matrices")
    p.add_argument("path")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--certify", action="store_true", help="upgrade to 'holds' when subnormality is certified")
    p.set_defaults(func=cmd_khypo)

    p = sub.add_parser("quadhypo", parents=[common], help="quadratic hyponormality (exact Sturm decision)")
    p.add_argument("path")
    p.set_defaults(func=cmd_quadhypo)

    p = sub.add_parser("pqh", parents=[common], help="positive quadratic hyponormality (all c(n,i) >= 0)")
    p.add_argument("path")
    p.set_defaults(func=cmd_pqh)

    p = sub.add_parser("berger", parents=[common], help="Berger measure of a recursively generated shift")
    p.add_argument("path", nargs="?")
    p.add_argument("--phi", help="comma-separated recursion coefficients, e.g. -2,4")
    p.add_argument("--gamma", help="comma-separated seed moments, e.g. 1,3")
    p.set_defaults(func=cmd_berger)

    p = sub.add_parser("extend", parents=[common], help="n-step subnormal extension of a measure")
    p.add_argument("path")
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("omega", parents=[common], help="interval of admissible values for one weight")
    p.add_argument("path")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--j", type=int, default=1)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("h2", parents=[common], help="modulus of 2-hyponormality for (a, b, c)")
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=as_fraction, required=True)
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("gap", parents=[common], help="positively quadratically hyponormal point outside the 2-hyponormal interval")
    p.add_argument("path")
    p.add_argument("--j", type=int, default=1)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("theorem32", parents=[common], help="subnormal vs 2-hyponormal for one perturbed weight")
    for name in ("a", "b", "c", "x"):
        p.add_argument(f"--{name}", type=as_fraction, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_theorem32)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report, failed, rows = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (WShiftError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"command": args.command, **report}
    if not args.no_timing:
        report["timing"] = {"elapsed_s": round(time.perf_counter() - start, 6)}
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.format == "json":
        print(text)
    else:
        print("\n".join(_text(report)))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(rows)
    return EXIT_FAILS if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
