"""Command line entry point: ``qreach {check,period,skolem,minsky,oracle}``.

Exit codes: 0 property holds, 1 fails, 2 unknown, 3 unsupported request,
4 bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import minsky, oracle
from .automaton import NegationError, formula_dim, is_positive
from .formats import (
    FormatError,
    automaton_from_json,
    dumps,
    formula_from_json,
    load_file,
    loads,
    operator_from_json,
    subspace_to_json,
    vector_from_json,
)
from .globreach import decide_g, decide_u
from .infreach import decide_i
from .linalg import DimensionMismatch, NotScaledUnitary
from .period import period
from .single import classify_zero_set
from .verdict import Verdict

log = logging.getLogger("qreach")

HOLDS, FAILS, UNKNOWN, UNSUPPORTED, BAD_INPUT = 0, 1, 2, 3, 4

UNDECIDABLE = (
    "{prop} reachability is undecidable once the formula contains negation; "
    "only negation-free formulas are decided (use 'oracle' for bounded evidence)"
)


class Unsupported(Exception):
    pass


def _exit_code(holds):
    return {True: HOLDS, False: FAILS, None: UNKNOWN}[holds]


def _emit(args, payload, text_lines):
    if getattr(args, "json", False):
        sys.stdout.write(dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _word(w) -> str:
    return " ".join(w) if w else "(empty word)"


def _basis_lines(space, indent="  "):
    return [indent + "[" + ", ".join(str(x) for x in row) + "]" for row in space.basis]


# loading


def _load_problem(args):
    a = automaton_from_json(load_file(args.automaton))
    f = formula_from_json(load_file(args.formula))
    if formula_dim(f) != a.ambient_dim:
        raise DimensionMismatch(
            f"formula lives in dimension {formula_dim(f)}, automaton in {a.ambient_dim}"
        )
    return a, f


def _start_vector(args, a):
    if args.start is not None:
        text = args.start
        obj = loads(text) if text.lstrip().startswith("[") else load_file(text)
        v = vector_from_json(obj)
        if len(v) != a.ambient_dim:
            raise DimensionMismatch(f"start vector must have length {a.ambient_dim}")
        if not any(v):
            raise ValueError("start vector must be nonzero")
        return v
    if a.initial.dim != 1:
        raise Unsupported(
            f"the initial subspace has dimension {a.initial.dim}; pick a state with --start"
        )
    return a.initial.basis[0]


# check


def cmd_check(args) -> int:
    a, f = _load_problem(args)
    prop = args.prop
    if prop == "F":
        if args.bound is None:
            raise Unsupported(
                "eventual reachability is undecidable in general; "
                "pass --bound N for the bounded semi-decision"
            )
        start = _start_vector(args, a)
        rep = oracle.bounded_f(a, f, start, args.bound, force=args.force)
        holds = True if rep.verdict == oracle.CONFIRMED else None
        cert = {"bound": args.bound, "sweep": rep.verdict, "start": start}
        if holds:
            cert["depth"] = max(i for _, i in rep.hits)
        verdict = Verdict("F", holds, cert)
    else:
        if not is_positive(f):
            raise NegationError(UNDECIDABLE.format(prop=prop))
        if prop == "I":
            verdict = decide_i(a, f, trace=args.trace)
        elif prop == "G":
            verdict = decide_g(a, f)
        else:
            verdict = decide_u(a, f)
    _emit(args, verdict, _verdict_lines(verdict))
    if args.trace and not args.json and "trace" in verdict.certificate:
        for n, (case, x) in enumerate(verdict.certificate["trace"], 1):
            sys.stderr.write(f"iteration {n}: {case}\n")
            sys.stderr.write(dumps(x))
    return _exit_code(verdict.holds)


def _verdict_lines(v: Verdict):
    status = {True: "holds", False: "fails", None: "unknown"}[v.holds]
    lines = [f"{v.prop}: {status}"]
    c = v.certificate
    if "iterations" in c:
        lines.append(f"fixpoint iterations: {c['iterations']}")
    if "Y" in c:
        lines.append(f"Y has {len(c['Y'])} member(s), dimensions {[m.dim for m in c['Y'].members]}")
    if "member" in c:
        lines.append("initial subspace lies in the member spanned by:")
        lines.extend(_basis_lines(c["member"]))
    if "word" in c:
        lines.append(f"counterexample word: {_word(c['word'])}")
    if "state" in c:
        lines.append("start state: [" + ", ".join(str(x) for x in c["state"]) + "]")
    if "bound" in c:
        lines.append(f"bound: {c['bound']} ({c['sweep']})")
    return lines


# period and skolem


def cmd_period(args) -> int:
    t = operator_from_json(load_file(args.operator))
    res = period(t)
    payload = {"period": res.p, "witnesses": list(res.orders)}
    _emit(args, payload, [f"p = {res.p}", "cyclotomic witnesses: " + " ".join(map(str, res.orders))])
    return HOLDS


def cmd_skolem(args) -> int:
    obj = load_file(args.input)
    if not isinstance(obj, dict) or not {"u", "operator", "v"} <= set(obj):
        raise FormatError("skolem input needs u, operator and v")
    m = operator_from_json(obj["operator"])
    u, v = vector_from_json(obj["u"]), vector_from_json(obj["v"])
    res = classify_zero_set(u, m, v, args.bound)
    lines = [f"classification: {res.classification}"]
    if res.witness is not None:
        lines.append(f"zero at n = {res.witness}")
    if res.bound is not None:
        lines.append(f"no zero for n <= {res.bound}")
    if res.detail.get("first_zeros"):
        lines.append("first zeros: " + " ".join(map(str, res.detail["first_zeros"])))
    _emit(args, res, lines)
    return HOLDS


# minsky


def _program(args):
    with open(args.program, encoding="utf-8") as fh:
        return minsky.normalize(minsky.parse(fh.read()))


def _write(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def cmd_minsky(args) -> int:
    p = _program(args)
    if args.action == "encode":
        e = minsky.encode(p)
        payload = {
            "labels": list(p.labels),
            "dim": e.dim,
            "actions": list(e.automaton.names),
            "V_dim": e.V.dim,
            "W_dim": e.W.dim,
        }
        if args.out:
            _write(args.out, e.automaton)
        if args.v:
            _write(args.v, {"atom": subspace_to_json(e.V)})
        if args.w:
            _write(args.w, {"atom": subspace_to_json(e.W)})
        _emit(args, payload, [
            f"labels ({len(p)}): {' '.join(p.labels)}",
            f"dimension {e.dim}, actions: {' '.join(e.automaton.names)}",
            f"dim V = {e.V.dim}, dim W = {e.W.dim}",
        ])
        return HOLDS
    if args.action == "run":
        r = minsky.run_classical(p, args.max_steps)
        payload = {"halted": r.halted, "halt_step": r.halt_step, "trace": r.trace}
        lines = [f"{i}: a={a} b={b} at {x}" for i, (a, b, x) in enumerate(r.trace)]
        lines.append(f"halted at step {r.halt_step}" if r.halted else f"no halt within {args.max_steps} steps")
        _emit(args, payload, lines)
        return HOLDS if r.halted else UNKNOWN
    rep = minsky.demo(p, args.bound)
    lines = [
        f"labels {rep.labels}, dimension {rep.dim}, actions {rep.actions}",
        f"classical halt step:       {rep.halt_step if rep.halted else 'none within bound'}",
        f"first sigma0 index in V0:  {rep.first_v0}",
        f"first index in V and not W: {rep.first_target}",
        f"lockstep decode agrees:    {rep.lockstep_ok}",
        f"deviations checked {rep.deviations_checked}, outside V-and-not-W {rep.deviations_failed}",
    ]
    _emit(args, rep, lines)
    consistent = rep.lockstep_ok and not rep.deviations_failed and rep.first_v0 == rep.first_target
    return HOLDS if consistent else FAILS


# oracle


def cmd_oracle(args) -> int:
    a, f = _load_problem(args)
    start = _start_vector(args, a)
    if args.prop == "F":
        path = args.path.split() if args.path is not None else None
        rep = oracle.bounded_f(a, f, start, args.bound, path=path, force=args.force)
    elif args.prop == "G":
        rep = oracle.bounded_g(a, f, start, args.bound, force=args.force)
    else:
        window = args.window if args.window is not None else max(1, args.bound // 2)
        rep = oracle.bounded_iu(a, f, start, args.bound, window, args.prop, args.samples, args.seed)
    lines = [f"{rep.property} up to {rep.bound}: {rep.verdict}"]
    if rep.witness is not None:
        lines.append(f"witness word: {_word(rep.witness)}")
    if rep.property in ("I", "U"):
        d = rep.stats["densities"]
        lines.append(f"tail hit density: min {min(d):.3f}, mean {sum(d) / len(d):.3f} (evidence only)")
    _emit(args, rep, lines)
    if rep.property in ("I", "U"):
        return UNKNOWN
    return {oracle.CONFIRMED: HOLDS, oracle.REFUTED: FAILS}.get(rep.verdict, UNKNOWN)


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qreach", description="Reachability checks for quantum automata.")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def problem(p):
        p.add_argument("--automaton", required=True)
        p.add_argument("--formula", required=True)
        p.add_argument("--start", help="start vector: JSON list or file")
        p.add_argument("--bound", type=int)
        p.add_argument("--force", action="store_true", help="allow word trees above 10^7")
        p.add_argument("--json", action="store_true")

    c = sub.add_parser("check", help="decide G/U/I, bounded F")
    c.add_argument("--prop", choices="FGUI", required=True)
    c.add_argument("--trace", action="store_true", help="record each refinement for I")
    problem(c)
    c.set_defaults(func=cmd_check)

    p = sub.add_parser("period", help="period of a scaled unitary")
    p.add_argument("--operator", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_period)

    s = sub.add_parser("skolem", help="classify the zero set of u^T M^n v")
    s.add_argument("input")
    s.add_argument("--bound", type=int, default=10000, help="emptiness sweep bound")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_skolem)

    m = sub.add_parser("minsky", help="Minsky machine reduction")
    m.add_argument("action", choices=("encode", "run", "demo"))
    m.add_argument("program")
    m.add_argument("--out")
    m.add_argument("--v")
    m.add_argument("--w")
    m.add_argument("--max-steps", type=int, default=1000)
    m.add_argument("--bound", type=int, default=200)
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_minsky)

    o = sub.add_parser("oracle", help="brute-force bounded sweeps")
    o.add_argument("--prop", choices="FGUI", required=True)
    o.add_argument("--window", type=int)
    o.add_argument("--samples", type=int, default=50)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--path", help="F only: follow this space-separated word")
    problem(o)
    o.set_defaults(func=cmd_oracle, bound=None)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "oracle" and args.bound is None:
        ap.error("oracle needs --bound")
    try:
        return args.func(args)
    except (NegationError, Unsupported, oracle.TreeTooLarge) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return UNSUPPORTED
    except (FormatError, DimensionMismatch, NotScaledUnitary, minsky.MinskyError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
