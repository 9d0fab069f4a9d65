"""Command-line front end.

Every subcommand prints one JSON report to stdout. Exit codes:
0 holds/feasible, 1 fails/infeasible, 2 borderline (or an oracle search
that found nothing), 3 bad input, 4 internal numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from .comparison import (Verdict, alberti_uhlmann_grid, alberti_uhlmann_qubit, channel_feasibility,
                         extract_witness, guessing_probability)
from .linalg import EigenConvergenceError
from .matrixio import (FileFormatError, encoding_document, load_encoding, load_inputs, load_matrix, save_choi,
                       sha256_file)
from .objects import build_cq_state, build_extended_cq_state, standard_complete_cq
from .oracle import oracle_feasibility_qubit, oracle_pguess_qubit, oracle_trace_norm
from .orderings import OrderingInconsistencyError, decide_thermal_ordering, sample_ordering_check
from .policy import NumericPolicy
from .sdp import SdpError

EXIT_OK, EXIT_FAIL, EXIT_BORDERLINE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3, 4

_EXIT_BY_VERDICT = {
    Verdict.HOLDS: EXIT_OK, Verdict.FEASIBLE: EXIT_OK, Verdict.NO_VIOLATION_FOUND: EXIT_OK,
    Verdict.FAILS: EXIT_FAIL, Verdict.INFEASIBLE: EXIT_FAIL, Verdict.BORDERLINE: EXIT_BORDERLINE,
}


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit 2 is reserved for borderline verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _same_dim(states, *names):
    dims = {states[n].dim for n in names}
    if len(dims) != 1:
        raise InputError(f"states {', '.join(names)} must share a dimension, got {sorted(dims)}")


def _cq_for(args, states, digests):
    enc = load_encoding(args.encoding)
    digests["encoding"] = {"path": args.encoding, "sha256": sha256_file(args.encoding)}
    pair = (states["state0"], states["state1"])
    if enc.has_y:
        return enc, build_extended_cq_state(enc, standard_complete_cq(int(math.isqrt(enc.probs.shape[1]))), pair)
    return enc, build_cq_state(enc, pair)


def cmd_pguess(args, policy):
    states, digests = load_inputs({"state0": args.state0, "state1": args.state1})
    _same_dim(states, "state0", "state1")
    enc, cq = _cq_for(args, states, digests)
    p, povm = guessing_probability(cq, policy)
    result = {"p_guess": p, "hmin": -math.log2(p), "labels": [str(l) for l in cq.labels],
              "povm": [{"re": e.data.real.tolist(), "im": e.data.imag.tolist()} for e in povm.elements],
              "encoding": encoding_document(enc)}
    return EXIT_OK, None, result, digests


def _four(args):
    states, digests = load_inputs({"rho0": args.rho0, "rho1": args.rho1, "sigma0": args.sigma0,
                                   "sigma1": args.sigma1})
    _same_dim(states, "rho0", "rho1")
    _same_dim(states, "sigma0", "sigma1")
    return states, digests


def cmd_au(args, policy):
    states, digests = _four(args)
    quad = [states[k] for k in ("rho0", "rho1", "sigma0", "sigma1")]
    if args.grid:
        rep = alberti_uhlmann_grid(*quad, t_max=args.tmax, points=args.points, policy=policy)
    else:
        if states["rho0"].dim != 2 or states["sigma0"].dim != 2:
            raise InputError("--exact needs qubit states; use --grid otherwise")
        rep = alberti_uhlmann_qubit(*quad, policy=policy)
    return _EXIT_BY_VERDICT[rep.verdict], rep.verdict, rep.as_dict(), digests


def cmd_feasible(args, policy):
    states, digests = _four(args)
    rho, sigma = (states["rho0"], states["rho1"]), (states["sigma0"], states["sigma1"])
    fv = channel_feasibility(*rho, *sigma, policy=policy)
    result = fv.as_dict()
    if fv.choi is not None and args.choi_out:
        save_choi(args.choi_out, fv.choi)
        result["choi_out"] = args.choi_out
    if fv.verdict is Verdict.INFEASIBLE and args.seed is not None:
        result["witness"] = extract_witness(rho, sigma, fv, policy, seed=args.seed).as_dict()
    return _EXIT_BY_VERDICT[fv.verdict], fv.verdict, result, digests


def cmd_thermal(args, policy):
    names = {"rho": args.rho, "sigma": args.sigma, "omega": args.omega}
    if args.omega_out:
        names["omega_out"] = args.omega_out
    states, digests = load_inputs(names)
    _same_dim(states, "rho", "omega")
    _same_dim(states, "sigma", "omega_out" if args.omega_out else "omega")
    v = decide_thermal_ordering(states["rho"], states["sigma"], states["omega"], states.get("omega_out"), policy,
                                witness=args.seed is not None, seed=args.seed or 0)
    result = v.as_dict()
    if v.choi is not None and args.choi_out:
        save_choi(args.choi_out, v.choi)
        result["choi_out"] = args.choi_out
    return _EXIT_BY_VERDICT[v.relation], v.relation, result, digests


def cmd_sample(args, policy):
    states, digests = _four(args)
    rep = sample_ordering_check((states["rho0"], states["rho1"]), (states["sigma0"], states["sigma1"]),
                                args.n, args.u_size, args.with_r, args.seed, policy)
    if rep.max_violation is None:
        verdict = Verdict.NO_VIOLATION_FOUND
    elif rep.max_violation > policy.verdict_margin:
        verdict = Verdict.FAILS
    elif rep.max_violation > policy.validation_tol:
        verdict = Verdict.BORDERLINE
    else:
        verdict = Verdict.NO_VIOLATION_FOUND
    return _EXIT_BY_VERDICT[verdict], verdict, rep.as_dict(), digests


def cmd_oracle(args, policy):
    if args.oracle == "pguess":
        states, digests = load_inputs({"state0": args.state0, "state1": args.state1})
        _same_dim(states, "state0", "state1")
        _, cq = _cq_for(args, states, digests)
        return EXIT_OK, None, {"p_guess_lower_bound": oracle_pguess_qubit(cq, args.n_dirs),
                               "n_dirs": args.n_dirs}, digests
    if args.oracle == "trace-norm":
        m = load_matrix(args.matrix)
        digests = {"matrix": {"path": args.matrix, "sha256": sha256_file(args.matrix)}}
        return EXIT_OK, None, {"trace_norm": oracle_trace_norm(m)}, digests
    states, digests = _four(args)
    res = oracle_feasibility_qubit((states["rho0"], states["rho1"]), (states["sigma0"], states["sigma1"]),
                                   args.n_params, args.seed)
    out = res.as_dict()
    label = "found-channel" if res.found else "none-found"
    return (EXIT_OK if res.found else EXIT_BORDERLINE), label, out, digests


def _add_four(p):
    for name in ("rho0", "rho1", "sigma0", "sigma1"):
        p.add_argument(name, help=f"matrix file for {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcompare", description="Statistical comparison of quantum state pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pguess", help="guessing probability and min-entropy of an encoded pair")
    p.add_argument("state0")
    p.add_argument("state1")
    p.add_argument("--encoding", required=True, help="JSON file with 'probs' over U x X (or U x Y x X)")
    p.set_defaults(func=cmd_pguess)

    p = sub.add_parser("au", help="trace-norm (Alberti-Uhlmann) test")
    _add_four(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact qubit decision (default)")
    mode.add_argument("--grid", action="store_true", help="grid screen in any dimension")
    p.add_argument("--tmax", type=float, default=1e3)
    p.add_argument("--points", type=int, default=512)
    p.set_defaults(func=cmd_au)

    p = sub.add_parser("feasible", help="does a channel map rho_i to sigma_i")
    _add_four(p)
    p.add_argument("--choi-out", help="write the Choi matrix here when feasible")
    p.add_argument("--seed", type=int, help="run the witness search with this seed when infeasible")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("thermal", help="is there an omega-preserving channel from rho to sigma")
    p.add_argument("rho")
    p.add_argument("sigma")
    p.add_argument("omega")
    p.add_argument("--omega-out", help="fixed state on the output side if it differs")
    p.add_argument("--choi-out", help="write the Choi matrix here when the ordering holds")
    p.add_argument("--seed", type=int, help="run the witness search with this seed when it fails")
    p.set_defaults(func=cmd_thermal)

    p = sub.add_parser("sample", help="probe the ordering on random encodings")
    _add_four(p)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--u-size", type=int, default=2)
    p.add_argument("--with-R", dest="with_r", action="store_true",
                   help="attach an auxiliary register prepared by the standard complete cq-channel")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    osub = p.add_subparsers(dest="oracle", required=True)
    q = osub.add_parser("pguess")
    q.add_argument("state0")
    q.add_argument("state1")
    q.add_argument("--encoding", required=True)
    q.add_argument("--n-dirs", type=int, default=4096)
    q = osub.add_parser("trace-norm")
    q.add_argument("matrix")
    q = osub.add_parser("feasible")
    _add_four(q)
    q.add_argument("--n-params", type=int, default=8, help="number of random starts")
    q.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def _emit(report: dict, stream) -> None:
    stream.write(json.dumps(report, indent=2, sort_keys=True, default=_jsonable) + "\n")


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": ["qcompare"] + argv, "seed": getattr(args, "seed", None)}
    start = time.perf_counter()
    try:
        policy = NumericPolicy.from_env()
        report["policy"] = policy.as_dict()
        code, verdict, result, digests = args.func(args, policy)
        report.update(verdict=getattr(verdict, "value", verdict), result=result, inputs=digests)
    except (FileFormatError, InputError, ValueError) as exc:
        code = EXIT_INPUT
        report["error"] = {"kind": "input", "message": str(exc)}
        print(f"qcompare: {exc}", file=sys.stderr)
    except (SdpError, EigenConvergenceError, OrderingInconsistencyError, ArithmeticError) as exc:
        code = EXIT_INTERNAL
        report["error"] = {"kind": "internal", "message": str(exc)}
        print(f"qcompare: internal error: {exc}", file=sys.stderr)
    report["exit_code"] = code
    report["timing_seconds"] = round(time.perf_counter() - start, 6)
    _emit(report, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
