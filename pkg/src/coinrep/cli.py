"""``coinrep`` command line.

Exit codes: 0 success, 1 usage / I-O / schema error, 2 domain precondition
violation (or, for ``check``, a state that is not quantum-valid).
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import errata, evolve, mat4prob, qubit, superpose, suprematism
from .errors import CoinrepError, SchemaError
from .observable import DichotomicObservable
from .statefile import (
    as_matrix,
    as_table,
    as_triple,
    load_state,
    matrix_file,
    table_file,
    triple_file,
    write_json,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc, out=None) -> None:
    if out:
        write_json(out, doc)
    else:
        print(json.dumps(doc, indent=2, allow_nan=False))


def _floats(x):
    return [float(v) for v in np.ravel(x)]


def _obs(text: str) -> DichotomicObservable:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four numbers x,y,z1,z2, got {text!r}") from None
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"expected four numbers x,y,z1,z2, got {text!r}")
    return DichotomicObservable(*values)


# -- subcommands ------------------------------------------------------------------


def cmd_check(args) -> int:
    p = as_triple(load_state(args.state))
    quantum, margin = qubit.is_quantum(p)
    quantum = bool(quantum)
    report = {
        "p": _floats(p),
        "quantum": quantum,
        "pure": bool(qubit.is_pure(p)) if quantum else False,
        "margin": float(margin),
        "bloch": _floats(qubit.bloch(p)),
        "lambda": _floats(qubit.eigenvalues(p)) if quantum else None,
        "entropy_vn": float(qubit.von_neumann_entropy(p)) if quantum else None,
        "tsallis_q": args.q,
        "entropy_tsallis": float(qubit.tsallis_entropy(p, args.q)) if quantum else None,
    }
    _emit(report)
    return EXIT_OK if quantum else EXIT_DOMAIN


def cmd_superpose(args) -> int:
    p, P, Pi = (as_triple(load_state(f)) for f in (args.state1, args.state2, args.key))
    out, t = superpose.superpose_probabilities(p, P, Pi, with_normalizer=True)
    oracle = superpose.oracle_probabilities(p, P, Pi, args.weights_convention)
    report = {
        "result": _floats(out),
        "normalizer": float(t),
        "purity_residual": float(abs(qubit.quantum_margin(out))),
        "convention": args.weights_convention,
        "oracle_deviation": float(np.max(np.abs(oracle - out))),
    }
    if args.out:
        write_json(args.out, triple_file(out).to_dict())
    _emit(report)
    return EXIT_OK


def cmd_evolve(args) -> int:
    p = as_triple(load_state(args.state))
    problem = evolve.EvolutionProblem(p, args.obs, args.t, args.steps)
    if args.method == "propagator":
        doc = evolve.propagate(problem).to_dict()
    elif args.method == "integrator":
        doc = evolve.integrate_vonneumann(problem).to_dict()
    else:
        a, b = evolve.propagate(problem), evolve.integrate_vonneumann(problem)
        doc = {
            "schema_version": 1,
            "kind": "trajectory-pair",
            "max_deviation": evolve.max_deviation(a, b),
            "max_eigenvalue_drift": float(max(a.eigenvalue_drift().max(), b.eigenvalue_drift().max())),
            "propagator": a.to_dict(),
            "integrator": b.to_dict(),
        }
    if args.out:
        write_json(args.out, doc)
        if args.method == "both":
            print(json.dumps({k: doc[k] for k in ("max_deviation", "max_eigenvalue_drift")}))
    else:
        _emit(doc)
    return EXIT_OK


def cmd_render(args) -> int:
    p = as_triple(load_state(args.state))
    spec = suprematism.RenderSpec(
        width=args.width, height=args.height, scale=args.scale, layout=args.layout
    )
    svg = suprematism.render_svg(p, spec)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK


def cmd_matrix(args) -> int:
    if args.action == "t-check":
        dev = mat4prob.t_check(samples=args.samples, seed=args.seed)
        _emit({"samples": args.samples, "seed": args.seed, "max_deviation": dev})
        return EXIT_OK
    if args.file is None:
        raise SchemaError(f"matrix {args.action} needs an input file")
    state = load_state(args.file)
    if args.action == "parametrize":
        doc = table_file(mat4prob.probs_from_amplitude2(as_matrix(state))).to_dict()
    else:
        doc = matrix_file("amplitude2", mat4prob.amplitude2_from_probs(as_table(state))).to_dict()
    _emit(doc, args.out)
    return EXIT_OK


def cmd_errata(args) -> int:
    report = errata.run_errata(seed=args.seed, samples=args.samples)
    if args.json:
        print(report.to_json(indent=2, allow_nan=False))
    else:
        print(report.summary())
    return EXIT_OK if report.ok else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coinrep", description="Qubit states as coin probabilities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="validate a state and report its spectrum and entropies")
    c.add_argument("state")
    c.add_argument("--q", type=float, default=2.0, help="Tsallis index (default 2)")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("superpose", help="superpose two pure states under a key state")
    s.add_argument("state1")
    s.add_argument("state2")
    s.add_argument("key")
    s.add_argument("--weights-convention", choices=list(superpose.CANDIDATES),
                   default=superpose.SELECTED_CONVENTION)
    s.add_argument("--out")
    s.set_defaults(func=cmd_superpose)

    e = sub.add_parser("evolve", help="unitary evolution under a dichotomic observable")
    e.add_argument("state")
    e.add_argument("--obs", type=_obs, required=True, help="x,y,z1,z2")
    e.add_argument("--t", type=float, required=True)
    e.add_argument("--steps", type=int, default=1000)
    e.add_argument("--method", choices=("propagator", "integrator", "both"), default="propagator")
    e.add_argument("--out")
    e.set_defaults(func=cmd_evolve)

    r = sub.add_parser("render", help="draw the triangle or the squares as SVG")
    r.add_argument("state")
    r.add_argument("--layout", choices=suprematism.LAYOUTS, default="triada")
    r.add_argument("--out", required=True)
    r.add_argument("--width", type=int, default=400)
    r.add_argument("--height", type=int, default=400)
    r.add_argument("--scale", type=float, default=120.0)
    r.set_defaults(func=cmd_render)

    m = sub.add_parser("matrix", help="2x2 amplitudes and 15-probability tables")
    m.add_argument("action", choices=("parametrize", "reconstruct", "t-check"))
    m.add_argument("file", nargs="?")
    m.add_argument("--out")
    m.add_argument("--samples", type=int, default=1000)
    m.add_argument("--seed", type=int, default=0)
    m.set_defaults(func=cmd_matrix)

    a = sub.add_parser("errata", help="numerical audit of the published formulas")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--samples", type=int, default=10_000)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_errata)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as err:
        print(f"coinrep: {err}", file=sys.stderr)
        return EXIT_USAGE
    except CoinrepError as err:
        print(f"coinrep: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as err:
        print(f"coinrep: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
