"""Command-line front end.

Every command prints one JSON report on standard output (or ``--output``)::

    {"command": ..., "inputs_digest": ..., "outputs": {...},
     "verification": [{"name", "value", "tolerance", "pass"}, ...],
     "status": "ok" | "error", "exit_code": int, "wall_time": seconds}

Exit codes: 0 success, 1 invalid input, 2 numerical degeneracy,
3 failed verification.
"""

import argparse
import json
import logging
import sys
import time

import numpy as np

from . import harness, oracle, poly
from .cmv import VerblunskyData, assemble, structural_mask, szego_forward, unitarity_defect
from .documents import (
    DocumentError,
    digest,
    dump_complex,
    dump_data,
    dump_measure,
    dump_points,
    load_document,
    parse_complex,
    parse_document,
)
from .errors import CMVError
from .interlace import cross_distances, interlaces
from .inverse import (
    admissible_arc,
    from_measure,
    from_two_spectra,
    max_spectrum_distance,
    truncation_regular,
    truncation_singular,
)
from .spectral import (
    angle_diff,
    eigenvalues,
    spectral_measure,
    unit_points,
    weyl_eval,
    wrap_angle,
)
from .truncation import compute_B, masses_from_truncation, truncate_direct

class Checks:
    def __init__(self, overrides=None, global_tol=None):
        self.rows = []
        self.overrides = overrides or {}
        self.global_tol = global_tol

    def below(self, name, value, tol):
        tol = self.overrides.get(name, self.global_tol if self.global_tol is not None else tol)
        value = float(value)
        self.rows.append({"name": name, "value": value, "tolerance": tol, "pass": bool(value < tol)})

    def above(self, name, value, bound):
        value = float(value)
        self.rows.append({"name": name, "value": value, "bound": bound, "pass": bool(value > bound)})

    def flag(self, name, ok):
        self.rows.append({"name": name, "value": bool(ok), "pass": bool(ok)})

    @property
    def passed(self):
        return all(r["pass"] for r in self.rows)


def _expect(kind, want):
    if kind not in want:
        raise DocumentError(f"this command needs a {' or '.join(want)} document, got {kind}")


def _spectrum_block(data, checks):
    system = szego_forward(data)
    angles = eigenvalues(data)
    measure = spectral_measure(data)
    resid = np.max(np.abs(poly.peval(system.phi_tilde, unit_points(angles))))
    checks.below("eigenvalue_residual", resid, 1e-9)
    if data.n <= 256:
        scan = oracle.grid_root_scan(system.phi_tilde)
        checks.below("grid_scan_agreement", max_spectrum_distance(scan, angles), 1e-9)
    checks.below("mass_sum_defect", abs(measure.masses.sum() - 1), 1e-10)
    checks.flag("masses_positive", np.all(measure.masses > 0))
    return angles, measure


def cmd_build(args, doc, checks):
    kind, data = parse_document(doc)
    _expect(kind, ("verblunsky",))
    C = assemble(data)
    mask = structural_mask(data.n)
    outside = np.abs(C[~mask]).max() if (~mask).any() else 0.0
    checks.below("unitarity_defect", unitarity_defect(C), 1e-12)
    checks.below("zero_pattern_violation", outside, 1e-300)
    return {"n": data.n, "matrix": [[dump_complex(c) for c in row] for row in C]}


def cmd_spectrum(args, doc, checks):
    kind, data = parse_document(doc)
    _expect(kind, ("verblunsky",))
    angles, measure = _spectrum_block(data, checks)
    return {"points": dump_points(angles), "masses": measure.masses.tolist()}


def cmd_measure(args, doc, checks):
    kind, data = parse_document(doc)
    _expect(kind, ("verblunsky",))
    _, measure = _spectrum_block(data, checks)
    return {"measure": dump_measure(measure), "normalization_defect": measure.defect}


def cmd_weyl(args, doc, checks):
    kind, data = parse_document(doc)
    _expect(kind, ("verblunsky",))
    z = parse_complex(json.loads(args.at))
    w = weyl_eval(data, z)
    ref = oracle.resolvent_entry(assemble(data), z)
    checks.below("resolvent_agreement", abs(w - ref) / abs(ref), 1e-8)
    return {"z": dump_complex(z), "weyl": dump_complex(w)}


def cmd_truncate(args, doc, checks):
    kind, data = parse_document(doc)
    _expect(kind, ("verblunsky",))
    if args.beta2 is None:
        raise DocumentError("truncate needs --beta2 [re,im]")
    report = truncate_direct(data, parse_complex(json.loads(args.beta2)))
    phi_n = szego_forward(report.data1).phi_tilde
    phi_nm1 = szego_forward(report.data2).phi_tilde
    masses = masses_from_truncation(report, phi_n, phi_nm1)
    direct = spectral_measure(report.data1).masses
    checks.below("residue_identity", report.residue_error, 1e-8)
    checks.flag("interlace_witness", report.interlace_witness)
    checks.below("mass_consistency", np.max(np.abs(masses - direct)), 1e-8)
    return {
        "classification": report.classification.value,
        "B": dump_complex(report.B),
        "A": dump_complex(report.A),
        "truncation": dump_data(report.data2),
        "spectrum_full": dump_points(report.spectrum_full),
        "spectrum_trunc": dump_points(report.spectrum_trunc),
        "shared_point": None if report.shared_point is None else {"angle": report.shared_point},
        "masses": masses.tolist(),
    }


def _pair_outputs(pair):
    return {"data1": dump_data(pair.data1), "data2": dump_data(pair.data2)}


def cmd_invert(args, doc, checks):
    kind, payload = parse_document(doc)
    if args.problem == "measure":
        _expect(kind, ("measure",))
        data = from_measure(payload)
        back = spectral_measure(data)
        checks.below("points_roundtrip", max_spectrum_distance(back.angles, payload.angles), 1e-8)
        checks.below("masses_roundtrip", np.max(np.abs(back.masses - payload.masses)), 1e-8)
        return {"data": dump_data(data)}

    _expect(kind, ("spectrum_pair",))
    s1, s2 = payload
    if args.problem == "two-spectra":
        pair = from_two_spectra(s1, s2)
        checks.flag("input_interlaces", interlaces(s1, s2))
        checks.below("spectrum1_roundtrip", max_spectrum_distance(eigenvalues(pair.data1), s1), 1e-8)
        checks.below("spectrum2_roundtrip", max_spectrum_distance(eigenvalues(pair.data2), s2), 1e-8)
        return _pair_outputs(pair)

    shared = np.min(cross_distances(s1, s2)) < 1e-8 * s1.size
    if args.param_t is not None or (shared and args.zeta is None):
        pair = truncation_singular(s1, s2, 0.5 if args.param_t is None else args.param_t)
        case = "singular"
    else:
        zeta = args.zeta
        if zeta is None:
            start, end = admissible_arc(s1, s2)
            zeta = 0.5 * (start + end)
        pair = truncation_regular(s1, s2, zeta)
        b = compute_B(pair.data1.alpha[-1], pair.data1.beta, pair.data2.beta)
        checks.below("pivot_roundtrip", abs(b - np.exp(1j * zeta)), 1e-9)
        case = "regular"
    checks.below("spectrum1_roundtrip", max_spectrum_distance(eigenvalues(pair.data1), s1), 1e-8)
    checks.below("spectrum2_roundtrip", max_spectrum_distance(eigenvalues(pair.data2), s2), 1e-8)
    out = _pair_outputs(pair)
    out["case"] = case
    return out


_ROUNDTRIP_LIMITS = {
    "measure": [("alpha_err", 1e-8), ("beta_err", 1e-9)],
    "two-spectra": [("alpha_err", 1e-8), ("beta_err", 1e-9)],
    "trunc-regular": [("data_err", 1e-7), ("pivot_err", 1e-9)],
    "trunc-singular": [("orig_err", 1e-7), ("family_spectra_err", 1e-8), ("mass_err", 1e-8)],
}


def _guarded_trial(mode, seed, k, n, radius):
    try:
        return dict(trial=k, **harness.TRIALS[mode](harness.trial_rng(seed, k), n, radius))
    except CMVError as exc:
        return {"trial": k, "n": n, "error": f"{type(exc).__name__}: {exc}"}


def cmd_roundtrip(args, doc, checks):
    if args.mode.startswith("trunc") and args.n < 2:
        raise DocumentError("truncation modes need --n >= 2")
    rows = [_guarded_trial(args.mode, args.seed, k, args.n, args.alpha_radius) for k in range(args.trials)]
    rows.sort(key=lambda r: r["trial"])
    ok = [r for r in rows if "error" not in r and not r.get("skipped", False)]
    checks.below("failed_trials", sum("error" in r for r in rows), 1)
    summary = {"trials": len(rows), "completed": len(ok)}
    for key, tol in _ROUNDTRIP_LIMITS[args.mode]:
        worst = max((r[key] for r in ok), default=0.0)
        summary["max_" + key] = worst
        checks.below("max_" + key, worst, tol)
    if args.mode == "two-spectra":
        checks.flag("all_inputs_interlace", all(r["interlaces"] for r in ok))
    if args.mode == "trunc-singular" and args.n > 1:
        sep = min((r["family_min_separation"] for r in ok), default=np.inf)
        summary["min_family_separation"] = sep
        checks.above("min_family_separation", sep, 1e-6)
    return {"summary": summary, "rows": rows}


def cmd_example(args, doc, checks):
    n = args.n
    theta = 0.0 if args.name == "roots-of-unity" else float(args.theta)
    data = VerblunskyData(np.zeros(n - 1), np.exp(-1j * theta))
    angles, measure = _spectrum_block(data, checks)
    expected = wrap_angle((theta + 2 * np.pi * np.arange(n)) / n)
    err = max_spectrum_distance(angles, expected)
    checks.below("golden_angles", np.max(np.abs(angle_diff(np.sort(angles), np.sort(expected)))), 1e-12)
    checks.below("uniform_masses", np.max(np.abs(measure.masses - 1.0 / n)), 1e-12)
    return {
        "data": dump_data(data),
        "points": dump_points(angles),
        "masses": measure.masses.tolist(),
        "chordal_error": err,
    }


COMMANDS = {
    "build": cmd_build,
    "spectrum": cmd_spectrum,
    "measure": cmd_measure,
    "weyl": cmd_weyl,
    "truncate": cmd_truncate,
    "invert": cmd_invert,
    "roundtrip": cmd_roundtrip,
    "example": cmd_example,
}
NEEDS_INPUT = {"build", "spectrum", "measure", "weyl", "truncate", "invert"}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="instance document (JSON); '-' for stdin")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--tol", type=float, help="override every verification tolerance")
    common.add_argument("--verbose", action="store_true", help="human-readable summary on stderr")

    parser = argparse.ArgumentParser(prog="cmv", description="Finite CMV matrices: direct and inverse spectral problems.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="assemble the matrix")
    sub.add_parser("spectrum", parents=[common], help="eigenvalues and masses")
    sub.add_parser("measure", parents=[common], help="n-th spectral measure as a measure document")
    p = sub.add_parser("weyl", parents=[common], help="evaluate the Weyl function")
    p.add_argument("--at", required=True, help="point as [re,im]")
    p = sub.add_parser("truncate", parents=[common], help="truncation report")
    p.add_argument("--beta2", help="boundary parameter of the truncation, [re,im]")
    p = sub.add_parser("invert", parents=[common], help="inverse problems")
    p.add_argument("problem", choices=["measure", "two-spectra", "truncation"])
    p.add_argument("--zeta", type=float, help="pivot angle (regular truncation case)")
    p.add_argument("--param-t", type=float, help="mass removed from the shared point (singular case)")
    p = sub.add_parser("roundtrip", parents=[common], help="seeded round-trip trials")
    p.add_argument("--mode", choices=harness.MODES, default="measure")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--alpha-radius", type=float, default=0.9)
    p = sub.add_parser("example", parents=[common], help="closed-form examples")
    p.add_argument("name", choices=["roots-of-unity", "rotated"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--theta", type=float, default=1.0, help="rotation angle; beta = exp(-i theta)")
    return parser


def _echo(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "verbose")}


def run(argv=None):
    """Execute a command; returns ``(report, exit_code)``."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG, format="%(name)s: %(message)s")
    started = time.perf_counter()
    report = {"command": _echo(args)}
    doc = None
    exit_code = 0
    checks = Checks()
    try:
        if args.command in NEEDS_INPUT:
            if not args.input:
                raise DocumentError(f"{args.command} needs --input")
            doc = json.load(sys.stdin) if args.input == "-" else load_document(args.input)
            report["inputs_digest"] = digest(doc)
        checks = Checks((doc or {}).get("tolerances"), args.tol)
        report["outputs"] = COMMANDS[args.command](args, doc, checks)
        report["status"] = "ok"
        if not checks.passed:
            exit_code = 3
            report["status"] = "verification_failed"
    except CMVError as exc:
        exit_code = exc.exit_code
        report["status"] = "error"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except (OSError, json.JSONDecodeError) as exc:
        exit_code = 1
        report["status"] = "error"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    report["verification"] = checks.rows
    report["exit_code"] = exit_code
    report["wall_time"] = time.perf_counter() - started
    return report, exit_code, args


def _print_table(report):
    print(f"{report['command']['command']}: {report['status']}", file=sys.stderr)
    if "error" in report:
        print(f"  {report['error']['type']}: {report['error']['message']}", file=sys.stderr)
    for row in report["verification"]:
        mark = "PASS" if row["pass"] else "FAIL"
        limit = row.get("tolerance", row.get("bound", ""))
        print(f"  [{mark}] {row['name']:<28} {row['value']!s:<24} {limit}", file=sys.stderr)


def main(argv=None):
    report, exit_code, args = run(argv)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.verbose:
        _print_table(report)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
