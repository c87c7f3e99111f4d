"""Command-line frontend.

Exposes the package's computations as subcommands that read the JSON
matrix/map interchange formats and emit JSON reports or CSV tables:

* ``power``       fractional matrix power, PowerResult as JSON
* ``numrange``    numerical-range boundary samples as CSV
* ``membership``  cone membership report as JSON
* ``support``     support projection + root-limit schedule as JSON
* ``stinespring`` Kraus/Stinespring factorization of a CP map as JSON
* ``rcp-check``   randomized accretivity-preservation check (exit 1 on
                  a found witness or an inconclusive run)
* ``cardioid``    scalar sampling table as CSV
* ``verify``      the P1..P17 property suite (exit 1 unless all pass)

Exit codes: 0 success/pass, 1 property-check failure, 2 input or module
error.  All numeric output round-trips exactly (repr floats in JSON,
%.17g in CSV).
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .cones import cone_membership, in_cardioid, scalar_half_f
from .errors import AccretiveLabError, InputParseError
from .matcore import matrix_from_json, matrix_to_json
from .numrange import boundary, boundary_csv
from .powers import PowerAlgorithm, principal_power
from .rcp import choi, map_from_json, rcp_check, stinespring
from .reporting import report_to_dict, reports_to_json
from .rng import trial_rng
from .support import root_limit, support_projection
from .verify import TrialConfig, config_from_dict, run_suite

__all__ = ["main", "build_parser"]

_ALGORITHMS = {
    "schur": PowerAlgorithm.TRIANGULAR_SCHUR,
    "spectral": PowerAlgorithm.SPECTRAL_DIAGONALIZATION,
    "series": PowerAlgorithm.BINOMIAL_SERIES_HALF_F,
}


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{path} is not valid JSON: {exc}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rect_to_json(m: np.ndarray) -> dict:
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [[float(v) for v in row] for row in np.asarray(m).real],
        "im": [[float(v) for v in row] for row in np.asarray(m).imag],
    }


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise InputParseError(f"bad {what} list {text!r}") from exc
    if not vals:
        raise InputParseError(f"empty {what} list")
    return vals


def _cmd_power(args) -> int:
    T = matrix_from_json(_load_json(args.in_path))
    result = principal_power(T, args.alpha, alg=_ALGORITHMS[args.alg],
                             shift_policy=args.shift_policy)
    payload = {
        "value": matrix_to_json(result.value),
        "algorithm": result.algorithm.value,
        "residual": result.residual,
        "shift_used": result.shift_used,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _cmd_numrange(args) -> int:
    T = matrix_from_json(_load_json(args.in_path))
    _emit(boundary_csv(boundary(T, n_angles=args.angles)), args.out)
    return 0


def _cmd_membership(args) -> int:
    T = matrix_from_json(_load_json(args.in_path))
    rep = cone_membership(T)
    payload = {
        "in_F": rep.in_F,
        "in_half_F": rep.in_half_F,
        "accretive": rep.accretive,
        "in_c": rep.in_c,
        "c_min": rep.c_min,
        "margins": rep.margins,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _cmd_support(args) -> int:
    T = matrix_from_json(_load_json(args.in_path))
    schedule = _parse_int_list(args.schedule, "schedule")
    res = support_projection(T)
    dists = root_limit(T, schedule)
    payload = {
        "projection": matrix_to_json(res.projection),
        "agree": res.left_right_agree,
        "rank": res.rank,
        "principal_angle_gap": res.principal_angle_gap,
        "rank_ambiguous": res.rank_ambiguous,
        "schedule_distances": [[n, dist] for n, dist in dists],
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _cmd_stinespring(args) -> int:
    T = map_from_json(_load_json(args.in_path))
    fact = stinespring(choi(T))
    payload = {
        "cb_norm": fact.cb_norm,
        "pi_copies": fact.pi_copies,
        "v": _rect_to_json(fact.V),
        "kraus": [_rect_to_json(K) for K in fact.kraus],
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _cmd_rcp_check(args) -> int:
    T = map_from_json(_load_json(args.in_path))
    report = rcp_check(T, levels=args.levels, trials=args.trials,
                       seed=args.seed)
    _emit(json.dumps(report_to_dict(report), indent=2), args.out)
    print(f"rcp-check: {report.status} "
          f"(worst normalized margin {report.worst_margin:.6g}, "
          f"{report.trials_run} trials)", file=sys.stderr)
    return 0 if report.status == "pass" else 1


def _cmd_cardioid(args) -> int:
    lines = ["re,im,in_cardioid,in_halfF_sqrt"]
    remaining = args.samples
    chunk_idx = 0
    while remaining > 0:
        m = min(1000, remaining)
        rng = trial_rng(args.seed, "cardioid", chunk_idx)
        radii = np.sqrt(rng.uniform(0.0, 1.0, m))
        angles = rng.uniform(-np.pi, np.pi, m)
        zs = radii * np.exp(1j * angles)
        roots = np.sqrt(zs)
        for z, root in zip(zs, roots):
            lines.append("%.17g,%.17g,%d,%d" % (
                z.real, z.imag,
                1 if in_cardioid(complex(z)) else 0,
                1 if scalar_half_f(complex(root)) else 0,
            ))
        remaining -= m
        chunk_idx += 1
    _emit("\n".join(lines), args.out)
    return 0


def _cmd_verify(args) -> int:
    base = TrialConfig()
    if args.config:
        base = config_from_dict(_load_json(args.config), base)
    cfg = TrialConfig(
        seed=args.seed if args.seed is not None else base.seed,
        dims=_parse_int_list(args.dims, "dims") if args.dims else base.dims,
        trials=args.trials if args.trials is not None else base.trials,
        tol=base.tol,
        property_ids=(tuple(p.strip() for p in args.properties.split(","))
                      if args.properties else base.property_ids),
    )
    reports = run_suite(cfg)
    _emit(reports_to_json(reports), args.out)
    for rep in reports:
        print(f"{rep.property_id}: {rep.status} "
              f"(worst normalized margin {rep.worst_margin:.6g}, "
              f"{rep.trials_run} trials, {rep.elapsed:.2f}s)",
              file=sys.stderr)
    return 0 if all(rep.status == "pass" for rep in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accretive-lab",
        description="Accretive matrices, fractional powers, cones, and "
                    "completely positive maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power", help="principal fractional power T^alpha")
    p.add_argument("--in", dest="in_path", required=True, metavar="MATRIX.json")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--alg", choices=sorted(_ALGORITHMS), default="schur")
    p.add_argument("--shift-policy", choices=("auto", "off"), default="auto")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_power)

    p = sub.add_parser("numrange", help="numerical range boundary as CSV")
    p.add_argument("--in", dest="in_path", required=True, metavar="MATRIX.json")
    p.add_argument("--angles", type=int, default=720)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_numrange)

    p = sub.add_parser("membership", help="cone membership report as JSON")
    p.add_argument("--in", dest="in_path", required=True, metavar="MATRIX.json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_membership)

    p = sub.add_parser("support", help="support projection and root limits")
    p.add_argument("--in", dest="in_path", required=True, metavar="MATRIX.json")
    p.add_argument("--schedule", default="1,2,4,8,16,32,64",
                   help="comma-separated root orders")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_support)

    p = sub.add_parser("stinespring", help="Kraus/Stinespring factorization")
    p.add_argument("--in", dest="in_path", required=True, metavar="MAP.json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_stinespring)

    p = sub.add_parser("rcp-check",
                       help="randomized accretivity-preservation check")
    p.add_argument("--in", dest="in_path", required=True, metavar="MAP.json")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_rcp_check)

    p = sub.add_parser("cardioid", help="scalar sampling table as CSV")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_cardioid)

    p = sub.add_parser("verify", help="run the P1..P17 property suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--dims", default=None, help="comma-separated sizes")
    p.add_argument("--properties", default=None,
                   help="comma-separated ids, e.g. P1,P4,P12")
    p.add_argument("--config", default=None, metavar="CONFIG.json")
    p.add_argument("--out", default=None, metavar="REPORT.json")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except AccretiveLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
