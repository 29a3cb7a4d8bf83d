"""Command line interface.

Every subcommand reads exact JSON (inline or from a file), writes JSON to
stdout, and reports failures as structured JSON on stderr.  Exit codes:
0 success, 2 unknown subcommand, 3 malformed input, 4 partition cap
exceeded, 5 domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .convolution import boxplus, boxplus_power
from .divisibility import (
    cramer_counterexample,
    infinite_divisibility_report,
    real_rooted_threshold,
)
from .errors import (
    DimensionError,
    DomainError,
    FinFreeError,
    InputFormatError,
    RootConvergenceError,
    SizeCapError,
)
from .families import finite_poisson, hermite_clt
from .freeprob import FreeCumulantVector, convergence_report
from .matrix_oracle import mc_boxplus
from .partitions import (
    DEFAULT_N_MAX,
    count_by_type,
    enumerate_partitions,
    is_noncrossing,
    iter_types,
    mobius_from_zero,
    mobius_of_type,
)
from .polynomial import MomentSequence, MonicPoly
from .transforms import (
    CumulantVector,
    coefficients_from_cumulants,
    coefficients_from_moments,
    cumulants_from_coefficients,
    moments_from_coefficients,
    rescale_cumulants,
    truncated_r_transform,
)
from .util import format_rational, parse_rational


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # raise instead of exiting so errors become structured JSON
    def error(self, message):
        raise _UsageError(message)


def _load_json_arg(text: str):
    """Inline JSON if it looks like JSON, else a file path to read."""
    s = text.strip()
    if not s.startswith("{"):
        try:
            with open(text) as fh:
                s = fh.read()
        except OSError as exc:
            raise InputFormatError("cannot read %s: %s" % (text, exc)) from exc
    try:
        return json.loads(s)
    except json.JSONDecodeError as exc:
        raise InputFormatError("invalid JSON: %s" % exc) from exc


def _rational_list(text: str):
    items = [t.strip() for t in text.split(",") if t.strip() != ""]
    if not items:
        raise InputFormatError("empty list")
    return [parse_rational(t) for t in items]


def _poly_from_args(ns, attr: str = "poly") -> MonicPoly:
    given = getattr(ns, attr, None)
    if getattr(ns, "roots", None) is not None:
        if given is not None:
            raise InputFormatError("give either a polynomial or --roots, not both")
        return MonicPoly.from_roots(_rational_list(ns.roots))
    if getattr(ns, "plain", None) is not None:
        if given is not None:
            raise InputFormatError("give either a polynomial or --plain, not both")
        return MonicPoly.from_plain_coefficients(_rational_list(ns.plain))
    if given is None:
        raise InputFormatError("no polynomial given")
    return MonicPoly.from_json(_load_json_arg(given))


def _settings(ns) -> dict:
    cfg = {}
    if getattr(ns, "config", None):
        raw = _load_json_arg(ns.config)
        if not isinstance(raw, dict):
            raise InputFormatError("config must be a JSON object")
        cfg = raw
    out = {
        "nmax": cfg.get("nmax", DEFAULT_N_MAX),
        "tol": cfg.get("tol", 1e-9),
        "seed": cfg.get("seed", 0),
    }
    for key in ("nmax", "tol", "seed"):
        val = getattr(ns, key, None)
        if val is not None:
            out[key] = val
    out["nmax"] = int(out["nmax"])
    out["seed"] = int(out["seed"])
    out["tol"] = float(out["tol"])
    return out


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------


def _cmd_convolve(ns):
    p = MonicPoly.from_json(_load_json_arg(ns.p))
    q = MonicPoly.from_json(_load_json_arg(ns.q))
    return boxplus(p, q).to_json()


def _cmd_power(ns):
    s = _settings(ns)
    p = _poly_from_args(ns)
    return boxplus_power(p, parse_rational(ns.t), n_max=s["nmax"]).to_json()


def _cmd_cumulants(ns):
    s = _settings(ns)
    k = cumulants_from_coefficients(_poly_from_args(ns), n_max=s["nmax"])
    if ns.rescaled:
        k = rescale_cumulants(k)
    return k.to_json()


def _cmd_moments(ns):
    s = _settings(ns)
    p = _poly_from_args(ns)
    return moments_from_coefficients(p, ns.N, n_max=s["nmax"]).to_json()


def _cmd_coeffs(ns):
    s = _settings(ns)
    obj = _load_json_arg(ns.data)
    if "kappa" in obj:
        k = CumulantVector.from_json(obj)
        return coefficients_from_cumulants(k, n_max=s["nmax"]).to_json()
    if "m" in obj:
        m = MomentSequence.from_json(obj)
        d = ns.d if ns.d is not None else m.degree_context
        if d is None:
            raise InputFormatError("moment input needs --d or a 'd' field")
        return coefficients_from_moments(m, d, n_max=s["nmax"]).to_json()
    raise InputFormatError("expected a 'kappa' or 'm' field")


def _cmd_rtransform(ns):
    s = _settings(ns)
    return truncated_r_transform(_poly_from_args(ns), n_max=s["nmax"]).to_json()


def _cmd_family(ns):
    if ns.which == "hermite":
        return hermite_clt(ns.d, marcus_scaling=ns.marcus).to_json()
    if ns.lam is None:
        raise InputFormatError("poisson needs --lambda")
    return finite_poisson(parse_rational(ns.lam), ns.d).to_json()


def _cmd_converge(ns):
    s = _settings(ns)
    r = FreeCumulantVector.make(_rational_list(ns.r))
    d_values = [int(x) for x in _rational_list(ns.d)]
    return convergence_report(r, ns.n, d_values, n_max=s["nmax"]).to_json()


def _cmd_check_id(ns):
    s = _settings(ns)
    return infinite_divisibility_report(
        _poly_from_args(ns), n_max=s["nmax"]
    ).to_json()


def _cmd_threshold(ns):
    s = _settings(ns)
    t = real_rooted_threshold(
        _poly_from_args(ns), parse_rational(ns.tmax), steps=ns.steps,
        n_max=s["nmax"],
    )
    return {"threshold": None if t is None else format_rational(t)}


def _cmd_cramer(ns):
    s = _settings(ns)
    return cramer_counterexample(
        ns.d, parse_rational(ns.eps), n_max=s["nmax"]
    ).to_json()


def _cmd_verify_mc(ns):
    s = _settings(ns)
    p = MonicPoly.from_json(_load_json_arg(ns.p))
    q = MonicPoly.from_json(_load_json_arg(ns.q))
    est = mc_boxplus(p, q, ns.samples, seed=s["seed"], tol=s["tol"])
    exact = boxplus(p, q)
    rows = []
    all_pass = True
    for i in range(p.d + 1):
        gap = abs(float(exact.a[i]) - est.coeff_mean[i])
        ok = gap <= 5.0 * est.coeff_stderr[i] + 0.02
        all_pass = all_pass and ok
        rows.append(
            {
                "i": i,
                "exact": format_rational(exact.a[i]),
                "mean": est.coeff_mean[i],
                "stderr": est.coeff_stderr[i],
                "pass": ok,
            }
        )
    return {
        "estimate": est.to_json(),
        "exact": exact.to_json(),
        "per_coefficient": rows,
        "all_pass": all_pass,
    }


def _cmd_partitions(ns):
    s = _settings(ns)
    n = ns.n
    if ns.types:
        rows = []
        for t in iter_types(n):
            rows.append(
                {
                    "sizes": list(t.sizes()),
                    "count_all": count_by_type(t, "all"),
                    "count_noncrossing": count_by_type(t, "noncrossing"),
                    "mobius": mobius_of_type(t),
                }
            )
        return {"n": n, "types": rows}
    rows = []
    for pi in enumerate_partitions(n, s["nmax"]):
        nc = is_noncrossing(pi)
        if ns.noncrossing and not nc:
            continue
        rows.append(
            {
                "partition": str(pi),
                "blocks": len(pi.blocks),
                "mobius": mobius_from_zero(pi),
                "noncrossing": nc,
            }
        )
    return {"n": n, "count": len(rows), "partitions": rows}


_COMMANDS = {
    "convolve": _cmd_convolve,
    "power": _cmd_power,
    "cumulants": _cmd_cumulants,
    "moments": _cmd_moments,
    "coeffs": _cmd_coeffs,
    "rtransform": _cmd_rtransform,
    "family": _cmd_family,
    "converge": _cmd_converge,
    "check-id": _cmd_check_id,
    "threshold": _cmd_threshold,
    "cramer": _cmd_cramer,
    "verify-mc": _cmd_verify_mc,
    "partitions": _cmd_partitions,
}


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--nmax", type=int, default=None,
                        help="partition-size cap (default 12)")
    common.add_argument("--tol", type=float, default=None,
                        help="float tolerance for root finding")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed for sampling commands")
    common.add_argument("--config", default=None,
                        help="JSON file with nmax/tol/seed defaults")

    poly_in = _Parser(add_help=False)
    poly_in.add_argument("poly", nargs="?", default=None,
                         help="polynomial JSON, inline or a file path")
    poly_in.add_argument("--roots", default=None,
                         help="comma list of rational roots")
    poly_in.add_argument("--plain", default=None,
                         help="comma list of plain descending coefficients")

    top = _Parser(prog="finfree", description=__doc__)
    sub = top.add_subparsers(dest="command")

    sp = sub.add_parser("convolve", parents=[common],
                        help="additive convolution of two polynomials")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.set_defaults(func=_cmd_convolve)

    sp = sub.add_parser("power", parents=[common, poly_in],
                        help="fractional convolution power")
    sp.add_argument("--t", required=True, help="rational exponent > 0")
    sp.set_defaults(func=_cmd_power)

    sp = sub.add_parser("cumulants", parents=[common, poly_in],
                        help="finite free cumulants of a polynomial")
    sp.add_argument("--rescaled", action="store_true",
                    help="emit kappa~_n = ((d)_n/d^n) kappa_n")
    sp.set_defaults(func=_cmd_cumulants)

    sp = sub.add_parser("moments", parents=[common, poly_in],
                        help="moments of the root distribution")
    sp.add_argument("--N", type=int, required=True)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("coeffs", parents=[common],
                        help="polynomial from cumulants or moments")
    sp.add_argument("data", help="JSON with 'kappa' or with 'm'")
    sp.add_argument("--d", type=int, default=None,
                    help="degree (required for moment input without 'd')")
    sp.set_defaults(func=_cmd_coeffs)

    sp = sub.add_parser("rtransform", parents=[common, poly_in],
                        help="truncated R-transform coefficients")
    sp.set_defaults(func=_cmd_rtransform)

    sp = sub.add_parser("family", parents=[common],
                        help="closed-form families")
    sp.add_argument("which", choices=["hermite", "poisson"])
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--marcus", action="store_true",
                    help="hermite with variance 1 - 1/d")
    sp.set_defaults(func=_cmd_family)

    sp = sub.add_parser("converge", parents=[common],
                        help="finite-to-free cumulant convergence report")
    sp.add_argument("--r", required=True, help="comma list of free cumulants")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", required=True, help="comma list of degrees")
    sp.set_defaults(func=_cmd_converge)

    sp = sub.add_parser("check-id", parents=[common, poly_in],
                        help="infinite divisibility report")
    sp.set_defaults(func=_cmd_check_id)

    sp = sub.add_parser("threshold", parents=[common, poly_in],
                        help="real-rootedness threshold for convolution powers")
    sp.add_argument("--tmax", required=True)
    sp.add_argument("--steps", type=int, default=16)
    sp.set_defaults(func=_cmd_threshold)

    sp = sub.add_parser("cramer", parents=[common],
                        help="Cramer-failure pair with third cumulant +-eps")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--eps", required=True)
    sp.set_defaults(func=_cmd_cramer)

    sp = sub.add_parser("verify-mc", parents=[common],
                        help="Monte-Carlo check of the convolution")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("--samples", type=int, default=100000)
    sp.set_defaults(func=_cmd_verify_mc)

    sp = sub.add_parser("partitions", parents=[common],
                        help="list set partitions, types, and counts")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--noncrossing", action="store_true")
    sp.add_argument("--types", action="store_true")
    sp.set_defaults(func=_cmd_partitions)

    return top


def _emit_error(kind: str, message: str) -> None:
    json.dump({"error": {"type": kind, "message": message}}, sys.stderr)
    sys.stderr.write("\n")


def main(argv=None) -> int:
    args = list(sys.argv[1:]) if argv is None else list(argv)
    head = args[0] if args else None
    if head not in ("-h", "--help"):
        if head is None or head.startswith("-") or head not in _COMMANDS:
            _emit_error(
                "UnknownCommand",
                "expected one of: %s" % ", ".join(sorted(_COMMANDS)),
            )
            return 2
    try:
        ns = _build_parser().parse_args(args)
    except _UsageError as exc:
        _emit_error("UsageError", str(exc))
        return 3
    except SystemExit as exc:  # --help prints and exits 0
        return int(exc.code or 0)
    try:
        out = ns.func(ns)
    except (InputFormatError,) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 3
    except SizeCapError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 4
    except (DomainError, DimensionError, RootConvergenceError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 5
    except FinFreeError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 5
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
