"""Command-line surface: reference-constant tables, functional evaluation,
inequality checks, fleet sweeps, the variational oracle, and tabulated
density file I/O.

Exit codes: 0 success, 2 malformed input, 3 parameter outside a validity
window, 4 numerical non-convergence.  Documents are deterministic
(field order fixed, numbers at 12 significant digits, no timestamps):
identical invocations produce byte-identical output.

Tabulated density file format (UTF-8 CSV): leading comment lines
``# d=<int>``, ``# N=<real>`` and optionally ``# space=position|momentum``,
an optional ``r,rho`` header line, then two columns r,rho with strictly
increasing r.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__, constants, varoracle
from .constants import SystemConfig
from .densities import (DensityPair, exponential_radial, gaussian_pair,
                        harmonic_fermions_1d, hydrogenic_pair, load_tabulated)
from .errors import ConvergenceError, DomainError, FormatError, UncrelError
from .functionals import radial_moment
from .inequalities import BoundReport, InequalityId, evaluate, sweep
from .mathcore import QuadratureSpec

_G174 = math.gamma(17.0 / 4.0)
_G114 = math.gamma(11.0 / 4.0)
_G34 = math.gamma(3.0 / 4.0)
_PI = math.pi

# Published values of the Daubechies factor B(d, k), six significant digits.
TABLE1_REFERENCE = {
    (1, 1): 0.165728, (2, 1): 0.405724, (3, 1): 0.537513, (4, 1): 0.618094,
    (1, 2): 0.021331, (2, 2): 0.165728, (3, 2): 0.303977, (4, 2): 0.405724,
    (1, 3): 0.002056, (2, 3): 0.061935, (3, 3): 0.165728, (4, 3): 0.262190,
    (1, 4): 0.000158, (2, 4): 0.021331, (3, 4): 0.086812, (4, 4): 0.165728,
}

# Closed-form d = 3, q = 2 product-bound coefficients, coded independently
# of the constants module.  Two cells of the published table are known to
# be inconsistent with the general formula and carry corrections here:
# the (alpha=2, k=4) coefficient needs the Gamma-ratio raised to the 4/3
# power (published exponent 1), and the (alpha=4, k=2) N-exponent is 13/6
# (published as 13/16).  Both corrections are reported in the table output.
TABLE2_REFERENCE = {
    (1, 1): ((9 / 49) * (45 * _PI) ** (1 / 3), "7/3", ""),
    (1, 2): ((243 / 5324) * (35 * _PI) ** (2 / 3), "11/3", ""),
    (1, 3): ((243 / 625) * _PI, "5", ""),
    (1, 4): ((841995 / 39617584) * (3465 * _PI ** 4) ** (1 / 3), "19/3", ""),
    (2, 1): ((9 / 22) * math.sqrt(3 / 11) * (35 * _PI) ** (1 / 3), "11/6", ""),
    (2, 2): ((9 / 16) * 3 ** (2 / 3), "8/3", ""),
    (2, 3): ((135 / 196) * math.sqrt(3 / 7) * _PI, "7/2", ""),
    (2, 4): ((2268 / 28561) * ((21 / 13) * _PI ** 2) ** (1 / 3) * (_G174 / _G114) ** (4 / 3),
             "13/3", "published coefficient lacks the 4/3 power on the Gamma ratio"),
    (3, 1): ((3 / 5) * ((9 / 5) * _PI) ** (1 / 3), "5/3", ""),
    (3, 2): (3 * (45 * _PI / (196 * math.sqrt(7))) ** (2 / 3), "7/3", ""),
    (3, 3): (_PI / 2, "3", ""),
    (3, 4): ((189 / 484) * ((63 / 44) * _PI ** 4) ** (1 / 3), "11/3", ""),
    (4, 1): ((3 / 38) * (3 / 19) ** (1 / 4) * (3465 * _PI) ** (1 / 3), "19/12", ""),
    (4, 2): ((24 * math.sqrt(3) / 169) * (4 * _PI / math.sqrt(13)) ** (1 / 3)
             * (_G174 / _G34) ** (2 / 3),
             "13/6", "published N-exponent 13/16; the general formula gives 13/6"),
    (4, 3): ((21 / 4) * (3 / 11) ** (7 / 4) * _PI, "11/4", ""),
    (4, 4): ((567 / 3200) * (63 / 2) ** (1 / 3) * _PI ** 2 / (_G34 * _G114) ** (4 / 3),
             "10/3", ""),
}


def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.12g}"
    return str(x)


class ReportDocument:
    """Rows plus metadata, rendered as CSV or JSON with a fixed field order."""

    def __init__(self, metadata: dict, fieldnames: list[str], rows: list[dict]):
        self.metadata = metadata
        self.fieldnames = fieldnames
        self.rows = rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"metadata": {k: _fmt(v) for k, v in self.metadata.items()},
                   "rows": [{k: _fmt(row.get(k, "")) for k in self.fieldnames}
                            for row in self.rows]}
            return json.dumps(doc, indent=2) + "\n"
        out = io.StringIO()
        for k, v in self.metadata.items():
            out.write(f"# {k}={_fmt(v)}\n")
        writer = csv.DictWriter(out, fieldnames=self.fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _fmt(row.get(k, "")) for k in self.fieldnames})
        return out.getvalue()


def _metadata(spec: QuadratureSpec, cfg: SystemConfig | None = None, **extra) -> dict:
    md = {"tool": "uncrel", "version": __version__,
          "rel_tol": spec.rel_tol, "abs_tol": spec.abs_tol}
    if cfg is not None:
        md.update({"d": cfg.d, "N": cfg.N, "q": cfg.q})
    md.update(extra)
    return md


def _report_row(rep: BoundReport) -> dict:
    row = {"inequality": rep.ineq, "state": rep.inputs.get("state", ""),
           "d": rep.inputs.get("d", ""), "N": rep.inputs.get("N", ""),
           "q": rep.inputs.get("q", ""), "direction": rep.direction.value,
           "lhs": rep.lhs, "rhs": rep.rhs, "margin": rep.margin,
           "ratio": rep.ratio, "status": rep.status, "note": rep.note}
    for key in ("alpha", "k", "variant", "orientation", "constant"):
        if key in rep.inputs:
            row["params"] = row.get("params", "") + f"{key}={_fmt(rep.inputs[key])};"
    return row


_REPORT_FIELDS = ["inequality", "state", "d", "N", "q", "params", "direction",
                  "lhs", "rhs", "margin", "ratio", "status", "note"]


def cmd_table1(args, spec: QuadratureSpec) -> ReportDocument:
    rows = []
    for k in (1, 2, 3, 4):
        for d in (1, 2, 3, 4):
            val = constants.daubechies_factor(d, float(k))
            ref = TABLE1_REFERENCE[(d, k)]
            rows.append({"d": d, "k": k, "computed": val, "reference": ref,
                         "abs_diff": abs(val - ref)})
    return ReportDocument(_metadata(spec, table="daubechies_factor"),
                          ["d", "k", "computed", "reference", "abs_diff"], rows)


def cmd_table2(args, spec: QuadratureSpec) -> ReportDocument:
    rows = []
    for alpha in (1, 2, 3, 4):
        for k in (1, 2, 3, 4):
            coeff = constants.heisenberg_rhs(3, float(alpha), float(k), N=1.0, q=2)
            ref, exp_printed, note = TABLE2_REFERENCE[(alpha, k)]
            exponent = constants.heisenberg_exponent(3, float(alpha), float(k))
            rows.append({"alpha": alpha, "k": k, "coefficient": coeff,
                         "closed_form": ref,
                         "rel_diff": abs(coeff - ref) / ref,
                         "N_exponent": exponent, "note": note})
    return ReportDocument(_metadata(spec, table="heisenberg_d3_q2"),
                          ["alpha", "k", "coefficient", "closed_form",
                           "rel_diff", "N_exponent", "note"], rows)


def read_table(path: str):
    """Parse a tabulated density file; returns (header dict, r, rho)."""
    header: dict[str, str] = {}
    rs, rhos = [], []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    body = line.lstrip("#").strip()
                    if "=" in body:
                        key, _, value = body.partition("=")
                        header[key.strip()] = value.strip()
                    continue
                parts = [p.strip() for p in line.split(",")]
                if parts[0].lower() in ("r", "radius"):
                    continue
                if len(parts) < 2:
                    raise FormatError(f"{path}: expected two columns, got {line!r}")
                try:
                    rs.append(float(parts[0]))
                    rhos.append(float(parts[1]))
                except ValueError as exc:
                    raise FormatError(f"{path}: non-numeric row {line!r}") from exc
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return header, np.asarray(rs), np.asarray(rhos)


def _density_from_file(path: str, q: int):
    header, r, rho = read_table(path)
    try:
        d = int(header.get("d", "3"))
        n_decl = float(header.get("N", "1"))
    except ValueError as exc:
        raise FormatError(f"{path}: bad header value: {exc}") from exc
    cfg = SystemConfig(d=d, N=n_decl, q=q)
    return load_tabulated(cfg, r, rho), cfg


def build_state(args):
    """Build the requested density or pair plus its SystemConfig."""
    q = args.q
    if getattr(args, "position", None) or getattr(args, "momentum", None):
        if not (args.position and args.momentum):
            raise FormatError("conjugate-space checks need both --position and --momentum")
        pos, cfg = _density_from_file(args.position, q)
        mom, _ = _density_from_file(args.momentum, q)
        pair = DensityPair(pos, mom, real_wavefunction=False, label="tabulated-pair")
        return pair, SystemConfig(d=pos.d, N=pos.N, q=q)
    if getattr(args, "file", None):
        dens, cfg = _density_from_file(args.file, q)
        return dens, SystemConfig(d=dens.d, N=dens.N, q=q)
    model = args.model
    if model == "gaussian":
        pair = gaussian_pair(args.d, args.a, args.count)
    elif model == "hydrogenic":
        pair = hydrogenic_pair(args.Z)
    elif model == "exponential":
        dens = exponential_radial(args.d, args.lam, args.count)
        return dens, SystemConfig(d=dens.d, N=dens.N, q=q)
    elif model == "ho1d":
        pair = harmonic_fermions_1d(args.n, q)
    else:
        raise FormatError(f"unknown model {model!r} and no input file given")
    return pair, SystemConfig(d=pair.position.d, N=pair.position.N, q=q)


def _parse_orders(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise FormatError(f"bad orders list {text!r}") from exc


def cmd_moments(args, spec: QuadratureSpec) -> ReportDocument:
    state, cfg = build_state(args)
    if isinstance(state, DensityPair):
        dens = state.momentum if args.space == "momentum" else state.position
    else:
        if args.space == "momentum":
            raise DomainError("this input has no momentum-space density")
        dens = state
    rows = []
    for order in _parse_orders(args.orders):
        mv = radial_moment(dens, order, spec)
        rows.append({"space": args.space, "order": mv.order, "value": mv.value,
                     "method": mv.method, "est_error": mv.est_error})
    return ReportDocument(_metadata(spec, cfg, state=dens.label),
                          ["space", "order", "value", "method", "est_error"], rows)


_ALIASES = {"heisenberg": InequalityId.HEISENBERG_GENERAL,
            "thakkar": InequalityId.THAKKAR_LOWER}


def _resolve_ineq(name: str) -> InequalityId:
    if name in _ALIASES:
        return _ALIASES[name]
    try:
        return InequalityId(name)
    except ValueError as exc:
        valid = ", ".join(i.value for i in InequalityId)
        raise FormatError(f"unknown inequality {name!r}; known: {valid}") from exc


def _check_params(args) -> dict:
    params = {}
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.k is not None:
        params["k"] = args.k
    if args.variant is not None:
        params["variant"] = args.variant
    if args.orientation is not None:
        params["orientation"] = args.orientation
    if args.constant is not None:
        params["constant"] = args.constant
    return params


def cmd_check(args, spec: QuadratureSpec) -> ReportDocument:
    ineq = _resolve_ineq(args.ineq)
    state, cfg = build_state(args)
    if not isinstance(state, DensityPair):
        raise DomainError("inequality checks need a conjugate density pair "
                          "(this input is position-only)")
    rep = evaluate(ineq, state, cfg, _check_params(args), spec=spec)
    return ReportDocument(_metadata(spec, cfg), _REPORT_FIELDS, [_report_row(rep)])


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError as exc:
            raise FormatError(f"bad range {text!r}") from exc
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise FormatError(f"bad range {text!r}") from exc


def cmd_sweep(args, spec: QuadratureSpec) -> ReportDocument:
    ineq = _resolve_ineq(args.ineq)
    if args.model == "ho1d":
        fleet = [harmonic_fermions_1d(n, args.q) for n in _parse_range(args.n_range)]
    elif args.model == "hydrogenic":
        fleet = [hydrogenic_pair(float(z)) for z in _parse_range(args.n_range)]
    elif args.model == "gaussian":
        fleet = [gaussian_pair(args.d, args.a, float(n)) for n in _parse_range(args.n_range)]
    else:
        raise FormatError(f"sweeps support models ho1d, hydrogenic, gaussian; "
                          f"got {args.model!r}")
    cfg = SystemConfig(d=fleet[0].position.d, N=fleet[0].position.N, q=args.q)
    rows = [_report_row(r) for r in sweep(ineq, fleet, cfg, _check_params(args), spec=spec)]
    return ReportDocument(_metadata(spec, ineq=ineq.value, model=args.model),
                          _REPORT_FIELDS, rows)


def cmd_oracle(args, spec: QuadratureSpec) -> ReportDocument:
    if args.mode == "F":
        res = varoracle.extremal_F(args.d, args.alpha, args.k)
    elif args.mode == "G":
        res = varoracle.extremal_G(args.d, args.alpha, args.k)
    else:
        raise FormatError(f"oracle mode must be F or G, got {args.mode!r}")
    rows = [{"mode": args.mode, "d": res.d, "alpha": res.alpha, "k": res.k,
             "numeric": res.numeric_value,
             "closed_form": res.closed_form_value if res.closed_form_value is not None
             else "not-evaluable",
             "discrepancy": res.discrepancy if res.discrepancy is not None else ""}]
    return ReportDocument(_metadata(spec, mode=args.mode),
                          ["mode", "d", "alpha", "k", "numeric", "closed_form",
                           "discrepancy"], rows)


def cmd_export(args, spec: QuadratureSpec) -> ReportDocument:
    state, cfg = build_state(args)
    if isinstance(state, DensityPair):
        dens = state.momentum if args.space == "momentum" else state.position
    else:
        dens = state
    rmax = args.rmax if args.rmax is not None else 3.0 * dens.support_hint
    grid = np.linspace(0.0, rmax, args.points)
    vals = dens.rho(grid)
    rows = [{"r": float(r), "rho": float(v)} for r, v in zip(grid, vals)]
    return ReportDocument({"d": dens.d, "N": dens.N, "space": args.space},
                          ["r", "rho"], rows)


def _add_state_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=["gaussian", "hydrogenic", "exponential", "ho1d"],
                   help="analytic model state")
    p.add_argument("--d", type=int, default=3, help="spatial dimension (model states)")
    p.add_argument("--a", type=float, default=1.0, help="gaussian length scale")
    p.add_argument("--Z", type=float, default=1.0, help="hydrogenic charge")
    p.add_argument("--lam", type=float, default=1.0, help="exponential decay rate")
    p.add_argument("--count", type=float, default=1.0, help="particle count N")
    p.add_argument("--n", type=int, default=1, help="fermion number for ho1d")
    p.add_argument("--q", type=int, default=2, help="spin multiplicity q = 2s + 1")
    p.add_argument("--file", help="tabulated density file")
    p.add_argument("--position", help="tabulated position-space density file")
    p.add_argument("--momentum", help="tabulated momentum-space density file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncrel",
        description="Uncertainty-relation functionals and verified bounds for "
                    "d-dimensional radial densities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv",
                        help="output document format")
    common.add_argument("--out", help="write the document to this path instead of stdout")
    common.add_argument("--tol", type=float, default=None,
                        help="quadrature relative tolerance "
                             "(default 1e-10; env UNCREL_TOL overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("table1", parents=[common],
                   help="Daubechies factor grid B(d,k), d,k in 1..4, "
                        "against the published values")
    sub.add_parser("table2", parents=[common],
                   help="d=3 electron-system product-bound coefficients "
                        "against independently coded closed forms")

    p = sub.add_parser("moments", parents=[common], help="radial moments of a density")
    _add_state_arguments(p)
    p.add_argument("--orders", default="0", help="comma-separated moment orders")
    p.add_argument("--space", choices=["position", "momentum"], default="position")

    p = sub.add_parser("check", parents=[common], help="evaluate one inequality on one state")
    p.add_argument("--ineq", required=True)
    _add_state_arguments(p)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--variant", default=None)
    p.add_argument("--orientation", default=None)
    p.add_argument("--constant", default=None)

    p = sub.add_parser("sweep", parents=[common], help="evaluate one inequality across a model fleet")
    p.add_argument("--ineq", required=True)
    p.add_argument("--model", default="ho1d")
    p.add_argument("--n", dest="n_range", default="1..10",
                   help="range like 1..20 or comma list (fermion number / charge)")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--variant", default=None)
    p.add_argument("--orientation", default=None)
    p.add_argument("--constant", default=None)

    p = sub.add_parser("oracle", parents=[common], help="variational reconstruction of a bound constant")
    p.add_argument("--mode", required=True, choices=["F", "G"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=float, required=True)

    p = sub.add_parser("export", parents=[common], help="write a model density to the tabulated CSV format")
    _add_state_arguments(p)
    p.add_argument("--space", choices=["position", "momentum"], default="position")
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--rmax", type=float, default=None)
    return parser


_COMMANDS = {"table1": cmd_table1, "table2": cmd_table2, "moments": cmd_moments,
             "check": cmd_check, "sweep": cmd_sweep, "oracle": cmd_oracle,
             "export": cmd_export}


def _quadrature_spec(args) -> QuadratureSpec:
    tol = args.tol
    if tol is None and os.environ.get("UNCREL_TOL"):
        try:
            tol = float(os.environ["UNCREL_TOL"])
        except ValueError as exc:
            raise FormatError(f"bad UNCREL_TOL value "
                              f"{os.environ['UNCREL_TOL']!r}") from exc
    if tol is None:
        return QuadratureSpec()
    return QuadratureSpec(rel_tol=tol)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _quadrature_spec(args)
        doc = _COMMANDS[args.command](args, spec)
        text = doc.render(args.format)
    except UncrelError as exc:
        code = 2 if isinstance(exc, FormatError) else 4 if isinstance(exc, ConvergenceError) else 3
        if args.format == "json":
            payload = {"error": {"type": type(exc).__name__, "message": str(exc),
                                 "exit_code": code}}
            print(json.dumps(payload, indent=2))
        else:
            print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return code
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
