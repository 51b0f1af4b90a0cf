"""
Command-line driver.

    edp <command> [--preset NAME | --config PATH] [--out DIR] [--tol X] [--quad de|gl]

Every command prints a short table, writes ``<command>.json`` to ``--out``
when given, and exits 0 exactly when all of its checks pass.  With ``--json``
the report goes to stdout instead of the table.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import inner, model, oracle, wronskian
from .config import PRESETS, REFERENCE_NORMS, RunConfig, load_config, preset
from .errors import EdpError
from .export import FIGURES, export_figure
from .model import Family
from .quadrature import QuadratureSpec

DEFAULT_PRESET = "scarf-hyp-k0.1"

# pass thresholds
OFFDIAG_TOL = 1e-7
CROSS_QUAD_TOL = 1e-8
WRONSKIAN_TOL = 1e-6
SHOOT_TOL = 1e-6
PT_TOL = 1e-12
PSEUDO_TOL = 1e-11


def _c(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _other_method(quad: QuadratureSpec) -> QuadratureSpec:
    return replace(quad, method="gl" if quad.method == "de" else "de")


# --------------------------------------------------------------------------- #
# commands: each returns (rows for the table, results for JSON, pass flag)
# --------------------------------------------------------------------------- #


def cmd_spectrum(cfg: RunConfig):
    spec = cfg.spec
    results = []
    for st in model.enumerate_levels(spec):
        row: dict[str, Any] = {
            "n": st.n,
            "energy": st.energy,
            "B": _c(st.b_at_energy),
            "admissible": st.admissible,
            "reason": st.reason.value if st.reason else None,
        }
        if st.admissible and spec.family is Family.HYPERBOLIC_SCARF:
            try:
                row["unbroken_pt"] = model.unbroken_pt_condition(spec, st.n)
            except EdpError:
                row["unbroken_pt"] = None
        if spec.family is Family.MORSE:
            row["re_B_positive"] = bool(st.b_at_energy.real > 0)
        results.append(row)
    ok = any(r["admissible"] for r in results)
    table = [
        f"{r['n']:>3} {r['energy']:>12.6g}  B={complex(*r['B']):.6g}  "
        + ("admissible" if r["admissible"] else f"excluded ({r['reason']})")
        + (f"  unbroken={r['unbroken_pt']}" if "unbroken_pt" in r else "")
        for r in results
    ]
    return table, results, ok


def cmd_norms(cfg: RunConfig):
    spec, quad = cfg.spec, cfg.quad
    refs = REFERENCE_NORMS.get(cfg.name or "", ())
    results, table, ok = [], [], True
    for st in model.admissible_levels(spec):
        row: dict[str, Any] = {"n": st.n}
        try:
            primary = inner.pseudo_norm(spec, st, quad)
            second = inner.pseudo_norm(spec, st, _other_method(quad))
        except EdpError as exc:
            row["error"] = str(exc)
            results.append(row)
            table.append(f"{st.n:>3}  failed: {exc}")
            ok = False
            continue
        gap = abs(primary.value - second.value)
        row.update(primary.as_dict())
        row["second_method"] = second.method
        row["second_value"] = _c(second.value)
        row["method_gap"] = gap
        good = primary.converged and primary.is_real and gap < CROSS_QUAD_TOL
        if st.n < len(refs):
            ref = refs[st.n]
            row["reference"] = ref
            row["reference_rel_dev"] = abs(primary.value.real - ref) / abs(ref)
        row["pass"] = good
        ok &= good
        results.append(row)
        extra = f"  ref={row['reference']:.6g} (rel dev {row['reference_rel_dev']:.2e})" if "reference" in row else ""
        table.append(f"{st.n:>3} N={primary.value.real:>+14.9f} {primary.sign}  err={primary.error_estimate:.1e}  gap={gap:.1e}{extra}")
    return table, results, ok


def cmd_gram(cfg: RunConfig):
    spec = cfg.spec
    G = inner.gram_values(inner.gram_matrix(spec, cfg.quad))
    diag = np.abs(np.diag(G).real)
    off = G - np.diag(np.diag(G))
    worst_abs = float(np.max(np.abs(off))) if G.shape[0] > 1 else 0.0
    worst_ratio = worst_abs / float(np.min(diag)) if diag.size else math.inf
    ok = worst_abs < OFFDIAG_TOL and worst_ratio < OFFDIAG_TOL
    results = [{"row": i, "values": [_c(v) for v in G[i]]} for i in range(G.shape[0])]
    results.append({"max_offdiag": worst_abs, "max_offdiag_ratio": worst_ratio})
    table = ["  ".join(f"{v.real:>+11.3e}" for v in row) for row in G]
    table.append(f"max |offdiag| = {worst_abs:.2e}, ratio = {worst_ratio:.2e}")
    return table, results, ok


def cmd_wronskian(cfg: RunConfig):
    spec = cfg.spec
    levels = [st.n for st in model.admissible_levels(spec)]
    results, table, ok = [], [], True
    for i, m in enumerate(levels):
        for n in levels[i + 1 :]:
            try:
                check = wronskian.ortho_via_wronskian(spec, m, n)
                integral = inner.modified_inner_product(spec, m, n, cfg.quad).value
            except EdpError as exc:
                results.append({"pair": [m, n], "error": str(exc)})
                table.append(f"({m},{n}) failed: {exc}")
                ok = False
                continue
            agree = abs(integral - check.implied_inner_product)
            good = agree < WRONSKIAN_TOL and abs(check.implied_inner_product) < OFFDIAG_TOL and abs(integral) < OFFDIAG_TOL
            d = replace(check, agreement_error=agree).as_dict()
            d["integral"] = _c(integral)
            d["pass"] = good
            results.append(d)
            ok &= good
            table.append(f"({m},{n}) |dW|={abs(check.difference):.2e}  implied={abs(check.implied_inner_product):.2e}  integral={abs(integral):.2e}  diff={agree:.2e}")
    return table, results, ok


def cmd_oracle(cfg: RunConfig):
    spec = cfg.spec
    results, table, ok = [], [], True
    for st in model.admissible_levels(spec):
        try:
            shot = oracle.shoot_eigenvalue(spec, st.n)
            ref = oracle.reference_pseudo_norm(spec, st.n)
            main = inner.pseudo_norm(spec, st, cfg.quad).value
        except EdpError as exc:
            results.append({"n": st.n, "error": str(exc)})
            table.append(f"{st.n:>3} failed: {exc}")
            ok = False
            continue
        row = shot.as_dict()
        row["reference_norm"] = _c(ref)
        row["norm_gap"] = abs(ref - main)
        row["pass"] = shot.error < SHOOT_TOL and row["norm_gap"] < CROSS_QUAD_TOL
        ok &= row["pass"]
        results.append(row)
        table.append(f"{st.n:>3} E={shot.energy:.12g} closed={shot.closed_form:g} |dE|={shot.error:.1e}  norm gap={row['norm_gap']:.1e}")
    return table, results, ok


def symmetry_grid(spec: model.ModelSpec) -> np.ndarray:
    if spec.is_bounded:
        edge = math.pi / (2 * spec.alpha)
        return np.linspace(-edge + 1e-2, edge - 1e-2, 101)
    if spec.family is Family.MORSE:
        # keep e^{-2 alpha x} moderate so rounding stays below the absolute tolerance
        return np.linspace(-4.0, 6.0, 100) / spec.alpha
    return np.linspace(-6.0, 6.0, 101) / spec.alpha


def cmd_symmetry(cfg: RunConfig):
    spec = cfg.spec
    rep = model.symmetry_report(spec, symmetry_grid(spec), pt_tol=PT_TOL, pseudo_tol=PSEUDO_TOL)
    res = {
        "pt_symmetric": rep.pt_symmetric,
        "pt_error": rep.pt_error,
        "pseudo_hermitian": rep.pseudo_hermitian,
        "pseudo_error": rep.pseudo_error,
        "theta": {str(k): v for k, v in rep.theta.items()},
        "unbroken_pt": {str(k): v for k, v in rep.unbroken_pt.items()},
    }
    ok = rep.pseudo_hermitian if spec.family is Family.MORSE else rep.pt_symmetric
    table = [
        f"PT-symmetric: {'yes' if rep.pt_symmetric else 'no'} (max err {rep.pt_error:.2e})",
        f"pseudo-Hermitian: {'yes' if rep.pseudo_hermitian else 'no'} (max err {rep.pseudo_error:.2e})",
    ]
    table += [f"  theta[{k}] = {v:.10g}" for k, v in rep.theta.items()]
    table += [f"  unbroken[{k}] = {v}" for k, v in rep.unbroken_pt.items()]
    return table, [res], ok


COMMANDS: dict[str, Callable] = {
    "spectrum": cmd_spectrum,
    "norms": cmd_norms,
    "gram": cmd_gram,
    "wronskian": cmd_wronskian,
    "oracle": cmd_oracle,
    "symmetry": cmd_symmetry,
}


# --------------------------------------------------------------------------- #
# argument handling
# --------------------------------------------------------------------------- #


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edp", description="Energy-dependent complex potentials: spectra, pseudo-norms and checks.")
    p.add_argument("command", choices=[*COMMANDS, "export-figure", "presets"])
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", help=f"built-in configuration (default {DEFAULT_PRESET})")
    src.add_argument("--config", type=Path, help="JSON configuration file")
    p.add_argument("--out", type=Path, help="directory for JSON reports and CSV files")
    p.add_argument("--tol", type=float, help="quadrature tolerance")
    p.add_argument("--quad", choices=["de", "gl"], help="primary quadrature rule")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a table")
    p.add_argument("--figure", choices=sorted(FIGURES), default="fig1")
    p.add_argument("--which", choices=["potential", "density", "both"], default="both")
    p.add_argument("--points", type=int, default=1001)
    return p


def _load(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else preset(args.preset or DEFAULT_PRESET)
    if args.tol is not None and not args.tol > 0:
        raise EdpError("--tol must be positive")
    return cfg.with_quadrature(method=args.quad, tol=args.tol)


def _emit(args, report: dict, table: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"[{report['command']}] {report['preset'] or 'config'}")
        for line in table:
            print(line)
        print("PASS" if report["pass"] else "FAIL")
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / f"{report['command']}.json").write_text(json.dumps(report, indent=2) + "\n")
    if not report["pass"]:
        failed = [r for r in report["results"] if isinstance(r, dict) and (r.get("pass") is False or "error" in r)]
        print(json.dumps({"command": report["command"], "failed": failed or report["results"]}), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "presets":
        for name in sorted(PRESETS):
            print(name)
        return 0
    try:
        if args.command == "export-figure":
            if args.points < 2:
                raise EdpError("--points must be at least 2")
            paths = export_figure(args.figure, args.which, args.out or Path("."), args.points)
            report = {"command": "export-figure", "preset": args.figure, "results": [str(p) for p in paths], "pass": True}
            _emit(args, report, [f"wrote {p}" for p in paths])
            return 0
        cfg = _load(args)
        table, results, ok = COMMANDS[args.command](cfg)
    except EdpError as exc:
        print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    report = {"command": args.command, "preset": cfg.name, "results": results, "pass": bool(ok)}
    _emit(args, report, table)
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
