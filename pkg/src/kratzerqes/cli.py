"""Command-line front end.

Subcommands reproduce the reference tables, run branch computations
end-to-end and emit machine-readable results.  Rationals serialize as
{"num": ..., "den": ...} decimal strings; evaluated reals additionally as
decimal strings at the requested precision.  Exit code is 0 iff all internal
exact checks passed; on failure a machine-readable error object is emitted
and the exit code is nonzero.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from mpmath import mp, mpf

from .exactnum import BivariatePoly
from .magyari import (AnsatzParams, DomainError, PhysicalParams,
                      backout_physical, derive_ansatz, formal_ansatz)
from .perturb import (DegenerateOverlapError, RankAnomalyError, left_null_pair,
                      evaluate_series, run_series)
from .verify import (NewtonError, ansatz_mpf, ansatz_to_mpf, cubic_numeric_n1,
                     log_grid, newton_full, ode_residual)
from .zeroorder import (enumerate_roots, pascal_ground, real_roots,
                        zero_coefficients)


class UsageError(ValueError):
    """Invalid flag combination for the requested command."""


def _frac(text: str) -> Fraction:
    return Fraction(text)


def _mpvalue(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _decimal(x, precision: int) -> str:
    return mp.nstr(_mpvalue(x), precision)


def _rat(x: Fraction, precision: int | None = None) -> dict:
    x = Fraction(x)
    out = {"num": str(x.numerator), "den": str(x.denominator)}
    if precision is not None:
        out["decimal"] = _decimal(x, precision)
    return out


def _real(x, precision: int):
    """Serialize an exact or floating scalar."""
    if isinstance(x, Fraction):
        return _rat(x, precision)
    return _decimal(x, precision)


def _poly_terms(p: BivariatePoly) -> list[dict]:
    return [{"b_pow": i, "g_pow": j, "coeff": _rat(c)}
            for (i, j), c in sorted(p.terms.items())]


# -- plain-text table rendering ------------------------------------------------

def _render_table(header: list[str], rows: list[list[str]]) -> str:
    cols = len(header)
    widths = [len(header[c]) for c in range(cols)]
    for r in rows:
        for c in range(cols):
            widths[c] = max(widths[c], len(r[c]))
    lines = ["  ".join(header[c].rjust(widths[c]) for c in range(cols))]
    lines.append("  ".join("-" * widths[c] for c in range(cols)))
    for r in rows:
        lines.append("  ".join(r[c].rjust(widths[c]) for c in range(cols)))
    return "\n".join(lines) + "\n"


def _render_csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit_flat(args, header, rows, doc):
    if args.format == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.format == "csv":
        return _render_csv(header, rows)
    return _render_table(header, rows)


def _emit_doc(args, doc, text: str | None = None):
    if args.format == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.format == "csv":
        raise UsageError("csv output is restricted to flat tables")
    return text if text is not None else json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- flat-table commands --------------------------------------------------------

def _roots_rows(N: int):
    header = ["2Re_s", "2Im_s/sqrt3", "2Re_t", "2Im_t/sqrt3", "branch"]
    rows, recs = [], []
    for r in enumerate_roots(N):
        rows.append([str(r.s.p), str(r.s.q), str(r.t.p), str(r.t.q),
                     "" if r.branch is None else str(r.branch)])
        recs.append({"s": {"p": r.s.p, "q": r.s.q}, "t": {"p": r.t.p, "q": r.t.q},
                     "branch": r.branch})
    return header, rows, recs


def cmd_roots(args) -> str:
    header, rows, recs = _roots_rows(args.N)
    return _emit_flat(args, header, rows, {"command": "roots", "N": args.N,
                                           "roots": recs, "count": len(recs)})


def _coeff_rows(N: int, n=None):
    header = ["n", "s0"] + [f"u{k}" for k in range(N + 1)]
    rows, recs = [], []
    for root in real_roots(N):
        if n is not None and root.branch != n:
            continue
        u = zero_coefficients(root)
        rows.append([str(root.branch), str(N - 3 * root.branch)]
                    + [str(c) for c in u.entries])
        recs.append({"n": root.branch, "s0": N - 3 * root.branch,
                     "u": list(u.entries)})
    return header, rows, recs


def cmd_coeffs(args) -> str:
    header, rows, recs = _coeff_rows(args.N, args.n)
    return _emit_flat(args, header, rows,
                      {"command": "coeffs", "N": args.N, "branches": recs})


def cmd_pascal(args) -> str:
    tri = pascal_ground(args.K)
    header = ["K"] + [f"c{j}" for j in range(2 * args.K + 1)]
    rows = [[str(k)] + [str(v) for v in row] + [""] * (2 * args.K - 2 * k)
            for k, row in enumerate(tri)]
    return _emit_flat(args, header, rows,
                      {"command": "pascal", "K": args.K, "rows": tri})


def cmd_leftvecs(args) -> str:
    N = args.N
    header = ["n", "s0", "sign", "vector", "overlap"]
    rows, recs = [], []
    for root in real_roots(N):
        if args.n is not None and root.branch != args.n:
            continue
        u0 = zero_coefficients(root)
        pair = left_null_pair(N, root, u0)
        for sign, v, c in (("+", pair.v_plus, pair.c_plus),
                           ("-", pair.v_minus, pair.c_minus)):
            rows.append([str(root.branch), str(N - 3 * root.branch), sign,
                         "(" + ",".join(str(x) for x in v) + ")", str(c)])
            recs.append({"n": root.branch, "s0": N - 3 * root.branch,
                         "sign": sign, "vector": list(v), "overlap": _rat(c)})
    return _emit_flat(args, header, rows,
                      {"command": "leftvecs", "N": N, "pairs": recs})


def cmd_tables(args) -> str:
    which = args.which
    if which == 1:
        parts = []
        for N in range(1, args.N + 1):
            header, rows, _ = _roots_rows(N)
            parts.append(f"N = {N}\n" + _render_table(header, rows))
        doc = {"command": "tables", "which": 1,
               "per_N": {str(N): _roots_rows(N)[2] for N in range(1, args.N + 1)}}
        return _emit_doc(args, doc, "\n".join(parts))
    if which == 2:
        parts = []
        for N in range(0, args.N + 1):
            header, rows, _ = _coeff_rows(N)
            parts.append(f"N = {N}\n" + _render_table(header, rows))
        doc = {"command": "tables", "which": 2,
               "per_N": {str(N): _coeff_rows(N)[2] for N in range(0, args.N + 1)}}
        return _emit_doc(args, doc, "\n".join(parts))
    if which == 3:
        sub = argparse.Namespace(K=args.K if args.K is not None else args.N,
                                 format=args.format)
        return cmd_pascal(sub)
    if which == 4:
        parts, per_n = [], {}
        for N in range(0, args.N + 1):
            sub = argparse.Namespace(N=N, n=None, format="table")
            parts.append(f"N = {N}\n" + cmd_leftvecs(sub))
            sub.format = "json"
            per_n[str(N)] = json.loads(cmd_leftvecs(sub))["pairs"]
        doc = {"command": "tables", "which": 4, "per_N": per_n}
        return _emit_doc(args, doc, "\n".join(parts))
    raise UsageError(f"unsupported table id {which}")


# -- series / spectrum / verify --------------------------------------------------

def _build_ansatz(args) -> AnsatzParams:
    physical = args.A is not None
    formal = args.lam is not None
    if physical and formal:
        raise UsageError("give either physical couplings (--A ...) or formal "
                         "(--lambda/--b/--g), not both")
    if physical:
        if None in (args.B, args.C, args.G, args.ell):
            raise UsageError("physical mode needs --A --B --C --G --ell")
        return derive_ansatz(PhysicalParams(A=args.A, B=args.B, C=args.C,
                                            G=args.G, ell=args.ell))
    if formal:
        if None in (args.b, args.g):
            raise UsageError("formal mode needs --lambda --b --g")
        return formal_ansatz(args.lam, args.b, args.g)
    raise UsageError("specify physical couplings or (--lambda, --b, --g)")


def _series_doc(series, precision: int) -> dict:
    return {
        "N": series.N, "n": series.n, "K_max": series.K_max,
        "gauge": series.gauge,
        "s0": series.N - 3 * series.n, "t0": series.N - 3 * series.n,
        "s_corr": [_poly_terms(p) for p in series.s_corr],
        "t_corr": [_poly_terms(p) for p in series.t_corr],
        "u_corr": [[_poly_terms(p) for p in u] for u in series.u_corr],
    }


def cmd_series(args) -> str:
    series = run_series(args.N, args.n, args.order, gauge=args.gauge)
    doc = {"command": "series", **_series_doc(series, args.precision)}
    if args.lam is not None:
        b = args.b if args.b is not None else Fraction(0)
        g = args.g if args.g is not None else Fraction(0)
        s, t, u = evaluate_series(series, args.lam, b, g)
        doc["evaluated"] = {"lambda": _rat(args.lam, args.precision),
                            "b": _rat(b, args.precision),
                            "g": _rat(g, args.precision),
                            "s": _real(s, args.precision),
                            "t": _real(t, args.precision),
                            "u": [_real(x, args.precision) for x in u]}
    lines = [f"series N={series.N} n={series.n} gauge={series.gauge}"]
    for k in range(series.K_max + 1):
        lines.append(f"  s[{k}] = {series.s_corr[k]!r}")
        lines.append(f"  t[{k}] = {series.t_corr[k]!r}")
    if "evaluated" in doc:
        ev = doc["evaluated"]
        s_txt = ev["s"]["decimal"] if isinstance(ev["s"], dict) else ev["s"]
        t_txt = ev["t"]["decimal"] if isinstance(ev["t"], dict) else ev["t"]
        lines.append(f"  partial sums: s = {s_txt}, t = {t_txt}")
    return _emit_doc(args, doc, "\n".join(lines) + "\n")


def _oracle_block(N, n, ansatz, series, precision, dps):
    """Newton cross-check and ODE residual for the evaluated series."""
    lam = ansatz.lam
    bval, gval = ansatz.b_symbol_value, ansatz.g_symbol_value
    s, t, u = evaluate_series(series, lam, bval, gval)
    with mp.workdps(dps):
        sol = newton_full(N, lam, bval, gval, (s, t, u), dps=dps)
        if ansatz.physical is None:
            # rebuild the formal-mode parameters at working precision so the
            # ansatz stays consistent with the (b, g) values Newton used
            am = ansatz_mpf(lam, bval, gval)
        else:
            am = ansatz_to_mpf(ansatz)
        E_n, F_n = backout_physical(sol.s, sol.t, am)
        res = ode_residual(sol.u, am, E_n, F_n, N, log_grid())
        deltas = {"s": _decimal(abs(_mpvalue(s) - sol.s), precision),
                  "t": _decimal(abs(_mpvalue(t) - sol.t), precision)}
        if N == 1:
            sc, tc, _ = cubic_numeric_n1(lam, bval, gval)
            deltas["cubic_s"] = _decimal(abs(sol.s - sc), precision)
            deltas["cubic_t"] = _decimal(abs(sol.t - tc), precision)
        block = {"newton_residual": _decimal(sol.residual_norm, precision),
                 "newton_iterations": sol.iterations,
                 "ode_residual": _decimal(res, precision),
                 "series_vs_newton": deltas}
        ok = res <= mpf(10) ** (-10)
    return block, ok


def cmd_spectrum(args) -> str:
    ansatz = _build_ansatz(args)
    series = run_series(args.N, args.n, args.order, gauge=args.gauge)
    pr = args.precision
    bval, gval = ansatz.b_symbol_value, ansatz.g_symbol_value
    s, t, u = evaluate_series(series, ansatz.lam, bval, gval)
    E, F = backout_physical(s, t, ansatz)
    D = ansatz.D(args.N)
    u0 = zero_coefficients(series.root)
    doc = {
        "command": "spectrum",
        "inputs": {"N": args.N, "n": args.n, "K_max": args.order,
                   "gauge": args.gauge},
        "ansatz": {k: _real(getattr(ansatz, a), pr) for k, a in
                   (("alpha", "alpha"), ("beta", "beta"), ("gamma", "gamma"),
                    ("l", "l_eff"), ("Omega", "Omega"), ("mu", "mu"),
                    ("tau", "tau"), ("lambda", "lam"))},
        "b": _real(bval, pr), "g": _real(gval, pr),
        "root": {"s0": args.N - 3 * args.n, "t0": args.N - 3 * args.n},
        "series": _series_doc(series, pr),
        "evaluated": {"s": _real(s, pr), "t": _real(t, pr),
                      "u": [_real(x, pr) for x in u]},
        "E": _real(E, pr), "F": _real(F, pr), "D": _real(D, pr),
        "coefficients": list(u0.entries),
    }
    if ansatz.physical is not None:
        doc["inputs"].update({k: _rat(getattr(ansatz.physical, k))
                              for k in "ABCG"})
        doc["inputs"]["ell"] = ansatz.physical.ell
    ok = True
    if not args.no_oracle:
        block, ok = _oracle_block(args.N, args.n, ansatz, series, pr,
                                  max(50, pr + 20))
        doc["oracle"] = block
    doc["checks_passed"] = bool(ok)
    def _txt(v):
        return v["decimal"] if isinstance(v, dict) else v
    lines = [f"spectrum N={args.N} n={args.n} K_max={args.order}",
             f"  E = {_txt(doc['E'])}",
             f"  F = {_txt(doc['F'])}",
             f"  D = {_txt(doc['D'])}",
             f"  coefficients = {doc['coefficients']}"]
    if "oracle" in doc:
        lines.append(f"  ode residual = {doc['oracle']['ode_residual']}")
    out = _emit_doc(args, doc, "\n".join(lines) + "\n")
    if not ok:
        raise RankAnomalyError("oracle checks failed")
    return out


def cmd_verify(args) -> str:
    ansatz = _build_ansatz(args)
    series = run_series(args.N, args.n, args.order, gauge=args.gauge)
    pr = args.precision
    dps = max(50, pr + 20)
    block, ok = _oracle_block(args.N, args.n, ansatz, series, pr, dps)
    doc = {"command": "verify",
           "inputs": {"N": args.N, "n": args.n, "K_max": args.order},
           "oracle": block, "checks_passed": bool(ok)}
    lines = [f"verify N={args.N} n={args.n} K_max={args.order}",
             f"  newton residual = {block['newton_residual']} "
             f"({block['newton_iterations']} iterations)",
             f"  ode residual    = {block['ode_residual']}",
             f"  series vs newton: s {block['series_vs_newton']['s']}, "
             f"t {block['series_vs_newton']['t']}",
             f"  checks passed   = {ok}"]
    out = _emit_doc(args, doc, "\n".join(lines) + "\n")
    if not ok:
        raise NewtonError("verification checks failed")
    return out


# -- argument parsing / entry point ----------------------------------------------

def _add_common(p, needs_model=False):
    p.add_argument("--format", choices=["table", "json", "csv"],
                   default="table")
    p.add_argument("--precision", type=int, default=15)
    p.add_argument("--out", default=None, metavar="FILE")
    if needs_model:
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--n", type=int, default=0)
        p.add_argument("--order", type=int, default=0)
        p.add_argument("--gauge", choices=["down", "up"], default="down")
        p.add_argument("--A", type=_frac, default=None)
        p.add_argument("--B", type=_frac, default=None)
        p.add_argument("--C", type=_frac, default=None)
        p.add_argument("--G", type=_frac, default=None)
        p.add_argument("--ell", type=int, default=None)
        p.add_argument("--lambda", dest="lam", type=_frac, default=None)
        p.add_argument("--b", type=_frac, default=None)
        p.add_argument("--g", type=_frac, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kratzerqes",
        description="Exact bound states of the Kratzer-plus-quartic radial "
                    "potential: secular roots, coefficient tables and the "
                    "nonlinear correction hierarchy.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="secular root pairs at degree N")
    p.add_argument("--N", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("coeffs", help="real-branch coefficient vectors")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("pascal", help="generalized Pascal triangle rows 0..K")
    p.add_argument("--K", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_pascal)

    p = sub.add_parser("leftvecs", help="left null-vector pairs at degree N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_leftvecs)

    p = sub.add_parser("series", help="correction hierarchy coefficients")
    _add_common(p, needs_model=False)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--gauge", choices=["down", "up"], default="down")
    p.add_argument("--lambda", dest="lam", type=_frac, default=None)
    p.add_argument("--b", type=_frac, default=None)
    p.add_argument("--g", type=_frac, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("spectrum", help="end-to-end spectral document")
    _add_common(p, needs_model=True)
    p.add_argument("--no-oracle", action="store_true",
                   help="skip the Newton/ODE cross-checks")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="oracle cross-checks only")
    _add_common(p, needs_model=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="reference tables 1-4")
    p.add_argument("--which", type=int, required=True, choices=[1, 2, 3, 4])
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--K", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_tables)

    return ap


_KNOWN_ERRORS = (UsageError, DomainError, RankAnomalyError,
                 DegenerateOverlapError, NewtonError, ValueError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except _KNOWN_ERRORS as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
