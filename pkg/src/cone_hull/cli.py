"""Command-line entry point.

Subcommands mirror the library modules:

    cone-hull polytope support|contains|refine|exponents|distance|dual|section
    cone-hull lattice  independent|separate|fibers|pullback
    cone-hull vsk      eval|grid|hull|siciak|axes|sample
    cone-hull approx   run|escape|domain

Every leaf command reads a JSON config via --input (schemas in _jsonio),
writes JSON or CSV to stdout or --out, and is deterministic given the same
inputs and --seed.  Exit codes: 0 success, 1 internal error, 2 bad input or
violated mathematical hypothesis, 3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import io
import sys
import traceback
from fractions import Fraction

from . import _jsonio as jio
from . import extremal, lattice, polytope, series
from ._rational import format_frac, frac
from .errors import BudgetExceeded, ConeHullError, SchemaError

INPUT_REQUIRED = {"type": "object"}  # per-command validation happens in handlers


def _common_flags(p):
    p.add_argument("--input", required=True, help="JSON config file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser():
    ap = argparse.ArgumentParser(prog="cone-hull",
                                 description="cone-restricted polynomial approximation toolkit")
    sub = ap.add_subparsers(dest="group", required=True)

    grp_poly = sub.add_parser("polytope").add_subparsers(dest="cmd", required=True)
    for name, fn in POLYTOPE_CMDS.items():
        p = grp_poly.add_parser(name)
        _common_flags(p)
        if name in ("refine", "exponents"):
            p.add_argument("--m", type=int, default=None,
                           help="scaling (overrides the config field)")
        p.set_defaults(handler=fn)

    grp_lat = sub.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    for name, fn in LATTICE_CMDS.items():
        p = grp_lat.add_parser(name)
        _common_flags(p)
        p.set_defaults(handler=fn)

    grp_vsk = sub.add_parser("vsk").add_subparsers(dest="cmd", required=True)
    for name, fn in VSK_CMDS.items():
        p = grp_vsk.add_parser(name)
        _common_flags(p)
        if name == "grid":
            p.add_argument("--grid", action="append", required=True,
                           metavar="MIN:MAX:STEPS",
                           help="one spec per coordinate; rational endpoints allowed")
        p.set_defaults(handler=fn)

    grp_apx = sub.add_parser("approx").add_subparsers(dest="cmd", required=True)
    for name, fn in APPROX_CMDS.items():
        p = grp_apx.add_parser(name)
        _common_flags(p)
        p.set_defaults(handler=fn)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.handler(args)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ConeHullError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _load(args, allowed) -> dict:
    cfg = jio.load_config(args.input, INPUT_REQUIRED)
    extra = sorted(set(cfg) - set(allowed))
    if extra:
        raise SchemaError(f"unknown field at $[{extra[0]!r}]")
    return cfg


def _need(cfg, *keys):
    for key in keys:
        if key not in cfg:
            raise SchemaError(f"missing required field at $[{key!r}]")
    return [cfg[key] for key in keys]


def _csv(rows, header) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, float):
        return jio.fmt17(v)
    if isinstance(v, Fraction):
        return format_frac(v)
    return str(v)


def _render(args, data, csv_rows=None, csv_header=None) -> str:
    if args.format == "csv":
        if csv_rows is None:
            csv_rows = [[k, _cell(v) if not isinstance(v, (list, tuple, dict)) else str(jio.jsonable(v))]
                        for k, v in sorted(data.items())]
            csv_header = ["key", "value"]
        return _csv(csv_rows, csv_header)
    return jio.dumps(data)


# ---------------------------------------------------------------------------
# polytope group


def cmd_support(args):
    cfg = _load(args, ('S', 'xi'))
    S_obj, xi = _need(cfg, "S", "xi")
    S = jio.parse_polytope(S_obj)
    value = polytope.support(S, [frac(v) for v in xi])
    return _render(args, {"value": value})


def cmd_contains(args):
    cfg = _load(args, ('S', 'x'))
    S_obj, x = _need(cfg, "S", "x")
    S = jio.parse_polytope(S_obj)
    inside, cert = polytope.contains(S, [frac(v) for v in x])
    data = {"inside": inside}
    if inside:
        data["weights"] = list(cert)
    else:
        data["separator"] = list(cert)
    return _render(args, data)


def _scaling(args, cfg) -> int:
    if getattr(args, "m", None) is not None:
        return args.m
    (m,) = _need(cfg, "m")
    return int(m)


def cmd_refine(args):
    cfg = _load(args, ('S', 'm'))
    (S_obj,) = _need(cfg, "S")
    S = jio.parse_polytope(S_obj)
    return _render(args, jio.emit_polytope(polytope.refine(S, _scaling(args, cfg))))


def cmd_exponents(args):
    cfg = _load(args, ('S', 'm'))
    (S_obj,) = _need(cfg, "S")
    S = jio.parse_polytope(S_obj)
    E = polytope.enumerate_exponents(S, _scaling(args, cfg))
    data = {"m": E.m, "count": len(E), "points": [list(p) for p in E.points]}
    rows = [[str(c) for c in p] for p in E.points]
    header = [f"alpha_{j + 1}" for j in range(S.dim)]
    return _render(args, data, rows, header)


def cmd_distance(args):
    cfg = _load(args, ('P', 'm_max', 'norm'))
    (P_obj,) = _need(cfg, "P")
    P = jio.parse_polytope(P_obj)
    if "m_max" in cfg:
        growth = polytope.distance_growth(P, int(cfg["m_max"]))
        data = {"growth": [{"m": m, "d": d, "d_root": r} for m, d, r in growth]}
        rows = [[str(m), jio.fmt17(d), jio.fmt17(r)] for m, d, r in growth]
        return _render(args, data, rows, ["m", "d_m", "d_m_root"])
    norm = cfg.get("norm", "euclidean")
    dist, bound, check = polytope.lattice_distance(P, norm=norm)
    return _render(args, {"distance": dist, "bound": bound, "check": bool(check)})


def cmd_dual(args):
    cfg = _load(args, ('S',))
    (S_obj,) = _need(cfg, "S")
    S = jio.parse_polytope(S_obj)
    rep = polytope.dual_cone(S)
    data = {
        "generators": [list(g) for g in rep.generators],
        "dual_halfspaces": [list(h) for h in rep.dual_halfspaces],
        "dual_generators": (None if rep.dual_generators is None
                            else [list(d) for d in rep.dual_generators]),
    }
    return _render(args, data)


def cmd_section(args):
    cfg = _load(args, ('S', 'J'))
    S_obj, J = _need(cfg, "S", "J")
    S = jio.parse_polytope(S_obj)
    J0 = [int(j) - 1 for j in J]
    out = jio.emit_polytope(polytope.section(S, J0))
    out["J"] = list(J)
    return _render(args, out)


POLYTOPE_CMDS = {
    "support": cmd_support, "contains": cmd_contains, "refine": cmd_refine,
    "exponents": cmd_exponents, "distance": cmd_distance, "dual": cmd_dual,
    "section": cmd_section,
}


# ---------------------------------------------------------------------------
# lattice group


def cmd_independent(args):
    cfg = _load(args, ('S',))
    (S_obj,) = _need(cfg, "S")
    S = jio.parse_polytope(S_obj)
    alphas = lattice.independent_exponents(S)
    return _render(args, {"alphas": [list(a) for a in alphas]})


def cmd_separate(args):
    cfg = _load(args, ('S', 'z', 'w'))
    S_obj, z, w = _need(cfg, "S", "z", "w")
    S = jio.parse_polytope(S_obj)
    cert = lattice.separate_points(S, [jio.parse_complex(v) for v in z],
                                   [jio.parse_complex(v) for v in w],
                                   tol=args.tol)
    return _render(args, {"alpha": list(cert.alpha), "witness_kind": cert.witness_kind})


def cmd_fibers(args):
    cfg = _load(args, ('S',))
    (S_obj,) = _need(cfg, "S")
    S = jio.parse_polytope(S_obj)
    lm = lattice.fiber_structure(S)
    data = {
        "ell": lm.ell,
        "matrix_L": [list(row) for row in lm.matrix_L],
        "kernel_gens": [list(row) for row in lm.kernel_gens],
        "T_vertices": [list(t) for t in lm.T_vertices],
    }
    return _render(args, data)


def cmd_pullback(args):
    cfg = _load(args, ('alphas', 'outer_radius', 'inner_radius'))
    alphas, R, r = _need(cfg, "alphas", "outer_radius", "inner_radius")
    box = lattice.proper_box_pullback(alphas, float(R), float(r))
    return _render(args, {"box": [list(iv) for iv in box]})


LATTICE_CMDS = {
    "independent": cmd_independent, "separate": cmd_separate,
    "fibers": cmd_fibers, "pullback": cmd_pullback,
}


# ---------------------------------------------------------------------------
# vsk group


def _parse_grid_specs(specs):
    axes = []
    for spec in specs:
        parts = spec.split(":")
        if len(parts) != 3:
            raise SchemaError(f"grid spec {spec!r} is not MIN:MAX:STEPS")
        lo_s, hi_s, steps_s = parts
        steps = int(steps_s)
        if steps < 1:
            raise SchemaError(f"grid spec {spec!r} needs at least one step")
        try:
            lo, hi = frac(lo_s), frac(hi_s)
            if steps == 1:
                axes.append([lo])
            else:
                h = (hi - lo) / (steps - 1)
                axes.append([lo + k * h for k in range(steps)])
        except ValueError:
            lo, hi = float(lo_s), float(hi_s)
            if steps == 1:
                axes.append([lo])
            else:
                h = (hi - lo) / (steps - 1)
                axes.append([lo + k * h for k in range(steps)])
    return axes


def cmd_vsk_eval(args):
    cfg = _load(args, ('S', 'K', 'x'))
    S_obj, K_obj, x = _need(cfg, "S", "K", "x")
    S = jio.parse_polytope(S_obj)
    K = jio.parse_body(K_obj)
    v = extremal.eval_vsk(S, K, [jio._num_or_frac(c) for c in x])
    return _render(args, {"value": v.value, "maximizer_s": list(v.maximizer_s),
                          "active_a": list(v.active_a)})


def cmd_vsk_grid(args):
    cfg = _load(args, ('S', 'K'))
    S_obj, K_obj = _need(cfg, "S", "K")
    S = jio.parse_polytope(S_obj)
    K = jio.parse_body(K_obj)
    axes = _parse_grid_specs(args.grid)
    if len(axes) != S.dim:
        raise SchemaError(f"need {S.dim} --grid specs, got {len(axes)}")
    points = [[]]
    for axis in axes:
        points = [p + [v] for p in points for v in axis]
    rows = []
    records = []
    for x in points:
        v = extremal.eval_vsk(S, K, x)
        rows.append([_cell(c) for c in x] + [_cell(float(v.value))]
                    + [";".join(_cell(float(s)) for s in v.maximizer_s)])
        records.append({"x": [float(c) for c in x], "value": float(v.value),
                        "maximizer_s": [float(s) for s in v.maximizer_s]})
    header = [f"x_{j + 1}" for j in range(S.dim)] + ["value", "maximizer"]
    if args.format == "json":
        return jio.dumps({"grid": records})
    return _csv(rows, header)


def cmd_vsk_hull(args):
    cfg = _load(args, ('S', 'K', 'x'))
    S_obj, K_obj, x = _need(cfg, "S", "K", "x")
    S = jio.parse_polytope(S_obj)
    K = jio.parse_body(K_obj)
    cert = extremal.hull_membership(S, K, [jio._num_or_frac(c) for c in x])
    data = {"inside": cert.inside}
    if cert.inside:
        a, t = cert.decomposition
        data["decomposition"] = {"a": list(a), "t": list(t)}
    else:
        data["separator"] = list(cert.separator)
    return _render(args, data)


def cmd_vsk_siciak(args):
    cfg = _load(args, ('S', 'K', 'm', 'x'))
    S_obj, K_obj, m, x = _need(cfg, "S", "K", "m", "x")
    S = jio.parse_polytope(S_obj)
    K = jio.parse_body(K_obj)
    value = extremal.siciak_monomial(S, K, int(m), [float(c) for c in x])
    return _render(args, {"m": int(m), "value": value})


def cmd_vsk_axes(args):
    cfg = _load(args, ('S', 'K', 'J', 'xJ'))
    S_obj, K_obj, J, xJ = _need(cfg, "S", "K", "J", "xJ")
    S = jio.parse_polytope(S_obj)
    K = jio.parse_body(K_obj)
    J0 = [int(j) - 1 for j in J]
    v = extremal.vsk_on_axes(S, K, J0, [jio._num_or_frac(c) for c in xJ])
    return _render(args, {"value": v.value, "J": list(J)})


def cmd_vsk_sample(args):
    cfg = _load(args, ('S', 'K', 'depth', 'count'))
    S_obj, K_obj, depth, count = _need(cfg, "S", "K", "depth", "count")
    S = jio.parse_polytope(S_obj)
    K = jio.parse_body(K_obj)
    pts = extremal.hull_sampler(S, K, float(depth), int(count), seed=args.seed)
    rows = [[jio.fmt17(c) for c in p] for p in pts]
    header = [f"x_{j + 1}" for j in range(S.dim)]
    return _render(args, {"samples": [list(p) for p in pts]}, rows, header)


VSK_CMDS = {
    "eval": cmd_vsk_eval, "grid": cmd_vsk_grid, "hull": cmd_vsk_hull,
    "siciak": cmd_vsk_siciak, "axes": cmd_vsk_axes, "sample": cmd_vsk_sample,
}


# ---------------------------------------------------------------------------
# approx group


def cmd_approx_run(args):
    cfg = _load(args, ('S', 'K', 'series', 'N', 'N_values', 'depth', 'count'))
    S_obj, K_obj, series_obj = _need(cfg, "S", "K", "series")
    S = jio.parse_polytope(S_obj)
    K = jio.parse_body(K_obj)
    f = jio.parse_series(S, series_obj)
    depth = float(cfg.get("depth", 5.0))
    count = int(cfg.get("count", 40))
    N = int(cfg.get("N", 10))
    N_values = [int(v) for v in cfg.get("N_values", [N])]
    reports = [series.hull_vs_K_gap(f, n, S, K, depth, count, seed=args.seed)
               for n in N_values]
    main_report = next((r for r in reports if r.N == N), reports[-1])
    if args.format == "csv":
        rows = [[str(r.N), jio.fmt17(r.sup_err_K), jio.fmt17(r.sup_err_hull)]
                for r in reports]
        return _csv(rows, ["N", "sup_err_K", "sup_err_hull"])
    return jio.dumps({"report": {
        "N": main_report.N, "m_N": main_report.m_N,
        "sup_err_K": main_report.sup_err_K,
        "sup_err_hull": main_report.sup_err_hull,
        "sup_f_K": main_report.sup_f_K, "sup_f_hull": main_report.sup_f_hull,
        "norm_equal_ok": main_report.norm_equal_ok,
    }})


def cmd_approx_escape(args):
    cfg = _load(args, ('S', 'beta', 'A'))
    S_obj, beta = _need(cfg, "S", "beta")
    S = jio.parse_polytope(S_obj)
    A = cfg.get("A")
    if A is not None:
        A = [tuple(frac(c) for c in a) for a in A]
    xi, table = series.escape_witness(S, beta, A=A)
    data = {"xi": list(xi),
            "growth": [{"t": t, "modulus": v} for t, v in table]}
    rows = [[str(t), jio.fmt17(v)] for t, v in table]
    return _render(args, data, rows, ["t", "modulus"])


def cmd_approx_domain(args):
    cfg = _load(args, ('S', 'D', 'queries'))
    S_obj, D = _need(cfg, "S", "D")
    S = jio.parse_polytope(S_obj)
    h = series.convergence_hull(S, [tuple(frac(c) for c in d) for d in D])
    data = {"halfspaces": [{"xi": list(xi), "rhs": rhs} for xi, rhs in h.halfspaces],
            "complete": h.complete}
    if "queries" in cfg:
        data["members"] = [h.member([frac(c) for c in q]).inside
                           for q in cfg["queries"]]
    return _render(args, data)


APPROX_CMDS = {"run": cmd_approx_run, "escape": cmd_approx_escape,
               "domain": cmd_approx_domain}


if __name__ == "__main__":
    sys.exit(main())
