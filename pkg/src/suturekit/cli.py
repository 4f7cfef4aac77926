"""Command-line front end: ``suturekit <subcommand> ...``.

Exit codes: 0 success, 1 consistency failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import SCHEMA, eigen, sutured
from .alexander import alexander_fox, coefficient_mass
from .diagram import DiagramError, KnotDiagram, parse_braid, parse_pd, seifert_genus_upper, wirtinger
from .fibered import classify, oracle_count, table_sweep
from .repvar import SolverConfig, critical_point_model, solve_repvar
from .table import TableEntry, TableError, builtin_table, lookup, read_table


class UsageError(Exception):
    pass


def _emit(obj: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=True) + "\n")


def _add_knot_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("knot input (exactly one)")
    g.add_argument("--pd", help="PD code, e.g. 'X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]'")
    g.add_argument("--braid", help="braid word, e.g. 's1 s2^-1 s1 s2^-1'")
    g.add_argument("--knot", help="id in the built-in table, e.g. 3_1")
    g.add_argument("--file", help="JSON diagram ({'crossings': ...}) or a text file holding a PD code")


def _add_output(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    g.add_argument("--pretty", dest="fmt", action="store_const", const="pretty", help="human-readable output")
    p.set_defaults(fmt="json")


def _add_solver(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("solver")
    g.add_argument("--seeds", type=int, default=None, help="multistart count (default scales with generators)")
    g.add_argument("--tol", type=float, default=1e-10)
    g.add_argument("--cluster-radius", type=float, default=1e-6)
    g.add_argument("--rng-seed", type=int, default=0)
    g.add_argument("--max-iters", type=int, default=200)
    g.add_argument("--backend", choices=["auto", "cython", "numpy"], default=None)


def _solver_config(a) -> SolverConfig:
    if a.seeds is not None and a.seeds < 1:
        raise UsageError("--seeds must be positive")
    return SolverConfig(
        seeds=a.seeds,
        tol=a.tol,
        cluster_radius=a.cluster_radius,
        max_iters=a.max_iters,
        rng_seed=a.rng_seed,
        backend=None if a.backend in (None, "auto") else a.backend,
    )


def _knot_input(a) -> tuple[str, KnotDiagram, TableEntry | None]:
    chosen = [k for k in ("pd", "braid", "knot", "file") if getattr(a, k) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --pd, --braid, --knot, --file")
    kind = chosen[0]
    val = getattr(a, kind)
    if kind == "pd":
        return "pd", parse_pd(val), None
    if kind == "braid":
        return "braid", parse_braid(val), None
    if kind == "knot":
        try:
            e = lookup(val)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return e.id, e.diagram(), e
    text = _read(val)
    if text.lstrip().startswith("{"):
        return Path(val).name, KnotDiagram.from_json(json.loads(text)), None
    return Path(val).name, parse_pd(text.strip()), None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_parse(a, out) -> int:
    name, d, _ = _knot_input(a)
    pres = wirtinger(d)
    est = seifert_genus_upper(d)
    if a.fmt == "pretty":
        out.write(f"{name}: {d.n_crossings} crossings, writhe {d.writhe}\n")
        out.write(f"PD {d.pd_string() or '(crossingless unknot)'}\n")
        out.write(f"Wirtinger generators {pres.n_generators}, Seifert circles {est.seifert_circles}, "
                  f"genus <= {est.genus_upper}\n")
        return 0
    _emit(
        {
            "command": "parse",
            "input": name,
            "diagram": d.to_json(),
            "pd": d.pd_string(),
            "writhe": d.writhe,
            "presentation": pres.to_json(),
            "genus_estimate": est.to_json(),
        },
        out,
    )
    return 0


def cmd_alexander(a, out) -> int:
    name, d, _ = _knot_input(a)
    delta = alexander_fox(wirtinger(d))
    if a.fmt == "pretty":
        out.write(delta.pretty() + "\n")
        return 0
    _emit(
        {
            "command": "alexander",
            "input": name,
            "alexander": delta.to_json(),
            "pretty": delta.pretty(),
            "coefficient_mass": coefficient_mass(delta),
        },
        out,
    )
    return 0


def cmd_repvar(a, out) -> int:
    name, d, entry = _knot_input(a)
    cfg = _solver_config(a)
    en = solve_repvar(wirtinger(d), cfg)
    oracle = None
    if entry is not None and entry.two_bridge is not None and not a.no_oracle:
        oracle = oracle_count(entry.two_bridge)
        en.certify(oracle)
    model = critical_point_model(en)
    if a.fmt == "pretty":
        out.write(f"{name}: {en.n_irreducible} irreducible class(es), status {en.status}\n")
        for k, c in enumerate(en.classes):
            kind = "irreducible" if c.irreducible else "reducible"
            out.write(f"  [{k}] {kind}, residual {c.residual_norm:.2e}, nondegenerate {c.nondegenerate}\n")
        out.write(f"  critical points: {model.points} points, {model.circles} circles; "
                  f"dim KHI <= {model.khi_dim_upper}\n")
        for w in en.warnings:
            out.write(f"  warning: {w}\n")
        return 0
    _emit(
        {
            "command": "repvar",
            "input": name,
            "config": cfg.to_json(),
            "oracle_count": oracle,
            **en.to_json(),
            "critical_point_model": model.to_json(),
            "khi_dim_upper": model.khi_dim_upper,
        },
        out,
    )
    return 0


def cmd_fibered(a, out) -> int:
    name, d, entry = _knot_input(a)
    cfg = _solver_config(a)
    if entry is not None:
        rep = classify(d, cfg, genus=entry.genus, two_bridge=entry.two_bridge, knot_id=entry.id)
    else:
        rep = classify(d, cfg, genus=a.genus, knot_id=name)
    if a.fmt == "pretty":
        out.write(f"{rep.knot_id}: Delta = {rep.alexander.pretty()}, genus {rep.genus}"
                  f"{'' if rep.genus_certified else ' (upper bound)'}\n")
        out.write(f"  irreducible classes {rep.n_irreducible} ({rep.enumeration_status}), "
                  f"dim KHI <= {rep.khi_dim_upper}\n")
        out.write(f"  nontrivial: {rep.verdicts['nontrivial']}, fibered: {rep.verdicts['fibered']}\n")
        for c in rep.consistency:
            out.write(f"  check {c.name}: {c.status} {c.detail}\n")
    else:
        _emit({"command": "fibered", "report": rep.to_json()}, out)
    return 1 if rep.consistency_failures else 0


def _record_input(a) -> sutured.SuturedRecord:
    if (a.sutured is None) == (a.file is None):
        raise UsageError("give exactly one of --sutured, --file")
    if a.sutured is not None:
        return sutured.named_record(a.sutured)
    return sutured.SuturedRecord.from_json(json.loads(_read(a.file)))


def cmd_closure(a, out) -> int:
    rec = _record_input(a)
    cl = sutured.closure(rec, a.aux_genus, nonseparating_curve=a.nonseparating_curve)
    if a.fmt == "pretty":
        out.write(f"{rec.labels}: closure with T of genus {cl.aux_genus} and {cl.aux_boundary} boundary circles\n")
        out.write(f"  chi(R_bar) = {cl.chi_R_bar}, genus(R_bar) = {cl.genus_R_bar}, "
                  f"C1 {cl.c1_ok}, C2 {cl.c2_ok} ({cl.c2_status})\n")
        return 0
    _emit({"command": "closure", "sutured": rec.to_json(), "closure": cl.to_json()}, out)
    return 0


def _parse_flag(text: str):
    key, eq, val = text.partition("=")
    if not eq:
        return key, True
    low = val.lower()
    if low in ("true", "yes", "1"):
        return key, True
    if low in ("false", "no", "0"):
        return key, False
    return key, val


def cmd_decompose(a, out) -> int:
    rec = _record_input(a)
    flags = dict(_parse_flag(f) for f in a.flag or [])
    if a.feet is not None:
        flags["feet"] = list(a.feet)
    step = sutured.DecompositionStep(a.kind, rec, flags, a.surface_chi)
    pieces = sutured.decompose(step)
    if a.fmt == "pretty":
        out.write(f"{a.kind} decomposition of {rec.labels}\n")
        for k, p in enumerate(pieces):
            out.write(f"  [{k}] components {list(p.boundary_components)}, "
                      f"chi(R+) = {p.chi_R_plus}, chi(R-) = {p.chi_R_minus}\n")
        return 0
    _emit(
        {
            "command": "decompose",
            "step": step.to_json(),
            "outputs": [p.to_json() for p in pieces],
            "balanced": [sutured.check_balanced(p)[0] for p in pieces],
        },
        out,
    )
    return 0


def _parse_pairs(text: str) -> list[tuple[complex, complex]]:
    out = []
    for chunk in text.split(";"):
        if chunk.strip():
            a, b = chunk.split(",")
            out.append((complex(a.strip().replace("i", "j")), complex(b.strip().replace("i", "j"))))
    return out


def cmd_eigen(a, out) -> int:
    if (a.model is None) == (a.file is None):
        raise UsageError("give exactly one of --model G, --file")
    if a.model is not None:
        fam = eigen.build_model(
            a.model, a.top_dim, _parse_pairs(a.jordan_at) if a.jordan_at else None, a.rng_seed
        )
    else:
        fam = eigen.OperatorFamily.from_json(json.loads(_read(a.file)))
    g = a.genus if a.genus is not None else fam.genus_tags.get(0)
    dec = eigen.decompose(fam, a.tol, geometric_model=True if a.geometric_model else None)
    result = {"command": "eigen", "dim": fam.dim, "decomposition": dec.to_json()}
    if g is not None:
        ok, bad = eigen.spectrum_subset_check(fam, g, a.tol)
        result["genus"] = g
        result["spectrum_subset"] = {"ok": ok, "violations": [[[z.real, z.imag] for z in p] for p in bad]}
        try:
            dim, _ = eigen.top_eigenspace(fam, g, a.tol)
            result["top_eigenspace_dim"] = dim
        except eigen.EigenError as exc:
            result["top_eigenspace_error"] = str(exc)
    if a.fmt == "pretty":
        for b in dec.blocks:
            vals = ", ".join(f"{z:.6g}" for z in b.eigenvalues)
            out.write(f"({vals})  dim {b.dimension}  snap {b.snap_distance:.1e}\n")
        if "spectrum_subset" in result:
            out.write(f"spectrum subset of genus-{g} product: {result['spectrum_subset']['ok']}\n")
            out.write(f"top eigenspace: {result.get('top_eigenspace_dim', result.get('top_eigenspace_error'))}\n")
        return 0
    _emit(result, out)
    return 0


def cmd_sweep(a, out) -> int:
    cfg = _solver_config(a)
    if a.file is not None:
        try:
            entries, errors = read_table(a.file)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read table {a.file}: {exc}") from None
    else:
        entries, errors = builtin_table(), []
    res = table_sweep(entries, cfg, workers=a.workers, errors=errors)
    summary = res.summary(timing=a.timing)
    if a.fmt == "pretty":
        for r in res.reports:
            out.write(f"{r.knot_id:>6}  {r.alexander.pretty():<40} n={r.n_irreducible:<3} "
                      f"{r.enumeration_status:<10} nontrivial={r.verdicts['nontrivial']:<18} "
                      f"fibered={r.verdicts['fibered']}\n")
        for e in res.errors:
            out.write(f"error: {e}\n")
        out.write(json.dumps(summary, sort_keys=True) + "\n")
    else:
        for r in res.reports:
            out.write(json.dumps({"schema": SCHEMA, "report": r.to_json()}, sort_keys=True) + "\n")
        for e in res.errors:
            out.write(json.dumps({"schema": SCHEMA, "error": e}, sort_keys=True) + "\n")
        out.write(json.dumps({"schema": SCHEMA, "summary": summary}, sort_keys=True) + "\n")
    if not a.timing:
        sys.stderr.write(f"sweep: {len(res.reports)} knots in {res.elapsed:.2f}s\n")
    return 1 if res.consistency_failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="suturekit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a diagram, report Wirtinger and Seifert data")
    _add_knot_input(p)
    _add_output(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("alexander", help="symmetrized Alexander polynomial")
    _add_knot_input(p)
    _add_output(p)
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("repvar", help="traceless SU(2) representations with pinned meridian")
    _add_knot_input(p)
    _add_solver(p)
    p.add_argument("--no-oracle", action="store_true", help="do not certify with the two-bridge oracle")
    _add_output(p)
    p.set_defaults(func=cmd_repvar)

    p = sub.add_parser("fibered", help="full report with nontriviality and fiberedness verdicts")
    _add_knot_input(p)
    _add_solver(p)
    p.add_argument("--genus", type=int, default=None, help="certified genus for a non-table diagram")
    _add_output(p)
    p.set_defaults(func=cmd_fibered)

    for name, func, hlp in (
        ("closure", cmd_closure, "closure genus arithmetic for a balanced sutured manifold"),
        ("decompose", cmd_decompose, "sutured decomposition bookkeeping"),
    ):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--sutured", help="knot-complement | product:G,B | seifert:G")
        p.add_argument("--file", help="sutured record JSON")
        if name == "closure":
            p.add_argument("--aux-genus", type=int, required=True)
            p.add_argument("--nonseparating-curve", action="store_true",
                           help="assert a non-separating curve for condition C2")
        else:
            p.add_argument("--kind", choices=sutured.KINDS, required=True)
            p.add_argument("--surface-chi", type=int, default=None)
            p.add_argument("--flag", action="append", help="caller-asserted condition KEY[=VALUE]")
            p.add_argument("--feet", type=int, nargs=2, default=None, help="product handle feet components")
        _add_output(p)
        p.set_defaults(func=func)

    p = sub.add_parser("eigen", help="simultaneous generalized eigenspaces of commuting operators")
    p.add_argument("--file", help="operator family JSON")
    p.add_argument("--model", type=int, default=None, help="build the genus-G product model")
    p.add_argument("--top-dim", type=int, default=1)
    p.add_argument("--jordan-at", default=None, help="pairs 'a,b;c,d' receiving 2x2 Jordan blocks")
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--geometric-model", action="store_true", help="snap eigenvalues to 2Z[i]")
    _add_output(p)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("sweep", help="report on every knot of a table (JSON lines)")
    p.add_argument("--file", help="JSON or CSV table (default: built-in)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsed time in the summary")
    _add_solver(p)
    _add_output(p)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.func(a, out)
    except UsageError as exc:
        sys.stderr.write(f"suturekit {a.command}: {exc}\n")
        return 2
    except (DiagramError, TableError, sutured.SuturedError, eigen.EigenError, ValueError) as exc:
        sys.stderr.write(f"suturekit {a.command}: {type(exc).__name__}: {exc}\n")
        return 2
