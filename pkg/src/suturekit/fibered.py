"""Per-knot reports: Alexander polynomial, traceless representations, and verdicts.

Verdict rules
  nontrivial  yes if some irreducible class was found; "unknot-consistent" if
              none was found, Delta = 1 and the genus bound is 0; else unknown.
  fibered     yes if the enumeration is certified, there is exactly one
              irreducible class, it is nondegenerate, the genus g is certified
              and Delta is monic of degree g.
              no if the genus is certified and Delta is not monic of degree g
              (the classical obstruction).
              unknown otherwise.
"""

from __future__ import annotations

import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .alexander import alexander_fox, coefficient_mass, degree, is_monic_of_degree
from .diagram import KnotDiagram, seifert_genus_upper, wirtinger
from .laurent import ONE, LaurentPolynomial
from .oracles import two_bridge_rep_count
from .repvar import CERTIFIED, Enumeration, SolverConfig, critical_point_model, solve_repvar
from .table import TableEntry

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class KnotReport:
    knot_id: str
    crossings: int
    genus: int
    genus_certified: bool
    genus_source: str
    alexander: LaurentPolynomial
    monic_deg_g: bool
    n_irreducible: int
    enumeration_status: str
    all_nondegenerate: bool
    khi_dim_upper: int
    verdicts: dict
    consistency: list[Check]
    conventions: list[str] = field(default_factory=list)
    oracle_count: int | None = None
    enumeration: Enumeration | None = None

    @property
    def consistency_failures(self) -> list[Check]:
        return [c for c in self.consistency if c.status == FAIL]

    def to_json(self) -> dict:
        return {
            "knot_id": self.knot_id,
            "crossings": self.crossings,
            "genus": self.genus,
            "genus_certified": self.genus_certified,
            "genus_source": self.genus_source,
            "alexander": self.alexander.to_json(),
            "alexander_pretty": self.alexander.pretty(),
            "monic_deg_g": self.monic_deg_g,
            "n_irreducible": self.n_irreducible,
            "enumeration_status": self.enumeration_status,
            "all_nondegenerate": self.all_nondegenerate,
            "nondegeneracy_model": "Morse-Bott-model nondegenerate (Jacobian kernel = orbit dimension)",
            "khi_dim_upper": self.khi_dim_upper,
            "oracle_count": self.oracle_count,
            "verdicts": dict(self.verdicts),
            "conventions": list(self.conventions),
            "consistency": [c.to_json() for c in self.consistency],
        }


def oracle_count(two_bridge) -> int | None:
    if two_bridge is None:
        return None
    p, q = two_bridge
    if p == 1:
        return 0
    return two_bridge_rep_count(p, q)


def classify(
    d: KnotDiagram,
    cfg: SolverConfig | None = None,
    genus: int | None = None,
    two_bridge: tuple[int, int] | None = None,
    knot_id: str = "",
) -> KnotReport:
    """Run diagram -> Alexander -> representations and apply the verdict rules.

    ``genus`` is trusted as certified metadata; ``two_bridge`` = (p, q) enables
    the one-angle oracle, which certifies the enumeration when the counts agree.
    """
    cfg = cfg or SolverConfig()
    pres = wirtinger(d)
    delta = alexander_fox(pres)
    at_one = delta.at_one() == 1
    bound = seifert_genus_upper(d).genus_upper
    checks: list[Check] = []

    if genus is not None:
        g, certified, source = genus, True, "table"
    elif degree(delta) == bound:
        g, certified, source = bound, True, "alexander-degree"
    else:
        g, certified, source = bound, False, "seifert-bound"

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        en = solve_repvar(pres, cfg)
    oracle = oracle_count(two_bridge)
    if oracle is not None:
        agree = en.certify(oracle)
        checks.append(
            Check("oracle_agreement", PASS if agree else FAIL, f"solver {en.n_irreducible}, oracle {oracle}")
        )
    n = en.n_irreducible
    model = critical_point_model(en)
    irr = [c for c in en.classes if c.irreducible]
    all_nondeg = all(c.nondegenerate for c in irr)
    monic = is_monic_of_degree(delta, g)
    mass = coefficient_mass(delta)

    checks.append(Check("alexander_at_one", PASS if at_one else FAIL, f"Delta(1) = {delta.at_one()}"))
    checks.append(
        Check(
            "alexander_degree_vs_genus",
            PASS if degree(delta) <= g else FAIL,
            f"deg Delta = {degree(delta)}, genus {'=' if certified else '<='} {g}",
        )
    )
    if en.status == CERTIFIED:
        checks.append(
            Check(
                "mass_bound",
                PASS if mass <= model.khi_dim_upper else FAIL,
                f"coefficient mass {mass} vs 2n+1 = {model.khi_dim_upper}",
            )
        )
    else:
        checks.append(Check("mass_bound", SKIP, "enumeration not certified"))
    if n == 0 and delta != ONE:
        checks.append(
            Check("irreducible_exists", FAIL, "no irreducible class but Delta != 1: solver incompleteness or inconsistency")
        )
    else:
        checks.append(Check("irreducible_exists", PASS, ""))
    bad_res = [c.residual_norm for c in en.classes if c.residual_norm > cfg.tol]
    checks.append(Check("residuals", FAIL if bad_res else PASS, f"{len(bad_res)} classes above tolerance"))

    conventions = []
    if n >= 1:
        nontrivial = "yes"
    elif delta == ONE and bound == 0:
        nontrivial = "unknot-consistent"
    else:
        nontrivial = "unknown"

    if en.status == CERTIFIED and n == 1 and all_nondeg and certified and g >= 1 and monic:
        fibered = "yes"
    elif certified and not monic:
        fibered = "no"
    else:
        fibered = "unknown"
    if nontrivial == "unknot-consistent" and en.status == CERTIFIED:
        conventions.append("unknot: trivially fibered by convention")

    return KnotReport(
        knot_id=knot_id,
        crossings=d.n_crossings,
        genus=g,
        genus_certified=certified,
        genus_source=source,
        alexander=delta,
        monic_deg_g=monic,
        n_irreducible=n,
        enumeration_status=en.status,
        all_nondegenerate=all_nondeg,
        khi_dim_upper=model.khi_dim_upper,
        verdicts={"nontrivial": nontrivial, "fibered": fibered},
        consistency=checks,
        conventions=conventions,
        oracle_count=oracle,
        enumeration=en,
    )


def classify_entry(e: TableEntry, cfg: SolverConfig | None = None) -> KnotReport:
    return classify(e.diagram(), cfg, genus=e.genus, two_bridge=e.two_bridge, knot_id=e.id)


@dataclass
class SweepResult:
    reports: list[KnotReport]
    errors: list[dict]
    elapsed: float = 0.0

    @property
    def consistency_failures(self) -> int:
        return sum(len(r.consistency_failures) for r in self.reports)

    def summary(self, timing: bool = False) -> dict:
        verdicts: dict[str, dict[str, int]] = {"nontrivial": {}, "fibered": {}}
        for r in self.reports:
            for k, v in r.verdicts.items():
                verdicts[k][v] = verdicts[k].get(v, 0) + 1
        out = {
            "n_reports": len(self.reports),
            "n_errors": len(self.errors),
            "consistency_failures": self.consistency_failures,
            "verdicts": {k: dict(sorted(v.items())) for k, v in verdicts.items()},
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


def _sweep_one(args):
    e, cfg = args
    try:
        return classify_entry(e, cfg), None
    except Exception as exc:  # per-knot isolation: any failure becomes an error record
        return None, {"knot_id": e.id, "line": e.line, "error": f"{type(exc).__name__}: {exc}"}


def table_sweep(table, cfg: SolverConfig | None = None, workers: int = 1, errors=()) -> SweepResult:
    """Classify every entry; failures are collected, never raised.

    ``table`` holds TableEntry rows or (id, KnotDiagram) pairs.  ``errors`` are
    pre-existing row errors from ingestion, passed through into the result.
    """
    cfg = cfg or SolverConfig()
    entries = []
    for item in table:
        if isinstance(item, TableEntry):
            entries.append(item)
        else:
            kid, d = item
            entries.append(_DiagramEntry(kid, d))
    entries.sort(key=lambda e: e.id)
    t0 = time.perf_counter()
    jobs = [(e, cfg) for e in entries]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    reports = [r for r, _ in results if r is not None]
    errs = [{"error": str(m)} if isinstance(m, str) else dict(m) for m in errors]
    errs += [err for _, err in results if err is not None]
    return SweepResult(reports, errs, time.perf_counter() - t0)


@dataclass(frozen=True)
class _DiagramEntry:
    id: str
    d: KnotDiagram
    genus: int | None = None
    two_bridge: tuple[int, int] | None = None
    line: int | None = None

    def diagram(self) -> KnotDiagram:
        return self.d
