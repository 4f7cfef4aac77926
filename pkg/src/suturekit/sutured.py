"""Balanced sutured manifolds as boundary data, closures, and decomposition bookkeeping.

A record keeps only what the constructions here need: for each boundary
component its genus and the number of sutures on it, and the Euler
characteristics of R+ and R-.  Homological side conditions are supplied by the
caller as flags and carried along as provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SuturedError(ValueError):
    pass


@dataclass(frozen=True)
class SuturedRecord:
    boundary_components: tuple[tuple[int, int], ...]
    chi_R_plus: int
    chi_R_minus: int
    labels: str = ""

    def __post_init__(self):
        comps = tuple((int(g), int(n)) for g, n in self.boundary_components)
        object.__setattr__(self, "boundary_components", comps)
        for g, n in comps:
            if g < 0 or n < 0:
                raise SuturedError(f"negative genus or suture count in component {(g, n)}")

    @property
    def n_sutures(self) -> int:
        return sum(n for _, n in self.boundary_components)

    @property
    def boundary_chi(self) -> int:
        return sum(2 - 2 * g for g, _ in self.boundary_components)

    def to_json(self) -> dict:
        return {
            "boundary_components": [list(c) for c in self.boundary_components],
            "chi_R_plus": self.chi_R_plus,
            "chi_R_minus": self.chi_R_minus,
            "n_sutures": self.n_sutures,
            "labels": self.labels,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SuturedRecord":
        rec = cls(
            tuple(tuple(c) for c in data["boundary_components"]),
            int(data["chi_R_plus"]),
            int(data["chi_R_minus"]),
            data.get("labels", ""),
        )
        if "n_sutures" in data and int(data["n_sutures"]) != rec.n_sutures:
            raise SuturedError(
                f"n_sutures {data['n_sutures']} disagrees with the components' total {rec.n_sutures}"
            )
        return rec


@dataclass(frozen=True)
class ClosureRecord:
    aux_genus: int
    aux_boundary: int
    chi_R_bar: int
    genus_R_bar: int
    c1_ok: bool
    c2_ok: bool
    c2_status: str  # "aux-genus" | "asserted" | "unverified"
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "aux_genus": self.aux_genus,
            "aux_boundary": self.aux_boundary,
            "chi_R_bar": self.chi_R_bar,
            "genus_R_bar": self.genus_R_bar,
            "c1_ok": self.c1_ok,
            "c2_ok": self.c2_ok,
            "c2_status": self.c2_status,
            "notes": list(self.notes),
        }


KINDS = ("horizontal", "product_annulus", "seifert_cut", "product_handle")


@dataclass(frozen=True)
class DecompositionStep:
    """One cut.  ``flags`` holds caller-asserted side conditions.

    horizontal: ``surface_chi`` is chi(S).
    product_annulus: flags ``d_plus_nonzero`` and ``d_minus_nonzero`` must hold.
    seifert_cut: ``surface_chi`` is chi of the Seifert surface, 1 - 2g.
    product_handle: adds a product 1-handle; flags ``feet`` = [i, j] (component
    indices) and ``same_suture`` when both feet sit on one suture.
    """

    kind: str
    inputs: SuturedRecord
    flags: dict = field(default_factory=dict)
    surface_chi: int | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": self.inputs.to_json(),
            "flags": dict(self.flags),
            "surface_chi": self.surface_chi,
        }


def check_balanced(s: SuturedRecord) -> tuple[bool, list[str]]:
    reasons = []
    if s.chi_R_plus != s.chi_R_minus:
        reasons.append(f"chi(R+) = {s.chi_R_plus} differs from chi(R-) = {s.chi_R_minus}")
    if not s.boundary_components:
        reasons.append("empty boundary")
    bare = [k for k, (_, n) in enumerate(s.boundary_components) if n == 0]
    if bare:
        reasons.append(f"boundary component without suture: {bare}")
        reasons.append("closed R-region (a suture-free component lies entirely in R+ or R-)")
    if s.chi_R_plus + s.chi_R_minus != s.boundary_chi:
        reasons.append(
            f"chi(R+) + chi(R-) = {s.chi_R_plus + s.chi_R_minus} but the boundary has chi {s.boundary_chi}"
        )
    if (s.chi_R_plus - s.n_sutures) % 2:
        reasons.append("chi(R+) and the number of sutures have different parity")
    return not reasons, reasons


def _require_balanced(s: SuturedRecord, what: str = "input") -> None:
    ok, reasons = check_balanced(s)
    if not ok:
        raise SuturedError(f"{what} is not balanced: " + "; ".join(reasons))


def product_sutured(genus: int, boundary_circles: int) -> SuturedRecord:
    """[-1, 1] x T for T of the given genus with ``boundary_circles`` boundary circles."""
    if boundary_circles < 1:
        raise SuturedError("a product sutured manifold needs T with at least one boundary circle")
    if genus < 0:
        raise SuturedError("genus must be non-negative")
    chi = 2 - 2 * genus - boundary_circles
    # the boundary is the double of T
    return SuturedRecord(
        ((2 * genus + boundary_circles - 1, boundary_circles),),
        chi,
        chi,
        f"product [-1,1] x T(genus={genus}, boundary={boundary_circles})",
    )


def knot_complement_sutured() -> SuturedRecord:
    """Knot exterior with two oppositely oriented meridional sutures; R+ and R- are annuli."""
    return SuturedRecord(((1, 2),), 0, 0, "knot complement, two meridional sutures")


def seifert_cut(g: int) -> SuturedRecord:
    """Knot exterior cut along a genus-g Seifert surface: R+ and R- are copies of it."""
    if g < 1:
        raise SuturedError("seifert_cut needs a Seifert surface of genus at least 1")
    return SuturedRecord(((2 * g, 1),), 1 - 2 * g, 1 - 2 * g, f"cut along a genus-{g} Seifert surface")


def closure(s: SuturedRecord, aux_genus: int, nonseparating_curve: bool = False) -> ClosureRecord:
    """Glue [-1,1] x T along the sutures, T connected of genus ``aux_genus``."""
    _require_balanced(s)
    if aux_genus < 0:
        raise SuturedError("aux_genus must be non-negative")
    aux_boundary = s.n_sutures
    chi_t = 2 - 2 * aux_genus - aux_boundary
    chi_bar = s.chi_R_plus + chi_t
    if chi_bar % 2:
        raise SuturedError(f"closed surface with odd Euler characteristic {chi_bar}")
    genus_bar = 1 - chi_bar // 2
    notes = []
    if aux_genus >= 1:
        c2_ok, c2_status = True, "aux-genus"
    elif genus_bar >= 1 and nonseparating_curve:
        c2_ok, c2_status = True, "asserted"
    else:
        c2_ok, c2_status = False, "unverified"
        notes.append("aux_genus 0: condition C2 depends on the gluing and is not decided")
    if aux_genus >= 2 and s.chi_R_plus <= 0:
        notes.append("aux_genus >= 2 forces genus_R_bar >= 2 on any balanced input with chi(R+) <= 0")
    if genus_bar == 1:
        notes.append("genus_R_bar = 1: only admissible for the local-coefficient variant")
    return ClosureRecord(
        aux_genus=aux_genus,
        aux_boundary=aux_boundary,
        chi_R_bar=chi_bar,
        genus_R_bar=genus_bar,
        c1_ok=genus_bar >= 2,
        c2_ok=c2_ok,
        c2_status=c2_status,
        notes=tuple(notes),
    )


def _horizontal(step: DecompositionStep) -> list[SuturedRecord]:
    s = step.inputs
    if step.surface_chi is None:
        raise SuturedError("horizontal cut needs surface_chi")
    if step.surface_chi != s.chi_R_plus:
        raise SuturedError(
            f"horizontal surface has chi {step.surface_chi}, but chi(R+) = {s.chi_R_plus}"
        )
    chi = step.surface_chi
    top = SuturedRecord(s.boundary_components, s.chi_R_plus, chi, f"{s.labels} | above S")
    bottom = SuturedRecord(s.boundary_components, chi, s.chi_R_minus, f"{s.labels} | below S")
    return [top, bottom]


def _product_annulus(step: DecompositionStep) -> list[SuturedRecord]:
    s = step.inputs
    missing = [k for k in ("d_plus_nonzero", "d_minus_nonzero") if not step.flags.get(k)]
    if missing:
        raise SuturedError(f"product annulus needs caller-asserted flags: {missing}")
    if step.flags.get("separating"):
        raise SuturedError("separating product annuli are not modelled")
    comp = int(step.flags.get("component", 0))
    if not 0 <= comp < len(s.boundary_components):
        raise SuturedError(f"no boundary component {comp}")
    # the annulus has chi 0; each side of the cut contributes one new suture
    comps = list(s.boundary_components)
    g, n = comps[comp]
    comps[comp] = (g, n + 2)
    return [SuturedRecord(tuple(comps), s.chi_R_plus, s.chi_R_minus, f"{s.labels} | cut along product annulus")]


def _seifert_cut(step: DecompositionStep) -> list[SuturedRecord]:
    s = step.inputs
    if s.boundary_components != ((1, 2),) or s.chi_R_plus != 0:
        raise SuturedError("seifert_cut applies to the knot-complement record")
    if step.surface_chi is None or step.surface_chi % 2 == 0 or step.surface_chi > -1:
        raise SuturedError("Seifert surface must have chi = 1 - 2g with g >= 1")
    return [seifert_cut((1 - step.surface_chi) // 2)]


def _product_handle(step: DecompositionStep) -> list[SuturedRecord]:
    s = step.inputs
    feet = step.flags.get("feet")
    if feet is None or len(feet) != 2:
        raise SuturedError("product handle needs flags['feet'] = [i, j]")
    i, j = (int(x) for x in feet)
    comps = list(s.boundary_components)
    if not (0 <= i < len(comps) and 0 <= j < len(comps)):
        raise SuturedError(f"feet {feet} out of range")
    if i == j:
        g, n = comps[i]
        if step.flags.get("same_suture"):
            comps[i] = (g + 1, n + 1)
        else:
            if n < 2:
                raise SuturedError("feet on different sutures need two sutures on the component")
            comps[i] = (g + 1, n - 1)
    else:
        if step.flags.get("same_suture"):
            raise SuturedError("feet on different components cannot share a suture")
        (g1, n1), (g2, n2) = comps[i], comps[j]
        merged = (g1 + g2, n1 + n2 - 1)
        comps = [c for k, c in enumerate(comps) if k not in (i, j)]
        comps.insert(min(i, j), merged)
    return [
        SuturedRecord(tuple(comps), s.chi_R_plus - 1, s.chi_R_minus - 1, f"{s.labels} | product 1-handle")
    ]


_DISPATCH = {
    "horizontal": _horizontal,
    "product_annulus": _product_annulus,
    "seifert_cut": _seifert_cut,
    "product_handle": _product_handle,
}


def decompose(step: DecompositionStep) -> list[SuturedRecord]:
    if step.kind not in _DISPATCH:
        raise SuturedError(f"unknown decomposition kind {step.kind!r}; expected one of {KINDS}")
    _require_balanced(step.inputs)
    out = _DISPATCH[step.kind](step)
    for k, rec in enumerate(out):
        ok, reasons = check_balanced(rec)
        if not ok:
            raise SuturedError(f"output {k} is not balanced (inconsistent flags?): " + "; ".join(reasons))
    return out


def named_record(name: str) -> SuturedRecord:
    """Build a record from a short name: ``knot-complement``, ``product:G,B``, ``seifert:G``."""
    name = name.strip()
    if name == "knot-complement":
        return knot_complement_sutured()
    kind, _, args = name.partition(":")
    try:
        nums = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise SuturedError(f"bad arguments in {name!r}") from None
    if kind == "product" and len(nums) == 2:
        return product_sutured(*nums)
    if kind == "seifert" and len(nums) == 1:
        return seifert_cut(nums[0])
    raise SuturedError(
        f"unknown sutured record {name!r}; use knot-complement, product:G,B or seifert:G"
    )

