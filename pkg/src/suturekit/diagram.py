"""Knot diagrams from PD codes and braid words, Wirtinger presentations, Seifert genus bound.

PD convention: ``X[a,b,c,d]`` lists the four edges at a crossing counterclockwise,
starting from the incoming under-edge ``a`` (so ``c`` is the outgoing under-edge).
The crossing is positive when the over-strand enters at ``d`` and leaves at ``b``.
This is the KnotTheory / knot-table convention; a positive crossing therefore
has ``b == d + 1`` (mod 2c) once edges are numbered along the orientation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Hashable, Sequence


class DiagramError(ValueError):
    """Malformed or invalid knot diagram input."""


class LinkNotSupportedError(DiagramError):
    """The input describes a link with more than one component."""


@dataclass(frozen=True)
class KnotDiagram:
    """Oriented single-component planar diagram.

    ``crossings`` holds ``(sign, a, b, c, d)`` with edges numbered ``1..2c``
    consecutively along the orientation, edge 1 entering crossing 0 as its
    under-strand.  The empty diagram is the crossingless unknot.
    """

    crossings: tuple[tuple[int, int, int, int, int], ...]
    source: str = ""

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> int:
        """Number of edge labels: 2c, or 1 closed edge for the empty diagram."""
        return 2 * len(self.crossings) if self.crossings else 1

    @property
    def writhe(self) -> int:
        return sum(x[0] for x in self.crossings)

    def pd_tuples(self) -> list[tuple[int, int, int, int]]:
        return [x[1:] for x in self.crossings]

    def pd_string(self) -> str:
        return ";".join("X[{},{},{},{}]".format(*x[1:]) for x in self.crossings)

    def to_json(self) -> dict:
        return {"crossings": [list(x) for x in self.crossings]}

    @classmethod
    def from_json(cls, data: dict) -> "KnotDiagram":
        rows = data["crossings"]
        d = from_pd_tuples([tuple(r[1:]) for r in rows], source=json.dumps(data))
        if [r[0] for r in rows] != [x[0] for x in d.crossings]:
            raise DiagramError("crossing signs disagree with the edge orientation")
        return d


@dataclass(frozen=True)
class GroupPresentation:
    """Finitely presented group; words are tuples of (generator index, +-1)."""

    n_generators: int
    relations: tuple[tuple[tuple[int, int], ...], ...]
    meridian: int = 0

    def to_json(self) -> dict:
        return {
            "n_generators": self.n_generators,
            "meridian": self.meridian,
            "relations": [[[g, e] for g, e in w] for w in self.relations],
        }


@dataclass(frozen=True)
class WirtingerRelation:
    """x_out = x_over^eps * x_in * x_over^-eps  (eps = crossing sign)."""

    incoming: int
    outgoing: int
    over: int
    sign: int


@dataclass(frozen=True)
class WirtingerPresentation(GroupPresentation):
    crossing_relations: tuple[WirtingerRelation, ...] = field(default=())


@dataclass(frozen=True)
class GenusEstimate:
    seifert_circles: int
    crossings: int
    genus_upper: int
    is_exact_hint: bool = False

    def to_json(self) -> dict:
        return {
            "seifert_circles": self.seifert_circles,
            "crossings": self.crossings,
            "genus_upper": self.genus_upper,
            "is_exact_hint": self.is_exact_hint,
        }


# ---------------------------------------------------------------------------
# PD parsing

_X_RE = re.compile(r"X\s*\[\s*([^\]]*)\]")


def _tokenize_pd(text: str) -> list[tuple[str, str, str, str]]:
    body = text.strip()
    if body.upper().startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    if not body:
        return []
    out = []
    pos = 0
    for m in _X_RE.finditer(body):
        gap = body[pos:m.start()]
        if gap.strip(" \t\n;,"):
            raise DiagramError(f"unexpected text {gap.strip()!r} in PD code")
        parts = [p.strip() for p in m.group(1).split(",")]
        if len(parts) != 4 or not all(parts):
            raise DiagramError(f"crossing X[{m.group(1)}] does not have four entries")
        out.append(tuple(parts))
        pos = m.end()
    tail = body[pos:]
    if tail.strip(" \t\n;,"):
        raise DiagramError(f"unexpected text {tail.strip()!r} in PD code")
    if not out:
        raise DiagramError("no crossings found in PD code")
    return out


def parse_pd(text: str) -> KnotDiagram:
    """Parse ``X[a,b,c,d];...`` (optionally wrapped in ``PD[...]``).

    Empty input is the crossingless unknot.
    """
    raw = _tokenize_pd(text)
    tuples = []
    for parts in raw:
        try:
            tuples.append(tuple(int(p) for p in parts))
        except ValueError:
            raise DiagramError(f"non-integer edge label in X[{','.join(parts)}]") from None
    return from_pd_tuples(tuples, source=text)


def from_pd_tuples(tuples: Sequence[Sequence[Hashable]], source: str = "") -> KnotDiagram:
    """Validate PD tuples, orient by walking the strand, and renumber edges 1..2c."""
    if not tuples:
        return KnotDiagram((), source)
    xs = [tuple(x) for x in tuples]
    for x in xs:
        if len(x) != 4:
            raise DiagramError(f"crossing {x} does not have four entries")
    where: dict[Hashable, list[tuple[int, int]]] = {}
    for k, x in enumerate(xs):
        for p, lab in enumerate(x):
            where.setdefault(lab, []).append((k, p))
    for lab, occ in where.items():
        if len(occ) != 2:
            raise DiagramError(f"edge {lab!r} appears {len(occ)} times (expected 2)")

    n = len(xs)
    # Walk along the knot. Entering (k, p) we leave through (k, p ^ 2).
    visited: set[tuple[int, int]] = set()
    order: list[Hashable] = []
    over_entry: dict[int, int] = {}
    k, p = 0, 0
    while (k, p) not in visited:
        if p == 2:
            raise DiagramError(
                f"crossing {k} is entered along its under-strand at position {p}; "
                "PD position 0 must be the incoming under-edge"
            )
        visited.add((k, p))
        visited.add((k, p ^ 2))
        if p in (1, 3):
            over_entry[k] = p
        out_lab = xs[k][p ^ 2]
        order.append(out_lab)
        a, b = where[out_lab]
        nxt = b if a == (k, p ^ 2) else a
        k, p = nxt
    if len(visited) != 4 * n:
        raise LinkNotSupportedError(
            "diagram has more than one component; only knots are supported"
        )
    # the edge entering crossing 0 from below (last one walked) becomes 1
    relabel = {lab: (i + 1) % (2 * n) + 1 for i, lab in enumerate(order)}
    crossings = []
    for k, x in enumerate(xs):
        sign = 1 if over_entry[k] == 3 else -1
        crossings.append((sign,) + tuple(relabel[lab] for lab in x))
    return KnotDiagram(tuple(crossings), source)


# ---------------------------------------------------------------------------
# braid words

_BRAID_TOKEN = re.compile(r"^(?:s|sigma|σ)?(-?\d+)(?:\^(-?1))?$", re.IGNORECASE)


def parse_braid_word(text: str) -> list[int]:
    """``"s1 s2^-1 s1"`` -> ``[1, -2, 1]``.  Bare signed integers are accepted too."""
    letters = []
    for tok in re.split(r"[\s,*.]+", text.strip()):
        if not tok:
            continue
        m = _BRAID_TOKEN.match(tok)
        if not m:
            raise DiagramError(f"malformed braid generator {tok!r}")
        idx = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        if idx == 0:
            raise DiagramError("braid generators are numbered from 1")
        letters.append(idx * exp)
    return letters


def braid_closure(word: Sequence[int], source: str = "") -> KnotDiagram:
    """Diagram of the closure of a braid word on ``max|i| + 1`` strands.

    Strands run downward; in a positive letter the strand moving left passes over.
    """
    if not word:
        return KnotDiagram((), source)
    strands = max(abs(w) for w in word) + 1
    pos = list(range(strands))  # current edge id at each strand position
    counter = strands
    raw = []
    for w in word:
        i = abs(w) - 1
        in_left, in_right = pos[i], pos[i + 1]
        sw, se = counter, counter + 1
        counter += 2
        if w > 0:
            raw.append((in_left, sw, se, in_right))
        else:
            raw.append((in_right, in_left, sw, se))
        pos[i], pos[i + 1] = sw, se
    close = {pos[k]: k for k in range(strands)}
    tuples = [tuple(close.get(e, e) for e in x) for x in raw]
    labels = {e for x in tuples for e in x}
    if len(labels) != 2 * len(word):
        # a strand position untouched by any letter closes up into its own circle
        raise LinkNotSupportedError("braid closure has more than one component")
    return from_pd_tuples(tuples, source=source)


def parse_braid(text: str) -> KnotDiagram:
    return braid_closure(parse_braid_word(text), source=text)


# ---------------------------------------------------------------------------
# Wirtinger presentation


def _over_in_out(x: tuple[int, int, int, int, int]) -> tuple[int, int]:
    sign, a, b, c, d = x
    return (d, b) if sign > 0 else (b, d)


def wirtinger_arcs(d: KnotDiagram) -> dict[int, int]:
    """Map each edge label to its Wirtinger arc index (arc of edge 1 is 0)."""
    if not d.crossings:
        return {1: 0}
    parent = {e: e for e in range(1, 2 * d.n_crossings + 1)}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for x in d.crossings:
        i, o = _over_in_out(x)
        parent[find(i)] = find(o)
    roots: dict[int, int] = {}
    out = {}
    for e in sorted(parent):
        r = find(e)
        if r not in roots:
            roots[r] = len(roots)
        out[e] = roots[r]
    return out


def wirtinger(d: KnotDiagram) -> WirtingerPresentation:
    """One generator per over-arc, one conjugation relation per crossing.

    Positive crossing:  x_out * (x_over x_in x_over^-1)^-1
    Negative crossing:  x_out * (x_over^-1 x_in x_over)^-1
    """
    arc = wirtinger_arcs(d)
    n_gen = max(arc.values()) + 1
    rels = []
    crel = []
    for x in d.crossings:
        sign, a, b, c, dd = x
        o_in, _ = _over_in_out(x)
        gi, go, gv = arc[a], arc[c], arc[o_in]
        crel.append(WirtingerRelation(gi, go, gv, sign))
        # x_out * x_v^s * x_in^-1 * x_v^-s
        rels.append(((go, 1), (gv, sign), (gi, -1), (gv, -sign)))
    return WirtingerPresentation(n_gen, tuple(rels), 0, tuple(crel))


# ---------------------------------------------------------------------------
# Seifert circles


def seifert_circles(d: KnotDiagram) -> int:
    """Number of circles after the orientation-respecting smoothing of every crossing."""
    if not d.crossings:
        return 1
    nxt = {}
    for x in d.crossings:
        sign, a, b, c, dd = x
        o_in, o_out = _over_in_out(x)
        # the incoming under-edge turns onto the outgoing over-edge, and vice versa
        nxt[a] = o_out
        nxt[o_in] = c
    seen = set()
    count = 0
    for e in nxt:
        if e in seen:
            continue
        count += 1
        while e not in seen:
            seen.add(e)
            e = nxt[e]
    return count


def seifert_genus_upper(d: KnotDiagram, exact: bool = False) -> GenusEstimate:
    c = d.n_crossings
    s = seifert_circles(d)
    twice = c - s + 1
    if twice % 2 or twice < 0:
        raise DiagramError(f"Seifert circle count {s} inconsistent with {c} crossings")
    return GenusEstimate(s, c, twice // 2, exact)
