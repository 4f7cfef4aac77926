"""Independent cross-checks for the numbers the library reports.

Nothing here calls into the main computational paths: the Alexander polynomial is
recomputed from a Seifert matrix with sympy, representation counts of two-bridge
knots come from a one-angle bisection on the Schubert presentation, and the
abelianization uses sympy's Smith normal form.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------------------
# abelianization


def smith_abelianization(n_generators: int, relations) -> tuple[int, list[int]]:
    """(free rank, torsion invariants) of Z^n / <exponent-sum rows>, via sympy."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    rows = []
    for word in relations:
        row = [0] * n_generators
        for g, e in word:
            row[g] += e
        rows.append(row)
    if not rows:
        return n_generators, []
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d]
    return n_generators - len(nonzero), [d for d in nonzero if d > 1]


# ---------------------------------------------------------------------------
# two-bridge knots


def even_continued_fraction(p: int, q: int) -> list[int]:
    """Even entries a_i with p/q = a_1 - 1/(a_2 - 1/(... - 1/a_n)); p odd."""
    if p % 2 == 0:
        raise ValueError("two-bridge knots have odd p")
    if q % 2:
        q = q - p if q > 0 else q + p
    x = Fraction(p, q)
    out = []
    for _ in range(4 * p + 4):
        a = 2 * round(x / 2)
        out.append(a)
        if x == a:
            return out
        x = 1 / (a - x)
    raise ArithmeticError(f"no even continued fraction found for {p}/{q}")


def plumbing_seifert_matrix(p: int, q: int):
    """Seifert matrix of the linear plumbing of twisted bands given by the even continued fraction."""
    from sympy import zeros

    bands = [a // 2 for a in even_continued_fraction(p, q)]
    n = len(bands)
    v = zeros(n, n)
    for i, b in enumerate(bands):
        v[i, i] = b
    for i in range(n - 1):
        if i % 2 == 0:
            v[i, i + 1] = 1
        else:
            v[i + 1, i] = 1
    return v


def seifert_alexander(v) -> dict[int, int]:
    """det(V^T - t V), shifted to be symmetric and signed with value +1 at t = 1.

    Returns a plain exponent -> coefficient dict.
    """
    import sympy as sp

    t = sp.symbols("t")
    v = sp.Matrix(v)
    if v.shape[0] == 0:
        return {0: 1}
    poly = sp.Poly(sp.expand((v.T - t * v).det()), t)
    coeffs = {int(m[0]): int(c) for m, c in zip(poly.monoms(), poly.coeffs())}
    lo, hi = min(coeffs), max(coeffs)
    shift = (lo + hi) // 2
    out = {e - shift: c for e, c in coeffs.items()}
    if sum(out.values()) < 0:
        out = {e: -c for e, c in out.items()}
    return out


def schubert_word(p: int, q: int) -> list[tuple[int, int]]:
    """w in the presentation <a, b | w a = b w> of the two-bridge knot b(p, q)."""
    word = []
    for k in range(1, p):
        eps = -1 if (k * q // p) % 2 else 1
        word.append((k % 2 == 0 and 1 or 0, eps))
    return word


def _qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _schubert_defect(p: int, q: int, phi: float):
    a = (0.0, 1.0, 0.0, 0.0)
    b = (0.0, math.cos(phi), math.sin(phi), 0.0)
    gens = (a, b)
    w = (1.0, 0.0, 0.0, 0.0)
    for g, e in schubert_word(p, q):
        x = gens[g]
        if e < 0:
            x = (x[0], -x[1], -x[2], -x[3])
        w = _qmul(w, x)
    lhs = _qmul(w, a)
    rhs = _qmul(b, w)
    return np.subtract(lhs, rhs)


def two_bridge_angle_function(p: int, q: int, phi: float) -> float:
    """Signed defect of the relation at axis angle ``phi`` between rho(a) = i and rho(b).

    The defect of  w a - b w  always points along the unit vector orthogonal to
    the bisector of the two axes; its signed length is returned.
    """
    d = _schubert_defect(p, q, phi)
    return float(-math.sin(phi / 2) * d[1] + math.cos(phi / 2) * d[2])


def two_bridge_rep_angles(p: int, q: int, grid: int = 20000, tol: float = 1e-9) -> list[float]:
    """Axis angles in (0, pi) of the irreducible traceless representations of b(p, q).

    Sign changes on a uniform grid are refined by bisection and kept only where
    the full quaternion relation holds.
    """
    eps = 1e-7
    phis = np.linspace(eps, math.pi - eps, grid + 1)
    vals = [two_bridge_angle_function(p, q, x) for x in phis]
    roots = []
    for k in range(grid):
        f0, f1 = vals[k], vals[k + 1]
        if f0 == 0.0:
            roots.append(float(phis[k]))
            continue
        if f0 * f1 < 0:
            lo, hi, flo = phis[k], phis[k + 1], f0
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = two_bridge_angle_function(p, q, mid)
                if fm == 0.0 or hi - lo < 1e-15:
                    break
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(float(0.5 * (lo + hi)))
    return [r for r in roots if np.max(np.abs(_schubert_defect(p, q, r))) < tol]


def two_bridge_rep_count(p: int, q: int) -> int:
    """Number of conjugacy classes of irreducible traceless SU(2) representations of b(p, q)."""
    return len(two_bridge_rep_angles(p, q))


# ---------------------------------------------------------------------------
# Seifert circles, traced by PD positions


def traced_seifert_circles(crossings) -> int:
    """Follow oriented edges; at each crossing turn to the adjacent outgoing position."""
    if not crossings:
        return 1
    pos_of: dict[int, list[tuple[int, int]]] = {}
    for k, (sign, *labels) in enumerate(crossings):
        for p, lab in enumerate(labels):
            pos_of.setdefault(lab, []).append((k, p))
    outgoing = {}
    for k, (sign, *_) in enumerate(crossings):
        outgoing[k] = {2, 1 if sign > 0 else 3}
    seen: set[tuple[int, int]] = set()
    circles = 0
    for k0 in range(len(crossings)):
        for p0 in outgoing[k0]:
            if (k0, p0) in seen:
                continue
            circles += 1
            k, p = k0, p0
            while (k, p) not in seen:
                seen.add((k, p))
                lab = crossings[k][1 + p]
                (k1, p1), (k2, p2) = pos_of[lab]
                k, p = (k2, p2) if (k1, p1) == (k, p) else (k1, p1)
                # arrived at incoming position p of crossing k: leave by the adjacent outgoing one
                nxt = [(p + 1) % 4, (p + 3) % 4]
                p = next(x for x in nxt if x in outgoing[k])
    return circles
