"""Alexander polynomial by Fox calculus, plus the predicates used by the fibered-knot criteria."""

from __future__ import annotations

from typing import Sequence

from .diagram import GroupPresentation
from .laurent import ONE, LaurentPolynomial, determinant


class AbelianizationError(ValueError):
    """The presentation does not abelianize to Z (upstream construction bug)."""


class NotPalindromicError(ValueError):
    pass


Word = Sequence[tuple[int, int]]


def fox_derivative(word: Word, gen: int) -> LaurentPolynomial:
    """Fox derivative d(word)/d(x_gen), pushed to Z[t,t^-1] with every generator -> t."""
    out: dict[int, int] = {}
    prefix = 0  # exponent of t for the image of the prefix
    for g, e in word:
        if e == 1:
            if g == gen:
                out[prefix] = out.get(prefix, 0) + 1
            prefix += 1
        elif e == -1:
            prefix -= 1
            if g == gen:
                out[prefix] = out.get(prefix, 0) - 1
        else:
            raise ValueError(f"word letters must have exponent +-1, got {e}")
    return LaurentPolynomial(out)


def fox_matrix(p: GroupPresentation) -> list[list[LaurentPolynomial]]:
    return [[fox_derivative(r, j) for j in range(p.n_generators)] for r in p.relations]


def _integer_elementary_divisors(rows: list[list[int]], ncols: int) -> list[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix."""
    a = [list(r) for r in rows if any(r)]
    divisors = []
    col0 = 0
    while a and col0 < ncols:
        # choose smallest nonzero |entry| as pivot
        best = None
        for i, r in enumerate(a):
            for j in range(col0, ncols):
                if r[j] and (best is None or abs(r[j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[0], a[i] = a[i], a[0]
        for r in a:
            r[col0], r[j] = r[j], r[col0]
        piv = a[0][col0]
        clean = True
        for r in a[1:]:
            q = r[col0] // piv
            if q:
                for c in range(col0, ncols):
                    r[c] -= q * a[0][c]
            if r[col0]:
                clean = False
        for c in range(col0 + 1, ncols):
            q = a[0][c] // piv
            if q:
                for r in a:
                    r[c] -= q * r[col0]
            if a[0][c]:
                clean = False
        if clean:
            divisors.append(abs(piv))
            a = [r for r in a[1:] if any(r[col0 + 1:])]
            col0 += 1
    return divisors


def abelianization_invariants(p: GroupPresentation) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients > 1) of the abelianized presentation."""
    rows = [[0] * p.n_generators for _ in p.relations]
    for r, word in zip(rows, p.relations):
        for g, e in word:
            r[g] += e
    divs = _integer_elementary_divisors(rows, p.n_generators)
    return p.n_generators - len(divs), [d for d in divs if d > 1]


def _check_infinite_cyclic(p: GroupPresentation) -> None:
    rank, torsion = abelianization_invariants(p)
    if rank != 1 or torsion:
        raise AbelianizationError(
            f"abelianization is Z^{rank} + torsion {torsion}, expected Z"
        )


def alexander_minor(
    p: GroupPresentation, drop_column: int = 0, drop_row: int | None = None
) -> LaurentPolynomial:
    """Determinant of the Fox matrix with one column (and, when square, one row) removed."""
    m = fox_matrix(p)
    n = p.n_generators
    if n == 1 and not p.relations:
        return ONE
    cols = [j for j in range(n) if j != drop_column]
    rows = list(range(len(m)))
    if len(rows) > len(cols):
        extra = len(rows) - len(cols)
        if extra != 1:
            raise ValueError("presentation has deficiency below 0; pass an explicit minor")
        rows.remove(len(m) - 1 if drop_row is None else drop_row)
    elif len(rows) < len(cols):
        raise ValueError("presentation has deficiency above 1")
    return determinant([[m[i][j] for j in cols] for i in rows])


def alexander_fox(p: GroupPresentation, drop_column: int = 0, drop_row: int | None = None) -> LaurentPolynomial:
    """Symmetrized Alexander polynomial with Delta(1) = +1."""
    _check_infinite_cyclic(p)
    minor = alexander_minor(p, drop_column, drop_row)
    if minor.is_zero():
        raise AbelianizationError("Fox minor vanished; presentation is not a knot group")
    return symmetrize(minor)


def symmetrize_checked(p: LaurentPolynomial) -> tuple[LaurentPolynomial, bool]:
    """Unit multiple ``q = +-t^m p`` with q(t) = q(1/t), signed so q(1) > 0.

    The flag is True when q(1) == 1 exactly.  When q(1) == 0 no sign makes it
    positive; the top coefficient is made positive instead and the flag is False.
    """
    if p.is_zero():
        raise ValueError("cannot symmetrize the zero polynomial")
    span = p.max_exp + p.min_exp
    if span % 2:
        raise NotPalindromicError(f"{p.pretty()} has odd exponent span")
    q = p.shift(-span // 2)
    if q.inverse_variable() != q:
        raise NotPalindromicError(f"{p.pretty()} is not palindromic up to a unit")
    v = q.at_one()
    if v < 0 or (v == 0 and q.coefficient(q.max_exp) < 0):
        q = -q
    return q, q.at_one() == 1


def symmetrize(p: LaurentPolynomial) -> LaurentPolynomial:
    return symmetrize_checked(p)[0]


def is_monic_of_degree(p: LaurentPolynomial, g: int) -> bool:
    if p.is_zero():
        return False
    top = p.max_exp
    return top == g and abs(p.coefficient(top)) == 1


def coefficient_mass(p: LaurentPolynomial) -> int:
    return sum(abs(c) for c in p.coeffs.values())


def degree(p: LaurentPolynomial) -> int:
    """Highest exponent of a symmetrized polynomial (0 for constants)."""
    return p.max_exp if not p.is_zero() else 0

