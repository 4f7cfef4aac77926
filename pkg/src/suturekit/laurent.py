"""Integer Laurent polynomials in one variable and exact determinants over them."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


class LaurentPolynomial:
    """Immutable element of Z[t, t^-1], stored as a sparse exponent -> coefficient map.

    Zero coefficients are never stored, so equality is plain map equality.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (coeffs or {}).items():
            c = int(c)
            if c:
                clean[int(e)] = c
        self._coeffs = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPolynomial":
        return cls({exp: coef})

    @classmethod
    def from_list(cls, coefs: Sequence[int], low: int = 0) -> "LaurentPolynomial":
        """Build from dense coefficients starting at exponent ``low``."""
        return cls({low + k: c for k, c in enumerate(coefs)})

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPolynomial":
        return cls({int(k): int(v) for k, v in data.items()})

    # -- basic accessors ----------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def max_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self._coeffs)

    @property
    def min_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return min(self._coeffs)

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._coeffs.items())

    def is_unit(self) -> bool:
        return len(self._coeffs) == 1 and abs(next(iter(self._coeffs.values()))) == 1

    def __call__(self, t):
        return sum(c * t**e for e, c in self._coeffs.items())

    def at_one(self) -> int:
        return sum(self._coeffs.values())

    def inverse_variable(self) -> "LaurentPolynomial":
        """p(t^-1)."""
        return LaurentPolynomial({-e: c for e, c in self._coeffs.items()})

    def shift(self, k: int) -> "LaurentPolynomial":
        """t^k * p."""
        return LaurentPolynomial({e + k: c for e, c in self._coeffs.items()})

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            (e, c), = self._coeffs.items()
            return LaurentPolynomial({e * n: c**n})
        out = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient q with self == q * other; raises ArithmeticError when not exact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentPolynomial()
        rem = dict(self._coeffs)
        d_top = other.max_exp
        d_lead = other._coeffs[d_top]
        d_low = other.min_exp
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - d_top < min(rem) - d_low:
                raise ArithmeticError("division is not exact")
            c = rem[top]
            if c % d_lead:
                raise ArithmeticError("division is not exact over Z")
            qc = c // d_lead
            qe = top - d_top
            quot[qe] = qc
            for e, dc in other._coeffs.items():
                k = e + qe
                v = rem.get(k, 0) - qc * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPolynomial(quot)

    # -- comparison / hashing ----------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._coeffs.items())}

    def pretty(self, var: str = "t") -> str:
        """Human form, highest exponent first, e.g. ``-t + 3 - t^-1``."""
        if not self._coeffs:
            return "0"
        parts = []
        for i, (e, c) in enumerate(sorted(self._coeffs.items(), reverse=True)):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self.pretty()!r})"

    __str__ = pretty


T = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.constant(1)
ZERO = LaurentPolynomial()


def determinant(matrix: Sequence[Sequence[LaurentPolynomial]]) -> LaurentPolynomial:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Every division performed is exact in Z[t, t^-1]; the empty matrix has
    determinant 1.
    """
    n = len(matrix)
    if n == 0:
        return ONE
    a = [[LaurentPolynomial._coerce(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = ZERO
        prev = pivot
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def poly_sum(items: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    out = ZERO
    for p in items:
        out = out + p
    return out
