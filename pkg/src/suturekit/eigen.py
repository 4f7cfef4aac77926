"""Simultaneous generalized eigenspaces of commuting operators.

The motivating pair is (mu(R), mu(y)) acting on instanton homology of a
product S^1 x Sigma, whose joint spectrum is the finite lattice set produced by
:func:`munoz_spectrum`.  Blocks are found one operator at a time: cluster the
spectrum, pull out each cluster's invariant subspace with a reordered complex
Schur form, and recurse on the restriction of the next operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur

_I_POW = (1, 1j, -1, -1j)
# eigenvalue gaps between this many cluster radii and one radius are ambiguous
_AMBIGUOUS = 10.0


class EigenError(ValueError):
    pass


class ClusteringError(EigenError):
    def __init__(self, operator: int, pair: tuple[complex, complex], gap: float):
        self.operator = operator
        self.pair = pair
        self.gap = gap
        super().__init__(
            f"operator {operator}: eigenvalue clusters {pair[0]:.6g} and {pair[1]:.6g} "
            f"are {gap:.3g} apart, too close to separate reliably"
        )


@dataclass
class OperatorFamily:
    dim: int
    operators: list[np.ndarray]
    genus_tags: dict[int, int] = field(default_factory=dict)
    geometric: bool = False

    def __post_init__(self):
        self.operators = [np.asarray(a, dtype=complex) for a in self.operators]
        for k, a in enumerate(self.operators):
            if a.shape != (self.dim, self.dim):
                raise EigenError(f"operator {k} has shape {a.shape}, expected {(self.dim, self.dim)}")

    @property
    def scale(self) -> float:
        return max([1.0] + [float(np.linalg.norm(a, 2)) for a in self.operators if a.size])

    def commutator_defects(self) -> list[tuple[int, int, float]]:
        out = []
        for i in range(len(self.operators)):
            for j in range(i + 1, len(self.operators)):
                a, b = self.operators[i], self.operators[j]
                d = float(np.max(np.abs(a @ b - b @ a))) if self.dim else 0.0
                out.append((i, j, d))
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "operators": [[[[z.real, z.imag] for z in row] for row in a.tolist()] for a in self.operators],
            "genus_tags": {str(k): v for k, v in sorted(self.genus_tags.items())},
            "geometric": self.geometric,
        }

    @classmethod
    def from_json(cls, data: dict) -> "OperatorFamily":
        ops = []
        for a in data["operators"]:
            arr = np.array(a, dtype=float)
            if arr.ndim != 3 or arr.shape[-1] != 2:
                raise EigenError("operators must be nested arrays of [re, im] pairs")
            ops.append(arr[..., 0] + 1j * arr[..., 1])
        dim = int(data.get("dim", ops[0].shape[0] if ops else 0))
        tags = {int(k): int(v) for k, v in data.get("genus_tags", {}).items()}
        return cls(dim, ops, tags, bool(data.get("geometric", False)))


@dataclass
class Block:
    eigenvalues: tuple[complex, ...]
    dimension: int
    basis: np.ndarray
    snap_distance: float = 0.0

    def to_json(self) -> dict:
        return {
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "dimension": self.dimension,
            "snap_distance": self.snap_distance,
        }


@dataclass
class EigenDecomposition:
    blocks: list[Block]
    dim: int

    def tuples(self) -> list[tuple[complex, ...]]:
        return [b.eigenvalues for b in self.blocks]

    def projectors(self) -> list[np.ndarray]:
        """Spectral projectors onto each block along the others."""
        v = np.hstack([b.basis for b in self.blocks]) if self.blocks else np.zeros((self.dim, 0))
        w = np.linalg.inv(v)
        out, k = [], 0
        for b in self.blocks:
            out.append(v[:, k : k + b.dimension] @ w[k : k + b.dimension])
            k += b.dimension
        return out

    def to_json(self) -> dict:
        return {"dim": self.dim, "blocks": [b.to_json() for b in self.blocks]}


def munoz_spectrum(g: int) -> frozenset[tuple[complex, complex]]:
    """The pairs (i^r 2k, (-1)^r 2) for 0 <= k <= g-1 and r = 0..3."""
    if g < 1:
        raise EigenError("genus must be at least 1")
    return frozenset(
        (complex(_I_POW[r] * 2 * k), complex((-1) ** r * 2)) for k in range(g) for r in range(4)
    )


def snap_even_gaussian(z: complex) -> complex:
    return complex(2 * round(z.real / 2), 2 * round(z.imag / 2))


def _clusters(vals: np.ndarray, radius: float, op_index: int) -> list[np.ndarray]:
    """Single-linkage clusters of eigenvalues; ambiguous gaps raise ClusteringError."""
    n = len(vals)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = [np.array(v) for v in groups.values()]
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            gap = float(np.min(np.abs(vals[out[a]][:, None] - vals[out[b]][None, :])))
            if gap <= _AMBIGUOUS * radius:
                ca, cb = vals[out[a]].mean(), vals[out[b]].mean()
                raise ClusteringError(op_index, (complex(ca), complex(cb)), gap)
    return out


def _split(basis: np.ndarray, ops: list[np.ndarray], idx: int, radius: float, prefix: tuple):
    """Recursively split span(basis) by the generalized eigenspaces of ops[idx:]."""
    if idx == len(ops):
        return [(prefix, basis)]
    a = basis.conj().T @ ops[idx] @ basis
    vals = np.linalg.eigvals(a)
    out = []
    for members in _clusters(vals, radius, idx):
        centre = complex(vals[members].mean())
        reach = float(np.max(np.abs(vals[members] - centre))) + radius
        t, z, sdim = schur(a, output="complex", sort=lambda x, c=centre, r=reach: abs(x - c) <= r)
        if sdim != len(members):
            raise EigenError(
                f"operator {idx}: Schur reordering kept {sdim} eigenvalues near {centre:.6g}, "
                f"expected {len(members)}"
            )
        sub = basis @ z[:, :sdim]
        # the restricted trace gives the centroid with first-order accuracy even for Jordan blocks
        centre = complex(np.trace(t[:sdim, :sdim]) / sdim)
        out.extend(_split(sub, ops, idx + 1, radius, prefix + (centre,)))
    return out


def _sort_key(tup: tuple[complex, ...]):
    key = []
    for k, z in enumerate(tup):
        key.append(round(z.real, 9))
        if k == 0:
            key.append(round(z.imag, 9))
    for z in tup[1:]:
        key.append(round(z.imag, 9))
    return tuple(key)


def decompose(f: OperatorFamily, tol: float = 1e-6, geometric_model: bool | None = None) -> EigenDecomposition:
    """Joint generalized eigenspaces.  ``tol`` is relative to the largest operator norm.

    With ``geometric_model`` (default: the family's own tag) every eigenvalue is
    snapped to the nearest point of 2Z[i]; the largest move is kept per block.
    """
    if geometric_model is None:
        geometric_model = f.geometric
    scale = f.scale
    for i, j, d in f.commutator_defects():
        if d > 1e-9 * scale * scale:
            raise EigenError(f"operators {i} and {j} do not commute (defect {d:.3g})")
    if f.dim == 0:
        return EigenDecomposition([], 0)
    if not f.operators:
        return EigenDecomposition([Block((), f.dim, np.eye(f.dim, dtype=complex))], f.dim)

    raw = _split(np.eye(f.dim, dtype=complex), f.operators, 0, tol * scale, ())
    blocks = []
    for tup, basis in raw:
        snap = 0.0
        if geometric_model:
            snapped = tuple(snap_even_gaussian(z) for z in tup)
            snap = max(abs(a - b) for a, b in zip(tup, snapped))
            tup = snapped
        blocks.append(Block(tup, basis.shape[1], basis, float(snap)))
    blocks.sort(key=lambda b: _sort_key(b.eigenvalues))
    total = sum(b.dimension for b in blocks)
    if total != f.dim:
        raise EigenError(f"blocks cover {total} dimensions of {f.dim}")
    return EigenDecomposition(blocks, f.dim)


def _matches(tup, target, tol) -> bool:
    return all(abs(a - b) <= tol for a, b in zip(tup, target))


def top_eigenspace(f: OperatorFamily, g: int, tol: float = 1e-6) -> tuple[int, np.ndarray]:
    """The joint eigenspace at (2g - 2, 2) of the first two operators.

    The generalized eigenspace is compared with the plain joint kernel; they must
    agree, otherwise EigenError is raised.
    """
    if len(f.operators) < 2:
        raise EigenError("top_eigenspace needs the pair (mu(R), mu(y))")
    dec = decompose(f, tol)
    target = (complex(2 * g - 2), complex(2))
    rad = tol * f.scale
    hits = [b for b in dec.blocks if _matches(b.eigenvalues[:2], target, rad * _AMBIGUOUS)]
    if not hits:
        return 0, np.zeros((f.dim, 0), dtype=complex)
    basis = np.hstack([b.basis for b in hits])
    eye = np.eye(f.dim)
    stacked = np.vstack([f.operators[0] - target[0] * eye, f.operators[1] - target[1] * eye])
    sv = np.linalg.svd(stacked, compute_uv=False)
    plain = int(np.sum(sv <= 1e-7 * f.scale))
    if plain != basis.shape[1]:
        raise EigenError(
            f"top eigenvalue is not simple on the kernel: generalized dimension {basis.shape[1]}, "
            f"plain joint kernel dimension {plain}"
        )
    return basis.shape[1], basis


def spectrum_subset_check(f: OperatorFamily, g: int | None = None, tol: float = 1e-6) -> tuple[bool, list]:
    """Every (mu(R), mu(y)) block pair must lie in munoz_spectrum(g)."""
    if g is None:
        if 0 not in f.genus_tags:
            raise EigenError("no genus given and operator 0 carries no genus tag")
        g = f.genus_tags[0]
    allowed = munoz_spectrum(g)
    dec = decompose(f, tol)
    rad = _AMBIGUOUS * tol * f.scale
    bad = []
    for b in dec.blocks:
        pair = b.eigenvalues[:2]
        if not any(_matches(pair, m, rad) for m in allowed):
            bad.append(pair)
    return not bad, bad


def _random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def build_model(
    g: int,
    top_dim: int = 1,
    jordan_at: list | tuple | None = None,
    rng_seed: int = 0,
) -> OperatorFamily:
    """Commuting (mu(R), mu(y)) with joint spectrum munoz_spectrum(g), in a random unitary frame.

    The (2g - 2, 2) block has dimension ``top_dim``; every other pair gets a
    one-dimensional block, except pairs listed in ``jordan_at`` which get a 2x2
    Jordan block for mu(R).
    """
    if g < 1:
        raise EigenError("genus must be at least 1")
    if top_dim < 1:
        raise EigenError("top_dim must be at least 1")
    jordan = set()
    for p in jordan_at or ():
        p = (complex(p[0]), complex(p[1]))
        if p not in munoz_spectrum(g):
            raise EigenError(f"Jordan block requested at {p}, which is not in the spectrum")
        jordan.add(p)
    top = (complex(2 * g - 2), complex(2))
    pairs = sorted(munoz_spectrum(g), key=_sort_key)
    sizes = []
    for p in pairs:
        sizes.append(2 if p in jordan else (top_dim if p == top else 1))
    n = sum(sizes)
    a = np.zeros((n, n), dtype=complex)
    b = np.zeros((n, n), dtype=complex)
    k = 0
    for p, s in zip(pairs, sizes):
        for m in range(s):
            a[k + m, k + m] = p[0]
            b[k + m, k + m] = p[1]
        if p in jordan:
            a[k, k + 1] = 1.0
        k += s
    u = _random_unitary(n, np.random.default_rng(rng_seed))
    uh = u.conj().T
    return OperatorFamily(n, [u @ a @ uh, u @ b @ uh], {0: g}, geometric=True)


def random_submodel(f: OperatorFamily, rng: np.random.Generator, tol: float = 1e-6) -> OperatorFamily:
    """Restriction of ``f`` to the span of a random nonempty set of its blocks, in a fresh frame."""
    dec = decompose(f, tol)
    m = len(dec.blocks)
    pick = np.nonzero(rng.random(m) < 0.5)[0]
    if pick.size == 0:
        pick = np.array([rng.integers(m)])
    q, _ = np.linalg.qr(np.hstack([dec.blocks[k].basis for k in pick]))
    u = _random_unitary(q.shape[1], rng)
    q = q @ u
    ops = [q.conj().T @ a @ q for a in f.operators]
    return OperatorFamily(q.shape[1], ops, dict(f.genus_tags), f.geometric)
