"""Traceless SU(2) representations of knot groups with a pinned meridian.

Rep(K, i) = { rho : pi_1(S^3 - K) -> SU(2) | rho(m) = i }.  Every Wirtinger
generator is conjugate to the meridian, so all images are trace-zero unit
quaternions, i.e. points of S^2.  Conjugation by a trace-zero unit quaternion
is the rotation by pi about its axis, which turns each Wirtinger relation into
the vector equation  x_out = 2 (x_in . x_over) x_over - x_in.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .diagram import WirtingerPresentation
from .quaternion import I as QI
from .quaternion import UnitQuaternion, commutator, conjugate_by

CERTIFIED = "certified"
HEURISTIC = "heuristic"

# canonical form: first image farther than this from the +-i axis fixes the gauge
_COLLINEAR_TOL = 1e-4
# a class hit by fewer seeds than this raises an incompleteness warning
_RARE_HITS = 3


class IncompleteEnumerationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SolverConfig:
    seeds: int | None = None  # None: default_seed_count(presentation)
    tol: float = 1e-10
    cluster_radius: float = 1e-6
    max_iters: int = 200
    rng_seed: int = 0
    backend: str | None = None

    def to_json(self) -> dict:
        return {
            "seeds": self.seeds,
            "tol": self.tol,
            "cluster_radius": self.cluster_radius,
            "max_iters": self.max_iters,
            "rng_seed": self.rng_seed,
        }


def default_seed_count(n_free: int) -> int:
    """4096 multistarts, growing as 4^(n-1) in the number of free generators, capped at 65536.

    ``SUTUREKIT_SEEDS`` overrides.
    """
    env = os.environ.get("SUTUREKIT_SEEDS")
    if env:
        return int(env)
    return int(min(65536, max(4096, 4 ** max(n_free - 1, 0))))


@dataclass(frozen=True)
class RepPoint:
    images: tuple[UnitQuaternion, ...]

    @classmethod
    def from_vectors(cls, vecs) -> "RepPoint":
        return cls(tuple(UnitQuaternion.pure(v) for v in np.asarray(vecs, dtype=float)))

    def vectors(self) -> np.ndarray:
        return np.array([q.vector() for q in self.images])

    def to_json(self) -> list[list[float]]:
        return [q.to_json() for q in self.images]


@dataclass(frozen=True)
class RepClass:
    representative: RepPoint
    residual_norm: float
    irreducible: bool
    nondegenerate: bool
    jacobian_rank: int
    orbit_dimension: int
    hits: int = 1

    def to_json(self) -> dict:
        return {
            "irreducible": self.irreducible,
            "nondegenerate": self.nondegenerate,
            "jacobian_rank": self.jacobian_rank,
            "orbit_dimension": self.orbit_dimension,
            "residual_norm": self.residual_norm,
            "hits": self.hits,
            "images": self.representative.to_json(),
        }


@dataclass
class Enumeration:
    """Output of :func:`solve_repvar`: the reducible first, then irreducible classes."""

    classes: list[RepClass]
    status: str = HEURISTIC
    seeds: int = 0
    converged: int = 0
    warnings: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def __getitem__(self, k):
        return self.classes[k]

    @property
    def n_irreducible(self) -> int:
        return sum(c.irreducible for c in self.classes)

    @property
    def complete(self) -> bool:
        return self.status == CERTIFIED

    def certify(self, oracle_count: int) -> bool:
        """Mark certified when an independent count agrees; returns the agreement."""
        ok = oracle_count == self.n_irreducible
        if ok:
            self.status = CERTIFIED
        else:
            self.warnings.append(
                f"oracle counts {oracle_count} irreducible classes, solver found {self.n_irreducible}"
            )
        return ok

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "n_irreducible": self.n_irreducible,
            "seeds": self.seeds,
            "converged": self.converged,
            "warnings": list(self.warnings),
            "classes": [c.to_json() for c in self.classes],
        }


@dataclass(frozen=True)
class CriticalPointModel:
    n_irreducible_classes: int
    points: int
    circles: int
    khi_dim_upper: int
    tainted: bool = False

    def to_json(self) -> dict:
        return {
            "n_irreducible_classes": self.n_irreducible_classes,
            "points": self.points,
            "circles": self.circles,
            "khi_dim_upper": self.khi_dim_upper,
            "tainted": self.tainted,
        }


def _relation_array(p: WirtingerPresentation) -> np.ndarray:
    return np.array(
        [[r.incoming, r.outgoing, r.over] for r in p.crossing_relations], dtype=np.int64
    ).reshape(-1, 3)


def residual(r: RepPoint, p: WirtingerPresentation) -> np.ndarray:
    """Imaginary parts of  x_out - x_over^s x_in x_over^-s,  three per relation."""
    if len(r.images) != p.n_generators:
        raise ValueError(
            f"point has {len(r.images)} images, presentation has {p.n_generators} generators"
        )
    q = np.array([im.as_array() for im in r.images])
    out = []
    for rel in p.crossing_relations:
        conj = conjugate_by(q[rel.over], q[rel.incoming], rel.sign)
        out.append((q[rel.outgoing] - conj)[1:])
    return np.concatenate(out) if out else np.zeros(0)


def tangent_jacobian(vecs: np.ndarray, p: WirtingerPresentation) -> np.ndarray:
    """Residual Jacobian restricted to the tangent planes of the free generators."""
    x = np.asarray(vecs, dtype=float)[None]
    rel = _relation_array(p)
    if rel.shape[0] == 0 or x.shape[1] == 1:
        return np.zeros((3 * rel.shape[0], 2 * (x.shape[1] - 1)))
    from ._lm_fallback import jacobian, tangent_frames

    u, v = tangent_frames(x)
    return jacobian(x, rel, u, v)[0]


def jacobian_rank(vecs: np.ndarray, p: WirtingerPresentation, rtol: float = 1e-7) -> tuple[int, int]:
    """(rank, number of tangent directions) of the tangent Jacobian."""
    jac = tangent_jacobian(vecs, p)
    ncols = jac.shape[1]
    if jac.size == 0:
        return 0, ncols
    sv = np.linalg.svd(jac, compute_uv=False)
    thresh = rtol * max(1.0, sv[0])
    return int(np.sum(sv > thresh)), ncols


def reducible_point(p: WirtingerPresentation) -> RepClass:
    """The abelian representation: every generator goes to i.  Always non-degenerate."""
    vecs = np.tile([1.0, 0.0, 0.0], (p.n_generators, 1))
    pt = RepPoint.from_vectors(vecs)
    rank, _ = jacobian_rank(vecs, p)
    return RepClass(
        representative=pt,
        residual_norm=float(np.linalg.norm(residual(pt, p))),
        irreducible=False,
        nondegenerate=True,
        jacobian_rank=rank,
        orbit_dimension=0,
    )


def rotate_about_i(vecs: np.ndarray, angle: float) -> np.ndarray:
    """Apply the rotation by ``angle`` about the i axis to every image."""
    c, s = math.cos(angle), math.sin(angle)
    out = np.array(vecs, dtype=float, copy=True)
    y, z = out[..., 1].copy(), out[..., 2].copy()
    out[..., 1] = c * y - s * z
    out[..., 2] = s * y + c * z
    return out


def canonical_form(vecs: np.ndarray) -> np.ndarray | None:
    """Gauge-fix the stabilizer circle: first image off the i axis gets y = 0, z > 0.

    Returns None when every image lies on the i axis (the reducible).
    """
    vecs = np.asarray(vecs, dtype=float)
    off = np.hypot(vecs[:, 1], vecs[:, 2])
    idx = np.nonzero(off > _COLLINEAR_TOL)[0]
    if idx.size == 0:
        return None
    g = idx[0]
    angle = math.pi / 2 - math.atan2(vecs[g, 2], vecs[g, 1])
    out = rotate_about_i(vecs, angle)
    out[g, 1] = 0.0
    return out


def _sample_starts(n: int, seeds: int, rng_seed: int) -> np.ndarray:
    rng = np.random.default_rng(rng_seed)
    st = rng.standard_normal((seeds, n, 3))
    st /= np.linalg.norm(st, axis=-1, keepdims=True)
    st[:, 0] = (1.0, 0.0, 0.0)
    return st


def _cluster(forms: list[np.ndarray], resid: list[float], radius: float):
    """Greedy clustering in a canonical (lexicographic) order; deterministic."""
    order = sorted(range(len(forms)), key=lambda k: tuple(np.round(forms[k].ravel(), 9)))
    reps: list[int] = []
    members: list[list[int]] = []
    for k in order:
        for ci, rk in enumerate(reps):
            if np.linalg.norm(forms[k] - forms[rk]) <= radius:
                members[ci].append(k)
                break
        else:
            reps.append(k)
            members.append([k])
    out = []
    for mem in members:
        best = min(mem, key=lambda k: (resid[k], k))
        out.append((best, len(mem)))
    return out


def solve_repvar(p: WirtingerPresentation, cfg: SolverConfig | None = None) -> Enumeration:
    """Multistart Levenberg-Marquardt enumeration of Rep(K, i) modulo the stabilizer circle."""
    cfg = cfg or SolverConfig()
    red = reducible_point(p)
    n = p.n_generators
    rel = _relation_array(p)
    if n == 1 or rel.shape[0] == 0:
        # one generator: the pinned meridian is the whole representation
        return Enumeration([red], status=CERTIFIED, seeds=0, converged=0)

    seeds = cfg.seeds if cfg.seeds is not None else default_seed_count(n - 1)
    starts = _sample_starts(n, seeds, cfg.rng_seed)
    pts, res, _ = kernels.lm_batch(starts, rel, cfg.max_iters, cfg.tol, backend=cfg.backend)
    ok = np.nonzero(res <= cfg.tol)[0]

    forms, resid = [], []
    for k in ok:
        f = canonical_form(pts[k])
        if f is not None:
            forms.append(f)
            resid.append(float(res[k]))

    classes = [red]
    warn = []
    for k, hits in _cluster(forms, resid, cfg.cluster_radius):
        vecs = forms[k]
        pt = RepPoint.from_vectors(vecs)
        rank, ncols = jacobian_rank(vecs, p)
        classes.append(
            RepClass(
                representative=pt,
                residual_norm=float(np.linalg.norm(residual(pt, p))),
                irreducible=True,
                nondegenerate=(ncols - rank) == 1,
                jacobian_rank=rank,
                orbit_dimension=1,
                hits=hits,
            )
        )
        if hits < _RARE_HITS:
            warn.append(f"irreducible class found by only {hits} seed(s); enumeration may be incomplete")
    if ok.size < seeds // 2:
        warn.append(f"only {ok.size} of {seeds} seeds converged")
    for msg in warn:
        warnings.warn(msg, IncompleteEnumerationWarning, stacklevel=2)
    return Enumeration(classes, status=HEURISTIC, seeds=seeds, converged=int(ok.size), warnings=warn)


def critical_point_model(classes) -> CriticalPointModel:
    """Two points for the reducible and two circles per irreducible class; rank bound 2n + 1."""
    n = sum(1 for c in classes if c.irreducible)
    tainted = isinstance(classes, Enumeration) and not classes.complete
    return CriticalPointModel(
        n_irreducible_classes=n,
        points=2,
        circles=2 * n,
        khi_dim_upper=2 * n + 1,
        tainted=tainted,
    )


def boundary_holonomy(theta: float) -> tuple[UnitQuaternion, UnitQuaternion]:
    """Holonomies (J2, [J3, J1]) on the boundary torus of F x S^1.

    J1 = j, J2 = i, J3 = cos(theta) + i sin(theta); the commutator is
    cos(2 theta) + i sin(2 theta), so theta and theta + pi give the same pair.
    """
    j1 = UnitQuaternion(0.0, 0.0, 1.0, 0.0)
    j3 = UnitQuaternion(math.cos(theta), math.sin(theta), 0.0, 0.0)
    return QI, commutator(j3, j1)
