"""Characteristic maps of the basic cells and their inverses.

Parameters are flat float vectors concatenating the disc factors:

    k=3: x (3)            k=5: x (3), y (2)
    k=6: x, y, z (1)      k=7: x, y, w (2)

Each basic cell has a sphere it projects onto and a basepoint where its
boundary collapses: p(g) = pi(g)e1 for k=6, p0(g) = g e0 for k=7, and the
stage projections g e2 (k=5) and g e4 (k=3) inside SU(3) and SU(2).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache

import numpy as np

from .cayley import basis
from .errors import BoundaryError, DomainError, InconsistencyError, NumericError
from .gauss_newton import gauss_newton
from .groups import DISC_SLACK, generator_matrix, proj_p, proj_p0

ORDER = (6, 7, 5, 3)
DOMAINS = {3: (3,), 5: (3, 2), 6: (3, 2, 1), 7: (3, 2, 2)}
BASEPOINT = {6: 1, 7: 0, 5: 2, 3: 4}
# coordinates spanned by the stage sphere
STAGE_SPAN = {6: slice(1, 8), 7: slice(0, 8), 5: slice(2, 8), 3: slice(4, 8)}

EPS_BASE = 1e-6
MARGIN = 0.05
RESIDUAL_TOL = 1e-10
N_STARTS = 8
POOL_SIZE = 64


SLICES = {
    k: [slice(a, b) for a, b in zip(np.cumsum((0,) + dims)[:-1], np.cumsum(dims))]
    for k, dims in DOMAINS.items()
}


def nparams(k: int) -> int:
    return sum(DOMAINS[k])


def split(k: int, v) -> list[np.ndarray]:
    if k not in DOMAINS:
        raise DomainError(f"no characteristic map of dimension {k}")
    v = np.asarray(v, dtype=float).ravel()
    if v.size != nparams(k):
        raise DomainError(f"phi{k} takes {nparams(k)} parameters, got {v.size}")
    parts = [v[sl] for sl in SLICES[k]]
    for p in parts:
        if p @ p > 1.0 + DISC_SLACK:
            raise DomainError(f"phi{k} parameter block {p} outside the unit disc")
    return parts


def sample_disc(rng, n, radius=1.0):
    v = rng.normal(size=n)
    return v / np.linalg.norm(v) * radius * rng.uniform() ** (1.0 / n)


def sample_interior(k: int, rng, margin: float = MARGIN) -> np.ndarray:
    return np.concatenate([sample_disc(rng, n, 1.0 - margin) for n in DOMAINS[k]])


def char_map(k: int, v) -> np.ndarray:
    parts = split(k, v)
    a = generator_matrix("A", parts[0])
    if k == 3:
        return a
    b = generator_matrix("B", parts[1])
    g = b @ a @ b.T
    if k == 5:
        return g
    outer = generator_matrix("C" if k == 6 else "D", parts[2])
    return outer @ g @ outer.T


def stage_projection(k: int, g) -> np.ndarray:
    g = np.asarray(g, float)
    if k == 6:
        return proj_p(g)
    if k == 7:
        return proj_p0(g)
    return g[:, BASEPOINT[k]].copy()


def invert_p0_phi7(a, eps: float = EPS_BASE) -> np.ndarray:
    """Closed-form inverse of v -> phi7(v) e0 on the interior of V^7."""
    a = np.asarray(a, dtype=float)
    b = 1.0 - a[0]
    s1 = b * b + a[1] ** 2
    s2 = s1 + a[2] ** 2 + a[3] ** 2
    s3 = s2 + a[4] ** 2 + a[5] ** 2
    if b < eps or s1 < eps * eps:
        raise BoundaryError("target is the basepoint e0 of phi7")
    x1 = a[1] * np.sqrt(s3) / np.sqrt(2 * b * s1)
    x2 = a[6] / np.sqrt(2 * b)
    x3 = a[7] / np.sqrt(2 * b)
    r13 = np.sqrt(s1 * s3)
    y1 = (a[1] * a[5] - b * a[4]) / r13
    y2 = (a[1] * a[4] + b * a[5]) / r13
    r12 = np.sqrt(s1 * s2)
    w1 = (b * a[2] - a[1] * a[3]) / r12
    w2 = (-a[1] * a[2] - b * a[3]) / r12
    return np.array([x1, x2, x3, y1, y2, w1, w2])


def _to_ball(k, u):
    v = np.empty_like(u)
    for sl in SLICES[k]:
        v[sl] = u[sl] / np.sqrt(1.0 + u[sl] @ u[sl])
    return v


@cache
def _start_pool(k: int) -> tuple:
    rng = np.random.default_rng(1000 + k)
    return (np.zeros(nparams(k)),) + tuple(rng.normal(size=nparams(k)) for _ in range(POOL_SIZE - 1))


def invert_chart_numeric(k: int, target, eps: float = EPS_BASE,
                         tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Interior parameters v with stage_projection(k, char_map(k, v)) = target.

    Solved by damped Gauss-Newton in unconstrained coordinates u, each disc
    factor mapped onto the open ball by u / sqrt(1 + |u|^2).  Starts are
    the best ``N_STARTS`` points of a fixed seeded pool.
    """
    if k not in (3, 5, 6):
        raise DomainError(f"numeric inversion is provided for k in (3, 5, 6), not {k}")
    target = np.asarray(target, dtype=float)
    if np.linalg.norm(target - basis(BASEPOINT[k])) < eps:
        raise BoundaryError(f"target is the basepoint e{BASEPOINT[k]} of phi{k}")

    def residual(u):
        return stage_projection(k, char_map(k, _to_ball(k, u))) - target

    starts = sorted(_start_pool(k), key=lambda u: float(np.sum(residual(u) ** 2)))
    best = None
    for u0 in starts[:N_STARTS]:
        res = gauss_newton(residual, u0)
        if best is None or res.residual < best.residual:
            best = res
        if res.residual <= tol:
            return _to_ball(k, res.x)
    raise NumericError(f"phi{k} inversion stalled at residual {best.residual:.2e}")


@dataclass(frozen=True)
class CellLabel:
    """A product cell e^{i}e^{j}... named by its generators in canonical order."""

    gens: tuple = ()

    def __post_init__(self):
        if any(g not in ORDER for g in self.gens) or len(set(self.gens)) != len(self.gens):
            raise DomainError(f"invalid cell generators {self.gens}")
        object.__setattr__(self, "gens", tuple(g for g in ORDER if g in self.gens))

    @classmethod
    def from_dim(cls, dim: int, generators=ORDER) -> "CellLabel":
        hits = [c for c in subsets(generators) if c.dim == dim]
        if len(hits) != 1:
            raise DomainError(f"no unique cell of dimension {dim}")
        return hits[0]

    @property
    def dim(self) -> int:
        return sum(self.gens)

    @property
    def word(self) -> str:
        return "".join(f"e^{g}" for g in self.gens) or "e^0"

    def __str__(self):
        return f"e^{self.dim}"


def subsets(generators=ORDER) -> list[CellLabel]:
    gens = tuple(generators)
    return [CellLabel(c) for r in range(len(gens) + 1) for c in itertools.combinations(gens, r)]


def chart_product(gens, params) -> np.ndarray:
    g = np.eye(8)
    for k, v in zip(gens, params):
        g = g @ char_map(k, v)
    return g


@dataclass
class Factorization:
    label: CellLabel
    params: list
    residual: float

    def matrix(self) -> np.ndarray:
        return chart_product(self.label.gens, self.params)


def factorize(g, tol: float = 1e-7, eps: float = EPS_BASE, stages=ORDER) -> Factorization:
    """Peel basic cells off ``g`` in the order 6, 7, 5, 3.

    At each stage the projection of the current residue is compared with
    the stage basepoint; if it differs by more than ``eps`` the unique
    interior chart point above it is found and divided off on the left.
    """
    g = np.array(g, dtype=float)
    gens, params = [], []
    for k in stages:
        t = stage_projection(k, g)
        span = STAGE_SPAN[k]
        if np.linalg.norm(t - basis(BASEPOINT[k])) <= eps:
            continue
        t_stage = np.zeros(8)
        t_stage[span] = t[span]
        t_stage /= np.linalg.norm(t_stage)
        v = invert_p0_phi7(t_stage, eps) if k == 7 else invert_chart_numeric(k, t_stage, eps)
        g = char_map(k, v).T @ g
        gens.append(k)
        params.append(v)
    residual = float(np.max(np.abs(g - np.eye(8))))
    if residual > tol:
        raise InconsistencyError(
            f"residue after peeling {gens} is {residual:.2e} from the identity")
    return Factorization(CellLabel(tuple(gens)), params, residual)
