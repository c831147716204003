"""Generator matrices and membership tests for SO(8) subgroups.

Matrices act on column vectors in the basis e0..e7, so ``M[:, j]`` is the
image of e_j.  Membership in G2 and Spin(7) is decided by sampling the
defining identities on random unit octonions; the identities are
polynomial, so agreement on a few dozen generic pairs at 1e-9 leaves no
practical doubt.
"""
from __future__ import annotations

import numpy as np

from .cayley import basis, inverse, left_mul_matrix, mul
from .errors import DomainError

TOL = 1e-9
NSAMPLES = 64
DISC_SLACK = 1e-12
# 1 - |p|^2 below this is rounding noise of a point on the sphere; sqrt would turn it into ~1e-8
RADICAL_FLOOR = 8 * np.finfo(float).eps

GENERATOR_DIMS = {"A": 3, "B": 2, "C": 1, "D": 2, "Dprime": 2}

# C-basis of the octonions as a C^4, C acting by left multiplication by e1
COMPLEX_BASIS = (0, 2, 4, 6)


def _disc_params(params, dim):
    p = np.atleast_1d(np.asarray(params, dtype=float))
    if p.shape != (dim,):
        raise DomainError(f"expected {dim} parameters, got shape {p.shape}")
    r2 = float(p @ p)
    if r2 > 1.0 + DISC_SLACK:
        raise DomainError(f"parameters {p} lie outside the closed unit disc")
    gap = 1.0 - r2
    return p, (np.sqrt(gap) if gap > RADICAL_FLOOR else 0.0)


def generator_matrix(kind: str, params) -> np.ndarray:
    if kind not in GENERATOR_DIMS:
        raise DomainError(f"unknown generator {kind!r}")
    p, R = _disc_params(params, GENERATOR_DIMS[kind])
    M = np.eye(8)
    if kind == "A":
        x1, x2, x3 = p
        c = 1 - 2 * R * R
        M[4:, 4:] = [
            [c, -2 * x1 * R, -2 * x2 * R, -2 * x3 * R],
            [2 * x1 * R, c, 2 * x3 * R, -2 * x2 * R],
            [2 * x2 * R, -2 * x3 * R, c, 2 * x1 * R],
            [2 * x3 * R, 2 * x2 * R, -2 * x1 * R, c],
        ]
    elif kind == "B":
        y1, y2 = p
        M[2:6, 2:6] = [
            [y1, -y2, -R, 0],
            [y2, y1, 0, -R],
            [R, 0, y1, y2],
            [0, R, -y2, y1],
        ]
    elif kind == "C":
        (z1,) = p
        block = [[z1, 0, -R], [0, 1, 0], [R, 0, z1]]
        M[1:4, 1:4] = block
        M[5:8, 5:8] = block
    elif kind == "D":
        w1, w2 = p
        M[0:4, 0:4] = [
            [w1, -w2, -R, 0],
            [w2, w1, 0, -R],
            [R, 0, w1, w2],
            [0, R, -w2, w1],
        ]
    else:
        w1, w2 = p
        M[4:8, 4:8] = [
            [w1, -w2, R, 0],
            [w2, w1, 0, -R],
            [-R, 0, w1, -w2],
            [0, R, w2, w1],
        ]
    return M


def is_special_orthogonal(M, tol: float = TOL) -> bool:
    M = np.asarray(M, float)
    if M.shape != (8, 8):
        return False
    return bool(np.max(np.abs(M.T @ M - np.eye(8))) <= tol
                and abs(np.linalg.det(M) - 1.0) <= tol)


def random_unit_octonions(rng, n):
    v = rng.normal(size=(n, 8))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def vector_rep(gt) -> np.ndarray:
    """The SO(7) element x -> gt(x) * gt(e0)^-1 paired with gt."""
    gt = np.asarray(gt, float)
    return mul(gt.T, inverse(gt[:, 0])).T


def g2_defect(M, nsamples: int = NSAMPLES, rng=0) -> float:
    rng = np.random.default_rng(rng)
    x = random_unit_octonions(rng, nsamples)
    y = random_unit_octonions(rng, nsamples)
    lhs = mul(x @ M.T, y @ M.T)
    rhs = mul(x, y) @ M.T
    return float(np.max(np.abs(lhs - rhs)))


def is_g2(M, nsamples: int = NSAMPLES, tol: float = TOL, rng=0) -> bool:
    M = np.asarray(M, float)
    if np.max(np.abs(M[:, 0] - basis(0))) > tol:
        return False
    return g2_defect(M, nsamples, rng) <= tol


def spin7_violations(gt, nsamples: int = NSAMPLES, tol: float = TOL, rng=0) -> list[str]:
    """Names of the defining conditions of Spin(7) that ``gt`` fails."""
    gt = np.asarray(gt, float)
    if gt.shape != (8, 8):
        return ["shape"]
    out = []
    if not is_special_orthogonal(gt, tol):
        out.append("SO(8)")
    if abs(np.linalg.norm(gt[:, 0]) - 1.0) > tol:
        return out + ["unit gt(e0)"]
    g = vector_rep(gt)
    if np.max(np.abs(g[:, 0] - basis(0))) > tol:
        out.append("g fixes e0")
    if not is_special_orthogonal(g, tol):
        out.append("g in SO(7)")
    rng = np.random.default_rng(rng)
    x = random_unit_octonions(rng, nsamples)
    y = random_unit_octonions(rng, nsamples)
    lhs = mul(x @ g.T, y @ gt.T)
    rhs = mul(x, y) @ gt.T
    if np.max(np.abs(lhs - rhs)) > tol:
        out.append("g(x)gt(y) = gt(xy)")
    return out


def is_spin7(gt, nsamples: int = NSAMPLES, tol: float = TOL, rng=0) -> bool:
    return not spin7_violations(gt, nsamples, tol, rng)


def complex_matrix(M) -> np.ndarray:
    """4x4 complex matrix of a C-linear M on the basis e0, e2, e4, e6."""
    M = np.asarray(M, float)
    cols = [M[:, j] for j in COMPLEX_BASIS]
    return np.array([[c[i] + 1j * c[i + 1] for c in cols] for i in COMPLEX_BASIS])


def is_su4(M, tol: float = TOL) -> bool:
    M = np.asarray(M, float)
    J = left_mul_matrix(basis(1))
    if np.max(np.abs(M @ J - J @ M)) > tol:
        return False
    return bool(abs(np.linalg.det(complex_matrix(M)) - 1.0) <= tol)


def proj_p0(g) -> np.ndarray:
    return np.asarray(g, float)[:, 0].copy()


def proj_p(g) -> np.ndarray:
    g = np.asarray(g, float)
    return mul(g[:, 1], inverse(g[:, 0]))


def random_spin7(rng, nfactors: int = 8) -> np.ndarray:
    """Product of random generator matrices (not Haar distributed)."""
    rng = np.random.default_rng(rng)
    g = np.eye(8)
    for _ in range(nfactors):
        kind = rng.choice(["A", "B", "C", "D"])
        v = rng.normal(size=GENERATOR_DIMS[kind])
        v *= rng.uniform() ** (1 / v.size) / np.linalg.norm(v)
        g = g @ generator_matrix(kind, v)
    return g


def format_matrix(M) -> str:
    """Eight lines of eight whitespace-separated decimals."""
    return "".join(" ".join(f"{x: .17g}" for x in row) + "\n" for row in np.asarray(M, float))


def parse_matrix(text: str) -> np.ndarray:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    try:
        M = np.array([[float(x) for x in row] for row in rows])
    except ValueError as exc:
        raise DomainError(f"matrix text does not parse: {exc}") from None
    if M.shape != (8, 8):
        raise DomainError(f"expected 8 rows of 8 numbers, got {[len(r) for r in rows]}")
    if not np.all(np.isfinite(M)):
        raise DomainError("matrix has non-finite entries")
    return M
