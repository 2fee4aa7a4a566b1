"""Reflection transversal of the point stabilizer in O(n), realised on the unit sphere.

Isometries act on row vectors, ``apply(T, z) = z @ T.matrix``, so the matrix
of a product ``T1 T2`` (first T1, then T2) is ``T1.matrix @ T2.matrix``.  With
``J`` the reflection fixing the ``e0`` axis and ``u = (e0 + x)/|e0 + x|``,

    R_x(z) = (2 P_u - I)(J(z)),     R_{-e0} = -I,

which is the unique ordering that sends ``e0`` to ``x``.  The quasigroup is
``x o y = R_y(x)`` and left division undoes the two involutions in reverse.

Every array function broadcasts over leading axes; the last axis is the
coordinate axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

BRANCH_TOL = 1e-9
ILL_CONDITIONED = 1e-6
UNIT_TOL = 1e-9
ORTHO_TOL = 1e-10


def basis(n: int, i: int = 0) -> np.ndarray:
    v = np.zeros(n)
    v[i] = 1.0
    return v


def as_unit(v, tol: float = UNIT_TOL) -> np.ndarray:
    """Check |v| = 1 within ``tol`` and return the renormalised vector."""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(np.abs(norm - 1.0) > tol):
        raise ValueError(f"not a unit vector (norm {norm.ravel()})")
    return v / norm


def random_unit(n: int, size=None, rng=None) -> np.ndarray:
    """Uniform points on S^{n-1}: normalised Gaussians."""
    rng = np.random.default_rng(rng)
    shape = (n,) if size is None else tuple(np.atleast_1d(size)) + (n,)
    g = rng.standard_normal(shape)
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def _dot(a, b):
    return np.sum(a * b, axis=-1, keepdims=True)


@dataclass(frozen=True, eq=False)
class Isometry:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        err = np.max(np.abs(m.T @ m - np.eye(m.shape[0])))
        if err > ORTHO_TOL:
            raise ValueError(f"matrix is not orthogonal (error {err:.3g})")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, z) -> np.ndarray:
        return np.asarray(z, dtype=float) @ self.matrix

    def then(self, other: "Isometry") -> "Isometry":
        """The product ``self . other``: apply self, then other."""
        return Isometry(self.matrix @ other.matrix)


def apply(T: Isometry, z) -> np.ndarray:
    return T.apply(z)


def proj(a, x) -> np.ndarray:
    """Orthogonal projection of x onto the line through a."""
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    na = np.linalg.norm(a, axis=-1, keepdims=True)
    if np.any(na <= 1e-12):
        raise ValueError("projection axis is (numerically) zero")
    u = a / na
    return _dot(x, u) * u


def j_map(x, e0) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return 2.0 * _dot(x, e0) * e0 - x


def reflect_line(u, x) -> np.ndarray:
    """(2 P_u - I)(x) for a unit vector u."""
    return 2.0 * _dot(x, u) * u - x


def _axis(x, e0, tol):
    """Axis of the reflection in R_x and the mask of points on the -e0 branch.

    Returns an unnormalised vector ``s`` parallel to ``e0 + x/|x|``, its squared
    norm, the branch mask and ``|e0 + x/|x||``.  The e0-component ``|x| + x0``
    is formed as ``|x_perp|^2 / (|x| - x0)`` when x0 < 0 to avoid cancellation,
    so the axis stays accurate right up to the branch point.  Exact cancellation
    needs e0 to be a coordinate vector; any other e0 still works, less sharply.
    """
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1, keepdims=True)
    x0 = _dot(x, e0)
    perp = x - x0 * e0
    p2 = np.sum(perp * perp, axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(x0 >= 0, r + x0, p2 / (r - x0))
    s = q * e0 + perp
    s2 = np.sum(s * s, axis=-1, keepdims=True)
    d = np.sqrt(s2) / r
    branch = d <= tol
    s = np.where(branch, e0, s)
    s2 = np.where(branch, 1.0, s2)
    return s, s2, branch, d


def _reflect(s, s2, w):
    return 2.0 * _dot(w, s) / s2 * s - w


def _e0_for(x, e0):
    x = np.asarray(x, dtype=float)
    return basis(x.shape[-1]) if e0 is None else np.asarray(e0, dtype=float)


def r_map(x, e0=None, tol: float = BRANCH_TOL) -> Isometry:
    x = np.asarray(x, dtype=float)
    e0 = _e0_for(x, e0)
    n = x.shape[-1]
    s, s2, branch, _ = _axis(x, e0, tol)
    if branch.item():
        return Isometry(-np.eye(n))
    J = 2.0 * np.outer(e0, e0) - np.eye(n)
    refl = 2.0 * np.outer(s, s) / s2 - np.eye(n)
    return Isometry(J @ refl)


def circ(x, y, e0=None, tol: float = BRANCH_TOL, renormalize: bool = True) -> np.ndarray:
    """x o y = R_y(x); ``-x`` when y = -e0."""
    x = np.asarray(x, dtype=float)
    e0 = _e0_for(x, e0)
    s, s2, branch, _ = _axis(y, e0, tol)
    out = np.where(branch, -x, _reflect(s, s2, j_map(x, e0)))
    if renormalize:
        out = out / np.linalg.norm(out, axis=-1, keepdims=True)
    return out


def chi_sphere(x, y, e0=None, tol: float = BRANCH_TOL) -> np.ndarray:
    """The z with z o x = y."""
    y = np.asarray(y, dtype=float)
    e0 = _e0_for(y, e0)
    s, s2, branch, _ = _axis(x, e0, tol)
    return np.where(branch, -y, j_map(_reflect(s, s2, y), e0))


def conditioning(x, e0=None) -> np.ndarray:
    """'branch', 'ill' (|e0+x| in the unstable annulus) or 'ok' per point."""
    x = np.asarray(x, dtype=float)
    e0 = _e0_for(x, e0)
    d = _axis(x, e0, BRANCH_TOL)[3][..., 0]
    return np.where(d <= BRANCH_TOL, "branch", np.where(d < ILL_CONDITIONED, "ill", "ok"))


def coset_consistency(x, y, e0=None) -> float:
    """|R_y(R_x(e0)) - x o y|; both isometries R_x R_y and R_{x o y} send e0 to x o y."""
    x = np.asarray(x, dtype=float)
    e0 = _e0_for(x, e0)
    lhs = r_map(y, e0).apply(r_map(x, e0).apply(e0))
    return float(np.linalg.norm(lhs - circ(x, y, e0, renormalize=False)))


def coset_residuals(x, y, e0=None) -> np.ndarray:
    """Batched coset consistency, using R_x(e0) built from its closed form."""
    x = np.asarray(x, dtype=float)
    e0 = _e0_for(x, e0)
    sx, sx2, bx, _ = _axis(x, e0, BRANCH_TOL)
    rx_e0 = np.where(bx, -e0, _reflect(sx, sx2, j_map(np.broadcast_to(e0, x.shape), e0)))
    sy, sy2, by, _ = _axis(y, e0, BRANCH_TOL)
    lhs = np.where(by, -rx_e0, _reflect(sy, sy2, j_map(rx_e0, e0)))
    return np.linalg.norm(lhs - circ(x, y, e0, renormalize=False), axis=-1)


def section_residuals(x, e0=None) -> np.ndarray:
    """|R_x(e0) - x| for a batch of x."""
    x = np.asarray(x, dtype=float)
    e0 = _e0_for(x, e0)
    s, s2, branch, _ = _axis(x, e0, BRANCH_TOL)
    img = np.where(branch, -e0, _reflect(s, s2, j_map(np.broadcast_to(e0, x.shape), e0)))
    return np.linalg.norm(img - x, axis=-1)


def discontinuity_witness(n: int, eps_sequence: Sequence[float]) -> list[dict]:
    """Distances |R_{x_eps}(e2) - R_{-e0}(e2)| along x_eps -> -e0.

    x_eps = -cos(eps) e0 + sin(eps) e1.  The distance stays at 2 while the
    image of e0 itself tends to -e0, so the jump is in the section, not in x.
    """
    if n < 3:
        raise ValueError("discontinuity witness needs n >= 3")
    e0, e1, e2 = basis(n, 0), basis(n, 1), basis(n, 2)
    minus = r_map(-e0, e0)
    rows = []
    for eps in eps_sequence:
        x = -np.cos(eps) * e0 + np.sin(eps) * e1
        R = r_map(x, e0)
        rows.append({
            "eps": float(eps),
            "distance": float(np.linalg.norm(R.apply(e2) - minus.apply(e2))),
            "e0_distance": float(np.linalg.norm(R.apply(e0) - minus.apply(e0))),
            "gap_to_minus_e0": float(np.linalg.norm(e0 + x)),
            "conditioning": str(conditioning(x, e0)),
        })
    return rows


def continuity_probe(n: int, samples: int, delta: float, seed: int,
                     margin: float = 0.1) -> dict:
    """Empirical local modulus of o away from y = -e0.

    Pairs with |y + e0| < margin are excluded from the modulus and counted;
    for those, the jump |x o y' - x o (-e0)| with y' -> -e0 is recorded.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    report = {"n": n, "samples": samples, "delta": delta, "seed": seed, "margin": margin,
              "max_modulus": None, "excluded": 0, "max_jump_near_minus_e0": None}
    if samples == 0:
        return report
    rng = np.random.default_rng(seed)
    e0 = basis(n)
    x = random_unit(n, samples, rng)
    y = random_unit(n, samples, rng)
    x2 = x + delta * rng.standard_normal(x.shape)
    y2 = y + delta * rng.standard_normal(y.shape)
    x2 /= np.linalg.norm(x2, axis=-1, keepdims=True)
    y2 /= np.linalg.norm(y2, axis=-1, keepdims=True)
    far = (np.linalg.norm(y + e0, axis=-1) >= margin) & (np.linalg.norm(y2 + e0, axis=-1) >= margin)
    num = np.linalg.norm(circ(x2, y2) - circ(x, y), axis=-1)
    den = np.sqrt(np.sum((x2 - x) ** 2, axis=-1) + np.sum((y2 - y) ** 2, axis=-1))
    moved = far & (den > 0)
    ratio = num[moved] / den[moved]
    report["max_modulus"] = float(ratio.max()) if ratio.size else None
    report["excluded"] = int((~far).sum())
    near = ~far
    if near.any():
        jump = np.linalg.norm(circ(x[near], y[near]) - circ(x[near], -e0), axis=-1)
        report["max_jump_near_minus_e0"] = float(jump.max())
    return report


def nonassociativity_witness(n: int, seed: int, budget: int = 100,
                             threshold: float = 0.1) -> Optional[tuple]:
    """A triple with |(x o y) o z - x o (y o z)| > threshold, or None.

    S^0 = {e0, -e0} is checked exhaustively (it is Z2, so no witness).
    """
    if n == 1:
        pts = [np.array([1.0]), np.array([-1.0])]
        for a in pts:
            for b in pts:
                for c in pts:
                    res = float(np.linalg.norm(circ(circ(a, b), c) - circ(a, circ(b, c))))
                    if res > threshold:
                        return a, b, c, res
        return None
    if n < 3:
        raise ValueError("random witness search needs n >= 3")
    rng = np.random.default_rng(seed)
    x, y, z = (random_unit(n, budget, rng) for _ in range(3))
    res = np.linalg.norm(circ(circ(x, y), z) - circ(x, circ(y, z)), axis=-1)
    hit = np.nonzero(res > threshold)[0]
    if len(hit) == 0:
        return None
    i = hit[0]
    return x[i], y[i], z[i], float(res[i])
