"""Real, complex, quaternion and octonion multiplication by Cayley-Dickson doubling.

Elements are arrays whose last axis has length 1, 2, 4 or 8.  Doubling rule:

    (a, b)(c, d) = (a c - conj(d) b,  d a + b conj(c)),   conj(a, b) = (conj(a), -b)

With this rule basis index 1, 2, 3 of the quaternions behave as i, j, k
(``i j = k``).  Dimension 1 accepts integer arrays and stays exact.
"""

from __future__ import annotations

import itertools

import numpy as np

DIMS = (1, 2, 4, 8)


def _check_dim(d: int):
    if d not in DIMS:
        raise ValueError(f"dimension must be one of {DIMS}, got {d}")


def conj(a) -> np.ndarray:
    a = np.asarray(a)
    d = a.shape[-1]
    if d == 1:
        return a.copy()
    h = d // 2
    return np.concatenate([conj(a[..., :h]), -a[..., h:]], axis=-1)


def mul(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    _check_dim(a.shape[-1])
    return _mul(a, b)


def _mul(a, b):
    d = a.shape[-1]
    if d == 1:
        return a * b
    h = d // 2
    p, q = a[..., :h], a[..., h:]
    r, s = b[..., :h], b[..., h:]
    return np.concatenate([_mul(p, r) - _mul(conj(s), q), _mul(s, p) + _mul(q, conj(r))], axis=-1)


def norm(a) -> np.ndarray:
    return np.linalg.norm(np.asarray(a, dtype=float), axis=-1)


def inv(a) -> np.ndarray:
    a = np.asarray(a)
    sq = np.sum(a * a, axis=-1, keepdims=True)
    if np.any(sq <= 1e-24):
        raise ValueError("cannot invert a (numerically) zero element")
    if a.shape[-1] == 1 and np.issubdtype(a.dtype, np.integer) and np.all(sq == 1):
        return a.copy()
    return conj(a) / sq


def one(dim: int) -> np.ndarray:
    _check_dim(dim)
    v = np.zeros(dim)
    v[0] = 1.0
    return v


def unit_basis(dim: int, i: int) -> np.ndarray:
    v = np.zeros(dim)
    v[i] = 1.0
    return v


def chi_division(x, y) -> np.ndarray:
    """Left division on the unit sphere: the z with z x = y, namely y x^-1."""
    return mul(y, inv(x))


def random_units(dim: int, size: int, rng) -> np.ndarray:
    if dim == 1:
        return rng.choice(np.array([-1, 1]), size=(size, 1))
    g = rng.standard_normal((size, dim))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def associator(a, b, c) -> np.ndarray:
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def basis_associativity_witness(dim: int):
    """Basis triple with the largest associator, or None if all vanish."""
    _check_dim(dim)
    best = None
    for i, j, k in itertools.product(range(1, dim), repeat=3):
        r = float(norm(associator(unit_basis(dim, i), unit_basis(dim, j), unit_basis(dim, k))))
        if r > 0 and (best is None or r > best[3]):
            best = (i, j, k, r)
    return best


def basis_commutativity_witness(dim: int):
    for i, j in itertools.combinations(range(1, dim), 2):
        a, b = unit_basis(dim, i), unit_basis(dim, j)
        r = float(norm(mul(a, b) - mul(b, a)))
        if r > 0:
            return i, j, r
    return None


def _max(v) -> float:
    v = np.asarray(v, dtype=float)
    return float(v.max()) if v.size else 0.0


def quasigroup_laws_report(dim: int, samples: int, seed: int) -> dict:
    """Residuals of the right-quasigroup laws on the unit sphere of the algebra."""
    _check_dim(dim)
    rng = np.random.default_rng(seed)
    x = random_units(dim, samples, rng)
    y = random_units(dim, samples, rng)
    z = random_units(dim, samples, rng)
    e = one(dim).astype(x.dtype) if dim == 1 else one(dim)
    residuals = {
        "left_identity": _max(norm(mul(e, x) - x)),
        "right_identity": _max(norm(mul(x, e) - x)),
        "norm_multiplicative": _max(np.abs(norm(mul(x, y)) - norm(x) * norm(y))),
        "unit_closure": _max(np.abs(norm(mul(x, y)) - 1.0)),
        "right_inverse_cancel": _max(norm(mul(mul(x, inv(y)), y) - x)),
        "inverse_antihomomorphism": _max(norm(inv(mul(y, z)) - mul(inv(z), inv(y)))),
        "left_division": _max(norm(mul(chi_division(x, y), x) - y)),
        "left_division_unique": _max(norm(chi_division(x, mul(z, x)) - z)),
        "inverse": _max(norm(mul(x, inv(x)) - e)),
    }
    if dim == 8:
        residuals["left_alternative"] = _max(norm(mul(x, mul(x, y)) - mul(mul(x, x), y)))
        residuals["right_alternative"] = _max(norm(mul(mul(y, x), x) - mul(y, mul(x, x))))
    sampled_assoc = _max(norm(associator(x, y, z)))
    witness = basis_associativity_witness(dim)
    comm = basis_commutativity_witness(dim)
    return {
        "dim": dim,
        "sphere": dim - 1,
        "samples": samples,
        "seed": seed,
        "residuals": residuals,
        "max_residual": max(residuals.values()) if residuals else 0.0,
        "associative": witness is None,
        "sampled_max_associator": sampled_assoc,
        "associativity_witness": None if witness is None else
            {"basis": list(witness[:3]), "residual": witness[3]},
        "commutative": comm is None,
        "commutativity_witness": None if comm is None else {"basis": list(comm[:2]), "residual": comm[2]},
    }
