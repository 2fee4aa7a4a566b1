"""Group torsion and the extension groups built from a right quasigroup alone.

Elements are pairs ``(h, x)``: ``h`` a permutation of S fixing the identity,
``x`` an index into S.  With ``x.k`` meaning ``k(x)``:

    f(x, y)(z)      = ldiv(x o y, (z o x) o y)
    sigma_x(h)(y)   = ldiv(h(x), h(y o x))
    (h, x)(k, y)    = (h . sigma_x(k) . f(k(x), y),  k(x) o y)
    (h, x)^-1       = (f(x', x)^-1 . sigma_x'(h^-1),  h^-1(x'))   with x' o x = e

and every permutation product is left to right (see :mod:`.perm`).  Taking
the H-part to be the torsion gives the group generated by S; taking the full
stabilizer of the identity gives the universal group.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

import numpy as np

from . import quasigroup as qg
from .perm import (DEFAULT_CLOSURE_CAP, DEFAULT_STABILIZER_CAP, CapExceeded, Perm, PermGroup,
                   PointStabilizer, compose, generate, inverse)
from .quasigroup import RightQuasigroup
from .transversal import FiniteGroup, Transversal, induced_quasigroup, phi

DEFAULT_TABLE_CAP = 5040


class ExtensionError(ValueError):
    pass


class ExtensionElement(NamedTuple):
    h: Perm
    x: int


def f_s(q: RightQuasigroup, x: int, y: int) -> Perm:
    xy = q.table[x][y]
    t = q.table
    return Perm._trusted(tuple(q.ldiv(xy, t[t[z][x]][y]) for z in range(q.n)))


def sigma(q: RightQuasigroup, x: int, h: Perm) -> Perm:
    e = q.identity
    if h[e] != e:
        raise ExtensionError(f"{h} does not fix the identity")
    hx = h[x]
    t = q.table
    return Perm._trusted(tuple(q.ldiv(hx, h[t[y][x]]) for y in range(q.n)))


def torsion_generators(q: RightQuasigroup) -> list[Perm]:
    return sorted({f_s(q, x, y) for x in range(q.n) for y in range(q.n)})


def torsion_group(q: RightQuasigroup, cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    return generate(q.n, torsion_generators(q), cap=cap)


class ExtensionGroup:
    """The group on pairs (h, x) with h in ``hpart`` and x in S.

    ``hpart`` is any object with ``degree``, ``order``, ``elements`` and
    membership; a :class:`PointStabilizer` keeps the universal group usable
    for products even when its elements are too many to list.
    """

    def __init__(self, base: RightQuasigroup, hpart, table_cap: int = DEFAULT_TABLE_CAP):
        if hpart.degree != base.n:
            raise ExtensionError("hpart degree must equal the quasigroup size")
        self.base = base
        self.hpart = hpart
        self.table_cap = table_cap
        self.ident = Perm.identity(base.n)
        self._f = {}
        self._sigma = {}
        self._elements = None
        self._index = None

    @property
    def order(self) -> int:
        return self.hpart.order * self.base.n

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"ExtensionGroup(n={self.base.n}, order={self.order})"

    @property
    def identity(self) -> ExtensionElement:
        return ExtensionElement(self.ident, self.base.identity)

    def f(self, x: int, y: int) -> Perm:
        key = (x, y)
        p = self._f.get(key)
        if p is None:
            p = self._f[key] = f_s(self.base, x, y)
        return p

    def sigma(self, x: int, h: Perm) -> Perm:
        key = (x, h)
        p = self._sigma.get(key)
        if p is None:
            p = self._sigma[key] = sigma(self.base, x, h)
        return p

    def __contains__(self, el) -> bool:
        h, x = el
        return 0 <= x < self.base.n and h in self.hpart

    def check(self, el) -> ExtensionElement:
        if el not in self:
            raise ExtensionError(f"{el} is not an element of this extension")
        return ExtensionElement(*el)

    def product(self, a, b) -> ExtensionElement:
        h, x = a
        k, y = b
        kx = k[x]
        hpart = compose(compose(h, self.sigma(x, k)), self.f(kx, y))
        return ExtensionElement(hpart, self.base.table[kx][y])

    def inverse(self, a) -> ExtensionElement:
        h, x = a
        xp = self.base.left_inverse(x)
        hi = inverse(h)
        return ExtensionElement(compose(inverse(self.f(xp, x)), self.sigma(xp, hi)), hi[xp])

    def embed(self, x: int) -> ExtensionElement:
        return ExtensionElement(self.ident, x)

    @property
    def elements(self) -> list[ExtensionElement]:
        if self._elements is None:
            if self.order > self.table_cap:
                raise CapExceeded(f"extension of order {self.order} exceeds cap {self.table_cap}")
            self._elements = [ExtensionElement(h, x) for h in self.hpart.elements for x in range(self.base.n)]
            self._index = {el: i for i, el in enumerate(self._elements)}
        return self._elements

    def index(self, el) -> int:
        self.elements
        return self._index[ExtensionElement(*el)]

    def cayley_table(self) -> np.ndarray:
        els = self.elements
        idx = self._index
        out = np.empty((len(els), len(els)), dtype=np.int64)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                out[i, j] = idx[self.product(a, b)]
        return out

    def to_group(self) -> FiniteGroup:
        labels = [f"{h.cycle_str()}|{self.base.labels[x]}" for h, x in self.elements]
        return FiniteGroup(self.cayley_table(), labels, 0, check=False)

    def to_dict(self) -> dict:
        return self.to_group().to_dict()


def build_torsion_extension(q: RightQuasigroup, cap: int = DEFAULT_CLOSURE_CAP) -> ExtensionGroup:
    return ExtensionGroup(q, torsion_group(q, cap=cap))


def build_universal_extension(q: RightQuasigroup, cap: Optional[int] = None) -> ExtensionGroup:
    """The universal group over the full stabilizer of the identity; order n!.

    ``cap`` bounds n when given; without it the stabilizer is kept implicit
    and only enumerated on demand (subject to the stabilizer cap).
    """
    if cap is not None and q.n > cap:
        raise CapExceeded(f"universal extension of a {q.n}-element quasigroup has {math.factorial(q.n)} elements")
    return ExtensionGroup(q, PointStabilizer(q.n, q.identity, DEFAULT_STABILIZER_CAP if cap is None else cap))


def as_permutation(E: ExtensionGroup, el) -> Perm:
    """The permutation z -> h(z) o x of S that (h, x) acts as."""
    h, x = el
    return compose(h, E.base.right_translation(x))


def generated_by_s(E: ExtensionGroup) -> set:
    """Closure of {(id, x)} inside E."""
    gens = [E.embed(x) for x in range(E.base.n)]
    seen = {E.identity}
    frontier = [E.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = E.product(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def transversal_roundtrip(q: RightQuasigroup, E: Optional[ExtensionGroup] = None) -> RightQuasigroup:
    """Recover the operation on {(id, x)} as a transversal of hpart x {e}.

    The coset of (id, x)(id, y) is located by testing which (id, z) puts
    ``p . (id, z)^-1`` into the H-part; nothing about the pair layout is assumed.
    """
    if E is None:
        E = build_torsion_extension(q)
    n = q.n
    e = q.identity
    reps = [E.embed(z) for z in range(n)]
    rep_inv = [E.inverse(r) for r in reps]
    rows = []
    for x in range(n):
        row = []
        for y in range(n):
            p = E.product(reps[x], reps[y])
            hits = [z for z in range(n) if E.product(p, rep_inv[z]).x == e]
            if len(hits) != 1:
                raise ExtensionError(f"coset of ({x},{y}) meets the transversal {len(hits)} times")
            row.append(hits[0])
        rows.append(row)
    return qg.validate(rows, 0, q.labels)


def transversal_roundtrip_via_table(E: ExtensionGroup) -> RightQuasigroup:
    """Same as :func:`transversal_roundtrip` but through the Cayley table and
    the generic transversal machinery."""
    from .transversal import Subgroup

    G = E.to_group()
    H = Subgroup(G, tuple(E.index((h, E.base.identity)) for h in E.hpart.elements))
    embedded = [E.index(E.embed(x)) for x in range(E.base.n)]
    t = Transversal(G, H, embedded)
    # induced indices follow coset order; send them back to base indices
    beta = [embedded.index(r) for r in t.reps]
    return qg.relabel(induced_quasigroup(t), beta)


def universal_hom(t: Transversal, E: Optional[ExtensionGroup] = None) -> dict[int, ExtensionElement]:
    """g = a*x (a in H, x in S)  ->  (phi(a), x) in the universal group."""
    if E is None:
        E = build_universal_extension(induced_quasigroup(t))
    out = {}
    for g in range(t.parent.n):
        a, x = t.factor(g)
        out[g] = ExtensionElement(phi(t, a), x)
    return out


def hom_violations(t: Transversal, hom: dict, E: ExtensionGroup, limit: int = 10) -> list[tuple[int, int]]:
    G = t.parent
    bad = []
    for g1 in range(G.n):
        for g2 in range(G.n):
            if hom[G.mul(g1, g2)] != E.product(hom[g1], hom[g2]):
                bad.append((g1, g2))
                if len(bad) >= limit:
                    return bad
    return bad


def associativity_violation(table: np.ndarray, samples: Optional[int] = None,
                            seed: int = 0, chunk: int = 64) -> Optional[tuple[int, int, int]]:
    """Exhaustive (samples=None) or sampled triple check on a Cayley table."""
    n = table.shape[0]
    if samples is None:
        idx = np.arange(n)
        for start in range(0, n, chunk):
            a = idx[start:start + chunk]
            lhs = table[table[a][:, :, None], idx[None, None, :]]
            rhs = table[a[:, None, None], table[None, :, :]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                i, j, k = bad[0]
                return int(a[i]), int(j), int(k)
        return None
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(n, size=(3, samples))
    bad = np.nonzero(table[table[a, b], c] != table[a, table[b, c]])[0]
    if len(bad):
        i = bad[0]
        return int(a[i]), int(b[i]), int(c[i])
    return None


def sampled_associativity_violation(E: ExtensionGroup, samples: int, seed: int) -> Optional[tuple]:
    """Triple check by direct products, for groups too large to tabulate."""
    rng = np.random.default_rng(seed)
    n = E.base.n
    hs = _sample_hpart(E, rng, 3 * samples)
    xs = rng.integers(n, size=3 * samples)
    for i in range(samples):
        a = ExtensionElement(hs[3 * i], int(xs[3 * i]))
        b = ExtensionElement(hs[3 * i + 1], int(xs[3 * i + 1]))
        c = ExtensionElement(hs[3 * i + 2], int(xs[3 * i + 2]))
        if E.product(E.product(a, b), c) != E.product(a, E.product(b, c)):
            return a, b, c
    return None


def _sample_hpart(E: ExtensionGroup, rng, k: int) -> list[Perm]:
    hp = E.hpart
    if isinstance(hp, PointStabilizer):
        others = [i for i in range(hp.degree) if i != hp.point]
        out = []
        for _ in range(k):
            arr = [others[int(j)] for j in rng.permutation(len(others))]
            arr.insert(hp.point, hp.point)
            out.append(Perm._trusted(tuple(arr)))
        return out
    els = hp.elements
    return [els[int(j)] for j in rng.integers(len(els), size=k)]


def verify_extension(E: ExtensionGroup, exhaustive_limit: int = 500, samples: int = 10_000,
                     seed: int = 0) -> dict:
    """Brute-force group axioms; returns a dict of findings (all True = fine)."""
    e = E.identity
    if E.order <= exhaustive_limit:
        els = E.elements
        table = E.cayley_table()
        assoc = associativity_violation(table) is None
        mode = "exhaustive"
    else:
        els = [ExtensionElement(h, x) for h, x in zip(
            _sample_hpart(E, np.random.default_rng(seed + 1), min(samples, 2000)),
            np.random.default_rng(seed + 2).integers(E.base.n, size=min(samples, 2000)).tolist())]
        assoc = sampled_associativity_violation(E, samples, seed) is None
        mode = "sampled"
    identity_ok = all(E.product(e, a) == a and E.product(a, e) == a for a in els)
    inverse_ok = all(E.product(a, E.inverse(a)) == e and E.product(E.inverse(a), a) == e for a in els)
    closed = all(E.product(a, b) in E for a in els[:50] for b in els[:50])
    return {
        "order": E.order,
        "associative": assoc,
        "associativity_mode": mode,
        "identity": identity_ok,
        "inverse": inverse_ok,
        "closed": closed,
    }
