"""Finite groups, their subgroups, right cosets and right transversals.

Cosets are always right cosets ``Hg``.  A transversal keeps the group identity
as its first representative, and rep ``i`` lies in coset ``i`` of
:func:`right_cosets`, so the induced quasigroup has identity at index 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import quasigroup as qg
from .perm import DEFAULT_CLOSURE_CAP, CapExceeded, Perm, PermGroup, generate

DEFAULT_ENUM_CAP = 100_000


class GroupError(ValueError):
    """Invalid group, subgroup or transversal data."""


class FiniteGroup:
    """A group given by its Cayley table, ``table[a][b] == a*b``."""

    def __init__(self, table, labels: Optional[Sequence[str]] = None, identity: int = 0,
                 check: bool = True):
        table = [list(map(int, row)) for row in table]
        n = len(table)
        if n == 0:
            raise GroupError("empty table")
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GroupError(f"{len(labels)} labels for {n} elements")
        if not 0 <= identity < n:
            raise GroupError(f"identity {identity} out of range")
        self.table = tuple(tuple(r) for r in table)
        self.labels = tuple(str(s) for s in labels)
        self.identity = identity
        if check:
            self._check()
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == identity:
                    inv[a] = b
                    break
        self._inv = tuple(inv)

    def _check(self):
        n = self.n
        arr = np.array(self.table)
        if arr.shape != (n, n) or arr.min() < 0 or arr.max() >= n:
            raise GroupError("table entries out of range or table not square")
        e = self.identity
        if any(self.table[e][x] != x or self.table[x][e] != x for x in range(n)):
            raise GroupError(f"element {e} is not a two-sided identity")
        for a in range(n):
            if len(set(self.table[a])) != n or len(set(arr[:, a])) != n:
                raise GroupError(f"row or column {a} is not a permutation (missing inverses)")
        lhs = arr[arr[:, :, None], np.arange(n)[None, None, :]]
        rhs = arr[np.arange(n)[:, None, None], arr[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y, z = bad[0]
            raise GroupError(f"not associative at ({x},{y},{z})")

    @property
    def n(self) -> int:
        return len(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.n})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"unknown element label {label!r}")

    def closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        gens = sorted(set(gens))
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.table[a][g]
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(seen))

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "identity": self.identity, "table": [list(r) for r in self.table]}

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteGroup":
        try:
            table = data["table"]
        except (KeyError, TypeError):
            raise GroupError("group object needs a 'table' field")
        return cls(table, data.get("labels"), data.get("identity", 0))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        G = self.parent
        mem = set(self.members)
        if G.identity not in mem:
            raise GroupError("subgroup must contain the identity")
        for a in mem:
            if not 0 <= a < G.n:
                raise GroupError(f"member {a} out of range")
            if G.inv(a) not in mem:
                raise GroupError(f"subgroup not closed under inverse at {G.labels[a]}")
            for b in mem:
                if G.mul(a, b) not in mem:
                    raise GroupError(f"subgroup not closed: {G.labels[a]}*{G.labels[b]}")
        object.__setattr__(self, "members", tuple(sorted(mem)))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self._member_set

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, G.closure(gens))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of G, ordered by (order, member tuple)."""
    found = {G.closure([a]) for a in range(G.n)}
    cyclic = sorted(found)
    frontier = set(found)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if set(C) <= set(A):
                    continue
                J = G.closure(A + C)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (len(m), m))]


def right_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Right cosets Hg, sorted by smallest member; the first is H itself."""
    seen = set()
    cosets = []
    for g in range(G.n):
        if g in seen:
            continue
        coset = tuple(sorted({G.mul(h, g) for h in H.members}))
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda c: c[0])
    return cosets


class Transversal:
    """A right transversal of H in G containing the identity."""

    def __init__(self, parent: FiniteGroup, subgroup: Subgroup, reps: Sequence[int]):
        self.parent = parent
        self.subgroup = subgroup
        cosets = right_cosets(parent, subgroup)
        coset_of = {}
        for i, c in enumerate(cosets):
            for g in c:
                coset_of[g] = i
        reps = list(reps)
        if parent.identity not in reps:
            raise GroupError("transversal must contain the identity")
        if len(reps) != len(cosets):
            raise GroupError(f"{len(reps)} representatives for {len(cosets)} cosets")
        hit = sorted(coset_of[r] for r in reps)
        if hit != list(range(len(cosets))):
            raise GroupError("representatives do not meet every right coset exactly once")
        self.reps = tuple(sorted(reps, key=lambda r: coset_of[r]))
        self.cosets = cosets
        self.coset_of = coset_of
        self.position = {r: i for i, r in enumerate(self.reps)}

    def __len__(self) -> int:
        return len(self.reps)

    def __repr__(self) -> str:
        return f"Transversal({[self.parent.labels[r] for r in self.reps]})"

    def rep_of(self, g: int) -> int:
        """Position in ``reps`` of the representative of Hg."""
        return self.coset_of[g]

    def factor(self, g: int) -> tuple[int, int]:
        """Write g = a*x with a in H, x in reps; returns (a, position of x)."""
        i = self.coset_of[g]
        a = self.parent.mul(g, self.parent.inv(self.reps[i]))
        return a, i

    def generates(self) -> bool:
        return len(self.parent.closure(self.reps)) == self.parent.n

    def to_dict(self) -> dict:
        return {"reps": list(self.reps)}


def transversal_count(G: FiniteGroup, H: Subgroup) -> int:
    cosets = right_cosets(G, H)
    return math.prod(len(c) for c in cosets[1:])


def enumerate_transversals(G: FiniteGroup, H: Subgroup, generating_only: bool = False,
                           cap: int = DEFAULT_ENUM_CAP) -> Iterator[Transversal]:
    """Lazily yield every transversal containing the identity.

    Order: lexicographic over the choice of member in each non-trivial coset,
    cosets taken in :func:`right_cosets` order.
    """
    cosets = right_cosets(G, H)
    total = math.prod(len(c) for c in cosets[1:])
    if total > cap:
        raise CapExceeded(f"{total} transversals exceed enumeration cap {cap}")
    for choice in itertools.product(*cosets[1:]):
        t = Transversal(G, H, (G.identity,) + choice)
        if generating_only and not t.generates():
            continue
        yield t


def sample_transversals(G: FiniteGroup, H: Subgroup, k: int, seed: int) -> list[Transversal]:
    """All transversals when there are at most k, else k distinct random ones."""
    cosets = right_cosets(G, H)
    total = math.prod(len(c) for c in cosets[1:])
    if total <= k:
        return list(enumerate_transversals(G, H, cap=total))
    rng = np.random.default_rng(seed)
    picked = {}
    while len(picked) < k:
        choice = tuple(c[int(rng.integers(len(c)))] for c in cosets[1:])
        if choice not in picked:
            picked[choice] = Transversal(G, H, (G.identity,) + choice)
    return list(picked.values())


def induced_quasigroup(t: Transversal) -> qg.RightQuasigroup:
    """x o y is the representative of the coset H(xy)."""
    G = t.parent
    reps = t.reps
    rows = [[t.coset_of[G.mul(x, y)] for y in reps] for x in reps]
    try:
        return qg.validate(rows, 0, [G.labels[r] for r in reps])
    except qg.QuasigroupError as exc:
        # cannot happen for a valid transversal
        raise AssertionError(f"induced table broke an invariant: {exc}") from exc


def phi(t: Transversal, g: int) -> Perm:
    """Action of g on the representatives: x -> rep of H(xg)."""
    G = t.parent
    return Perm._trusted(tuple(t.coset_of[G.mul(x, g)] for x in t.reps))


def h_sub_s(t: Transversal) -> Subgroup:
    """Subgroup generated by x*y*(x o y)^-1 over all x, y in the transversal."""
    G = t.parent
    gens = set()
    for x in t.reps:
        for y in t.reps:
            xy = G.mul(x, y)
            xoy = t.reps[t.coset_of[xy]]
            gens.add(G.mul(xy, G.inv(xoy)))
    return subgroup_generated(G, gens)


def torsion_via_phi(t: Transversal, cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    return generate(len(t.reps), [phi(t, h) for h in h_sub_s(t).members], cap=cap)


def core_is_trivial(G: FiniteGroup, H: Subgroup) -> bool:
    core = set(H.members)
    for g in range(G.n):
        gi = G.inv(g)
        core &= {G.mul(G.mul(gi, h), g) for h in H.members}
        if core == {G.identity}:
            return True
    return core == {G.identity}


def parse_subgroup_spec(G: FiniteGroup, spec: str) -> Subgroup:
    """Parse ``"{e,(12)}"``: the subgroup generated by the listed labels."""
    body = spec.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    labels, depth, cur = [], 0, ""
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            labels.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        labels.append(cur.strip())
    return subgroup_generated(G, [G.index_of(s) for s in labels])


def permutation_image(t: Transversal) -> list[Perm]:
    """phi(g) for every g in G, in group index order."""
    return [phi(t, g) for g in range(t.parent.n)]
