"""Finite right quasigroups with a two-sided identity.

Tables are stored row = left operand: ``table[z][x] == z o x``.  Right
translations ``z -> z o x`` are therefore the columns, and bijectivity of the
columns is what makes left division ``ldiv`` well defined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .perm import Perm


class QuasigroupError(ValueError):
    """The table does not describe a right quasigroup with identity."""


@dataclass(frozen=True, eq=False)
class RightQuasigroup:
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    identity: int = 0
    # column inverses: _ldiv[x][y] is the z with z o x == y
    _ldiv: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RightQuasigroup)
            and self.table == other.table
            and self.identity == other.identity
        )

    def __hash__(self) -> int:
        return hash((self.table, self.identity))

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def ldiv(self, x: int, y: int) -> int:
        """The unique ``z`` with ``z o x == y``."""
        return self._ldiv[x][y]

    def left_inverse(self, x: int) -> int:
        return self._ldiv[x][self.identity]

    def right_translation(self, x: int) -> Perm:
        return Perm._trusted(tuple(row[x] for row in self.table))

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.n, self.n)

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "identity": self.identity, "table": [list(r) for r in self.table]}


def validate(table: Sequence[Sequence[int]], identity: int = 0,
             labels: Optional[Sequence[str]] = None) -> RightQuasigroup:
    """Check the table and return it as a RightQuasigroup with identity at index 0.

    A non-zero identity is swapped with index 0 (labels follow).
    """
    n = len(table)
    if n == 0:
        raise QuasigroupError("empty table")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise QuasigroupError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or int(v) != v or not 0 <= v < n:
                raise QuasigroupError(f"cell ({i},{j}) = {v!r} out of range 0..{n - 1}")
        rows.append([int(v) for v in row])
    if not 0 <= identity < n:
        raise QuasigroupError(f"identity {identity} out of range")
    if labels is None:
        labels = [str(i) for i in range(n)]
    labels = [str(s) for s in labels]
    if len(labels) != n:
        raise QuasigroupError(f"{len(labels)} labels for {n} elements")

    e = identity
    for x in range(n):
        if rows[e][x] != x:
            raise QuasigroupError(f"identity row violated at cell ({e},{x}): {rows[e][x]} != {x}")
        if rows[x][e] != x:
            raise QuasigroupError(f"identity column violated at cell ({x},{e}): {rows[x][e]} != {x}")
    for x in range(n):
        seen = {}
        for z in range(n):
            v = rows[z][x]
            if v in seen:
                raise QuasigroupError(
                    f"column {x} not bijective: cells ({seen[v]},{x}) and ({z},{x}) both equal {v}"
                )
            seen[v] = z

    if e != 0:
        swap = list(range(n))
        swap[0], swap[e] = e, 0
        rows = [[swap[rows[swap[i]][swap[j]]] for j in range(n)] for i in range(n)]
        labels = [labels[swap[i]] for i in range(n)]
    return _build(rows, labels)


def _build(rows, labels) -> RightQuasigroup:
    n = len(rows)
    ldiv = [[0] * n for _ in range(n)]
    for z in range(n):
        for x in range(n):
            ldiv[x][rows[z][x]] = z
    return RightQuasigroup(
        table=tuple(tuple(r) for r in rows),
        labels=tuple(labels),
        identity=0,
        _ldiv=tuple(tuple(r) for r in ldiv),
    )


def from_dict(data: dict) -> RightQuasigroup:
    try:
        table = data["table"]
    except (KeyError, TypeError):
        raise QuasigroupError("quasigroup object needs a 'table' field")
    return validate(table, data.get("identity", 0), data.get("labels"))


def op(q: RightQuasigroup, x: int, y: int) -> int:
    return q.table[x][y]


def ldiv(q: RightQuasigroup, x: int, y: int) -> int:
    return q.ldiv(x, y)


def left_inverse(q: RightQuasigroup, x: int) -> int:
    return q.left_inverse(x)


def associativity_witness(q: RightQuasigroup) -> Optional[tuple[int, int, int]]:
    """First triple (x, y, z) with (x o y) o z != x o (y o z), or None."""
    t = q.as_array()
    lhs = t[t[:, :, None], np.arange(q.n)[None, None, :]]  # (x o y) o z
    rhs = t[np.arange(q.n)[:, None, None], t[None, :, :]]  # x o (y o z)
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def is_group(q: RightQuasigroup) -> bool:
    return associativity_witness(q) is None


def random_quasigroup(n: int, seed: int) -> RightQuasigroup:
    """Random right quasigroup on n points with identity 0.

    Column 0 is the identity map; every other column x is a uniform random
    permutation subject to ``0 o x == x``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    rows = [[0] * n for _ in range(n)]
    for z in range(n):
        rows[z][0] = z
    for x in range(1, n):
        rows[0][x] = x
        targets = [v for v in range(n) if v != x]
        order = rng.permutation(len(targets))
        for z, k in zip(range(1, n), order):
            rows[z][x] = targets[int(k)]
    return validate(rows, 0)


def relabel(q: RightQuasigroup, beta: Sequence[int]) -> RightQuasigroup:
    """Transport q along the bijection ``beta`` (old index -> new index)."""
    n = q.n
    inv = [0] * n
    for i, b in enumerate(beta):
        inv[b] = i
    rows = [[beta[q.table[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    labels = [q.labels[inv[i]] for i in range(n)]
    return validate(rows, beta[q.identity], labels)


def _translation_signature(q: RightQuasigroup) -> list:
    return [q.right_translation(x).cycle_type() for x in range(q.n)]


def isomorphic(q1: RightQuasigroup, q2: RightQuasigroup) -> Optional[tuple[int, ...]]:
    """An isomorphism q1 -> q2 as an image tuple, or None.

    Backtracking over identity-preserving bijections; candidate images must
    have a right translation of the same cycle type, and every assignment is
    propagated through ``beta(x o y) = beta(x) o beta(y)``.
    """
    n = q1.n
    if n != q2.n:
        return None
    sig1, sig2 = _translation_signature(q1), _translation_signature(q2)
    if sorted(sig1) != sorted(sig2):
        return None
    if is_group(q1) != is_group(q2):
        return None
    t1, t2 = q1.table, q2.table

    def extend(beta, inv, pending):
        # assign pending pairs, closing under the operation; returns False on conflict
        stack = list(pending)
        while stack:
            a, b = stack.pop()
            if beta[a] is not None:
                if beta[a] != b:
                    return False
                continue
            if inv[b] is not None or sig1[a] != sig2[b]:
                return False
            beta[a] = b
            inv[b] = a
            assigned = [i for i in range(n) if beta[i] is not None]
            for c in assigned:
                stack.append((t1[a][c], t2[b][beta[c]]))
                stack.append((t1[c][a], t2[beta[c]][b]))
        return True

    def search(beta, inv):
        try:
            x = beta.index(None)
        except ValueError:
            return tuple(beta)
        for b in range(n):
            if inv[b] is not None or sig1[x] != sig2[b]:
                continue
            nb, ni = list(beta), list(inv)
            if extend(nb, ni, [(x, b)]):
                found = search(nb, ni)
                if found is not None:
                    return found
        return None

    beta = [None] * n
    inv = [None] * n
    if not extend(beta, inv, [(q1.identity, q2.identity)]):
        return None
    found = search(beta, inv)
    if found is not None:
        assert all(found[t1[x][y]] == t2[found[x]][found[y]] for x, y in itertools.product(range(n), repeat=2))
    return found
