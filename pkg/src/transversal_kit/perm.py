"""Permutations of ``{0, ..., n-1}`` and the finite groups they generate.

Products are read left to right: ``compose(p, q)`` first applies ``p`` and
then ``q``, so ``compose(p, q)(x) == q(p(x))``.  Every other module relies on
this convention for the extension formulas, so nothing outside this file
should compose permutations by hand.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_CLOSURE_CAP = math.factorial(10)
DEFAULT_STABILIZER_CAP = 8


class CapExceeded(ValueError):
    """Raised when an enumeration would grow past its configured cap."""


class Perm:
    """A permutation stored as its image sequence; ``p[i]`` is the image of ``i``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a] = b
        return cls(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __getitem__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths including fixed points."""
        lengths = [len(c) for c in self.cycles()]
        fixed = len(self.images) - sum(lengths)
        return tuple(sorted(lengths + [1] * fixed))

    def cycle_str(self, offset: int = 0) -> str:
        cyc = self.cycles()
        if not cyc:
            return "e"
        sep = "" if len(self.images) + offset <= 10 else ","
        return "".join("(" + sep.join(str(i + offset) for i in c) + ")" for c in cyc)


def compose(p: Perm, q: Perm) -> Perm:
    """Product ``p.q``: apply ``p`` first, then ``q``."""
    if len(p.images) != len(q.images):
        raise ValueError(f"degree mismatch: {len(p.images)} vs {len(q.images)}")
    qi = q.images
    return Perm._trusted(tuple(qi[i] for i in p.images))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p.images)
    for i, x in enumerate(p.images):
        out[x] = i
    return Perm._trusted(tuple(out))


class PermGroup:
    """Subgroup of Sym(n) given by generators, with its elements enumerated.

    ``elements`` is sorted lexicographically on image sequences, so the
    identity always comes first.
    """

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._members = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def element_set(self) -> frozenset:
        return self._members

    def is_trivial(self) -> bool:
        return len(self.elements) == 1


def generate(degree: int, gens: Iterable[Perm], cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    """Breadth-first closure of ``gens`` under right multiplication.

    Raises CapExceeded once more than ``cap`` elements have been found.
    """
    gens = list(gens)
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
    ident = Perm.identity(degree)
    distinct = sorted(set(g for g in gens if not g.is_identity()))
    seen = {ident}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in distinct:
            b = compose(a, g)
            if b not in seen:
                seen.add(b)
                if len(seen) > cap:
                    raise CapExceeded(f"group too large: more than {cap} elements")
                queue.append(b)
    return PermGroup(degree, gens, sorted(seen))


class PointStabilizer:
    """All permutations of ``{0..n-1}`` fixing ``point``, without listing them.

    Membership is a single lookup; ``elements`` enumerates lazily and refuses
    to do so past ``cap`` points of degree.
    """

    def __init__(self, degree: int, point: int = 0, cap: int = DEFAULT_STABILIZER_CAP):
        if not 0 <= point < max(degree, 1):
            raise ValueError(f"point {point} out of range for degree {degree}")
        self.degree = degree
        self.point = point
        self.cap = cap

    @property
    def order(self) -> int:
        return math.factorial(self.degree - 1) if self.degree else 1

    def __contains__(self, p: Perm) -> bool:
        return p.degree == self.degree and p[self.point] == self.point

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"PointStabilizer(degree={self.degree}, point={self.point})"

    @property
    def generators(self) -> tuple[Perm, ...]:
        others = [i for i in range(self.degree) if i != self.point]
        if len(others) < 2:
            return ()
        gens = [Perm.from_cycles(self.degree, [(others[0], others[1])])]
        if len(others) > 2:
            gens.append(Perm.from_cycles(self.degree, [tuple(others)]))
        return tuple(gens)

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        if self.degree > self.cap:
            raise CapExceeded(
                f"stabilizer of degree {self.degree} has {self.order} elements (cap: degree {self.cap})"
            )
        others = [i for i in range(self.degree) if i != self.point]
        out = []
        for arr in itertools.permutations(others):
            images = list(arr)
            images.insert(self.point, self.point)
            out.append(Perm._trusted(tuple(images)))
        out.sort()
        return tuple(out)

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def is_trivial(self) -> bool:
        return self.degree <= 2


def stabilizer_of_point(degree: int, point: int = 0, cap: int = DEFAULT_STABILIZER_CAP) -> PermGroup:
    """The full stabilizer of ``point`` in Sym(degree), enumerated; order (n-1)!."""
    stab = PointStabilizer(degree, point, cap)
    return PermGroup(degree, stab.generators, stab.elements)


def equal_groups(a, b) -> bool:
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    return a.order == b.order and a.element_set() == b.element_set()
