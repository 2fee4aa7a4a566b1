"""Built-in small groups.

Names: ``Z2``..``Z12``, ``D3``..``D6`` (dihedral of order 2n), ``Q8``, ``A4``,
``S3``, ``S4`` and direct products written ``AxB`` (e.g. ``Z2xS3``).
Permutation groups are labelled in 1-based cycle notation, so in ``S3`` the
transposition of the first two points is ``(12)``.
"""

from __future__ import annotations

from functools import lru_cache

from .perm import Perm, compose, generate
from .transversal import FiniteGroup, GroupError

PRODUCTS = (
    "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ6", "Z2xZ2xZ2", "Z2xS3", "Z3xS3",
    "Z2xD4", "Z2xQ8", "Z4xS3", "Z2xA4", "Z2xD6",
)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       [str(a) for a in range(n)])


def from_permutations(degree: int, gens) -> FiniteGroup:
    elements = generate(degree, gens).elements
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[compose(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, [p.cycle_str(offset=1) for p in elements])


def dihedral(n: int) -> FiniteGroup:
    rot = Perm([(i + 1) % n for i in range(n)])
    ref = Perm([(-i) % n for i in range(n)])
    return from_permutations(n, [rot, ref])


def quaternion8() -> FiniteGroup:
    # basis 0..3 = 1, i, j, k; element index = basis + 4 * (negative)
    unit = {
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
    }

    def mul(a, b):
        sa, ba = (-1 if a >= 4 else 1), a % 4
        sb, bb = (-1 if b >= 4 else 1), b % 4
        if ba == 0:
            s, basis = 1, bb
        elif bb == 0:
            s, basis = 1, ba
        else:
            s, basis = unit[(ba, bb)]
        s *= sa * sb
        return basis + (4 if s < 0 else 0)

    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return FiniteGroup([[mul(a, b) for b in range(8)] for a in range(8)], names)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    m = B.n
    table = [
        [A.mul(a1, a2) * m + B.mul(b1, b2) for a2 in range(A.n) for b2 in range(m)]
        for a1 in range(A.n) for b1 in range(m)
    ]
    labels = [f"{la}|{lb}" for la in A.labels for lb in B.labels]
    return FiniteGroup(table, labels)


@lru_cache(maxsize=None)
def catalog_group(name: str) -> FiniteGroup:
    if "x" in name:
        parts = name.split("x")
        G = catalog_group(parts[0])
        for p in parts[1:]:
            G = direct_product(G, catalog_group(p))
        return G
    if name.startswith("Z") and name[1:].isdigit() and int(name[1:]) >= 1:
        return cyclic(int(name[1:]))
    if name.startswith("D") and name[1:].isdigit() and int(name[1:]) >= 3:
        return dihedral(int(name[1:]))
    if name == "Q8":
        return quaternion8()
    if name == "S3":
        return from_permutations(3, [Perm([1, 0, 2]), Perm([1, 2, 0])])
    if name == "S4":
        return from_permutations(4, [Perm([1, 0, 2, 3]), Perm([1, 2, 3, 0])])
    if name == "A4":
        return from_permutations(4, [Perm([1, 2, 0, 3]), Perm([0, 2, 3, 1])])
    raise GroupError(f"unknown catalog group {name!r}")


def catalog_names() -> list[str]:
    names = [f"Z{n}" for n in range(2, 13)] + [f"D{n}" for n in range(3, 7)]
    names += ["Q8", "A4", "S3", "S4"] + list(PRODUCTS)
    return names


def is_catalog_name(name: str) -> bool:
    try:
        catalog_group(name)
    except (GroupError, ValueError):
        return False
    return True
