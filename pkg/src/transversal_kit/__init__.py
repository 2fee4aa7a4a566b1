"""Right transversals, group torsion and extension groups of finite right quasigroups,
plus numerical checks of the reflection transversal on spheres and of the
division-algebra spheres."""

from .perm import Perm, PermGroup, compose, equal_groups, generate, inverse, stabilizer_of_point
from .quasigroup import RightQuasigroup, is_group, isomorphic, random_quasigroup, validate
from .transversal import (FiniteGroup, Subgroup, Transversal, enumerate_transversals, h_sub_s,
                          induced_quasigroup, phi, right_cosets, torsion_via_phi)
from .extension import (ExtensionElement, ExtensionGroup, build_torsion_extension, build_universal_extension,
                        f_s, sigma, torsion_group, transversal_roundtrip, universal_hom)
from .catalog import catalog_group

__version__ = "0.1.0"
