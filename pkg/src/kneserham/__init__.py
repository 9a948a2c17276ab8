"""Explicit Hamiltonian cycles in the Kneser graph of triangulations of a convex polygon,
and in the Kneser graph of the permutohedron, with independent certification."""

from .bridges import (AugmentedFactor, BridgeEdge, OrbitTree, bridge_orientation, build_orbit_tree,
                      select_bridges)
from .errors import KneserError
from .guide import (FlipHamCycle, GuideCycle, backtracking_flip_cycle, build_guide_cycle,
                    flip_hamiltonian_cycle)
from .orbits import OrbitPartition, RotationOrbit, orbit_cycle, orbit_of, orbit_partition
from .polygon import (Polygon, Triangulation, are_disjoint, catalan, crosses, decode, encode,
                      enumerate_triangulations, flip, make_triangulation, polygon, rotate)
from .splicer import HamiltonianCycle, build_hamiltonian, run_pipeline, splice
from .verification import (CertificateReport, brute_force_kneser_graph, verify_kneser_cycle,
                           verify_lemmas, verify_perm_cycle)

__version__ = "0.1.0"
