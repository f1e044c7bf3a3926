"""skeinlab: exact invariants of stated skein algebras at odd roots of unity.

Lattice-theoretic and quantum-torus invariants of triangulated marked
surfaces, the classical SL2 representation-variety layer, and the
kernel-detection pipelines for the induced mapping-class-group
representations.
"""

__version__ = "0.1.0"
