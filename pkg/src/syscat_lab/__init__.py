"""Systolic geometry and Lusternik-Schnirelmann category toolkit.

Subpackages: :mod:`syscat_lab.mesh` (piecewise-flat surfaces and their
systoles), :mod:`syscat_lab.lattice` (flat tori), :mod:`syscat_lab.cdga`
(free graded-commutative algebras) and :mod:`syscat_lab.bounds` (cat and
systolic category intervals).
"""

__version__ = "0.1.0"
