"""Triangulated piecewise-flat surfaces and their 1-systoles."""
from .geodesic import ChordComplex, EdgePoint
from .homology import HomologyBasis, LoopResult, canonical_cycle, systole_h1z2, z2_homology_basis
from .library import grid_surface, named_surface, perturbed, rp2_6, rp2_geodesic, stellar, torus7
from .systole import SystoleReport, optimize_ratio, systolic_ratio
from .trimesh import TriMesh, area, dump_mesh, load_mesh, make_mesh, subdivide

__all__ = [
    "ChordComplex",
    "EdgePoint",
    "HomologyBasis",
    "LoopResult",
    "SystoleReport",
    "TriMesh",
    "area",
    "canonical_cycle",
    "dump_mesh",
    "grid_surface",
    "load_mesh",
    "make_mesh",
    "named_surface",
    "optimize_ratio",
    "perturbed",
    "rp2_6",
    "rp2_geodesic",
    "stellar",
    "subdivide",
    "systole_h1z2",
    "systolic_ratio",
    "torus7",
    "z2_homology_basis",
]
