"""Systolic ratios of triangulated surfaces and their local maximization."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import StepTooLarge
from .geodesic import ChordComplex, face_areas
from .homology import DEFAULT_B1_CAP, systole_h1z2
from .trimesh import TriMesh, area, edge_key, subdivide


@dataclass(frozen=True)
class SystoleReport:
    area: float
    sysh1_z2: float
    pisys1_upper: float
    ratio: float
    refinement_level: int
    metric: str
    surface: str

    @property
    def bound_note(self) -> str:
        # on T^2, RP^2 and the Klein bottle Z/2-nontrivial == noncontractible
        if self.surface in ("orientable genus 1", "projective plane", "Klein bottle"):
            return "homotopy and Z/2 homology systoles coincide on this surface"
        return "upper bound on pisys1 (homology systole may exceed homotopy systole)"


def systolic_ratio(
    mesh: TriMesh,
    levels: int = 0,
    *,
    chords: bool = True,
    b1_cap: int = DEFAULT_B1_CAP,
) -> SystoleReport:
    """Report area, Z/2 systole and ``systole**2 / area`` at a refinement level.

    With ``chords`` (the default) loops may cross faces along straight
    segments between the edge points of the ``levels``-fold subdivision;
    without it only edges of the subdivided mesh are used.  Both give the
    length of an actual loop, hence an upper bound on the true systole.
    """
    if levels < 0:
        raise ValueError("levels must be >= 0")
    if chords:
        cc = ChordComplex(mesh, levels, b1_cap=b1_cap)
        sys_len = cc.systole()
    else:
        fine = subdivide(mesh, levels) if levels else mesh
        sys_len = systole_h1z2(fine, b1_cap=b1_cap).length
    a = area(mesh)
    return SystoleReport(
        area=a,
        sysh1_z2=sys_len,
        pisys1_upper=sys_len,
        ratio=sys_len**2 / a,
        refinement_level=levels,
        metric="chord" if chords else "edge",
        surface=mesh.surface_name,
    )


def _edge_metric_ratio(mesh: TriMesh, levels: int, b1_cap: int) -> Callable[[np.ndarray], float]:
    def ratio(lengths: np.ndarray) -> float:
        m = mesh.with_lengths(dict(zip(mesh.edges, lengths)))
        return systolic_ratio(m, levels, chords=False, b1_cap=b1_cap).ratio

    return ratio


def optimize_ratio(
    mesh: TriMesh,
    iterations: int,
    step: float,
    seed: int,
    *,
    levels: int = 2,
    chords: bool = True,
    b1_cap: int = DEFAULT_B1_CAP,
    history: list | None = None,
) -> tuple[TriMesh, SystoleReport]:
    """Multiplicative coordinate ascent on edge lengths.

    Each sweep visits the edges in a seeded random order and tries
    ``length * (1 + step)`` and ``length * (1 - step)`` (in seeded order),
    keeping the first change that strictly increases the ratio while all
    faces keep the strict triangle inequality.  Lengths are rescaled to
    total area 1 after every sweep.  A sweep with no accepted move is a
    fixed point of the procedure, so the search stops there.

    If ``history`` is a list, ``(sweep, ratio, area, systole)`` rows are
    appended to it, starting with sweep 0 for the initial metric.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if not step > 0:
        raise ValueError("step must be positive")
    rng = np.random.default_rng(seed)
    edges = mesh.edges
    index = {e: i for i, e in enumerate(edges)}
    face_idx = np.array([[index[edge_key(a, b)], index[edge_key(b, c)], index[edge_key(a, c)]] for a, b, c in mesh.faces])
    faces_of = [np.nonzero((face_idx == i).any(axis=1))[0] for i in range(len(edges))]

    if chords:
        evaluate = ChordComplex(mesh, levels, b1_cap=b1_cap).ratio
    else:
        evaluate = _edge_metric_ratio(mesh, levels, b1_cap)

    lengths = np.array([mesh.edge_lengths[e] for e in edges])
    lengths /= math.sqrt(float(np.sum(face_areas(lengths[face_idx]))))
    current = evaluate(lengths)
    if history is not None:
        history.append((0, current, 1.0, math.sqrt(current)))

    def feasible(trial: np.ndarray, e: int) -> bool:
        s = trial[face_idx[faces_of[e]]]
        return bool(np.all(2 * s.max(axis=1) < s.sum(axis=1)))

    for sweep in range(1, iterations + 1):
        improved = False
        any_feasible = False
        for e in rng.permutation(len(edges)):
            signs = (1.0, -1.0) if rng.random() < 0.5 else (-1.0, 1.0)
            for sign in signs:
                trial = lengths.copy()
                trial[e] *= 1.0 + sign * step
                if trial[e] <= 0 or not feasible(trial, e):
                    continue
                any_feasible = True
                r = evaluate(trial)
                if r > current * (1 + 1e-12):
                    lengths, current = trial, r
                    improved = True
                    break
        if not any_feasible:
            raise StepTooLarge(f"no edge can be scaled by 1 +/- {step} without breaking a triangle inequality")
        lengths /= math.sqrt(float(np.sum(face_areas(lengths[face_idx]))))
        if history is not None:
            history.append((sweep, current, 1.0, math.sqrt(current)))
        if not improved:
            break

    best = mesh.with_lengths(dict(zip(edges, lengths)))
    return best, systolic_ratio(best, levels, chords=chords, b1_cap=b1_cap)
