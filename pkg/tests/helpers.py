"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import itertools
from fractions import Fraction

from surface_cones.lattice import BlowupModel, DivisorClass, SurfaceModel, intersect
from surface_cones.linalg import is_negative_definite, solve_linear
from surface_cones.scalar import as_fraction
from surface_cones.zariski import NegativeCurveRecord


def p2_surface() -> SurfaceModel:
    return SurfaceModel(
        chi=1, kY_sq=9, gram_Y=((1,),), k_Y=(-3,), a_Y=(1,), kind="P2", pg=0, irregularity=0
    )


def p2_blowup(r: int) -> BlowupModel:
    return BlowupModel(p2_surface(), r)


def k3_surface(h_sq: int = 4) -> SurfaceModel:
    return SurfaceModel(
        chi=2, kY_sq=0, gram_Y=((h_sq,),), k_Y=(0,), a_Y=(1,), kind="K3", pg=1, irregularity=0
    )


def abelian_surface() -> SurfaceModel:
    return SurfaceModel(
        chi=0, kY_sq=0, gram_Y=((0, 1), (1, 0)), k_Y=(0, 0), a_Y=(1, 1),
        kind="Abelian", pg=1, irregularity=2,
    )


def enriques_surface() -> SurfaceModel:
    return SurfaceModel(
        chi=1, kY_sq=0, gram_Y=((0, 1), (1, 0)), k_Y=(0, 0), a_Y=(1, 1),
        kind="Enriques", pg=0, irregularity=0,
    )


def standard_minus_one_records(model: BlowupModel) -> list[NegativeCurveRecord]:
    """E_i together with H - E_i - E_j on a blown-up plane."""
    records = [
        NegativeCurveRecord.from_class(model.exceptional(i)) for i in range(1, model.r + 1)
    ]
    for i, j in itertools.combinations(range(1, model.r + 1), 2):
        cls = model.pullback([1]) - model.exceptional(i) - model.exceptional(j)
        records.append(NegativeCurveRecord.from_class(cls))
    return records


def brute_force_zariski(divisor: DivisorClass, curves) -> tuple[DivisorClass, dict[int, Fraction]]:
    """Subset-enumeration oracle for the Zariski decomposition.

    Tries every support subset, solves the orthogonality system on it, and
    keeps solutions with nonnegative coefficients whose nef part pairs
    nonnegatively with every listed curve and whose support Gram is negative
    definite.  All surviving candidates must agree after dropping zero
    coefficients; that unique answer is returned.
    """
    candidates = []
    indices = range(len(curves))
    for size in range(len(curves) + 1):
        for subset in itertools.combinations(indices, size):
            gram = [
                [as_fraction(intersect(curves[i].cls, curves[j].cls)) for j in subset]
                for i in subset
            ]
            if not is_negative_definite(gram):
                continue
            rhs = [as_fraction(intersect(divisor, curves[i].cls)) for i in subset]
            solution = solve_linear(gram, rhs) if subset else []
            if solution is None or any(a < 0 for a in solution):
                continue
            p = divisor
            for idx, a in zip(subset, solution):
                p = p - a * curves[idx].cls
            if any(as_fraction(intersect(p, record.cls)) < 0 for record in curves):
                continue
            coeffs = {i: a for i, a in zip(subset, solution) if a != 0}
            candidates.append((p, coeffs))
    assert candidates, "oracle found no valid decomposition"
    first_p, first_coeffs = candidates[0]
    for p, coeffs in candidates[1:]:
        assert p == first_p and coeffs == first_coeffs, "oracle found conflicting decompositions"
    return first_p, first_coeffs
