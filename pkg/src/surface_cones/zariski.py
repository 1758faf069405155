"""Zariski decomposition against a declared list of negative curves.

A curve list stands in for the (generally unknowable) set of integral
curves of negative square on the blow-up: each record carries an integral
class, its self-intersection and genus.  Decomposition follows the support
enlargement scheme: start from the curves the divisor meets negatively,
solve the orthogonality system on that support, and add every listed curve
the candidate nef part still meets negatively until the support stabilizes.
All curves with negative pairing are added per round, which makes the
output independent of list order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cones import ConePosition, in_positive_cone
from .errors import ModelValidationError, PreconditionError, ZariskiError
from .lattice import BlowupModel, DivisorClass, arithmetic_genus, intersect
from .scalar import as_fraction


@dataclass(frozen=True)
class NegativeCurveRecord:
    """A declared integral curve class with negative self-intersection."""

    cls: DivisorClass
    self_int: Fraction
    genus: Fraction
    is_exceptional: bool

    def __post_init__(self):
        coords = self.cls.coords
        if not all(isinstance(c, Fraction) and c.denominator == 1 for c in coords):
            raise ModelValidationError("curve class must have integer coordinates", "curve")
        square = as_fraction(intersect(self.cls, self.cls))
        if square != self.self_int:
            raise ModelValidationError(
                f"declared self-intersection {self.self_int} but class squares to {square}",
                "curve.self_int",
            )
        if self.self_int > -1:
            raise ModelValidationError(
                f"self-intersection must be <= -1, got {self.self_int}", "curve.self_int"
            )
        genus = arithmetic_genus(self.cls)
        if genus != self.genus:
            raise ModelValidationError(
                f"declared genus {self.genus} but adjunction gives {genus}", "curve.genus"
            )
        if self.genus < 0:
            raise ModelValidationError(f"genus must be >= 0, got {self.genus}", "curve.genus")
        if self.is_exceptional != _is_exceptional_class(self.cls):
            raise ModelValidationError(
                "exceptional flag disagrees with the class coordinates", "curve.is_exceptional"
            )

    @classmethod
    def from_class(cls, divisor: DivisorClass) -> "NegativeCurveRecord":
        return cls(
            cls=divisor,
            self_int=as_fraction(intersect(divisor, divisor)),
            genus=arithmetic_genus(divisor),
            is_exceptional=_is_exceptional_class(divisor),
        )


def _is_exceptional_class(divisor: DivisorClass) -> bool:
    m = divisor.model.base.rank
    if any(c != 0 for c in divisor.coords[:m]):
        return False
    ones = [c for c in divisor.coords[m:] if c != 0]
    return len(ones) == 1 and ones[0] == 1


@dataclass(frozen=True)
class ZariskiDecomposition:
    """D = P + sum a_i C_i with P orthogonal to the support and nef against the list."""

    divisor: DivisorClass
    P: DivisorClass
    coeffs: dict[int, Fraction]
    curves: tuple[NegativeCurveRecord, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def negative_part(self) -> DivisorClass:
        n = self.divisor.model.zero()
        for i, a in self.coeffs.items():
            n = n + a * self.curves[i].cls
        return n

    def check_invariants(self) -> str | None:
        """Name of the first violated invariant, or None when all hold."""
        n = self.negative_part()
        if self.P + n != self.divisor:
            return "decomposition_sum"
        if any(a < 0 for a in self.coeffs.values()):
            return "coefficients_nonnegative"
        for i in self.coeffs:
            if intersect(self.P, self.curves[i].cls) != 0:
                return "P_orthogonal_to_support"
        for record in self.curves:
            if as_fraction(intersect(self.P, record.cls)) < 0:
                return "P_nef_against_list"
        if intersect(self.P, n) != 0:
            return "P_dot_N_zero"
        support = self.support
        gram = [
            [as_fraction(intersect(self.curves[i].cls, self.curves[j].cls)) for j in support]
            for i in support
        ]
        if not linalg.is_negative_definite(gram):
            return "support_negative_definite"
        return None


def zariski_decompose(
    divisor: DivisorClass, curves: Sequence[NegativeCurveRecord]
) -> ZariskiDecomposition:
    """Decompose a rational class meeting L nonnegatively against the list."""
    if not divisor.is_rational:
        raise PreconditionError("Zariski decomposition expects rational coordinates")
    if as_fraction(intersect(divisor, divisor.model.line())) < 0:
        raise PreconditionError("divisor must pair nonnegatively with L")
    for record in curves:
        if record.cls.model != divisor.model:
            raise PreconditionError("curve list belongs to a different model")

    pairings = [as_fraction(intersect(divisor, record.cls)) for record in curves]
    support = sorted(i for i, v in enumerate(pairings) if v < 0)
    coeffs: dict[int, Fraction] = {}
    candidate = divisor
    while True:
        if support:
            gram = [
                [as_fraction(intersect(curves[i].cls, curves[j].cls)) for j in support]
                for i in support
            ]
            if not linalg.is_negative_definite(gram):
                raise ZariskiError("curve list violates Hodge index")
            rhs = [as_fraction(intersect(divisor, curves[i].cls)) for i in support]
            solution = linalg.solve_linear(gram, rhs)
            if solution is None:
                raise ZariskiError("curve list violates Hodge index")
            coeffs = dict(zip(support, solution))
            candidate = divisor
            for i in support:
                candidate = candidate - coeffs[i] * curves[i].cls
        newly_negative = sorted(
            i
            for i in range(len(curves))
            if i not in support and as_fraction(intersect(candidate, curves[i].cls)) < 0
        )
        if not newly_negative:
            break
        support = sorted(support + newly_negative)
    if any(a < 0 for a in coeffs.values()):
        raise ZariskiError("curve list violates Hodge index")
    coeffs = {i: a for i, a in coeffs.items() if a != 0}
    return ZariskiDecomposition(
        divisor=divisor, P=candidate, coeffs=coeffs, curves=tuple(curves)
    )


def ne_decompose(
    y: DivisorClass, curves: Sequence[NegativeCurveRecord]
) -> ZariskiDecomposition:
    """Split y into a positive-cone part plus rays of listed curves.

    Fails with a typed error when the nef part escapes the positive cone,
    which signals that the declared list cannot certify pseudoeffectivity
    of y.
    """
    decomposition = zariski_decompose(y, curves)
    if in_positive_cone(decomposition.P) is ConePosition.OUTSIDE:
        raise ZariskiError("list incomplete: P not in positive cone")
    return decomposition


@dataclass(frozen=True)
class DecompositionReport:
    passed: bool
    samples: int
    seed: int
    reconstruction_failures: tuple[str, ...]
    extremality_failures: tuple[str, ...]


def list_decomposition_check(
    model: BlowupModel,
    curves: Sequence[NegativeCurveRecord],
    samples: int = 100,
    seed: int = 0,
) -> DecompositionReport:
    """Sample the cone generated by the list and confirm both decomposition directions.

    Forward: random nonnegative combinations of list curves and positive-cone
    classes decompose and reconstruct exactly.  Reverse: each listed curve is
    extremal, i.e. its own decomposition is the trivial one.
    """
    reconstruction: list[str] = []
    for k in range(samples):
        rng = random.Random(seed * 1_000_003 + k)
        y = _random_cone_element(model, rng)
        for record in curves:
            y = y + Fraction(rng.randint(0, 10)) * record.cls
        try:
            decomposition = ne_decompose(y, curves)
        except ZariskiError as exc:
            reconstruction.append(f"sample {k}: {exc}")
            continue
        if decomposition.P + decomposition.negative_part() != y:
            reconstruction.append(f"sample {k}: reconstruction mismatch")
            continue
        violated = decomposition.check_invariants()
        if violated is not None:
            reconstruction.append(f"sample {k}: {violated}")
    extremality: list[str] = []
    for i, record in enumerate(curves):
        try:
            decomposition = zariski_decompose(record.cls, curves)
        except (ZariskiError, PreconditionError) as exc:
            extremality.append(f"curve {i}: {exc}")
            continue
        if not decomposition.P.is_zero() or decomposition.coeffs != {i: Fraction(1)}:
            extremality.append(f"curve {i}: ray decomposed nontrivially")
    return DecompositionReport(
        passed=not reconstruction and not extremality,
        samples=samples,
        seed=seed,
        reconstruction_failures=tuple(reconstruction),
        extremality_failures=tuple(extremality),
    )


def _random_cone_element(model: BlowupModel, rng: random.Random) -> DivisorClass:
    """A rational class in the positive cone: random vector pushed along L."""
    line = model.line()
    coords = [Fraction(rng.randint(-2, 2)) for _ in range(model.rank)]
    x = model.divisor(coords)
    for _ in range(64):
        if in_positive_cone(x) is not ConePosition.OUTSIDE:
            return x
        x = x + line
    return line
