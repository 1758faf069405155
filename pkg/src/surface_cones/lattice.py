"""Numerical models of a surface Y and its blow-up X at r general points.

The blow-up lattice is the orthogonal sum of the user-supplied lattice of Y
and r exceptional directions of square -1.  Generality of the blown-up
points is modeled purely numerically: exceptional classes are pairwise
orthogonal, orthogonal to pullbacks, and any further negative curves are
declared by the caller, never inferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    AdjunctionParityError,
    ModelMismatchError,
    ModelValidationError,
    PreconditionError,
)
from .scalar import Exact, ExactLike, _coerce, _field_key, _is_prefix, as_fraction, is_rational


class SurfaceKind(Enum):
    P2 = "P2"
    K3 = "K3"
    ABELIAN = "Abelian"
    ENRIQUES = "Enriques"
    BIELLIPTIC = "Bielliptic"
    GENERAL_TYPE = "GeneralType"
    OTHER = "Other"


def _fraction(value, field_name: str) -> Fraction:
    try:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise ModelValidationError(f"not a rational number: {value!r}", field_name)


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical data of the base surface Y.

    ``gram_Y`` is the intersection matrix on a chosen basis of the lattice of
    Y; it must be symmetric with signature (1, rank-1).  ``k_Y`` and ``a_Y``
    are the coordinates of the canonical class and of a fixed ample class.
    """

    chi: Fraction
    kY_sq: Fraction
    gram_Y: tuple[tuple[Fraction, ...], ...]
    k_Y: tuple[Fraction, ...]
    a_Y: tuple[Fraction, ...]
    kind: SurfaceKind = SurfaceKind.OTHER
    pg: Fraction | None = None
    irregularity: Fraction | None = None

    def __post_init__(self):
        coerce = object.__setattr__
        coerce(self, "chi", _fraction(self.chi, "chi"))
        coerce(self, "kY_sq", _fraction(self.kY_sq, "kY_sq"))
        gram = tuple(
            tuple(_fraction(v, f"gram_Y[{i}][{j}]") for j, v in enumerate(row))
            for i, row in enumerate(self.gram_Y)
        )
        coerce(self, "gram_Y", gram)
        coerce(self, "k_Y", tuple(_fraction(v, f"k_Y[{i}]") for i, v in enumerate(self.k_Y)))
        coerce(self, "a_Y", tuple(_fraction(v, f"a_Y[{i}]") for i, v in enumerate(self.a_Y)))
        if isinstance(self.kind, str):
            try:
                coerce(self, "kind", SurfaceKind(self.kind))
            except ValueError:
                raise ModelValidationError(f"unknown surface class {self.kind!r}", "class")
        if self.pg is not None:
            coerce(self, "pg", _fraction(self.pg, "pg"))
        if self.irregularity is not None:
            coerce(self, "irregularity", _fraction(self.irregularity, "q"))
        self._validate()

    def _validate(self):
        m = len(self.gram_Y)
        if m == 0:
            raise ModelValidationError("lattice rank must be positive", "gram_Y")
        for i, row in enumerate(self.gram_Y):
            if len(row) != m:
                raise ModelValidationError(f"row has length {len(row)}, expected {m}", f"gram_Y[{i}]")
        for i in range(m):
            for j in range(i + 1, m):
                if self.gram_Y[i][j] != self.gram_Y[j][i]:
                    raise ModelValidationError(
                        f"not symmetric with gram_Y[{j}][{i}]", f"gram_Y[{i}][{j}]"
                    )
        if len(self.k_Y) != m:
            raise ModelValidationError(f"length {len(self.k_Y)}, expected {m}", "k_Y")
        if len(self.a_Y) != m:
            raise ModelValidationError(f"length {len(self.a_Y)}, expected {m}", "a_Y")
        sig = linalg.signature([list(row) for row in self.gram_Y])
        if sig != (1, m - 1, 0):
            raise ModelValidationError(
                f"signature is {sig}, expected (1, {m - 1}, 0)", "gram_Y"
            )
        a_sq = self._pair_y(self.a_Y, self.a_Y)
        if a_sq <= 0:
            raise ModelValidationError(f"ample class has square {a_sq} <= 0", "a_Y")
        k_sq = self._pair_y(self.k_Y, self.k_Y)
        if k_sq != self.kY_sq:
            raise ModelValidationError(
                f"k_Y has square {k_sq}, expected kY_sq = {self.kY_sq}", "kY_sq"
            )
        if self.kind in (SurfaceKind.K3, SurfaceKind.ABELIAN):
            if any(v != 0 for v in self.k_Y) or self.kY_sq != 0:
                raise ModelValidationError(
                    "canonical class must vanish numerically", "k_Y"
                )
        if self.pg is not None and self.irregularity is not None:
            if self.chi != 1 - self.irregularity + self.pg:
                raise ModelValidationError(
                    f"chi = {self.chi} but 1 - q + pg = {1 - self.irregularity + self.pg}",
                    "chi",
                )
        if all(v.denominator == 1 for row in self.gram_Y for v in row) and all(
            v.denominator == 1 for v in self.k_Y
        ):
            for i in range(m):
                if (self.gram_Y[i][i] + self.k_Y[i]) % 2 != 0:
                    raise ModelValidationError(
                        "adjunction parity fails: diagonal + k_Y entry must be even",
                        f"k_Y[{i}]",
                    )

    def _pair_y(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum(
            u[i] * self.gram_Y[i][j] * v[j]
            for i in range(len(u))
            for j in range(len(v))
        )

    @property
    def rank(self) -> int:
        return len(self.gram_Y)

    @property
    def a_sq(self) -> Fraction:
        return self._pair_y(self.a_Y, self.a_Y)

    @property
    def a_dot_k(self) -> Fraction:
        return self._pair_y(self.a_Y, self.k_Y)


@dataclass(frozen=True)
class BlowupModel:
    """X = Y blown up at r general points; lattice of rank rank(Y) + r."""

    base: SurfaceModel
    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 0:
            raise ModelValidationError("number of blown-up points must be a nonnegative integer", "r")

    @property
    def rank(self) -> int:
        return self.base.rank + self.r

    def gram_matrix(self) -> list[list[Fraction]]:
        m, rho = self.base.rank, self.rank
        gram = [[Fraction(0)] * rho for _ in range(rho)]
        for i in range(m):
            for j in range(m):
                gram[i][j] = self.base.gram_Y[i][j]
        for k in range(m, rho):
            gram[k][k] = Fraction(-1)
        return gram

    def divisor(self, coords: Iterable[ExactLike]) -> "DivisorClass":
        return DivisorClass(self, tuple(_coerce(c) for c in coords))

    def zero(self) -> "DivisorClass":
        return self.divisor([Fraction(0)] * self.rank)

    def pullback(self, y_coords: Sequence[ExactLike]) -> "DivisorClass":
        if len(y_coords) != self.base.rank:
            raise PreconditionError(
                f"pullback expects {self.base.rank} coordinates, got {len(y_coords)}"
            )
        return self.divisor(list(y_coords) + [Fraction(0)] * self.r)

    def exceptional(self, i: int) -> "DivisorClass":
        if not 1 <= i <= self.r:
            raise PreconditionError(f"exceptional index {i} out of range 1..{self.r}")
        coords = [Fraction(0)] * self.rank
        coords[self.base.rank + i - 1] = Fraction(1)
        return self.divisor(coords)

    def canonical(self) -> "DivisorClass":
        return self.divisor(list(self.base.k_Y) + [Fraction(1)] * self.r)

    def line(self) -> "DivisorClass":
        """Pullback of the chosen ample class of Y; nef with positive square."""
        return self.pullback(self.base.a_Y)

    def ample_h(self, delta: ExactLike) -> "DivisorClass":
        """L - delta * (E_1 + ... + E_r) with a uniform delta > 0."""
        delta = as_fraction(_coerce(delta))
        if delta <= 0:
            raise PreconditionError(f"delta must be positive, got {delta}")
        return self.divisor(list(self.base.a_Y) + [-delta] * self.r)


@dataclass(frozen=True)
class DivisorClass:
    """Coordinate vector in the blow-up basis, tagged with its model."""

    model: BlowupModel
    coords: tuple[Exact, ...]

    def __post_init__(self):
        if len(self.coords) != self.model.rank:
            raise ModelValidationError(
                f"expected {self.model.rank} coordinates, got {len(self.coords)}"
            )
        longest: tuple = ()
        for c in self.coords:
            k = _field_key(c)
            if len(k) > len(longest):
                longest = k
        for c in self.coords:
            if not _is_prefix(_field_key(c), longest):
                from .errors import MixedRadicandError

                raise MixedRadicandError(
                    "divisor coordinates must lie in a single radical tower"
                )

    @property
    def is_rational(self) -> bool:
        return all(is_rational(c) for c in self.coords)

    def is_zero(self) -> bool:
        return all(isinstance(c, Fraction) and c == 0 for c in self.coords)

    def _check_model(self, other: "DivisorClass"):
        if self.model != other.model:
            raise ModelMismatchError("divisor classes belong to different models")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check_model(other)
        return DivisorClass(self.model, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        if not isinstance(other, DivisorClass):
            return NotImplemented
        self._check_model(other)
        return DivisorClass(self.model, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.model, tuple(-c for c in self.coords))

    def __mul__(self, scale) -> "DivisorClass":
        try:
            scale = _coerce(scale)
        except TypeError:
            return NotImplemented
        return DivisorClass(self.model, tuple(scale * c for c in self.coords))

    __rmul__ = __mul__

    def __repr__(self):
        return f"DivisorClass({', '.join(str(c) for c in self.coords)})"


def intersect(x: DivisorClass, y: DivisorClass) -> Exact:
    """Intersection pairing on the blow-up: Y-block by gram_Y, E-block by -1."""
    x._check_model(y)
    m = x.model.base.rank
    gram = x.model.base.gram_Y
    total: Exact = Fraction(0)
    for i in range(m):
        if isinstance(x.coords[i], Fraction) and x.coords[i] == 0:
            continue
        row = gram[i]
        for j in range(m):
            if row[j] != 0:
                total = total + x.coords[i] * row[j] * y.coords[j]
    for k in range(m, x.model.rank):
        total = total - x.coords[k] * y.coords[k]
    return total


def self_intersection(x: DivisorClass) -> Exact:
    return intersect(x, x)


def arithmetic_genus(c: DivisorClass) -> Fraction:
    """Genus by adjunction: 1 + (C^2 + C.K)/2, for integral rational classes."""
    k = c.model.canonical()
    value = intersect(c, c) + intersect(c, k)
    if not is_rational(value):
        raise AdjunctionParityError("non-integral class for adjunction")
    value = as_fraction(value)
    if value.denominator != 1 or value.numerator % 2 != 0:
        raise AdjunctionParityError(
            f"non-integral class for adjunction: C^2 + C.K = {value}"
        )
    return 1 + value / 2


def riemann_roch_chi(lb: DivisorClass) -> Fraction:
    """Euler characteristic chi(O) + (D^2 - D.K)/2 of a rational class."""
    if not lb.is_rational:
        raise PreconditionError("Riemann-Roch expects rational coordinates")
    k = lb.model.canonical()
    return lb.model.base.chi + as_fraction(intersect(lb, lb) - intersect(lb, k)) / 2


def virtual_and_expected_dim(lb: DivisorClass) -> tuple[Fraction, Fraction]:
    """(virtual, expected) dimension of the system attached to ``lb``.

    Callers assert the vanishing of second cohomology for this to carry
    geometric meaning; the assumption is recorded by consumers, not checked.
    """
    virtual = riemann_roch_chi(lb) - 1
    return virtual, max(virtual, Fraction(-1))
