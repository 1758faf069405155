"""Ray-trapping thresholds and the cone-equality check on a blow-up.

For a curve of square -n the threshold s_n is the larger root of
(K - sL)^2 = -1/n, namely

    s_n = (A.K_Y + sqrt(D_n/4)) / A^2,
    D_n/4 = (A.K_Y)^2 - A^2*K_Y^2 + A^2*r - A^2/n,

and the trapping witness for a curve C of square -n and genus p is

    t0 = (-u + sqrt(u^2 - n/m)) / n,   u = C.(K - sL),
    alpha = t0*C - (K - sL),

computed here at any level m >= n with s = s_m, so that alpha^2 = 0 exactly
and the ray of C lies in the positive cone plus the ray of K - sL.  The
inequalities on r required for these constructions, and the sampled check
that the K-sL-nonnegative part of the generated cone stays inside the
positive cone, live here as exact predicates.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import ConePosition, in_positive_cone
from .errors import (
    InternalConsistencyError,
    PreconditionError,
    ThresholdError,
)
from .lattice import BlowupModel, DivisorClass, intersect
from .scalar import (
    Exact,
    as_fraction,
    compare,
    exact_sqrt,
    is_rational,
    sign,
    sqrt_scalar,
)
from .zariski import NegativeCurveRecord

_DELTA_CAP_ENV = "SURFACE_CONES_DELTA_CAP"


@dataclass(frozen=True)
class ThresholdContext:
    """The four numbers the threshold formulas depend on."""

    A_sq: Fraction
    AK: Fraction
    kY_sq: Fraction
    r: int

    @classmethod
    def from_model(cls, model: BlowupModel) -> "ThresholdContext":
        return cls(
            A_sq=model.base.a_sq,
            AK=model.base.a_dot_k,
            kY_sq=model.base.kY_sq,
            r=model.r,
        )

    def delta_quarter(self, n: int) -> Fraction:
        if n < 1:
            raise PreconditionError(f"level must be a positive integer, got {n}")
        return self.AK**2 - self.A_sq * self.kY_sq + self.A_sq * self.r - Fraction(self.A_sq, n)


def s_threshold(ctx: ThresholdContext, n: int) -> Exact:
    """Larger root of (K - sL)^2 = -1/n; strict positivity required at n = 1."""
    radicand = ctx.delta_quarter(n)
    if radicand < 0:
        raise ThresholdError(
            f"r too small for n = {n}: discriminant {radicand} < 0",
            binding=f"r >= K_Y^2 + 1/{n} - (A.K_Y)^2/A^2",
        )
    if n == 1 and radicand == 0:
        raise ThresholdError(
            "r too small for n = 1: strict inequality required",
            binding="r > K_Y^2 + 1 - (A.K_Y)^2/A^2",
        )
    return (ctx.AK + sqrt_scalar(radicand)) / ctx.A_sq


@dataclass(frozen=True)
class ConditionCheck:
    """Outcome of the combined r-inequality for bounds (nu, pi)."""

    satisfied: bool
    q: Fraction
    strict: bool
    bound: Fraction
    binding: str
    slack: Fraction


def check_conditions(ctx: ThresholdContext, nu: int, pi: int) -> ConditionCheck:
    """Combined condition on r for trapping all (-n,p)-rays with n <= nu, p <= pi.

    With q = 2*pi + nu - 1 the binding inequality is r > K_Y^2 + 1 -
    (A.K_Y)^2/A^2 when q <= A.K_Y/A^2, and r >= K_Y^2 + 1 + A^2*q^2 -
    2*(A.K_Y)*q otherwise.
    """
    if nu < 1 or pi < 0:
        raise PreconditionError(f"need nu >= 1 and pi >= 0, got ({nu}, {pi})")
    q = Fraction(2 * pi + nu - 1)
    if q <= ctx.AK / ctx.A_sq:
        bound = ctx.kY_sq + 1 - ctx.AK**2 / ctx.A_sq
        strict = True
        satisfied = ctx.r > bound
        binding = f"r > K_Y^2 + 1 - (A.K_Y)^2/A^2 = {bound}"
    else:
        bound = ctx.kY_sq + 1 + ctx.A_sq * q**2 - 2 * ctx.AK * q
        strict = False
        satisfied = ctx.r >= bound
        binding = f"r >= K_Y^2 + 1 + A^2*q^2 - 2*(A.K_Y)*q = {bound}"
    return ConditionCheck(
        satisfied=satisfied,
        q=q,
        strict=strict,
        bound=bound,
        binding=binding,
        slack=ctx.r - bound,
    )


def curve_conditions(ctx: ThresholdContext, n: int, p: int) -> str | None:
    """First violated r-inequality for a single (-n,p)-ray, or None."""
    if n == 1:
        bound1 = ctx.kY_sq + 1 - ctx.AK**2 / ctx.A_sq
        if not ctx.r > bound1:
            return f"r > K_Y^2 + 1 - (A.K_Y)^2/A^2 = {bound1}"
        if p > ctx.AK / (2 * ctx.A_sq):
            bound2 = ctx.kY_sq + 1 + 4 * ctx.A_sq * p**2 - 4 * ctx.AK * p
            if not ctx.r >= bound2:
                return f"r >= K_Y^2 + 1 + 4*A^2*p^2 - 4*(A.K_Y)*p = {bound2}"
        return None
    q = Fraction(2 * p + n - 1)
    bound1 = ctx.kY_sq + Fraction(1, n) - ctx.AK**2 / ctx.A_sq
    if not ctx.r >= bound1:
        return f"r >= K_Y^2 + 1/{n} - (A.K_Y)^2/A^2 = {bound1}"
    if q > ctx.AK / ctx.A_sq:
        bound2 = ctx.kY_sq + Fraction(1, n) + ctx.A_sq * q**2 - 2 * ctx.AK * q
        if not ctx.r >= bound2:
            return f"r >= K_Y^2 + 1/{n} + A^2*q^2 - 2*(A.K_Y)*q = {bound2}"
    return None


def delta_cap(model: BlowupModel) -> Fraction:
    """Default upper bound for the uniform delta; overridable by environment."""
    override = os.environ.get(_DELTA_CAP_ENV)
    if override:
        cap = Fraction(override)
        if cap <= 0:
            raise PreconditionError(f"{_DELTA_CAP_ENV} must be positive, got {cap}")
        return cap
    return Fraction(1, 2 * model.r) if model.r else Fraction(1, 2)


def choose_positive_delta(alpha: DivisorClass, cap: Fraction) -> Fraction | None:
    """Largest delta = cap/2^k with alpha.(L - delta*sum E_i) >= 0, or None.

    The pairing with L is fixed, so halving terminates whenever it is
    positive; the choice is deterministic and recorded in certificates.
    """
    model = alpha.model
    alpha_l = intersect(alpha, model.line())
    penalty: Exact = Fraction(0)
    for i in range(1, model.r + 1):
        penalty = penalty + intersect(alpha, model.exceptional(i))
    delta = cap
    for _ in range(64):
        if sign(alpha_l - delta * penalty) >= 0:
            return delta
        delta = delta / 2
    return None


@dataclass(frozen=True)
class CertificateChecks:
    alpha_sq_zero: bool
    alpha_dot_h_nonneg: bool
    t0_positive: bool

    def all_pass(self) -> bool:
        return self.alpha_sq_zero and self.alpha_dot_h_nonneg and self.t0_positive


@dataclass(frozen=True)
class RayContainmentCert:
    """Exact witness that the ray of one negative curve is trapped.

    ``alpha = t0*C - (K - sL)`` with all fields stored, so the witness can be
    re-verified from its serialized form alone.  ``level`` is the m with
    s = s_m; the curve's own n may be smaller when a whole list is certified
    at the top threshold.
    """

    curve: NegativeCurveRecord
    n: int
    p: int
    level: int
    s: Exact
    t0: Exact | None
    alpha: DivisorClass | None
    delta: Fraction | None
    checks: CertificateChecks
    valid: bool
    failing: str | None


def ray_certificate(
    model: BlowupModel,
    curve: NegativeCurveRecord,
    s: Exact,
    level: int | None = None,
    cap: Fraction | None = None,
) -> RayContainmentCert:
    """Build and check the trapping witness for one curve at threshold s.

    Precondition violations (wrong threshold, contracted non-exceptional
    curve) raise; failed witness inequalities mark the certificate invalid
    with the failing inequality named.
    """
    ctx = ThresholdContext.from_model(model)
    n = int(-curve.self_int)
    p = int(curve.genus)
    level = n if level is None else level
    if level < n:
        raise PreconditionError(f"certificate level {level} below curve level {n}")
    expected = s_threshold(ctx, level)
    if compare(s, expected) != 0:
        raise PreconditionError(f"s = {s} is not the threshold for level {level}")
    c_dot_l = intersect(curve.cls, model.line())
    if sign(c_dot_l) == 0 and not curve.is_exceptional:
        raise PreconditionError(
            "contracted curve is not exceptional; general points exclude it"
        )
    violated = curve_conditions(ctx, n, p)
    invalid = CertificateChecks(False, False, False)
    if violated is not None:
        return RayContainmentCert(
            curve, n, p, level, s, None, None, None, invalid, False, violated
        )

    k_minus_sl = model.canonical() - s * model.line()
    if compare(intersect(k_minus_sl, k_minus_sl), Fraction(-1, level)) != 0:
        raise InternalConsistencyError("(K - sL)^2 differs from -1/level")
    u = intersect(curve.cls, k_minus_sl)
    if compare(u, -1) > 0:
        return RayContainmentCert(
            curve, n, p, level, s, None, None, None, invalid,
            False, "C.(K - sL) <= -1",
        )
    t0 = (-u + sqrt_scalar(u * u - Fraction(n, level))) / n
    alpha = t0 * curve.cls - k_minus_sl
    alpha_sq_zero = sign(intersect(alpha, alpha)) == 0
    t0_positive = sign(t0) > 0
    delta = choose_positive_delta(alpha, cap if cap is not None else delta_cap(model))
    alpha_dot_h_nonneg = delta is not None
    checks = CertificateChecks(alpha_sq_zero, alpha_dot_h_nonneg, t0_positive)
    failing = None
    if not alpha_sq_zero:
        failing = "alpha_sq_zero"
    elif not t0_positive:
        failing = "t0_positive"
    elif not alpha_dot_h_nonneg:
        failing = "alpha_dot_h_nonneg"
    return RayContainmentCert(
        curve, n, p, level, s, t0, alpha, delta, checks, failing is None, failing
    )


def s_monotonicity(ctx: ThresholdContext, nu: int) -> list[Exact]:
    """Thresholds s_1 < s_2 < ... < s_nu, with the strict order verified exactly."""
    values = [s_threshold(ctx, n) for n in range(1, nu + 1)]
    for a, b in zip(values, values[1:]):
        if compare(a, b) >= 0:
            raise InternalConsistencyError(f"thresholds not strictly increasing: {a} >= {b}")
    return values


def k_minus_sl_h_negative(model: BlowupModel, s: Exact, delta: Fraction) -> Exact:
    """(K - sL).h for h = L - delta*sum E_i, checked against its closed form.

    The closed form is -sqrt(D_n/4) + r*delta, equivalently A.K_Y - s*A^2 +
    r*delta; a mismatch with the direct pairing is an internal error.
    """
    if delta <= 0:
        raise PreconditionError("delta must be positive")
    k_minus_sl = model.canonical() - s * model.line()
    direct = intersect(k_minus_sl, model.ample_h(delta))
    ctx = ThresholdContext.from_model(model)
    closed = ctx.AK - s * ctx.A_sq + model.r * delta
    if compare(direct, closed) != 0:
        raise InternalConsistencyError(
            f"(K-sL).h identity mismatch: direct {direct}, closed form {closed}"
        )
    return direct


@dataclass(frozen=True)
class SampledCounterexample:
    coords: tuple[Fraction, ...]
    pairing_sign: int


@dataclass(frozen=True)
class MainTheoremReport:
    nu: int
    pi: int
    s: Exact
    condition: ConditionCheck
    certificates: tuple[RayContainmentCert, ...]
    samples: int
    seed: int
    counterexamples: tuple[SampledCounterexample, ...]

    @property
    def passed(self) -> bool:
        return (
            self.condition.satisfied
            and all(c.valid for c in self.certificates)
            and not self.counterexamples
        )


def main_theorem_check(
    model: BlowupModel,
    curves: Sequence[NegativeCurveRecord],
    nu: int,
    pi: int,
    samples: int = 1000,
    seed: int = 0,
) -> MainTheoremReport:
    """Certify every listed ray, then try to falsify cone equality at s = s_nu.

    Each curve is certified at its own threshold s_n; the containment at the
    top threshold follows because s_n <= s_nu is verified exactly and adding
    a nonnegative multiple of the nef L moves K - s_nu L to K - s_n L inside
    the positive cone.  Sampling draws random conic combinations of list
    curves with a random rational class on the cone boundary; every sample
    pairing nonnegatively with K - s_nu L must land inside the positive
    cone, and any violation is reported exactly, never suppressed.
    """
    ctx = ThresholdContext.from_model(model)
    condition = check_conditions(ctx, nu, pi)
    if not condition.satisfied:
        raise ThresholdError(
            f"conditions for (nu, pi) = ({nu}, {pi}) fail", binding=condition.binding
        )
    for record in curves:
        n = int(-record.self_int)
        p = int(record.genus)
        if not 1 <= n <= nu:
            raise PreconditionError(
                f"curve with self-intersection {record.self_int} outside 1 <= n <= {nu}"
            )
        if not 0 <= p <= pi:
            raise PreconditionError(f"curve with genus {record.genus} outside 0 <= p <= {pi}")
    s = s_threshold(ctx, nu)
    certificates = []
    for record in curves:
        n = int(-record.self_int)
        certificate = ray_certificate(model, record, s_threshold(ctx, n), level=n)
        if compare(certificate.s, s) > 0:
            raise InternalConsistencyError("curve threshold exceeds the top threshold")
        certificates.append(certificate)
    certificates = tuple(certificates)
    k_minus_sl = model.canonical() - s * model.line()
    counterexamples: list[SampledCounterexample] = []
    for k in range(samples):
        rng = random.Random(seed * 1_000_003 + k)
        coords = list(_boundary_class(model, rng).coords)
        for record in curves:
            weight = rng.randint(0, 10)
            if weight:
                for idx, v in enumerate(record.cls.coords):
                    if v:
                        coords[idx] += weight * v
        gamma = model.divisor(coords)
        pairing = sign(intersect(gamma, k_minus_sl))
        if pairing >= 0 and in_positive_cone(gamma) is ConePosition.OUTSIDE:
            counterexamples.append(
                SampledCounterexample(
                    coords=tuple(as_fraction(c) for c in gamma.coords),
                    pairing_sign=pairing,
                )
            )
    return MainTheoremReport(
        nu=nu,
        pi=pi,
        s=s,
        condition=condition,
        certificates=certificates,
        samples=samples,
        seed=seed,
        counterexamples=tuple(counterexamples),
    )


def _boundary_class(model: BlowupModel, rng: random.Random) -> DivisorClass:
    """Random rational class on the boundary of the positive cone.

    Starts from c*L - (E_1 + ... + E_k) with c^2*A^2 = k when such a rational
    c exists for some k <= r, then moves along a random rational direction
    staying on the null quadric.  Falls back to L when the lattice admits no
    cheap rational null vector.
    """
    base = None
    for k in range(1, model.r + 1):
        c = exact_sqrt(Fraction(k) / model.base.a_sq)
        if c is not None and is_rational(c):
            coords = list(c * v for v in model.base.a_Y)
            coords += [Fraction(-1)] * k + [Fraction(0)] * (model.r - k)
            base = model.divisor(coords)
            break
    if base is None:
        return model.line()
    for _ in range(32):
        direction = model.divisor(
            [Fraction(rng.randint(-3, 3)) for _ in range(model.rank)]
        )
        d_sq = intersect(direction, direction)
        if sign(d_sq) == 0:
            continue
        t = -2 * intersect(base, direction) / d_sq
        x = base + t * direction
        if x.is_zero():
            continue
        x_dot_l = sign(intersect(x, model.line()))
        if x_dot_l < 0:
            x = -x
        elif x_dot_l == 0:
            continue
        return x
    return base
