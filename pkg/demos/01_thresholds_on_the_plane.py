"""Blow up the plane and watch the trapping threshold appear at r = 10.

For Y = P^2 (A = H, A^2 = 1, A.K_Y = -3, K_Y^2 = 9) the combined condition
on the number of blown-up points is r >= 10, and the threshold

    s_1 = -3 + sqrt(r - 1)

is 0 exactly at r = 10 (so the trapping class is K itself) and 1 at r = 17.
Everything below is exact: no floats take part in any comparison.
"""

from fractions import Fraction

from surface_cones import (
    BlowupModel,
    SurfaceModel,
    ThresholdContext,
    check_conditions,
    k_minus_sl_h_negative,
    s_monotonicity,
    s_threshold,
)
from surface_cones.errors import ThresholdError

plane = SurfaceModel(chi=1, kY_sq=9, gram_Y=((1,),), k_Y=(-3,), a_Y=(1,), kind="P2")

for r in (1, 9, 10, 11, 12, 17):
    model = BlowupModel(plane, r)
    ctx = ThresholdContext.from_model(model)
    condition = check_conditions(ctx, 1, 0)
    try:
        s = s_threshold(ctx, 1)
        s_text = str(s)
    except ThresholdError as exc:
        s_text = f"unavailable ({exc.binding})"
    print(f"r = {r:>2}: conditions {'hold' if condition.satisfied else 'fail'}"
          f" (binding {condition.binding}); s_1 = {s_text}")

print()
model = BlowupModel(plane, 17)
ctx = ThresholdContext.from_model(model)
print("thresholds s_1 < s_2 on Bl_17, verified exactly:",
      " < ".join(str(v) for v in s_monotonicity(ctx, 2)))

value = k_minus_sl_h_negative(BlowupModel(plane, 10), Fraction(0), Fraction(1, 100))
print(f"(K - 0*L).h with delta = 1/100 on Bl_10: {value}  (negative, as required)")
