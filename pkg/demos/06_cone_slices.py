"""Export an affine slice of the positive cone for plotting.

The lattice is diagonalized by a rational congruence and each class is
scaled into the slice pairing to 1 against the pullback class; exceptional
classes pair to zero and are flagged at infinity.  The emitted CSV contains
sampled boundary points of the cone circle for the figure backdrop.
"""

from surface_cones import (
    BlowupModel,
    SurfaceModel,
    diagonalize,
    make_scalar,
    render_slice_csv,
    slice_export,
)

plane = SurfaceModel(chi=1, kY_sq=9, gram_Y=((1,),), k_Y=(-3,), a_Y=(1,), kind="P2")
model = BlowupModel(plane, 2)

report = diagonalize(model)
print(f"signature of Bl_2: ({report.n_plus}, {report.n_minus}, {report.n_zero})")

s = make_scalar(0, 1, 2)
classes = [
    model.exceptional(1),
    model.exceptional(2),
    model.pullback([1]) - model.exceptional(1) - model.exceptional(2),
    model.canonical() - s * model.line(),
]
labels = ["E1", "E2", "H-E1-E2", "K-sqrt(2)L"]
rows = slice_export(model, classes, model.line(), labels=labels, boundary_samples=8)
print(render_slice_csv(rows, model.rank))
