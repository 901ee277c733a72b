"""Planar Minkowski billiards: convex bodies, caustics and their duals."""

try:
    # wheel layout: the extension lives inside the package
    from . import _minkoscope as _core
except ImportError:
    # build-tree layout: the extension sits on PYTHONPATH next to the package
    import _minkoscope as _core

BilliardConfig = _core.BilliardConfig
ConvexBody = _core.ConvexBody
MinkoscopeError = _core.MinkoscopeError
counterexample_report = _core.counterexample_report
dual_caustic_polygon = _core.dual_caustic_polygon
dual_caustic_smooth = _core.dual_caustic_smooth
hausdorff_distance = _core.hausdorff_distance
invariant_summary = _core.invariant_summary
iterate_trajectory = _core.iterate_trajectory
minkowski_perimeter = _core.minkowski_perimeter
string_construct = _core.string_construct
string_length = _core.string_length
verify_caustic = _core.verify_caustic
verify_duality = _core.verify_duality

__all__ = [
    "BilliardConfig",
    "ConvexBody",
    "MinkoscopeError",
    "counterexample_report",
    "dual_caustic_polygon",
    "dual_caustic_smooth",
    "hausdorff_distance",
    "invariant_summary",
    "iterate_trajectory",
    "minkowski_perimeter",
    "string_construct",
    "string_length",
    "verify_caustic",
    "verify_duality",
]
