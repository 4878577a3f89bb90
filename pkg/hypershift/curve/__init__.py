from .orbit import (ConvergenceRecord, OrbitSample, SettleRecord, attract_orbit, converge_to_Q, curve_seed,
                    default_seed, settle, settle_cap, xi_projection, xi_projection_array)
from .estimate import CurveEstimate, estimate_curve, estimate_point
from .scaling import ScalingFit, fit_scaling, sweep_estimates, sweep_scaling
from .refine import FourierCurve, invariance_defect, refine_curve
