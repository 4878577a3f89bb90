from .barycentric import BarycentricPoint, barycentric_weight_sum, from_barycentric, to_barycentric
from .reduced import (REDUCED_LABELS, ReducedState, center_and_reduce, embed, g_exact, g_jet, map_remainder,
                      closed_form_step, reduced_map, reduced_map_array, reduced_map_closed_form, remainder_ratio,
                      uncenter)
