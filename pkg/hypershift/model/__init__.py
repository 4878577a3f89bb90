from .hypercycle import (N_SPECIES, Params, SimplexPoint, euler_defect, flux, iterate, map_step,
                         vector_field)
from .fixed_points import (CORNER_Q, FixedPointCertificate, FixedSegment, boundary_fixed_segments,
                           interior_fixed_point, is_fixed_point, vertices)
from .spectrum import (SpectrumReport, closed_form_spectrum, jacobian, jacobian_spectrum,
                       match_eigenvalues, transversal_multiplier, vertex_spectrum)
