from .exact import I, ONE, ZERO, ExactComplex
from .jet import (Jet3, JetMap3, coeff, format_jet, identity_array, jacobian_matrix, jet_matmul, jet_matvec,
                  jet_mul, jet_reciprocal, jet_substitute, monomials, truncated_inverse_jacobian)
from .linear import LinearMap3, linear_conjugate
