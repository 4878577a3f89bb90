from dataclasses import dataclass
from typing import Optional

import numpy as np

from hypershift.model.hypercycle import N_SPECIES, Params, SimplexPoint, check_domain, flux
from hypershift.utils.enum_class import Stability
from hypershift.utils.exceptions import DegenerateParameter

# powers ω^j of the primitive fourth root of unity with positive imaginary part
OMEGA_POWERS = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple
    moduli: tuple
    transversal_index: Optional[int] = None

    @classmethod
    def from_eigenvalues(cls, eigenvalues, transversal_index=None) -> 'SpectrumReport':
        eigenvalues = tuple(complex(v) for v in eigenvalues)
        return cls(eigenvalues, tuple(abs(v) for v in eigenvalues), transversal_index)

    @property
    def stability(self) -> str:
        top = max(self.moduli)
        if top > 1.0:
            return Stability.UNSTABLE
        if top < 1.0:
            return Stability.STABLE
        return Stability.NEUTRAL

    def contains(self, value: complex, tol: float) -> bool:
        return any(abs(v - value) <= tol for v in self.eigenvalues)

    def multiplicity(self, value: complex, tol: float) -> int:
        return sum(1 for v in self.eigenvalues if abs(v - value) <= tol)


def closed_form_spectrum(p: Params) -> SpectrumReport:
    """λ0 = 1 + 1/(M1+1) and λ_j = 1 + ω^j/(M1+1), j = 1, 2, 3."""
    if p.k[0] <= 0:
        raise DegenerateParameter(f'closed-form spectrum of P needs k1 > 0, got k1={p.k[0]}')
    c = 1.0 / (p.M1 + 1.0)
    return SpectrumReport.from_eigenvalues([1.0 + c * w for w in OMEGA_POWERS], transversal_index=0)


def transversal_multiplier(p: Params) -> float:
    """Eigenvalue 1/(1 + φ(P)) = M1/(M1+1) of the 4×4 Jacobian across the plane Σx = 1."""
    if p.k[0] <= 0:
        raise DegenerateParameter(f'P is not in the simplex for k1={p.k[0]}')
    return p.M1 / (p.M1 + 1.0)


def jacobian(x: SimplexPoint, p: Params) -> np.ndarray:
    """Analytic derivative of the map, by the quotient rule on F_i = u_i / (1 + φ)."""
    k = p.k
    phi = flux(x, p)
    check_domain(x, p, phi)
    denominator = 1.0 + phi
    u = np.array([(1.0 + k[i] * x[i - 1]) * x[i] for i in range(N_SPECIES)])
    du = np.zeros((N_SPECIES, N_SPECIES))
    for i in range(N_SPECIES):
        du[i, i] = 1.0 + k[i] * x[i - 1]
        du[i, (i - 1) % N_SPECIES] += k[i] * x[i]
    dphi = np.array([k[j] * x[j - 1] + k[(j + 1) % N_SPECIES] * x[(j + 1) % N_SPECIES] for j in range(N_SPECIES)])
    return du / denominator - np.outer(u, dphi) / denominator ** 2


def jacobian_spectrum(x: SimplexPoint, p: Params) -> SpectrumReport:
    eigenvalues, eigenvectors = np.linalg.eig(jacobian(x, p))
    parallel = []
    for idx in range(N_SPECIES):
        v = eigenvectors[:, idx]
        v = v / v[np.argmax(np.abs(v))]
        if np.allclose(v, 1.0, atol=1e-8):
            parallel.append(idx)
    transversal = parallel[0] if len(parallel) == 1 else None
    return SpectrumReport.from_eigenvalues(eigenvalues, transversal_index=transversal)


def vertex_spectrum(m: int, p: Params) -> SpectrumReport:
    """Eigenvalues of the Jacobian at the vertex q^(m), m = 1..4: 1 (triple) and 1 + k_{m+1}."""
    if not 1 <= m <= N_SPECIES:
        raise ValueError(f'vertex index must be in 1..{N_SPECIES}, got {m}')
    return SpectrumReport.from_eigenvalues([1.0, 1.0, 1.0, 1.0 + p.k[m % N_SPECIES]])


def match_eigenvalues(expected, computed) -> float:
    """Largest distance from each expected eigenvalue to its nearest computed one."""
    computed = list(computed)
    return max(min(abs(e - c) for c in computed) for e in expected)
