from dataclasses import dataclass

from loguru import logger

from hypershift.coords.reduced import g_jet
from hypershift.jets.exact import I, ONE, ExactComplex
from hypershift.jets.linear import LinearMap3
from hypershift.utils.exceptions import DiscrepancyError, NotInverse

ZETA_LABELS = ('xi', 'xibar', 'eta')


@dataclass(frozen=True)
class EigenStructure:
    """Diagonalising change z = Cζ for Dg(0), with ζ = (ξ, ξ̄, η)."""
    C: LinearMap3
    Cinv: LinearMap3
    spectrum: tuple
    eigenvectors: tuple
    dg0: LinearMap3

    @property
    def omega(self) -> ExactComplex:
        return ExactComplex(self.spectrum[0].im)

    @property
    def stable_eigenvalue(self) -> ExactComplex:
        return self.spectrum[2]

    def to_json(self) -> dict:
        return {
            'C': self.C.to_json(),
            'Cinv': self.Cinv.to_json(),
            'spectrum': [v.to_json() for v in self.spectrum],
            'dg0': self.dg0.to_json(),
        }


def build_eigenstructure(dg0: LinearMap3 = None) -> EigenStructure:
    """C, C⁻¹ and the spectrum (i, -i, -1) of the reduced field's linear part.

    Both identities Cinv·C = Id and Cinv·Dg(0)·C = diag(i, -i, -1) are checked
    exactly before the structure is returned.
    """
    if dg0 is None:
        dg0 = LinearMap3.linear_part(g_jet())
    v1 = (ONE, -ONE, I)
    v2 = (ONE, -ONE, -I)
    v3 = (ONE, ONE, -ONE)
    C = LinearMap3.from_columns(v1, v2, v3)
    Cinv = LinearMap3([
        [ONE - I, -ONE - I, -2 * I],
        [ONE + I, -ONE + I, 2 * I],
        [2, 2, 0],
    ]).scale(ExactComplex(1, 0) / 4)
    if Cinv @ C != LinearMap3.identity():
        raise NotInverse(f'Cinv·C is not the identity:\n{Cinv @ C}')
    spectrum = (I, -I, -ONE)
    diagonal = Cinv @ dg0 @ C
    if diagonal != LinearMap3.diag(*spectrum):
        raise DiscrepancyError(f'Cinv·Dg(0)·C is not diag(i, -i, -1):\n{diagonal}')
    logger.debug(f'eigenstructure verified, spectrum {", ".join(str(v) for v in spectrum)}')
    return EigenStructure(C=C, Cinv=Cinv, spectrum=spectrum, eigenvectors=(v1, v2, v3), dg0=dg0)
