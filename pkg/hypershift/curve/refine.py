"""Invariant curve as a truncated Fourier series solving G(z(θ)) = z(θ + ρ).

z(θ) = a_0 + Σ_k (a_k cos kθ + b_k sin kθ) for each reduced coordinate. The
coefficients and ρ are found by damped Gauss-Newton on a collocation grid,
with the phase pinned by Im ξ̂_1 = 0.
"""
import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from hypershift.coords.reduced import REDUCED_LABELS, reduced_map_array
from hypershift.curve.estimate import estimate_curve
from hypershift.curve.orbit import OrbitSample, xi_projection_array, xi_row
from hypershift.model.hypercycle import Params
from hypershift.utils.enum_class import Classification, Defaults
from hypershift.utils.exceptions import NoConvergence, PreconditionViolation

MIN_MODES = 8
FD_STEP = 1e-7
STALL_ITERS = 8


def _basis(theta: np.ndarray, modes: int) -> np.ndarray:
    k = np.arange(1, modes + 1)
    angles = np.outer(theta, k)
    return np.hstack([np.ones((len(theta), 1)), np.cos(angles), np.sin(angles)])


def _basis_derivative(theta: np.ndarray, modes: int) -> np.ndarray:
    k = np.arange(1, modes + 1)
    angles = np.outer(theta, k)
    return np.hstack([np.zeros((len(theta), 1)), -k * np.sin(angles), k * np.cos(angles)])


def _to_complex(a: np.ndarray, modes: int) -> np.ndarray:
    """Real coefficients (2M+1, 3) to e^{ikθ} coefficients (3, M+1), k ≥ 0."""
    c = np.empty((3, modes + 1), dtype=complex)
    c[:, 0] = a[0]
    c[:, 1:] = (a[1:modes + 1] - 1j * a[modes + 1:]).T / 2.0
    return c


def _from_complex(c: np.ndarray) -> np.ndarray:
    modes = c.shape[1] - 1
    a = np.empty((2 * modes + 1, 3), dtype=float)
    a[0] = c[:, 0].real
    a[1:modes + 1] = 2.0 * c[:, 1:].real.T
    a[modes + 1:] = -2.0 * c[:, 1:].imag.T
    return a


def _pin_phase(a: np.ndarray, modes: int) -> np.ndarray:
    """Shift θ so the first ξ harmonic is real and positive."""
    c = _to_complex(a, modes)
    psi = np.angle(xi_row() @ c[:, 1])
    return _from_complex(c * np.exp(-1j * psi * np.arange(modes + 1)))


@dataclass(frozen=True, eq=False)
class FourierCurve:
    modes: np.ndarray
    rho: float
    residual: float
    iterations: int = 0

    @property
    def mode_count(self) -> int:
        return self.modes.shape[1] - 1

    def coefficients(self) -> np.ndarray:
        return _from_complex(self.modes)

    def evaluate(self, theta) -> np.ndarray:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return _basis(theta, self.mode_count) @ self.coefficients()

    def radius(self, samples: int = 1024) -> float:
        """Mean |ξ(θ)| over a uniform grid."""
        theta = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
        return float(np.abs(xi_projection_array(self.evaluate(theta))).mean())

    def to_json(self) -> dict:
        return {
            'rho': self.rho,
            'residual': self.residual,
            'iterations': self.iterations,
            'modes': {label: [[k, float(v.real), float(v.imag)] for k, v in enumerate(self.modes[i])]
                      for i, label in enumerate(REDUCED_LABELS)},
        }


def _map_jacobians(points: np.ndarray, p: Params) -> np.ndarray:
    """Central-difference DG at each point, shape (N, 3, 3)."""
    jac = np.empty((len(points), 3, 3))
    for d in range(3):
        step = np.zeros(3)
        step[d] = FD_STEP
        jac[:, :, d] = (reduced_map_array(points + step, p) - reduced_map_array(points - step, p)) / (2 * FD_STEP)
    return jac


def _phase_row(modes: int) -> np.ndarray:
    """Gradient of Im ξ̂_1 with respect to the real coefficients and ρ."""
    row = xi_row()
    grad = np.zeros((2 * modes + 1, 3))
    grad[1] = row.imag / 2.0
    grad[modes + 1] = -row.real / 2.0
    return np.append(grad.ravel(), 0.0)


def _residual(a: np.ndarray, rho: float, theta: np.ndarray, p: Params, modes: int) -> np.ndarray:
    z = _basis(theta, modes) @ a
    shifted = _basis(theta + rho, modes) @ a
    return (reduced_map_array(z, p) - shifted).ravel()


def _system(a, rho, theta, p, modes, phase):
    b0 = _basis(theta, modes)
    b_rho = _basis(theta + rho, modes)
    z = b0 @ a
    residual = (reduced_map_array(z, p) - b_rho @ a).ravel()
    dg = _map_jacobians(z, p)
    n = len(theta)
    jac = np.einsum('jcd,jm->jcmd', dg, b0) - np.einsum('cd,jm->jcmd', np.eye(3), b_rho)
    jac = jac.reshape(3 * n, 3 * (2 * modes + 1))
    d_rho = -(_basis_derivative(theta + rho, modes) @ a).ravel()
    jac = np.column_stack([jac, d_rho])
    phase_value = phase[:-1] @ a.ravel()
    return np.append(residual, phase_value), np.vstack([jac, phase])


def initial_curve(o: OrbitSample, modes: int) -> tuple:
    """Fourier coefficients and ρ fitted to an orbit through θ_n = θ_0 + ρ n."""
    angles = np.unwrap(np.angle(o.xi()))
    steps = np.arange(len(angles), dtype=float)
    rho, theta0 = np.polyfit(steps, angles, 1)
    theta = theta0 + rho * steps
    a, *_ = np.linalg.lstsq(_basis(theta, modes), o.points, rcond=None)
    return _pin_phase(a, modes), float(rho)


def _newton(p: Params, o: OrbitSample, modes: int, max_iter: int, tol: float) -> FourierCurve:
    a, rho = initial_curve(o, modes)
    grid = 4 * (2 * modes + 1)
    theta = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    phase = _phase_row(modes)
    size = 3 * (2 * modes + 1)

    best, best_it = math.inf, 0
    for it in range(max_iter + 1):
        residual, jac = _system(a, rho, theta, p, modes, phase)
        current = float(np.abs(residual[:-1]).max())
        if current < 0.9 * best:
            best_it = it
        best = min(best, current)
        logger.debug(f'refine iteration {it} ({modes} modes): residual {current:.3e}, ρ={rho:.12f}')
        if current < tol:
            logger.info(f'invariant curve: ρ={rho}, residual {current:.3e} after {it} iterations, {modes} modes')
            return FourierCurve(modes=_to_complex(a, modes), rho=float(rho), residual=current, iterations=it)
        if it == max_iter:
            break
        if it - best_it >= STALL_ITERS:
            # truncation floor of this mode count
            raise NoConvergence(f'residual stalled at {best:.3e} with {modes} modes', best_residual=best)
        step, *_ = np.linalg.lstsq(jac, -residual, rcond=None)
        norm = np.linalg.norm(residual)
        damping = 1.0
        while damping > 1.0 / 64:
            trial_a = a + damping * step[:size].reshape(a.shape)
            trial_rho = rho + damping * step[size]
            trial = _residual(trial_a, trial_rho, theta, p, modes)
            trial_phase = phase[:-1] @ trial_a.ravel()
            if np.linalg.norm(np.append(trial, trial_phase)) < norm:
                break
            damping /= 2.0
        a, rho = trial_a, trial_rho
    raise NoConvergence(f'no invariant curve within {tol} after {max_iter} iterations', best_residual=best)


def refine_curve(p: Params, o: OrbitSample, modes: int = Defaults.MODES, max_iter: int = Defaults.REFINE_MAX_ITER,
                 tol: float = Defaults.REFINE_TOL, max_modes: int = Defaults.MAX_MODES) -> FourierCurve:
    """Fourier curve through the orbit, refined until the collocation residual is below ``tol``.

    When the residual stalls the mode count is doubled, up to ``max_modes``.
    """
    if modes < MIN_MODES:
        raise PreconditionViolation(f'modes={modes} < {MIN_MODES}')
    estimate = estimate_curve(o)
    if estimate.classification != Classification.CLOSED_CURVE:
        raise PreconditionViolation(f'orbit is classified {estimate.classification}, not a closed curve')
    while True:
        try:
            return _newton(p, o, modes, max_iter, tol)
        except NoConvergence as e:
            if 2 * modes > max_modes:
                raise
            logger.info(f'{e}; retrying with {2 * modes} modes')
            modes *= 2


def invariance_defect(curve: FourierCurve, p: Params, n_test: int = 1000, seed: int = 0) -> float:
    """max ‖G(z(θ)) - z(θ + ρ)‖ at random test angles."""
    theta = np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi, n_test)
    image = reduced_map_array(curve.evaluate(theta), p)
    return float(np.linalg.norm(image - curve.evaluate(theta + curve.rho), axis=1).max())
