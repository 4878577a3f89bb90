# Copyright (c) Opendatalab. All rights reserved.
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from hypershift.model.hypercycle import Params
from hypershift.utils.enum_class import Defaults, OutputFormat


class RunConfig(BaseModel):
    """Everything a subcommand needs, validated before any computation."""
    model_config = ConfigDict(frozen=True)

    subcommand: str = Field(description='cli subcommand name')
    k: tuple[float, float, float, float] = Field(description='rate coefficients k1..k4', default=(0.05, 1.0, 1.0, 1.0))
    x0: Optional[tuple[float, float, float, float]] = Field(description='initial simplex point', default=None)
    z0: Optional[tuple[float, float, float]] = Field(description='initial reduced state', default=None)
    iters: int = Field(description='recorded iterations', default=Defaults.ITERS, ge=0)
    burn: Optional[int] = Field(description='discarded iterations; None settles until the orbits agree',
                                default=None, ge=0)
    tol: float = Field(description='state validity tolerance', default=Defaults.STATE_TOL, gt=0)
    q_tol: float = Field(description='distance to Q counted as converged', default=Defaults.Q_TOL, gt=0)
    grid: tuple[float, ...] = Field(description='k1 values of a sweep', default=Defaults.SWEEP_GRID)
    only: bool = Field(description='single sweep point at k1', default=False)
    modes: int = Field(description='Fourier modes of the refined curve', default=Defaults.MODES, ge=1)
    format: Literal['csv', 'json'] = Field(description='output format', default=OutputFormat.JSON)
    out: Optional[str] = Field(description='output file or directory', default=None)
    seed: Optional[int] = Field(description='seed for random initial phases', default=None)
    jobs: int = Field(description='worker processes for sweeps', default=1, ge=1)
    gate: bool = Field(description='turn acceptance thresholds into exit codes', default=False)
    show_steps: bool = Field(description='print the normal-form derivation', default=False)
    full: bool = Field(description='include slow checks in verify', default=False)

    @model_validator(mode='after')
    def check_params(self):
        # raises InvalidParams on an inadmissible k
        Params(k=self.k)
        return self

    @property
    def params(self) -> Params:
        return Params(k=self.k)
