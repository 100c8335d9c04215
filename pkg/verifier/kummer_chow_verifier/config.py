# kummer_chow_verifier/config.py
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Shared configuration
DEFAULT_SEED = 20240601
COCYCLE_SAMPLES = 10_000
DEFAULT_POINTS = 5

TOL_QUADRATURE = 1e-12
TOL_FD = 1e-4  # inhomogeneous residual bound
TOL_HOMOGENEOUS = 1e-5
TOL_H_IDENTITY = 1e-5
TOL_REDUCTION = 1e-8
TOL_BETA = 1e-10

FD_STEP = 1e-3
FD_QUADRATURE_LEVEL = 7
MAX_LEVEL = 12
TRUNCATION_T = 4.5

RANK_THRESHOLD = 1e-8
RANK_POINTS = 24
RANK_POINT_SETS = 3

SAMPLE_REGION = (-2.0, -0.2)
POLE_MARGIN = 0.05

CONFIG = {
    "seed": DEFAULT_SEED,
    "cocycle_samples": COCYCLE_SAMPLES,
    "points": DEFAULT_POINTS,
    "tol_quadrature": TOL_QUADRATURE,
    "tol_fd": TOL_FD,
    "tol_homogeneous": TOL_HOMOGENEOUS,
    "tol_h_identity": TOL_H_IDENTITY,
    "tol_reduction": TOL_REDUCTION,
    "fd_step": FD_STEP,
    "fd_quadrature_level": FD_QUADRATURE_LEVEL,
    "rank_threshold": RANK_THRESHOLD,
    "rank_points": RANK_POINTS,
    "rank_point_sets": RANK_POINT_SETS,
}


class QuadratureSpec(BaseModel):
    """Tanh-sinh parameters: step 2**-level, nodes on |t| <= t_max."""

    model_config = ConfigDict(frozen=True)

    target_tol: float = TOL_QUADRATURE
    min_level: int = Field(default=3, ge=0, le=MAX_LEVEL)
    max_level: int = Field(default=MAX_LEVEL, ge=1, le=MAX_LEVEL)
    t_max: float = Field(default=TRUNCATION_T, gt=1.0, le=7.0)
    fixed_level: Optional[int] = Field(default=None, ge=0, le=MAX_LEVEL)

    @field_validator("target_tol")
    @classmethod
    def _tol_range(cls, value: float) -> float:
        if not 1e-14 < value < 1e-2:
            raise ValueError(f"target_tol must lie in (1e-14, 1e-2), got {value}")
        return value

    def frozen_at(self, level: int) -> "QuadratureSpec":
        return self.model_copy(update={"fixed_level": level})


class FDScheme(BaseModel):
    """Central differences with one Richardson level (h and h/2)."""

    model_config = ConfigDict(frozen=True)

    step: float = FD_STEP
    richardson: bool = True
    quadrature_level: int = Field(default=FD_QUADRATURE_LEVEL, ge=3, le=MAX_LEVEL)

    @field_validator("step")
    @classmethod
    def _step_range(cls, value: float) -> float:
        if not 1e-6 < value < 1e-2:
            raise ValueError(f"step must lie in (1e-6, 1e-2), got {value}")
        return value


class RunSettings(BaseModel):
    """Everything a command needs; built from CLI flags only."""

    model_config = ConfigDict(frozen=True)

    seed: int = DEFAULT_SEED
    points: int = Field(default=DEFAULT_POINTS, ge=1)
    samples: int = Field(default=COCYCLE_SAMPLES, ge=1)
    tol_quadrature: float = TOL_QUADRATURE
    tol_fd: float = Field(default=TOL_FD, gt=0.0, lt=1.0)
    fd_step: float = FD_STEP
    output_format: Literal["json", "csv"] = "json"
    out: Optional[Path] = None
    mode: Literal["table", "full-orbit", "canonical"] = "table"
    corrupt_table: bool = False
    deterministic: bool = False

    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(target_tol=self.tol_quadrature)

    def fd_scheme(self) -> FDScheme:
        return FDScheme(step=self.fd_step)

    @model_validator(mode="after")
    def _nested_ranges(self) -> "RunSettings":
        self.quadrature()
        self.fd_scheme()
        return self
