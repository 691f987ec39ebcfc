# Copyright 2025 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Defines the Pydantic models describing a simulator run configuration.

The JSON config file maps one-to-one onto `RunConfig`; every field carries an
explicit default so that the echoed config reproduces a run exactly.
"""

import math
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum: str() and format() give the value."""

        __str__ = str.__str__
        __format__ = str.__format__
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

ED_MAX_SITES = 20


class CouplingLaw(StrEnum):
    """
    Enum representing the distance dependence of the couplings.
    """

    POWER_LAW = "power_law"
    NEAREST_NEIGHBOR = "nearest_neighbor"


class DistanceConvention(StrEnum):
    """
    Enum representing how periodic distances enter the couplings.
    """

    MINIMUM_IMAGE = "minimum_image"
    IMAGE_SUMMED = "image_summed"


class InertiaMode(StrEnum):
    """
    Enum representing the source of the rotor moment of inertia.
    """

    BARE = "bare"
    TOS_SCALED = "tos-scaled"
    TOS_EXACT = "tos-exact"


class Command(StrEnum):
    """
    Enum representing the CLI sub-commands.
    """

    DYNAMICS = "dynamics"
    SCAN = "scan"
    TOS = "tos"
    ORACLE_COMPARE = "oracle-compare"


class LatticeSpec(BaseModel):
    """
    Periodic lattice geometry, coupling law, anisotropy and spin length.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    dimension: Literal[1, 2] = 2
    linear_size: int = Field(default=4, ge=2)
    coupling_law: CouplingLaw = CouplingLaw.POWER_LAW
    alpha: float = Field(default=3.0, ge=0.0)
    coupling_strength: float = Field(default=1.0, gt=0.0)
    anisotropy: float = 0.0
    spin: float = Field(default=0.5, gt=0.0)
    distance_convention: DistanceConvention = DistanceConvention.MINIMUM_IMAGE

    @property
    def n_sites(self) -> int:
        """
        Number of sites N = L^d.
        """
        return self.linear_size**self.dimension

    @property
    def shape(self) -> tuple[int, ...]:
        """
        Lattice shape, one entry of L per axis.
        """
        return (self.linear_size,) * self.dimension

    @model_validator(mode="after")
    @classmethod
    def validate_lattice(cls, values: "LatticeSpec") -> "LatticeSpec":
        """
        Validates the spin length and the convergence of image sums.
        """
        if not math.isclose(2 * values.spin, round(2 * values.spin)):
            raise ValueError("'spin' must be a multiple of 1/2")
        if (
            values.distance_convention == DistanceConvention.IMAGE_SUMMED
            and values.coupling_law == CouplingLaw.POWER_LAW
            and values.alpha <= values.dimension
        ):
            raise ValueError(
                "'image_summed' distances require 'alpha' > 'dimension'"
            )
        return values


class ToSReference(BaseModel):
    """
    Reference triple (N_ref, J_0 at N_ref, I_ToS at N_ref) used by the
    tower-of-states scaling formula.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_ref: int = Field(ge=2)
    j0_ref: float = Field(gt=0.0)
    i_tos_ref: float


class InertiaConfig(BaseModel):
    """
    Selects the rotor moment of inertia.
    """

    model_config = ConfigDict(extra="forbid")

    mode: InertiaMode = InertiaMode.BARE
    reference: Optional[ToSReference] = None

    @model_validator(mode="after")
    @classmethod
    def validate_reference(cls, values: "InertiaConfig") -> "InertiaConfig":
        """
        Validates that a reference triple is given for the scaled mode.
        """
        if values.mode == InertiaMode.TOS_SCALED and values.reference is None:
            raise ValueError(
                "'reference' is required when 'mode' is 'tos-scaled'"
            )
        return values


class TimeGrid(BaseModel):
    """
    Output times in units of 1/J, either as (start, stop, step) or as an
    explicit strictly increasing list.
    """

    model_config = ConfigDict(extra="forbid")

    start: float = Field(default=0.0, ge=0.0)
    stop: Optional[float] = 2.0
    step: Optional[float] = 0.05
    times: Optional[list[float]] = None

    @model_validator(mode="after")
    @classmethod
    def validate_grid(cls, values: "TimeGrid") -> "TimeGrid":
        """
        Validates that the grid is well formed and strictly increasing.
        """
        if values.times is not None:
            if any(b <= a for a, b in zip(values.times, values.times[1:])):
                raise ValueError("'times' must be strictly increasing")
            if any(t < 0 for t in values.times):
                raise ValueError("'times' must be non-negative")
            return values
        if values.stop is None or values.step is None:
            raise ValueError(
                "either 'times' or both 'stop' and 'step' are required"
            )
        if values.step <= 0:
            raise ValueError("'step' must be positive")
        if values.stop < values.start:
            raise ValueError("'stop' must not precede 'start'")
        return values

    def values(self) -> np.ndarray:
        """
        Materializes the grid as an array.
        """
        if self.times is not None:
            return np.asarray(self.times, dtype=float)
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(count)


class ObservableSelection(BaseModel):
    """
    Selects the optional, more expensive observables.
    """

    model_config = ConfigDict(extra="forbid")

    entropy: bool = True
    sw_entropy: bool = True
    correlations: bool = False


class RegionSpec(BaseModel):
    """
    Entanglement bipartition. Only the contiguous half (an L x L/2 rectangle
    in 2d, the first N/2 sites in 1d) is supported.
    """

    model_config = ConfigDict(extra="forbid")

    shape: Literal["half_rectangle"] = "half_rectangle"


class ScanSpec(BaseModel):
    """
    Grid of power-law exponents and chain lengths for the squeezing scan.
    """

    model_config = ConfigDict(extra="forbid")

    alphas: list[float] = Field(default=[1.0, 1.5, 2.0, 2.5, 3.0], min_length=1)
    sizes: list[int] = Field(
        default=[64, 128, 256, 512, 1024], min_length=1
    )
    points: int = Field(default=400, ge=8)
    horizon: float = Field(default=1.0, gt=0.0)
    first_time_fraction: float = Field(default=1e-3, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    @classmethod
    def validate_scan(cls, values: "ScanSpec") -> "ScanSpec":
        """
        Validates the scan grid entries.
        """
        if any(a < 0 for a in values.alphas):
            raise ValueError("'alphas' must be non-negative")
        if any(n < 2 for n in values.sizes):
            raise ValueError("'sizes' must be at least 2")
        return values


class EDSpec(BaseModel):
    """
    Settings of the exact-diagonalization oracle.
    """

    model_config = ConfigDict(extra="forbid")

    full_diag_max_sites: int = Field(default=14, ge=2, le=ED_MAX_SITES)
    krylov_dim: int = Field(default=40, ge=4)
    krylov_tol: float = Field(default=1e-12, gt=0.0)
    max_jz: int = Field(default=4, ge=2)
    fit_residual_threshold: float = Field(default=1e-3, gt=0.0)


class OutputSpec(BaseModel):
    """
    Output naming and optional dumps.
    """

    model_config = ConfigDict(extra="forbid")

    prefix: str = "run"
    dump_couplings: bool = False


class RunConfig(BaseModel):
    """
    Complete run configuration.
    """

    model_config = ConfigDict(extra="forbid")

    lattice: LatticeSpec = Field(default_factory=LatticeSpec)
    inertia: InertiaConfig = Field(default_factory=InertiaConfig)
    time_grid: TimeGrid = Field(default_factory=TimeGrid)
    observables: ObservableSelection = Field(
        default_factory=ObservableSelection
    )
    region: RegionSpec = Field(default_factory=RegionSpec)
    scan: ScanSpec = Field(default_factory=ScanSpec)
    ed: EDSpec = Field(default_factory=EDSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)
    workers: int = Field(default=1, ge=1)
    validity_threshold: float = Field(default=0.1, gt=0.0)

    def check_command(self, command: Command) -> list[str]:
        """
        Returns the problems that make this config unusable for a command.
        """
        problems = []
        n_sites = self.lattice.n_sites
        needs_ed = command in (Command.TOS, Command.ORACLE_COMPARE) or (
            self.inertia.mode == InertiaMode.TOS_EXACT
            and command != Command.SCAN
        )
        if needs_ed and n_sites > ED_MAX_SITES:
            problems.append(
                f"lattice: exact diagonalization supports N <= {ED_MAX_SITES}, "
                f"got N = {n_sites}"
            )
        if needs_ed and not math.isclose(self.lattice.spin, 0.5):
            problems.append("lattice: exact diagonalization requires spin 1/2")
        if command == Command.SCAN:
            if self.lattice.dimension != 1:
                problems.append("lattice: scan mode requires 'dimension' = 1")
            if self.inertia.mode != InertiaMode.BARE:
                problems.append("inertia: scan mode requires 'mode' = 'bare'")
            if (
                self.lattice.distance_convention
                == DistanceConvention.IMAGE_SUMMED
                and any(alpha <= 1.0 for alpha in self.scan.alphas)
            ):
                problems.append(
                    "scan: image-summed couplings require every alpha > 1"
                )
        return problems
