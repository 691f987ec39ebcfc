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
This module defines the domain value types shared by the simulator
packages.

Classes:
- LatticeModel: Periodic lattice with couplings and Fourier couplings.
- RotorState: Rotor amplitudes over the K^z eigenbasis.
- RotorMoments: First and second moments of the rotor variable.
- InertiaSet: Bare and tower-of-states moments of inertia.
- SWCoefficients: Quadratic spin-wave coefficients per momentum.
- SWModeSet: Spin-wave populations and anomalous averages at a time.
- GreenFunctions: Real-space normal and anomalous spin-wave averages.
- SectorBreakdown: A value split into rotor and spin-wave parts.
- CorrelationMap: Correlator per displacement with its sector parts.
- GaussianRegionState: Spin-wave covariance restricted to a region.
- ObservableRecord: All observables at one time.
- EDState: Exact many-body state organized by J^z sectors.
- ToSFit: Result of the tower-of-states fit.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from common.entities.request_models import LatticeSpec, ToSReference


class LatticeModel:
    """
    Represents a periodic lattice with its coupling matrix J_ij and the
    Fourier couplings J_q. Sites and momenta share one row-major order with
    the origin (and q = 0) first.
    """

    spec: LatticeSpec
    positions: np.ndarray
    couplings: np.ndarray
    fourier: np.ndarray
    momenta: np.ndarray

    def __init__(
        self,
        spec: LatticeSpec,
        positions: np.ndarray,
        couplings: np.ndarray,
        fourier: np.ndarray,
    ) -> None:
        """
        Initializes a LatticeModel instance.
        """
        self.spec = spec
        self.positions = positions
        self.couplings = couplings
        self.fourier = fourier
        self.momenta = 2.0 * np.pi * positions / spec.linear_size
        self.positions.setflags(write=False)
        self.couplings.setflags(write=False)
        self.fourier.setflags(write=False)
        self.momenta.setflags(write=False)

    @property
    def n_sites(self) -> int:
        """
        Number of sites N.
        """
        return self.spec.n_sites

    @property
    def shape(self) -> tuple[int, ...]:
        """
        Lattice shape.
        """
        return self.spec.shape

    @property
    def j0(self) -> float:
        """
        Zero-momentum coupling J_{q=0}.
        """
        return float(self.fourier[0])

    @property
    def spin(self) -> float:
        """
        Spin length S.
        """
        return self.spec.spin

    @property
    def anisotropy(self) -> float:
        """
        Anisotropy Delta.
        """
        return self.spec.anisotropy

    def site_index(self, displacement: np.ndarray) -> np.ndarray:
        """
        Returns the row-major index of (possibly negative) lattice vectors,
        folded back into the periodic cell.
        """
        folded = np.mod(np.asarray(displacement), self.spec.linear_size)
        axes = tuple(np.moveaxis(folded, -1, 0))
        return np.ravel_multi_index(axes, self.shape)

    def minus_index(self) -> np.ndarray:
        """
        Returns, for every momentum index, the index of -q.
        """
        return self.site_index(-self.positions)

    def displacement_table(self) -> np.ndarray:
        """
        Returns the (N, N) table of displacement indices of r_j - r_i.
        """
        diff = self.positions[None, :, :] - self.positions[:, None, :]
        return self.site_index(diff)

    def __repr__(self) -> str:
        """
        Returns a string representation of the LatticeModel instance.
        """
        return (
            f"LatticeModel(d={self.spec.dimension}, L={self.spec.linear_size}, "
            f"J0={self.j0:.6g}, Delta={self.anisotropy}, S={self.spin})"
        )


@dataclass(frozen=True)
class RotorState:
    """
    Rotor amplitudes psi_M over M = -J_tot, ..., J_tot.
    """

    j_tot: float
    amplitudes: np.ndarray
    time: float = 0.0

    @property
    def m_values(self) -> np.ndarray:
        """
        Eigenvalues M of K^z, in the order of the amplitudes.
        """
        return -self.j_tot + np.arange(self.amplitudes.size)

    @property
    def norm(self) -> float:
        """
        Squared norm of the amplitudes.
        """
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class RotorMoments:
    """
    Moments of the rotor variable. `cov_yz` is the symmetric covariance
    matrix of (K^y, K^z).
    """

    mean_kx: float
    var_kx: float
    mean_ky: float
    mean_kz: float
    ky_squared: float
    kz_squared: float
    cov_yz: np.ndarray


@dataclass(frozen=True)
class InertiaSet:
    """
    Bare and tower-of-states moments of inertia, in units of 1/J.
    """

    i_bare: float
    i_tos: float
    reference: Optional[ToSReference] = None

    @property
    def frozen(self) -> bool:
        """
        True when the rotor does not evolve (Delta = 1).
        """
        return math.isinf(self.i_tos)


@dataclass(frozen=True)
class SWCoefficients:
    """
    Spin-wave coefficients for the finite momenta, in mode order.
    `omega` is sqrt(|A^2 - B^2|) and `stable` tags the oscillating modes.
    """

    q_index: np.ndarray
    a: np.ndarray
    b: np.ndarray
    omega: np.ndarray
    stable: np.ndarray


@dataclass(frozen=True)
class SWModeSet:
    """
    Populations n_q and anomalous averages m_q = <b_q b_{-q}> at a time.
    """

    time: float
    q_index: np.ndarray
    n: np.ndarray
    m: np.ndarray

    @property
    def n_fm(self) -> float:
        """
        Total number of finite-momentum bosons.
        """
        return float(np.sum(self.n))


@dataclass(frozen=True)
class GreenFunctions:
    """
    G(d) = <b_i^dag b_{i+d}> and F(d) = <b_i b_{i+d}> of the finite-momentum
    bosons, indexed by displacement in lattice order.
    """

    g: np.ndarray
    f: np.ndarray

    def matrices(self, model: LatticeModel) -> tuple[np.ndarray, np.ndarray]:
        """
        Expands G and F into (N, N) site matrices.
        """
        table = model.displacement_table()
        return self.g[table], self.f[table]


@dataclass(frozen=True)
class SectorBreakdown:
    """
    A value split into its rotor part, its spin-wave part and the combined
    value. Exact records leave both parts as NaN.
    """

    rotor: float
    sw: float
    total: float

    @classmethod
    def exact(cls, total: float) -> "SectorBreakdown":
        """
        Builds a breakdown carrying only the exact total.
        """
        return cls(math.nan, math.nan, total)


@dataclass(frozen=True)
class CorrelationMap:
    """
    Full correlator <S_i^a S_{i+d}^a> for every displacement d, split into
    rotor part, spin-wave part and combined value.
    """

    displacements: np.ndarray
    rotor: np.ndarray
    sw: np.ndarray
    total: np.ndarray


@dataclass(frozen=True)
class GaussianRegionState:
    """
    Quadrature covariance of the spin-wave bosons restricted to a region,
    ordered (x_1, ..., x_n, p_1, ..., p_n) with vacuum variance 1/2.
    """

    sites: np.ndarray
    covariance: np.ndarray


@dataclass(frozen=True)
class ObservableRecord:
    """
    Observables at one time. Each breakdown stores (rotor, SW, combined).
    """

    time: float
    n_sites: int
    mean_jx: SectorBreakdown
    var_jx: SectorBreakdown
    min_var_perp: float
    xi2: float
    mean_jz: float
    var_jz: float
    n0_density: float
    nfm_density: float
    renyi2: SectorBreakdown
    cyy: Optional[CorrelationMap] = None
    czz: Optional[CorrelationMap] = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    @property
    def extrapolated(self) -> bool:
        """
        True when a validity flag fired for this record.
        """
        return bool(self.flags)


@dataclass
class EDState:
    """
    Exact many-body state. `amplitudes[k]` holds the amplitudes of the
    sector with k up spins over the basis `basis[k]` of sorted bit strings.
    """

    n_sites: int
    basis: dict[int, np.ndarray]
    amplitudes: dict[int, np.ndarray]
    time: float = 0.0

    @property
    def norm(self) -> float:
        """
        Squared norm of the state.
        """
        return float(
            sum(np.sum(np.abs(v) ** 2) for v in self.amplitudes.values())
        )

    def sector_weights(self) -> dict[int, float]:
        """
        Squared norm of every J^z sector.
        """
        return {
            k: float(np.sum(np.abs(v) ** 2))
            for k, v in self.amplitudes.items()
        }

    def to_full(self) -> np.ndarray:
        """
        Assembles the 2^N amplitude vector indexed by bit string.
        """
        full = np.zeros(2**self.n_sites, dtype=complex)
        for k, states in self.basis.items():
            full[states] = self.amplitudes[k]
        return full


@dataclass(frozen=True)
class ToSFit:
    """
    Tower-of-states fit E(M) = E_0 + M^2 / (2 I_ToS) of sector minima.
    """

    n_sites: int
    e0: float
    i_tos: float
    residual: float
    sector_minima: dict[float, float]
