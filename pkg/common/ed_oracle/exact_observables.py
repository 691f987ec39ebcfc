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
Exact observables of an EDState, computed on the full 2^N amplitude vector
with collective operators applied through bit manipulations. Records use
the same schema as the rotor/spin-wave records; sector breakdowns carry
only the exact total.

Functions:
- apply_jplus: J^+ |psi>.
- apply_jminus: J^- |psi>.
- collective_moments: Moments of J in the RotorMoments layout.
- correlation_matrices: <S_i^y S_j^y> and <S_i^z S_j^z>.
- renyi2_exact: Rényi-2 entropy of a set of sites.
- exact_observables: ObservableRecord of an exact state.
"""

import math
from typing import Optional

import numpy as np

from common.ed_oracle.hamiltonian import popcount
from common.entities import (
    CorrelationMap,
    EDState,
    LatticeModel,
    ObservableRecord,
    ObservableSelection,
    RotorMoments,
    SectorBreakdown,
)
from common.entropy.gaussian_entropy import region_sites


def _all_states(n_sites: int) -> np.ndarray:
    return np.arange(2**n_sites, dtype=np.int64)


def apply_jplus(psi: np.ndarray, n_sites: int) -> np.ndarray:
    """
    Returns J^+ |psi> for a full amplitude vector.
    """
    states = _all_states(n_sites)
    out = np.zeros_like(psi)
    for site in range(n_sites):
        down = states[((states >> site) & 1) == 0]
        out[down | (1 << site)] += psi[down]
    return out


def apply_jminus(psi: np.ndarray, n_sites: int) -> np.ndarray:
    """
    Returns J^- |psi> for a full amplitude vector.
    """
    states = _all_states(n_sites)
    out = np.zeros_like(psi)
    for site in range(n_sites):
        up = states[((states >> site) & 1) == 1]
        out[up ^ (1 << site)] += psi[up]
    return out


def collective_moments(psi: np.ndarray, n_sites: int) -> RotorMoments:
    """
    Returns the moments of the collective spin J in the layout used for
    the rotor.
    """
    m_values = popcount(_all_states(n_sites), n_sites) - n_sites / 2.0
    weight = np.abs(psi) ** 2
    raised = apply_jplus(psi, n_sites)
    lowered = apply_jminus(psi, n_sites)

    raise_one = np.vdot(psi, raised)
    raise_two = np.vdot(psi, apply_jplus(raised, n_sites))
    anticommutator = np.vdot(raised, raised).real + np.vdot(
        lowered, lowered
    ).real
    jz_psi = m_values * psi
    cross = np.vdot(psi, apply_jplus(jz_psi, n_sites)) + np.vdot(
        jz_psi, raised
    )

    mean_kx = float(raise_one.real)
    mean_ky = float(raise_one.imag)
    mean_kz = float(np.sum(m_values * weight))
    kz_squared = float(np.sum(m_values**2 * weight))
    kx_squared = (2.0 * raise_two.real + anticommutator) / 4.0
    ky_squared = (-2.0 * raise_two.real + anticommutator) / 4.0
    cov = float(cross.imag) / 2.0 - mean_ky * mean_kz
    return RotorMoments(
        mean_kx=mean_kx,
        var_kx=float(kx_squared - mean_kx**2),
        mean_ky=mean_ky,
        mean_kz=mean_kz,
        ky_squared=float(ky_squared),
        kz_squared=kz_squared,
        cov_yz=np.array(
            [
                [ky_squared - mean_ky**2, cov],
                [cov, kz_squared - mean_kz**2],
            ]
        ),
    )


def correlation_matrices(
    psi: np.ndarray, n_sites: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Returns the (N, N) matrices <S_i^y S_j^y> and <S_i^z S_j^z>.
    """
    states = _all_states(n_sites)
    weight = np.abs(psi) ** 2
    spins = [((states >> site) & 1) - 0.5 for site in range(n_sites)]

    cyy = np.full((n_sites, n_sites), 0.25)
    czz = np.full((n_sites, n_sites), 0.25)
    for i in range(n_sites):
        for j in range(i + 1, n_sites):
            czz[i, j] = czz[j, i] = float(np.sum(weight * spins[i] * spins[j]))
            flipped = states ^ ((1 << i) | (1 << j))
            # -1/4 for equal bits (S+S+ and S-S-), +1/4 for opposite bits
            sign = -4.0 * spins[i] * spins[j]
            value = np.vdot(psi[flipped], sign * psi).real / 4.0
            cyy[i, j] = cyy[j, i] = float(value)
    return cyy, czz


def _by_displacement(matrix: np.ndarray, model: LatticeModel) -> np.ndarray:
    """
    Averages a site-pair matrix over pairs with equal displacement.
    """
    table = model.displacement_table()
    return np.bincount(
        table.ravel(), weights=matrix.ravel(), minlength=model.n_sites
    ) / model.n_sites


def _exact_map(values: np.ndarray, model: LatticeModel) -> CorrelationMap:
    nan = np.full(model.n_sites, np.nan)
    return CorrelationMap(
        displacements=model.positions, rotor=nan, sw=nan.copy(), total=values
    )


def renyi2_exact(psi: np.ndarray, n_sites: int, sites: np.ndarray) -> float:
    """
    Returns -log Tr rho_A^2 for the given sites. Tensor axis k of the
    reshaped amplitudes holds site N - 1 - k.
    """
    tensor = psi.reshape((2,) * n_sites)
    axes_a = [n_sites - 1 - int(site) for site in sites]
    axes_b = [axis for axis in range(n_sites) if axis not in axes_a]
    matrix = np.transpose(tensor, axes_a + axes_b).reshape(
        2 ** len(axes_a), -1
    )
    if matrix.shape[0] > matrix.shape[1]:
        matrix = matrix.T
    rho = matrix @ matrix.conj().T
    return max(0.0, -math.log(float(np.vdot(rho, rho).real)))


def exact_observables(
    state: EDState,
    model: LatticeModel,
    selection: Optional[ObservableSelection] = None,
) -> ObservableRecord:
    """
    Returns the exact ObservableRecord of a state. Boson densities are
    undefined for exact states and stored as NaN.
    """
    selection = selection or ObservableSelection()
    n_sites = state.n_sites
    spin = 0.5
    psi = state.to_full()
    collective = collective_moments(psi, n_sites)

    min_var = float(np.linalg.eigvalsh(collective.cov_yz)[0])
    polarization = collective.mean_kx
    if polarization <= 1e-12 * n_sites * spin:
        xi2 = math.inf
    else:
        xi2 = 2.0 * n_sites * spin * min_var / polarization**2

    renyi2 = math.nan
    if selection.entropy:
        renyi2 = renyi2_exact(psi, n_sites, region_sites(model))

    cyy_map = czz_map = None
    if selection.correlations:
        cyy, czz = correlation_matrices(psi, n_sites)
        cyy_map = _exact_map(_by_displacement(cyy, model), model)
        czz_map = _exact_map(_by_displacement(czz, model), model)

    return ObservableRecord(
        time=state.time,
        n_sites=n_sites,
        mean_jx=SectorBreakdown.exact(polarization),
        var_jx=SectorBreakdown.exact(collective.var_kx),
        min_var_perp=min_var,
        xi2=xi2,
        mean_jz=collective.mean_kz,
        var_jz=collective.kz_squared - collective.mean_kz**2,
        n0_density=math.nan,
        nfm_density=math.nan,
        renyi2=SectorBreakdown.exact(renyi2),
        cyy=cyy_map,
        czz=czz_map,
    )
