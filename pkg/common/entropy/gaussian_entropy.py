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
Rényi-2 entropy of the spin-wave sector from Gaussian covariance matrices.

Quadratures are x = (b + b^dag) / sqrt(2) and p = (b - b^dag) / (i sqrt(2)),
so the vacuum has symplectic eigenvalues 1/2 and
Tr rho^2 = prod_k 1 / (2 nu_k). The zero-momentum boson is taken in its
vacuum; its entanglement is carried by the rotor.

Functions:
- region_sites: Sites of the half-system rectangle.
- region_state: Covariance of the region.
- symplectic_eigenvalues: nu_k of a covariance matrix.
- renyi2_sw: Spin-wave Rényi-2 entropy of a region.
"""

from typing import Optional

import numpy as np
from scipy.linalg import eigh, eigvalsh

from common.entities import (
    GaussianRegionState,
    GreenFunctions,
    LatticeModel,
    RegionSpec,
)
from common.exceptions import NumericValidityError, numeric_exception_shield

PHYSICALITY_TOLERANCE = 1e-6


def region_sites(
    model: LatticeModel, region: Optional[RegionSpec] = None
) -> np.ndarray:
    """
    Returns the sites with first coordinate below L / 2, i.e. the
    L x L/2 rectangle in 2d and the first half of the chain in 1d.
    """
    del region  # only the half rectangle is supported
    half = model.spec.linear_size // 2
    return np.flatnonzero(model.positions[:, 0] < half)


def region_state(
    green: GreenFunctions, model: LatticeModel, sites: np.ndarray
) -> GaussianRegionState:
    """
    Builds sigma_xx = 1/2 + G + Re F, sigma_pp = 1/2 + G - Re F and
    sigma_xp = Im F on the region.
    """
    g_matrix, f_matrix = green.matrices(model)
    block = np.ix_(sites, sites)
    g = g_matrix[block]
    f = f_matrix[block]
    identity = np.eye(len(sites))

    sigma_xx = 0.5 * identity + g + f.real
    sigma_pp = 0.5 * identity + g - f.real
    sigma_xp = f.imag
    covariance = np.block([[sigma_xx, sigma_xp], [sigma_xp.T, sigma_pp]])
    return GaussianRegionState(sites=sites, covariance=covariance)


@numeric_exception_shield
def symplectic_eigenvalues(covariance: np.ndarray) -> np.ndarray:
    """
    Returns the n symplectic eigenvalues of a 2n x 2n covariance matrix in
    ascending order, from the Hermitian form sigma^1/2 (i Omega) sigma^1/2.
    """
    size = covariance.shape[0] // 2
    symmetric = 0.5 * (covariance + covariance.T)
    values, vectors = eigh(symmetric)
    if values[0] <= 0.0:
        raise NumericValidityError(
            f"Covariance matrix is not positive definite (min {values[0]:.3e})"
        )
    root = (vectors * np.sqrt(values)) @ vectors.T

    omega = np.block(
        [
            [np.zeros((size, size)), np.eye(size)],
            [-np.eye(size), np.zeros((size, size))],
        ]
    )
    spectrum = eigvalsh(root @ (1j * omega) @ root)
    # eigenvalues come in +/- nu pairs
    return np.sort(np.abs(spectrum[size:]))


def renyi2_sw(
    green: GreenFunctions, model: LatticeModel, sites: np.ndarray
) -> float:
    """
    Returns S_2 = sum_k log(2 nu_k) of the region. Raises
    NumericValidityError when a symplectic eigenvalue falls below 1/2.
    """
    if len(sites) == 0:
        return 0.0
    state = region_state(green, model, sites)
    nu = symplectic_eigenvalues(state.covariance)
    if nu[0] < 0.5 - PHYSICALITY_TOLERANCE:
        raise NumericValidityError(
            f"Unphysical spin-wave covariance: nu_min = {nu[0]:.10f}"
        )
    return float(np.sum(np.log(np.maximum(2.0 * nu, 1.0))))
