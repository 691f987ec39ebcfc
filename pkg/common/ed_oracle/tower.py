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
Tower-of-states fit of the sector ground-state energies.

Functions:
- sector_minimum: Lowest eigenvalue of one J^z sector.
- fit_tower: Least-squares fit E(M) = E_0 + M^2 / (2 I_ToS).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.linalg import eigvalsh
from scipy.sparse.linalg import eigsh

from common.ed_oracle.hamiltonian import EDHamiltonian
from common.entities import EDSpec, LatticeModel, ToSFit
from common.exceptions import numeric_exception_shield
from common.utils import get_logger

DENSE_SECTOR_LIMIT = 400


@numeric_exception_shield
def sector_minimum(hamiltonian: EDHamiltonian, n_up: int) -> float:
    """
    Returns the lowest eigenvalue of the sector with n_up up spins.
    """
    block = hamiltonian.block(n_up)
    if block.shape[0] <= DENSE_SECTOR_LIMIT:
        return float(eigvalsh(block.toarray())[0])
    values = eigsh(block, k=1, which="SA", return_eigenvectors=False)
    return float(values[0])


def fit_tower(
    model: LatticeModel, spec: Optional[EDSpec] = None, workers: int = 1
) -> ToSFit:
    """
    Fits the sector minima with 0 <= J^z <= max_jz to E_0 + M^2 / (2 I).
    The residual is the largest deviation relative to the spread of the
    fitted energies; a warning is logged above the configured threshold.
    """
    spec = spec or EDSpec()
    logger = get_logger()
    hamiltonian = EDHamiltonian(model)
    n_sites = model.n_sites

    first = math.ceil(n_sites / 2)
    sectors = [
        n_up
        for n_up in range(first, n_sites + 1)
        if n_up - n_sites / 2.0 <= spec.max_jz + 1e-9
    ]
    if len(sectors) < 3:
        raise ValueError(
            f"Tower fit needs three sectors, {n_sites} spins give "
            f"{len(sectors)} with |J^z| <= {spec.max_jz}"
        )

    with ThreadPoolExecutor(max_workers=workers) as executor:
        energies = list(
            executor.map(
                lambda n_up: sector_minimum(hamiltonian, n_up), sectors
            )
        )

    m_squared = np.array([(n_up - n_sites / 2.0) ** 2 for n_up in sectors])
    energies = np.array(energies)
    slope, intercept = np.polyfit(m_squared, energies, 1)
    deviation = energies - (intercept + slope * m_squared)
    spread = float(np.ptp(energies))
    residual = float(np.max(np.abs(deviation)) / spread) if spread else 0.0
    i_tos = math.inf if slope == 0.0 else 1.0 / (2.0 * slope)

    if residual > spec.fit_residual_threshold:
        logger.warning(
            "Tower-of-states fit residual %.3e exceeds %.1e; the spectrum "
            "is not quadratic in J^z",
            residual,
            spec.fit_residual_threshold,
        )
    logger.info(
        "Tower fit N=%d: E0=%.10g I_ToS=%.10g residual=%.3e",
        n_sites,
        intercept,
        i_tos,
        residual,
    )
    return ToSFit(
        n_sites=n_sites,
        e0=float(intercept),
        i_tos=i_tos,
        residual=residual,
        sector_minima={
            n_up - n_sites / 2.0: e for n_up, e in zip(sectors, energies)
        },
    )
