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
Collective-spin observables assembled from the rotor and spin-wave sectors.

With S^y_i ~ K^y / N + sqrt(S/2) (b_i + b_i^dag) and
S^z_i ~ K^z / N - i sqrt(S/2) (b_i - b_i^dag), where b_i carries only finite
momenta and [b_i, b_j^dag] = delta_ij - 1/N, the full correlators are

    C^yy(d) = <(K^y)^2> / N^2 + (S/2) [delta_d0 - 1/N + 2 G(d) + 2 Re F(d)]
    C^zz(d) = <(K^z)^2> / N^2 + (S/2) [delta_d0 - 1/N + 2 G(d) - 2 Re F(d)]

Functions:
- mean_jx: <J^x> = <K^x> - N_FM.
- var_jx: Var(J^x) with the spin-wave depletion terms.
- min_transverse_variance: Smallest eigenvalue of Cov(K^y, K^z).
- squeezing: Wineland parameter xi_R^2.
- corr_yy, corr_zz: Correlation maps over all displacements.
"""

import math

import numpy as np

from common.entities import (
    CorrelationMap,
    GreenFunctions,
    LatticeModel,
    RotorMoments,
    SectorBreakdown,
)

DEPOLARIZED_TOLERANCE = 1e-12


def mean_jx(rotor: RotorMoments, n_fm: float) -> SectorBreakdown:
    """
    Returns <J^x> = <K^x> - N_FM.
    """
    return SectorBreakdown(rotor.mean_kx, -n_fm, rotor.mean_kx - n_fm)


def var_jx(
    rotor: RotorMoments, n_fm: float, n_sites: int, spin: float
) -> SectorBreakdown:
    """
    Returns Var(J^x) = Var(K^x) - 2 (N S - <K^x>) N_FM - N_FM^2. A negative
    total is returned as is; callers flag it.
    """
    sw_part = -2.0 * (n_sites * spin - rotor.mean_kx) * n_fm - n_fm**2
    return SectorBreakdown(rotor.var_kx, sw_part, rotor.var_kx + sw_part)


def min_transverse_variance(rotor: RotorMoments) -> float:
    """
    Returns min over the transverse plane of Var(J^perp).
    """
    return float(np.linalg.eigvalsh(rotor.cov_yz)[0])


def squeezing(
    rotor: RotorMoments, n_fm: float, n_sites: int, spin: float = 0.5
) -> float:
    """
    Returns xi_R^2 = 2 N S min Var(J^perp) / <J^x>^2, or math.inf when the
    state is depolarized (<J^x> <= 0, including spin-wave depletion beyond
    N S).
    """
    polarization = mean_jx(rotor, n_fm).total
    if polarization <= DEPOLARIZED_TOLERANCE * n_sites * spin:
        return math.inf
    return (
        2.0
        * n_sites
        * spin
        * min_transverse_variance(rotor)
        / polarization**2
    )


def _sw_correlation(
    green: GreenFunctions, model: LatticeModel, sign: float
) -> np.ndarray:
    """
    Spin-wave part of C^yy (sign +1) or C^zz (sign -1).
    """
    n_sites = model.n_sites
    on_site = np.zeros(n_sites)
    on_site[0] = 1.0
    return (model.spin / 2.0) * (
        on_site - 1.0 / n_sites + 2.0 * green.g + sign * 2.0 * green.f.real
    )


def _correlation_map(
    rotor_value: float, sw: np.ndarray, model: LatticeModel
) -> CorrelationMap:
    rotor = np.full(model.n_sites, rotor_value)
    return CorrelationMap(
        displacements=model.positions,
        rotor=rotor,
        sw=sw,
        total=rotor + sw,
    )


def corr_yy(
    rotor: RotorMoments, green: GreenFunctions, model: LatticeModel
) -> CorrelationMap:
    """
    Returns <S_i^y S_{i+d}^y> for every displacement d.
    """
    return _correlation_map(
        rotor.ky_squared / model.n_sites**2,
        _sw_correlation(green, model, 1.0),
        model,
    )


def corr_zz(
    rotor: RotorMoments, green: GreenFunctions, model: LatticeModel
) -> CorrelationMap:
    """
    Returns <S_i^z S_{i+d}^z> for every displacement d. The rotor part is
    the conserved <(K^z)^2> / N^2.
    """
    return _correlation_map(
        rotor.kz_squared / model.n_sites**2,
        _sw_correlation(green, model, -1.0),
        model,
    )
