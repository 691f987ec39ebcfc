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
Planar rotor of length J_tot = N S evolved in the K^z eigenbasis.

Binomial and Clebsch-Gordan weights are evaluated in the log domain so that
rotors with tens of thousands of spins stay finite.

Functions:
- css_x_state: Coherent state polarized along +x.
- evolve: Exact evolution under (K^z)^2 / (2I).
- moments: First and second moments of K.
- reduced_density: Rotor density matrix of a subsystem of N_A spins.
- rotor_purity: Tr rho_A^2 of the rotor sector.
"""

import math

import numpy as np
from scipy.special import gammaln

from common.entities import RotorMoments, RotorState

NORM_TOLERANCE = 1e-12


def _log_binomial(n: float, k: np.ndarray) -> np.ndarray:
    """
    log C(n, k), finite for large n.
    """
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


def _twice(value: float) -> int:
    return int(round(2.0 * value))


def css_x_state(n_sites: int, spin: float = 0.5) -> RotorState:
    """
    Returns psi_M = 2^-J sqrt(C(2J, J + M)) with J = N S.
    """
    two_j = _twice(n_sites * spin)
    k = np.arange(two_j + 1, dtype=float)
    log_amp = 0.5 * _log_binomial(two_j, k) - 0.5 * two_j * math.log(2.0)
    return RotorState(two_j / 2.0, np.exp(log_amp).astype(complex), 0.0)


def evolve(state: RotorState, inertia: float, time: float) -> RotorState:
    """
    Applies exp(-i M^2 t / (2I)) to psi_M. Global phases are dropped; an
    infinite inertia leaves the amplitudes untouched. `time` is the
    duration of the evolution.
    """
    if math.isinf(inertia) or time == 0.0:
        return RotorState(
            state.j_tot, state.amplitudes.copy(), state.time + time
        )
    m_values = state.m_values
    phase = np.mod(m_values**2 * (time / (2.0 * inertia)), 2.0 * np.pi)
    return RotorState(
        state.j_tot, state.amplitudes * np.exp(-1j * phase), state.time + time
    )


def ladder_elements(j_tot: float) -> np.ndarray:
    """
    Matrix elements <M+1|K^+|M> = sqrt(J(J+1) - M(M+1)) for M < J.
    """
    m_values = -j_tot + np.arange(_twice(j_tot))
    return np.sqrt(j_tot * (j_tot + 1.0) - m_values * (m_values + 1.0))


def moments(state: RotorState) -> RotorMoments:
    """
    Computes <K^x>, Var(K^x), <K^y>, <K^z>, <(K^y)^2>, <(K^z)^2> and the
    symmetrized covariance of (K^y, K^z).
    """
    psi = state.amplitudes
    j_tot = state.j_tot
    m_values = state.m_values
    weight = np.abs(psi) ** 2

    ladder = ladder_elements(j_tot)
    raise_one = np.sum(ladder * np.conj(psi[1:]) * psi[:-1])
    raise_two = np.sum(ladder[1:] * ladder[:-1] * np.conj(psi[2:]) * psi[:-2])
    cross = np.sum(
        (2.0 * m_values[:-1] + 1.0) * ladder * np.conj(psi[1:]) * psi[:-1]
    )

    mean_kz = float(np.sum(m_values * weight))
    kz_squared = float(np.sum(m_values**2 * weight))
    casimir_part = 2.0 * (j_tot * (j_tot + 1.0) - kz_squared)

    mean_kx = float(raise_one.real)
    kx_psi = np.zeros_like(psi)
    kx_psi[1:] += 0.5 * ladder * psi[:-1]
    kx_psi[:-1] += 0.5 * ladder * psi[1:]
    # centred: Var(K^x) = || (K^x - <K^x>) psi ||^2 >= 0
    var_kx = float(np.sum(np.abs(kx_psi - mean_kx * psi) ** 2))
    mean_ky = float(raise_one.imag)
    ky_squared = (-2.0 * raise_two.real + casimir_part) / 4.0

    cov = float(cross.imag) / 2.0 - mean_ky * mean_kz
    covariance = np.array(
        [
            [ky_squared - mean_ky**2, cov],
            [cov, kz_squared - mean_kz**2],
        ]
    )
    return RotorMoments(
        mean_kx=mean_kx,
        var_kx=var_kx,
        mean_ky=mean_ky,
        mean_kz=mean_kz,
        ky_squared=float(ky_squared),
        kz_squared=kz_squared,
        cov_yz=covariance,
    )


def _schmidt_matrix(
    state: RotorState, n_sites_a: int, spin: float
) -> np.ndarray:
    """
    Coefficients Psi[k_A, k_B] of |J, M> in the product of the Dicke bases
    of the two subsystems, with k = J + M = k_A + k_B.
    """
    two_j = _twice(state.j_tot)
    two_ja = _twice(n_sites_a * spin)
    two_jb = two_j - two_ja
    if two_ja <= 0 or two_jb <= 0:
        raise ValueError(
            f"Subsystem of {n_sites_a} spins is not a proper bipartition"
        )

    k_a = np.arange(two_ja + 1, dtype=float)[:, None]
    k_b = np.arange(two_jb + 1, dtype=float)[None, :]
    k = k_a + k_b
    log_coef = 0.5 * (
        _log_binomial(two_ja, k_a)
        + _log_binomial(two_jb, k_b)
        - _log_binomial(two_j, k)
    )
    return state.amplitudes[k.astype(int)] * np.exp(log_coef)


def reduced_density(
    state: RotorState, n_sites_a: int, spin: float = 0.5
) -> np.ndarray:
    """
    Returns the (2 N_A S + 1)-dimensional reduced density matrix of the
    rotor sector for the first N_A spins.
    """
    schmidt = _schmidt_matrix(state, n_sites_a, spin)
    return schmidt @ schmidt.conj().T


def rotor_purity(
    state: RotorState, n_sites_a: int, spin: float = 0.5
) -> float:
    """
    Returns Tr rho_A^2 of the rotor sector.
    """
    rho = reduced_density(state, n_sites_a, spin)
    return float(np.vdot(rho, rho).real)
