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
Linear spin waves about the x-polarized state.

Each finite momentum obeys d b_q / dt = -i (A_q b_q + B_q b_{-q}^dag) and
starts in the vacuum, which gives

    n_q(t) = B^2 f^2,    m_q(t) = -i B f g - A B f^2,

with f = sin(Omega t) / Omega and g = cos(Omega t) for A^2 > B^2, the
hyperbolic functions for A^2 < B^2 and f = t, g = 1 at A^2 = B^2. The same
expressions hold for self-paired momenta (q = -q).

Functions:
- coefficients: A_q, B_q and Omega_q of every finite momentum.
- evolve_mode: Closed-form n(t), m(t) from the vacuum.
- mode_set: SWModeSet of all finite momenta at a time.
- total_fm_population: N_FM.
- sw_energy: Energy of the quadratic spin-wave sector.
- realspace_green: Real-space G(d) and F(d).
"""

import numpy as np

from common.entities import (
    GreenFunctions,
    LatticeModel,
    SWCoefficients,
    SWModeSet,
)

SERIES_THRESHOLD = 1e-8


def coefficients(model: LatticeModel) -> SWCoefficients:
    """
    Returns A_q = S [J_0 - J_q (1 + Delta) / 2] and
    B_q = -J_q S (1 - Delta) / 2 for q != 0 in lattice order.
    """
    spin = model.spin
    delta = model.anisotropy
    q_index = np.arange(1, model.n_sites)
    j_q = model.fourier[q_index]

    a = spin * (model.j0 - j_q * (1.0 + delta) / 2.0)
    b = -j_q * spin * (1.0 - delta) / 2.0
    discriminant = a**2 - b**2
    return SWCoefficients(
        q_index=q_index,
        a=a,
        b=b,
        omega=np.sqrt(np.abs(discriminant)),
        stable=discriminant >= 0.0,
    )


def _propagator_factors(
    discriminant: np.ndarray, time: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Returns (f, g) for s = A^2 - B^2, switching to the Taylor series when
    |s| t^2 is small.
    """
    s = np.asarray(discriminant, dtype=float)
    x2 = s * time**2
    f = np.empty_like(s)
    g = np.empty_like(s)

    series = np.abs(x2) < SERIES_THRESHOLD
    f[series] = time * (1.0 - x2[series] / 6.0 + x2[series] ** 2 / 120.0)
    g[series] = 1.0 - x2[series] / 2.0 + x2[series] ** 2 / 24.0

    oscillating = ~series & (s > 0.0)
    omega = np.sqrt(s[oscillating])
    f[oscillating] = np.sin(omega * time) / omega
    g[oscillating] = np.cos(omega * time)

    growing = ~series & (s < 0.0)
    kappa = np.sqrt(-s[growing])
    f[growing] = np.sinh(kappa * time) / kappa
    g[growing] = np.cosh(kappa * time)
    return f, g


def evolve_mode(
    a: np.ndarray | float, b: np.ndarray | float, time: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Returns the population n = <b_q^dag b_q> and the anomalous average
    m = <b_q b_{-q}> at time t, starting from the vacuum.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    f, g = _propagator_factors(a**2 - b**2, time)
    n = b**2 * f**2
    m = -1j * b * f * g - a * b * f**2
    return n, m


def mode_set(coeffs: SWCoefficients, time: float) -> SWModeSet:
    """
    Evaluates every finite-momentum mode at time t.
    """
    n, m = evolve_mode(coeffs.a, coeffs.b, time)
    return SWModeSet(time=time, q_index=coeffs.q_index, n=n, m=m)


def total_fm_population(modes: SWModeSet) -> float:
    """
    Returns N_FM = sum_{q != 0} n_q.
    """
    return modes.n_fm


def sw_energy(coeffs: SWCoefficients, modes: SWModeSet) -> float:
    """
    Returns sum_q [A_q n_q + Re(B_q m_q)], constant along the evolution.
    """
    return float(np.sum(coeffs.a * modes.n + np.real(coeffs.b * modes.m)))


def realspace_green(modes: SWModeSet, model: LatticeModel) -> GreenFunctions:
    """
    Returns G(d) = N^-1 sum_{q != 0} exp(i q.d) n_q and the matching F(d)
    from m_q, indexed by displacement in lattice order. The q = 0 mode is
    excluded.
    """
    n_full = np.zeros(model.n_sites)
    m_full = np.zeros(model.n_sites, dtype=complex)
    n_full[modes.q_index] = modes.n
    m_full[modes.q_index] = modes.m

    shape = model.shape
    g = np.fft.ifftn(n_full.reshape(shape)).ravel()
    f = np.fft.ifftn(m_full.reshape(shape)).ravel()
    return GreenFunctions(g=g.real.copy(), f=f)
