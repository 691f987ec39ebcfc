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
Lattice Fourier transforms of translation-invariant coupling matrices.

Momenta and displacements share the row-major site order with the origin
first, so J_q = sum_d J(d) exp(-i q.d) is a forward FFT of the first row.

Functions:
- site_positions: Row-major integer positions of a periodic lattice.
- displacement_table: Index of r_j - r_i for every pair of sites.
- fourier_couplings: J_q of a symmetric, translation-invariant matrix.
- inverse_fourier_couplings: Coupling matrix rebuilt from J_q.
"""

import numpy as np

from common.exceptions import TranslationInvarianceError

IMAG_TOLERANCE = 1e-10
ROUND_TRIP_TOLERANCE = 1e-10


def site_positions(shape: tuple[int, ...]) -> np.ndarray:
    """
    Returns the (N, d) integer positions in row-major order.
    """
    return np.indices(shape).reshape(len(shape), -1).T.copy()


def displacement_table(shape: tuple[int, ...]) -> np.ndarray:
    """
    Returns the (N, N) table whose entry (i, j) is the row-major index of
    the periodic displacement r_j - r_i.
    """
    positions = site_positions(shape)
    diff = positions[None, :, :] - positions[:, None, :]
    folded = np.mod(diff, np.asarray(shape))
    return np.ravel_multi_index(tuple(np.moveaxis(folded, -1, 0)), shape)


def _scale(values: np.ndarray) -> float:
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    return scale if scale > 0.0 else 1.0


def _check_matrix(couplings: np.ndarray, shape: tuple[int, ...]) -> None:
    """
    Raises TranslationInvarianceError unless the matrix is a coupling
    matrix of the lattice with zero diagonal and translation symmetry.
    """
    n_sites = int(np.prod(shape))
    if couplings.shape != (n_sites, n_sites):
        raise TranslationInvarianceError(
            f"Coupling matrix of shape {couplings.shape} does not match a "
            f"lattice of {n_sites} sites"
        )
    scale = _scale(couplings)
    if not np.allclose(couplings, couplings.T, rtol=0.0, atol=1e-12 * scale):
        raise TranslationInvarianceError("Coupling matrix is not symmetric")
    if np.any(np.abs(np.diag(couplings)) > 1e-12 * scale):
        raise TranslationInvarianceError("Coupling matrix has a diagonal")

    rebuilt = couplings[0][displacement_table(shape)]
    mismatch = float(np.max(np.abs(rebuilt - couplings)))
    if mismatch > 1e-12 * scale:
        raise TranslationInvarianceError(
            "Coupling matrix is not translation invariant "
            f"(row mismatch {mismatch:.3e})"
        )


def fourier_couplings(
    couplings: np.ndarray, shape: tuple[int, ...]
) -> np.ndarray:
    """
    Computes J_q = N^-1 sum_ij exp(i q.(r_i - r_j)) J_ij for all momenta in
    row-major order. The input must be symmetric with zero diagonal and
    translation invariant. The result is real.
    """
    couplings = np.asarray(couplings, dtype=float)
    _check_matrix(couplings, shape)

    row = couplings[0].reshape(shape)
    transformed = np.fft.fftn(row).ravel()

    scale = _scale(transformed)
    if np.max(np.abs(transformed.imag)) > IMAG_TOLERANCE * scale:
        raise TranslationInvarianceError(
            "Fourier couplings are not real; the lattice is not inversion "
            "symmetric"
        )
    fourier = transformed.real.copy()

    restored = np.fft.ifftn(fourier.reshape(shape)).real.ravel()
    error = float(np.max(np.abs(restored - couplings[0])))
    if error > ROUND_TRIP_TOLERANCE * _scale(couplings[0]):
        raise TranslationInvarianceError(
            f"Fourier round trip failed (error {error:.3e})"
        )
    return fourier


def inverse_fourier_couplings(
    fourier: np.ndarray, shape: tuple[int, ...]
) -> np.ndarray:
    """
    Rebuilds the (N, N) coupling matrix from the Fourier couplings.
    """
    row = np.fft.ifftn(np.asarray(fourier).reshape(shape)).real.ravel()
    return row[displacement_table(shape)]
