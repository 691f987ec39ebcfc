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
Exact real-time evolution of EDState under a sector-blocked Hamiltonian.

Small systems use per-sector full diagonalization. Larger systems use
Lanczos propagation: each step builds an orthonormal Krylov basis, and
exp(-i T dt) e_1 of its tridiagonal projection T is accepted once the
a-posteriori error beta_m |[exp(-i T dt) e_1]_m| is below tolerance.

Classes:
- ExactEvolver: Propagates EDState by full diagonalization or Krylov
  stepping.

Functions:
- evolve_exact: One-shot propagation of a state to time t.
"""

from typing import Literal, Optional

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal
from scipy.sparse import csr_matrix

from common.ed_oracle.hamiltonian import EDHamiltonian
from common.entities import EDSpec, EDState
from common.exceptions import KrylovConvergenceError, numeric_exception_shield
from common.utils import get_logger

Method = Literal["auto", "full", "krylov"]

BREAKDOWN_TOLERANCE = 1e-14
MIN_STEP_FRACTION = 1e-9


class ExactEvolver:
    """
    Propagates exact states. The method is chosen per system size unless
    forced: full diagonalization up to `full_diag_max_sites` spins,
    Krylov stepping beyond.
    """

    def __init__(
        self,
        hamiltonian: EDHamiltonian,
        spec: Optional[EDSpec] = None,
        method: Method = "auto",
    ) -> None:
        """
        Initializes the ExactEvolver.
        """
        self._hamiltonian = hamiltonian
        self._spec = spec or EDSpec()
        if method == "auto":
            method = (
                "full"
                if hamiltonian.n_sites <= self._spec.full_diag_max_sites
                else "krylov"
            )
        self.method = method
        self._eigen: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._logger = get_logger()

    def evolve(self, state: EDState, time: float) -> EDState:
        """
        Returns exp(-i H t) |psi>, with t the duration of the evolution.
        """
        amplitudes = {}
        for n_up, amps in state.amplitudes.items():
            if time == 0.0 or not np.any(amps):
                amplitudes[n_up] = amps.copy()
            elif self.method == "full":
                amplitudes[n_up] = self._evolve_full(n_up, amps, time)
            else:
                amplitudes[n_up] = self._evolve_krylov(n_up, amps, time)
        return EDState(
            state.n_sites, dict(state.basis), amplitudes, state.time + time
        )

    def series(
        self, state: EDState, times: list[float]
    ) -> list[EDState]:
        """
        Returns the states at the given increasing times, measured from
        the time of the input state.
        """
        states = []
        current = state
        elapsed = 0.0
        for time in times:
            current = self.evolve(current, time - elapsed)
            elapsed = time
            states.append(current)
        return states

    @numeric_exception_shield
    def _evolve_full(
        self, n_up: int, amps: np.ndarray, time: float
    ) -> np.ndarray:
        """
        Propagates one sector through its cached eigendecomposition.
        """
        if n_up not in self._eigen:
            block = self._hamiltonian.block(n_up).toarray()
            self._eigen[n_up] = eigh(block)
        energies, vectors = self._eigen[n_up]
        overlaps = vectors.conj().T @ amps
        return vectors @ (np.exp(-1j * energies * time) * overlaps)

    @numeric_exception_shield
    def _evolve_krylov(
        self, n_up: int, amps: np.ndarray, time: float
    ) -> np.ndarray:
        """
        Propagates one sector by adaptive Lanczos steps.
        """
        block = self._hamiltonian.block(n_up)
        vector = amps.astype(complex)
        remaining = time
        step = time
        steps = 0
        while remaining > 0.0:
            step = min(step, remaining)
            vector, taken = lanczos_step(
                block,
                vector,
                step,
                self._spec.krylov_dim,
                self._spec.krylov_tol,
                MIN_STEP_FRACTION * time,
            )
            remaining -= taken
            steps += 1
            step = 2.0 * taken
        self._logger.debug(
            "Sector %d propagated to t=%g in %d Krylov steps",
            n_up,
            time,
            steps,
        )
        return vector


def lanczos_step(
    block: csr_matrix,
    vector: np.ndarray,
    step: float,
    krylov_dim: int,
    tolerance: float,
    min_step: float,
) -> tuple[np.ndarray, float]:
    """
    Advances `vector` by at most `step` with one Lanczos basis. The step is
    halved until the error estimate falls below tolerance. Returns the new
    vector and the time actually taken.
    """
    norm = np.linalg.norm(vector)
    dim = min(krylov_dim, vector.size)
    basis = np.zeros((vector.size, dim + 1), dtype=complex)
    alphas = np.zeros(dim)
    betas = np.zeros(dim)
    basis[:, 0] = vector / norm

    size = dim
    exact = False
    for j in range(dim):
        w = block @ basis[:, j]
        alphas[j] = np.vdot(basis[:, j], w).real
        # full reorthogonalization
        w -= basis[:, : j + 1] @ (basis[:, : j + 1].conj().T @ w)
        w -= basis[:, : j + 1] @ (basis[:, : j + 1].conj().T @ w)
        betas[j] = np.linalg.norm(w)
        if betas[j] < BREAKDOWN_TOLERANCE * max(1.0, abs(alphas[j])):
            size = j + 1
            exact = True
            break
        basis[:, j + 1] = w / betas[j]

    if size == 1:
        energies = alphas[:1]
        vectors = np.ones((1, 1))
    else:
        energies, vectors = eigh_tridiagonal(alphas[:size], betas[: size - 1])

    residual = np.inf
    while step >= min_step:
        coefficients = vectors @ (np.exp(-1j * energies * step) * vectors[0])
        residual = 0.0 if exact else betas[size - 1] * abs(coefficients[-1])
        if residual <= tolerance:
            return norm * (basis[:, :size] @ coefficients), step
        step /= 2.0
    raise KrylovConvergenceError(
        "Krylov propagation did not converge", float(residual)
    )


def evolve_exact(
    state: EDState,
    hamiltonian: EDHamiltonian,
    time: float,
    spec: Optional[EDSpec] = None,
    method: Method = "auto",
) -> EDState:
    """
    Returns exp(-i H t) |psi>.
    """
    return ExactEvolver(hamiltonian, spec, method).evolve(state, time)
