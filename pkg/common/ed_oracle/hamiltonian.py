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
Spin-1/2 XXZ Hamiltonian H = -sum_{i<j} J_ij [(S_i^+ S_j^- + h.c.) / 2 +
Delta S_i^z S_j^z] blocked by conserved J^z.

Basis states are integers whose bit i is 1 when spin i points up; the
sector with k up spins has J^z = k - N/2.

Classes:
- EDHamiltonian: Sector-blocked sparse Hamiltonian of a LatticeModel.

Functions:
- sector_basis: Sorted bit strings with a given number of up spins.
- popcount: Number of up spins of every basis state.
- dense_hamiltonian: Full 2^N matrix assembled from Kronecker products.
- build_hamiltonian: Convenience constructor of EDHamiltonian.
- css_x_ed_state: Product state polarized along +x.
"""

import math
from functools import cache
from itertools import combinations

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix, diags, identity, kron

from common.entities import ED_MAX_SITES, EDState, LatticeModel
from common.exceptions import SizeCapExceededError
from common.utils import get_logger

BOND_CUTOFF = 1e-15


@cache
def sector_basis(n_sites: int, n_up: int) -> np.ndarray:
    """
    Returns the sorted integers with exactly n_up of n_sites bits set.
    """
    states = [
        sum(1 << site for site in ups)
        for ups in combinations(range(n_sites), n_up)
    ]
    basis = np.array(sorted(states), dtype=np.int64)
    basis.setflags(write=False)
    return basis


def popcount(states: np.ndarray, n_sites: int) -> np.ndarray:
    """
    Returns the number of set bits of every state.
    """
    counts = np.zeros(len(states), dtype=np.int64)
    for site in range(n_sites):
        counts += (states >> site) & 1
    return counts


def _check_cap(n_sites: int) -> None:
    if n_sites > ED_MAX_SITES:
        raise SizeCapExceededError(
            f"Exact diagonalization supports at most {ED_MAX_SITES} spins, "
            f"got {n_sites}"
        )


class EDHamiltonian:
    """
    Sector-blocked sparse XXZ Hamiltonian. Sector blocks are built on
    first use and cached.
    """

    def __init__(self, model: LatticeModel) -> None:
        """
        Initializes the EDHamiltonian. Raises SizeCapExceededError beyond
        the supported number of spins.
        """
        _check_cap(model.n_sites)
        if not math.isclose(model.spin, 0.5):
            raise ValueError("Exact diagonalization requires spin 1/2")
        self.model = model
        self.n_sites = model.n_sites
        self._bonds = [
            (i, j, float(model.couplings[i, j]))
            for i, j in combinations(range(self.n_sites), 2)
            if abs(model.couplings[i, j]) > BOND_CUTOFF
        ]
        self._blocks: dict[int, csr_matrix] = {}
        self._logger = get_logger()

    @property
    def sectors(self) -> range:
        """
        Numbers of up spins labelling the sectors.
        """
        return range(self.n_sites + 1)

    def basis(self, n_up: int) -> np.ndarray:
        """
        Returns the basis of a sector.
        """
        return sector_basis(self.n_sites, n_up)

    def block(self, n_up: int) -> csr_matrix:
        """
        Returns the Hamiltonian block of the sector with n_up up spins.
        """
        if n_up not in self._blocks:
            self._blocks[n_up] = self._build_block(n_up)
        return self._blocks[n_up]

    def _build_block(self, n_up: int) -> csr_matrix:
        """
        Assembles the sparse block of the sector with n_up up spins.
        """
        basis = self.basis(n_up)
        dim = len(basis)
        delta = self.model.anisotropy
        diagonal = np.zeros(dim)
        rows, cols, values = [], [], []

        for i, j, coupling in self._bonds:
            bit_i = (basis >> i) & 1
            bit_j = (basis >> j) & 1
            diagonal -= delta * coupling * (bit_i - 0.5) * (bit_j - 0.5)

            source = np.flatnonzero(bit_i != bit_j)
            flipped = basis[source] ^ ((1 << i) | (1 << j))
            rows.append(np.searchsorted(basis, flipped))
            cols.append(source)
            values.append(np.full(len(source), -0.5 * coupling))

        if rows:
            hopping = coo_matrix(
                (
                    np.concatenate(values),
                    (np.concatenate(rows), np.concatenate(cols)),
                ),
                shape=(dim, dim),
            ).tocsr()
        else:
            hopping = csr_matrix((dim, dim))
        block = (hopping + diags(diagonal)).tocsr()
        self._logger.debug(
            "Built sector %d block: dim=%d nnz=%d", n_up, dim, block.nnz
        )
        return block

    def energy(self, state: EDState) -> float:
        """
        Returns <psi|H|psi>.
        """
        return float(
            sum(
                np.vdot(amps, self.block(k) @ amps).real
                for k, amps in state.amplitudes.items()
            )
        )


def build_hamiltonian(model: LatticeModel) -> EDHamiltonian:
    """
    Returns the sector-blocked Hamiltonian of a lattice model.
    """
    return EDHamiltonian(model)


def css_x_ed_state(n_sites: int) -> EDState:
    """
    Returns the product state with every spin along +x.
    """
    _check_cap(n_sites)
    amplitude = 2.0 ** (-n_sites / 2.0)
    basis = {k: sector_basis(n_sites, k) for k in range(n_sites + 1)}
    amplitudes = {
        k: np.full(len(states), amplitude, dtype=complex)
        for k, states in basis.items()
    }
    return EDState(n_sites, basis, amplitudes, 0.0)


def _site_operator(op: np.ndarray, site: int, n_sites: int) -> csr_matrix:
    """
    Embeds a one-site operator; site 0 is the least significant bit.
    """
    out = None
    for position in reversed(range(n_sites)):
        piece = csr_matrix(op) if position == site else identity(2)
        out = piece if out is None else kron(out, piece, format="csr")
    return out


def dense_hamiltonian(model: LatticeModel) -> np.ndarray:
    """
    Returns the full 2^N Hamiltonian built from Kronecker products of
    single-site operators.
    """
    n_sites = model.n_sites
    _check_cap(n_sites)
    s_plus = np.array([[0.0, 0.0], [1.0, 0.0]])
    s_minus = s_plus.T
    s_z = np.diag([-0.5, 0.5])
    plus = [_site_operator(s_plus, i, n_sites) for i in range(n_sites)]
    minus = [_site_operator(s_minus, i, n_sites) for i in range(n_sites)]
    z = [_site_operator(s_z, i, n_sites) for i in range(n_sites)]

    hamiltonian = csr_matrix((2**n_sites, 2**n_sites))
    for i, j in combinations(range(n_sites), 2):
        coupling = model.couplings[i, j]
        hamiltonian = hamiltonian - coupling * (
            0.5 * (plus[i] @ minus[j] + minus[i] @ plus[j])
            + model.anisotropy * (z[i] @ z[j])
        )
    return hamiltonian.toarray()
