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
This module provides the exact-diagonalization reference: sector-blocked
Hamiltonians, exact evolution, exact observables and the tower-of-states
fit.
"""

from common.ed_oracle.hamiltonian import (
    EDHamiltonian,
    build_hamiltonian,
    css_x_ed_state,
    dense_hamiltonian,
    popcount,
    sector_basis,
)
from common.ed_oracle.evolution import (
    ExactEvolver,
    evolve_exact,
    lanczos_step,
)
from common.ed_oracle.exact_observables import (
    apply_jplus,
    apply_jminus,
    collective_moments,
    correlation_matrices,
    renyi2_exact,
    exact_observables,
)
from common.ed_oracle.tower import sector_minimum, fit_tower
