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
Additive Rényi-2 entropy of the rotor and spin-wave sectors.
"""

import math

import numpy as np

from common.entities import GreenFunctions, LatticeModel, RotorState
from common.entropy.gaussian_entropy import renyi2_sw
from common.rotor import rotor_purity


def renyi2_rotor(
    state: RotorState, n_sites_a: int, spin: float = 0.5
) -> float:
    """
    Returns -log Tr rho_A^2 of the rotor sector for the first N_A spins.
    """
    return max(0.0, -math.log(rotor_purity(state, n_sites_a, spin)))


def renyi2_total(
    state: RotorState,
    green: GreenFunctions,
    model: LatticeModel,
    sites: np.ndarray,
) -> float:
    """
    Returns the sum of the rotor and spin-wave Rényi-2 entropies of a
    region.
    """
    return renyi2_rotor(state, len(sites), model.spin) + renyi2_sw(
        green, model, sites
    )
