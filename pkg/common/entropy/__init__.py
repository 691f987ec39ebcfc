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
This module provides half-system Rényi-2 entropies.
"""

from common.entropy.gaussian_entropy import (
    region_sites,
    region_state,
    symplectic_eigenvalues,
    renyi2_sw,
)
from common.entropy.renyi import renyi2_rotor, renyi2_total
