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
This module provides the planar rotor: states, evolution, moments,
subsystem density matrices and moments of inertia.
"""

from common.rotor.rotor_state import (
    css_x_state,
    evolve,
    ladder_elements,
    moments,
    reduced_density,
    rotor_purity,
)
from common.rotor.inertia import bare_inertia, tos_inertia, resolve_inertia
