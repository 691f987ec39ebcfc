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
This module provides the combined rotor/spin-wave observables and the
time-grid runner.
"""

from common.observables.observables import (
    mean_jx,
    var_jx,
    min_transverse_variance,
    squeezing,
    corr_yy,
    corr_zz,
)
from common.observables.dynamics_runner import (
    SW_POPULATION_FLAG,
    NEGATIVE_VARIANCE_FLAG,
    DynamicsRunner,
    run_dynamics,
    rotor_saturation_time,
)
