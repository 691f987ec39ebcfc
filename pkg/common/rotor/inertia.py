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
This module computes the rotor moment of inertia.

Functions:
- bare_inertia: I_bare = (N - 1) / [J_0 (1 - Delta)].
- tos_inertia: Tower-of-states inertia scaled from a reference system.
- resolve_inertia: InertiaSet for the configured inertia mode.
"""

import math
from typing import Optional

from common.ed_oracle.tower import fit_tower
from common.entities import (
    EDSpec,
    InertiaConfig,
    InertiaMode,
    InertiaSet,
    LatticeModel,
    ToSReference,
)
from common.utils import get_logger


def bare_inertia(model: LatticeModel) -> float:
    """
    Returns the bare moment of inertia. Delta = 1 gives math.inf (frozen
    rotor); Delta > 1 gives a negative inertia.
    """
    stiffness = model.j0 * (1.0 - model.anisotropy)
    if stiffness == 0.0:
        get_logger().info("Rotor is frozen (J0 (1 - Delta) = 0)")
        return math.inf
    return (model.n_sites - 1) / stiffness


def tos_inertia(
    model: LatticeModel, reference: Optional[ToSReference] = None
) -> float:
    """
    Scales a tower-of-states inertia extracted at N_ref to this lattice:
    I_ToS = (N - 1) / (N_ref - 1) * J0_ref / J0 * I_ToS_ref.
    Falls back to the bare inertia when no reference is supplied.
    """
    if reference is None:
        return bare_inertia(model)
    return (
        (model.n_sites - 1)
        / (reference.n_ref - 1)
        * reference.j0_ref
        / model.j0
        * reference.i_tos_ref
    )


def resolve_inertia(
    model: LatticeModel,
    config: InertiaConfig,
    ed_spec: Optional[EDSpec] = None,
) -> InertiaSet:
    """
    Returns the bare and effective inertia for the configured mode.
    `tos-exact` runs the tower-of-states fit on the same lattice.
    """
    i_bare = bare_inertia(model)
    match config.mode:
        case InertiaMode.BARE:
            return InertiaSet(i_bare, i_bare)
        case InertiaMode.TOS_SCALED:
            return InertiaSet(
                i_bare,
                tos_inertia(model, config.reference),
                config.reference,
            )
        case InertiaMode.TOS_EXACT:
            fit = fit_tower(model, ed_spec or EDSpec())
            reference = ToSReference(
                n_ref=model.n_sites, j0_ref=model.j0, i_tos_ref=fit.i_tos
            )
            return InertiaSet(i_bare, fit.i_tos, reference)
    raise ValueError(f"Unknown inertia mode: {config.mode}")
