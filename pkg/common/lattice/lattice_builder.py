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
This module builds periodic lattices and their ferromagnetic coupling
matrices.

Classes:
- LatticeBuilder: Builds a LatticeModel from a LatticeSpec, with minimum
  image or image-summed distances.

Functions:
- build_model: Convenience wrapper around LatticeBuilder.
"""

import math
from functools import cache

import numpy as np
from scipy.integrate import quad

from common.entities import (
    CouplingLaw,
    DistanceConvention,
    LatticeModel,
    LatticeSpec,
)
from common.exceptions import LatticeConstructionError
from common.lattice.fourier import (
    displacement_table,
    fourier_couplings,
    site_positions,
)
from common.utils import get_logger

DEFAULT_IMAGE_TOLERANCE = 1e-10
DEFAULT_MAX_SHELLS = 1000


@cache
def _square_angular_factor(alpha: float) -> float:
    """
    Integral of cos(theta)^(alpha - 2) over one eighth of the square
    boundary, times eight.
    """
    value, _ = quad(
        lambda theta: math.cos(theta) ** (alpha - 2.0), 0.0, math.pi / 4.0
    )
    return 8.0 * value


def _image_shell(order: int, dimension: int) -> np.ndarray:
    """
    Returns the integer image vectors n with max|n_a| == order.
    """
    if dimension == 1:
        return np.array([[-order], [order]])
    span = np.arange(-order, order + 1)
    inner = np.arange(-order + 1, order)
    return np.concatenate(
        [
            np.stack([span, np.full_like(span, order)], axis=1),
            np.stack([span, np.full_like(span, -order)], axis=1),
            np.stack([np.full_like(inner, order), inner], axis=1),
            np.stack([np.full_like(inner, -order), inner], axis=1),
        ]
    )


class LatticeBuilder:
    """
    Builds the coupling matrix J_ij = J f(r_ij) of a periodic lattice and
    its Fourier couplings J_q.
    """

    def __init__(
        self,
        spec: LatticeSpec,
        image_tolerance: float = DEFAULT_IMAGE_TOLERANCE,
        max_shells: int = DEFAULT_MAX_SHELLS,
    ) -> None:
        """
        Initializes the LatticeBuilder for a validated spec.
        """
        self._spec = spec
        self._image_tolerance = image_tolerance
        self._max_shells = max_shells
        self._logger = get_logger()

    def build(self) -> LatticeModel:
        """
        Builds the LatticeModel. Couplings are constructed from the
        displacement of every site to the origin, so the matrix is
        translation invariant by construction.
        """
        spec = self._spec
        if spec.n_sites < 2:
            raise LatticeConstructionError(
                f"A lattice needs at least two sites, got {spec.n_sites}"
            )

        positions = site_positions(spec.shape)
        row = spec.coupling_strength * self._coupling_profile(positions)
        if np.any(row < 0.0):
            raise LatticeConstructionError("Couplings must be ferromagnetic")

        couplings = row[displacement_table(spec.shape)]
        fourier = fourier_couplings(couplings, spec.shape)
        model = LatticeModel(spec, positions, couplings, fourier)

        self._logger.info(
            "Built lattice d=%d L=%d N=%d (%s, %s): J0=%.10g",
            spec.dimension,
            spec.linear_size,
            spec.n_sites,
            spec.coupling_law,
            spec.distance_convention,
            model.j0,
        )
        return model

    def _minimum_image(self, positions: np.ndarray) -> np.ndarray:
        """
        Wraps displacements into the periodic cell around the origin.
        """
        size = self._spec.linear_size
        return positions - size * np.round(positions / size)

    def _coupling_profile(self, positions: np.ndarray) -> np.ndarray:
        """
        Returns f(r_0j) for every site j, zero at the origin.
        """
        spec = self._spec
        centered = self._minimum_image(positions.astype(float))
        distance = np.linalg.norm(centered, axis=1)
        profile = np.zeros(len(positions))
        off_site = distance > 0.0

        if spec.coupling_law == CouplingLaw.NEAREST_NEIGHBOR:
            profile[np.isclose(distance, 1.0)] = 1.0
            return profile

        if spec.distance_convention == DistanceConvention.IMAGE_SUMMED:
            return self._image_summed_profile(centered)

        profile[off_site] = distance[off_site] ** (-spec.alpha)
        return profile

    def _continuum_tail(self, half_width: float) -> float:
        """
        Continuum estimate of sum |r|^-alpha over the images outside the
        box of the given half-width.
        """
        spec = self._spec
        alpha = spec.alpha
        size = spec.linear_size
        if spec.dimension == 1:
            return 2.0 * half_width ** (1.0 - alpha) / ((alpha - 1.0) * size)
        return (
            half_width ** (2.0 - alpha)
            / ((alpha - 2.0) * size**2)
            * _square_angular_factor(alpha)
        )

    def _image_summed_profile(self, centered: np.ndarray) -> np.ndarray:
        """
        Sums |r_0j + n L|^-alpha over periodic images shell by shell and
        adds the continuum tail of the remaining images.
        """
        spec = self._spec
        if spec.alpha <= spec.dimension:
            raise LatticeConstructionError(
                f"Image sum diverges for alpha={spec.alpha} <= "
                f"d={spec.dimension}"
            )
        size = spec.linear_size
        alpha = spec.alpha

        distance = np.linalg.norm(centered, axis=1)
        total = np.zeros(len(centered))
        off_site = distance > 0.0
        total[off_site] = distance[off_site] ** (-alpha)

        tail = 0.0
        for order in range(1, self._max_shells + 1):
            images = size * _image_shell(order, spec.dimension)
            shifted = centered[:, None, :] + images[None, :, :]
            total += np.sum(
                np.linalg.norm(shifted, axis=2) ** (-alpha), axis=1
            )
            half_width = (order + 0.5) * size
            tail = self._continuum_tail(half_width)
            # tail error is second order in size / half_width
            if tail * (size / half_width) ** 2 <= (
                self._image_tolerance * np.min(total)
            ):
                break
        else:
            self._logger.warning(
                "Image sum stopped at %d shells; relative tail %.3e",
                self._max_shells,
                tail / np.min(total),
            )
        profile = total + tail
        profile[~off_site] = 0.0
        return profile


def build_model(spec: LatticeSpec) -> LatticeModel:
    """
    Builds the LatticeModel described by the spec.
    """
    return LatticeBuilder(spec).build()
