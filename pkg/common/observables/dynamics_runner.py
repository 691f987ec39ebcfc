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
This module evaluates the rotor/spin-wave observables on a time grid.

Classes:
- DynamicsRunner: Computes one ObservableRecord per time point, in
  parallel when more than one worker is configured.

Functions:
- run_dynamics: Convenience wrapper around DynamicsRunner.
- rotor_saturation_time: First time <(K^y)^2> / N^2 reaches a fraction of
  its plateau S^2 / 2.
"""

import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Iterable, Optional

import numpy as np
from scipy.optimize import brentq

from common.entities import (
    GreenFunctions,
    InertiaSet,
    LatticeModel,
    ObservableRecord,
    ObservableSelection,
    RotorState,
    SectorBreakdown,
)
from common.entropy import region_sites, renyi2_rotor, renyi2_sw
from common.observables.observables import (
    corr_yy,
    corr_zz,
    mean_jx,
    min_transverse_variance,
    squeezing,
    var_jx,
)
from common.rotor import css_x_state, evolve, moments
from common.spinwave import coefficients, mode_set, realspace_green
from common.utils import get_logger

SW_POPULATION_FLAG = "sw_population"
NEGATIVE_VARIANCE_FLAG = "negative_variance"
# relative to (N S)^2
NEGATIVE_VARIANCE_TOLERANCE = 1e-9


class DynamicsRunner:
    """
    Evaluates rotor and spin-wave observables of the quench from the
    x-polarized state. Time points are independent; records are returned
    in time order whatever the number of workers.
    """

    def __init__(
        self,
        model: LatticeModel,
        inertia: InertiaSet,
        selection: Optional[ObservableSelection] = None,
        validity_threshold: float = 0.1,
        workers: int = 1,
    ) -> None:
        """
        Initializes the DynamicsRunner.
        """
        self._model = model
        self._inertia = inertia
        self._selection = selection or ObservableSelection()
        self._validity_threshold = validity_threshold
        self._workers = workers
        self._initial_rotor = css_x_state(model.n_sites, model.spin)
        self._coefficients = coefficients(model)
        self._region = region_sites(model)
        self._logger = get_logger()

    def run(self, times: Iterable[float]) -> list[ObservableRecord]:
        """
        Returns one ObservableRecord per time.
        """
        times = [float(t) for t in times]
        if not times:
            return []

        if self._workers == 1:
            records = [self.record_at(t) for t in times]
        else:
            records = []
            with ThreadPoolExecutor(max_workers=self._workers) as executor:
                futures = [executor.submit(self.record_at, t) for t in times]
                for future in as_completed(futures):
                    records.append(future.result())
            records.sort(key=lambda record: record.time)

        flagged = sum(1 for record in records if record.extrapolated)
        if flagged:
            self._logger.warning(
                "%d of %d records flagged as outside the spin-wave validity "
                "range",
                flagged,
                len(records),
            )
        return records

    def record_at(self, time: float) -> ObservableRecord:
        """
        Computes the observables at a single time.
        """
        model = self._model
        n_sites = model.n_sites
        spin = model.spin

        rotor_state = evolve(self._initial_rotor, self._inertia.i_tos, time)
        rotor = moments(rotor_state)
        modes = mode_set(self._coefficients, time)
        n_fm = modes.n_fm
        green = realspace_green(modes, model)

        jx = mean_jx(rotor, n_fm)
        jx_variance = var_jx(rotor, n_fm, n_sites, spin)
        cyy = corr_yy(rotor, green, model)
        czz = corr_zz(rotor, green, model)
        var_jz = n_sites * math.fsum(czz.total) - rotor.mean_kz**2

        renyi2 = self._renyi2(rotor_state, green)

        flags = []
        if n_fm / n_sites > self._validity_threshold:
            flags.append(SW_POPULATION_FLAG)
        variance_floor = -NEGATIVE_VARIANCE_TOLERANCE * (n_sites * spin) ** 2
        if jx_variance.total < variance_floor:
            flags.append(NEGATIVE_VARIANCE_FLAG)

        keep_maps = self._selection.correlations
        return ObservableRecord(
            time=time,
            n_sites=n_sites,
            mean_jx=jx,
            var_jx=jx_variance,
            min_var_perp=min_transverse_variance(rotor),
            xi2=squeezing(rotor, n_fm, n_sites, spin),
            mean_jz=rotor.mean_kz,
            var_jz=var_jz,
            n0_density=(n_sites * spin - rotor.mean_kx) / n_sites,
            nfm_density=n_fm / n_sites,
            renyi2=renyi2,
            cyy=cyy if keep_maps else None,
            czz=czz if keep_maps else None,
            flags=tuple(flags),
        )

    def _renyi2(
        self, rotor_state: RotorState, green: GreenFunctions
    ) -> SectorBreakdown:
        """
        Half-system Renyi-2 entropy; disabled parts are NaN.
        """
        selection = self._selection
        rotor_part = math.nan
        sw_part = math.nan
        if selection.entropy:
            rotor_part = renyi2_rotor(
                rotor_state, len(self._region), self._model.spin
            )
        if selection.sw_entropy:
            sw_part = renyi2_sw(green, self._model, self._region)
        if math.isnan(rotor_part) or math.isnan(sw_part):
            total = math.nan
        else:
            total = rotor_part + sw_part
        return SectorBreakdown(rotor_part, sw_part, total)


def run_dynamics(
    model: LatticeModel,
    inertia: InertiaSet,
    times: Iterable[float],
    selection: Optional[ObservableSelection] = None,
    workers: int = 1,
    validity_threshold: float = 0.1,
) -> list[ObservableRecord]:
    """
    Returns one ObservableRecord per time of the grid.
    """
    runner = DynamicsRunner(
        model, inertia, selection, validity_threshold, workers
    )
    return runner.run(times)


def rotor_saturation_time(
    model: LatticeModel,
    inertia: InertiaSet,
    fraction: float = 0.95,
    points: int = 400,
) -> float:
    """
    Returns the first time at which <(K^y)^2> / N^2 reaches
    fraction * S^2 / 2. The crossing is bracketed on a grid up to pi I / 2 and
    refined by root finding. Returns math.nan when it is not reached.
    """
    if inertia.frozen:
        return math.nan

    initial = css_x_state(model.n_sites, model.spin)
    target = fraction * model.spin**2 / 2.0

    def excess(time: float) -> float:
        state = evolve(initial, inertia.i_tos, time)
        return moments(state).ky_squared / model.n_sites**2 - target

    grid = np.linspace(0.0, 0.5 * math.pi * abs(inertia.i_tos), points)
    previous = grid[0]
    for time in grid[1:]:
        if excess(time) >= 0.0:
            return float(brentq(excess, previous, time, xtol=1e-10))
        previous = time
    return math.nan
