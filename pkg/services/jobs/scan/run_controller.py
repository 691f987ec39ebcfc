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
This module defines the ScanController class, which maps the minimal
squeezing parameter of 1d power-law chains over the exponent alpha and the
system size N, and fits its scaling with N.

Classes:
- ScanCell: Result of one (alpha, N) cell.
- ScanController: A controller class for the `scan` command.
"""

import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from common.entities import CouplingLaw, LatticeSpec, RunConfig
from common.lattice import build_model
from common.observables import squeezing
from common.output import OutputAdapter, TableNames
from common.rotor import bare_inertia, css_x_state, evolve, moments
from common.spinwave import coefficients, evolve_mode
from common.utils import get_logger


@dataclass(frozen=True)
class ScanCell:
    """
    Minimal squeezing of one (alpha, N) cell. `depolarized` marks cells
    where the state depolarized before any squeezing value was found.
    """

    alpha: float
    n_sites: int
    inertia: float
    min_xi2: float
    t_min: float
    depolarized: bool


class ScanController:
    """
    A controller class for the alpha/N squeezing scan. The rotor uses the
    bare moment of inertia.
    """

    def __init__(self, app_config: dict) -> None:
        """
        Initializes the ScanController.
        """
        self.command = app_config["command"]
        self.run_config: RunConfig = app_config["run_config"]
        self.workers = app_config["workers"]
        self._output = OutputAdapter(
            app_config["output_dir"], self.run_config.output.prefix
        )
        self._logger = get_logger()

    def start_run(self) -> tuple[list[ScanCell], dict[float, dict]]:
        """
        Evaluates every cell, fits the log-log slopes and writes both
        tables and the metadata.
        """
        scan = self.run_config.scan
        jobs = [(alpha, n) for alpha in scan.alphas for n in scan.sizes]

        cells = []
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = [executor.submit(self.scan_cell, *job) for job in jobs]
            for future in as_completed(futures):
                cells.append(future.result())
        order = {job: index for index, job in enumerate(jobs)}
        cells.sort(key=lambda cell: order[(cell.alpha, cell.n_sites)])

        slopes = self.fit_slopes(cells)
        self._output.write_table(TableNames.SCAN, (asdict(c) for c in cells))
        self._output.write_table(
            TableNames.SCAN_SLOPES,
            ({"alpha": alpha, **fit} for alpha, fit in slopes.items()),
        )
        self._output.write_metadata(
            self.command,
            self.run_config,
            {"slopes": slopes},
            [TableNames.SCAN, TableNames.SCAN_SLOPES],
        )
        return cells, slopes

    def cell_spec(self, alpha: float, n_sites: int) -> LatticeSpec:
        """
        Returns the 1d power-law lattice of a cell. Anisotropy, spin,
        coupling strength and distance convention come from the config.
        """
        base = self.run_config.lattice
        return LatticeSpec(
            dimension=1,
            linear_size=n_sites,
            coupling_law=CouplingLaw.POWER_LAW,
            alpha=alpha,
            coupling_strength=base.coupling_strength,
            anisotropy=base.anisotropy,
            spin=base.spin,
            distance_convention=base.distance_convention,
        )

    def scan_cell(self, alpha: float, n_sites: int) -> ScanCell:
        """
        Finds the minimal squeezing on a geometric time grid up to
        `horizon` times the GHZ time pi I, or up to the first depolarized
        time when that comes earlier, and refines it with a bounded
        scalar minimization between the neighbours of the best grid point.
        """
        scan = self.run_config.scan
        model = build_model(self.cell_spec(alpha, n_sites))
        inertia = bare_inertia(model)
        initial = css_x_state(model.n_sites, model.spin)
        coeffs = coefficients(model)

        def xi2(time: float) -> float:
            rotor = moments(evolve(initial, inertia, time))
            n, _ = evolve_mode(coeffs.a, coeffs.b, time)
            return squeezing(rotor, float(np.sum(n)), n_sites, model.spin)

        if math.isinf(inertia):
            return ScanCell(alpha, n_sites, inertia, 1.0, 0.0, False)

        stop = scan.horizon * math.pi * abs(inertia)
        grid = np.geomspace(scan.first_time_fraction * stop, stop, scan.points)
        values = []
        for time in grid:
            value = xi2(time)
            if not math.isfinite(value):
                break
            values.append(value)
        if not values:
            self._logger.warning(
                "alpha=%g N=%d depolarized before any squeezing", alpha, n_sites
            )
            return ScanCell(alpha, n_sites, inertia, math.inf, math.nan, True)
        if len(values) < len(grid):
            self._logger.info(
                "alpha=%g N=%d depolarized at t=%.6g, search stops there",
                alpha,
                n_sites,
                grid[len(values)],
            )
            grid = grid[: len(values)]

        values = np.array(values)
        best = int(np.argmin(values))
        lower = grid[max(best - 1, 0)]
        upper = grid[min(best + 1, len(grid) - 1)]
        refined = minimize_scalar(
            xi2,
            bounds=(lower, upper),
            method="bounded",
            options={"xatol": 1e-10 * stop},
        )
        if refined.success and refined.fun < values[best]:
            return ScanCell(
                alpha,
                n_sites,
                inertia,
                float(refined.fun),
                float(refined.x),
                False,
            )
        return ScanCell(
            alpha,
            n_sites,
            inertia,
            float(values[best]),
            float(grid[best]),
            False,
        )

    @staticmethod
    def fit_slopes(cells: list[ScanCell]) -> dict[float, dict]:
        """
        Fits log(min xi^2) = slope log(N) + intercept per alpha over the
        cells with a finite, positive minimum.
        """
        slopes = {}
        for alpha in dict.fromkeys(cell.alpha for cell in cells):
            usable = [
                cell
                for cell in cells
                if cell.alpha == alpha
                and math.isfinite(cell.min_xi2)
                and cell.min_xi2 > 0.0
            ]
            if len(usable) < 2:
                slopes[alpha] = {
                    "slope": math.nan,
                    "intercept": math.nan,
                    "points": len(usable),
                }
                continue
            slope, intercept = np.polyfit(
                np.log([cell.n_sites for cell in usable]),
                np.log([cell.min_xi2 for cell in usable]),
                1,
            )
            slopes[alpha] = {
                "slope": float(slope),
                "intercept": float(intercept),
                "points": len(usable),
            }
        return slopes
