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
This module defines the DynamicsController class, which runs the
rotor/spin-wave quench on the configured time grid and writes the series.

Classes:
- DynamicsController: A controller class for the `dynamics` command.
"""

import math

from common.entities import (
    InertiaSet,
    LatticeModel,
    ObservableRecord,
    RunConfig,
)
from common.lattice import build_model
from common.observables import DynamicsRunner, rotor_saturation_time
from common.output import OutputAdapter, TableNames
from common.rotor import resolve_inertia
from common.utils import get_logger


class DynamicsController:
    """
    A controller class for evolving the rotor/spin-wave observables and
    writing one CSV row per time.
    """

    def __init__(self, app_config: dict) -> None:
        """
        Initializes the DynamicsController.
        """
        self.command = app_config["command"]
        self.run_config: RunConfig = app_config["run_config"]
        self.workers = app_config["workers"]
        self._output = OutputAdapter(
            app_config["output_dir"], self.run_config.output.prefix
        )
        self._logger = get_logger()

    def start_run(self) -> list[ObservableRecord]:
        """
        Builds the lattice, resolves the inertia, evaluates the time grid
        and writes the series and metadata.
        """
        config = self.run_config
        model = build_model(config.lattice)
        inertia = resolve_inertia(model, config.inertia, config.ed)
        times = config.time_grid.values()
        self._logger.info(
            "Running dynamics: N=%d I_bare=%.6g I=%.6g, %d time points",
            model.n_sites,
            inertia.i_bare,
            inertia.i_tos,
            len(times),
        )

        runner = DynamicsRunner(
            model,
            inertia,
            config.observables,
            config.validity_threshold,
            self.workers,
        )
        records = runner.run(times)

        tables = [TableNames.DYNAMICS]
        self._output.write_records(records, config.observables.correlations)
        if config.observables.correlations:
            tables.append(TableNames.CORRELATIONS)
        if config.output.dump_couplings:
            self._output.write_couplings(model)
            tables += [TableNames.COUPLINGS, TableNames.FOURIER_COUPLINGS]

        self._output.write_metadata(
            self.command,
            config,
            self.summarize(model, inertia, records),
            tables,
        )
        return records

    @staticmethod
    def summarize(
        model: LatticeModel,
        inertia: InertiaSet,
        records: list[ObservableRecord],
    ) -> dict:
        """
        Collects the scalar results of a run.
        """
        results = {
            "n_sites": model.n_sites,
            "j0": model.j0,
            "i_bare": inertia.i_bare,
            "i_tos": inertia.i_tos,
            "ghz_time": math.pi * abs(inertia.i_tos),
            "t_rotor_saturation": rotor_saturation_time(model, inertia),
            "flagged_records": sum(1 for r in records if r.extrapolated),
        }
        # the minimum is searched before the first depolarized record
        polarized = []
        for record in records:
            if not math.isfinite(record.xi2):
                break
            polarized.append(record)
        if polarized:
            best = min(polarized, key=lambda r: r.xi2)
            results["min_xi2"] = best.xi2
            results["t_min_xi2"] = best.time
        elif records:
            results["min_xi2"] = math.inf
            results["t_min_xi2"] = math.nan
        return results
