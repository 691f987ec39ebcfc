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
This module defines the OracleCompareController class, which runs the
rotor/spin-wave dynamics and the exact evolution on the same lattice and
reports their relative deviations.

Classes:
- OracleCompareController: A controller class for the `oracle-compare`
  command.
"""

import math
from pathlib import Path

from common.ed_oracle import (
    ExactEvolver,
    build_hamiltonian,
    css_x_ed_state,
    exact_observables,
)
from common.entities import LatticeModel, ObservableRecord, RunConfig
from common.lattice import build_model
from common.observables import DynamicsRunner
from common.output import OutputAdapter, TableNames
from common.rotor import resolve_inertia
from common.utils import get_logger

COMPARED = {
    "mean_jx": lambda record: record.mean_jx.total,
    "var_jx": lambda record: record.var_jx.total,
    "xi2": lambda record: record.xi2,
    "renyi2": lambda record: record.renyi2.total,
}
ABSOLUTE_FLOOR = 1e-12


def relative_deviation(value: float, reference: float) -> float:
    """
    Returns |value - reference| / |reference|, or the absolute deviation
    when the reference vanishes.
    """
    if not (math.isfinite(value) and math.isfinite(reference)):
        return 0.0 if value == reference else math.nan
    difference = abs(value - reference)
    if abs(reference) <= ABSOLUTE_FLOOR:
        return difference
    return difference / abs(reference)


class OracleCompareController:
    """
    A controller class comparing rotor/spin-wave records against exact
    records time by time.
    """

    def __init__(self, app_config: dict) -> None:
        """
        Initializes the OracleCompareController.
        """
        self.command = app_config["command"]
        self.run_config: RunConfig = app_config["run_config"]
        self.workers = app_config["workers"]
        output_dir = Path(app_config["output_dir"])
        prefix = self.run_config.output.prefix
        self._output = OutputAdapter(output_dir, prefix)
        self._rsw_output = OutputAdapter(output_dir, f"{prefix}_rsw")
        self._exact_output = OutputAdapter(output_dir, f"{prefix}_exact")
        self._logger = get_logger()

    def start_run(self) -> list[dict]:
        """
        Runs both evolutions, writes both series, the deviation table and
        the metadata. Returns the deviation rows.
        """
        config = self.run_config
        model = build_model(config.lattice)
        inertia = resolve_inertia(model, config.inertia, config.ed)
        times = [float(t) for t in config.time_grid.values()]

        rsw_records = DynamicsRunner(
            model,
            inertia,
            config.observables,
            config.validity_threshold,
            self.workers,
        ).run(times)
        exact_records = self.exact_records(model, times)

        rows = self.deviation_rows(rsw_records, exact_records)
        correlations = config.observables.correlations
        self._rsw_output.write_records(rsw_records, correlations)
        self._exact_output.write_records(exact_records, correlations)
        self._output.write_table(TableNames.ORACLE_COMPARE, rows)

        worst = {}
        for name in COMPARED:
            values = [
                row["relative_deviation"]
                for row in rows
                if row["observable"] == name
                and math.isfinite(row["relative_deviation"])
            ]
            worst[name] = max(values) if values else math.nan
        self._output.write_metadata(
            self.command,
            config,
            {
                "n_sites": model.n_sites,
                "i_bare": inertia.i_bare,
                "i_tos": inertia.i_tos,
                "max_relative_deviation": worst,
            },
            [TableNames.ORACLE_COMPARE],
        )
        return rows

    def exact_records(
        self, model: LatticeModel, times: list[float]
    ) -> list[ObservableRecord]:
        """
        Evolves the x-polarized state exactly and evaluates the exact
        records at the given times.
        """
        evolver = ExactEvolver(build_hamiltonian(model), self.run_config.ed)
        self._logger.info(
            "Exact evolution of N=%d spins by %s propagation",
            model.n_sites,
            evolver.method,
        )
        states = evolver.series(css_x_ed_state(model.n_sites), times)
        return [
            exact_observables(state, model, self.run_config.observables)
            for state in states
        ]

    @staticmethod
    def deviation_rows(
        rsw_records: list[ObservableRecord],
        exact_records: list[ObservableRecord],
    ) -> list[dict]:
        """
        Pairs the records by time and returns one row per observable.
        """
        rows = []
        for rsw, exact in zip(rsw_records, exact_records):
            for name, getter in COMPARED.items():
                rows.append(
                    {
                        "t": rsw.time,
                        "observable": name,
                        "rsw": getter(rsw),
                        "exact": getter(exact),
                        "relative_deviation": relative_deviation(
                            getter(rsw), getter(exact)
                        ),
                    }
                )
        return rows
