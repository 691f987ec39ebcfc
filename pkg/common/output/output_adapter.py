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
This module converts simulation results into output rows and writes them
as CSV series and JSON metadata.

Classes:
- RowTransformer: Converts records and lattice data into rows of the output
  tables.
- OutputAdapter: Writes tables and metadata into an output directory.
"""

import csv
import json
import math
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np

import common
from common.entities import (
    LatticeModel,
    ObservableRecord,
    RunConfig,
    SectorBreakdown,
)
from common.output.output_exceptions import io_exception_shield
from common.output.schema_provider import (
    SCHEMA_VERSION,
    SchemaProvider,
    TableNames,
)
from common.utils import get_logger


def _breakdown(name: str, value: SectorBreakdown) -> dict[str, float]:
    return {
        f"{name}_rotor": value.rotor,
        f"{name}_sw": value.sw,
        name: value.total,
    }


class RowTransformer:
    """
    A utility class for transforming results into dictionaries keyed by
    output column.
    """

    @staticmethod
    def from_record(record: ObservableRecord) -> dict[str, Any]:
        """
        Transforms an ObservableRecord into a dynamics row.
        """
        return {
            "t": record.time,
            **_breakdown("mean_jx", record.mean_jx),
            **_breakdown("var_jx", record.var_jx),
            "min_var_perp": record.min_var_perp,
            "xi2": record.xi2,
            "mean_jz": record.mean_jz,
            "var_jz": record.var_jz,
            "n0_density": record.n0_density,
            "nfm_density": record.nfm_density,
            **_breakdown("renyi2", record.renyi2),
            "flags": ";".join(record.flags),
        }

    @staticmethod
    def correlation_rows(record: ObservableRecord) -> list[dict[str, Any]]:
        """
        Transforms the correlation maps of a record into long-format rows,
        one per displacement.
        """
        if record.cyy is None or record.czz is None:
            return []
        rows = []
        for index, displacement in enumerate(record.cyy.displacements):
            rows.append(
                {
                    "t": record.time,
                    "dx": int(displacement[0]),
                    "dy": int(displacement[1]) if len(displacement) > 1 else 0,
                    "cyy_rotor": record.cyy.rotor[index],
                    "cyy_sw": record.cyy.sw[index],
                    "cyy": record.cyy.total[index],
                    "czz_rotor": record.czz.rotor[index],
                    "czz_sw": record.czz.sw[index],
                    "czz": record.czz.total[index],
                }
            )
        return rows

    @staticmethod
    def coupling_rows(model: LatticeModel) -> list[dict[str, Any]]:
        """
        Transforms the coupling matrix into (i, j, J_ij) rows.
        """
        n_sites = model.n_sites
        return [
            {"i": i, "j": j, "coupling": model.couplings[i, j]}
            for i in range(n_sites)
            for j in range(n_sites)
        ]

    @staticmethod
    def fourier_rows(model: LatticeModel) -> list[dict[str, Any]]:
        """
        Transforms the Fourier couplings into rows.
        """
        rows = []
        for index, momentum in enumerate(model.momenta):
            rows.append(
                {
                    "q_index": index,
                    "qx": momentum[0],
                    "qy": momentum[1] if len(momentum) > 1 else 0.0,
                    "fourier_coupling": model.fourier[index],
                }
            )
        return rows


def _cell(value: Any) -> Any:
    """
    Formats a CSV cell; floats keep their full repr.
    """
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return int(value)
    return value


def _json_safe(value: Any) -> Any:
    """
    Converts numpy values and non-finite floats for JSON.
    """
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.ndarray):
        return _json_safe(value.tolist())
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


class OutputAdapter:
    """
    An adapter class writing output tables as CSV files and run metadata
    as JSON into one directory. File names are `<prefix>_<table>.csv`.
    """

    def __init__(self, output_dir: str | Path, prefix: str = "run") -> None:
        """
        Initializes the OutputAdapter.
        """
        self._output_dir = Path(output_dir)
        self._prefix = prefix
        self._schema_provider = SchemaProvider()
        self._logger = get_logger()

    @io_exception_shield
    def ensure_directory_exists(self) -> Path:
        """
        Creates the output directory when missing.
        """
        self._output_dir.mkdir(parents=True, exist_ok=True)
        return self._output_dir

    def table_path(self, table_name: TableNames) -> Path:
        """
        Returns the path of a table file.
        """
        return self._output_dir / f"{self._prefix}_{table_name}.csv"

    @io_exception_shield
    def write_table(
        self, table_name: TableNames, rows: Iterable[dict[str, Any]]
    ) -> Path:
        """
        Writes rows to the CSV file of a table with a header row. Column
        order follows the schema.
        """
        self.ensure_directory_exists()
        columns = self._schema_provider.get_column_names(table_name)
        path = self.table_path(table_name)
        count = 0
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=columns)
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _cell(v) for k, v in row.items()})
                count += 1
        self._logger.info("Wrote %d rows to %s", count, path)
        return path

    def write_records(
        self, records: list[ObservableRecord], correlations: bool = False
    ) -> list[Path]:
        """
        Writes the dynamics table and, when requested, the long-format
        correlation table.
        """
        paths = [
            self.write_table(
                TableNames.DYNAMICS,
                (RowTransformer.from_record(r) for r in records),
            )
        ]
        if correlations:
            rows = [
                row
                for record in records
                for row in RowTransformer.correlation_rows(record)
            ]
            paths.append(self.write_table(TableNames.CORRELATIONS, rows))
        return paths

    def write_couplings(self, model: LatticeModel) -> list[Path]:
        """
        Writes J_ij and J_q tables.
        """
        return [
            self.write_table(
                TableNames.COUPLINGS, RowTransformer.coupling_rows(model)
            ),
            self.write_table(
                TableNames.FOURIER_COUPLINGS,
                RowTransformer.fourier_rows(model),
            ),
        ]

    @io_exception_shield
    def write_metadata(
        self,
        command: str,
        config: RunConfig,
        results: Optional[dict[str, Any]] = None,
        tables: Optional[list[TableNames]] = None,
    ) -> Path:
        """
        Writes the JSON metadata: config echo, versions, conventions,
        units, column units of the written tables and scalar results.
        """
        self.ensure_directory_exists()
        columns = {
            str(table): {
                column.name: column.unit
                for column in self._schema_provider.get_table_metadata(
                    table
                )["schema"]
            }
            for table in tables or []
        }
        payload = {
            "schema_version": SCHEMA_VERSION,
            "package_version": common.__version__,
            "command": str(command),
            "config": config.model_dump(mode="json"),
            "conventions": {
                "distance_convention": str(
                    config.lattice.distance_convention
                ),
                "momentum_order": "row-major, q = 0 first",
                "covariance": "vacuum symplectic eigenvalue 1/2",
                "entropy_region": "sites with first coordinate < L/2",
                "inertia_form": "(J^z)^2 / (2 I)",
            },
            "units": {"time": "1/J", "energy": "J"},
            "columns": columns,
            "results": _json_safe(results or {}),
        }
        path = self._output_dir / f"{self._prefix}_metadata.json"
        with path.open("w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")
        self._logger.info("Wrote metadata to %s", path)
        return path

    @io_exception_shield
    def write_document(self, name: str, payload: dict[str, Any]) -> Path:
        """
        Writes a standalone JSON document `<prefix>_<name>.json`.
        """
        self.ensure_directory_exists()
        path = self._output_dir / f"{self._prefix}_{name}.json"
        with path.open("w", encoding="utf-8") as handle:
            json.dump(_json_safe(payload), handle, indent=2, sort_keys=True)
            handle.write("\n")
        self._logger.info("Wrote %s to %s", name, path)
        return path
