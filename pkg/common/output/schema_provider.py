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
This module provides a SchemaProvider class holding the fixed column layout
of every output table. Times are in units of 1/J and energies in units of
J.

Classes:
- TableNames: Output table names.
- Column: One column of an output table.
- SchemaProvider: Column schemas of the output tables.
"""

from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum: str() and format() give the value."""

        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any

from common.output.output_exceptions import OutputSchemaNotFoundError

SCHEMA_VERSION = "1.0"


class TableNames(StrEnum):
    """
    Predefined table names used in the SchemaProvider.
    """

    DYNAMICS = "dynamics"
    CORRELATIONS = "correlations"
    SCAN = "scan"
    SCAN_SLOPES = "scan_slopes"
    ORACLE_COMPARE = "oracle_compare"
    COUPLINGS = "couplings"
    FOURIER_COUPLINGS = "fourier_couplings"


@dataclass(frozen=True)
class Column:
    """
    Output column with its unit.
    """

    name: str
    unit: str = "1"
    description: str = ""


def _breakdown(name: str, unit: str, description: str) -> list[Column]:
    return [
        Column(f"{name}_rotor", unit, f"{description}, rotor part"),
        Column(f"{name}_sw", unit, f"{description}, spin-wave part"),
        Column(name, unit, description),
    ]


class SchemaProvider:
    """
    A provider class for the column schemas of the output tables.
    """

    def __init__(self) -> None:
        """
        Initializes the SchemaProvider with predefined schemas.
        """
        self.tables = {
            TableNames.DYNAMICS: {
                "schema": [
                    Column("t", "1/J", "time"),
                    *_breakdown("mean_jx", "1", "<J^x>"),
                    *_breakdown("var_jx", "1", "Var(J^x)"),
                    Column("min_var_perp", "1", "min transverse variance"),
                    Column("xi2", "1", "Wineland squeezing parameter"),
                    Column("mean_jz", "1", "<J^z>"),
                    Column("var_jz", "1", "Var(J^z)"),
                    Column("n0_density", "1", "zero-momentum bosons / N"),
                    Column("nfm_density", "1", "finite-momentum bosons / N"),
                    *_breakdown("renyi2", "1", "half-system Renyi-2"),
                    Column("flags", "", "validity flags, ';' separated"),
                ],
            },
            TableNames.CORRELATIONS: {
                "schema": [
                    Column("t", "1/J", "time"),
                    Column("dx", "1", "displacement along axis 0"),
                    Column("dy", "1", "displacement along axis 1"),
                    *_breakdown("cyy", "1", "<S_i^y S_i+d^y>"),
                    *_breakdown("czz", "1", "<S_i^z S_i+d^z>"),
                ],
            },
            TableNames.SCAN: {
                "schema": [
                    Column("alpha", "1", "power-law exponent"),
                    Column("n_sites", "1", "number of spins"),
                    Column("inertia", "1/J", "bare moment of inertia"),
                    Column("min_xi2", "1", "minimal squeezing parameter"),
                    Column("t_min", "1/J", "time of the minimum"),
                    Column("depolarized", "", "minimum not reached"),
                ],
            },
            TableNames.SCAN_SLOPES: {
                "schema": [
                    Column("alpha", "1", "power-law exponent"),
                    Column("slope", "1", "d log min_xi2 / d log N"),
                    Column("intercept", "1", "log-log intercept"),
                    Column("points", "1", "number of fitted sizes"),
                ],
            },
            TableNames.ORACLE_COMPARE: {
                "schema": [
                    Column("t", "1/J", "time"),
                    Column("observable", "", "observable name"),
                    Column("rsw", "1", "rotor/spin-wave value"),
                    Column("exact", "1", "exact value"),
                    Column("relative_deviation", "1", "|rsw - exact|/|exact|"),
                ],
            },
            TableNames.COUPLINGS: {
                "schema": [
                    Column("i", "1", "site index"),
                    Column("j", "1", "site index"),
                    Column("coupling", "J", "J_ij"),
                ],
            },
            TableNames.FOURIER_COUPLINGS: {
                "schema": [
                    Column("q_index", "1", "momentum index"),
                    Column("qx", "1", "momentum along axis 0"),
                    Column("qy", "1", "momentum along axis 1"),
                    Column("fourier_coupling", "J", "J_q"),
                ],
            },
        }

    def get_table_metadata(self, table_name: TableNames) -> dict[str, Any]:
        """
        Retrieves the metadata for a specified table.
        """
        table_metadata = self.tables.get(table_name)

        if table_metadata:
            return table_metadata
        raise OutputSchemaNotFoundError(
            f"Schema not found for table {table_name}"
        )

    def get_column_names(self, table_name: TableNames) -> list[str]:
        """
        Retrieves the ordered column names of a table.
        """
        schema = self.get_table_metadata(table_name)["schema"]
        return [column.name for column in schema]
