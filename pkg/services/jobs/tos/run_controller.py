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
This module defines the TosController class, which extracts the
tower-of-states moment of inertia by exact diagonalization and emits the
reference triple consumed by `tos-scaled` runs.

Classes:
- TosController: A controller class for the `tos` command.
"""

from common.ed_oracle import fit_tower
from common.entities import RunConfig, ToSFit, ToSReference
from common.lattice import build_model
from common.output import OutputAdapter
from common.rotor import bare_inertia
from common.utils import get_logger


class TosController:
    """
    A controller class for the tower-of-states extraction.
    """

    def __init__(self, app_config: dict) -> None:
        """
        Initializes the TosController.
        """
        self.command = app_config["command"]
        self.run_config: RunConfig = app_config["run_config"]
        self.workers = app_config["workers"]
        self._output = OutputAdapter(
            app_config["output_dir"], self.run_config.output.prefix
        )
        self._logger = get_logger()

    def start_run(self) -> ToSFit:
        """
        Fits the tower of states and writes the reference triple and the
        metadata.
        """
        config = self.run_config
        model = build_model(config.lattice)
        fit = fit_tower(model, config.ed, self.workers)
        i_bare = bare_inertia(model)

        reference = ToSReference(
            n_ref=model.n_sites, j0_ref=model.j0, i_tos_ref=fit.i_tos
        )
        self._output.write_document(
            "tos_reference", reference.model_dump(mode="json")
        )
        self._output.write_metadata(
            self.command,
            config,
            {
                "n_sites": fit.n_sites,
                "e0": fit.e0,
                "i_tos": fit.i_tos,
                "i_bare": i_bare,
                "renormalization": fit.i_tos / i_bare,
                "residual": fit.residual,
                "sector_minima": fit.sector_minima,
            },
        )
        self._logger.info(
            "I_ToS=%.6g I_bare=%.6g (ratio %.4f)",
            fit.i_tos,
            i_bare,
            fit.i_tos / i_bare,
        )
        return fit
