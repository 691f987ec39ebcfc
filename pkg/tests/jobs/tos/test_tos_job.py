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
Tower-of-states job test
"""

import json

import pytest

from common.entities import Command, RunConfig, ToSReference
from services.cli.config import build_application_config
from services.jobs.dynamics.run_controller import DynamicsController
from services.jobs.tos.run_controller import TosController


class TestTosJob:
    """
    Tower-of-states job tests
    """

    def test_all_to_all_reference(self, basic_config: dict) -> None:
        """
        Test that the all-to-all chain yields I_ToS = I_bare and a
        reference triple that scaled runs can consume.
        """
        output_dir = basic_config["output_dir"]
        run_config = RunConfig.model_validate(
            {
                "lattice": {"dimension": 1, "linear_size": 8, "alpha": 0},
                "output": {"prefix": "tower"},
            }
        )
        fit = TosController(
            build_application_config(
                Command.TOS, run_config, output_dir, basic_config["workers"]
            )
        ).start_run()
        assert fit.i_tos == pytest.approx(1.0, rel=1e-9)

        reference = ToSReference.model_validate_json(
            (output_dir / "tower_tos_reference.json").read_text(
                encoding="utf-8"
            )
        )
        assert reference.n_ref == 8
        assert reference.j0_ref == pytest.approx(7.0)

        metadata = json.loads(
            (output_dir / "tower_metadata.json").read_text(encoding="utf-8")
        )
        assert metadata["results"]["renormalization"] == pytest.approx(1.0)
        assert len(metadata["results"]["sector_minima"]) == 5

        scaled_config = RunConfig.model_validate(
            {
                "lattice": {"dimension": 1, "linear_size": 16, "alpha": 0},
                "inertia": {
                    "mode": "tos-scaled",
                    "reference": reference.model_dump(),
                },
                "time_grid": {"times": [0.0]},
                "output": {"prefix": "scaled"},
            }
        )
        DynamicsController(
            build_application_config(
                Command.DYNAMICS, scaled_config, output_dir
            )
        ).start_run()
        scaled = json.loads(
            (output_dir / "scaled_metadata.json").read_text(encoding="utf-8")
        )
        assert scaled["results"]["i_tos"] == pytest.approx(1.0)
