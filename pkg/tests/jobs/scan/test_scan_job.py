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
Scan job test
"""

import csv
import json
import math
from pathlib import Path

import pytest

from common.entities import (
    Command,
    InertiaSet,
    LatticeSpec,
    ObservableSelection,
    RunConfig,
)
from common.lattice import build_model
from common.observables import DynamicsRunner
from services.cli.config import build_application_config
from services.jobs.scan.run_controller import ScanCell, ScanController


class TestScanJob:
    """
    Squeezing scan job tests
    """

    @pytest.fixture(scope="class")
    def scan_result(
        self, basic_config: dict
    ) -> tuple[list[ScanCell], dict[float, dict]]:
        """
        Runs a small all-to-all versus dipolar scan.
        """
        run_config = RunConfig.model_validate(
            {
                "lattice": {"dimension": 1},
                "scan": {
                    "alphas": [0.0, 3.0],
                    "sizes": [32, 64, 128, 256],
                    "points": 200,
                },
                "output": {"prefix": "scan"},
            }
        )
        app_config = build_application_config(
            Command.SCAN,
            run_config,
            output_dir=basic_config["output_dir"],
            workers=basic_config["workers"],
        )
        return ScanController(app_config).start_run()

    def test_cells(
        self, scan_result: tuple[list[ScanCell], dict[float, dict]]
    ) -> None:
        """
        Test that every cell squeezes and keeps the grid order.
        """
        cells, _ = scan_result
        assert [(c.alpha, c.n_sites) for c in cells] == [
            (alpha, n) for alpha in (0.0, 3.0) for n in (32, 64, 128, 256)
        ]
        for cell in cells:
            assert not cell.depolarized
            assert 0.0 < cell.min_xi2 < 1.0
            assert 0.0 < cell.t_min <= math.pi * cell.inertia

    def test_all_to_all_inertia(
        self, scan_result: tuple[list[ScanCell], dict[float, dict]]
    ) -> None:
        """
        Test that all-to-all cells use I = 1 / J.
        """
        cells, _ = scan_result
        for cell in cells:
            if cell.alpha == 0.0:
                assert cell.inertia == pytest.approx(1.0)

    def test_slopes(
        self, scan_result: tuple[list[ScanCell], dict[float, dict]]
    ) -> None:
        """
        Test that long-range chains squeeze faster with N than short-range
        ones.
        """
        _, slopes = scan_result
        assert slopes[0.0]["points"] == 4
        assert -0.9 < slopes[0.0]["slope"] < -0.45
        assert slopes[0.0]["slope"] < slopes[3.0]["slope"]

    def test_minimum_is_polarized(
        self, scan_result: tuple[list[ScanCell], dict[float, dict]]
    ) -> None:
        """
        Test that every reported minimum lies before depolarization and
        matches the full observable evaluation.
        """
        cells, _ = scan_result
        selection = ObservableSelection(entropy=False, sw_entropy=False)
        for cell in cells:
            model = build_model(
                LatticeSpec(
                    dimension=1, linear_size=cell.n_sites, alpha=cell.alpha
                )
            )
            inertia = InertiaSet(cell.inertia, cell.inertia)
            record = DynamicsRunner(model, inertia, selection).record_at(
                cell.t_min
            )
            assert record.mean_jx.total > 0.0
            assert record.xi2 == pytest.approx(cell.min_xi2, rel=1e-9)

    def test_tables(
        self,
        basic_config: dict,
        scan_result: tuple[list[ScanCell], dict[float, dict]],
    ) -> None:
        """
        Test that the scan and slope tables and metadata are written.
        """
        output_dir = basic_config["output_dir"]
        with (output_dir / "scan_scan.csv").open(encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 8
        assert rows[0]["depolarized"] == "False"
        with (output_dir / "scan_scan_slopes.csv").open(
            encoding="utf-8"
        ) as handle:
            slopes = list(csv.DictReader(handle))
        assert [float(row["alpha"]) for row in slopes] == [0.0, 3.0]
        metadata = json.loads(
            (output_dir / "scan_metadata.json").read_text(encoding="utf-8")
        )
        assert metadata["command"] == "scan"
        assert set(metadata["results"]["slopes"]) == {"0.0", "3.0"}


class TestScanHelpers:
    """
    Scan helper tests
    """

    def test_fit_slopes(self) -> None:
        """
        Test the log-log fit on an exact power law.
        """
        cells = [
            ScanCell(1.0, n, 1.0, n ** (-2.0 / 3.0), 0.1, False)
            for n in (10, 100, 1000)
        ]
        cells.append(ScanCell(2.0, 10, 1.0, math.inf, math.nan, True))
        slopes = ScanController.fit_slopes(cells)
        assert slopes[1.0]["slope"] == pytest.approx(-2.0 / 3.0)
        assert slopes[1.0]["intercept"] == pytest.approx(0.0, abs=1e-12)
        assert math.isnan(slopes[2.0]["slope"])
        assert slopes[2.0]["points"] == 0

    def test_frozen_cell(self, tmp_path: Path) -> None:
        """
        Test that Delta = 1 cells report no squeezing.
        """
        run_config = RunConfig.model_validate(
            {"lattice": {"dimension": 1, "anisotropy": 1.0}}
        )
        controller = ScanController(
            build_application_config(Command.SCAN, run_config, tmp_path)
        )
        cell = controller.scan_cell(2.0, 16)
        assert cell.min_xi2 == 1.0
        assert math.isinf(cell.inertia)
        assert controller.cell_spec(2.0, 16).n_sites == 16


@pytest.mark.slow
class TestScanCrossover:
    """
    Squeezing scan over the default alpha and N grid
    """

    @pytest.fixture(scope="class")
    def slopes(self, basic_config: dict) -> dict[float, dict]:
        """
        Runs the scan with the default grid and returns the slopes.
        """
        run_config = RunConfig.model_validate(
            {"lattice": {"dimension": 1}, "output": {"prefix": "crossover"}}
        )
        app_config = build_application_config(
            Command.SCAN,
            run_config,
            output_dir=basic_config["output_dir"],
            workers=basic_config["workers"],
        )
        cells, slopes = ScanController(app_config).start_run()
        assert not any(cell.depolarized for cell in cells)
        return slopes

    def test_slope_bands(self, slopes: dict[float, dict]) -> None:
        """
        Test that long-range chains squeeze with N and short-range chains
        do not.
        """
        assert list(slopes) == [1.0, 1.5, 2.0, 2.5, 3.0]
        assert slopes[1.0]["slope"] <= -0.4
        assert slopes[3.0]["slope"] >= -0.1

    def test_crossover(self, slopes: dict[float, dict]) -> None:
        """
        Test that the slope rises with alpha and crosses the midpoint of
        its range between alpha = 1.8 and 2.4.
        """
        alphas = list(slopes)
        values = [slopes[alpha]["slope"] for alpha in alphas]
        for lower, upper in zip(values, values[1:]):
            assert upper >= lower - 0.05

        midpoint = (values[0] + values[-1]) / 2.0
        crossing = None
        for i in range(len(values) - 1):
            if values[i] < midpoint <= values[i + 1]:
                fraction = (midpoint - values[i]) / (values[i + 1] - values[i])
                crossing = alphas[i] + fraction * (alphas[i + 1] - alphas[i])
                break
        assert crossing is not None
        assert 1.8 <= crossing <= 2.4
