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
Module for configuring the shared test fixtures.
"""

import json
import os
from pathlib import Path
from typing import Callable

import pytest

from common.entities import LatticeSpec, LatticeModel
from common.lattice import build_model


@pytest.fixture(scope="class")
def basic_config(tmp_path_factory: pytest.TempPathFactory) -> dict:
    """
    Provides a basic configuration dictionary for the test environment.
    """
    return {
        "output_dir": tmp_path_factory.mktemp(
            os.environ.get("RSW_TEST_OUTPUT", "out")
        ),
        "workers": int(os.environ.get("RSW_TEST_WORKERS", "1")),
    }


@pytest.fixture(scope="class")
def dipolar_model() -> LatticeModel:
    """
    Provides the 4 x 4 dipolar XX lattice.
    """
    return build_model(LatticeSpec(dimension=2, linear_size=4, alpha=3.0))


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[[dict], Path]:
    """
    Provides a function writing a run configuration to a JSON file.
    """

    def write(payload: dict, name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write
