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
This script runs one simulator sub-command.

Functions:
- main: Parses the command line, runs the matching controller and maps
  failures to exit codes (2 for configuration errors, 3 for numerical
  validity errors).
"""

import sys
from typing import Optional

from common.entities import Command
from common.exceptions import (
    ConfigValidationError,
    KrylovConvergenceError,
    LatticeConstructionError,
    NumericValidityError,
    SizeCapExceededError,
    TranslationInvarianceError,
)
from common.utils import get_logger
from services.cli.config import get_application_config
from services.jobs.dynamics.run_controller import DynamicsController
from services.jobs.oracle_compare.run_controller import (
    OracleCompareController,
)
from services.jobs.scan.run_controller import ScanController
from services.jobs.tos.run_controller import TosController

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_ERROR = 3

CONTROLLERS = {
    Command.DYNAMICS: DynamicsController,
    Command.SCAN: ScanController,
    Command.TOS: TosController,
    Command.ORACLE_COMPARE: OracleCompareController,
}


def main(argv: Optional[list[str]] = None) -> int:
    """
    Runs the sub-command and returns the process exit code.
    """
    logger = get_logger()
    try:
        app_config = get_application_config(argv)
        controller = CONTROLLERS[app_config["command"]](app_config)
        controller.start_run()
    except (ConfigValidationError, LatticeConstructionError) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG_ERROR
    except (
        NumericValidityError,
        KrylovConvergenceError,
        SizeCapExceededError,
        TranslationInvarianceError,
    ) as e:
        logger.error("Numerical validity error: %s", e)
        return EXIT_NUMERIC_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
