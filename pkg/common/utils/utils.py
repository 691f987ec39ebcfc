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
This module provides essential tools for command-line interface operations
and logging setup.
"""

import logging
import os
from argparse import ArgumentParser, ArgumentTypeError


def positive_int(n: str) -> int:
    """
    Converts a string to a strictly positive integer.
    """
    try:
        n = int(n)
    except ValueError as e:
        raise ArgumentTypeError("Not an integer") from e

    if n > 0:
        return n
    else:
        raise ArgumentTypeError("value must be a positive integer.")


def parse_common_args(parser: ArgumentParser) -> None:
    """
    Adds the arguments shared by every simulator sub-command.
    """
    parser.add_argument(
        "-c",
        "--config",
        type=str,
        required=True,
        help="Path to the JSON run configuration file.",
    )
    parser.add_argument(
        "-o",
        "--out",
        type=str,
        default="out",
        help=(
            "Directory where CSV series and JSON metadata are written. "
            "It is created when missing. (default: 'out')"
        ),
    )
    parser.add_argument(
        "-w",
        "--workers",
        type=positive_int,
        default=None,
        help=(
            "Number of worker threads used to evaluate time points and scan "
            "cells. Overrides the value in the config file."
        ),
    )


def get_logger() -> logging.Logger:
    """
    Configures and retrieves the root logger with a specified logging
    level and format.
    """
    logging.basicConfig(
        level=os.environ.get("RSW_LOG_LEVEL", "INFO").upper(),
        format="%(asctime)s - %(filename)s - %(levelname)s - %(message)s",
    )
    logger = logging.getLogger()
    return logger
