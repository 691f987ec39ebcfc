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
Module to manage application configuration settings based on command-line
inputs and the JSON run configuration. Utilizes `common.utils` for argument
parsing.
"""

import json
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from common.entities import Command, RunConfig
from common.exceptions import ConfigValidationError
from common.utils import parse_common_args

COMMAND_HELP = {
    Command.DYNAMICS: "Evolve the rotor/spin-wave observables on a time grid.",
    Command.SCAN: "Scan the minimal squeezing over alpha and N in 1d.",
    Command.TOS: "Extract the tower-of-states moment of inertia by ED.",
    Command.ORACLE_COMPARE: "Compare rotor/spin-wave dynamics against ED.",
}


def parse_cli_args(argv: Optional[list[str]] = None) -> Namespace:
    """
    Parses the sub-command and the common arguments.
    """
    parser = ArgumentParser(
        description="CLI for the rotor/spin-wave quench simulator"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        subparser = subparsers.add_parser(
            command.value, help=COMMAND_HELP[command]
        )
        parse_common_args(subparser)
    return parser.parse_args(argv)


def _format_error(error: dict) -> str:
    location = ".".join(str(part) for part in error["loc"]) or "config"
    return f"{location}: {error['msg']}"


def load_run_config(path: str | Path) -> RunConfig:
    """
    Reads and validates a JSON run configuration. Every problem found is
    reported in a single ConfigValidationError.
    """
    try:
        with Path(path).open(encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise ConfigValidationError(f"Cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigValidationError(f"Config {path} is not JSON: {e}") from e

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        problems = "\n".join(_format_error(error) for error in e.errors())
        raise ConfigValidationError(
            f"Invalid config {path}:\n{problems}"
        ) from e


def build_application_config(
    command: Command,
    run_config: RunConfig,
    output_dir: str | Path = "out",
    workers: Optional[int] = None,
    config_path: Optional[str] = None,
) -> dict:
    """
    Combines a validated run config with the command-line settings and
    checks the combination for the command.
    """
    command = Command(command)
    if workers is not None:
        run_config = run_config.model_copy(update={"workers": workers})
    problems = run_config.check_command(command)
    if problems:
        raise ConfigValidationError(
            f"Config not valid for '{command}':\n" + "\n".join(problems)
        )
    return {
        "command": command,
        "config_path": config_path,
        "output_dir": Path(output_dir),
        "workers": run_config.workers,
        "run_config": run_config,
    }


def get_application_config(argv: Optional[list[str]] = None) -> dict:
    """
    Combines common and command-specific arguments into a unified
    configuration.
    """
    args = parse_cli_args(argv)
    run_config = load_run_config(args.config)
    return build_application_config(
        Command(args.command),
        run_config,
        output_dir=args.out,
        workers=args.workers,
        config_path=args.config,
    )
