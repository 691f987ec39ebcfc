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
This module defines custom exceptions for output files and provides a
decorator translating file-system errors into them.
"""

from functools import wraps


class OutputSchemaNotFoundError(Exception):
    """
    Exception raised when no column schema is defined for an output table.
    """


class OutputWriteError(Exception):
    """
    Exception raised when an output file cannot be written.
    """


def io_exception_shield(target):
    """
    Decorator converting OSError into OutputWriteError.
    """

    @wraps(target)
    def inner(*args, **kwargs):
        try:
            return target(*args, **kwargs)
        except OSError as e:
            raise OutputWriteError(f"Error: {e}") from e

    return inner
