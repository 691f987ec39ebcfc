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
This module defines custom exception classes for handling specific error
conditions raised while building models, evolving states and validating
run configurations.
"""

from functools import wraps

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence


class ConfigValidationError(Exception):
    """
    Exception raised when a run configuration is rejected. The message
    aggregates every invalid field.
    """


class LatticeConstructionError(Exception):
    """
    Exception raised when a lattice or its couplings cannot be built.
    """


class TranslationInvarianceError(Exception):
    """
    Exception raised when a coupling matrix is not symmetric, has a
    non-zero diagonal or is not translation invariant.
    """


class NumericValidityError(Exception):
    """
    Exception raised when a computed quantity violates a physical bound.
    """


class SizeCapExceededError(Exception):
    """
    Exception raised when exact diagonalization is requested beyond the
    supported number of spins.
    """


class KrylovConvergenceError(Exception):
    """
    Exception raised when the Krylov propagator does not reach the requested
    tolerance within the maximal subspace dimension.
    """

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


def numeric_exception_shield(target):
    """
    Decorator translating low-level linear algebra failures into
    NumericValidityError.
    """

    @wraps(target)
    def inner(*args, **kwargs):
        try:
            return target(*args, **kwargs)
        except np.linalg.LinAlgError as e:
            raise NumericValidityError(f"Linear algebra error: {e}") from e
        except FloatingPointError as e:
            raise NumericValidityError(f"Floating point error: {e}") from e
        except ArpackNoConvergence as e:
            raise NumericValidityError(f"ARPACK error: {e}") from e

    return inner
