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
Observable assembly and dynamics runner tests
"""

import math

import numpy as np
import pytest

from common.entities import (
    InertiaConfig,
    InertiaSet,
    LatticeModel,
    LatticeSpec,
    ObservableSelection,
    RotorMoments,
)
from common.lattice import build_model
from common.observables import (
    NEGATIVE_VARIANCE_FLAG,
    SW_POPULATION_FLAG,
    DynamicsRunner,
    mean_jx,
    min_transverse_variance,
    rotor_saturation_time,
    run_dynamics,
    squeezing,
    var_jx,
)
from common.rotor import bare_inertia, resolve_inertia


def rotor_moments(mean_kx: float, var_kx: float = 0.0) -> RotorMoments:
    """
    Builds rotor moments with a fixed transverse covariance.
    """
    return RotorMoments(
        mean_kx=mean_kx,
        var_kx=var_kx,
        mean_ky=0.0,
        mean_kz=0.0,
        ky_squared=2.0,
        kz_squared=2.0,
        cov_yz=np.array([[2.0, 1.0], [1.0, 2.0]]),
    )


class TestObservableAssembly:
    """
    Sector combination tests
    """

    def test_mean_jx(self) -> None:
        """
        Test that spin waves deplete the polarization.
        """
        value = mean_jx(rotor_moments(7.5), 0.25)
        assert (value.rotor, value.sw, value.total) == (7.5, -0.25, 7.25)

    def test_var_jx(self) -> None:
        """
        Test the spin-wave correction of Var(J^x).
        """
        value = var_jx(rotor_moments(6.0, 3.0), 0.5, 16, 0.5)
        assert value.sw == pytest.approx(-2.0 * 2.0 * 0.5 - 0.25)
        assert value.total == pytest.approx(3.0 - 2.25)

    def test_negative_variance_is_kept(self) -> None:
        """
        Test that a negative Var(J^x) is returned unchanged.
        """
        value = var_jx(rotor_moments(0.0, 0.1), 2.0, 16, 0.5)
        assert value.total < 0.0

    def test_min_transverse_variance(self) -> None:
        """
        Test the smallest eigenvalue of the transverse covariance.
        """
        assert min_transverse_variance(rotor_moments(8.0)) == pytest.approx(
            1.0
        )

    def test_squeezing(self) -> None:
        """
        Test xi^2 = 2 N S min Var / <J^x>^2 and the depolarized sentinel,
        which also covers <J^x> < 0 from spin-wave depletion.
        """
        assert squeezing(rotor_moments(8.0), 0.0, 16) == pytest.approx(
            16.0 / 64.0
        )
        assert math.isinf(squeezing(rotor_moments(2.0), 2.0, 16))
        assert math.isinf(squeezing(rotor_moments(2.0), 9.0, 16))
        assert math.isinf(squeezing(rotor_moments(-8.0), 0.0, 16))


class TestDynamicsRunner:
    """
    Dynamics runner tests on the 4 x 4 dipolar lattice
    """

    @pytest.fixture(scope="class")
    def inertia(self, dipolar_model: LatticeModel) -> InertiaSet:
        """
        Provides the bare inertia of the lattice.
        """
        return resolve_inertia(dipolar_model, InertiaConfig())

    def test_initial_record(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test the observables of the unevolved state.
        """
        runner = DynamicsRunner(
            dipolar_model,
            inertia,
            ObservableSelection(correlations=True),
        )
        record = runner.record_at(0.0)
        assert record.mean_jx.total == pytest.approx(8.0)
        assert record.var_jx.total == pytest.approx(0.0, abs=1e-9)
        assert record.xi2 == pytest.approx(1.0)
        assert record.var_jz == pytest.approx(4.0)
        assert record.mean_jz == pytest.approx(0.0, abs=1e-12)
        assert record.renyi2.total == pytest.approx(0.0, abs=1e-10)
        assert record.n0_density == pytest.approx(0.0, abs=1e-12)
        assert record.nfm_density == 0.0
        assert record.flags == ()
        assert record.cyy.total[0] == pytest.approx(0.25)
        assert np.allclose(record.cyy.total[1:], 0.0, atol=1e-12)
        assert np.allclose(record.czz.total[1:], 0.0, atol=1e-12)

    @pytest.mark.parametrize(
        "spec",
        [
            LatticeSpec(dimension=2, linear_size=8),
            LatticeSpec(dimension=1, linear_size=64),
            LatticeSpec(dimension=1, linear_size=256, alpha=1.5),
        ],
    )
    def test_initial_record_is_not_flagged(self, spec: LatticeSpec) -> None:
        """
        Test that the coherent state at t = 0 is a clean record on larger
        lattices.
        """
        model = build_model(spec)
        inertia = resolve_inertia(model, InertiaConfig())
        selection = ObservableSelection(entropy=False, sw_entropy=False)
        record = DynamicsRunner(model, inertia, selection).record_at(0.0)
        assert record.flags == ()
        assert not record.extrapolated
        assert record.var_jx.total >= 0.0

    def test_conserved_jz(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test that the correlation sum rule keeps Var(J^z) = N / 4.
        """
        records = run_dynamics(
            dipolar_model, inertia, np.linspace(0.0, 3.0, 7)
        )
        for record in records:
            assert record.var_jz == pytest.approx(4.0, abs=1e-9)

    def test_correlation_map(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test that the correlation maps split into rotor and spin-wave
        parts and sum to the rotor moments.
        """
        record = DynamicsRunner(
            dipolar_model, inertia, ObservableSelection(correlations=True)
        ).record_at(1.2)
        for corr in (record.cyy, record.czz):
            assert corr.total.shape == (16,)
            assert np.allclose(corr.total, corr.rotor + corr.sw)
            assert np.allclose(corr.rotor, corr.rotor[0])
        n_sites = dipolar_model.n_sites
        for corr in (record.cyy, record.czz):
            assert n_sites * np.sum(corr.total) == pytest.approx(
                n_sites**2 * corr.rotor[0], rel=1e-10
            )

    def test_maps_are_optional(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test that correlation maps and entropies can be switched off.
        """
        selection = ObservableSelection(entropy=False, sw_entropy=False)
        record = DynamicsRunner(
            dipolar_model, inertia, selection
        ).record_at(0.5)
        assert record.cyy is None
        assert record.czz is None
        assert math.isnan(record.renyi2.total)

    def test_parallel_matches_serial(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test that worker threads return the same records in time order.
        """
        times = np.linspace(0.0, 2.0, 9)
        serial = run_dynamics(dipolar_model, inertia, times)
        parallel = run_dynamics(dipolar_model, inertia, times, workers=3)
        assert [r.time for r in parallel] == list(times)
        for first, second in zip(serial, parallel):
            assert first.xi2 == second.xi2
            assert first.var_jx == second.var_jx
            assert first.renyi2 == second.renyi2

    def test_empty_grid(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test that an empty time grid yields no records.
        """
        assert run_dynamics(dipolar_model, inertia, []) == []

    def test_validity_flag(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test that records beyond the spin-wave threshold are flagged.
        """
        records = run_dynamics(
            dipolar_model, inertia, [0.0, 1.0], validity_threshold=1e-9
        )
        assert records[0].flags == ()
        assert SW_POPULATION_FLAG in records[1].flags
        assert NEGATIVE_VARIANCE_FLAG not in records[1].flags
        assert records[1].extrapolated

    def test_squeezing_develops(
        self, dipolar_model: LatticeModel, inertia: InertiaSet
    ) -> None:
        """
        Test that the quench squeezes the state at short times.
        """
        records = run_dynamics(dipolar_model, inertia, [0.3, 0.6])
        assert all(record.xi2 < 1.0 for record in records)


class TestLongRangeLimit:
    """
    Infinite-range and frozen-rotor limits
    """

    def test_infinite_range_has_no_spin_waves(self) -> None:
        """
        Test that all-to-all couplings barely populate spin waves and
        produce the cat state at t = pi I.
        """
        model = build_model(LatticeSpec(dimension=1, linear_size=20, alpha=0))
        inertia = resolve_inertia(model, InertiaConfig())
        records = run_dynamics(
            model, inertia, [0.5, 1.5, math.pi * inertia.i_tos]
        )
        assert all(record.nfm_density < 1e-3 for record in records)
        assert records[-1].var_jx.rotor == pytest.approx(100.0, rel=1e-9)

    def test_transverse_plateau(self) -> None:
        """
        Test that Var(J^x) of the all-to-all chain averages to N^2 / 8
        between the squeezing regime and the cat state.
        """
        model = build_model(LatticeSpec(dimension=1, linear_size=60, alpha=0))
        inertia = resolve_inertia(model, InertiaConfig())
        times = np.linspace(0.2, 0.8, 241) * math.pi * inertia.i_tos
        selection = ObservableSelection(entropy=False, sw_entropy=False)
        records = run_dynamics(model, inertia, times, selection)
        plateau = np.mean([record.var_jx.total for record in records])
        assert plateau == pytest.approx(60**2 / 8.0, rel=0.02)

    def test_reversed_polarization_is_depolarized(self) -> None:
        """
        Test that the state polarized along -x at t = 2 pi I carries the
        depolarized sentinel instead of a squeezing value.
        """
        model = build_model(LatticeSpec(dimension=1, linear_size=20, alpha=0))
        inertia = resolve_inertia(model, InertiaConfig())
        selection = ObservableSelection(entropy=False, sw_entropy=False)
        record = DynamicsRunner(model, inertia, selection).record_at(
            2.0 * math.pi * inertia.i_tos
        )
        assert record.mean_jx.total < -9.0
        assert math.isinf(record.xi2)

    def test_frozen_rotor(self) -> None:
        """
        Test that Delta = 1 keeps the state polarized.
        """
        model = build_model(
            LatticeSpec(dimension=2, linear_size=4, anisotropy=1.0)
        )
        inertia = resolve_inertia(model, InertiaConfig())
        for record in run_dynamics(model, inertia, [0.0, 2.0, 10.0]):
            assert record.mean_jx.total == pytest.approx(8.0)
            assert record.xi2 == pytest.approx(1.0)
            assert record.renyi2.total == pytest.approx(0.0, abs=1e-10)
        assert math.isnan(rotor_saturation_time(model, inertia))


class TestRotorSaturation:
    """
    Rotor saturation time tests
    """

    def test_linear_in_size(self) -> None:
        """
        Test that the saturation time grows linearly with L for the 2d
        dipolar lattice, t_R = c L with c close to 0.3.
        """
        sizes = np.array([10, 20, 30])
        times = []
        for size in sizes:
            model = build_model(LatticeSpec(dimension=2, linear_size=size))
            inertia = InertiaSet(bare_inertia(model), bare_inertia(model))
            times.append(rotor_saturation_time(model, inertia))
        times = np.array(times)
        slope = float(np.sum(times * sizes) / np.sum(sizes**2))
        assert np.all(np.diff(times) > 0.0)
        assert slope == pytest.approx(0.3, abs=0.06)
