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
Rotor state and moment of inertia tests
"""

import math

import numpy as np
import pytest

from common.entities import (
    InertiaConfig,
    InertiaMode,
    LatticeModel,
    LatticeSpec,
    ToSReference,
)
from common.entropy import renyi2_rotor
from common.lattice import build_model
from common.rotor import (
    bare_inertia,
    css_x_state,
    evolve,
    ladder_elements,
    moments,
    reduced_density,
    resolve_inertia,
    rotor_purity,
    tos_inertia,
)


def twisted_moments(j_tot: float, inertia: float, time: float) -> tuple:
    """
    One-axis-twisting moments of the x-polarized state.
    """
    angle = time / inertia
    mean_kx = j_tot * math.cos(angle / 2.0) ** (2 * j_tot - 1)
    decay = math.cos(angle) ** (2 * j_tot - 2)
    ky_squared = j_tot / 2.0 + j_tot * (2 * j_tot - 1) / 4.0 * (1.0 - decay)
    kx_squared = j_tot / 2.0 + j_tot * (2 * j_tot - 1) / 4.0 * (1.0 + decay)
    return mean_kx, kx_squared - mean_kx**2, ky_squared


class TestRotorState:
    """
    Rotor evolution and moment tests
    """

    def test_two_spin_coherent_state(self) -> None:
        """
        Test the amplitudes of the two-spin coherent state.
        """
        state = css_x_state(2)
        assert state.j_tot == 1.0
        assert state.m_values.tolist() == [-1.0, 0.0, 1.0]
        assert np.allclose(state.amplitudes, [0.5, 1.0 / math.sqrt(2), 0.5])

    @pytest.mark.parametrize("n_sites, spin", [(1, 0.5), (40, 0.5), (7, 1.0)])
    def test_coherent_state_moments(self, n_sites: int, spin: float) -> None:
        """
        Test that the coherent state is normalized, fully polarized and
        has isotropic transverse variance N S / 2.
        """
        state = css_x_state(n_sites, spin)
        rotor = moments(state)
        j_tot = n_sites * spin
        assert state.norm == pytest.approx(1.0, abs=1e-12)
        assert rotor.mean_kx == pytest.approx(j_tot, rel=1e-12)
        assert rotor.var_kx == pytest.approx(0.0, abs=1e-9)
        assert np.allclose(rotor.cov_yz, 0.5 * j_tot * np.eye(2), atol=1e-9)

    def test_large_rotor_is_finite(self) -> None:
        """
        Test that tens of thousands of spins stay normalized.
        """
        state = evolve(css_x_state(40000), 5000.0, 3.0)
        assert np.all(np.isfinite(state.amplitudes))
        assert state.norm == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("n_sites", [16, 64, 1000, 40000])
    def test_coherent_variance_is_not_negative(self, n_sites: int) -> None:
        """
        Test that Var(K^x) of the coherent state does not come out
        negative through cancellation at large N.
        """
        rotor = moments(css_x_state(n_sites))
        assert 0.0 <= rotor.var_kx <= 1e-9 * (n_sites / 2.0) ** 2

    def test_ladder_elements(self) -> None:
        """
        Test <M+1|K^+|M> for J = 1.
        """
        assert np.allclose(ladder_elements(1.0), [math.sqrt(2), math.sqrt(2)])

    def test_two_spin_polarization(self) -> None:
        """
        Test that <K^x> = cos(t / 2I) for two spins.
        """
        initial = css_x_state(2)
        for time in np.linspace(0.0, 10.0, 21):
            rotor = moments(evolve(initial, 1.3, time))
            assert rotor.mean_kx == pytest.approx(
                math.cos(time / 2.6), abs=1e-12
            )

    @pytest.mark.parametrize("time", [0.05, 0.2, 0.7, 1.5, 2.9])
    def test_one_axis_twisting(self, time: float) -> None:
        """
        Test the moments against the one-axis-twisting closed forms.
        """
        rotor = moments(evolve(css_x_state(40), 1.0, time))
        mean_kx, var_kx, ky_squared = twisted_moments(20.0, 1.0, time)
        assert rotor.mean_kx == pytest.approx(mean_kx, abs=1e-9)
        assert rotor.var_kx == pytest.approx(var_kx, abs=1e-8)
        assert rotor.ky_squared == pytest.approx(ky_squared, abs=1e-8)
        assert rotor.kz_squared == pytest.approx(10.0, abs=1e-9)
        assert rotor.mean_ky == pytest.approx(0.0, abs=1e-9)

    def test_evolution_accumulates_time(self) -> None:
        """
        Test that evolving twice equals evolving once for the total
        duration.
        """
        initial = css_x_state(12)
        twice = evolve(evolve(initial, 2.0, 0.4), 2.0, 0.9)
        once = evolve(initial, 2.0, 1.3)
        assert twice.time == pytest.approx(1.3)
        assert np.allclose(twice.amplitudes, once.amplitudes, atol=1e-12)

    def test_frozen_rotor(self) -> None:
        """
        Test that an infinite inertia leaves the state unchanged.
        """
        initial = css_x_state(10)
        state = evolve(initial, math.inf, 4.0)
        assert state.time == 4.0
        assert np.array_equal(state.amplitudes, initial.amplitudes)

    def test_cat_state(self) -> None:
        """
        Test that the rotor forms a two-component cat at t = pi I.
        """
        inertia = 2.5
        state = evolve(css_x_state(60), inertia, math.pi * inertia)
        rotor = moments(state)
        assert rotor.mean_kx == pytest.approx(0.0, abs=1e-9)
        assert rotor.var_kx == pytest.approx(900.0, rel=1e-9)
        assert renyi2_rotor(state, 30) == pytest.approx(math.log(2.0))

    def test_transverse_plateau(self) -> None:
        """
        Test that <(K^y)^2> reaches (N S)^2 / 2 + N S / 4 at t = pi I / 2.
        """
        state = evolve(css_x_state(60), 1.0, math.pi / 2.0)
        assert moments(state).ky_squared == pytest.approx(
            450.0 + 7.5, rel=1e-9
        )


class TestRotorEntanglement:
    """
    Rotor reduced density and Rényi-2 tests
    """

    def test_coherent_state_is_pure(self) -> None:
        """
        Test that the unevolved rotor is a product state.
        """
        state = css_x_state(20)
        assert rotor_purity(state, 10) == pytest.approx(1.0, abs=1e-12)
        assert renyi2_rotor(state, 10) == pytest.approx(0.0, abs=1e-12)

    def test_reduced_density(self) -> None:
        """
        Test that the reduced density is a Hermitian unit-trace matrix of
        dimension 2 N_A S + 1.
        """
        state = evolve(css_x_state(16), 1.0, 0.8)
        rho = reduced_density(state, 6)
        assert rho.shape == (7, 7)
        assert np.allclose(rho, rho.conj().T)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.linalg.eigvalsh(rho) > -1e-12)

    def test_complementary_subsystems(self) -> None:
        """
        Test that both sides of a bipartition have the same purity.
        """
        state = evolve(css_x_state(18), 1.0, 1.1)
        assert rotor_purity(state, 5) == pytest.approx(
            rotor_purity(state, 13), abs=1e-12
        )

    def test_improper_bipartition(self) -> None:
        """
        Test that an empty subsystem is rejected.
        """
        with pytest.raises(ValueError):
            reduced_density(css_x_state(4), 4)

    def test_entropy_bound(self) -> None:
        """
        Test that S_2 never exceeds log(N_A + 1).
        """
        initial = css_x_state(40)
        for time in np.linspace(0.1, 3.1, 16):
            entropy = renyi2_rotor(evolve(initial, 1.0, time), 20)
            assert 0.0 <= entropy <= math.log(21.0) + 1e-12

    @pytest.mark.parametrize("heads", [2, 3, 4])
    def test_cat_entropy_dips(self, heads: int) -> None:
        """
        Test that the entropy dips at t = 2 pi I / q where the rotor forms
        a q-component cat.
        """
        inertia = 1.0
        initial = css_x_state(100)
        center = 2.0 * math.pi * inertia / heads
        grid = center * np.linspace(0.95, 1.05, 401)
        entropies = [
            renyi2_rotor(evolve(initial, inertia, t), 50) for t in grid
        ]
        best = grid[int(np.argmin(entropies))]
        assert best == pytest.approx(center, rel=0.02)
        assert min(entropies) == pytest.approx(math.log(heads), abs=0.05)


class TestInertia:
    """
    Moment of inertia tests
    """

    def test_infinite_range(self) -> None:
        """
        Test that all-to-all couplings give I = 1 / J for every size.
        """
        for size in (4, 9, 30):
            model = build_model(
                LatticeSpec(dimension=1, linear_size=size, alpha=0)
            )
            assert bare_inertia(model) == pytest.approx(1.0)

    def test_isotropic_point(self) -> None:
        """
        Test that Delta = 1 freezes the rotor.
        """
        model = build_model(
            LatticeSpec(dimension=1, linear_size=6, anisotropy=1.0)
        )
        inertia = resolve_inertia(model, InertiaConfig())
        assert math.isinf(inertia.i_bare)
        assert inertia.frozen

    def test_easy_axis(self) -> None:
        """
        Test that Delta > 1 gives a negative inertia.
        """
        model = build_model(
            LatticeSpec(dimension=1, linear_size=6, alpha=0, anisotropy=2.0)
        )
        assert bare_inertia(model) == pytest.approx(-1.0)

    def test_tos_scaling(self, dipolar_model: LatticeModel) -> None:
        """
        Test the scaling of a reference inertia to other lattices.
        """
        reference = ToSReference(
            n_ref=16, j0_ref=dipolar_model.j0, i_tos_ref=2.42
        )
        assert tos_inertia(dipolar_model, reference) == pytest.approx(2.42)
        assert tos_inertia(dipolar_model) == bare_inertia(dipolar_model)

        larger = build_model(LatticeSpec(dimension=2, linear_size=6))
        expected = 35.0 / 15.0 * dipolar_model.j0 / larger.j0 * 2.42
        assert tos_inertia(larger, reference) == pytest.approx(expected)

    def test_resolve_modes(self, dipolar_model: LatticeModel) -> None:
        """
        Test that every inertia mode resolves to an InertiaSet.
        """
        bare = resolve_inertia(dipolar_model, InertiaConfig())
        assert bare.i_tos == bare.i_bare

        reference = ToSReference(n_ref=16, j0_ref=6.0, i_tos_ref=2.4)
        scaled = resolve_inertia(
            dipolar_model,
            InertiaConfig(mode=InertiaMode.TOS_SCALED, reference=reference),
        )
        assert scaled.reference == reference
        assert scaled.i_tos == pytest.approx(6.0 / dipolar_model.j0 * 2.4)

        model = build_model(LatticeSpec(dimension=1, linear_size=8, alpha=0))
        exact = resolve_inertia(
            model, InertiaConfig(mode=InertiaMode.TOS_EXACT)
        )
        assert exact.i_tos == pytest.approx(1.0, rel=1e-9)
        assert exact.reference.n_ref == 8
