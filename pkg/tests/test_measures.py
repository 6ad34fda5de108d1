import numpy as np
import pytest

from conftest import random_density, random_unitary
from triqent.channels import dephase, p_of_time
from triqent.measures import (
    concurrence,
    fidelity_to_pure,
    max_negativity,
    negativity,
    pair_concurrence,
    partition_negativities,
    purity,
    tri_negativity,
)
from triqent.qlinalg import SIGMA_YY, DimensionError, kron, kron_all, partial_trace
from triqent.states import basis_state, gb_state, ghz_state, noisy_mixture, projector, w_state


def wootters_oracle(rho):
    """Textbook route: general (non-Hermitian) eigenvalues of R."""
    r = rho @ SIGMA_YY @ rho.conj() @ SIGMA_YY
    lam = np.sort(np.sqrt(np.abs(np.linalg.eigvals(r).real)))[::-1]
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


class TestConcurrence:
    def test_product_state(self):
        assert concurrence(projector(basis_state("00"))) == 0.0

    def test_bell_state(self):
        bell = (basis_state("00") + basis_state("11")) / np.sqrt(2)
        assert concurrence(projector(bell)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("qubit", [1, 2, 3])
    def test_w_reduction(self, qubit):
        rho2 = partial_trace(projector(w_state()), qubit)
        assert concurrence(rho2) == pytest.approx(2 / 3, abs=1e-12)

    def test_against_textbook_route(self, rng):
        for rank in (1, 2, 4):
            for _ in range(10):
                rho = random_density(rng, 4, rank)
                assert concurrence(rho) == pytest.approx(wootters_oracle(rho), abs=1e-7)

    def test_x_state_formula(self):
        a, b, c, d, z = 0.4, 0.1, 0.2, 0.3, 0.12
        rho = np.diag([a, b, c, d]).astype(complex)
        rho[1, 2] = rho[2, 1] = z
        assert concurrence(rho) == pytest.approx(2 * max(0, z - np.sqrt(a * d)), abs=1e-12)

    def test_batch(self, rng):
        stack = np.stack([random_density(rng, 4) for _ in range(4)])
        np.testing.assert_allclose(concurrence(stack), [concurrence(r) for r in stack], atol=1e-14)

    def test_local_unitary_invariance(self, rng):
        bell = (basis_state("01") + basis_state("10")) / np.sqrt(2)
        rho = 0.8 * projector(bell) + 0.2 * np.eye(4) / 4
        base = concurrence(rho)
        for _ in range(10):
            u = kron(random_unitary(rng), random_unitary(rng))
            assert concurrence(u @ rho @ u.conj().T) == pytest.approx(base, abs=1e-10)

    def test_rejects_wrong_dimension(self):
        with pytest.raises(DimensionError):
            concurrence(np.eye(8) / 8)


class TestPairConcurrence:
    @pytest.mark.parametrize("pair", [(1, 2), (1, 3), (2, 3)])
    @pytest.mark.parametrize("q", [0.2, 0.7, 1.0])
    @pytest.mark.parametrize("kt", [0.0, 0.8])
    def test_ghz_always_zero(self, pair, q, kt):
        rho = dephase(noisy_mixture(ghz_state(), q), p_of_time(kt))
        assert pair_concurrence(rho, pair) == 0.0

    def test_gb_only_pair_12(self):
        rho = projector(gb_state())
        assert pair_concurrence(rho, (1, 2)) > 0.1
        assert pair_concurrence(rho, (1, 3)) == 0.0
        assert pair_concurrence(rho, (2, 3)) == 0.0

    def test_gb_threshold(self):
        assert pair_concurrence(noisy_mixture(gb_state(), 0.52), (1, 2)) == 0.0
        assert pair_concurrence(noisy_mixture(gb_state(), 0.54), (1, 2)) > 0.0

    def test_invalid_pair(self):
        with pytest.raises(ValueError):
            pair_concurrence(np.eye(8) / 8, (1, 1))


class TestNegativity:
    def test_maximally_mixed(self):
        for k in (1, 2, 3):
            assert negativity(np.eye(8) / 8, k) == 0.0

    @pytest.mark.parametrize("q", [0.0, 0.1, 0.2, 0.21, 0.5, 1.0])
    def test_ghz_mixture(self, q):
        assert negativity(noisy_mixture(ghz_state(), q), 1) == pytest.approx(
            max(0.0, -(1 - 5 * q) / 8), abs=1e-12
        )

    @pytest.mark.parametrize("q", [0.15, 0.4, 0.9, 1.0])
    @pytest.mark.parametrize("kt", [0.0, 0.5, 2.0])
    def test_w_mixture(self, q, kt):
        rho = dephase(noisy_mixture(w_state(), q), p_of_time(kt))
        expected = max(0.0, -(3 - q * (3 + 8 * np.sqrt(2) * np.exp(-kt))) / 24)
        for k in (1, 2, 3):
            assert negativity(rho, k) == pytest.approx(expected, abs=1e-12)

    def test_local_unitary_invariance(self, rng):
        rho = dephase(noisy_mixture(gb_state(), 0.9), 0.2)
        base = partition_negativities(rho)
        for _ in range(5):
            u = kron_all(*(random_unitary(rng) for _ in range(3)))
            np.testing.assert_allclose(partition_negativities(u @ rho @ u.conj().T), base, atol=1e-10)

    def test_invalid_qubit(self):
        with pytest.raises(ValueError):
            negativity(np.eye(8) / 8, 0)


class TestTriNegativity:
    @pytest.mark.parametrize("q", [0.1, 0.3, 0.8, 1.0])
    @pytest.mark.parametrize("kt", [0.0, 1.0])
    def test_ghz_equals_negativity(self, q, kt):
        rho = dephase(noisy_mixture(ghz_state(), q), p_of_time(kt))
        assert tri_negativity(rho) == pytest.approx(negativity(rho, 1), abs=1e-12)

    def test_gb_thresholds_differ(self):
        rho = noisy_mixture(gb_state(), 0.21)
        assert max_negativity(rho) > 0
        assert tri_negativity(rho) == 0.0
        assert tri_negativity(noisy_mixture(gb_state(), 0.23)) > 0

    def test_product_state(self):
        assert tri_negativity(projector(basis_state("010"))) == 0.0

    def test_bounded_by_max_cut(self, rng):
        for _ in range(10):
            rho = random_density(rng, 8, rank=2)
            negs = partition_negativities(rho)
            assert tri_negativity(rho) <= negs.max() + 1e-15
            if np.any(negs == 0):
                assert tri_negativity(rho) == 0.0


class TestPurityFidelity:
    def test_pure(self):
        assert purity(projector(ghz_state())) == pytest.approx(1, abs=1e-12)

    def test_mixed_qubit(self):
        assert purity(np.eye(2) / 2) == pytest.approx(0.5)

    def test_bounds(self, rng):
        rho = random_density(rng)
        assert 1 / 8 - 1e-12 <= purity(rho) <= 1 + 1e-12

    def test_fidelity(self):
        assert fidelity_to_pure(projector(w_state()), w_state()) == pytest.approx(1)
        assert fidelity_to_pure(np.eye(8) / 8, ghz_state()) == pytest.approx(1 / 8)

    def test_fidelity_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            fidelity_to_pure(np.eye(2) / 2, ghz_state())
