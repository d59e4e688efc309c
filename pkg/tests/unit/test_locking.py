"""Unit tests for locked-state existence and stability."""

import logging
from unittest.mock import patch

import numpy as np
import pytest

from photinus.errors import (
    AsymptoteError,
    ConfigurationError,
    InconsistencyError,
    NonExistenceError,
)
from photinus.locking.existence import jacobian, solve_existence
from photinus.locking.network import NetworkSpec, sort_eigenvalues, stability_report
from photinus.locking.symmetric import (
    balanced_cluster_analysis,
    splay_analysis,
    splay_asymptote,
    synchrony_analysis,
)
from photinus.locking.two_cluster import ClusterBalance, routh_stable, two_cluster_search
from photinus.reduction.interactions import InteractionSet
from photinus.spectral import FourierSeries
from tests.fixtures.interactions import (
    make_kuramoto_interactions,
    make_mfcgl_interactions,
    make_trig,
)
from tests.fixtures.networks import make_global_network, make_ring_network


def assert_same_spectrum(left: np.ndarray, right: np.ndarray, atol: float = 1e-7) -> None:
    """Compare two spectra after sorting."""
    np.testing.assert_allclose(sort_eigenvalues(left), sort_eigenvalues(right), atol=atol)


def prescribed_balance(mismatch, determinant):
    """Stand-in for cluster_balance with a given frequency mismatch and determinant in χ."""

    def balance(chi, *args) -> ClusterBalance:
        chi = np.atleast_1d(np.asarray(chi, dtype=float))
        zeros = np.zeros_like(chi)
        return ClusterBalance(
            chi=chi,
            psi_a=zeros,
            psi_b=zeros,
            frequency_a=mismatch(chi),
            frequency_b=zeros,
            determinant=determinant(chi),
        )

    return balance


@pytest.mark.unit
@pytest.mark.locking
class TestStabilityReport:
    """Test cases for spectrum classification."""

    def test_stable(self):
        """Test a spectrum with one zero mode and decaying rest."""
        report = stability_report(np.array([0.0, -1.0, -2 + 1j, -2 - 1j]))

        assert report.verdict == 'stable'
        assert report.critical_real_part == pytest.approx(-1.0)
        assert report.zero_mode == 0
        assert report.attracting

    def test_unstable(self):
        """Test a positive real part makes the state unstable."""
        report = stability_report(np.array([0.0, 0.5, -3.0]))

        assert report.verdict == 'unstable'
        assert report.critical_eigenvalue == pytest.approx(0.5)
        assert not report.attracting

    def test_extra_neutral_mode_is_marginal(self):
        """Test a second zero eigenvalue is neutral, not critical."""
        report = stability_report(np.array([0.0, 0.0, -1.0]))

        assert report.verdict == 'marginal'
        assert report.neutral_modes == 1
        assert report.critical_real_part == pytest.approx(-1.0)

    def test_missing_zero_mode(self):
        """Test a spectrum without a rotational mode is rejected."""
        with pytest.raises(InconsistencyError, match='zero mode'):
            stability_report(np.array([1.0, 2.0]))


@pytest.mark.unit
@pytest.mark.locking
class TestNetworkSpec:
    """Test cases for the network model."""

    def test_global_coupling(self):
        """Test all-to-all weights 1/N with unit row sums."""
        net = make_global_network(4, 0.2)

        assert net.size == 4
        assert net.is_global
        np.testing.assert_allclose(net.row_sums, 1.0)
        np.testing.assert_allclose(net.laplacian @ np.ones(4), 0.0, atol=1e-14)

    def test_ring_is_not_global(self):
        """Test a ring has constant row sums but is not all-to-all."""
        net = make_ring_network(5)

        assert not net.is_global
        np.testing.assert_allclose(net.row_sums, 1.0)

    def test_with_epsilon(self):
        """Test changing ε keeps the weights."""
        net = make_ring_network(4, 0.1).with_epsilon(0.3)

        assert net.epsilon == 0.3
        assert net.size == 4

    def test_from_matrix_file(self, tmp_path):
        """Test weights are read from a whitespace-separated file."""
        path = tmp_path / 'weights.txt'
        path.write_text('0 1 0\n0.5 0 0.5\n1 0 0\n')

        net = NetworkSpec.from_matrix_file(path, 0.1)

        assert net.size == 3
        np.testing.assert_allclose(net.row_sums, 1.0)


@pytest.mark.unit
@pytest.mark.locking
class TestSynchrony:
    """Test cases for the synchronous state."""

    def test_kuramoto_signs(self):
        """Test H1 = sin χ synchronises for ε > 0 only."""
        interactions = make_kuramoto_interactions(coupling=1.0, omega=2.0, kappa=-1.0)

        state, stable = synchrony_analysis(make_global_network(3, 0.1), interactions)
        _, unstable = synchrony_analysis(make_global_network(3, -0.1), interactions)

        assert state.frequency == pytest.approx(2.0)
        assert state.details['psi'] == 0.0
        assert stable.verdict == 'stable'
        assert unstable.verdict == 'unstable'

    @pytest.mark.parametrize('eps', [-0.2, 0.1, 0.4])
    def test_matches_generic_solver(self, eps):
        """Test the block spectrum equals the full Jacobian spectrum."""
        interactions = make_mfcgl_interactions()
        net = make_global_network(3, eps)

        state, report = synchrony_analysis(net, interactions)
        generic = solve_existence(np.zeros(3), net, interactions)

        assert state.details['psi'] == pytest.approx(generic.isostables[0], abs=1e-12)
        assert state.frequency == pytest.approx(generic.frequency)
        assert_same_spectrum(report.eigenvalues, jacobian(generic, net, interactions).eigenvalues)

    def test_non_global_network(self):
        """Test synchrony on a ring is assembled from the Laplacian."""
        interactions = make_mfcgl_interactions()
        net = make_ring_network(4, 0.2)

        _, report = synchrony_analysis(net, interactions)
        generic = solve_existence(np.zeros(4), net, interactions)

        assert report.blocks == {}
        assert_same_spectrum(report.eigenvalues, jacobian(generic, net, interactions).eigenvalues)

    def test_uneven_row_sums_with_vanishing_h(self):
        """Test Ψ = 0 and Ω = ω when H1(0) = H4(0) = 0."""
        weights = np.array([[0.0, 1.0, 0.0], [0.5, 0.0, 0.0], [1.0, 1.0, 0.0]])
        net = NetworkSpec(weights=weights, epsilon=0.1)

        state, _ = synchrony_analysis(net, make_mfcgl_interactions(c2=1.1))

        assert state.details['psi'] == 0.0
        assert state.frequency == 1.1

    def test_uneven_row_sums_without_locking(self):
        """Test synchrony does not exist with uneven row sums and H1(0) != 0."""
        zero = FourierSeries.zero()
        interactions = InteractionSet(
            series=(make_trig(1.0, 0.0, 1.0),) + (zero,) * 5, omega=1.0, kappa=-1.0
        )
        weights = np.array([[0.0, 1.0], [2.0, 0.0]])

        with pytest.raises(NonExistenceError) as exc_info:
            synchrony_analysis(NetworkSpec(weights=weights, epsilon=0.1), interactions)

        assert exc_info.value.spread > 0

    def test_limit_point(self):
        """Test Ψ diverges where κ + εc(H5(0) + H6(0)) = 0."""
        zero = FourierSeries.zero()
        interactions = InteractionSet(
            series=(zero, zero, zero, make_trig(1.0, 0.0, 0.0), make_trig(1.0, 0.0, 0.0), zero),
            omega=1.0,
            kappa=-1.0,
        )

        with pytest.raises(AsymptoteError) as exc_info:
            synchrony_analysis(make_global_network(2, 1.0), interactions)

        assert exc_info.value.parameter == 1.0


@pytest.mark.unit
@pytest.mark.locking
class TestSplay:
    """Test cases for splay states."""

    @pytest.mark.parametrize('n_nodes', [3, 5])
    def test_matches_generic_solver(self, n_nodes):
        """Test the circulant blocks reproduce the full Jacobian."""
        interactions = make_mfcgl_interactions()
        net = make_global_network(n_nodes, 0.15)

        state, report = splay_analysis(n_nodes, interactions, 0.15)
        generic = solve_existence(state.phases, net, interactions)

        assert state.tag == f'splay({n_nodes})'
        np.testing.assert_allclose(state.isostables, generic.isostables, atol=1e-12)
        assert state.frequency == pytest.approx(generic.frequency)
        assert_same_spectrum(report.eigenvalues, jacobian(generic, net, interactions).eigenvalues)

    def test_first_harmonic_finite_equals_large_n(self):
        """Test first-harmonic interactions give N-independent splay values for N >= 3."""
        interactions = make_mfcgl_interactions()

        finite, _ = splay_analysis(7, interactions, 0.2)
        limit, report = splay_analysis(None, interactions, 0.2)

        assert limit.tag == 'splay(inf)'
        assert limit.size == 0
        assert limit.details['psi'] == pytest.approx(finite.details['psi'])
        assert limit.frequency == pytest.approx(finite.frequency)
        assert set(report.blocks) == {'q=0', 'q=1', 'q=2'}

    def test_asymptote(self):
        """Test ε∞ = -Nκ/(β5 + β6) raises at the limit point."""
        interactions = make_mfcgl_interactions()
        eps_inf = splay_asymptote(None, interactions)

        assert eps_inf == pytest.approx(1.0)
        with pytest.raises(AsymptoteError):
            splay_analysis(None, interactions, eps_inf)

    def test_no_asymptote_for_phase_only(self):
        """Test phase-only interactions never diverge."""
        assert splay_asymptote(4, make_kuramoto_interactions()) is None


@pytest.mark.unit
@pytest.mark.locking
class TestBalancedClusters:
    """Test cases for M equal clusters."""

    def test_matches_generic_solver(self):
        """Test two clusters of two nodes against the full Jacobian."""
        interactions = make_mfcgl_interactions()
        net = make_global_network(4, 0.1)

        state, report = balanced_cluster_analysis(2, 2, interactions, 0.1)
        generic = solve_existence(state.phases, net, interactions)

        assert state.tag == 'balanced(2,2)'
        np.testing.assert_allclose(state.phases, [0, 0, np.pi, np.pi])
        assert state.frequency == pytest.approx(generic.frequency)
        assert_same_spectrum(report.eigenvalues, jacobian(generic, net, interactions).eigenvalues)
        assert len(report.blocks['intracluster']) == 2


@pytest.mark.unit
@pytest.mark.locking
class TestGenericExistence:
    """Test cases for the generic existence solver."""

    def test_unlocked_pattern(self):
        """Test an asymmetric pattern has no common frequency."""
        net = make_global_network(3, 0.2)

        with pytest.raises(NonExistenceError):
            solve_existence(np.array([0.0, 0.3, 1.1]), net, make_mfcgl_interactions())

    def test_residual_recorded(self):
        """Test solved states satisfy the locking equations."""
        net = make_global_network(2, 0.2)

        state = solve_existence(np.array([0.0, np.pi]), net, make_mfcgl_interactions(), tag='anti')

        assert state.tag == 'anti'
        assert state.residual < 1e-12


@pytest.mark.unit
@pytest.mark.locking
class TestTwoCluster:
    """Test cases for two-cluster states."""

    def test_routh(self):
        """Test the Routh conditions on the reduced cubic."""
        assert routh_stable(np.diag([0.0, -1.0, -2.0, -3.0]))
        assert not routh_stable(np.diag([0.0, 1.0, -2.0, -3.0]))

    def test_empty_cluster(self):
        """Test both clusters must be populated."""
        with pytest.raises(ConfigurationError):
            two_cluster_search(0, 3, make_mfcgl_interactions(), 0.1)

    def test_uncoupled(self):
        """Test ε = 0 yields no isolated roots."""
        search = two_cluster_search(2, 2, make_mfcgl_interactions(), 0.0)

        assert search.roots == []
        assert search.solutions == []

    def test_equal_clusters_find_antiphase(self):
        """Test χ = π solves equal clusters and blocks match the full Jacobian."""
        interactions = make_mfcgl_interactions()
        search = two_cluster_search(2, 2, interactions, 0.1)

        assert any(root == pytest.approx(np.pi, abs=1e-6) for root in search.roots)
        assert len(search.roots) == len(set(search.roots))
        net = make_global_network(4, 0.1)
        for state, report in search.solutions:
            assert state.residual < 1e-8
            assert_same_spectrum(
                report.eigenvalues, jacobian(state, net, interactions).eigenvalues, atol=1e-6
            )

    @pytest.mark.parametrize(
        ('mismatch', 'roots'),
        [
            (lambda chi: (chi - 1.8) / (chi - 2.0), [1.8]),
            (lambda chi: (chi - 1.8) * (chi - 2.2) / (chi - 2.0), [1.8, 2.2]),
        ],
    )
    def test_roots_beside_a_pole(self, mismatch, roots):
        """Test roots sharing a sample bracket with a pole are found on its either side."""
        balance = prescribed_balance(mismatch, lambda chi: chi - 2.0)

        with patch('photinus.locking.two_cluster.cluster_balance', balance):
            search = two_cluster_search(1, 1, make_kuramoto_interactions(), 0.1, samples=8)

        assert search.asymptotes == [pytest.approx(2.0, abs=1e-8)]
        assert sorted(search.roots) == [pytest.approx(root, abs=1e-8) for root in roots]
        assert len(search.solutions) == len(roots)

    def test_root_on_last_sample(self):
        """Test an exact zero at the final scan point χ = 2π(S-1)/S is a root."""
        last = 2 * np.pi * 7 / 8
        balance = prescribed_balance(lambda chi: chi - last, np.ones_like)

        with patch('photinus.locking.two_cluster.cluster_balance', balance):
            search = two_cluster_search(1, 1, make_kuramoto_interactions(), 0.1, samples=8)

        assert search.roots == [last]
        assert search.asymptotes == []

    def test_routh_agreement_is_recorded(self):
        """Test the report carries whether the Routh test matches the spectrum."""
        search = two_cluster_search(1, 1, make_mfcgl_interactions(), 0.2)

        _, report = min(search.solutions, key=lambda s: abs(s[0].details['chi'] - np.pi))

        assert report.verdict == 'stable'
        assert report.details['routh_stable'] == 1.0
        assert report.details['routh_agrees'] == 1.0

    def test_routh_disagreement_is_reported(self, caplog):
        """Test a Routh verdict contradicting the spectrum is flagged and logged."""
        with (
            patch('photinus.locking.two_cluster.routh_stable', return_value=False),
            caplog.at_level(logging.WARNING, logger='photinus.locking.two_cluster'),
        ):
            search = two_cluster_search(1, 1, make_mfcgl_interactions(), 0.2)

        _, report = min(search.solutions, key=lambda s: abs(s[0].details['chi'] - np.pi))

        assert report.details['routh_agrees'] == 0.0
        assert 'disagrees with the intercluster spectrum' in caplog.text
