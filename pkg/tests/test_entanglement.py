"""Negativity: dense partial-transpose route vs the Schmidt fast path."""

import math

import numpy as np
import pytest

from sgatlas import (
    BasisState,
    SizeCapError,
    SuperpositionSpec,
    density_matrix,
    ghz_state,
    negativity,
    negativity_report,
    partial_trace,
    partial_transpose,
    schmidt_negativity,
)


def B(text):
    return BasisState.from_string(text)


def bell():
    return SuperpositionSpec.equal_weight(B("ee"), B("gg"))


class TestPartialTranspose:
    def test_empty_subset_identity(self):
        rho = density_matrix(bell())
        np.testing.assert_array_equal(partial_transpose(rho, ()), rho)

    def test_bell_eigenvalues(self):
        # 4x4 eigensolve oracle: the transposed Bell state has spectrum
        # {1/2, 1/2, 1/2, -1/2}
        pt = partial_transpose(density_matrix(bell()), (1,))
        lam = np.sort(np.linalg.eigvalsh(pt))
        np.testing.assert_allclose(lam, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)

    def test_involution_and_hermiticity(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            psi = rng.normal(size=8) + 1j * rng.normal(size=8)
            psi /= np.linalg.norm(psi)
            rho = np.outer(psi, psi.conj())
            for subset in ((1,), (2,), (1, 3), (1, 2, 3)):
                pt = partial_transpose(rho, subset)
                assert np.max(np.abs(pt - pt.conj().T)) < 1e-12
                np.testing.assert_allclose(
                    partial_transpose(pt, subset), rho, atol=1e-14
                )

    def test_product_state_stays_psd(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=4) + 1j * rng.normal(size=4)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        rho = np.kron(np.outer(a, a.conj()), np.outer(b, b.conj()))
        lam = np.linalg.eigvalsh(partial_transpose(rho, (1,)))
        assert lam.min() > -1e-12

    def test_invalid_subset(self):
        with pytest.raises(ValueError):
            partial_transpose(density_matrix(bell()), (3,))


class TestDenseNegativity:
    def test_bell_half(self):
        assert negativity(density_matrix(bell()), (1,)) == pytest.approx(0.5, abs=1e-12)

    def test_ghz3_any_cut(self):
        rho = density_matrix(ghz_state(3))
        for site in (1, 2, 3):
            assert negativity(rho, (site,)) == pytest.approx(0.5, abs=1e-12)

    def test_basis_state_zero(self):
        rho = density_matrix(SuperpositionSpec.single(B("egg")))
        for site in (1, 2, 3):
            assert negativity(rho, (site,)) == pytest.approx(0.0, abs=1e-12)

    def test_non_hermitian_rejected(self):
        rho = density_matrix(bell())
        rho[0, 3] += 1e-3
        with pytest.raises(np.linalg.LinAlgError):
            negativity(rho, (1,))

    def test_dense_cap(self):
        spec = SuperpositionSpec.equal_weight(
            BasisState(11, 0), BasisState(11, (1 << 11) - 1)
        )
        with pytest.raises(SizeCapError):
            density_matrix(spec)


class TestSchmidtNegativity:
    def test_cluster_cut(self):
        spec = SuperpositionSpec.equal_weight(B("eeeg"), B("ggeg"))
        assert schmidt_negativity(spec, (1,)) == pytest.approx(0.5, abs=1e-12)

    def test_agreeing_restriction_zero(self):
        spec = SuperpositionSpec.equal_weight(B("eeg"), B("geg"))
        assert schmidt_negativity(spec, (2,)) == 0.0

    def test_uneven_weights(self):
        # all-differ pair: |w1| * |w2| = 0.48, dense oracle agrees
        spec = SuperpositionSpec(B("eg"), B("ge"), 0.8, 0.6)
        assert schmidt_negativity(spec, (1,)) == pytest.approx(0.48, abs=1e-12)
        assert negativity(density_matrix(spec), (1,)) == pytest.approx(0.48, abs=1e-10)

    def test_fast_path_equivalence_exhaustive(self):
        # all pairs at n <= 4, all single-site cuts, dense eigensolve oracle
        for n in range(1, 5):
            for i in range(1 << n):
                for j in range(i, 1 << n):
                    spec = SuperpositionSpec.equal_weight(
                        BasisState(n, i), BasisState(n, j)
                    )
                    rho = density_matrix(spec)
                    for site in range(1, n + 1):
                        fast = schmidt_negativity(spec, (site,))
                        dense = negativity(rho, (site,))
                        assert fast == pytest.approx(dense, abs=1e-10)

    def test_skew_maximized_at_equal_weights(self):
        spec_pairs = [(B("eg"), B("ge")), (B("eeg"), B("gge"))]
        for b1, b2 in spec_pairs:
            values = [
                schmidt_negativity(SuperpositionSpec.weighted(b1, b2, p), (1,))
                for p in np.linspace(0.0, 1.0, 21)
            ]
            assert max(values) == pytest.approx(0.5, abs=1e-12)
            assert np.argmax(values) == 10  # p = 1/2


class TestNegativityReport:
    def test_full_ghz_scores_one(self):
        for n in range(2, 7):
            rep = negativity_report(ghz_state(n))
            assert rep.avg_normalized == pytest.approx(1.0, abs=1e-12)

    def test_single_state_zero(self):
        rep = negativity_report(SuperpositionSpec.single(B("egge")))
        assert rep.avg_normalized == 0.0

    def test_cc_eg_half_and_law_crosscheck(self):
        from sgatlas import observables

        spec = SuperpositionSpec.equal_weight(B("eeeg"), B("ggeg"))
        rep = negativity_report(spec)
        assert rep.avg_normalized == pytest.approx(0.5, abs=1e-12)
        q = observables(spec).q_ea
        assert q == pytest.approx(0.25 - 0.25 * rep.avg_normalized, abs=1e-12)

    def test_closed_form_cluster_ratio(self):
        # equal weights: normalized average is k/n for k >= 2, else 0
        for n in range(1, 7):
            for i in range(1 << n):
                for j in range(i, 1 << n):
                    spec = SuperpositionSpec.equal_weight(
                        BasisState(n, i), BasisState(n, j)
                    )
                    k = spec.k
                    expected = k / n if k >= 2 else 0.0
                    rep = negativity_report(spec)
                    assert rep.avg_normalized == pytest.approx(expected, abs=1e-12)
                    assert all(v >= 0.0 for v in rep.per_cut.values())


class TestGhzState:
    def test_full_cluster(self):
        spec = ghz_state(3)
        assert {str(spec.b1), str(spec.b2)} == {"eee", "ggg"}
        assert abs(spec.w1) == pytest.approx(1 / math.sqrt(2))

    def test_embedded_cluster(self):
        spec = ghz_state(2, total=4, placement=(1, 2), fixed={3: "e", 4: "g"})
        assert {str(spec.b1), str(spec.b2)} == {"eeeg", "ggeg"}

    def test_lone_cat_unentangled(self):
        spec = ghz_state(1, total=3, placement=(2,), fixed={1: "e", 3: "g"})
        rep = negativity_report(spec)
        assert all(v == 0.0 for v in rep.per_cut.values())

    def test_cluster_cuts_score_half(self):
        # every cut through a cluster of size >= 2 gives exactly 1/2
        for size in (2, 3, 4):
            fixed = {s: "e" for s in range(size + 1, 6)}
            spec = ghz_state(size, total=5, placement=tuple(range(1, size + 1)),
                             fixed=fixed)
            rep = negativity_report(spec)
            for site in range(1, 6):
                expected = 0.5 if site <= size else 0.0
                assert rep.per_cut[site] == pytest.approx(expected, abs=1e-12)

    def test_inconsistent_placement(self):
        with pytest.raises(ValueError):
            ghz_state(2, total=4, placement=(1, 2), fixed={3: "e"})
        with pytest.raises(ValueError):
            ghz_state(2, total=3, placement=(1, 2, 3))


class TestPartialTrace:
    def test_drop_agreeing_site(self):
        # dense contraction oracle: tracing site 3 of ((eeg)+(geg))/sqrt2
        # leaves the two-site state ((ee)+(ge))/sqrt2
        rho = density_matrix(SuperpositionSpec.equal_weight(B("eeg"), B("geg")))
        reduced = partial_trace(rho, 3)
        expected = density_matrix(SuperpositionSpec.equal_weight(B("ee"), B("ge")))
        np.testing.assert_allclose(reduced, expected, atol=1e-12)

    def test_bell_reduction_maximally_mixed(self):
        for site in (1, 2):
            reduced = partial_trace(density_matrix(bell()), site)
            np.testing.assert_allclose(reduced, np.eye(2) / 2, atol=1e-12)

    def test_trace_preserved_randomized(self):
        rng = np.random.default_rng(42)
        for _ in range(10_000):
            n = int(rng.integers(2, 7))
            i = int(rng.integers(0, 1 << n))
            j = int(rng.integers(0, 1 << n))
            p = float(rng.uniform())
            rho = density_matrix(
                SuperpositionSpec.weighted(BasisState(n, i), BasisState(n, j), p)
            )
            site = int(rng.integers(1, n + 1))
            reduced = partial_trace(rho, site)
            assert np.trace(reduced).real == pytest.approx(1.0, abs=1e-12)
            assert np.max(np.abs(reduced - reduced.conj().T)) < 1e-12

    def test_site_out_of_range(self):
        with pytest.raises(ValueError):
            partial_trace(density_matrix(bell()), 3)
