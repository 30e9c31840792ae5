import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_spectrum, spectra
from oracles import kostka_table, schur_by_monomials

from spectrum_scope import (
    DegenerateSpectrumError,
    DiagonalState,
    ResourceLimitError,
    SchurTable,
    Spectrum,
    YoungFrame,
    brute_force_frame_probability,
    character_bounds_check,
    character_from_weights,
    dim_symmetric_irrep,
    dim_unitary_irrep,
    enumerate_frames,
    schur_log,
    schur_log_bialternant,
    sn_character,
    weight_multiplicities,
)
from spectrum_scope.logspace import NEG_INF


class TestSchurLog:
    def test_one_box_is_the_trace(self):
        for values in [(0.5, 0.5), (0.6, 0.3, 0.1), (1.0,)]:
            frame = YoungFrame((1,) + (0,) * (len(values) - 1))
            assert schur_log(frame, Spectrum(values)) == pytest.approx(0.0, abs=1e-14)

    def test_single_column_is_the_product(self):
        value = schur_log(YoungFrame((1, 1)), Spectrum((0.6, 0.4)))
        assert value == pytest.approx(math.log(0.24), abs=1e-13)

    def test_uniform_adjoint(self):
        value = schur_log(YoungFrame((2, 1, 0)), Spectrum((1 / 3, 1 / 3, 1 / 3)))
        assert value == pytest.approx(math.log(8 / 27), abs=1e-13)

    def test_matches_monomial_sum_oracle(self):
        rng = np.random.default_rng(5)
        for d in (1, 2, 3):
            for _ in range(3):
                spectrum = random_spectrum(rng, d)
                for n in range(0, 7):
                    table = SchurTable(spectrum, n)
                    for frame in enumerate_frames(d, n):
                        expected = schur_by_monomials(frame.rows, spectrum.values)
                        got = math.exp(table.log_value(frame.rows))
                        assert got == pytest.approx(expected, abs=1e-13)

    def test_zero_eigenvalues_reduce_dimension(self):
        padded = Spectrum((0.7, 0.3, 0.0))
        assert schur_log(YoungFrame((1, 1, 1)), padded) == NEG_INF
        reduced = schur_log(YoungFrame((2, 1)), Spectrum((0.7, 0.3)))
        assert schur_log(YoungFrame((2, 1, 0)), padded) == reduced

    def test_shared_table_matches_per_call_values(self):
        spectrum = Spectrum((0.5, 0.3, 0.2))
        table = SchurTable(spectrum, 9)
        for n in (3, 6, 9):
            for frame in enumerate_frames(3, n):
                assert schur_log(frame, spectrum) == table.log_value(frame.rows)

    def test_table_box_budget_enforced(self):
        table = SchurTable(Spectrum((0.5, 0.5)), 4)
        with pytest.raises(ValueError):
            table.log_value((5, 0))

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            schur_log(YoungFrame((2, 1)), Spectrum((0.5, 0.3, 0.2)), table=SchurTable(Spectrum((0.5, 0.5)), 4))


class TestBialternant:
    def test_two_row_symmetric_square(self):
        value = schur_log_bialternant(YoungFrame((2, 0)), Spectrum((0.7, 0.3)))
        assert value == pytest.approx(math.log(0.79), abs=1e-12)

    def test_single_column(self):
        value = schur_log_bialternant(YoungFrame((1, 1)), Spectrum((0.7, 0.3)))
        assert value == pytest.approx(math.log(0.21), abs=1e-12)

    def test_cross_evaluator_agreement_spot(self):
        frame = YoungFrame((2, 1, 0))
        spectrum = Spectrum((0.6, 0.3, 0.1))
        a = schur_log_bialternant(frame, spectrum)
        b = schur_log(frame, spectrum)
        assert abs(a - b) <= 1e-10 * max(1.0, abs(b))

    def test_cross_evaluator_agreement_random(self):
        # 100 random well-separated spectra, shapes up to 40 boxes
        rng = np.random.default_rng(17)
        checked = 0
        while checked < 100:
            d = int(rng.integers(2, 5))
            spectrum = random_spectrum(rng, d)
            gaps = [a - b for a, b in zip(spectrum.values, spectrum.values[1:])]
            if min(gaps) < 0.02 or spectrum.values[-1] < 0.02:
                continue
            n = int(rng.integers(1, 41))
            rows = sorted((int(rng.integers(0, n + 1)) for _ in range(d)), reverse=True)
            total = sum(rows)
            if total == 0:
                continue
            frame = YoungFrame(tuple(rows))
            a = schur_log_bialternant(frame, spectrum)
            b = schur_log(frame, spectrum)
            assert abs(a - b) <= 1e-9 * max(1.0, abs(b))
            checked += 1

    def test_refuses_degenerate_spectrum(self):
        with pytest.raises(DegenerateSpectrumError):
            schur_log_bialternant(YoungFrame((2, 0)), Spectrum((0.5, 0.5)))

    def test_refuses_zero_eigenvalue(self):
        with pytest.raises(DegenerateSpectrumError):
            schur_log_bialternant(YoungFrame((2, 0)), Spectrum((1.0, 0.0)))


class TestWeights:
    def test_adjoint_table(self):
        table = weight_multiplicities(YoungFrame((2, 1, 0)))
        assert table.multiplicity((1, 1, 1)) == 2
        for weight in [(2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 0, 2), (0, 2, 1), (0, 1, 2)]:
            assert table.multiplicity(weight) == 1
        assert table.total() == 8

    def test_single_row_weights_are_multisets(self):
        n = 6
        table = weight_multiplicities(YoungFrame((n, 0)))
        for k in range(n + 1):
            assert table.multiplicity((n - k, k)) == 1
        assert table.total() == n + 1

    def test_highest_weight_multiplicity_one(self):
        for d in (2, 3):
            for n in range(1, 8):
                for frame in enumerate_frames(d, n):
                    table = weight_multiplicities(frame)
                    assert table.multiplicity(frame.rows) == 1

    def test_total_is_unitary_dimension(self):
        for d in (2, 3, 4):
            for n in range(0, 7):
                for frame in enumerate_frames(d, n):
                    table = weight_multiplicities(frame)
                    assert table.total() == dim_unitary_irrep(frame, d)

    def test_matches_filling_oracle(self):
        for d in (2, 3):
            for n in range(0, 7):
                for frame in enumerate_frames(d, n):
                    expected = kostka_table(frame.rows, d)
                    got = weight_multiplicities(frame)
                    assert dict(expected) == dict(got.entries)

    def test_dominance_of_highest_weight(self):
        for d in (2, 3):
            for n in range(1, 9):
                for frame in enumerate_frames(d, n):
                    for weight in weight_multiplicities(frame).entries:
                        partial = 0
                        for j in range(d):
                            partial += weight[j] - frame.rows[j]
                            assert partial <= 0

    def test_size_cap(self):
        with pytest.raises(ResourceLimitError):
            weight_multiplicities(YoungFrame((13, 0)))


class TestCharacterFromWeights:
    def test_single_weight(self):
        state = DiagonalState.from_spectrum(Spectrum((0.5, 0.5)))
        table = weight_multiplicities(YoungFrame((1, 1)))
        assert character_from_weights(table, state) == pytest.approx(math.log(0.25), abs=1e-13)

    def test_uniform_adjoint(self):
        state = DiagonalState.from_spectrum(Spectrum((1 / 3, 1 / 3, 1 / 3)))
        table = weight_multiplicities(YoungFrame((2, 1, 0)))
        assert character_from_weights(table, state) == pytest.approx(math.log(8 / 27), abs=1e-13)

    def test_two_row_square(self):
        state = DiagonalState.from_spectrum(Spectrum((0.7, 0.3)))
        table = weight_multiplicities(YoungFrame((2, 0)))
        assert character_from_weights(table, state) == pytest.approx(math.log(0.79), abs=1e-13)

    def test_equals_branching_evaluator(self):
        rng = np.random.default_rng(23)
        for d in (2, 3):
            for _ in range(4):
                spectrum = random_spectrum(rng, d)
                state = DiagonalState.from_spectrum(spectrum)
                table_cache = SchurTable(spectrum, 8)
                for n in range(1, 9):
                    for frame in enumerate_frames(d, n):
                        expansion = character_from_weights(weight_multiplicities(frame), state)
                        direct = table_cache.log_value(frame.rows)
                        assert abs(expansion - direct) <= 1e-10


class TestCharacterBounds:
    def test_pure_state_single_row_is_tight(self):
        state = DiagonalState.from_spectrum(Spectrum((1.0, 0.0, 0.0)))
        result = character_bounds_check(YoungFrame((6, 0, 0)), state)
        assert result.holds
        assert result.lower == pytest.approx(0.0, abs=1e-14)
        assert result.value == pytest.approx(0.0, abs=1e-14)

    def test_one_dimensional_block_pins_all_three(self):
        state = DiagonalState.from_spectrum(Spectrum((0.5, 0.5)))
        result = character_bounds_check(YoungFrame((1, 1)), state)
        assert result.holds
        assert result.lower == pytest.approx(math.log(0.25), abs=1e-13)
        assert result.value == pytest.approx(math.log(0.25), abs=1e-13)
        assert result.upper == pytest.approx(math.log(0.25), abs=1e-13)

    def test_generic_frame(self):
        state = DiagonalState.from_spectrum(Spectrum((0.6, 0.3, 0.1)))
        assert character_bounds_check(YoungFrame((2, 1, 0)), state).holds

    def test_random_sweep(self):
        rng = np.random.default_rng(29)
        for d in (2, 3):
            for _ in range(20):
                state = DiagonalState.from_spectrum(random_spectrum(rng, d))
                for n in range(1, 21):
                    for frame in enumerate_frames(d, n):
                        assert character_bounds_check(frame, state).holds


class TestSymmetricGroupCharacters:
    def test_trivial_representation(self):
        for cycle_type in [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]:
            assert sn_character(YoungFrame((4,)), cycle_type) == 1

    def test_alternating_representation(self):
        for cycle_type in [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]:
            parity = (-1) ** sum(c - 1 for c in cycle_type)
            assert sn_character(YoungFrame((1, 1, 1, 1)), cycle_type) == parity

    def test_dimension_at_identity(self):
        for d in (2, 3, 4):
            for n in range(1, 8):
                for frame in enumerate_frames(d, n):
                    identity = (1,) * n
                    assert sn_character(frame, identity) == dim_symmetric_irrep(frame)

    def test_standard_representation_of_s3(self):
        frame = YoungFrame((2, 1))
        assert sn_character(frame, (1, 1, 1)) == 2
        assert sn_character(frame, (2, 1)) == 0
        assert sn_character(frame, (3,)) == -1

    def test_character_orthogonality(self):
        # rows of the character table are orthogonal under the class weighting
        n = 6
        frames = list(enumerate_frames(n, n))
        cycle_types = [tuple(p for p in f.rows if p) for f in enumerate_frames(n, n)]
        sizes = {}
        for cycles in cycle_types:
            z = 1
            for part in set(cycles):
                reps = cycles.count(part)
                z *= part**reps * math.factorial(reps)
            sizes[cycles] = math.factorial(n) // z
        for a in frames:
            for b in frames:
                inner = sum(
                    sizes[c] * sn_character(a, c) * sn_character(b, c) for c in cycle_types
                )
                assert inner == (math.factorial(n) if a.rows == b.rows else 0)

    def test_size_cap(self):
        with pytest.raises(ResourceLimitError):
            sn_character(YoungFrame((9,)), (9,))

    def test_rejects_mismatched_cycle_type(self):
        with pytest.raises(ValueError):
            sn_character(YoungFrame((3,)), (2,))


class TestBruteForceProbability:
    def test_balanced_two_copies(self):
        spectrum = Spectrum((0.5, 0.5))
        assert brute_force_frame_probability(YoungFrame((1, 1)), spectrum) == pytest.approx(0.25, abs=1e-14)
        assert brute_force_frame_probability(YoungFrame((2, 0)), spectrum) == pytest.approx(0.75, abs=1e-14)

    def test_single_level_is_certain(self):
        for n in range(1, 8):
            assert brute_force_frame_probability(YoungFrame((n,)), Spectrum((1.0,))) == pytest.approx(1.0, abs=1e-14)

    def test_matches_character_formula(self):
        rng = np.random.default_rng(31)
        for d in (2, 3):
            for _ in range(3):
                spectrum = random_spectrum(rng, d)
                table = SchurTable(spectrum, 7)
                for n in range(0, 8):
                    for frame in enumerate_frames(d, n):
                        expected = math.exp(table.log_value(frame.rows)) * dim_symmetric_irrep(frame)
                        got = brute_force_frame_probability(frame, spectrum)
                        assert abs(got - expected) <= 1e-10

    def test_size_cap(self):
        with pytest.raises(ResourceLimitError):
            brute_force_frame_probability(YoungFrame((9, 0)), Spectrum((0.5, 0.5)))


class TestCharacterNormalization:
    def test_blocks_sum_to_one(self):
        # sum over frames of schur * tableau count telescopes to (sum r)^N = 1
        rng = np.random.default_rng(37)
        for d in (2, 3, 4):
            for _ in range(3):
                spectrum = random_spectrum(rng, d)
                table = SchurTable(spectrum, 60)
                for n in (1, 13, 37, 60):
                    total = math.fsum(
                        math.exp(table.log_value(f.rows)) * dim_symmetric_irrep(f)
                        for f in enumerate_frames(d, n)
                    )
                    assert abs(total - 1.0) <= 1e-12


@given(spectra(d_min=2, d_max=3))
@settings(max_examples=25, deadline=None)
def test_first_row_sum_is_one_boxed(spectrum):
    # one box: the whole trace sits in the single-box frame
    frame = YoungFrame((1,) + (0,) * (spectrum.d - 1))
    assert schur_log(frame, spectrum) == pytest.approx(0.0, abs=1e-12)


@given(spectra(d_min=2, d_max=3), st.integers(1, 10))
@settings(max_examples=25, deadline=None)
def test_top_frame_value_is_power_of_leading_eigenvalue(spectrum, boxes):
    frame = YoungFrame((boxes,) + (0,) * (spectrum.d - 1))
    table = SchurTable(spectrum, boxes)
    # the single-row frame sums all monomials, so it is at least r_1^N
    assert table.log_value(frame.rows) >= boxes * math.log(spectrum.values[0]) - 1e-12
