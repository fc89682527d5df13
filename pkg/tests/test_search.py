"""Tests for the constraint search over small lattices."""

import pytest

from algebra.enumeration import enumerate_lattices
from algebra.lattice import chain, lattice_from_covers
from algebra.search import CONSTRAINTS, evaluate, search_l8


class TestEvaluate:
    """Tests for the per-lattice evaluation."""

    def test_n5(self, n5):
        """Test that con(a, b) is the only single-block principal congruence of N_5."""
        report = evaluate(n5)
        assert report.pair == (1, 2)
        assert report.constraints["unique_block"]
        assert not report.constraints["con_boolean_32"]
        assert not report.constraints["rcon_is_con_minus_theta"]
        assert report.congruence_count == 5
        assert report.retraction_congruence_count == 5
        assert not report.full_match

    def test_every_constraint_reported(self, m3):
        """Test that the report names all constraints."""
        assert set(evaluate(m3).constraints) == set(CONSTRAINTS)

    def test_single_element(self):
        """Test that a lattice without covers gets an empty report."""
        report = evaluate(chain(1))
        assert report.pair is None
        assert report.score == 0


class TestSearch:
    """Tests for search_l8 on a given list of lattices."""

    def test_ranking(self, m3, n5, c3):
        """Test that partial matches are sorted by score and cut at top."""
        report = search_l8([m3, n5, c3], top=2)
        assert report.lattices_scanned == 3
        assert report.full_matches == []
        assert len(report.ranked_partial_matches) == 2
        scores = [r.score for r in report.ranked_partial_matches]
        assert scores == sorted(scores, reverse=True)

    def test_empty_input(self):
        """Test that nothing scanned gives an empty report."""
        report = search_l8([])
        assert report.lattices_scanned == 0
        assert report.ranked_partial_matches == []


L8_COVERS = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7)]


class TestEightElementSearch:
    """Tests for the search over every eight-element lattice."""

    @pytest.fixture(scope="class")
    def report(self):
        return search_l8(enumerate_lattices(8))

    def test_scans_every_lattice(self, report):
        """Test that all 222 lattices of size 8 are evaluated."""
        assert report.lattices_scanned == 222

    def test_finds_full_match(self, report):
        """Test that some lattice satisfies every constraint."""
        assert len(report.full_matches) >= 1
        for match in report.full_matches:
            assert match.full_match
            assert match.congruence_count == 32
            assert match.retraction_congruence_count == 31

    def test_stacked_squares_match(self):
        """Test the two squares joined by the cover 3 < 4."""
        report = evaluate(lattice_from_covers(8, L8_COVERS))
        assert report.full_match
        assert report.pair == (3, 4)
        assert report.congruence_count == 32
        assert report.retraction_congruence_count == 31
