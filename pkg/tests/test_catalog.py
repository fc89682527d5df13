"""Tests for the fixture catalog, the L_12 checks and boolean-minus."""

import pytest

from algebra.catalog import (
    FIXTURE_NAMES,
    boolean,
    boolean_minus_element_check,
    catalog,
    is_transversal,
    l12_retracts,
    verify_l12,
)
from algebra.congruence import principal_congruence
from algebra.errors import InvalidShape, UnknownName
from algebra.lattice import chain, is_modular
from utils.bits import popcount


class TestCatalog:
    """Tests for catalog lookups."""

    @pytest.mark.parametrize(
        "name,size",
        [
            ("chain(4)", 4),
            ("boolean(3)", 8),
            ("m3", 5),
            ("n5", 5),
            ("glued_squares_k7", 7),
            ("grid(2,3)", 6),
            ("l12", 12),
        ],
    )
    def test_sizes(self, name, size):
        """Test the size of every fixture."""
        assert catalog(name).lattice.n == size

    def test_names_are_normalized(self):
        """Test that case and spaces in arguments are ignored."""
        entry = catalog("Grid( 2, 3 )")
        assert entry.name == "grid(2,3)"
        assert entry.shape is not None
        assert entry.shape.m == 2

    def test_chain_entry(self):
        """Test that chain(k) is the k-element chain."""
        assert catalog("chain(3)").lattice == chain(3)

    @pytest.mark.parametrize("name", ["m4", "chain", "grid(2)", "boolean(x)", "m3(2)"])
    def test_unknown(self, name):
        """Test that unknown names and wrong arities raise UnknownName."""
        with pytest.raises(UnknownName):
            catalog(name)

    def test_fixture_names_listed(self):
        """Test that the list of names covers the parametrized families."""
        assert "l12" in FIXTURE_NAMES
        assert "grid(m,n)" in FIXTURE_NAMES

    def test_boolean_order(self):
        """Test that element i of B_k is the subset with bitmask i."""
        B = boolean(3)
        assert B.le(1, 3)
        assert not B.le(1, 2)
        assert B.join(1, 2) == 3
        assert B.meet(6, 5) == 4

    def test_boolean_rejects_negative(self):
        """Test that B_k needs k >= 0."""
        with pytest.raises(InvalidShape):
            boolean(-1)


class TestL12:
    """Tests for the twelve-element modular lattice."""

    def test_all_checks_pass(self):
        """Test that every recomputed property of L_12 holds."""
        checks = verify_l12()
        failed = [name for name, ok in checks.items() if not ok]
        assert failed == []

    def test_modular(self, l12_lattice):
        """Test that L_12 is modular."""
        assert is_modular(l12_lattice)

    def test_retracts_share_congruence(self, l12_lattice):
        """Test that S1 and S2 are both transversals of con(b, q)."""
        L = l12_lattice
        s1, s2 = l12_retracts(L)
        theta = principal_congruence(L, L.element("b"), L.element("q"))
        assert is_transversal(L, theta, s1)
        assert is_transversal(L, theta, s2)
        assert popcount(s1) == popcount(s2) == theta.num_blocks

    def test_interval_is_not_transversal(self, l12_lattice):
        """Test that [0, a] alone is not a transversal of con(b, q)."""
        L = l12_lattice
        theta = principal_congruence(L, L.element("b"), L.element("q"))
        assert not is_transversal(L, theta, L.mask(["0", "a"]))


class TestBooleanMinus:
    """Tests for removing an atom or a coatom from B_k."""

    def test_square_minus_coatom(self):
        """Test that B_2 without a coatom is a three-element chain."""
        verdict = boolean_minus_element_check(2, "coatom")
        assert verdict.is_lattice
        assert verdict.is_distributive
        assert verdict.size == 3
        assert verdict.removed == 2

    @pytest.mark.parametrize("k", [3, 4, 5])
    @pytest.mark.parametrize("which", ["atom", "coatom"])
    def test_larger_k_not_distributive(self, k, which):
        """Test that removing an atom or a coatom breaks distributivity for k >= 3."""
        verdict = boolean_minus_element_check(k, which)
        assert verdict.is_lattice
        assert verdict.is_distributive is False
        assert verdict.size == 2**k - 1

    def test_explicit_element(self):
        """Test choosing which atom goes."""
        assert boolean_minus_element_check(3, "atom", element=4).removed == 4

    @pytest.mark.parametrize("k", [1, 11])
    def test_k_out_of_range(self, k):
        """Test the accepted range of k."""
        with pytest.raises(InvalidShape):
            boolean_minus_element_check(k)

    def test_wrong_level(self):
        """Test that a coatom cannot be removed as an atom."""
        with pytest.raises(InvalidShape):
            boolean_minus_element_check(3, "atom", element=6)
