"""Tests for congruences, compatible quasiorders and their product factorization."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.catalog import boolean, catalog
from algebra.congruence import (
    Partition,
    Relation,
    all_compatible_quasiorders,
    all_congruences,
    congruence_generated,
    congruence_lattice,
    factorize_product_relation,
    is_compatible_quasiorder,
    is_congruence,
    partition_product,
    principal_congruence,
    quasiorder_lattice,
    relation_product,
)
from algebra.enumeration import enumerate_lattices
from algebra.errors import LatticeError, NotFactorizable, SizeLimit
from algebra.grid import make_grid
from algebra.lattice import (
    chain,
    direct_product,
    is_distributive,
    is_distributive_birkhoff,
    structural_flags,
)
from models.grid_shape import GridShape

partitions = st.lists(st.integers(0, 3), min_size=1, max_size=8).map(
    Partition.from_labels
)


class TestPartition:
    """Tests for the canonical partition encoding."""

    def test_from_labels_is_canonical(self):
        """Test that block ids follow the first occurrence of each label."""
        assert Partition.from_labels(["x", "y", "x", "z"]).block_of == (0, 1, 0, 2)

    def test_from_blocks(self):
        """Test that explicit blocks give the same canonical form."""
        P = Partition.from_blocks(5, [[1, 2], [3, 0]])
        assert P.blocks() == [[0, 3], [1, 2], [4]]
        assert P.nontrivial_blocks() == [[0, 3], [1, 2]]

    def test_discrete_and_total(self):
        """Test the finest and the coarsest partitions."""
        assert Partition.discrete(3).num_blocks == 3
        assert Partition.total(3).num_blocks == 1
        assert Partition.discrete(3).refines(Partition.total(3))
        assert not Partition.total(3).refines(Partition.discrete(3))

    def test_join_is_transitive_closure(self):
        """Test that {0,1} joined with {1,2} gives {0,1,2}."""
        P = Partition.from_blocks(4, [[0, 1]])
        Q = Partition.from_blocks(4, [[1, 2]])
        assert P.join(Q).blocks() == [[0, 1, 2], [3]]

    def test_str(self):
        """Test the compact text form."""
        assert str(Partition.from_blocks(3, [[0, 2]])) == "0,2|1"

    @given(partitions)
    def test_refines_itself(self, P):
        """Test that every partition refines itself."""
        assert P.refines(P)

    @given(partitions, st.data())
    def test_join_and_meet_are_bounds(self, P, data):
        """Test that the meet refines both partitions and both refine the join."""
        labels = data.draw(st.lists(st.integers(0, 3), min_size=P.n, max_size=P.n))
        Q = Partition.from_labels(labels)
        assert P.meet(Q).refines(P) and P.meet(Q).refines(Q)
        assert P.refines(P.join(Q)) and Q.refines(P.join(Q))


class TestCongruences:
    """Tests for congruence checks and enumeration."""

    def test_m3_is_simple(self, m3):
        """Test that M_3 has only the trivial congruences."""
        assert all_congruences(m3) == [Partition.discrete(5), Partition.total(5)]

    def test_n5_has_five(self, n5):
        """Test that N_5 has five congruences, Δ first and ∇ last."""
        congruences = all_congruences(n5)
        assert len(congruences) == 5
        assert congruences[0] == Partition.discrete(5)
        assert congruences[-1] == Partition.total(5)

    def test_n5_principal(self, n5):
        """Test that con(a, b) in N_5 collapses only a and b."""
        assert principal_congruence(n5, 1, 2).nontrivial_blocks() == [[1, 2]]

    def test_n5_principal_spreads(self, n5):
        """Test that collapsing 0 and c forces a, b and 1 together."""
        assert principal_congruence(n5, 0, 3).blocks() == [[0, 3], [1, 2, 4]]

    def test_generated_by_pairs(self, c3):
        """Test that the congruence generated by 0~1 and 1~2 is total."""
        assert congruence_generated(c3, [(0, 1), (1, 2)]) == Partition.total(3)

    @pytest.mark.parametrize("k,expected", [(1, 1), (2, 2), (3, 4), (5, 16)])
    def test_chain_counts(self, k, expected):
        """Test that C_k has 2^(k-1) congruences."""
        assert len(all_congruences(chain(k))) == expected

    def test_is_congruence(self, n5):
        """Test that a non-compatible partition is rejected."""
        assert is_congruence(n5, Partition.from_blocks(5, [[1, 2]]))
        assert not is_congruence(n5, Partition.from_blocks(5, [[0, 1]]))

    def test_is_congruence_size_mismatch(self, n5):
        """Test that a partition of the wrong size raises."""
        with pytest.raises(LatticeError):
            is_congruence(n5, Partition.discrete(4))

    def test_every_member_is_a_congruence(self, l12_lattice):
        """Test that every enumerated partition passes is_congruence."""
        for theta in all_congruences(l12_lattice):
            assert is_congruence(l12_lattice, theta)

    def test_size_limit(self, m3):
        """Test that the congruence cap is enforced."""
        with pytest.raises(SizeLimit) as exc_info:
            all_congruences(m3, cap=4)
        assert exc_info.value.setting == "RETRACTLAB_CONGRUENCE_MAX_N"

    def test_boolean_congruence_lattice(self):
        """Test that Con B_3 is the eight-element boolean lattice."""
        con_lattice, congruences = congruence_lattice(boolean(3))
        assert len(congruences) == 8
        assert con_lattice.n == 8
        assert is_distributive(con_lattice)
        assert congruences[con_lattice.bottom] == Partition.discrete(8)

    def test_m3_congruence_lattice_is_two_element_chain(self, m3):
        """Test that Con M_3 is a two-element chain."""
        con_lattice, _ = congruence_lattice(m3)
        assert con_lattice.is_chain
        assert con_lattice.n == 2


class TestQuasiorders:
    """Tests for compatible quasiorders."""

    def test_two_element_chain(self):
        """Test that C_2 has identity, order, reverse order and total relation."""
        relations = all_compatible_quasiorders(chain(2))
        assert len(relations) == 4
        assert relations[0] == Relation.identity(2)
        assert relations[-1] == Relation.total(2)
        assert Relation.from_order(chain(2)) in relations

    def test_square_has_sixteen(self, square):
        """Test that Quo(C_2 x C_2) has sixteen members."""
        assert len(all_compatible_quasiorders(square)) == 16

    def test_m3_quasiorders(self, m3):
        """Test that every quasiorder of M_3 is reflexive and compatible."""
        for R in all_compatible_quasiorders(m3):
            assert is_compatible_quasiorder(m3, R)
            assert all(R.contains(x, x) for x in range(5))

    def test_symmetric_members_are_congruences(self, n5):
        """Test that the symmetric quasiorders are exactly the congruences."""
        symmetric = {
            R.to_partition() for R in all_compatible_quasiorders(n5) if R.is_symmetric()
        }
        assert symmetric == set(all_congruences(n5))

    def test_order_is_compatible(self, n5):
        """Test that the lattice order itself is a compatible quasiorder."""
        assert is_compatible_quasiorder(n5, Relation.from_order(n5))

    def test_non_transitive_relation(self, c3):
        """Test that a relation missing a transitive pair is not compatible."""
        R = Relation.from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])
        assert not is_compatible_quasiorder(c3, R)

    def test_quasiorder_lattice(self):
        """Test that Quo C_2 is ordered with identity at the bottom."""
        quo, relations = quasiorder_lattice(chain(2))
        assert relations[quo.bottom] == Relation.identity(2)
        assert relations[quo.top] == Relation.total(2)

    @pytest.mark.parametrize("name", ["boolean(2)", "chain(4)", "m3", "n5", "grid(2,3)"])
    def test_quo_of_fixtures_is_distributive(self, name):
        """Test that Quo L ordered by inclusion is a distributive lattice."""
        quo, _ = quasiorder_lattice(catalog(name).lattice)
        assert structural_flags(quo).is_distributive

    @pytest.mark.parametrize("n", range(1, 7))
    def test_quo_of_small_lattices_is_distributive(self, n):
        """Test distributivity of Quo L for every lattice with n elements."""
        for L in enumerate_lattices(n):
            quo, _ = quasiorder_lattice(L)
            assert is_distributive_birkhoff(quo)

    def test_size_limit(self, l12_lattice):
        """Test that the quasiorder cap is enforced."""
        with pytest.raises(SizeLimit) as exc_info:
            all_compatible_quasiorders(l12_lattice)
        assert exc_info.value.setting == "RETRACTLAB_QUASIORDER_MAX_N"
        assert "Raise the cap with RETRACTLAB_QUASIORDER_MAX_N." in str(exc_info.value)
        assert "--max-n" not in str(exc_info.value)

    def test_bitstring(self):
        """Test the row-major bit string of the order of C_2."""
        assert Relation.from_order(chain(2)).to_bitstring() == "1101"


class TestFactorization:
    """Tests for the factorization of relations on products."""

    def test_square_quasiorders_factor(self, square):
        """Test that every quasiorder of C_2 x C_2 is a product of factor quasiorders."""
        factors = set(all_compatible_quasiorders(chain(2)))
        for R in all_compatible_quasiorders(square):
            r1, r2 = factorize_product_relation(square, R)
            assert r1 in factors and r2 in factors
            assert relation_product(r1, r2) == R

    @pytest.mark.parametrize(
        "first,second",
        [
            ("chain(2)", "chain(2)"),
            ("chain(2)", "chain(3)"),
            ("chain(3)", "chain(2)"),
            ("chain(2)", "chain(4)"),
            ("chain(2)", "boolean(2)"),
        ],
    )
    def test_quasiorders_of_products(self, first, second):
        """Test that Quo(L1 x L2) is the set of products of factor quasiorders."""
        L1, L2 = catalog(first).lattice, catalog(second).lattice
        expected = {
            relation_product(r1, r2)
            for r1 in all_compatible_quasiorders(L1)
            for r2 in all_compatible_quasiorders(L2)
        }
        assert set(all_compatible_quasiorders(direct_product(L1, L2))) == expected

    @pytest.mark.parametrize(
        "first,second", [("chain(2)", "chain(3)"), ("m3", "chain(2)"), ("n5", "chain(3)")]
    )
    def test_congruences_of_products(self, first, second):
        """Test that Con(L1 x L2) is the set of products of factor congruences."""
        L1, L2 = catalog(first).lattice, catalog(second).lattice
        product = direct_product(L1, L2)
        expected = {
            partition_product(p1, p2) for p1 in all_congruences(L1) for p2 in all_congruences(L2)
        }
        assert set(all_congruences(product)) == expected
        for theta in all_congruences(product):
            p1, p2 = factorize_product_relation(product, theta)
            assert partition_product(p1, p2) == theta

    def test_not_a_product(self, m3):
        """Test that a lattice without coordinates cannot be factorized."""
        with pytest.raises(NotFactorizable):
            factorize_product_relation(m3, Partition.discrete(5))

    def test_not_a_congruence(self):
        """Test that a non-congruence partition of a grid is rejected."""
        G = make_grid(GridShape(m=2, n=2))
        with pytest.raises(NotFactorizable):
            factorize_product_relation(G, Partition.from_blocks(4, [[0, 3]]))
