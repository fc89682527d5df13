"""Tests for retractions, retracts, retraction congruences and Ret."""

import pytest

from algebra.catalog import boolean, catalog
from algebra.enumeration import enumerate_lattices
from algebra.congruence import (
    Partition,
    all_congruences,
    partition_product,
    principal_congruence,
)
from algebra.errors import (
    LatticeError,
    NotACongruence,
    NotARetract,
    NotARetraction,
    SizeLimit,
)
from algebra.grid import classify_subset, make_grid
from algebra.lattice import chain, direct_product
from algebra.retraction import (
    EndoMap,
    RetPoset,
    all_retractions,
    is_homomorphism,
    is_retraction,
    is_retraction_congruence,
    product_retraction,
    rcon,
    ret_poset,
    retraction_from_transversal,
    retracts,
    split_retraction,
)
from models.grid_shape import GridShape
from utils.bits import full_mask, mask_of

CATALOG_NAMES = ["chain(4)", "boolean(3)", "m3", "n5", "glued_squares_k7", "grid(2,3)", "l12"]


class TestEndoMap:
    """Tests for EndoMap and the map predicates."""

    def test_identity_and_constant(self):
        """Test the image, fixed points and kernel of simple maps."""
        f = EndoMap.constant(3, 1)
        assert f.image() == 0b010
        assert f.fixed_points() == 0b010
        assert f.kernel() == Partition.total(3)
        assert EndoMap.identity(3).kernel() == Partition.discrete(3)
        assert f.to_json() == [1, 1, 1]

    def test_constant_is_retraction(self, m3):
        """Test that constant maps are retractions."""
        assert is_retraction(m3, EndoMap.constant(5, 2))

    def test_swap_is_not_idempotent(self, m3):
        """Test that swapping two atoms is a homomorphism but not a retraction."""
        swap = EndoMap((0, 2, 1, 3, 4))
        assert is_homomorphism(m3, swap)
        assert not is_retraction(m3, swap)

    def test_atom_to_top_is_not_homomorphism(self, c3):
        """Test that a non-monotone map is rejected."""
        assert not is_homomorphism(c3, EndoMap((2, 0, 2)))

    def test_size_mismatch(self, c3):
        """Test that a map of the wrong length raises."""
        with pytest.raises(LatticeError):
            is_homomorphism(c3, EndoMap.identity(2))


class TestAllRetractions:
    """Tests for the retraction enumeration."""

    def test_two_element_chain(self):
        """Test that C_2 has the identity and the two constants."""
        images = [f.image_of for f in all_retractions(chain(2))]
        assert images == [(0, 0), (0, 1), (1, 1)]

    def test_m3(self, m3):
        """Test that M_3 only has the constants and the identity."""
        assert len(all_retractions(m3)) == 6

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_image_is_fixed_point_set(self, name):
        """Test that every retraction's image is its set of fixed points."""
        L = catalog(name).lattice
        for f in all_retractions(L):
            assert is_retraction(L, f)
            assert f.image() == f.fixed_points()

    def test_size_limit(self, l12_lattice):
        """Test that the brute-force cap is enforced."""
        with pytest.raises(SizeLimit):
            all_retractions(l12_lattice, cap=11)


class TestRetracts:
    """Tests for the retract enumeration in both modes."""

    @pytest.mark.parametrize("k", range(1, 6))
    def test_chain_rule(self, k):
        """Test that every nonempty subset of a chain is a retract."""
        found = retracts(chain(k))
        assert len(found) == 2**k - 1
        assert len(ret_poset(chain(k))) == 2**k

    def test_square(self, square):
        """Test that C_2 x C_2 has ten retracts."""
        assert len(retracts(square)) == 10

    def test_n5(self, n5):
        """Test the fifteen retracts of N_5."""
        found = retracts(n5)
        assert len(found) == 15
        assert mask_of([0, 1, 3, 4]) in found
        assert mask_of([0, 2, 3, 4]) in found
        assert mask_of([1, 3]) not in found

    def test_m3(self, m3):
        """Test that M_3 only has singletons and itself."""
        assert retracts(m3, "transversal") == [1, 2, 4, 8, 16, full_mask(5)]

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_modes_agree(self, name):
        """Test that images of retractions and congruence transversals coincide."""
        L = catalog(name).lattice
        assert retracts(L, "bruteforce") == retracts(L, "transversal")

    @pytest.mark.parametrize("n", range(1, 8))
    def test_modes_agree_on_small_lattices(self, n):
        """Test both retract modes on every lattice with n elements."""
        for L in enumerate_lattices(n):
            assert retracts(L, "bruteforce") == retracts(L, "transversal")

    def test_unknown_mode(self, m3):
        """Test that an unknown mode is a ValueError."""
        with pytest.raises(ValueError):
            retracts(m3, "guess")  # type: ignore[arg-type]

    def test_diagonal_is_not_factorizable(self, square):
        """Test that the diagonal of the square is a retract but not a product set."""
        diagonal = mask_of([0, 3])
        assert diagonal in retracts(square)
        assert not classify_subset(GridShape(m=2, n=2), diagonal).straight


class TestRetractionCongruences:
    """Tests for transversals and kernels of retractions."""

    def test_witness_is_transversal(self, n5):
        """Test that the witness meets every block once and gives a retraction."""
        theta = principal_congruence(n5, 0, 3)
        ok, witness = is_retraction_congruence(n5, theta)
        assert ok
        f = retraction_from_transversal(n5, theta, witness)
        assert f.kernel() == theta
        assert f.image() == witness

    def test_not_a_congruence(self, n5):
        """Test that a non-congruence partition raises NotACongruence."""
        with pytest.raises(NotACongruence):
            is_retraction_congruence(n5, Partition.from_blocks(5, [[0, 1]]))

    def test_transversal_misses_block(self, n5):
        """Test that a subset missing a block is not a retract."""
        theta = principal_congruence(n5, 1, 2)
        with pytest.raises(NotARetract):
            retraction_from_transversal(n5, theta, mask_of([0, 1, 4]))

    def test_transversal_hits_block_twice(self, n5):
        """Test that a subset meeting a block twice is rejected."""
        theta = principal_congruence(n5, 1, 2)
        with pytest.raises(NotARetract):
            retraction_from_transversal(n5, theta, full_mask(5))

    def test_transversal_not_sublattice(self, square):
        """Test that a transversal that is not a sublattice is not a retraction."""
        theta = partition_product(Partition.discrete(2), Partition.total(2))
        with pytest.raises(NotARetraction):
            retraction_from_transversal(square, theta, mask_of([1, 2]))

    @pytest.mark.parametrize("name", ["n5", "m3", "boolean(3)", "l12"])
    def test_rcon_equals_con(self, name):
        """Test lattices where every congruence is a retraction congruence."""
        L = catalog(name).lattice
        assert rcon(L) == all_congruences(L)

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_rcon_modes_agree(self, name):
        """Test that kernels of retractions are the congruences with a transversal."""
        L = catalog(name).lattice
        assert rcon(L, "bruteforce") == rcon(L, "transversal")

    @pytest.mark.parametrize("first,second", [("chain(2)", "chain(3)"), ("n5", "chain(2)")])
    def test_rcon_of_products(self, first, second):
        """Test that retraction congruences of a product are products of factor ones."""
        L1, L2 = catalog(first).lattice, catalog(second).lattice
        expected = {partition_product(p, q) for p in rcon(L1) for q in rcon(L2)}
        assert set(rcon(direct_product(L1, L2))) == expected


class TestRetPoset:
    """Tests for Ret ordered by inclusion."""

    def test_bounds(self, n5):
        """Test that the empty set is the bottom and the lattice the top."""
        poset = ret_poset(n5)
        assert poset.elements[0] == 0
        assert poset.elements[-1] == n5.full

    @pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
    def test_grid_ret_is_lattice(self, m, n):
        """Test that Ret of a grid is a lattice whose meets are intersections."""
        poset = ret_poset(make_grid(GridShape(m=m, n=n)))
        assert poset.is_lattice
        assert poset.witness is None
        assert poset.meets_are_intersections()

    @pytest.mark.parametrize("m,n,total", [(2, 2, 11), (2, 3, 27), (3, 3, 72)])
    def test_grid_totals(self, m, n, total):
        """Test the size of Ret for small grids, empty set included."""
        assert len(ret_poset(make_grid(GridShape(m=m, n=n)))) == total

    def test_l12_is_not_a_lattice(self, l12_lattice):
        """Test that [0,p] and [0,a] ∪ [q,1] have no meet in Ret L_12."""
        L = l12_lattice
        poset = ret_poset(L)
        s1 = L.down[L.element("p")]
        s2 = L.interval(L.element("0"), L.element("a")) | L.up[L.element("q")]
        assert not poset.is_lattice
        assert set(poset.witness) == {s1, s2}
        assert poset.meet(poset.index[s1], poset.index[s2]) is None

    def test_l12_only_pair_without_meet(self, l12_lattice):
        """Test that exactly one pair of Ret L_12 lacks a meet."""
        poset = ret_poset(l12_lattice)
        k = len(poset)
        missing = [(i, j) for i in range(k) for j in range(i + 1, k) if poset.meet(i, j) is None]
        assert [(poset.elements[i], poset.elements[j]) for i, j in missing] == [poset.witness]

    def test_chain_covers(self):
        """Test the Hasse diagram of Ret C_2."""
        poset = ret_poset(chain(2))
        assert poset.elements == [0, 1, 2, 3]
        assert poset.covers == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_join_lookup(self):
        """Test that the join of two singletons in Ret C_2 is the whole chain."""
        poset = ret_poset(chain(2))
        assert poset.join(1, 2) == 3
        assert poset.meet(1, 2) == 0

    def test_to_lattice(self, square):
        """Test that Ret of the square converts to an eleven-element lattice."""
        assert ret_poset(square).to_lattice().n == 11

    def test_manual_members(self):
        """Test that the empty set is adjoined to the given members."""
        poset = RetPoset(chain(2), [1, 3])
        assert poset.elements == [0, 1, 3]


class TestProducts:
    """Tests for product and split retractions."""

    def test_identity_product(self):
        """Test that identities give the identity on the product."""
        f = product_retraction(chain(2), EndoMap.identity(2), chain(3), EndoMap.identity(3))
        assert f == EndoMap.identity(6)

    def test_constant_product(self):
        """Test that constants to the bottoms give the constant to the bottom."""
        f = product_retraction(
            chain(2), EndoMap.constant(2, 0), chain(2), EndoMap.constant(2, 0)
        )
        assert f == EndoMap.constant(4, 0)

    def test_left_edge(self, square):
        """Test that (constant 0, identity) retracts the square onto its left edge."""
        f = product_retraction(chain(2), EndoMap.constant(2, 0), chain(2), EndoMap.identity(2))
        assert is_retraction(square, f)
        assert f.image() == mask_of([0, 1])
        assert split_retraction(square, f) == (EndoMap.constant(2, 0), EndoMap.identity(2))

    def test_rejects_non_retraction(self):
        """Test that a non-idempotent factor raises NotARetraction."""
        with pytest.raises(NotARetraction):
            product_retraction(chain(2), EndoMap((1, 0)), chain(2), EndoMap.identity(2))

    def test_split_every_retraction(self):
        """Test that each retraction of C_2 x C_3 splits with a product kernel."""
        G = make_grid(GridShape(m=2, n=3))
        for f in all_retractions(G):
            f1, f2 = split_retraction(G, f)
            assert is_retraction(chain(2), f1)
            assert is_retraction(chain(3), f2)
            assert f.kernel() == partition_product(f1.kernel(), f2.kernel())

    def test_split_rejects_non_retraction(self, square):
        """Test that splitting a non-retraction raises."""
        with pytest.raises(NotARetraction):
            split_retraction(square, EndoMap((3, 2, 1, 0)))

    def test_boolean_square_retracts(self):
        """Test that B_2 keeps its diagonal but not a three-element chain."""
        found = retracts(boolean(2))
        assert mask_of([0, 3]) in found
        assert mask_of([0, 1, 3]) not in found
