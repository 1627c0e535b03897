"""
Unit tests for lattice polytope geometry.
"""
import pytest

from app.exceptions import InputError
from app.services.intlinalg import IntMatrix
from app.services.polytope import (
    DimensionMismatchError,
    NotAJoinError,
    NotASimplexError,
    PolytopeError,
    SublatticeError,
    build,
    cayley_sum,
    cube,
    dilate,
    find_free_join,
    find_unimodular_map,
    free_join,
    free_join_index,
    is_cayley,
    is_free_join,
    is_lattice_pyramid,
    is_spanning,
    is_unimodularly_equivalent,
    iter_joins,
    lattice_pyramid,
    lattice_width,
    lawrence_prism,
    pyramid_depth,
    quotient_group,
    spanning_sublattice,
    standard_simplex,
    sublattice_view,
    translate,
)


# =============================================================================
# Construction
# =============================================================================


class TestBuild:
    """Tests for building polytopes from point lists."""

    def test_redundant_points_dropped(self):
        """Test that duplicates and non-vertices are removed."""
        P = build([[0, 0], [2, 0], [0, 2], [1, 1], [0, 0], [1, 0]])
        assert P.n_vertices == 3
        assert set(P.vertices) == {(0, 0), (2, 0), (0, 2)}

    def test_vertex_order_follows_input(self):
        """Test that surviving vertices keep their first-occurrence order."""
        P = build([[1, 0], [0, 0], [0, 1]])
        assert P.vertices == ((1, 0), (0, 0), (0, 1))

    def test_empty_input_rejected(self):
        """Test that an empty point list is an input error."""
        with pytest.raises(PolytopeError):
            build([])

    def test_ragged_input_rejected(self):
        """Test that points of different lengths are rejected."""
        with pytest.raises(PolytopeError):
            build([[0, 0], [1]])

    def test_lower_dimensional_input_normalized(self):
        """Test that a segment in R^3 becomes a 1-polytope of lattice length 2."""
        P = build([[0, 0, 0], [2, 2, 2], [1, 1, 1]])
        assert P.dim == 1
        assert P.n_vertices == 2
        assert P.volume == 2
        assert P.embedding is not None

    def test_single_point(self, corpus):
        """Test the zero-dimensional polytope."""
        P = corpus["point"]
        assert P.dim == 0
        assert P.volume == 1
        assert P.lattice_points() == [()]
        assert P.face_lattice().f_vector() == (1, 1)

    def test_standard_constructions(self):
        """Test dimensions of the standard constructions."""
        assert free_join(standard_simplex(2), cube(2)).dim == 5
        assert lattice_pyramid(cube(2)).dim == 3
        assert cayley_sum(standard_simplex(2), cube(2)).dim == 3
        assert translate(cube(2), [3, -1]).vertices[0] == (3, -1)

    def test_cayley_sum_dimension_mismatch(self):
        """Test that Cayley sums need a common ambient dimension."""
        with pytest.raises(DimensionMismatchError):
            cayley_sum(standard_simplex(2), standard_simplex(3))

    def test_lawrence_prism_heights_positive(self):
        """Test that zero heights are rejected."""
        with pytest.raises(PolytopeError):
            lawrence_prism([1, 0, 2])

    def test_dilation_factor_positive(self):
        """Test that dilation needs a positive factor."""
        with pytest.raises(PolytopeError):
            dilate(cube(2), 0)


# =============================================================================
# Faces, volume and lattice points
# =============================================================================


class TestFacesAndVolume:
    """Tests for facets, the face lattice and normalized volume."""

    @pytest.mark.parametrize(
        "name,f_vector",
        [
            ("unit_square", (1, 4, 4, 1)),
            ("unit_tetrahedron", (1, 4, 6, 4, 1)),
            ("unit_cube", (1, 8, 12, 6, 1)),
            ("octahedron", (1, 6, 12, 8, 1)),
            ("square_pyramid", (1, 5, 8, 5, 1)),
        ],
    )
    def test_f_vector(self, corpus, name, f_vector):
        """Test face counts including the empty face and P itself."""
        assert corpus[name].face_lattice().f_vector() == f_vector

    @pytest.mark.parametrize(
        "name,volume",
        [
            ("unit_segment", 1),
            ("long_segment", 2),
            ("unit_triangle", 1),
            ("double_triangle", 4),
            ("reflexive_triangle", 3),
            ("unit_square", 2),
            ("unit_tetrahedron", 1),
            ("unit_cube", 6),
            ("big_cube", 48),
            ("octahedron", 8),
            ("reeve_3", 3),
            ("cayley_tetrahedron", 2),
        ],
    )
    def test_volume(self, corpus, name, volume):
        """Test normalized lattice volume."""
        assert corpus[name].volume == volume

    def test_face_lattice_is_eulerian(self, corpus):
        """Test the Eulerian property of small face lattices."""
        for name in ("unit_square", "unit_tetrahedron", "square_pyramid"):
            assert corpus[name].face_lattice().is_eulerian()

    def test_facet_normals_primitive_and_inward(self, corpus):
        """Test that every vertex satisfies every facet inequality."""
        P = corpus["big_cube"]
        assert len(P.facets) == 6
        for facet in P.facets:
            assert all(facet.value(v) >= 0 for v in P.vertices)
            assert len(facet.vertices) == 4

    def test_face_polytope_is_in_own_lattice(self, corpus):
        """Test that a facet of [-1, 1]^3 is a 2×2 square in its own coordinates."""
        P = corpus["big_cube"]
        square = P.face_lattice().of_dim(2)[0]
        face = P.face_polytope(square)
        assert face.dim == 2
        assert face.volume == 8

    def test_empty_face_has_no_polytope(self, corpus):
        """Test that the empty face cannot be turned into a polytope."""
        P = corpus["unit_square"]
        with pytest.raises(PolytopeError):
            P.face_polytope(P.face_lattice().bottom)


class TestLatticePoints:
    """Tests for lattice point enumeration of dilates."""

    def test_cube_points(self, corpus):
        """Test closed and interior counts of [-1, 1]^3."""
        P = corpus["big_cube"]
        assert len(P.lattice_points()) == 27
        assert P.lattice_points(interior=True) == [(0, 0, 0)]
        assert len(P.lattice_points(dilation=2)) == 125

    def test_dilation_zero(self, corpus):
        """Test that 0P is the origin and has no interior."""
        P = corpus["unit_triangle"]
        assert P.lattice_points(dilation=0) == [(0, 0)]
        assert P.lattice_points(dilation=0, interior=True) == []

    def test_negative_dilation_rejected(self, corpus):
        """Test that negative dilations are rejected."""
        with pytest.raises(InputError):
            corpus["unit_square"].lattice_points(dilation=-1)

    def test_points_are_lexicographic(self, corpus):
        """Test the lexicographic output order."""
        pts = corpus["double_triangle"].lattice_points()
        assert pts == sorted(pts)
        assert len(pts) == 6


# =============================================================================
# Structure
# =============================================================================


class TestStructure:
    """Tests for pyramids, joins, Cayley structure and width."""

    def test_pyramid_detection(self, corpus):
        """Test single-apex lattice pyramids."""
        assert is_lattice_pyramid(corpus["unit_tetrahedron"]) is not None
        assert is_lattice_pyramid(corpus["square_pyramid"]) is not None
        assert is_lattice_pyramid(corpus["unit_cube"]) is None
        assert is_lattice_pyramid(corpus["double_triangle"]) is None
        assert is_lattice_pyramid(corpus["cayley_tetrahedron"]) is None

    def test_pyramid_depth(self, corpus):
        """Test repeated pyramid peeling."""
        assert pyramid_depth(corpus["unit_tetrahedron"]) == 3
        assert pyramid_depth(corpus["double_triangle_pyramid"]) == 1
        assert pyramid_depth(corpus["unit_cube"]) == 0

    def test_simplex_joins(self, corpus):
        """Test that a tetrahedron has seven join decompositions."""
        joins = list(iter_joins(corpus["unit_tetrahedron"]))
        assert len(joins) == 7
        assert all(F.dim + G.dim + 1 == 3 for F, G in joins)

    def test_cube_has_no_join(self, corpus):
        """Test that the cube is not a join."""
        assert list(iter_joins(corpus["unit_cube"])) == []

    def test_free_join_index(self, corpus):
        """Test the index of M(F) + M(G) on the Cayley tetrahedron."""
        P = corpus["cayley_tetrahedron"]
        lattice = P.face_lattice()
        F, G = lattice.face_of([0, 1]), lattice.face_of([2, 3])
        assert free_join_index(P, F, G) == 2
        assert not is_free_join(P, F, G, method="index")
        assert not is_free_join(P, F, G, method="equivalence")

    def test_free_join_detected_on_construction(self):
        """Test that a constructed free join is recognized both ways."""
        J = free_join(build([[0], [2]]), standard_simplex(2))
        found = find_free_join(J)
        assert found is not None
        F, G = found
        assert is_free_join(J, F, G, method="index")
        assert is_free_join(J, F, G, method="equivalence")

    def test_non_join_rejected(self, corpus):
        """Test that faces which do not form a join raise."""
        P = corpus["unit_square"]
        edges = P.face_lattice().of_dim(1)
        with pytest.raises(NotAJoinError):
            free_join_index(P, edges[0], edges[1])

    def test_cayley_structure(self, corpus):
        """Test lattice-width-one detection."""
        assert is_cayley(corpus["unit_cube"]) is not None
        assert is_cayley(corpus["lawrence_112"]) is not None
        assert is_cayley(corpus["reflexive_triangle"]) is None
        assert is_cayley(corpus["double_triangle"]) is None

    @pytest.mark.parametrize(
        "name,width,direction",
        [
            ("unit_square", 1, (1, 0)),
            ("double_triangle", 2, (1, 0)),
            ("reflexive_triangle", 2, (1, 0)),
            ("big_cube", 2, (1, 0, 0)),
            ("octahedron", 2, (1, 0, 0)),
            ("point", 0, ()),
        ],
    )
    def test_lattice_width(self, corpus, name, width, direction):
        """Test width and the tie-broken direction."""
        result = lattice_width(corpus[name])
        assert result.width == width
        assert result.direction == direction

    def test_width_bound_validated(self, corpus):
        """Test that the search bound must be positive."""
        with pytest.raises(InputError):
            lattice_width(corpus["unit_square"], bound=0)


# =============================================================================
# Equivalence and sublattices
# =============================================================================


class TestEquivalenceAndSublattices:
    """Tests for unimodular equivalence, spanning sublattices and quotients."""

    def test_translated_sheared_triangle_equivalent(self):
        """Test equivalence under translation and shear."""
        P = standard_simplex(2)
        Q = build([[5, 5], [6, 5], [8, 6]])
        mapping = find_unimodular_map(P, Q)
        assert mapping is not None
        assert {mapping(v) for v in P.vertices} == set(Q.vertices)

    def test_dilate_not_equivalent(self, corpus):
        """Test that different volumes are never equivalent."""
        assert not is_unimodularly_equivalent(corpus["unit_triangle"], corpus["double_triangle"])

    def test_lawrence_heights_permuted(self):
        """Test that permuting Lawrence heights gives an equivalent prism."""
        assert is_unimodularly_equivalent(lawrence_prism([1, 2, 3]), lawrence_prism([3, 1, 2]))
        assert not is_unimodularly_equivalent(lawrence_prism([1, 2, 3]), lawrence_prism([1, 1, 4]))

    def test_spanning(self, corpus, nonspanning_simplex):
        """Test the spanning predicate and the sublattice index."""
        assert is_spanning(corpus["unit_cube"])
        assert is_spanning(corpus["point"])
        assert not is_spanning(corpus["reeve_3"])
        assert spanning_sublattice(nonspanning_simplex).index == 2

    def test_sublattice_view(self, corpus):
        """Test the coarse view of 2Δ_2 in the lattice 2Z^2."""
        coarse = sublattice_view(corpus["double_triangle"], IntMatrix.diagonal([2, 2]))
        assert coarse.volume == 1

    def test_sublattice_view_rejects_outside_vertex(self, corpus):
        """Test that vertices must lie in the coarse lattice."""
        with pytest.raises(SublatticeError):
            sublattice_view(corpus["unit_triangle"], IntMatrix.diagonal([2, 2]))

    @pytest.mark.parametrize(
        "name,factors,cyclic",
        [
            ("unit_triangle", (1, 1, 1), True),
            ("double_triangle", (1, 2, 2), False),
            ("reeve_3", (1, 1, 1, 3), True),
        ],
    )
    def test_quotient_group(self, corpus, name, factors, cyclic):
        """Test the group Z^(d+1) modulo the lifted vertices."""
        group = quotient_group(corpus[name])
        assert group.invariant_factors == factors
        assert group.order == corpus[name].volume
        assert group.is_cyclic is cyclic

    def test_nonspanning_quotient(self, nonspanning_simplex):
        """Test the non-cyclic quotient of the index-2 4-simplex."""
        group = quotient_group(nonspanning_simplex)
        assert group.invariant_factors == (1, 1, 1, 4, 4)
        assert not group.is_cyclic

    def test_quotient_group_requires_simplex(self, corpus):
        """Test that the quotient group is only defined for simplices."""
        with pytest.raises(NotASimplexError):
            quotient_group(corpus["unit_square"])
