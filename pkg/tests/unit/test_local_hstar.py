"""
Unit tests for local h*-polynomials and their audits.
"""
import pytest

from app.exceptions import InputError, InternalConsistencyError
from app.services.intlinalg import IntMatrix
from app.services.local_hstar import (
    decomposition_check,
    deg_lstar_law,
    dim_le_2_formula,
    face_lstar,
    hollow_thin_check,
    is_thin,
    is_trivially_thin,
    local_hstar,
    lower_bound_check,
    lstar,
    multiplicativity_check,
    refinement_monotonicity_check,
)
from app.services.polynomial import IntPolynomial
from app.services.polytope import SublatticeError, cube

LSTAR = {
    "point": [0],
    "unit_segment": [0],
    "long_segment": [0, 1],
    "unit_triangle": [0],
    "double_triangle": [0],
    "reflexive_triangle": [0, 1, 1],
    "unit_square": [0],
    "unit_tetrahedron": [0],
    "unit_cube": [0, 0, 1],
    "big_cube": [0, 1, 17, 1],
    "octahedron": [0, 1, 3, 1],
    "square_pyramid": [0],
    "double_triangle_pyramid": [0],
    "lawrence_112": [0],
    "reeve_3": [0, 0, 2],
    "cayley_tetrahedron": [0, 0, 1],
}


# =============================================================================
# l* values and audits
# =============================================================================


class TestLStar:
    """Tests for the alternating face sum."""

    @pytest.mark.parametrize("name", sorted(LSTAR))
    def test_known_values(self, corpus, name):
        """Test l* against hand-computed values."""
        assert lstar(corpus[name]).to_list() == LSTAR[name]

    @pytest.mark.parametrize("name", sorted(LSTAR))
    def test_audit_passes(self, corpus, name):
        """Test that every audited identity holds on the corpus."""
        report = local_hstar(corpus[name])
        assert report.all_passed
        assert report.lstar.to_list() == LSTAR[name]
        assert report.is_thin is (LSTAR[name] == [0])

    def test_report_fields(self, corpus):
        """Test the report for [-1, 1]^3."""
        report = local_hstar(corpus["big_cube"])
        assert report.interior_point_count == 1
        assert report.hstar.to_list() == [1, 23, 23, 1]
        assert report.degree == 3
        assert report.subdegree == 1
        names = {c.name for c in report.checks}
        assert {"palindromic", "decomposition", "lower_bound", "degree_bounds"} <= names

    def test_point_counts_one_interior_point(self, corpus):
        """Test the dimension-0 convention."""
        report = local_hstar(corpus["point"])
        assert report.interior_point_count == 1
        assert report.is_thin

    def test_simplices_compare_with_box(self, corpus):
        """Test that the box agreement check is present for simplices."""
        report = local_hstar(corpus["reeve_3"])
        box = next(c for c in report.checks if c.name == "box_agreement")
        assert box.passed
        assert box.detail["box"] == [0, 0, 2]

    def test_audit_failure_raises(self, corpus, mocker):
        """Test that a failed identity raises InternalConsistencyError."""
        mocker.patch("app.services.local_hstar.lstar", return_value=IntPolynomial.of([0, 1]))
        with pytest.raises(InternalConsistencyError):
            local_hstar(corpus["unit_square"])

    def test_audit_can_be_skipped(self, corpus):
        """Test that audit=False returns no verdicts."""
        report = local_hstar(corpus["unit_cube"], audit=False)
        assert report.checks == ()
        assert report.all_passed

    def test_face_lstar(self, corpus):
        """Test l* of the empty face and of a facet of [-1, 1]^3."""
        P = corpus["big_cube"]
        lattice = P.face_lattice()
        assert face_lstar(P, lattice.bottom).to_list() == [1]
        facet = lattice.of_dim(2)[0]
        assert face_lstar(P, facet).to_list() == [0, 1, 1]


class TestChecks:
    """Tests for the individual verdicts."""

    @pytest.mark.parametrize("name", ["unit_cube", "octahedron", "reeve_3", "lawrence_112"])
    def test_decomposition(self, corpus, name):
        """Test h* = Σ_F l*_F g_[F,P) and l* + g ≤ h*."""
        verdict = decomposition_check(corpus[name])
        assert verdict.passed
        assert verdict.detail["residual"] == [0]

    def test_lower_bound(self, corpus):
        """Test l*_1 ≤ l*_i on [-1, 1]^3."""
        verdict = lower_bound_check(corpus["big_cube"])
        assert verdict.passed
        assert verdict.detail["failing_indices"] == []

    @pytest.mark.parametrize(
        "name", ["point", "long_segment", "unit_square", "reflexive_triangle", "double_triangle"]
    )
    def test_low_dimension_closed_form(self, corpus, name):
        """Test the closed forms in dimension at most 2."""
        P = corpus[name]
        assert dim_le_2_formula(P) == lstar(P)

    def test_closed_form_rejects_dim_3(self, corpus):
        """Test that the closed form is refused above dimension 2."""
        with pytest.raises(InputError):
            dim_le_2_formula(corpus["unit_cube"])

    def test_free_join_multiplicativity(self, corpus):
        """Test l* of segment * triangle is the product t(t + t^2)."""
        verdict = multiplicativity_check(corpus["long_segment"], corpus["reflexive_triangle"])
        assert verdict.passed
        assert verdict.detail["lstar_join"] == [0, 0, 1, 1]

    def test_refinement_of_doubled_square(self):
        """Test [0, 2]^2 against its view in the lattice 2Z^2."""
        P = cube(2, 0, 2)
        verdict = refinement_monotonicity_check(P, IntMatrix.diagonal([2, 2]))
        assert verdict.passed
        assert verdict.detail["lstar_fine"] == [0, 1, 1]
        assert verdict.detail["lstar_coarse"] == [0]
        assert verdict.detail["hstar_fine"] == [1, 6, 1]
        assert verdict.detail["hstar_coarse"] == [1, 1]

    def test_refinement_with_translation(self, corpus):
        """Test [-1, 1]^3 against the translated lattice (1, 1, 1) + 2Z^3."""
        verdict = refinement_monotonicity_check(
            corpus["big_cube"], IntMatrix.diagonal([2, 2, 2]), [-1, -1, -1]
        )
        assert verdict.passed
        assert verdict.detail["lstar_coarse"] == [0, 0, 1]
        assert verdict.detail["hstar_coarse"] == [1, 4, 1]

    def test_refinement_rejects_off_lattice_vertices(self, corpus):
        """Test that vertices outside the coarse lattice raise."""
        with pytest.raises(SublatticeError):
            refinement_monotonicity_check(corpus["unit_cube"], IntMatrix.diagonal([2, 2, 2]))

    @pytest.mark.parametrize("name", sorted(LSTAR))
    def test_hollow_thin_and_degree_law(self, corpus, name):
        """Test thin ⇒ hollow and the deg l* law in low dimension."""
        P = corpus[name]
        assert hollow_thin_check(P).passed
        assert deg_lstar_law(P).passed


class TestThinness:
    """Tests for thinness predicates."""

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("unit_tetrahedron", True),
            ("lawrence_112", True),
            ("square_pyramid", True),
            ("unit_cube", False),
            ("reflexive_triangle", False),
            ("reeve_3", False),
        ],
    )
    def test_trivially_thin(self, corpus, name, expected):
        """Test dim P ≥ 2 deg P."""
        assert is_trivially_thin(corpus[name]) is expected

    def test_thin_simplex_and_non_simplex(self, corpus):
        """Test both the box route and the face-sum route."""
        assert is_thin(corpus["double_triangle"])
        assert not is_thin(corpus["reeve_3"])
        assert is_thin(corpus["unit_square"])
        assert not is_thin(corpus["octahedron"])
