"""
Tests for diagrams, limits, cones and mediators.
"""

from fractions import Fraction

import pytest


@pytest.fixture
def pullback(catalog):
    """W_C over two W_{D^2} glued along W_{D(2)}."""
    from src.harness.primordial import pullback_of_microsquares

    return pullback_of_microsquares(catalog)


class TestDiagram:
    """Tests for diagram construction."""

    def test_pullback_shape(self, catalog, pullback):
        """Test the cospan has two inner nodes and one outer node."""
        diagram, cone = pullback
        assert diagram.nodes == (catalog.obj("D^2"), catalog.obj("D^2"), catalog.obj("D(2)"))
        assert [(a.source, a.target) for a in diagram.arrows] == [(0, 2), (1, 2)]
        assert diagram.product_dim == 4 + 4 + 3

    def test_chain_needs_matching_codomains(self, catalog):
        """Test arrows into one outer node must share a codomain."""
        from src.limits.diagram import MalformedDiagramError, chain_diagram

        d2 = catalog.obj("D^2")
        with pytest.raises(MalformedDiagramError):
            chain_diagram([d2, d2], [catalog.hom("incl_D(2)"), catalog.hom("phi")])

    def test_chain_arrow_count(self, catalog):
        """Test a chain of three needs four arrows."""
        from src.limits.diagram import MalformedDiagramError, chain_diagram

        d2 = catalog.obj("D^2")
        with pytest.raises(MalformedDiagramError):
            chain_diagram([d2, d2, d2], [catalog.hom("incl_D(2)")] * 2)

    def test_split_join(self, pullback):
        """Test split and join are inverse."""
        diagram, _ = pullback
        vector = tuple(Fraction(k) for k in range(diagram.product_dim))
        assert diagram.join(diagram.split(vector)) == vector


class TestComputeLimit:
    """Tests for the limit as a compatible subspace."""

    def test_pullback_dimension(self, pullback):
        """Test the pullback of microsquares has dimension 5."""
        from src.limits.diagram import compute_limit

        space = compute_limit(pullback[0])
        assert space.dimension == 5
        assert space.is_subalgebra

    def test_hexagon_dimension(self, catalog):
        """Test the hexagon of microsquares has dimension 6."""
        from src.harness.primordial import hexagon_over_microsquares
        from src.limits.diagram import compute_limit

        assert compute_limit(hexagon_over_microsquares(catalog)[0]).dimension == 6


class TestIsLimitCone:
    """Tests for limit certification."""

    def test_c_is_limit(self, pullback):
        """Test W_C with legs W_phi, W_psi is the pullback."""
        from src.limits.diagram import is_limit_cone

        report = is_limit_cone(*pullback)
        assert report.commutes
        assert report.is_limit
        assert report.describe() == "limit: dim 5 = apex dim 5"

    def test_free_apex_is_not_limit(self, catalog, pullback):
        """Test the commuting cone with apex D^3 is too big."""
        from src.algebra.simplicial import make_Dn
        from src.limits.diagram import cone_over, is_limit_cone
        from src.morphisms.homs import induced_hom
        from src.morphisms.maps import InfinitesimalMap

        diagram, _ = pullback
        d3 = make_Dn(3)
        legs = [
            induced_hom(InfinitesimalMap(f.source, d3, f.components, f.name))
            for f in (catalog.map("phi"), catalog.map("psi"))
        ]
        report = is_limit_cone(diagram, cone_over(diagram, d3, legs))
        assert report.commutes
        assert not report.is_limit
        assert report.apex_dimension == 8

    def test_non_commuting_cone(self, catalog, pullback):
        """Test a cone whose legs disagree on the gluing algebra."""
        from src.limits.diagram import cone_over, is_limit_cone
        from src.morphisms.homs import induced_hom
        from src.morphisms.maps import InfinitesimalMap

        diagram, _ = pullback
        c = catalog.obj("C")
        swapped = InfinitesimalMap.from_coordinates(
            catalog.obj("D^2"), c, lambda d: (d[2], d[1], 0), "swap"
        )
        report = is_limit_cone(
            diagram, cone_over(diagram, c, [catalog.hom("phi"), induced_hom(swapped)])
        )
        assert not report.commutes
        assert report.failing_arrows
        assert "does not commute" in report.describe()

    def test_missing_legs_are_completed(self, pullback):
        """Test outer legs are filled in from inner legs."""
        from src.limits.diagram import Cone, is_limit_cone

        diagram, cone = pullback
        partial = Cone(cone.apex, (cone.legs[0], cone.legs[1], None))
        report = is_limit_cone(diagram, partial)
        assert report.completed_legs == (2,)
        assert report.is_limit

    def test_wrong_leg_count(self, pullback):
        """Test a cone must have a leg slot per node."""
        from src.limits.diagram import Cone, ShapeMismatchError, is_limit_cone

        diagram, cone = pullback
        with pytest.raises(ShapeMismatchError):
            is_limit_cone(diagram, Cone(cone.apex, cone.legs[:2]))

    def test_node_order_irrelevant(self, pullback):
        """Test reordering nodes does not change the verdict."""
        from src.limits.diagram import is_limit_cone

        diagram, cone = pullback
        order = [2, 1, 0]
        report = is_limit_cone(diagram.reordered(order), cone.reordered(order))
        assert report.is_limit


class TestMediator:
    """Tests for mediators and lifts."""

    def test_mediator_from_free_apex(self, catalog, pullback):
        """Test the D^3 cone factors through W_C by the quotient."""
        from src.algebra.simplicial import make_Dn
        from src.algebra.weil import WeilElement
        from src.limits.diagram import cone_over, mediator
        from src.morphisms.homs import hom_compose, induced_hom
        from src.morphisms.maps import InfinitesimalMap

        diagram, cone = pullback
        d3 = make_Dn(3)
        legs = [
            induced_hom(InfinitesimalMap(f.source, d3, f.components, f.name))
            for f in (catalog.map("phi"), catalog.map("psi"))
        ]
        other = cone_over(diagram, d3, legs)
        h = mediator(diagram, cone, other)
        assert (h.domain, h.codomain) == (d3, catalog.obj("C"))
        for leg, other_leg in zip(cone.legs[:2], other.legs[:2]):
            assert hom_compose(leg, h) == other_leg
        assert h.apply(WeilElement(d3, {(1, 3): 1})).is_zero()

    def test_lift_compatible_pair(self, catalog, pullback):
        """Test lifting (X1*X2, 2*X1*X2) gives X1*X2 + X3."""
        from src.algebra.weil import WeilElement
        from src.limits.diagram import lift

        diagram, cone = pullback
        d2 = catalog.obj("D^2")
        x1x2 = WeilElement(d2, {(1, 2): 1})
        element = lift(diagram, cone, {0: x1x2, 1: 2 * x1x2})
        assert element == WeilElement(catalog.obj("C"), {(1, 2): 1, (3,): 1})

    def test_lift_incompatible(self, catalog, pullback):
        """Test components that disagree on W_{D(2)} have no lift."""
        from src.algebra.weil import WeilElement
        from src.limits.diagram import NoMediatorError, lift

        diagram, cone = pullback
        d2 = catalog.obj("D^2")
        with pytest.raises(NoMediatorError):
            lift(diagram, cone, {0: WeilElement.generator(d2, 1), 1: WeilElement.generator(d2, 2)})

    def test_mediator_needs_limit(self, catalog, pullback):
        """Test a non-limit reference cone has no unique mediator."""
        from src.algebra.simplicial import make_Dn
        from src.limits.diagram import NonUniqueMediatorError, cone_over, mediator
        from src.morphisms.homs import induced_hom
        from src.morphisms.maps import InfinitesimalMap

        diagram, cone = pullback
        d3 = make_Dn(3)
        legs = [
            induced_hom(InfinitesimalMap(f.source, d3, f.components, f.name))
            for f in (catalog.map("phi"), catalog.map("psi"))
        ]
        with pytest.raises(NonUniqueMediatorError):
            mediator(diagram, cone_over(diagram, d3, legs), cone)
