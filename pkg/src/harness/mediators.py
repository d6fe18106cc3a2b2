"""
Closed-form mediators of the two hexagons, reproduced on seeded samples.

Each sample is a random compatible tuple of the hexagon; its exact lift
through the limit cone must equal the closed form read off the first
three components.
"""

import random
from fractions import Fraction
from typing import Callable, List, Tuple

import structlog

from src.algebra.simplicial import SimplicialObject, make_Dn
from src.algebra.weil import WeilElement
from src.harness.catalog import Catalog
from src.harness.checks import Check, Outcome, hom_equality_outcome
from src.harness.general import g_hexagon
from src.harness.primordial import hexagon_over_microsquares
from src.harness.statements import statement
from src.limits.diagram import Cone, Diagram, LimitReport, LimitSpace, cone_over, is_limit_cone, lift, mediator
from src.morphisms.homs import induced_hom
from src.morphisms.maps import InfinitesimalMap

logger = structlog.get_logger(__name__)

SAMPLE_RANGE = 5


def e_closed_form(obj: SimplicialObject, g1: WeilElement, g2: WeilElement, g3: WeilElement) -> WeilElement:
    """The element of W_E whose legs are (g1, g2, g3)."""
    a12 = g1.coefficient((1, 2))
    return WeilElement(
        obj,
        {
            (): g1.coefficient(()),
            (1,): g1.coefficient((1,)),
            (2,): g1.coefficient((2,)),
            (1, 2): a12,
            (3,): g2.coefficient((1, 2)) - a12,
            (4,): g3.coefficient((1, 2)) - a12,
        },
    )


def g_closed_form(obj: SimplicialObject, g1: WeilElement, g2: WeilElement, g3: WeilElement) -> WeilElement:
    """The element of W_G whose legs are (g1, g2, g3)."""
    a, b, c = g1.coefficient, g2.coefficient, g3.coefficient
    return WeilElement(
        obj,
        {
            (): a(()),
            (1,): a((1,)),
            (2,): a((2,)),
            (3,): a((3,)),
            (4,): a((6,)),
            (5,): b((6,)),
            (6,): c((6,)),
            (7,): a((7,)),
            (8,): b((7,)),
            (1, 2): a((1, 2)),
            (1, 3): a((1, 3)),
            (1, 4): a((1, 6)),
            (2, 3): b((2, 3)) + a((6,)),
            (2, 5): b((2, 6)),
            (3, 6): c((3, 6)),
            (1, 2, 3): a((1, 2, 3)) - a((7,)) - b((7,)) + a((1, 6)),
        },
    )


def random_compatible(rng: random.Random, diagram: Diagram, space: LimitSpace) -> List[WeilElement]:
    """A random integer combination of the limit basis, split per node."""
    vector = [Fraction(0)] * diagram.product_dim
    for row in space.basis:
        r = rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)
        if r:
            vector = [v + r * x for v, x in zip(vector, row)]
    return diagram.split(vector)


def _samples(
    rng: random.Random, diagram: Diagram, report: LimitReport, count: int
) -> List[Tuple[List[WeilElement], WeilElement]]:
    samples = []
    for _ in range(count):
        tuple_ = random_compatible(rng, diagram, report.limit)
        lifted = lift(diagram, report.cone, {0: tuple_[0], 1: tuple_[1], 2: tuple_[2]}, report)
        samples.append((tuple_, lifted))
    return samples


def _closed_form_outcome(
    hexagon: Tuple[Diagram, Cone],
    closed_form: Callable[[SimplicialObject, WeilElement, WeilElement, WeilElement], WeilElement],
    seed: int,
    count: int,
) -> Outcome:
    diagram, cone = hexagon
    report = is_limit_cone(diagram, cone)
    if not report.is_limit:
        return Outcome.fail(report.describe())
    rng = random.Random(seed)
    for n, (tuple_, lifted) in enumerate(_samples(rng, diagram, report, count)):
        expected = closed_form(cone.apex, tuple_[0], tuple_[1], tuple_[2])
        if lifted != expected:
            return Outcome.fail(f"sample {n}: lift - closed form = {lifted - expected}")
    return Outcome.ok(f"{count} samples agree")


def derivability_outcome(catalog: Catalog, seed: int, count: int) -> Outcome:
    """The X3X4X5 coefficient of the third leg is forced to equal X1X2X3 of the first."""
    diagram, cone = g_hexagon(catalog)
    report = is_limit_cone(diagram, cone)
    if not report.is_limit:
        return Outcome.fail(report.describe())
    rng = random.Random(seed)
    for n in range(count):
        g = random_compatible(rng, diagram, report.limit)
        left, right = g[2].coefficient((3, 4, 5)), g[0].coefficient((1, 2, 3))
        if left != right:
            return Outcome.fail(f"sample {n}: X3X4X5 in third leg is {left}, X1X2X3 in first is {right}")
    return Outcome.ok(f"{count} samples agree")


def free_apex_outcome(catalog: Catalog) -> Outcome:
    """
    The cone with apex D^4 and the l-formulas factors through W_E by the
    quotient W_{D^4} -> W_E.
    """
    diagram, cone = hexagon_over_microsquares(catalog)
    free = make_Dn(4)
    legs = [
        induced_hom(InfinitesimalMap(f.source, free, f.components, f.name))
        for f in (catalog.map("l1"), catalog.map("l2"), catalog.map("l3"))
    ]
    h = mediator(diagram, cone, cone_over(diagram, free, legs))
    e = catalog.obj("E")
    quotient = induced_hom(InfinitesimalMap(e, free, WeilElement.generators(e), "incl_E"))
    return hom_equality_outcome(h, quotient)


def mediator_checks(catalog: Catalog, seed: int, samples: int) -> List[Check]:
    location_e = statement("P6").location
    location_g = statement("G7").location
    return [
        Check(
            "mediator.E-closed-form",
            location_e,
            lambda: _closed_form_outcome(hexagon_over_microsquares(catalog), e_closed_form, seed, samples),
        ),
        Check("mediator.E-free-apex", location_e, lambda: free_apex_outcome(catalog)),
        Check(
            "mediator.G-closed-form",
            location_g,
            lambda: _closed_form_outcome(g_hexagon(catalog), g_closed_form, seed, samples),
        ),
        Check(
            "mediator.G-derivability",
            statement("G7").at("third-leg cubic term is determined by the first leg"),
            lambda: derivability_outcome(catalog, seed, samples),
        ),
    ]
