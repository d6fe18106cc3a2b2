"""
Verification of the general Jacobi identity on G.

``apex_override`` swaps the apex of the G-hexagon for another object while
keeping the k-formulas; only the hexagon limit check sees it. Passing
``make_Dn(8)`` is the standard fault-injection run.
"""

from typing import List, Optional, Tuple

import structlog

from src.algebra.simplicial import SimplicialObject
from src.harness.catalog import Catalog, build_catalog
from src.harness.checks import (
    Check,
    CheckResult,
    Outcome,
    composite,
    hom_equality_outcome,
    limit_outcome,
    run_checks,
    witness_checks,
)
from src.harness.statements import statement
from src.limits.diagram import Cone, Diagram, chain_diagram, cone_over, pullback_diagram
from src.morphisms.homs import induced_hom
from src.morphisms.maps import InfinitesimalMap

logger = structlog.get_logger(__name__)

STEPS = ("step_G_1", "step_G_2", "step_G_3")
H_ARROWS = ("h12_1", "h12_2", "h23_2", "h23_3", "h31_3", "h31_1")

_PULLBACKS = {
    1: ("incl_23", "D^4{(2,4),(3,4)}", "i14_1"),
    2: ("incl_13", "D^4{(1,4),(3,4)}", "i24_2"),
    3: ("incl_12", "D^4{(1,4),(2,4)}", "i34_3"),
}


def microcube_pullback(catalog: Catalog, i: int) -> Tuple[Diagram, Cone]:
    """Two W_{D^3} over the i-th W_{D^3{..}}, apex the i-th D^4 object."""
    incl, apex, _ = _PULLBACKS[i]
    diagram = pullback_diagram(catalog.hom(incl), catalog.hom(incl))
    legs = [catalog.hom(f"phi{i}_3"), catalog.hom(f"psi{i}_3")]
    return diagram, cone_over(diagram, catalog.obj(apex), legs)


def e_pullback(catalog: Catalog, i: int) -> Tuple[Diagram, Cone]:
    """Two copies of the i-th D^4 algebra over W_{D(2)}, apex W_{E[i]}."""
    _, _, incl = _PULLBACKS[i]
    diagram = pullback_diagram(catalog.hom(incl), catalog.hom(incl))
    legs = [catalog.hom(f"eta1_{i}"), catalog.hom(f"eta2_{i}")]
    return diagram, cone_over(diagram, catalog.obj(f"E[{i}]"), legs)


def g_hexagon(catalog: Catalog, apex_override: Optional[SimplicialObject] = None) -> Tuple[Diagram, Cone]:
    """
    W_{E[1..3]} glued through three W_{D^3(+)D^3}, apex W_G.

    Outer node 1 sits between E[1] and E[2], node 2 between E[2] and E[3],
    node 3 between E[3] and E[1].
    """
    inner = [catalog.obj(f"E[{i}]") for i in (1, 2, 3)]
    diagram = chain_diagram(inner, [catalog.hom(h) for h in H_ARROWS], cyclic=True)
    if apex_override is None:
        return diagram, cone_over(diagram, catalog.obj("G"), [catalog.hom(f"k{i}") for i in (1, 2, 3)])
    legs = []
    for i in (1, 2, 3):
        k = catalog.map(f"k{i}")
        legs.append(induced_hom(InfinitesimalMap(k.source, apex_override, k.components, k.name)))
    return diagram, cone_over(diagram, apex_override, legs)


def general_checks(catalog: Catalog, apex_override: Optional[SimplicialObject] = None) -> List[Check]:
    checks: List[Check] = []
    for i in (1, 2, 3):
        _, apex, _ = _PULLBACKS[i]
        checks.append(
            Check(
                f"general.pullback.{apex}",
                statement("G1").at(f"pullback {i} with apex {apex}"),
                lambda i=i: limit_outcome(*microcube_pullback(catalog, i), expected_dimension=10),
            )
        )
        checks.append(
            Check(
                f"general.pullback.E[{i}]",
                statement("G2").at(f"E[{i}]"),
                lambda i=i: limit_outcome(*e_pullback(catalog, i), expected_dimension=17),
            )
        )
    checks.append(
        Check(
            "general.limit.G",
            statement("G4").location,
            lambda: limit_outcome(*g_hexagon(catalog, apex_override), expected_dimension=16),
        )
    )

    def step(k: int) -> Outcome:
        actual = composite(catalog.hom("zeta"), catalog.hom(f"mu_{k}"), catalog.hom(f"k{k}"))
        return hom_equality_outcome(actual, catalog.hom(STEPS[k - 1]))

    for k in (1, 2, 3):
        checks.append(
            Check(
                f"general.composite.{k}",
                statement("G5").at(f"proof step {k} gives {catalog.map(STEPS[k - 1]).format()}"),
                lambda k=k: step(k),
            )
        )
    checks.extend(witness_checks("general", statement("G6").location, catalog, "t", STEPS))
    return checks


def verify_general(
    catalog: Optional[Catalog] = None,
    apex_override: Optional[SimplicialObject] = None,
) -> List[CheckResult]:
    catalog = catalog or build_catalog()
    results = run_checks(general_checks(catalog, apex_override))
    logger.info(
        "General identity verified",
        total=len(results),
        failed=sum(1 for r in results if not r.passed),
        apex_override=str(apex_override) if apex_override else None,
    )
    return results
