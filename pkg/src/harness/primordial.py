"""Verification of the primordial Jacobi identity on E."""

from typing import List, Optional, Tuple

import structlog

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

logger = structlog.get_logger(__name__)

STEPS = ("step_E_1", "step_E_2", "step_E_3")


def pullback_of_microsquares(catalog: Catalog) -> Tuple[Diagram, Cone]:
    """W_C over two copies of W_{D^2} glued along W_{D(2)}."""
    incl = catalog.hom("incl_D(2)")
    diagram = pullback_diagram(incl, incl)
    return diagram, cone_over(diagram, catalog.obj("C"), [catalog.hom("phi"), catalog.hom("psi")])


def hexagon_over_microsquares(catalog: Catalog) -> Tuple[Diagram, Cone]:
    """Three W_{D^2} glued cyclically along W_{D(2)}, apex W_E."""
    incl = catalog.hom("incl_D(2)")
    d2 = catalog.obj("D^2")
    diagram = chain_diagram([d2, d2, d2], [incl] * 6, cyclic=True)
    legs = [catalog.hom("l1"), catalog.hom("l2"), catalog.hom("l3")]
    return diagram, cone_over(diagram, catalog.obj("E"), legs)


def hexagon_over_c(catalog: Catalog) -> Tuple[Diagram, Cone]:
    """
    Three W_C glued through three W_{D^2}, apex W_E.

    Outer node k takes W_psi from inner k and W_phi from inner k+1.
    """
    c = catalog.obj("C")
    arrows = [catalog.hom("psi"), catalog.hom("phi")] * 3
    diagram = chain_diagram([c, c, c], arrows, cyclic=True)
    legs = [catalog.hom(f"theta_{k}") for k in (1, 2, 3)]
    return diagram, cone_over(diagram, catalog.obj("E"), legs)


def primordial_checks(catalog: Catalog) -> List[Check]:
    checks = [
        Check(
            "primordial.pullback.C",
            statement("P1").location,
            lambda: limit_outcome(*pullback_of_microsquares(catalog), expected_dimension=5),
        ),
        Check(
            "primordial.limit.E-over-D2",
            statement("P2").location,
            lambda: limit_outcome(*hexagon_over_microsquares(catalog), expected_dimension=6),
        ),
        Check(
            "primordial.limit.E-over-C",
            statement("P3").location,
            lambda: limit_outcome(*hexagon_over_c(catalog), expected_dimension=6),
        ),
    ]

    def step(k: int) -> Outcome:
        actual = composite(catalog.hom("zeta"), catalog.hom(f"theta_{k}"))
        return hom_equality_outcome(actual, catalog.hom(STEPS[k - 1]))

    for k in (1, 2, 3):
        checks.append(
            Check(
                f"primordial.composite.{k}",
                statement("P4").at(f"composite {k} is {catalog.map(STEPS[k - 1]).format()}"),
                lambda k=k: step(k),
            )
        )
    checks.extend(witness_checks("primordial", statement("P5").location, catalog, "s", STEPS))
    return checks


def verify_primordial(catalog: Optional[Catalog] = None) -> List[CheckResult]:
    catalog = catalog or build_catalog()
    results = run_checks(primordial_checks(catalog))
    logger.info(
        "Primordial identity verified",
        total=len(results),
        failed=sum(1 for r in results if not r.passed),
    )
    return results
