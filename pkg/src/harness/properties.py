"""
Catalog consistency checks and seeded algebraic-law checks.

The law checks draw random objects and maps from ``random.Random(seed)``,
so a given seed always reports the same counterexample.
"""

import random
from itertools import combinations
from typing import Dict, List

import structlog

from src.algebra.simplicial import SimplicialObject, oplus
from src.harness.catalog import Catalog
from src.harness.checks import Check, Outcome, hom_equality_outcome
from src.harness.statements import statement
from src.morphisms.homs import hom_compose, induced_hom
from src.morphisms.maps import (
    TargetMismatchError,
    block_inclusion,
    compose_maps,
    oplus_maps,
    validate_map,
)
from src.morphisms.sampling import random_composable_pair, random_object

logger = structlog.get_logger(__name__)

EXPECTED_DIMENSIONS: Dict[str, int] = {
    "D": 2,
    "D^2": 4,
    "D^3": 8,
    "D(2)": 3,
    "D(3)": 4,
    "C": 5,
    "E": 6,
    "D^3{(2,3)}": 6,
    "D^3{(1,3)}": 6,
    "D^3{(1,2)}": 6,
    "D^4{(2,4),(3,4)}": 10,
    "D^4{(1,4),(3,4)}": 10,
    "D^4{(1,4),(2,4)}": 10,
    "E[1]": 17,
    "E[2]": 17,
    "E[3]": 17,
    "G": 16,
    "D^3(+)D^3": 15,
}

H_SUMMANDS = {
    "h12_1": ("iota2_1", "iota3_1"),
    "h12_2": ("iota4_2", "iota1_2"),
    "h23_2": ("iota2_2", "iota3_2"),
    "h23_3": ("iota4_3", "iota1_3"),
    "h31_3": ("iota2_3", "iota3_3"),
    "h31_1": ("iota4_1", "iota1_1"),
}

_IOTA_FACTORS = {1: ("eta1", "phi"), 2: ("eta1", "psi"), 3: ("eta2", "phi"), 4: ("eta2", "psi")}


# ----------------------------------------------------------------------
# Catalog consistency
# ----------------------------------------------------------------------


def brute_force_dim(obj: SimplicialObject) -> int:
    """Count subsets of the coordinates that contain no forbidden set."""
    forbidden = [frozenset(f) for f in obj.forbidden]
    return sum(
        1
        for size in range(obj.arity + 1)
        for subset in combinations(range(1, obj.arity + 1), size)
        if not any(f <= set(subset) for f in forbidden)
    )


def dimensions_outcome(catalog: Catalog) -> Outcome:
    wrong = []
    for name, expected in EXPECTED_DIMENSIONS.items():
        obj = catalog.obj(name)
        if obj.dim != expected or brute_force_dim(obj) != expected:
            wrong.append(f"{name}: basis {obj.dim}, subsets {brute_force_dim(obj)}, expected {expected}")
    return Outcome.fail("; ".join(wrong)) if wrong else Outcome.ok(f"{len(EXPECTED_DIMENSIONS)} objects")


def iota_outcome(catalog: Catalog) -> Outcome:
    """Each iota equals its eta o phi / eta o psi factorisation."""
    for (j, (eta, leg)) in _IOTA_FACTORS.items():
        for i in (1, 2, 3):
            stated = catalog.hom(f"iota{j}_{i}")
            factored = hom_compose(catalog.hom(f"{leg}{i}_3"), catalog.hom(f"{eta}_{i}"))
            outcome = hom_equality_outcome(stated, factored)
            if not outcome.passed:
                return outcome
    return Outcome.ok("12 factorisations")


def h_restriction_outcome(catalog: Catalog) -> Outcome:
    """Each h restricted to its two D^3 blocks gives its iota pair."""
    d3 = catalog.obj("D^3")
    for h_name, summands in H_SUMMANDS.items():
        h = catalog.map(h_name)
        for block, iota in enumerate(summands, start=1):
            restricted = compose_maps(block_inclusion([d3, d3], block), h)
            if restricted.components != catalog.map(iota).components:
                return Outcome.fail(f"{h_name} on block {block} is {restricted.format()}, expected {iota}")
    return Outcome.ok("6 arrows")


def literal_readings_outcome(catalog: Catalog) -> Outcome:
    """Every recorded literal reading still fails the way its record says."""
    problems: List[str] = []
    for name in ("k3", "iota2_2", "zeta_3"):
        literal = catalog.discrepancies[name].literal_map
        if literal is None or validate_map(literal).ok:
            problems.append(f"literal {name} unexpectedly valid")

    eta = catalog.discrepancies["eta2_2"].literal_map
    if eta is not None:
        for leg, iota in (("phi2_3", "iota3_2"), ("psi2_3", "iota4_2")):
            if compose_maps(catalog.map(leg), eta).components == catalog.map(iota).components:
                problems.append(f"literal eta2_2 reproduces {iota}")

    try:
        oplus_maps([catalog.map("iota4_1"), catalog.map("iota1_2")])
        problems.append("literal h31_1 typechecks")
    except TargetMismatchError:
        pass
    return Outcome.fail("; ".join(problems)) if problems else Outcome.ok(f"{len(catalog.discrepancies)} readings")


def catalog_checks(catalog: Catalog) -> List[Check]:
    return [
        Check(
            "catalog.dimensions",
            statement("B1").at("dimension table"),
            lambda: dimensions_outcome(catalog),
        ),
        Check("catalog.iota-composites", statement("G3").location, lambda: iota_outcome(catalog)),
        Check(
            "catalog.h-restrictions",
            statement("G4").at("hexagon arrows on D^3 blocks"),
            lambda: h_restriction_outcome(catalog),
        ),
        Check(
            "catalog.literal-readings",
            "discrepancy ledger",
            lambda: literal_readings_outcome(catalog),
        ),
    ]


# ----------------------------------------------------------------------
# Seeded laws
# ----------------------------------------------------------------------


def functoriality_outcome(seed: int, pairs: int, max_arity: int = 4) -> Outcome:
    """W_{g o f} = W_f o W_g on random composable pairs."""
    rng = random.Random(seed)
    for n in range(pairs):
        f, g = random_composable_pair(rng, max_arity=max_arity)
        outcome = hom_equality_outcome(
            induced_hom(compose_maps(f, g)), hom_compose(induced_hom(f), induced_hom(g))
        )
        if not outcome.passed:
            return Outcome.fail(f"pair {n} ({f}; {g}): {outcome.diagnostic}")
    return Outcome.ok(f"{pairs} pairs")


def oplus_outcome(seed: int, count: int, max_arity: int) -> Outcome:
    """Associativity, dimension additivity and block inclusions of ⊕."""
    rng = random.Random(seed)
    arity = max(1, max_arity // 2)
    for n in range(count):
        a, b, c = (random_object(rng, max_arity=arity) for _ in range(3))
        if oplus(oplus(a, b), c) != oplus(a, oplus(b, c)):
            return Outcome.fail(f"object {n}: ({a} + {b}) + {c} != {a} + ({b} + {c})")
        ab = oplus(a, b)
        if ab.dim != a.dim + b.dim - 1:
            return Outcome.fail(f"object {n}: dim {ab} = {ab.dim}, expected {a.dim + b.dim - 1}")
        for block in (1, 2):
            report = validate_map(block_inclusion([a, b], block))
            if not report.ok:
                return Outcome.fail(f"object {n}: block {block} inclusion {report.describe()}")
    return Outcome.ok(f"{count} triples")


def catalog_homs_outcome(catalog: Catalog) -> Outcome:
    """Every catalog W_f is unital and multiplicative."""
    for h in catalog.homs.values():
        if not h.is_unital():
            return Outcome.fail(f"{h.label} is not unital")
        defect = h.multiplicativity_defect()
        if defect is not None:
            return Outcome.fail(f"{h.label} is not multiplicative on {defect}")
    return Outcome.ok(f"{len(catalog.homs)} homs")


def property_checks(
    catalog: Catalog, seed: int, functoriality_pairs: int, random_objects: int, max_arity: int
) -> List[Check]:
    return [
        Check(
            "property.functoriality",
            statement("L1").location,
            lambda: functoriality_outcome(seed, functoriality_pairs),
        ),
        Check(
            "property.oplus",
            statement("L2").location,
            lambda: oplus_outcome(seed, random_objects, max_arity),
        ),
        Check(
            "property.catalog-homs",
            statement("L3").at("every catalog hom"),
            lambda: catalog_homs_outcome(catalog),
        ),
    ]
