"""
Seeded random objects and valid maps for the law suites.

Components have degree at most 3 and integer coefficients in -2..2. Maps are
rejection-sampled; after repeated rejections the sampler thins the
components out, and the zero map is the last resort, so sampling always
terminates.
"""

import random
from itertools import combinations
from typing import List, Tuple

from src.algebra.simplicial import SimplicialObject
from src.algebra.weil import WeilElement
from src.morphisms.maps import InfinitesimalMap, validate_map

MAX_DEGREE = 3
COEFFICIENTS = (-2, -1, 1, 2)


def random_object(
    rng: random.Random,
    max_arity: int = 8,
    min_arity: int = 1,
    pair_density: float = 0.3,
    triple_density: float = 0.05,
) -> SimplicialObject:
    n = rng.randint(min_arity, max_arity)
    family: List[Tuple[int, ...]] = []
    for pair in combinations(range(1, n + 1), 2):
        if rng.random() < pair_density:
            family.append(pair)
    for triple in combinations(range(1, n + 1), 3):
        if rng.random() < triple_density:
            family.append(triple)
    return SimplicialObject(n, frozenset(family))


def random_element(
    rng: random.Random,
    obj: SimplicialObject,
    density: float = 0.35,
    max_degree: int = MAX_DEGREE,
) -> WeilElement:
    """Random element without constant term."""
    terms = {
        m: rng.choice(COEFFICIENTS)
        for m in obj.basis[1:]
        if len(m) <= max_degree and rng.random() < density
    }
    return WeilElement(obj, terms)


def _nilpotent_component(
    rng: random.Random, obj: SimplicialObject, density: float, attempts: int
) -> WeilElement:
    for _ in range(attempts):
        candidate = random_element(rng, obj, density)
        if candidate.mul(candidate).is_zero():
            return candidate
    return WeilElement.zero(obj)


def random_map(
    rng: random.Random,
    source: SimplicialObject,
    target: SimplicialObject,
    attempts: int = 40,
) -> InfinitesimalMap:
    """A valid map ``source -> target`` drawn from ``rng``."""
    density = 0.35
    for attempt in range(attempts):
        if attempt and attempt % 10 == 0:
            density /= 2
        components = tuple(
            _nilpotent_component(rng, source, density, attempts=8) for _ in range(target.arity)
        )
        candidate = InfinitesimalMap(source, target, components, f"random_{attempt}")
        if validate_map(candidate).ok:
            return candidate
    return InfinitesimalMap.zero(source, target)


def random_composable_pair(
    rng: random.Random, max_arity: int = 4
) -> Tuple[InfinitesimalMap, InfinitesimalMap]:
    """Valid f: A -> B and g: B -> C on small random objects."""
    a, b, c = (random_object(rng, max_arity=max_arity) for _ in range(3))
    return random_map(rng, a, b), random_map(rng, b, c)
