"""
The statements the catalog and the checks are keyed to.

Each statement has a stable key (``B`` for the objects, ``P`` for the
primordial identity, ``G`` for the general one, ``L`` for the laws) and
the claim it makes. Catalog provenance and check locations both start
with the key, so a report line can be traced back to the claim it
certifies and golden files survive reordering.
"""

from dataclasses import dataclass
from typing import Dict


@dataclass(frozen=True)
class Statement:
    key: str
    claim: str

    @property
    def location(self) -> str:
        return f"{self.key} {self.claim}"

    def at(self, detail: str) -> str:
        """Location of one item within the statement."""
        return f"{self.key}: {detail}"


STATEMENTS: Dict[str, Statement] = {
    s.key: s
    for s in (
        Statement("B1", "infinitesimal objects D^n{p} and their Weil algebras"),
        Statement("P1", "W_C is the pullback of two W_{D^2} over W_{D(2)}"),
        Statement("P2", "W_E is the limit of the hexagon of microsquares"),
        Statement("P3", "W_E is the limit of the hexagon of W_C"),
        Statement("P4", "zeta then theta_k gives the k-th proof step"),
        Statement("P5", "the three proof steps sum to zero through s : D(3) -> E"),
        Statement("P6", "mediators into W_E have a closed form"),
        Statement("G1", "each W_{D^4{...}} is a pullback of two W_{D^3} over W_{D^3{(i,j)}}"),
        Statement("G2", "each W_{E[i]} is a pullback of two W_{D^4{...}} over W_{D(2)}"),
        Statement("G3", "the iota maps are eta o phi and eta o psi"),
        Statement("G4", "W_G is the limit of the hexagon of the W_{E[i]}"),
        Statement("G5", "zeta then mu_k then k_k gives the k-th proof step"),
        Statement("G6", "the three proof steps sum to zero through t : D(3) -> G"),
        Statement("G7", "mediators into W_G have a closed form"),
        Statement("L1", "W is contravariant on composition"),
        Statement("L2", "direct sums of simplicial objects"),
        Statement("L3", "induced maps are unital algebra homomorphisms"),
    )
}


def statement(key: str) -> Statement:
    return STATEMENTS[key]
