"""
The named objects and maps behind both Jacobi identities.

Everything is built once by ``build_catalog``; every map is validated on
the way in and a failure aborts with the offending name. Readings that
had to be corrected are kept in ``discrepancies`` next to the adopted ones.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from src.algebra.simplicial import SimplicialObject, make_D_paren, make_Dn, oplus
from src.errors import KernelError
from src.harness.statements import Statement, statement
from src.morphisms.homs import AlgebraHom, induced_hom
from src.morphisms.maps import (
    ComponentLike,
    Coordinates,
    InfinitesimalMap,
    oplus_maps,
    validate_map,
)

logger = structlog.get_logger(__name__)

H31_CORRECTED = "corrected"
H31_LITERAL = "literal"


class CatalogError(KernelError):
    """A catalog entry failed to build or validate."""

    error_type = "catalog"


@dataclass(frozen=True)
class Discrepancy:
    """A written reading that had to be replaced, with the reason."""

    name: str
    literal: str
    adopted: str
    reason: str
    literal_map: Optional[InfinitesimalMap] = None


@dataclass(frozen=True)
class Catalog:
    objects: Mapping[str, SimplicialObject]
    maps: Mapping[str, InfinitesimalMap]
    homs: Mapping[str, AlgebraHom]
    provenance: Mapping[str, str]
    discrepancies: Mapping[str, Discrepancy] = field(default_factory=dict)

    def obj(self, name: str) -> SimplicialObject:
        return self.objects[name]

    def map(self, name: str) -> InfinitesimalMap:
        return self.maps[name]

    def hom(self, name: str) -> AlgebraHom:
        """W of the named map."""
        return self.homs[name]

    def names_of(self, obj: SimplicialObject) -> List[str]:
        return [name for name, candidate in self.objects.items() if candidate == obj]

    def statement_of(self, name: str) -> Statement:
        """The statement a named entry is introduced by."""
        return statement(self.provenance[name].split(":", 1)[0])


Builder = Callable[[Coordinates], Sequence[ComponentLike]]


class _CatalogBuilder:
    def __init__(self) -> None:
        self.objects: Dict[str, SimplicialObject] = {}
        self.maps: Dict[str, InfinitesimalMap] = {}
        self.provenance: Dict[str, str] = {}
        self.discrepancies: Dict[str, Discrepancy] = {}

    def _claim(self, name: str, location: str) -> None:
        if name in self.provenance:
            raise CatalogError(f"Duplicate catalog name {name!r}", details={"name": name})
        self.provenance[name] = location

    def add_object(self, name: str, obj: SimplicialObject, location: str) -> SimplicialObject:
        self._claim(name, location)
        self.objects[name] = obj
        return obj

    def add_map(self, f: InfinitesimalMap, location: str) -> InfinitesimalMap:
        assert f.name is not None
        report = validate_map(f)
        if not report.ok:
            raise CatalogError(
                f"Catalog map {f.name} is invalid: {report.describe()}",
                details={"name": f.name},
            )
        self._claim(f.name, location)
        self.maps[f.name] = f
        return f

    def define(self, name: str, source: str, target: str, builder: Builder, location: str) -> InfinitesimalMap:
        try:
            f = InfinitesimalMap.from_coordinates(
                self.objects[source], self.objects[target], builder, name
            )
        except KernelError as e:
            raise CatalogError(f"Catalog map {name} cannot be built: {e}", details={"name": name}) from e
        return self.add_map(f, location)

    def literal(
        self,
        name: str,
        source: str,
        target: str,
        builder: Builder,
        adopted: str,
        reason: str,
    ) -> None:
        f = InfinitesimalMap.from_coordinates(
            self.objects[source], self.objects[target], builder, f"{name}_literal"
        )
        self.discrepancies[name] = Discrepancy(name, f.format(), adopted, reason, f)

    def note(self, name: str, literal: str, adopted: str, reason: str) -> None:
        self.discrepancies[name] = Discrepancy(name, literal, adopted, reason)


def _at(key: str, detail: str) -> str:
    return statement(key).at(detail)


def _d4(*pairs: Tuple[int, int]) -> SimplicialObject:
    return SimplicialObject(4, frozenset(pairs))


def _seven(pairs: Sequence[Tuple[int, int]]) -> SimplicialObject:
    tail = [(i, 7) for i in range(1, 7)]
    return SimplicialObject(7, frozenset(list(pairs) + tail))


def _objects(b: _CatalogBuilder) -> None:
    b.add_object("D", make_Dn(1), _at("B1", "first-order infinitesimals"))
    b.add_object("D^2", make_Dn(2), _at("B1", "microsquares"))
    b.add_object("D^3", make_Dn(3), _at("B1", "microcubes"))
    b.add_object("D(2)", make_D_paren(2), _at("B1", "D(2): d1*d2 = 0"))
    b.add_object("D(3)", make_D_paren(3), _at("B1", "D(3): all pairwise products vanish"))
    b.add_object(
        "C",
        SimplicialObject(3, frozenset({(1, 3), (2, 3)})),
        _at("P1", "pullback apex D^3{(1,3),(2,3)}"),
    )
    b.add_object(
        "E",
        _d4((1, 3), (2, 3), (1, 4), (2, 4), (3, 4)),
        _at("P2", "hexagon apex D^4{(1,3),(2,3),(1,4),(2,4),(3,4)}"),
    )
    for pair, tag in (((2, 3), "1"), ((1, 3), "2"), ((1, 2), "3")):
        b.add_object(
            f"D^3{{({pair[0]},{pair[1]})}}",
            SimplicialObject(3, frozenset({pair})),
            _at("G1", f"common base of pullback {tag}"),
        )
    b.add_object("D^4{(2,4),(3,4)}", _d4((2, 4), (3, 4)), _at("G1", "apex of pullback 1"))
    b.add_object("D^4{(1,4),(3,4)}", _d4((1, 4), (3, 4)), _at("G1", "apex of pullback 2"))
    b.add_object("D^4{(1,4),(2,4)}", _d4((1, 4), (2, 4)), _at("G1", "apex of pullback 3"))
    b.add_object(
        "E[1]",
        _seven([(2, 6), (3, 6), (4, 6), (5, 6), (2, 4), (2, 5), (3, 4), (3, 5)]),
        _at("G2", "pullback of two D^4{(2,4),(3,4)} over D(2)"),
    )
    b.add_object(
        "E[2]",
        _seven([(1, 6), (3, 6), (4, 6), (5, 6), (1, 4), (1, 5), (3, 4), (3, 5)]),
        _at("G2", "pullback of two D^4{(1,4),(3,4)} over D(2)"),
    )
    b.add_object(
        "E[3]",
        _seven([(1, 6), (2, 6), (4, 6), (5, 6), (1, 4), (1, 5), (2, 4), (2, 5)]),
        _at("G2", "pullback of two D^4{(1,4),(2,4)} over D(2)"),
    )
    g_pairs = [(2, 4), (3, 4), (1, 5), (3, 5), (1, 6), (2, 6), (4, 5), (4, 6), (5, 6)]
    g_pairs += [(i, 7) for i in range(1, 7)] + [(i, 8) for i in range(1, 8)]
    b.add_object("G", SimplicialObject(8, frozenset(g_pairs)), _at("G4", "hexagon apex D^8{...}"))
    b.add_object("D^3(+)D^3", oplus(make_Dn(3), make_Dn(3)), _at("G4", "outer hexagon nodes"))


def _primordial_maps(b: _CatalogBuilder) -> None:
    b.define("phi", "D^2", "C", lambda d: (d[1], d[2], 0), _at("P1", "pullback leg (d1,d2,0)"))
    b.define(
        "psi", "D^2", "C", lambda d: (d[1], d[2], d[1] * d[2]),
        _at("P1", "pullback leg (d1,d2,d1d2)"),
    )
    b.define("incl_D(2)", "D(2)", "D^2", lambda d: (d[1], d[2]), _at("P1", "inclusion D(2) -> D^2"))
    b.define("l1", "D^2", "E", lambda d: (d[1], d[2], 0, 0), _at("P2", "hexagon leg"))
    b.define("l2", "D^2", "E", lambda d: (d[1], d[2], d[1] * d[2], 0), _at("P2", "hexagon leg"))
    b.define("l3", "D^2", "E", lambda d: (d[1], d[2], 0, d[1] * d[2]), _at("P2", "hexagon leg"))
    b.define("theta_1", "C", "E", lambda d: (d[1], d[2], d[3], 0), _at("P3", "C-hexagon leg"))
    b.define(
        "theta_2", "C", "E", lambda d: (d[1], d[2], d[1] * d[2] - d[3], d[3]),
        _at("P3", "C-hexagon leg")
    )
    b.define(
        "theta_3", "C", "E", lambda d: (d[1], d[2], 0, d[1] * d[2] - d[3]),
        _at("P3", "C-hexagon leg")
    )
    b.define("zeta", "D", "C", lambda d: (0, 0, d[1]), _at("P4", "coordinate map d -> (0,0,d)"))
    b.define("step_E_1", "D", "E", lambda d: (0, 0, d[1], 0), _at("P4", "first composite"))
    b.define("step_E_2", "D", "E", lambda d: (0, 0, -d[1], d[1]), _at("P4", "second composite"))
    b.define("step_E_3", "D", "E", lambda d: (0, 0, 0, -d[1]), _at("P4", "third composite"))
    b.define("s", "D(3)", "E", lambda d: (0, 0, d[1] - d[2], d[2] - d[3]), _at("P5", "sum witness"))
    for k in (1, 2, 3):
        b.define(
            f"axis_{k}",
            "D",
            "D(3)",
            lambda d, k=k: tuple(d[1] if j == k else 0 for j in (1, 2, 3)),
            _at("P5", f"D(3) axis {k}"),
        )
    b.define("diag_3", "D", "D(3)", lambda d: (d[1], d[1], d[1]), _at("P5", "D(3) diagonal"))


def _pullback_maps(b: _CatalogBuilder) -> None:
    bases = {1: "D^3{(2,3)}", 2: "D^3{(1,3)}", 3: "D^3{(1,2)}"}
    apexes = {1: "D^4{(2,4),(3,4)}", 2: "D^4{(1,4),(3,4)}", 3: "D^4{(1,4),(2,4)}"}
    incl_names = {1: "incl_23", 2: "incl_13", 3: "incl_12"}
    psi_last = {
        1: lambda d: d[2] * d[3],
        2: lambda d: d[1] * d[3],
        3: lambda d: d[1] * d[2],
    }
    for i in (1, 2, 3):
        b.define(
            incl_names[i],
            bases[i],
            "D^3",
            lambda d: (d[1], d[2], d[3]),
            _at("G1", f"inclusion of the base of pullback {i}"),
        )
        b.define(
            f"phi{i}_3",
            "D^3",
            apexes[i],
            lambda d: (d[1], d[2], d[3], 0),
            _at("G1", f"leg of pullback {i}"),
        )
        b.define(
            f"psi{i}_3",
            "D^3",
            apexes[i],
            lambda d, i=i: (d[1], d[2], d[3], psi_last[i](d)),
            _at("G1", f"leg of pullback {i}"),
        )

    # zeta_i and the D(2) inclusions share their components
    slots = {
        1: lambda d: (d[1], 0, 0, d[2]),
        2: lambda d: (0, d[1], 0, d[2]),
        3: lambda d: (0, 0, d[1], d[2]),
    }
    for i in (1, 2, 3):
        b.define(f"zeta_{i}", "D^2", apexes[i], slots[i], _at("G2", f"coordinates in {apexes[i]}"))
    b.literal(
        "zeta_3",
        "D^2",
        apexes[2],
        lambda d: (0, 0, d[1], d[2]),
        "(0,0,d1,d2) into D^4{(1,4),(2,4)}",
        "target written as D^4{(1,4),(3,4)}; there d3*d4 = 0 fails since d1*d2 != 0",
    )
    for i in (1, 2, 3):
        b.define(f"i{i}4_{i}", "D(2)", apexes[i], slots[i], _at("G2", f"D(2) into {apexes[i]}"))


def _eta_iota_maps(b: _CatalogBuilder) -> None:
    apexes = {1: "D^4{(2,4),(3,4)}", 2: "D^4{(1,4),(3,4)}", 3: "D^4{(1,4),(2,4)}"}
    for i in (1, 2, 3):
        b.define(
            f"eta1_{i}",
            apexes[i],
            f"E[{i}]",
            lambda d: (d[1], d[2], d[3], 0, 0, d[4], 0),
            _at("G2", f"first leg of the E[{i}] pullback"),
        )
    b.define(
        "eta2_1", apexes[1], "E[1]",
        lambda d: (d[1], 0, 0, d[2], d[3], d[4], d[1] * d[4]),
        _at("G2", "second leg of the E[1] pullback"),
    )
    b.define(
        "eta2_2", apexes[2], "E[2]",
        lambda d: (0, d[2], 0, d[3], d[1], d[4], d[2] * d[4]),
        _at("G2", "second leg of the E[2] pullback"),
    )
    b.literal(
        "eta2_2",
        apexes[2],
        "E[2]",
        lambda d: (0, d[2], 0, d[1], d[3], d[4], d[2] * d[4]),
        "(0,d2,0,d3,d1,d4,d2d4)",
        "composing the written leg with phi2_3/psi2_3 does not give the written iota3_2/iota4_2",
    )
    b.define(
        "eta2_3", apexes[3], "E[3]",
        lambda d: (0, 0, d[3], d[1], d[2], d[4], d[3] * d[4]),
        _at("G2", "second leg of the E[3] pullback"),
    )

    # stated forms; catalog checks compare them with eta o phi / eta o psi
    iota = {
        (1, 1): lambda d: (d[1], d[2], d[3], 0, 0, 0, 0),
        (2, 1): lambda d: (d[1], d[2], d[3], 0, 0, d[2] * d[3], 0),
        (3, 1): lambda d: (d[1], 0, 0, d[2], d[3], 0, 0),
        (4, 1): lambda d: (d[1], 0, 0, d[2], d[3], d[2] * d[3], d[1] * d[2] * d[3]),
        (1, 2): lambda d: (d[1], d[2], d[3], 0, 0, 0, 0),
        (2, 2): lambda d: (d[1], d[2], d[3], 0, 0, d[1] * d[3], 0),
        (3, 2): lambda d: (0, d[2], 0, d[3], d[1], 0, 0),
        (4, 2): lambda d: (0, d[2], 0, d[3], d[1], d[1] * d[3], d[1] * d[2] * d[3]),
        (1, 3): lambda d: (d[1], d[2], d[3], 0, 0, 0, 0),
        (2, 3): lambda d: (d[1], d[2], d[3], 0, 0, d[1] * d[2], 0),
        (3, 3): lambda d: (0, 0, d[3], d[1], d[2], 0, 0),
        (4, 3): lambda d: (0, 0, d[3], d[1], d[2], d[1] * d[2], d[1] * d[2] * d[3]),
    }
    composite_of = {1: ("eta1", "phi"), 2: ("eta1", "psi"), 3: ("eta2", "phi"), 4: ("eta2", "psi")}
    for (j, i), builder in iota.items():
        eta, leg = composite_of[j]
        b.define(
            f"iota{j}_{i}", "D^3", f"E[{i}]", builder,
            _at("G3", f"{eta}_{i} o {leg}{i}_3 into E[{i}]")
        )
    b.literal(
        "iota2_2",
        "D^3",
        "E[2]",
        lambda d: (d[1], d[2], d[3], 0, 0, d[2] * d[3], 0),
        "(d1,d2,d3,0,0,d1d3,0) = eta1_2 o psi2_3",
        "(1,6) is forbidden in E[2] but d1*d2*d3 != 0 in D^3",
    )


def _general_maps(b: _CatalogBuilder, h31_reading: str) -> None:
    pairs = {
        "h12_1": ("iota2_1", "iota3_1"),
        "h12_2": ("iota4_2", "iota1_2"),
        "h23_2": ("iota2_2", "iota3_2"),
        "h23_3": ("iota4_3", "iota1_3"),
        "h31_3": ("iota2_3", "iota3_3"),
        "h31_1": ("iota4_1", "iota1_1" if h31_reading == H31_CORRECTED else "iota1_2"),
    }
    for name, (first, second) in pairs.items():
        # a literal h31_1 raises TargetMismatchError here on purpose
        combined = oplus_maps([b.maps[first], b.maps[second]], name=name)
        b.add_map(combined, _at("G4", f"hexagon arrow {first} (+) {second}"))
    b.note(
        "h31_1",
        "iota4_1 (+) iota1_2",
        "iota4_1 (+) iota1_1",
        "written as iota4_1 (+) iota1_2, whose summands land in E[1] and E[2]",
    )

    b.define(
        "k1", "E[1]", "G",
        lambda d: (
            d[1], d[2] + d[4], d[3] + d[5],
            d[6] - d[2] * d[3] - d[4] * d[5],
            -d[1] * d[5], d[1] * d[4],
            d[7] + d[1] * d[2] * d[3], d[1] * d[2] * d[3],
        ),
        _at("G4", "hexagon leg from E[1]"),
    )
    b.define(
        "k2", "E[2]", "G",
        lambda d: (
            d[1] + d[5], d[2], d[3] + d[4],
            -d[2] * d[3],
            d[6] - d[1] * d[3] - d[4] * d[5],
            d[1] * d[2],
            d[2] * d[4] * d[5], d[7],
        ),
        _at("G4", "hexagon leg from E[2]"),
    )
    b.define(
        "k3", "E[3]", "G",
        lambda d: (
            d[1] + d[4], d[2] + d[5], d[3],
            -d[3] * d[5], -d[1] * d[3], d[6],
            -d[7] + d[1] * d[2] * d[3] + d[3] * d[4] * d[5],
            -d[7] + d[3] * d[4] * d[5],
        ),
        _at("G4", "hexagon leg from E[3]"),
    )
    b.literal(
        "k3",
        "E[3]",
        "G",
        lambda d: (
            d[1] + d[4], d[2] + d[5], d[3],
            -d[4] * d[5], -d[1] * d[3], d[6],
            -d[7], -d[7] + d[3] * d[4] * d[5],
        ),
        "(d1+d4, d2+d5, d3, -d3d5, -d1d3, d6, -d7+d1d2d3+d3d4d5, -d7+d3d4d5)",
        "fourth component -d4d5 breaks the forbidden pair (3,4) of G",
    )

    for i in (1, 2, 3):
        b.define(
            f"mu_{i}",
            "C",
            f"E[{i}]",
            lambda d, i=i: tuple(d[1] if j == i else 0 for j in (1, 2, 3)) + (0, 0, d[2], d[3]),
            _at("G5", f"C into E[{i}] for proof step {i}"),
        )
    b.define("step_G_1", "D", "G", lambda d: (0,) * 6 + (d[1], 0), _at("G5", "first composite"))
    b.define("step_G_2", "D", "G", lambda d: (0,) * 6 + (0, d[1]), _at("G5", "second composite"))
    b.define(
        "step_G_3", "D", "G", lambda d: (0,) * 6 + (-d[1], -d[1]), _at("G5", "third composite")
    )
    b.define(
        "t", "D(3)", "G", lambda d: (0,) * 6 + (d[1] - d[3], d[2] - d[3]), _at("G6", "sum witness")
    )


def build_catalog(h31_reading: str = H31_CORRECTED) -> Catalog:
    """
    Construct and validate every named object and map.

    ``h31_reading="literal"`` rebuilds the sixth hexagon arrow as written,
    which fails with a target mismatch.
    """
    b = _CatalogBuilder()
    _objects(b)
    _primordial_maps(b)
    _pullback_maps(b)
    _eta_iota_maps(b)
    _general_maps(b, h31_reading)

    homs = {name: induced_hom(f) for name, f in b.maps.items()}
    logger.info(
        "Catalog built",
        objects=len(b.objects),
        maps=len(b.maps),
        discrepancies=len(b.discrepancies),
    )
    return Catalog(
        objects=dict(b.objects),
        maps=dict(b.maps),
        homs=homs,
        provenance=dict(b.provenance),
        discrepancies=dict(b.discrepancies),
    )
