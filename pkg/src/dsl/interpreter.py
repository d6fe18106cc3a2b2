"""
Script execution.

A script runs in two passes. The first resolves every name and checks
every shape without evaluating a single polynomial, so an unknown name on
the last line is reported before any work is done. The second builds and
validates the maps in order, prints ``dim`` results, and turns each
``check`` statement into a harness ``Check``; the checks then run through
the same concurrent runner as the built-in verifications.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Type

import anyio
import structlog

from src.algebra.simplicial import (
    ObjectDefinitionError,
    SimplicialObject,
    make_D_paren,
    make_Dn,
    oplus_all,
)
from src.dsl.ast import (
    ComposeCheck,
    DimStmt,
    DParenObject,
    LimitCheck,
    MapStmt,
    NameRef,
    ObjExpr,
    ObjRef,
    ObjStmt,
    OplusExpr,
    Position,
    Script,
    Statement,
    UseStmt,
    ZeroSumCheck,
)
from src.dsl.errors import (
    RedefinitionError,
    ScriptArityError,
    ScriptError,
    ScriptValidationError,
    UnknownNameError,
)
from src.dsl.guards import ScriptLimits, check_arity, check_script_size
from src.dsl.parser import parse
from src.dsl.printer import format_object
from src.errors import KernelError
from src.harness.catalog import Catalog, build_catalog
from src.harness.checks import (
    Check,
    CheckResult,
    Outcome,
    hom_equality_outcome,
    limit_outcome,
    validity_outcome,
)
from src.harness.runner import run_checks_concurrently
from src.limits.diagram import ShapeMismatchError, chain_diagram, cone_over
from src.models.config import HarnessSettings
from src.morphisms.homs import induced_hom
from src.morphisms.maps import InfinitesimalMap, compose_maps, validate_map
from src.observability.metrics import get_metrics
from src.observability.tracing import trace_statement

logger = structlog.get_logger(__name__)

CatalogProvider = Callable[[], Catalog]


@dataclass
class ScriptResult:
    """Everything a script produced."""
    source: str
    results: List[CheckResult] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)
    objects: Dict[str, SimplicialObject] = field(default_factory=dict)
    maps: Dict[str, InfinitesimalMap] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


@dataclass(frozen=True)
class _Signature:
    source: SimplicialObject
    target: SimplicialObject


def statement_kind(stmt: Statement) -> str:
    if isinstance(stmt, LimitCheck):
        return stmt.kind
    return {
        ObjStmt: "obj",
        MapStmt: "map",
        UseStmt: "use",
        DimStmt: "dim",
        ComposeCheck: "compose",
        ZeroSumCheck: "zero-sum",
    }[type(stmt)]


# ----------------------------------------------------------------------
# Pass 1: names and shapes
# ----------------------------------------------------------------------


class ScriptAnalyzer:
    """Resolves names and checks shapes; builds objects but no maps."""

    def __init__(self, source: str, limits: ScriptLimits, catalog: CatalogProvider):
        self.source = source
        self.limits = limits
        self._catalog = catalog
        self.objects: Dict[str, SimplicialObject] = {}
        self.signatures: Dict[str, _Signature] = {}
        self.defined_at: Dict[str, Position] = {}

    def error(self, cls: Type[ScriptError], message: str, pos: Position, **details) -> ScriptError:
        return cls(message, pos.line, pos.col, self.source, details=details or None)

    def declare(self, name: str, pos: Position) -> None:
        if name in self.defined_at:
            first = self.defined_at[name]
            raise self.error(
                RedefinitionError, f"{name} is already defined on line {first.line}", pos, name=name
            )
        self.defined_at[name] = pos

    def resolve_object(self, expr: ObjExpr) -> SimplicialObject:
        if isinstance(expr, ObjRef):
            if expr.name in self.objects:
                return self.objects[expr.name]
            hint = " (it names a map)" if expr.name in self.signatures else ""
            raise self.error(UnknownNameError, f"no object named {expr.name}{hint}", expr.pos, name=expr.name)
        if isinstance(expr, OplusExpr):
            operands = [self.resolve_object(o) for o in expr.operands]
            check_arity(sum(o.arity for o in operands), expr.pos, self.limits, self.source)
            return oplus_all(operands)

        if expr.arity < 1:
            raise self.error(ScriptArityError, "an object needs at least one coordinate", expr.pos)
        check_arity(expr.arity, expr.pos, self.limits, self.source)
        if isinstance(expr, DParenObject):
            return make_D_paren(expr.arity)
        try:
            return SimplicialObject(expr.arity, frozenset(expr.forbidden))
        except ObjectDefinitionError as e:
            raise self.error(ScriptArityError, e.message, expr.pos) from e

    def resolve_map(self, ref: NameRef) -> _Signature:
        if ref.name in self.signatures:
            return self.signatures[ref.name]
        hint = " (it names an object)" if ref.name in self.objects else ""
        raise self.error(UnknownNameError, f"no map named {ref.name}{hint}", ref.pos, name=ref.name)

    def analyze(self, script: Script) -> None:
        for stmt in script.statements:
            self.statement(stmt)

    def statement(self, stmt: Statement) -> None:
        if isinstance(stmt, ObjStmt):
            obj = self.resolve_object(stmt.expr)
            self.declare(stmt.name, stmt.pos)
            self.objects[stmt.name] = obj
        elif isinstance(stmt, MapStmt):
            self._map(stmt)
        elif isinstance(stmt, UseStmt):
            self._use(stmt)
        elif isinstance(stmt, DimStmt):
            self.resolve_object(stmt.expr)
        elif isinstance(stmt, LimitCheck):
            self._limit(stmt)
        elif isinstance(stmt, ComposeCheck):
            for ref in (stmt.outer, stmt.inner, stmt.expected):
                self.resolve_map(ref)
        elif isinstance(stmt, ZeroSumCheck):
            self.resolve_map(stmt.witness)
            for ref in stmt.parts:
                self.resolve_map(ref)
            if not stmt.parts:
                raise self.error(ScriptArityError, "zero-sum needs at least one part", stmt.pos)

    def _map(self, stmt: MapStmt) -> None:
        source = self.resolve_object(stmt.source)
        target = self.resolve_object(stmt.target)
        if len(stmt.components) != target.arity:
            raise self.error(
                ScriptArityError,
                f"map {stmt.name} has {len(stmt.components)} components, {target} needs {target.arity}",
                stmt.pos,
                components=len(stmt.components),
                arity=target.arity,
            )
        positions = stmt.component_positions or (stmt.pos,) * len(stmt.components)
        for poly, pos in zip(stmt.components, positions):
            for i in poly.indices():
                if not 1 <= i <= source.arity:
                    raise self.error(
                        ScriptArityError,
                        f"coordinate d{i} does not exist on {source}",
                        pos,
                        index=i,
                        arity=source.arity,
                    )
        self.declare(stmt.name, stmt.pos)
        self.signatures[stmt.name] = _Signature(source, target)

    def _use(self, stmt: UseStmt) -> None:
        catalog = self._catalog()
        if stmt.catalog_name in catalog.objects:
            self.declare(stmt.name, stmt.pos)
            self.objects[stmt.name] = catalog.obj(stmt.catalog_name)
        elif stmt.catalog_name in catalog.maps:
            f = catalog.map(stmt.catalog_name)
            self.declare(stmt.name, stmt.pos)
            self.signatures[stmt.name] = _Signature(f.source, f.target)
        else:
            raise self.error(
                UnknownNameError,
                f"no catalog entry named {stmt.catalog_name}",
                stmt.pos,
                name=stmt.catalog_name,
            )

    def _limit(self, stmt: LimitCheck) -> None:
        self.resolve_object(stmt.apex)
        for ref in (*stmt.legs, *stmt.arrows):
            self.resolve_map(ref)
        n = len(stmt.legs)
        cyclic = stmt.kind == "limit"
        needed = 2 * n if cyclic else 2 * (n - 1)
        if n < (1 if cyclic else 2) or len(stmt.arrows) != needed:
            raise self.error(
                ScriptArityError,
                f"{stmt.kind} with {n} legs needs {max(needed, 2)} arrows, got {len(stmt.arrows)}",
                stmt.pos,
                legs=n,
                arrows=len(stmt.arrows),
            )


# ----------------------------------------------------------------------
# Check bodies
# ----------------------------------------------------------------------


def limit_check_outcome(
    apex: SimplicialObject,
    legs: Sequence[InfinitesimalMap],
    arrows: Sequence[InfinitesimalMap],
    cyclic: bool,
) -> Outcome:
    for leg in legs:
        if leg.target != apex:
            raise ShapeMismatchError(f"leg {leg.label} lands in {leg.target}, apex is {apex}")
    diagram = chain_diagram([leg.source for leg in legs], [induced_hom(a) for a in arrows], cyclic)
    return limit_outcome(diagram, cone_over(diagram, apex, [induced_hom(leg) for leg in legs]))


def compose_outcome(
    outer: InfinitesimalMap, inner: InfinitesimalMap, expected: InfinitesimalMap
) -> Outcome:
    """Compare W of ``outer ∘ inner`` with W of ``expected``."""
    composite = compose_maps(inner, outer)
    if (composite.source, composite.target) != (expected.source, expected.target):
        return Outcome.fail(
            f"{outer.label} . {inner.label} runs {composite.source} -> {composite.target}, "
            f"{expected.label} runs {expected.source} -> {expected.target}"
        )
    return hom_equality_outcome(induced_hom(composite), induced_hom(expected))


def zero_sum_outcome(witness: InfinitesimalMap, parts: Sequence[InfinitesimalMap]) -> Outcome:
    """
    ``witness`` out of D(n) restricts to ``parts`` on the axes and to zero
    on the diagonal, so the parts sum to zero.
    """
    n = len(parts)
    cube = make_D_paren(n)
    if witness.source != cube:
        raise ShapeMismatchError(f"witness {witness.label} starts at {witness.source}, expected {cube}")
    validity = validity_outcome(witness)
    if not validity.passed:
        return validity

    d = make_Dn(1)
    for k, part in enumerate(parts, start=1):
        axis = InfinitesimalMap.from_coordinates(
            d, cube, lambda c, k=k: tuple(c[1] if j == k else 0 for j in range(1, n + 1)), f"axis_{k}"
        )
        outcome = compose_outcome(witness, axis, part)
        if not outcome.passed:
            return Outcome.fail(f"part {k}: {outcome.diagnostic}")

    diagonal = InfinitesimalMap.from_coordinates(d, cube, lambda c: (c[1],) * n, "diagonal")
    zero = InfinitesimalMap.zero(d, witness.target).renamed("0")
    outcome = compose_outcome(witness, diagonal, zero)
    if not outcome.passed:
        return Outcome.fail(f"diagonal: {outcome.diagnostic}")
    return Outcome.ok(f"{n} parts sum to zero through {witness.label}")


# ----------------------------------------------------------------------
# Pass 2: evaluation
# ----------------------------------------------------------------------


class ScriptInterpreter:
    """Evaluates an analysed script."""

    def __init__(
        self,
        source: str = "<script>",
        settings: Optional[HarnessSettings] = None,
        catalog: Optional[Catalog] = None,
    ):
        self.source = source
        self.settings = settings or HarnessSettings()
        self.limits = ScriptLimits(self.settings.max_script_bytes, self.settings.max_arity)
        self._catalog = catalog
        self.maps: Dict[str, InfinitesimalMap] = {}
        self.checks: List[Check] = []
        self.outputs: List[str] = []
        self._metrics = get_metrics()

    def catalog(self) -> Catalog:
        if self._catalog is None:
            self._catalog = build_catalog()
        return self._catalog

    def location(self, pos: Position) -> str:
        return f"{self.source}:{pos.line}:{pos.col}"

    def run(self, text: str) -> ScriptResult:
        """
        Parse, analyse and evaluate ``text``.

        Raises:
            ScriptError: Parse, name, shape or input-limit problems (nothing is evaluated)
            ScriptValidationError: A map statement defines an invalid map
        """
        check_script_size(text, self.limits, self.source)
        script = parse(text, self.source)
        analyzer = ScriptAnalyzer(self.source, self.limits, self.catalog)
        analyzer.analyze(script)

        for stmt in script.statements:
            kind = statement_kind(stmt)
            with trace_statement(kind, stmt.pos.line):
                try:
                    self.evaluate(stmt, analyzer)
                except KernelError:
                    self._metrics.record_statement(kind, success=False)
                    raise
            self._metrics.record_statement(kind)

        results = anyio.run(
            run_checks_concurrently,
            self.checks,
            self.settings.parallel,
            self.settings.check_timeout_seconds,
        )
        logger.info(
            "Script finished",
            source=self.source,
            statements=len(script.statements),
            checks=len(results),
            failed=sum(1 for r in results if not r.passed),
        )
        return ScriptResult(self.source, results, self.outputs, dict(analyzer.objects), dict(self.maps))

    def evaluate(self, stmt: Statement, analyzer: ScriptAnalyzer) -> None:
        if isinstance(stmt, MapStmt):
            self.maps[stmt.name] = self._build_map(stmt, analyzer.signatures[stmt.name])
        elif isinstance(stmt, UseStmt):
            if stmt.catalog_name in self.catalog().maps:
                self.maps[stmt.name] = self.catalog().map(stmt.catalog_name).renamed(stmt.name)
        elif isinstance(stmt, DimStmt):
            obj = analyzer.resolve_object(stmt.expr)
            self.outputs.append(f"dim {format_object(stmt.expr)} = {obj.dim}")
        elif isinstance(stmt, (LimitCheck, ComposeCheck, ZeroSumCheck)):
            self.checks.append(self._check(stmt, analyzer))

    def _build_map(self, stmt: MapStmt, signature: _Signature) -> InfinitesimalMap:
        try:
            f = InfinitesimalMap(
                signature.source,
                signature.target,
                tuple(p.evaluate(signature.source) for p in stmt.components),
                stmt.name,
            )
        except KernelError as e:
            raise ScriptValidationError(
                f"map {stmt.name}: {e.message}", stmt.pos.line, stmt.pos.col, self.source
            ) from e
        report = validate_map(f)
        if not report.ok:
            logger.info("Invalid script map", name=stmt.name, line=stmt.pos.line)
            raise ScriptValidationError(
                f"map {stmt.name} is not a map {f.source} -> {f.target}: {report.describe()}",
                stmt.pos.line,
                stmt.pos.col,
                self.source,
                details={"map": stmt.name},
            )
        return f

    def _check(self, stmt: Statement, analyzer: ScriptAnalyzer) -> Check:
        kind = statement_kind(stmt)
        check_id = f"script.L{stmt.pos.line:04d}.{kind}"
        taken = {c.check_id for c in self.checks}
        if check_id in taken:
            check_id = f"{check_id}.C{stmt.pos.col:03d}"
        location = self.location(stmt.pos)
        maps = self.maps

        if isinstance(stmt, LimitCheck):
            apex = analyzer.resolve_object(stmt.apex)
            legs = [maps[r.name] for r in stmt.legs]
            arrows = [maps[r.name] for r in stmt.arrows]
            cyclic = stmt.kind == "limit"
            return Check(check_id, location, lambda: limit_check_outcome(apex, legs, arrows, cyclic))
        if isinstance(stmt, ComposeCheck):
            outer, inner, expected = (maps[r.name] for r in (stmt.outer, stmt.inner, stmt.expected))
            return Check(check_id, location, lambda: compose_outcome(outer, inner, expected))
        assert isinstance(stmt, ZeroSumCheck)
        witness = maps[stmt.witness.name]
        parts = [maps[r.name] for r in stmt.parts]
        return Check(check_id, location, lambda: zero_sum_outcome(witness, parts))


def run_script(
    text: str,
    source: str = "<script>",
    settings: Optional[HarnessSettings] = None,
    catalog: Optional[Catalog] = None,
) -> ScriptResult:
    """Run a script and collect its check results."""
    return ScriptInterpreter(source, settings, catalog).run(text)
