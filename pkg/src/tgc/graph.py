"""The theory graph: theories as nodes, morphisms as (parallel-capable) edges.

Graph values are snapshots.  Every mutation returns a new graph; queries never
change the graph they are given.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce
from types import MappingProxyType
from typing import Mapping

from .kernel import Derivation, Formula, alpha_eq
from .morphism import Morphism, compose, translate_formula, verify
from .theory import Theory, Transported, add_theorem, is_flagged


class GraphError(Exception):
    code = "E-GRAPH"


class DuplicateId(GraphError):
    code = "E-DUP-NAME"


class DanglingEndpoint(GraphError):
    code = "E-UNKNOWN-REF"


class UnknownTheory(GraphError):
    code = "E-UNKNOWN-REF"


class UnknownMorphism(GraphError):
    code = "E-UNKNOWN-REF"


class UnknownTheorem(GraphError):
    code = "E-UNKNOWN-REF"


class UnknownDerivation(GraphError):
    code = "E-UNKNOWN-REF"


class PathMismatch(GraphError):
    code = "E-PATH-MISMATCH"


class UnverifiedPath(GraphError):
    code = "E-UNVERIFIED-PATH"


@dataclass(frozen=True)
class NamedDerivation:
    id: str
    theory: str
    derivation: Derivation = field(compare=False, repr=False)
    proves: str | None = None


def _ro(d) -> Mapping:
    return MappingProxyType(dict(d))


@dataclass(frozen=True, eq=False)
class TheoryGraph:
    theories: Mapping[str, Theory] = field(default_factory=dict)
    morphisms: Mapping[str, Morphism] = field(default_factory=dict)
    derivations: Mapping[str, NamedDerivation] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("theories", "morphisms", "derivations"):
            object.__setattr__(self, name, _ro(getattr(self, name)))

    def theory(self, id: str) -> Theory:
        try:
            return self.theories[id]
        except KeyError:
            raise UnknownTheory(f"no theory named {id!r}") from None

    def morphism(self, id: str) -> Morphism:
        try:
            return self.morphisms[id]
        except KeyError:
            raise UnknownMorphism(f"no morphism named {id!r}") from None

    def derivation(self, id: str) -> NamedDerivation:
        try:
            return self.derivations[id]
        except KeyError:
            raise UnknownDerivation(f"no derivation named {id!r}") from None

    def add_theory(self, t: Theory) -> "TheoryGraph":
        if t.id in self.theories:
            raise DuplicateId(f"theory {t.id!r} already in the graph")
        return replace(self, theories={**self.theories, t.id: t})

    def add_morphism(self, m: Morphism) -> "TheoryGraph":
        if m.id in self.morphisms:
            raise DuplicateId(f"morphism {m.id!r} already in the graph")
        for end in (m.source, m.target):
            if end not in self.theories:
                raise DanglingEndpoint(f"morphism {m.id} refers to missing theory {end!r}")
        return replace(self, morphisms={**self.morphisms, m.id: m})

    def add_derivation(self, d: NamedDerivation) -> "TheoryGraph":
        if d.id in self.derivations:
            raise DuplicateId(f"derivation {d.id!r} already in the graph")
        if d.theory not in self.theories:
            raise DanglingEndpoint(f"derivation {d.id} refers to missing theory {d.theory!r}")
        return replace(self, derivations={**self.derivations, d.id: d})

    def update_theory(self, t: Theory) -> "TheoryGraph":
        if t.id not in self.theories:
            raise UnknownTheory(f"no theory named {t.id!r}")
        return replace(self, theories={**self.theories, t.id: t})

    def update_morphism(self, m: Morphism) -> "TheoryGraph":
        self.morphism(m.id)
        return replace(self, morphisms={**self.morphisms, m.id: m})

    def incoming(self, target: str) -> list[Morphism]:
        return sorted((m for m in self.morphisms.values() if m.target == target), key=lambda m: m.id)


def add_theory(g: TheoryGraph, t: Theory) -> TheoryGraph:
    return g.add_theory(t)


def add_morphism(g: TheoryGraph, m: Morphism) -> TheoryGraph:
    return g.add_morphism(m)


@dataclass(frozen=True)
class MorphismPath:
    edges: tuple[str, ...]
    composite: Morphism = field(compare=False, repr=False)

    @property
    def source(self) -> str:
        return self.composite.source

    @property
    def target(self) -> str:
        return self.composite.target


def make_path(g: TheoryGraph, edges) -> MorphismPath:
    edges = tuple(edges)
    if not edges:
        raise PathMismatch("a path needs at least one morphism")
    ms = [g.morphism(e) for e in edges]
    for a, b in zip(ms, ms[1:]):
        if a.target != b.source:
            raise PathMismatch(f"{a.id} ends at {a.target} but {b.id} starts at {b.source}")
    return MorphismPath(edges, reduce(compose, ms))


def backward_reach(g: TheoryGraph, target: str, max_depth: int) -> list[tuple[str, MorphismPath]]:
    """All edge-simple paths of length <= max_depth that end at ``target``.

    Ordered by length, then by the list of edge ids.
    """
    g.theory(target)
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    found: list[tuple[str, ...]] = []
    frontier: list[tuple[str, ...]] = [(m.id,) for m in g.incoming(target)]
    for _ in range(max_depth):
        found.extend(frontier)
        nxt = []
        for path in frontier:
            head = g.morphisms[path[0]]
            for m in g.incoming(head.source):
                if m.id not in path:
                    nxt.append((m.id, *path))
        frontier = nxt
    found.sort(key=lambda p: (len(p), p))
    out = []
    for edges in found:
        path = make_path(g, edges)
        out.append((path.source, path))
    return out


@dataclass(frozen=True)
class TransportResult:
    graph: TheoryGraph
    theory: Theory
    name: str
    formula: Formula
    duplicate_of: str | None = None
    flagged: bool = False


def transport(
    g: TheoryGraph,
    src_theory: str,
    theorem_name: str,
    path: MorphismPath,
    allow_partial: bool = False,
    name: str | None = None,
) -> TransportResult:
    """Record the image of a theorem along ``path`` in the path's target theory.

    An alpha-equal statement already present in the target is reported as a
    duplicate and the graph is returned unchanged.
    """
    src = g.theory(src_theory)
    stmt = src.statement(theorem_name)
    if stmt is None:
        raise UnknownTheorem(f"{src_theory} has no theorem {theorem_name!r}")
    if path.source != src_theory:
        raise PathMismatch(f"path starts at {path.source}, not {src_theory}")
    status = verify(path.composite)
    flagged = not status.verified
    if flagged and not allow_partial:
        raise UnverifiedPath(
            f"path {'/'.join(path.edges)} is not verified: {', '.join(status.open)} open"
        )
    thm = src.theorems.get(theorem_name)
    if thm is not None and is_flagged(thm.provenance):
        flagged = True
    phi = translate_formula(path.composite.assignment, stmt)
    tgt = g.theory(path.target)
    existing = tgt.find_content(phi)
    if existing is not None:
        return TransportResult(g, tgt, existing, phi, duplicate_of=existing, flagged=flagged)
    new_name = name or f"{theorem_name}_{'_'.join(path.edges)}"
    prov = Transported(src_theory, theorem_name, path.edges, partial=flagged)
    tgt = add_theorem(tgt, new_name, phi, prov)
    return TransportResult(g.update_theory(tgt), tgt, new_name, phi, flagged=flagged)


def recheck_transported(g: TheoryGraph, theory: str, name: str) -> bool:
    """Re-translate a Transported theorem's source along its path and compare."""
    thm = g.theory(theory).theorems[name]
    prov = thm.provenance
    if not isinstance(prov, Transported):
        return True
    stmt = g.theory(prov.source_theory).statement(prov.source_theorem)
    if stmt is None:
        return False
    path = make_path(g, prov.path)
    return alpha_eq(translate_formula(path.composite.assignment, stmt), thm.formula)


def instances_of(g: TheoryGraph, t: str) -> list[str]:
    g.theory(t)
    return [m.target for m in g.morphisms.values() if m.source == t]


def realm_candidates(g: TheoryGraph) -> list[tuple[str, str, str, str]]:
    """Theory pairs joined by verified single edges in both directions.

    Each pair is reported with its smaller id first, once per pair of edges.
    """
    verified = [m for m in g.morphisms.values() if verify(m).verified and m.source != m.target]
    out = []
    for fwd in verified:
        if fwd.source > fwd.target:
            continue
        for back in verified:
            if back.source == fwd.target and back.target == fwd.source:
                out.append((fwd.source, fwd.target, fwd.id, back.id))
    return sorted(out)
