"""In-memory ontology model: classes, property holdings, relation assertions,
subclass/equivalence axioms and raw OWL modifiers.

Element collections behave as sets keyed by element identity; the identity of
a holding/relation/axiom excludes its origin tag, so re-deriving an existing
element is a no-op and the first origin wins.  Models are treated as immutable
once built: the rewrite passes copy before mutating.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DuplicateIdentifier

ASSERTED = "asserted"

DATATYPE = "datatype"
OBJECT = "object"

SYMMETRIC = "symmetric"
TRANSITIVE = "transitive"
INVERSE = "inverse"
INTERSECTION = "intersection"


@dataclass(frozen=True)
class ClassRef:
    name: str
    iri: str | None = None


@dataclass(frozen=True)
class PropertyHolding:
    property: str
    holder: str
    origin: str = ASSERTED

    def key(self) -> tuple[str, str]:
        return (self.property, self.holder)


@dataclass(frozen=True)
class RelationAssertion:
    predicate: str
    subject: str
    object: str
    origin: str = ASSERTED

    def key(self) -> tuple[str, str, str]:
        return (self.predicate, self.subject, self.object)


@dataclass(frozen=True)
class SubclassAxiom:
    sub: str
    sup: str
    origin: str = ASSERTED

    def key(self) -> tuple[str, str]:
        return (self.sub, self.sup)


@dataclass(frozen=True)
class RawModifier:
    """Pre-normalization construct consumed by the rewrite stage.

    kind is one of SYMMETRIC / TRANSITIVE / INVERSE / INTERSECTION; target is
    a property name except for INTERSECTION, where it is the defined class.
    """

    kind: str
    target: str
    counterpart: str | None = None  # INVERSE only
    members: tuple[str, ...] = ()  # INTERSECTION only

    def key(self):
        return (self.kind, self.target, self.counterpart or "", self.members)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str  # "error" | "warning"
    message: str
    location: str | None = None

    def render(self) -> str:
        where = f" ({self.location})" if self.location else ""
        return f"{self.severity}[{self.code}]: {self.message}{where}"


@dataclass(eq=False)
class OntologyModel:
    """Graph of one ontology.

    classes maps name -> ClassRef; properties maps declared property name ->
    DATATYPE or OBJECT.  holdings / relations / subclass_axioms are dicts
    keyed by element identity (insertion keeps the first derivation).
    """

    classes: dict[str, ClassRef] = field(default_factory=dict)
    properties: dict[str, str] = field(default_factory=dict)
    holdings: dict[tuple, PropertyHolding] = field(default_factory=dict)
    relations: dict[tuple, RelationAssertion] = field(default_factory=dict)
    subclass_axioms: dict[tuple, SubclassAxiom] = field(default_factory=dict)
    equivalences: set[tuple[str, str]] = field(default_factory=set)
    modifiers: set[RawModifier] = field(default_factory=set)
    normalized: bool = False
    parse_warnings: tuple[Diagnostic, ...] = ()

    # -- construction ---------------------------------------------------

    def touch_class(self, name: str, iri: str | None = None) -> None:
        existing = self.classes.get(name)
        if existing is None:
            self.classes[name] = ClassRef(name, iri)
        elif existing.iri is None and iri is not None:
            self.classes[name] = ClassRef(name, iri)

    def declare_property(self, name: str, kind: str) -> None:
        existing = self.properties.get(name)
        if existing is not None and existing != kind:
            raise DuplicateIdentifier(
                f"property {name!r} declared both as {existing} and as {kind}"
            )
        self.properties[name] = kind

    def add_holding(self, prop: str, holder: str, origin: str = ASSERTED) -> bool:
        key = (prop, holder)
        if key in self.holdings:
            return False
        self.holdings[key] = PropertyHolding(prop, holder, origin)
        return True

    def add_relation(
        self, predicate: str, subject: str, object_: str, origin: str = ASSERTED
    ) -> bool:
        key = (predicate, subject, object_)
        if key in self.relations:
            return False
        self.relations[key] = RelationAssertion(predicate, subject, object_, origin)
        return True

    def add_subclass(self, sub: str, sup: str, origin: str = ASSERTED) -> bool:
        key = (sub, sup)
        if key in self.subclass_axioms:
            return False
        self.subclass_axioms[key] = SubclassAxiom(sub, sup, origin)
        return True

    def remove_subclass(self, sub: str, sup: str) -> bool:
        return self.subclass_axioms.pop((sub, sup), None) is not None

    def add_equivalence(self, a: str, b: str) -> bool:
        """Record an unordered equivalence pair; self-pairs are rejected."""
        if a == b:
            return False
        pair = (a, b) if a < b else (b, a)
        if pair in self.equivalences:
            return False
        self.equivalences.add(pair)
        return True

    def add_modifier(self, modifier: RawModifier) -> bool:
        if modifier in self.modifiers:
            return False
        self.modifiers.add(modifier)
        return True

    def remove_modifier(self, modifier: RawModifier) -> None:
        self.modifiers.discard(modifier)

    # -- views ------------------------------------------------------------

    def sorted_classes(self) -> list[ClassRef]:
        return [self.classes[name] for name in sorted(self.classes)]

    def sorted_properties(self) -> list[tuple[str, str]]:
        return sorted(self.properties.items())

    def sorted_holdings(self) -> list[PropertyHolding]:
        return [self.holdings[k] for k in sorted(self.holdings)]

    def sorted_relations(self) -> list[RelationAssertion]:
        return [self.relations[k] for k in sorted(self.relations)]

    def sorted_subclass_axioms(self) -> list[SubclassAxiom]:
        return [self.subclass_axioms[k] for k in sorted(self.subclass_axioms)]

    def sorted_equivalences(self) -> list[tuple[str, str]]:
        return sorted(self.equivalences)

    def sorted_modifiers(self) -> list[RawModifier]:
        return sorted(self.modifiers, key=RawModifier.key)

    def relations_of(self, predicate: str) -> list[RelationAssertion]:
        return [r for r in self.sorted_relations() if r.predicate == predicate]

    def element_count(self) -> int:
        return (
            len(self.classes)
            + len(self.holdings)
            + len(self.relations)
            + len(self.subclass_axioms)
            + len(self.equivalences)
            + len(self.modifiers)
        )

    def counts(self) -> dict[str, int]:
        return {
            "classes": len(self.classes),
            "properties": len(self.properties),
            "holdings": len(self.holdings),
            "relations": len(self.relations),
            "subclass": len(self.subclass_axioms),
            "equivalences": len(self.equivalences),
            "modifiers": len(self.modifiers),
            "total": self.element_count(),
        }

    # -- copying / equality ------------------------------------------------

    def copy(self) -> OntologyModel:
        return OntologyModel(
            classes=dict(self.classes),
            properties=dict(self.properties),
            holdings=dict(self.holdings),
            relations=dict(self.relations),
            subclass_axioms=dict(self.subclass_axioms),
            equivalences=set(self.equivalences),
            modifiers=set(self.modifiers),
            normalized=self.normalized,
            parse_warnings=self.parse_warnings,
        )

    def canonical(self, with_origins: bool = True) -> tuple:
        def tag(origin):
            return origin if with_origins else ""

        return (
            tuple((c.name, c.iri) for c in self.sorted_classes()),
            tuple(self.sorted_properties()),
            tuple((h.property, h.holder, tag(h.origin)) for h in self.sorted_holdings()),
            tuple(
                (r.predicate, r.subject, r.object, tag(r.origin))
                for r in self.sorted_relations()
            ),
            tuple((a.sub, a.sup, tag(a.origin)) for a in self.sorted_subclass_axioms()),
            tuple(self.sorted_equivalences()),
            tuple(m.key() for m in self.sorted_modifiers()),
            self.normalized,
        )

    def same_elements(self, other: OntologyModel) -> bool:
        """Structural equality ignoring origin tags and the normalized flag."""
        return self.canonical(with_origins=False)[:-1] == other.canonical(
            with_origins=False
        )[:-1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OntologyModel):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def with_warnings(self, diagnostics) -> OntologyModel:
        out = self.copy()
        out.parse_warnings = self.parse_warnings + tuple(diagnostics)
        return out
