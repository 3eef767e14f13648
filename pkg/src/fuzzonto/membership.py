"""Membership-value assignment over a normalized model.

Every key gets mu = 1/n where n counts the *determining* classes collapsed to
one per equivalence group:

* a datatype property is determined by the classes holding it;
* a ``part_of`` complex (one per distinct superclass) is determined by the
  subclasses of its resulting class;
* any other relation complex (one per distinct predicate/object pair) is
  determined by the subjects pointing at its resulting class.

Values are exact rationals; rendering to decimals happens at serialization
only.  After assignment, determining sets are widened so that every member of
an equivalence group appears wherever its representative does — mu itself
never changes, because n is counted over representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import KeyAbsent, NotNormalized
from .model import ASSERTED, OntologyModel
from .partition import UnionFind

PART_OF = "part_of"
RELATION = "relation"
PROPERTY = "property"


@dataclass(frozen=True)
class ComplexKey:
    """A relation bundled with its resulting class, acting as one premise.

    kind PART_OF keys on subclass axioms (predicate is None); kind RELATION
    keys on ordinary predicates.
    """

    kind: str
    predicate: str | None
    resulting_class: str

    @classmethod
    def part_of(cls, resulting_class: str) -> ComplexKey:
        return cls(PART_OF, None, resulting_class)

    @classmethod
    def relation(cls, predicate: str, resulting_class: str) -> ComplexKey:
        return cls(RELATION, predicate, resulting_class)

    def render(self) -> str:
        if self.kind == PART_OF:
            return f"part_of {self.resulting_class}"
        return f"{self.predicate} {self.resulting_class}"

    def sort_key(self) -> tuple:
        return (self.kind, self.predicate or "", self.resulting_class)


@dataclass(frozen=True)
class MembershipEntry:
    mu: Fraction
    determiners: tuple[str, ...]  # sorted; widened by copy_to_equivalents


class EquivalenceGroups:
    """Partition of all class names; representative = least member name."""

    def __init__(self, rep_of: dict[str, str], members_of: dict[str, tuple[str, ...]]):
        self._rep_of = rep_of
        self._members_of = members_of

    def rep(self, name: str) -> str:
        return self._rep_of.get(name, name)

    def members(self, name: str) -> tuple[str, ...]:
        return self._members_of.get(self.rep(name), (name,))

    def representatives(self, names) -> set[str]:
        return {self.rep(n) for n in names}

    def groups(self) -> list[tuple[str, ...]]:
        return [self._members_of[rep] for rep in sorted(self._members_of)]


@dataclass
class MembershipTable:
    property_mu: dict[str, MembershipEntry]
    complex_mu: dict[ComplexKey, MembershipEntry]

    def entries(self):
        """(kind, key, entry) triples in canonical order: properties,
        part_of complexes, then other relation complexes."""
        for name in sorted(self.property_mu):
            yield PROPERTY, name, self.property_mu[name]
        for key in sorted(
            (k for k in self.complex_mu if k.kind == PART_OF),
            key=ComplexKey.sort_key,
        ):
            yield PART_OF, key, self.complex_mu[key]
        for key in sorted(
            (k for k in self.complex_mu if k.kind == RELATION),
            key=ComplexKey.sort_key,
        ):
            yield RELATION, key, self.complex_mu[key]


@dataclass
class AnnotatedOntology:
    model: OntologyModel
    table: MembershipTable
    groups: EquivalenceGroups


def build_equivalence_groups(m: OntologyModel) -> EquivalenceGroups:
    uf = UnionFind()
    for name in m.classes:
        uf.add(name)
    for a, b in m.equivalences:
        uf.add(a)
        uf.add(b)
        uf.union(a, b)
    rep_of: dict[str, str] = {}
    members_of: dict[str, tuple[str, ...]] = {}
    for _, group in uf.groups().items():
        members = tuple(sorted(group))
        rep = members[0]
        members_of[rep] = members
        for name in members:
            rep_of[name] = rep
    return EquivalenceGroups(rep_of, members_of)


def _determiners(m: OntologyModel, key, asserted_only: bool) -> set[str]:
    def keep(origin: str) -> bool:
        return not asserted_only or origin == ASSERTED

    if isinstance(key, str):
        return {
            h.holder for h in m.holdings.values() if h.property == key and keep(h.origin)
        }
    if key.kind == PART_OF:
        return {
            a.sub
            for a in m.subclass_axioms.values()
            if a.sup == key.resulting_class and keep(a.origin)
        }
    return {
        r.subject
        for r in m.relations.values()
        if r.predicate == key.predicate
        and r.object == key.resulting_class
        and keep(r.origin)
    }


def count_determiners(
    m: OntologyModel,
    groups: EquivalenceGroups,
    key,
    asserted_only: bool = False,
) -> tuple[int, set[str]]:
    """Determining classes for a property name or ComplexKey, and their count
    collapsed to equivalence-group representatives."""
    determiners = _determiners(m, key, asserted_only)
    if not determiners:
        label = key if isinstance(key, str) else key.render()
        raise KeyAbsent(f"no occurrence of {label!r} in the model")
    return len(groups.representatives(determiners)), determiners


def _entry(groups: EquivalenceGroups, determiners: set[str]) -> MembershipEntry:
    n = len(groups.representatives(determiners))
    return MembershipEntry(Fraction(1, n), tuple(sorted(determiners)))


def assign_property_mu(
    m: OntologyModel, groups: EquivalenceGroups, asserted_only: bool = False
) -> dict[str, MembershipEntry]:
    out: dict[str, MembershipEntry] = {}
    for name in sorted({h.property for h in m.holdings.values()}):
        determiners = _determiners(m, name, asserted_only)
        if determiners:
            out[name] = _entry(groups, determiners)
    return out


def assign_partof_mu(
    m: OntologyModel, groups: EquivalenceGroups, asserted_only: bool = False
) -> dict[ComplexKey, MembershipEntry]:
    out: dict[ComplexKey, MembershipEntry] = {}
    for sup in sorted({a.sup for a in m.subclass_axioms.values()}):
        key = ComplexKey.part_of(sup)
        determiners = _determiners(m, key, asserted_only)
        if determiners:
            out[key] = _entry(groups, determiners)
    return out


def assign_relation_mu(
    m: OntologyModel, groups: EquivalenceGroups, asserted_only: bool = False
) -> dict[ComplexKey, MembershipEntry]:
    out: dict[ComplexKey, MembershipEntry] = {}
    for pred, obj in sorted({(r.predicate, r.object) for r in m.relations.values()}):
        key = ComplexKey.relation(pred, obj)
        determiners = _determiners(m, key, asserted_only)
        if determiners:
            out[key] = _entry(groups, determiners)
    return out


def copy_to_equivalents(annotated: AnnotatedOntology) -> AnnotatedOntology:
    """Widen every determining set with the equivalents of its members.

    mu values stay as computed: representatives of the widened set are the
    representatives of the original set.
    """
    groups = annotated.groups

    def widen(entry: MembershipEntry) -> MembershipEntry:
        widened: set[str] = set()
        for name in entry.determiners:
            widened.update(groups.members(name))
        return replace(entry, determiners=tuple(sorted(widened)))

    table = MembershipTable(
        property_mu={k: widen(v) for k, v in annotated.table.property_mu.items()},
        complex_mu={k: widen(v) for k, v in annotated.table.complex_mu.items()},
    )
    return AnnotatedOntology(annotated.model, table, groups)


def assign_all(m: OntologyModel, asserted_only: bool = False) -> AnnotatedOntology:
    """Property, part_of and relation assignment followed by the equivalence
    copy, in that order."""
    if not m.normalized:
        raise NotNormalized("membership assignment requires a normalized model")
    groups = build_equivalence_groups(m)
    complex_mu: dict[ComplexKey, MembershipEntry] = {}
    complex_mu.update(assign_partof_mu(m, groups, asserted_only))
    complex_mu.update(assign_relation_mu(m, groups, asserted_only))
    table = MembershipTable(
        property_mu=assign_property_mu(m, groups, asserted_only),
        complex_mu=complex_mu,
    )
    return copy_to_equivalents(AnnotatedOntology(m, table, groups))
