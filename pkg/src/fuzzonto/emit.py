"""Serialization: canonical JSON documents and the normalized RDF/XML form.

Everything here is byte-deterministic: collections are emitted in canonical
sort order, JSON uses sorted keys and a fixed indent, and the RDF/XML writer
builds the document textually from sorted blocks.  Exact rational mu values
are rendered to six decimal places (banker's rounding) only at this layer.
"""

from __future__ import annotations

import json
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from xml.sax.saxutils import quoteattr

from .errors import NotNormalized
from .ingest import OWL_NS, RDF_NS, RDFS_NS, SCHEMA_VERSION
from .membership import PART_OF, PROPERTY, AnnotatedOntology
from .model import DATATYPE, INTERSECTION, INVERSE, OntologyModel
from .rules import FuzzyRule

_SIX_PLACES = Decimal("0.000001")


def decimal6(value: Fraction) -> str:
    """Six-fractional-digit decimal string, round half to even."""
    quantized = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(
        _SIX_PLACES, rounding=ROUND_HALF_EVEN
    )
    return str(quantized)


def dump_json(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


# -- model ----------------------------------------------------------------------


def model_to_obj(m: OntologyModel) -> dict:
    classes = []
    for c in m.sorted_classes():
        item = {"name": c.name}
        if c.iri is not None:
            item["iri"] = c.iri
        classes.append(item)

    modifiers = []
    for mod in m.sorted_modifiers():
        item = {"kind": mod.kind, "target": mod.target}
        if mod.kind == INVERSE:
            item["counterpart"] = mod.counterpart
        if mod.kind == INTERSECTION:
            item["members"] = list(mod.members)
        modifiers.append(item)

    return {
        "classes": classes,
        "properties": [
            {"name": name, "kind": kind} for name, kind in m.sorted_properties()
        ],
        "holdings": [
            {"property": h.property, "holder": h.holder, "origin": h.origin}
            for h in m.sorted_holdings()
        ],
        "relations": [
            {
                "predicate": r.predicate,
                "subject": r.subject,
                "object": r.object,
                "origin": r.origin,
            }
            for r in m.sorted_relations()
        ],
        "subclass": [
            {"sub": a.sub, "super": a.sup, "origin": a.origin}
            for a in m.sorted_subclass_axioms()
        ],
        "equivalences": [{"a": a, "b": b} for a, b in m.sorted_equivalences()],
        "modifiers": modifiers,
        "normalized": m.normalized,
    }


def emit_json(m: OntologyModel) -> bytes:
    obj = model_to_obj(m)
    obj["schema"] = SCHEMA_VERSION
    return dump_json(obj)


# -- normalized RDF/XML -----------------------------------------------------------


def _about(m: OntologyModel, name: str) -> str:
    ref = m.classes.get(name)
    if ref is not None and ref.iri is not None:
        return ref.iri
    return f"#{name}"


def emit_normalized_rdf(m: OntologyModel) -> bytes:
    """RDF/XML holding only classes, plain properties, subclass and
    equivalence axioms.  One property block per domain/range assertion so a
    re-parse recovers exactly the same relation set."""
    if not m.normalized:
        raise NotNormalized("RDF export is defined for normalized models only")

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<rdf:RDF xmlns:rdf={quoteattr(RDF_NS)} xmlns:rdfs={quoteattr(RDFS_NS)} '
        f"xmlns:owl={quoteattr(OWL_NS)}>",
    ]

    subs: dict[str, list[str]] = {}
    for axiom in m.sorted_subclass_axioms():
        subs.setdefault(axiom.sub, []).append(axiom.sup)
    equivalents: dict[str, list[str]] = {}
    for a, b in m.sorted_equivalences():
        equivalents.setdefault(a, []).append(b)

    for c in m.sorted_classes():
        children = [
            f"    <rdfs:subClassOf rdf:resource={quoteattr('#' + sup)}/>"
            for sup in subs.get(c.name, ())
        ]
        children += [
            f"    <owl:equivalentClass rdf:resource={quoteattr('#' + other)}/>"
            for other in equivalents.get(c.name, ())
        ]
        opener = f"  <owl:Class rdf:about={quoteattr(_about(m, c.name))}"
        if children:
            lines.append(opener + ">")
            lines.extend(children)
            lines.append("  </owl:Class>")
        else:
            lines.append(opener + "/>")

    datatype_blocks: list[tuple[str, str]] = []  # (property, holder or "")
    object_blocks: list[tuple[str, str, str]] = []
    emitted_props: set[str] = set()
    for h in m.sorted_holdings():
        datatype_blocks.append((h.property, h.holder))
        emitted_props.add(h.property)
    for r in m.sorted_relations():
        object_blocks.append((r.predicate, r.subject, r.object))
        emitted_props.add(r.predicate)
    for name, kind in m.sorted_properties():
        if name in emitted_props:
            continue
        if kind == DATATYPE:
            datatype_blocks.append((name, ""))
        else:
            object_blocks.append((name, "", ""))

    for name, holder in sorted(datatype_blocks):
        opener = f"  <owl:DatatypeProperty rdf:about={quoteattr('#' + name)}"
        if holder:
            lines.append(opener + ">")
            lines.append(f"    <rdfs:domain rdf:resource={quoteattr('#' + holder)}/>")
            lines.append("  </owl:DatatypeProperty>")
        else:
            lines.append(opener + "/>")

    for name, subject, obj in sorted(object_blocks):
        opener = f"  <owl:ObjectProperty rdf:about={quoteattr('#' + name)}"
        if subject:
            lines.append(opener + ">")
            lines.append(f"    <rdfs:domain rdf:resource={quoteattr('#' + subject)}/>")
            lines.append(f"    <rdfs:range rdf:resource={quoteattr('#' + obj)}/>")
            lines.append("  </owl:ObjectProperty>")
        else:
            lines.append(opener + "/>")

    lines.append("</rdf:RDF>")
    return ("\n".join(lines) + "\n").encode("utf-8")


# -- membership and rules -----------------------------------------------------------


def mu_to_obj(mu: Fraction) -> dict:
    return {"num": mu.numerator, "den": mu.denominator, "decimal": decimal6(mu)}


def _key_to_obj(kind: str, key) -> dict:
    if kind == PROPERTY:
        return {"property": key}
    if kind == PART_OF:
        return {"class": key.resulting_class}
    return {"predicate": key.predicate, "class": key.resulting_class}


def annotated_to_json(annotated: AnnotatedOntology) -> bytes:
    membership = [
        {
            "key": _key_to_obj(kind, key),
            "kind": kind,
            "mu": mu_to_obj(entry.mu),
            "determiners": list(entry.determiners),
        }
        for kind, key, entry in annotated.table.entries()
    ]
    return dump_json(
        {
            "schema": SCHEMA_VERSION,
            "model": model_to_obj(annotated.model),
            "membership": membership,
        }
    )


def _premise_to_obj(premise) -> dict:
    if isinstance(premise, str):
        return {"kind": PROPERTY, "property": premise}
    if premise.kind == PART_OF:
        return {"kind": PART_OF, "class": premise.resulting_class}
    return {
        "kind": premise.kind,
        "predicate": premise.predicate,
        "class": premise.resulting_class,
    }


def rules_to_json(rules: list[FuzzyRule]) -> bytes:
    return dump_json(
        {
            "schema": SCHEMA_VERSION,
            "rules": [
                {
                    "premise": _premise_to_obj(r.premise),
                    "conclusion": r.conclusion,
                    "mu": mu_to_obj(r.mu),
                    "category": r.category,
                }
                for r in rules
            ],
        }
    )


def rules_to_text(rules: list[FuzzyRule]) -> str:
    return "".join(
        f"IF {r.premise_text} (mu={decimal6(r.mu)}) THEN {r.conclusion}\n" for r in rules
    )


def traces_to_obj(traces) -> list[dict]:
    return [
        {"rule": t.rule, "produced": t.produced, "sources": list(t.sources)}
        for t in traces
    ]
