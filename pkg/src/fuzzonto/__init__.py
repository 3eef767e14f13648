"""fuzzonto: ontology normalization, membership assignment, fuzzy rule output.

Pipeline: parse an OWL/RDF-XML subset (or model JSON), rewrite the model to a
standard form of classes / plain properties / relations, assign exact-rational
membership values mu = 1/n, and generate identifying fuzzy rules.
"""

from .emit import (
    annotated_to_json,
    decimal6,
    emit_json,
    emit_normalized_rdf,
    rules_to_json,
    rules_to_text,
)
from .errors import (
    DuplicateIdentifier,
    FixpointOverflow,
    FuzzontoError,
    KeyAbsent,
    MalformedDocument,
    NotNormalized,
    UnsupportedConstruct,
)
from .ingest import load_json, parse_document, validate_model
from .membership import (
    AnnotatedOntology,
    ComplexKey,
    EquivalenceGroups,
    MembershipEntry,
    MembershipTable,
    assign_all,
    assign_partof_mu,
    assign_property_mu,
    assign_relation_mu,
    build_equivalence_groups,
    copy_to_equivalents,
    count_determiners,
)
from .model import (
    ClassRef,
    Diagnostic,
    OntologyModel,
    PropertyHolding,
    RawModifier,
    RelationAssertion,
    SubclassAxiom,
)
from .normalize import (
    NormalizeResult,
    RewriteTrace,
    close_subclass_hierarchy,
    lift_relations,
    normalize,
    propagate_equivalents,
    rewrite_intersection,
    rewrite_inverse,
    rewrite_symmetric,
    rewrite_transitive,
)
from .rules import FuzzyRule, check_consistency, generate_rules

__version__ = "0.1.0"

__all__ = [
    "AnnotatedOntology",
    "ClassRef",
    "ComplexKey",
    "Diagnostic",
    "DuplicateIdentifier",
    "EquivalenceGroups",
    "FixpointOverflow",
    "FuzzontoError",
    "FuzzyRule",
    "KeyAbsent",
    "MalformedDocument",
    "MembershipEntry",
    "MembershipTable",
    "NormalizeResult",
    "NotNormalized",
    "OntologyModel",
    "PropertyHolding",
    "RawModifier",
    "RelationAssertion",
    "RewriteTrace",
    "SubclassAxiom",
    "UnsupportedConstruct",
    "annotated_to_json",
    "assign_all",
    "assign_partof_mu",
    "assign_property_mu",
    "assign_relation_mu",
    "build_equivalence_groups",
    "check_consistency",
    "close_subclass_hierarchy",
    "copy_to_equivalents",
    "count_determiners",
    "decimal6",
    "emit_json",
    "emit_normalized_rdf",
    "generate_rules",
    "lift_relations",
    "load_json",
    "normalize",
    "parse_document",
    "propagate_equivalents",
    "rewrite_intersection",
    "rewrite_inverse",
    "rewrite_symmetric",
    "rewrite_transitive",
    "rules_to_json",
    "rules_to_text",
    "validate_model",
]
