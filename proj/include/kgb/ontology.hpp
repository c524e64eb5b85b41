#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgb/rdf.hpp"

namespace kgb {

enum class PropertyKind { Relation, Attribute };

struct PropertySpec {
    Iri iri;
    PropertyKind kind = PropertyKind::Attribute;
    Iri domain;                       // a schema class
    Iri range;                        // class (relation) or xsd datatype (attribute)
    std::optional<int> max_cardinality;
    std::string label;
    std::vector<std::string> alt_labels;
    std::vector<Iri> equivalents;
};

/// Movie-domain schema: classes, pairwise disjointness, and the declared
/// properties. rdf:type and rdfs:label are modelled as built-in pseudo
/// properties; they count toward the declared schema size but carry no
/// domain/range of their own.
class OntologySchema {
public:
    std::set<Iri> classes;
    std::set<std::pair<Iri, Iri>> disjoint_pairs;  // stored with first < second
    std::map<Iri, PropertySpec> properties;

    /// Declared size including rdf:type and rdfs:label.
    std::size_t property_count() const { return properties.size() + 2; }

    bool is_class(const Iri& iri) const { return classes.count(iri) > 0; }
    bool disjoint(const Iri& a, const Iri& b) const;

    const PropertySpec* find_property(const Iri& iri) const;

    /// True for declared properties plus rdf:type and rdfs:label; the
    /// predicate inventory a fused KG is allowed to use.
    bool known_predicate(const Iri& iri) const;
};

/// Builds the schema from its RDF encoding (rdfs/owl/skos vocabulary plus the
/// direct max-cardinality annotation). Fails on missing domain/range, unknown
/// class references, and duplicate property declarations.
OntologySchema load_ontology(const Graph& g);

/// Adds rdf:type assertions implied by schema domain/range for entities that
/// have none yet. Existing types are never touched; the pass is idempotent and
/// only ever adds rdf:type triples. When evidence conflicts, the first
/// predicate in canonical triple order wins.
Graph infer_types(const Graph& g, const OntologySchema& schema);

}  // namespace kgb
