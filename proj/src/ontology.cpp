#include "kgb/ontology.hpp"

#include <algorithm>

namespace kgb {

bool OntologySchema::disjoint(const Iri& a, const Iri& b) const {
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    return disjoint_pairs.count(key) > 0;
}

const PropertySpec* OntologySchema::find_property(const Iri& iri) const {
    auto it = properties.find(iri);
    return it == properties.end() ? nullptr : &it->second;
}

bool OntologySchema::known_predicate(const Iri& iri) const {
    return iri.value() == vocab::rdf_type || iri.value() == vocab::rdfs_label ||
           properties.count(iri) > 0;
}

OntologySchema load_ontology(const Graph& g) {
    OntologySchema schema;
    const Iri type(vocab::rdf_type);

    for (const Triple* t : g.with_predicate(type)) {
        if (!is_iri(t->object)) continue;
        if (as_iri(t->object).value() == vocab::owl_class) schema.classes.insert(t->subject);
    }
    if (schema.classes.empty()) throw Error("load_ontology: no classes declared");

    // Property declarations; a property typed as both kinds is a duplicate.
    std::map<Iri, PropertyKind> kinds;
    for (const Triple* t : g.with_predicate(type)) {
        if (!is_iri(t->object)) continue;
        const std::string& cls = as_iri(t->object).value();
        PropertyKind kind;
        if (cls == vocab::owl_object_property) kind = PropertyKind::Relation;
        else if (cls == vocab::owl_datatype_property) kind = PropertyKind::Attribute;
        else continue;
        auto [it, inserted] = kinds.emplace(t->subject, kind);
        if (!inserted && it->second != kind)
            throw Error("load_ontology: duplicate property declaration: " + t->subject.value());
    }

    auto single_object = [&](const Iri& subject, const std::string& predicate) {
        std::optional<Iri> found;
        for (const Triple* t : g.with_subject(subject)) {
            if (t->predicate.value() != predicate || !is_iri(t->object)) continue;
            if (found && !(*found == as_iri(t->object)))
                throw Error("load_ontology: duplicate " + predicate + " for " + subject.value());
            found = as_iri(t->object);
        }
        return found;
    };

    for (const auto& [prop_iri, kind] : kinds) {
        PropertySpec spec;
        spec.iri = prop_iri;
        spec.kind = kind;

        auto domain = single_object(prop_iri, vocab::rdfs_domain);
        auto range = single_object(prop_iri, vocab::rdfs_range);
        if (!domain || !range)
            throw Error("load_ontology: property missing domain or range: " + prop_iri.value());
        if (!schema.is_class(*domain))
            throw Error("load_ontology: unknown domain class " + domain->value() + " on " +
                        prop_iri.value());
        if (kind == PropertyKind::Relation && !schema.is_class(*range))
            throw Error("load_ontology: unknown range class " + range->value() + " on " +
                        prop_iri.value());
        if (kind == PropertyKind::Attribute && !range->starts_with(vocab::xsd_ns))
            throw Error("load_ontology: attribute range must be an xsd datatype: " +
                        prop_iri.value());
        spec.domain = *domain;
        spec.range = *range;

        for (const Triple* t : g.with_subject(prop_iri)) {
            const std::string& p = t->predicate.value();
            if (p == vocab::rdfs_label && !is_iri(t->object))
                spec.label = as_literal(t->object).lexical();
            else if (p == vocab::skos_alt_label && !is_iri(t->object))
                spec.alt_labels.push_back(as_literal(t->object).lexical());
            else if (p == vocab::owl_equivalent_property && is_iri(t->object))
                spec.equivalents.push_back(as_iri(t->object));
            else if (p == vocab::max_cardinality && !is_iri(t->object)) {
                int card = std::stoi(as_literal(t->object).lexical());
                if (card < 1) throw Error("load_ontology: maxCardinality must be >= 1");
                spec.max_cardinality = card;
            }
        }
        std::sort(spec.alt_labels.begin(), spec.alt_labels.end());
        std::sort(spec.equivalents.begin(), spec.equivalents.end());
        schema.properties.emplace(prop_iri, std::move(spec));
    }

    for (const Triple* t : g.with_predicate(Iri(vocab::owl_disjoint_with))) {
        if (!is_iri(t->object)) continue;
        const Iri& a = t->subject;
        const Iri& b = as_iri(t->object);
        if (!schema.is_class(a) || !schema.is_class(b))
            throw Error("load_ontology: disjointWith references undeclared class");
        schema.disjoint_pairs.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }

    return schema;
}

Graph infer_types(const Graph& g, const OntologySchema& schema) {
    const Iri type(vocab::rdf_type);
    std::set<std::string> typed;
    for (const Triple* t : g.with_predicate(type)) typed.insert(t->subject.value());

    std::vector<Triple> additions;
    auto assign = [&](const Iri& entity, const Iri& cls) {
        if (typed.count(entity.value())) return;
        typed.insert(entity.value());
        additions.push_back(Triple{entity, type, Term(cls)});
    };

    for (const Triple& t : g.triples()) {
        const PropertySpec* spec = schema.find_property(t.predicate);
        if (!spec) continue;
        assign(t.subject, spec->domain);
        if (spec->kind == PropertyKind::Relation && is_iri(t.object))
            assign(as_iri(t.object), spec->range);
    }

    if (additions.empty()) return g;
    std::vector<Triple> all = g.triples();
    all.insert(all.end(), additions.begin(), additions.end());
    return Graph::from_triples(std::move(all));
}

}  // namespace kgb
