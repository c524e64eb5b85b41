#pragma once

// Independent reference implementations used as oracles. These re-derive the
// statistical and semantic metrics with naive scans, on purpose sharing no
// code with the library paths they check.

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "kgb/metrics.hpp"
#include "kgb/ontology.hpp"
#include "kgb/rdf.hpp"
#include "kgb/rng.hpp"
#include "kgb/tasks.hpp"

namespace kgb::test {

inline StatReport brute_force_statistics(const Graph& kg) {
    StatReport r;
    std::set<std::string> entities, predicates, classes, typed;
    std::size_t edges = 0;
    for (const Triple& t : kg.triples()) {
        ++r.fact_count;
        entities.insert(t.subject.value());
        predicates.insert(t.predicate.value());
        if (t.predicate.value() == vocab::rdf_type) {
            if (is_iri(t.object)) classes.insert(as_iri(t.object).value());
            typed.insert(t.subject.value());
        } else if (is_iri(t.object)) {
            entities.insert(as_iri(t.object).value());
            ++edges;
        }
    }
    r.entity_count = entities.size();
    r.relation_count = predicates.size();
    r.type_count = classes.size();
    for (const auto& e : entities)
        if (!typed.count(e)) ++r.untyped_count;
    double pairs = static_cast<double>(entities.size()) *
                   static_cast<double>(entities.size() - 1);
    r.density =
        entities.size() <= 1 ? 0.0 : std::min(1.0, static_cast<double>(edges) / pairs);
    return r;
}

inline SemReport brute_force_semantic(const Graph& kg, const OntologySchema& schema) {
    SemReport r;
    std::map<std::string, std::set<std::string>> types;
    for (const Triple& t : kg.triples())
        if (t.predicate.value() == vocab::rdf_type && is_iri(t.object))
            types[t.subject.value()].insert(as_iri(t.object).value());

    std::size_t typed = types.size(), dt_bad = 0;
    for (const auto& [e, set] : types) {
        bool bad = false;
        for (const auto& a : set)
            for (const auto& b : set)
                if (a < b && schema.disjoint(Iri(a), Iri(b))) bad = true;
        if (bad) ++dt_bad;
    }
    r.disjoint_types = typed == 0 ? 1.0 : 1.0 - static_cast<double>(dt_bad) / typed;

    auto typed_as = [&](const std::string& entity, const Iri& cls) {
        auto it = types.find(entity);
        return it != types.end() && it->second.count(cls.value()) > 0;
    };

    std::size_t rel = 0, d_ok = 0, r_ok = 0, dir_bad = 0, attr = 0, lt_ok = 0, lf_ok = 0;
    for (const Triple& t : kg.triples()) {
        const PropertySpec* spec = schema.find_property(t.predicate);
        if (!spec) continue;
        if (spec->kind == PropertyKind::Relation) {
            ++rel;
            bool dom = typed_as(t.subject.value(), spec->domain);
            bool ran = is_iri(t.object) && typed_as(as_iri(t.object).value(), spec->range);
            d_ok += dom;
            r_ok += ran;
            if ((!dom || !ran) && is_iri(t.object) &&
                typed_as(as_iri(t.object).value(), spec->domain) &&
                typed_as(t.subject.value(), spec->range))
                ++dir_bad;
        } else {
            ++attr;
            if (!is_iri(t.object)) {
                if (as_literal(t.object).datatype() == spec->range) ++lt_ok;
                if (lexical_form_valid(as_literal(t.object).lexical(), spec->range)) ++lf_ok;
            }
        }
    }
    r.domain = rel == 0 ? 1.0 : static_cast<double>(d_ok) / rel;
    r.range = rel == 0 ? 1.0 : static_cast<double>(r_ok) / rel;
    r.direction = rel == 0 ? 1.0 : 1.0 - static_cast<double>(dir_bad) / rel;
    r.literal_type = attr == 0 ? 1.0 : static_cast<double>(lt_ok) / attr;
    r.literal_format = attr == 0 ? 1.0 : static_cast<double>(lf_ok) / attr;
    r.average = (r.disjoint_types + r.domain + r.range + r.direction + r.literal_type +
                 r.literal_format) /
                6.0;
    return r;
}

/// Random movie-schema fixture mixing conformant and violating triples.
inline Graph random_semantic_fixture(Rng& rng, const OntologySchema& schema,
                                     std::size_t max_triples) {
    std::vector<Iri> classes(schema.classes.begin(), schema.classes.end());
    std::vector<const PropertySpec*> props;
    for (const auto& [_, spec] : schema.properties) props.push_back(&spec);

    std::vector<Triple> triples;
    std::size_t n_entities = 2 + rng.below(30);
    std::vector<Iri> entities;
    for (std::size_t i = 0; i < n_entities; ++i)
        entities.push_back(Iri("http://kgbench.org/ref/e" + std::to_string(i)));
    for (const Iri& e : entities) {
        std::size_t n_types = rng.below(3);  // 0..2, so disjoint pairs happen
        for (std::size_t k = 0; k < n_types; ++k)
            triples.push_back(Triple{e, Iri(vocab::rdf_type), Term(classes[rng.below(classes.size())])});
    }

    std::size_t n = rng.below(max_triples + 1);
    const std::vector<std::string> datatypes = {vocab::xsd_string, vocab::xsd_integer,
                                                vocab::xsd_double, vocab::xsd_date,
                                                vocab::xsd_gyear};
    const std::vector<std::string> lexicals = {"12", "3.5", "1994-01-02", "1994", "hello",
                                               "2h 15m", "true", "-7", "0042"};
    for (std::size_t i = 0; i < n; ++i) {
        const PropertySpec* spec = props[rng.below(props.size())];
        const Iri& s = entities[rng.below(entities.size())];
        if (spec->kind == PropertyKind::Relation && rng.chance(0.8)) {
            triples.push_back(Triple{s, spec->iri, Term(entities[rng.below(entities.size())])});
        } else if (rng.chance(0.15)) {
            triples.push_back(Triple{s, spec->iri, Term(entities[rng.below(entities.size())])});
        } else {
            Literal value(lexicals[rng.below(lexicals.size())],
                          Iri(datatypes[rng.below(datatypes.size())]));
            triples.push_back(Triple{s, spec->iri, Term(value)});
        }
    }
    return Graph::from_triples(std::move(triples));
}

}  // namespace kgb::test
