#include <algorithm>
#include <map>
#include <set>

#include "kgb/tasks.hpp"

namespace kgb {

namespace {

std::set<std::string> entity_terms(const Graph& g) {
    std::set<std::string> out;
    for (const Triple& t : g.triples()) {
        out.insert(t.subject.value());
        if (is_iri(t.object)) out.insert(as_iri(t.object).value());
    }
    return out;
}

std::set<std::string> predicate_terms(const Graph& g) {
    std::set<std::string> out;
    for (const Triple& t : g.triples()) out.insert(t.predicate.value());
    return out;
}

/// Builds "source id -> target id" from match records. The source side is the
/// one occurring in the source graph; records where neither id does are
/// skipped with a warning. Conflicts resolve to the higher score, then to the
/// lower target id.
std::map<std::string, std::pair<std::string, double>> build_rewrite_map(
    const std::vector<MatchRecord>& records, const std::set<std::string>& source_terms,
    const char* what, std::vector<std::string>& warnings) {
    std::map<std::string, std::pair<std::string, double>> map;
    for (const MatchRecord& r : records) {
        if (r.id1 == r.id2) continue;
        std::string src, dst;
        if (source_terms.count(r.id2) && !source_terms.count(r.id1)) {
            src = r.id2;
            dst = r.id1;
        } else if (source_terms.count(r.id1) && !source_terms.count(r.id2)) {
            src = r.id1;
            dst = r.id2;
        } else if (source_terms.count(r.id1) && source_terms.count(r.id2)) {
            warnings.push_back(std::string(what) + " match is ambiguous (both ids in source): " +
                               r.id1 + " / " + r.id2);
            continue;
        } else {
            warnings.push_back(std::string(what) + " match references ids absent from the source: " +
                               r.id1 + " / " + r.id2);
            continue;
        }
        auto it = map.find(src);
        if (it == map.end() || r.score > it->second.second ||
            (r.score == it->second.second && dst < it->second.first))
            map[src] = {dst, r.score};
    }
    return map;
}

}  // namespace

FusionResult fusion_first(const Graph& seed, const Graph& source, const MatchSet& matches,
                          const OntologySchema& schema) {
    FusionResult result;
    MatchSet canon = matches;
    canon.normalize();

    std::set<std::string> src_entities = entity_terms(source);
    std::set<std::string> src_predicates = predicate_terms(source);
    auto entity_map =
        build_rewrite_map(canon.entity_matches(), src_entities, "entity", result.warnings);
    auto predicate_map =
        build_rewrite_map(canon.relation_matches(), src_predicates, "relation", result.warnings);

    auto rewrite_entity = [&](const Iri& iri) {
        auto it = entity_map.find(iri.value());
        return it == entity_map.end() ? iri : Iri(it->second.first);
    };

    // Rewrite, then keep only triples the ontology inventory can house.
    std::size_t dropped = 0;
    std::vector<Triple> kept;
    for (const Triple& t : source.triples()) {
        Iri predicate = t.predicate;
        auto pit = predicate_map.find(predicate.value());
        if (pit != predicate_map.end()) predicate = Iri(pit->second.first);

        if (!schema.known_predicate(predicate)) {
            ++dropped;
            continue;
        }
        Iri subject = rewrite_entity(t.subject);
        Term object = is_iri(t.object) ? Term(rewrite_entity(as_iri(t.object))) : t.object;
        if (predicate.value() == vocab::rdf_type) {
            if (!is_iri(object) || !schema.is_class(as_iri(object))) {
                ++dropped;
                continue;
            }
        }
        kept.push_back(Triple{std::move(subject), std::move(predicate), std::move(object)});
    }
    if (dropped > 0)
        result.warnings.push_back(std::to_string(dropped) +
                                  " source triple(s) outside the ontology inventory dropped");

    Graph merged = graph_union(seed, Graph::from_triples(std::move(kept)));

    // Current-KG-first cardinality policy for single-valued properties.
    std::vector<Triple> final_triples;
    std::set<std::pair<std::string, std::string>> handled;
    for (const Triple& t : merged.triples()) {
        const PropertySpec* spec = schema.find_property(t.predicate);
        if (!spec || !spec->max_cardinality || *spec->max_cardinality != 1) {
            final_triples.push_back(t);
            continue;
        }
        auto key = std::make_pair(t.subject.value(), t.predicate.value());
        if (handled.count(key)) continue;
        handled.insert(key);

        std::vector<Triple> seed_values, all_values;
        for (const Triple* st : merged.with_subject(t.subject)) {
            if (!(st->predicate == t.predicate)) continue;
            all_values.push_back(*st);
            if (seed.contains(*st)) seed_values.push_back(*st);
        }
        if (!seed_values.empty()) {
            for (auto& v : seed_values) final_triples.push_back(std::move(v));
        } else {
            // merged iteration is canonical, so the first value is the
            // canonical minimum
            final_triples.push_back(all_values.front());
        }
    }

    result.graph = infer_types(Graph::from_triples(std::move(final_triples)), schema);
    return result;
}

FusionResult select_first(const Graph& seed, const Graph& source, const OntologySchema& schema) {
    return fusion_first(seed, source, MatchSet{}, schema);
}

}  // namespace kgb
