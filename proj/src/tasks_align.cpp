#include <algorithm>
#include <map>
#include <set>

#include "kgb/tasks.hpp"

namespace kgb {

namespace {

// Candidate pair generation skips features held by more entities than this;
// such features carry almost no weight anyway.
constexpr std::size_t kBlockCap = 50;
constexpr std::size_t kPairCap = 2500;

struct EntityFeatures {
    // entity -> feature keys; literal features are "V|" + serialized literal,
    // relation features "R|pred|target" / "Rin|pred|source" via the current
    // alignment.
    std::map<std::string, std::set<std::string>> features;

    void add(const std::string& entity, std::string feature) {
        features[entity].insert(std::move(feature));
    }
};

// Value identity is the lexical form alone, so a stringly-typed source value
// still aligns with its typed counterpart in the seed.
EntityFeatures literal_features(const Graph& g) {
    EntityFeatures out;
    for (const Triple& t : g.triples()) {
        if (t.predicate.value() == vocab::rdf_type) continue;
        if (!is_iri(t.object)) out.add(t.subject.value(), "V|" + as_literal(t.object).lexical());
    }
    return out;
}

using Alignment = std::map<std::string, std::string>;  // source id -> seed id

/// Seed-side relation features use the graph's own ids; source-side features
/// go through the current entity and relation alignment so both sides speak
/// seed vocabulary.
void add_relation_features(EntityFeatures& feats, const Graph& g, const Alignment* entity_map,
                           const Alignment* relation_map) {
    for (const Triple& t : g.triples()) {
        if (t.predicate.value() == vocab::rdf_type || !is_iri(t.object)) continue;
        std::string pred = t.predicate.value();
        std::string subj = t.subject.value();
        std::string obj = as_iri(t.object).value();
        if (relation_map) {
            auto it = relation_map->find(pred);
            if (it == relation_map->end()) continue;
            pred = it->second;
        }
        if (entity_map) {
            auto so = entity_map->find(obj);
            if (so != entity_map->end()) feats.add(subj, "R|" + pred + "|" + so->second);
            auto ss = entity_map->find(subj);
            if (ss != entity_map->end()) feats.add(obj, "Rin|" + pred + "|" + ss->second);
        } else {
            feats.add(subj, "R|" + pred + "|" + obj);
            feats.add(obj, "Rin|" + pred + "|" + subj);
        }
    }
}

struct WeightedScore {
    // weight(feature) = 1 / (number of entities holding it across both graphs)
    std::map<std::string, double> weight;

    void compute(const EntityFeatures& a, const EntityFeatures& b) {
        std::map<std::string, std::size_t> df;
        for (const auto& [_, fs] : a.features)
            for (const auto& f : fs) ++df[f];
        for (const auto& [_, fs] : b.features)
            for (const auto& f : fs) ++df[f];
        weight.clear();
        for (const auto& [f, n] : df) weight[f] = 1.0 / static_cast<double>(n);
    }

    double weighted_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) const {
        double inter = 0.0, uni = 0.0;
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() || ib != b.end()) {
            int cmp = ia == a.end() ? 1 : ib == b.end() ? -1 : ia->compare(*ib);
            if (cmp == 0) {
                double w = weight.at(*ia);
                inter += w;
                uni += w;
                ++ia;
                ++ib;
            } else if (cmp < 0) {
                uni += weight.at(*ia);
                ++ia;
            } else {
                uni += weight.at(*ib);
                ++ib;
            }
        }
        return uni == 0.0 ? 0.0 : inter / uni;
    }
};

/// One entity-scoring round: block on shared features, score candidate pairs,
/// keep the best seed entity per source entity at the threshold.
std::map<std::string, std::pair<std::string, double>> score_entities(
    const EntityFeatures& seed_feats, const EntityFeatures& src_feats, double threshold) {
    WeightedScore scorer;
    scorer.compute(seed_feats, src_feats);

    std::map<std::string, std::vector<const std::string*>> seed_by_feature;
    for (const auto& [entity, fs] : seed_feats.features)
        for (const auto& f : fs) seed_by_feature[f].push_back(&entity);

    std::map<std::string, std::set<std::string>> candidates;  // src -> seed ids
    for (const auto& [entity, fs] : src_feats.features) {
        for (const auto& f : fs) {
            auto it = seed_by_feature.find(f);
            if (it == seed_by_feature.end() || it->second.size() > kBlockCap) continue;
            auto& bucket = candidates[entity];
            for (const std::string* seed_id : it->second) {
                if (bucket.size() >= kPairCap) break;
                bucket.insert(*seed_id);
            }
        }
    }

    std::map<std::string, std::pair<std::string, double>> best;  // src -> (seed, score)
    for (const auto& [src_id, seeds] : candidates) {
        const auto& src_set = src_feats.features.at(src_id);
        for (const std::string& seed_id : seeds) {
            double s = scorer.weighted_jaccard(seed_feats.features.at(seed_id), src_set);
            if (s < threshold) continue;
            auto it = best.find(src_id);
            if (it == best.end() || s > it->second.second ||
                (s == it->second.second && seed_id < it->second.first))
                best[src_id] = {seed_id, s};
        }
    }
    return best;
}

/// Relation alignment: for each source predicate, the fraction of its
/// already-matched endpoint pairs that the seed connects with each candidate
/// predicate. Endpoint pairs count as matched when the subject is aligned and
/// the object is either a literal or an aligned entity.
std::map<std::string, std::pair<std::string, double>> score_relations(
    const Graph& seed, const Graph& source, const Alignment& entity_map, double threshold) {
    auto object_id = [](const Term& o) {
        return is_iri(o) ? "<" + as_iri(o).value() + ">" : as_literal(o).lexical();
    };

    // Seed lookup: subject -> predicate -> object keys.
    std::map<std::string, std::map<std::string, std::set<std::string>>> seed_edges;
    for (const Triple& t : seed.triples()) {
        if (t.predicate.value() == vocab::rdf_type) continue;
        seed_edges[t.subject.value()][t.predicate.value()].insert(object_id(t.object));
    }

    std::map<std::string, std::size_t> eligible;                       // src pred -> pairs
    std::map<std::string, std::map<std::string, std::size_t>> covered; // src pred -> seed pred -> hits
    for (const Triple& t : source.triples()) {
        if (t.predicate.value() == vocab::rdf_type) continue;
        auto subj = entity_map.find(t.subject.value());
        if (subj == entity_map.end()) continue;

        std::string object_key;
        if (is_iri(t.object)) {
            auto obj = entity_map.find(as_iri(t.object).value());
            if (obj == entity_map.end()) continue;
            object_key = "<" + obj->second + ">";
        } else {
            object_key = as_literal(t.object).lexical();
        }
        ++eligible[t.predicate.value()];

        auto se = seed_edges.find(subj->second);
        if (se == seed_edges.end()) continue;
        for (const auto& [seed_pred, objects] : se->second) {
            if (seed_pred == t.predicate.value()) continue;  // identity needs no alignment
            if (objects.count(object_key)) ++covered[t.predicate.value()][seed_pred];
        }
    }

    std::map<std::string, std::pair<std::string, double>> best;
    for (const auto& [src_pred, hits] : covered) {
        std::size_t total = eligible.at(src_pred);
        if (total == 0) continue;
        for (const auto& [seed_pred, n] : hits) {
            double score = static_cast<double>(n) / static_cast<double>(total);
            if (score < threshold) continue;
            auto it = best.find(src_pred);
            if (it == best.end() || score > it->second.second ||
                (score == it->second.second && seed_pred < it->second.first))
                best[src_pred] = {seed_pred, score};
        }
    }
    return best;
}

}  // namespace

MatchSet graph_align(const Graph& seed, const Graph& source, const SimilarityConfig& cfg) {
    if (seed.empty() || source.empty())
        throw TaskError("graph_align: input graphs must be non-empty");

    EntityFeatures seed_literals = literal_features(seed);
    EntityFeatures src_literals = literal_features(source);

    // Bootstrap on literal overlap only.
    auto entity_scores = score_entities(seed_literals, src_literals, cfg.entity_threshold);

    std::map<std::string, std::pair<std::string, double>> relation_scores;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        Alignment entity_map;
        for (const auto& [src, hit] : entity_scores) entity_map[src] = hit.first;

        relation_scores = score_relations(seed, source, entity_map, cfg.relation_threshold);
        Alignment relation_map;
        for (const auto& [src, hit] : relation_scores) relation_map[src] = hit.first;

        EntityFeatures seed_full = seed_literals;
        add_relation_features(seed_full, seed, nullptr, nullptr);
        EntityFeatures src_full = src_literals;
        add_relation_features(src_full, source, &entity_map, &relation_map);

        // Relation evidence only ever adds matches: keep the better of the
        // previous and the rescored hit per source entity.
        auto rescored = score_entities(seed_full, src_full, cfg.entity_threshold);
        for (const auto& [src, hit] : rescored) {
            auto it = entity_scores.find(src);
            if (it == entity_scores.end() || hit.second > it->second.second ||
                (hit.second == it->second.second && hit.first < it->second.first))
                entity_scores[src] = hit;
        }
    }

    MatchSet out;
    for (const auto& [src, hit] : entity_scores)
        out.records.push_back({hit.first, src, MatchType::Entity, hit.second});
    for (const auto& [src, hit] : relation_scores)
        out.records.push_back({hit.first, src, MatchType::Relation, hit.second});
    out.normalize();
    return out;
}

}  // namespace kgb
