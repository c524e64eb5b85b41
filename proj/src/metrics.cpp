#include "kgb/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kgb/tasks.hpp"
#include "kgb/textsim.hpp"

namespace kgb {

StatReport compute_statistics(const Graph& kg, const OntologySchema&) {
    StatReport report;
    GraphStats stats = graph_stats_primitives(kg);
    report.fact_count = kg.size();
    report.entity_count = stats.entities.size();
    report.relation_count = stats.predicates.size();
    report.type_count = stats.classes.size();

    std::set<std::string> typed;
    for (const Triple* t : kg.with_predicate(Iri(vocab::rdf_type))) typed.insert(t->subject.value());
    for (const Iri& e : stats.entities)
        if (!typed.count(e.value())) ++report.untyped_count;

    std::size_t edges = 0;
    for (const Triple& t : kg.triples())
        if (t.predicate.value() != vocab::rdf_type && is_iri(t.object)) ++edges;
    std::size_t n = report.entity_count;
    // Parallel predicates between one entity pair can push the raw ratio
    // past 1; density is capped to stay a [0,1] score.
    report.density = n <= 1 ? 0.0
                            : std::min(1.0, static_cast<double>(edges) /
                                                (static_cast<double>(n) *
                                                 static_cast<double>(n - 1)));
    return report;
}

namespace {

std::map<std::string, std::set<Iri>> asserted_types(const Graph& kg) {
    std::map<std::string, std::set<Iri>> types;
    for (const Triple* t : kg.with_predicate(Iri(vocab::rdf_type)))
        if (is_iri(t->object)) types[t->subject.value()].insert(as_iri(t->object));
    return types;
}

double ratio(std::size_t ok, std::size_t total) {
    return total == 0 ? 1.0 : static_cast<double>(ok) / static_cast<double>(total);
}

}  // namespace

SemReport compute_semantic(const Graph& kg, const OntologySchema& schema) {
    SemReport report;
    auto types = asserted_types(kg);
    auto has_type = [&](const Iri& entity, const Iri& cls) {
        auto it = types.find(entity.value());
        return it != types.end() && it->second.count(cls) > 0;
    };

    // O_DT over typed entities.
    std::size_t typed_total = 0, disjoint_bad = 0;
    for (const auto& [entity, cls_set] : types) {
        ++typed_total;
        bool bad = false;
        for (auto a = cls_set.begin(); a != cls_set.end() && !bad; ++a)
            for (auto b = std::next(a); b != cls_set.end() && !bad; ++b)
                if (schema.disjoint(*a, *b)) bad = true;
        if (bad) ++disjoint_bad;
    }
    report.disjoint_violations = disjoint_bad;
    report.disjoint_types =
        typed_total == 0
            ? 1.0
            : 1.0 - static_cast<double>(disjoint_bad) / static_cast<double>(typed_total);

    std::size_t rel_total = 0, domain_ok = 0, range_ok = 0, direction_bad = 0;
    std::size_t attr_total = 0, lt_ok = 0, lf_ok = 0;

    for (const Triple& t : kg.triples()) {
        const PropertySpec* spec = schema.find_property(t.predicate);
        if (!spec) continue;
        if (spec->kind == PropertyKind::Relation) {
            ++rel_total;
            bool d_ok = has_type(t.subject, spec->domain);
            bool r_ok = is_iri(t.object) && has_type(as_iri(t.object), spec->range);
            if (d_ok) ++domain_ok;
            if (r_ok) ++range_ok;
            if (!d_ok || !r_ok) {
                // Direction violation: the swapped triple would satisfy both.
                if (is_iri(t.object) && has_type(as_iri(t.object), spec->domain) &&
                    has_type(t.subject, spec->range))
                    ++direction_bad;
            }
        } else {
            ++attr_total;
            if (!is_iri(t.object)) {
                const Literal& lit = as_literal(t.object);
                if (lit.datatype() == spec->range) ++lt_ok;
                if (lexical_form_valid(lit.lexical(), spec->range)) ++lf_ok;
            }
        }
    }

    report.domain = ratio(domain_ok, rel_total);
    report.range = ratio(range_ok, rel_total);
    report.domain_violations = rel_total - domain_ok;
    report.range_violations = rel_total - range_ok;
    report.direction = rel_total == 0
                           ? 1.0
                           : 1.0 - static_cast<double>(direction_bad) /
                                       static_cast<double>(rel_total);
    report.direction_violations = direction_bad;
    report.literal_type = ratio(lt_ok, attr_total);
    report.literal_format = ratio(lf_ok, attr_total);
    report.literal_type_violations = attr_total - lt_ok;
    report.literal_format_violations = attr_total - lf_ok;

    report.average = (report.disjoint_types + report.domain + report.range + report.direction +
                      report.literal_type + report.literal_format) /
                     6.0;
    return report;
}

namespace {

std::string pair_key(const MatchRecord& r) {
    const std::string type = r.match_type == MatchType::Entity ? "e" : "r";
    return r.id1 <= r.id2 ? type + "|" + r.id1 + "|" + r.id2 : type + "|" + r.id2 + "|" + r.id1;
}

std::set<std::string> pair_keys(const std::vector<MatchRecord>& records) {
    std::set<std::string> out;
    for (const auto& r : records) out.insert(pair_key(r));
    return out;
}

}  // namespace

MatchEvaluation evaluate_match_set(const MatchSet& produced, const MatchSet& gold) {
    std::set<std::string> p = pair_keys(produced.records);
    std::set<std::string> g = pair_keys(gold.records);
    std::size_t inter = 0;
    for (const auto& k : p)
        if (g.count(k)) ++inter;

    MatchEvaluation ev;
    ev.precision = p.empty() ? 1.0 : static_cast<double>(inter) / static_cast<double>(p.size());
    ev.recall = g.empty() ? 1.0 : static_cast<double>(inter) / static_cast<double>(g.size());
    ev.f1 = ev.precision + ev.recall == 0.0
                ? 0.0
                : 2.0 * ev.precision * ev.recall / (ev.precision + ev.recall);
    return ev;
}

namespace {

/// Label view of a graph region: entity IRIs replaced by their first label in
/// the surrounding graph; unlabeled entities keep their IRI.
struct LabelView {
    std::map<std::string, std::string> label_of;

    explicit LabelView(const Graph& full) {
        for (const Triple* t : full.with_predicate(Iri(vocab::rdfs_label))) {
            if (is_iri(t->object)) continue;
            auto [it, inserted] =
                label_of.emplace(t->subject.value(), as_literal(t->object).lexical());
            if (!inserted && as_literal(t->object).lexical() < it->second)
                it->second = as_literal(t->object).lexical();
        }
    }

    std::string key(const Iri& iri) const {
        auto it = label_of.find(iri.value());
        return it == label_of.end() ? "<" + iri.value() + ">" : "L:" + it->second;
    }
};

struct LabeledTriple {
    std::string subject;
    std::string predicate;
    std::string object;      // exact object key
    bool object_is_literal;
    std::string literal_lexical;

    bool operator<(const LabeledTriple& o) const {
        return std::tie(subject, predicate, object) < std::tie(o.subject, o.predicate, o.object);
    }
    bool operator==(const LabeledTriple& o) const {
        return subject == o.subject && predicate == o.predicate && object == o.object;
    }
};

std::vector<LabeledTriple> labelize(const Graph& region, const LabelView& view) {
    std::vector<LabeledTriple> out;
    for (const Triple& t : region.triples()) {
        LabeledTriple lt;
        lt.subject = view.key(t.subject);
        lt.predicate = t.predicate.value();
        if (is_iri(t.object)) {
            lt.object = view.key(as_iri(t.object));
            lt.object_is_literal = false;
        } else {
            lt.object = "v:" + nt_term(t.object);
            lt.object_is_literal = true;
            lt.literal_lexical = as_literal(t.object).lexical();
        }
        out.push_back(std::move(lt));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PrecisionRecall overlap_exact(const std::vector<LabeledTriple>& a,
                              const std::vector<LabeledTriple>& b) {
    std::set<LabeledTriple> bs(b.begin(), b.end());
    std::size_t inter = 0;
    for (const auto& t : a)
        if (bs.count(t)) ++inter;
    PrecisionRecall pr;
    pr.precision = a.empty() ? 1.0 : static_cast<double>(inter) / static_cast<double>(a.size());
    pr.recall = b.empty() ? 1.0 : static_cast<double>(inter) / static_cast<double>(b.size());
    return pr;
}

/// Fuzzy-literal overlap: a triple is covered when the other side has the
/// same subject and predicate with an equal object, or a literal whose
/// trigram similarity reaches 0.8.
PrecisionRecall overlap_fuzzy_values(const std::vector<LabeledTriple>& a,
                                     const std::vector<LabeledTriple>& b) {
    auto group = [](const std::vector<LabeledTriple>& v) {
        std::map<std::pair<std::string, std::string>, std::vector<const LabeledTriple*>> out;
        for (const auto& t : v) out[{t.subject, t.predicate}].push_back(&t);
        return out;
    };
    auto ga = group(a);
    auto gb = group(b);

    auto covered = [](const LabeledTriple& t,
                      const std::map<std::pair<std::string, std::string>,
                                     std::vector<const LabeledTriple*>>& other) {
        auto it = other.find({t.subject, t.predicate});
        if (it == other.end()) return false;
        for (const LabeledTriple* o : it->second) {
            if (o->object == t.object) return true;
            if (t.object_is_literal && o->object_is_literal &&
                trigram_similarity(t.literal_lexical, o->literal_lexical) >= 0.8)
                return true;
        }
        return false;
    };

    std::size_t a_cov = 0, b_cov = 0;
    for (const auto& t : a)
        if (covered(t, gb)) ++a_cov;
    for (const auto& t : b)
        if (covered(t, ga)) ++b_cov;

    PrecisionRecall pr;
    pr.precision = a.empty() ? 1.0 : static_cast<double>(a_cov) / static_cast<double>(a.size());
    pr.recall = b.empty() ? 1.0 : static_cast<double>(b_cov) / static_cast<double>(b.size());
    return pr;
}

}  // namespace

RefReport compute_reference(const Graph& kg, const GroundTruthBundle& gt,
                            const Graph& reference_kg, const Graph& seed_region,
                            const OntologySchema& schema, const PipelineArtifacts& artifacts) {
    RefReport report;

    // Matching metrics: RDF pipelines only, recall restricted to gold records
    // reachable from the alignment base.
    if (artifacts.source_format == DataFormat::RDF && artifacts.produced_matches &&
        artifacts.alignment_base) {
        std::set<std::string> base_entities, base_predicates;
        for (const Triple& t : artifacts.alignment_base->triples()) {
            base_entities.insert(t.subject.value());
            if (is_iri(t.object)) base_entities.insert(as_iri(t.object).value());
            base_predicates.insert(t.predicate.value());
        }
        auto achievable = [&](const MatchRecord& r) {
            const auto& side = r.match_type == MatchType::Entity ? base_entities : base_predicates;
            return side.count(r.id1) > 0 || side.count(r.id2) > 0;
        };

        auto evaluate_type = [&](MatchType type) {
            MatchSet produced, gold_full, gold_reachable;
            for (const auto& r : artifacts.produced_matches->records)
                if (r.match_type == type) produced.records.push_back(r);
            for (const auto& r : gt.expected_matches.records) {
                if (r.match_type != type) continue;
                gold_full.records.push_back(r);
                if (achievable(r)) gold_reachable.records.push_back(r);
            }
            PrecisionRecall pr;
            pr.precision = evaluate_match_set(produced, gold_full).precision;
            pr.recall = evaluate_match_set(produced, gold_reachable).recall;
            return pr;
        };
        report.entity_match = evaluate_type(MatchType::Entity);
        report.ontology_match = evaluate_type(MatchType::Relation);

        MatchSet gold_reachable;
        for (const auto& r : gt.expected_matches.records)
            if (achievable(r)) gold_reachable.records.push_back(r);
        PrecisionRecall combined;
        combined.precision =
            evaluate_match_set(*artifacts.produced_matches, gt.expected_matches).precision;
        combined.recall = evaluate_match_set(*artifacts.produced_matches, gold_reachable).recall;
        report.match_combined = combined;
    }

    // Linking metrics from JSON_KE artifacts.
    if (artifacts.ke_docs) {
        std::set<std::string> film_entities;
        for (const Triple* t : reference_kg.with_predicate(Iri(vocab::rdf_type)))
            if (is_iri(t->object) && as_iri(t->object).local_name() == "Film")
                film_entities.insert(t->subject.value());

        std::map<std::string, std::string> gold_links;
        for (const FormLink& l : gt.film_links) gold_links[normalize_text(l.form)] = l.link;

        std::size_t film_links = 0, film_correct = 0;
        std::set<std::string> found_gold_forms;
        std::map<std::string, std::pair<std::string, double>> key_assignments;
        for (const KeDoc& doc : *artifacts.ke_docs) {
            for (const FormLink& l : doc.links) {
                if (schema.properties.count(Iri(l.link)) || l.link == vocab::rdfs_label) {
                    auto it = key_assignments.find(l.form);
                    if (it == key_assignments.end() || l.score > it->second.second)
                        key_assignments[l.form] = {l.link, l.score};
                } else if (film_entities.count(l.link)) {
                    ++film_links;
                    auto it = gold_links.find(normalize_text(l.form));
                    if (it != gold_links.end() && it->second == l.link) {
                        ++film_correct;
                        found_gold_forms.insert(it->first);
                    }
                }
            }
        }
        report.entity_linking_precision =
            film_links == 0 ? 1.0
                            : static_cast<double>(film_correct) / static_cast<double>(film_links);
        report.entity_linking_recall =
            gold_links.empty() ? 1.0
                               : static_cast<double>(found_gold_forms.size()) /
                                     static_cast<double>(gold_links.size());

        if (artifacts.source_format == DataFormat::JSON) {
            std::size_t correct = 0;
            for (const auto& [form, hit] : key_assignments) {
                auto it = gt.gold_key_map.find(form);
                if (it != gt.gold_key_map.end() && it->second == hit.first) ++correct;
            }
            report.relation_linking_accuracy =
                key_assignments.empty()
                    ? 1.0
                    : static_cast<double>(correct) / static_cast<double>(key_assignments.size());
        }
    }

    // JSONa-style pipelines express key assignments as relation matches over
    // generic key predicates.
    if (artifacts.source_format == DataFormat::JSON && artifacts.produced_matches &&
        !report.relation_linking_accuracy) {
        std::map<std::string, std::pair<std::string, double>> assignments;
        for (const MatchRecord& r : artifacts.produced_matches->records) {
            if (r.match_type != MatchType::Relation) continue;
            std::string key, target;
            if (r.id1.rfind(gen_ns::key, 0) == 0) {
                key = r.id1.substr(gen_ns::key.size());
                target = r.id2;
            } else if (r.id2.rfind(gen_ns::key, 0) == 0) {
                key = r.id2.substr(gen_ns::key.size());
                target = r.id1;
            } else {
                continue;
            }
            auto it = assignments.find(key);
            if (it == assignments.end() || r.score > it->second.second)
                assignments[key] = {target, r.score};
        }
        if (!assignments.empty()) {
            std::size_t correct = 0;
            for (const auto& [key, hit] : assignments) {
                auto it = gt.gold_key_map.find(key);
                if (it != gt.gold_key_map.end() && it->second == hit.first) ++correct;
            }
            report.relation_linking_accuracy =
                static_cast<double>(correct) / static_cast<double>(assignments.size());
        }
    }

    // Source entity coverage, exact and label-fuzzy. Labels are indexed by
    // trigram per class so the fuzzy pass only scores candidates sharing at
    // least one gram.
    auto types = asserted_types(kg);
    struct ClassLabels {
        std::vector<std::set<std::string>> grams;
        std::map<std::string, std::vector<std::size_t>> by_gram;
    };
    std::map<std::string, ClassLabels> typed_labels;
    {
        LabelView kg_labels(kg);
        for (const auto& [entity, cls_set] : types) {
            auto lit = kg_labels.label_of.find(entity);
            if (lit == kg_labels.label_of.end()) continue;
            std::set<std::string> grams = trigrams(lit->second);
            for (const Iri& cls : cls_set) {
                ClassLabels& slot = typed_labels[cls.value()];
                slot.grams.push_back(grams);
                for (const auto& g : grams) slot.by_gram[g].push_back(slot.grams.size() - 1);
            }
        }
    }
    std::size_t exact = 0, fuzzy = 0;
    for (const ExpectedEntity& e : gt.expected_entities) {
        bool hit_exact = kg.contains(Triple{e.id, Iri(vocab::rdf_type), Term(e.type)});
        if (hit_exact) {
            ++exact;
            ++fuzzy;
            continue;
        }
        auto it = typed_labels.find(e.type.value());
        if (it == typed_labels.end()) continue;
        std::set<std::string> grams = trigrams(e.label);
        std::set<std::size_t> candidates;
        for (const auto& g : grams) {
            auto bucket = it->second.by_gram.find(g);
            if (bucket == it->second.by_gram.end()) continue;
            candidates.insert(bucket->second.begin(), bucket->second.end());
        }
        for (std::size_t c : candidates) {
            if (jaccard(grams, it->second.grams[c]) >= 0.9) {
                ++fuzzy;
                break;
            }
        }
    }
    std::size_t expected_total = gt.expected_entities.size();
    report.source_entity_recall = ratio(exact, expected_total);
    report.source_entity_recall_fuzzy = ratio(fuzzy, expected_total);

    // Reference coverage without the seed region.
    Graph kg_new = graph_difference(kg, seed_region);
    Graph ref_new = graph_difference(reference_kg, seed_region);
    {
        Graph inter = graph_intersection(kg_new, ref_new);
        report.kg_exact.precision =
            kg_new.empty() ? 1.0
                           : static_cast<double>(inter.size()) / static_cast<double>(kg_new.size());
        report.kg_exact.recall = ref_new.empty() ? 1.0
                                                 : static_cast<double>(inter.size()) /
                                                       static_cast<double>(ref_new.size());
    }

    LabelView kg_view(kg);
    LabelView ref_view(reference_kg);
    auto kg_labeled = labelize(kg_new, kg_view);
    auto ref_labeled = labelize(ref_new, ref_view);
    report.kg_fuzzy_entities = overlap_exact(kg_labeled, ref_labeled);
    report.kg_fuzzy_values = overlap_fuzzy_values(kg_labeled, ref_labeled);

    return report;
}

namespace {

Json pr_to_json(const PrecisionRecall& pr) {
    return Json{{"precision", pr.precision}, {"recall", pr.recall}, {"f1", pr.f1()}};
}

PrecisionRecall pr_from_json(const Json& j) {
    return {j.at("precision").get<double>(), j.at("recall").get<double>()};
}

}  // namespace

Json metric_report_to_json(const MetricReport& r) {
    Json out;
    out["pipeline"] = r.pipeline;
    out["increment"] = r.increment;
    out["sourceFormat"] = format_name(r.source_format);

    out["stats"] = Json{{"factCount", r.stats.fact_count},
                        {"entityCount", r.stats.entity_count},
                        {"relationCount", r.stats.relation_count},
                        {"typeCount", r.stats.type_count},
                        {"untypedCount", r.stats.untyped_count},
                        {"density", r.stats.density}};

    out["semantic"] = Json{{"disjointTypes", r.semantic.disjoint_types},
                           {"domain", r.semantic.domain},
                           {"range", r.semantic.range},
                           {"direction", r.semantic.direction},
                           {"literalType", r.semantic.literal_type},
                           {"literalFormat", r.semantic.literal_format},
                           {"average", r.semantic.average},
                           {"violations",
                            Json{{"disjointTypes", r.semantic.disjoint_violations},
                                 {"domain", r.semantic.domain_violations},
                                 {"range", r.semantic.range_violations},
                                 {"direction", r.semantic.direction_violations},
                                 {"literalType", r.semantic.literal_type_violations},
                                 {"literalFormat", r.semantic.literal_format_violations}}}};

    Json ref = Json::object();
    if (r.reference.entity_match) ref["entityMatch"] = pr_to_json(*r.reference.entity_match);
    if (r.reference.ontology_match) ref["ontologyMatch"] = pr_to_json(*r.reference.ontology_match);
    if (r.reference.match_combined) ref["matchCombined"] = pr_to_json(*r.reference.match_combined);
    if (r.reference.entity_linking_precision)
        ref["entityLinkingPrecision"] = *r.reference.entity_linking_precision;
    if (r.reference.entity_linking_recall)
        ref["entityLinkingRecall"] = *r.reference.entity_linking_recall;
    if (r.reference.relation_linking_accuracy)
        ref["relationLinkingAccuracy"] = *r.reference.relation_linking_accuracy;
    ref["sourceEntityRecall"] = r.reference.source_entity_recall;
    ref["sourceEntityRecallFuzzy"] = r.reference.source_entity_recall_fuzzy;
    ref["kgExact"] = pr_to_json(r.reference.kg_exact);
    ref["kgFuzzyEntities"] = pr_to_json(r.reference.kg_fuzzy_entities);
    ref["kgFuzzyValues"] = pr_to_json(r.reference.kg_fuzzy_values);
    ref["fuzzy"] = "trigram";
    out["reference"] = std::move(ref);

    Json resources = Json::object();
    resources["durationSeconds"] = r.duration_seconds;
    resources["cumulativeDurationSeconds"] = r.cumulative_duration_seconds;
    if (r.peak_memory_bytes) resources["peakMemoryBytes"] = *r.peak_memory_bytes;
    if (r.annotated_cost) resources["annotatedCost"] = *r.annotated_cost;
    out["resources"] = std::move(resources);

    out["referenceAnchors"] =
        Json{{"factCount", r.anchors.fact_count}, {"density", r.anchors.density}};
    return out;
}

MetricReport metric_report_from_json(const Json& doc) {
    MetricReport r;
    r.pipeline = doc.at("pipeline").get<std::string>();
    r.increment = doc.at("increment").get<int>();
    r.source_format = parse_format(doc.at("sourceFormat").get<std::string>());

    const Json& stats = doc.at("stats");
    r.stats.fact_count = stats.at("factCount").get<std::size_t>();
    r.stats.entity_count = stats.at("entityCount").get<std::size_t>();
    r.stats.relation_count = stats.at("relationCount").get<std::size_t>();
    r.stats.type_count = stats.at("typeCount").get<std::size_t>();
    r.stats.untyped_count = stats.at("untypedCount").get<std::size_t>();
    r.stats.density = stats.at("density").get<double>();

    const Json& sem = doc.at("semantic");
    r.semantic.disjoint_types = sem.at("disjointTypes").get<double>();
    r.semantic.domain = sem.at("domain").get<double>();
    r.semantic.range = sem.at("range").get<double>();
    r.semantic.direction = sem.at("direction").get<double>();
    r.semantic.literal_type = sem.at("literalType").get<double>();
    r.semantic.literal_format = sem.at("literalFormat").get<double>();
    r.semantic.average = sem.at("average").get<double>();
    const Json& violations = sem.at("violations");
    r.semantic.disjoint_violations = violations.at("disjointTypes").get<std::size_t>();
    r.semantic.domain_violations = violations.at("domain").get<std::size_t>();
    r.semantic.range_violations = violations.at("range").get<std::size_t>();
    r.semantic.direction_violations = violations.at("direction").get<std::size_t>();
    r.semantic.literal_type_violations = violations.at("literalType").get<std::size_t>();
    r.semantic.literal_format_violations = violations.at("literalFormat").get<std::size_t>();

    const Json& ref = doc.at("reference");
    if (ref.contains("entityMatch")) r.reference.entity_match = pr_from_json(ref["entityMatch"]);
    if (ref.contains("ontologyMatch"))
        r.reference.ontology_match = pr_from_json(ref["ontologyMatch"]);
    if (ref.contains("matchCombined"))
        r.reference.match_combined = pr_from_json(ref["matchCombined"]);
    if (ref.contains("entityLinkingPrecision"))
        r.reference.entity_linking_precision = ref.at("entityLinkingPrecision").get<double>();
    if (ref.contains("entityLinkingRecall"))
        r.reference.entity_linking_recall = ref.at("entityLinkingRecall").get<double>();
    if (ref.contains("relationLinkingAccuracy"))
        r.reference.relation_linking_accuracy = ref.at("relationLinkingAccuracy").get<double>();
    r.reference.source_entity_recall = ref.at("sourceEntityRecall").get<double>();
    r.reference.source_entity_recall_fuzzy = ref.at("sourceEntityRecallFuzzy").get<double>();
    r.reference.kg_exact = pr_from_json(ref.at("kgExact"));
    r.reference.kg_fuzzy_entities = pr_from_json(ref.at("kgFuzzyEntities"));
    r.reference.kg_fuzzy_values = pr_from_json(ref.at("kgFuzzyValues"));

    const Json& res = doc.at("resources");
    r.duration_seconds = res.at("durationSeconds").get<double>();
    r.cumulative_duration_seconds = res.at("cumulativeDurationSeconds").get<double>();
    if (res.contains("peakMemoryBytes"))
        r.peak_memory_bytes = res.at("peakMemoryBytes").get<std::uint64_t>();
    if (res.contains("annotatedCost")) r.annotated_cost = res.at("annotatedCost").get<std::string>();

    const Json& anchors = doc.at("referenceAnchors");
    r.anchors.fact_count = anchors.at("factCount").get<std::size_t>();
    r.anchors.density = anchors.at("density").get<double>();
    return r;
}

}  // namespace kgb
