#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgb/exchange.hpp"
#include "kgb/ontology.hpp"
#include "kgb/rdf.hpp"

namespace kgb {

/// Statistical metrics of a KG.
struct StatReport {
    std::size_t fact_count = 0;      // S_FC
    std::size_t entity_count = 0;    // S_EC
    std::size_t relation_count = 0;  // S_RC distinct predicate names
    std::size_t type_count = 0;      // S_TC distinct asserted classes
    std::size_t untyped_count = 0;   // S_UT entities without rdf:type
    double density = 0.0;            // S_D in [0,1]
};

/// Semantic validation scores, each a compliance ratio in [0,1]; empty
/// denominators score 1. Violation counts ride along for error analysis.
struct SemReport {
    double disjoint_types = 1.0;    // O_DT
    double domain = 1.0;            // O_D
    double range = 1.0;             // O_R
    double direction = 1.0;         // O_RD
    double literal_type = 1.0;      // O_LT
    double literal_format = 1.0;    // O_LF
    double average = 1.0;           // O_Avg

    std::size_t disjoint_violations = 0;
    std::size_t domain_violations = 0;
    std::size_t range_violations = 0;
    std::size_t direction_violations = 0;
    std::size_t literal_type_violations = 0;
    std::size_t literal_format_violations = 0;
};

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f1() const {
        return precision + recall == 0.0 ? 0.0
                                         : 2.0 * precision * recall / (precision + recall);
    }
};

struct MatchEvaluation {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Reference metrics; optional fields are absent when the pipeline produced
/// no artifact for them (never reported as zero).
struct RefReport {
    std::optional<PrecisionRecall> entity_match;        // R_EM, RDF pipelines
    std::optional<PrecisionRecall> ontology_match;      // R_OM, RDF pipelines
    std::optional<PrecisionRecall> match_combined;      // pooled entity+relation
    std::optional<double> entity_linking_precision;     // R_EL, film links
    std::optional<double> entity_linking_recall;        // share of gold film links found
    std::optional<double> relation_linking_accuracy;    // R_RL, key->property
    double source_entity_recall = 0.0;                  // R_SE, exact id+type
    double source_entity_recall_fuzzy = 0.0;            // ~R_SE, label >= 0.9
    PrecisionRecall kg_exact;                           // R_KG (no seed)
    PrecisionRecall kg_fuzzy_entities;                  // ~R_KG label-aligned
    PrecisionRecall kg_fuzzy_values;                    // ~R'_KG fuzzy literals
};

StatReport compute_statistics(const Graph& kg, const OntologySchema& schema);
SemReport compute_semantic(const Graph& kg, const OntologySchema& schema);

/// Standard set precision/recall over (id1, id2, type) pairs with pair order
/// normalized; empty produced scores precision 1 by convention.
MatchEvaluation evaluate_match_set(const MatchSet& produced, const MatchSet& gold);

/// Everything the reference metrics can mine out of a finished run.
struct PipelineArtifacts {
    DataFormat source_format = DataFormat::RDF;
    std::optional<MatchSet> produced_matches;
    std::optional<std::vector<KeDoc>> ke_docs;
    /// Graph the matcher aligned against (KG of the previous increment);
    /// restricts gold recall to correspondences reachable from it.
    const Graph* alignment_base = nullptr;
};

RefReport compute_reference(const Graph& kg, const GroundTruthBundle& gt,
                            const Graph& reference_kg, const Graph& seed_region,
                            const OntologySchema& schema, const PipelineArtifacts& artifacts);

/// Normalization anchors carried inside each report so ranking needs no
/// access to the benchmark directory.
struct ReferenceAnchors {
    std::size_t fact_count = 0;
    double density = 0.0;
};

/// The combined per-(pipeline, increment) evaluation document.
struct MetricReport {
    std::string pipeline;
    int increment = 1;
    DataFormat source_format = DataFormat::RDF;
    StatReport stats;
    SemReport semantic;
    RefReport reference;
    double duration_seconds = 0.0;             // this increment
    double cumulative_duration_seconds = 0.0;  // increments 1..n
    std::optional<std::uint64_t> peak_memory_bytes;
    std::optional<std::string> annotated_cost;
    ReferenceAnchors anchors;
};

Json metric_report_to_json(const MetricReport& report);
MetricReport metric_report_from_json(const Json& doc);

}  // namespace kgb
