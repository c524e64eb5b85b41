#include "kgb/ranking.hpp"

#include <algorithm>
#include <cmath>

namespace kgb {

void WeightScheme::validate() const {
    if (alpha < 0 || beta < 0 || gamma < 0 || delta < 0)
        throw Error("weight scheme '" + name + "': weights must be nonnegative");
    if (std::abs(alpha + beta + gamma + delta - 1.0) > 1e-9)
        throw Error("weight scheme '" + name + "': weights must sum to 1");
}

const std::vector<WeightScheme>& builtin_schemes() {
    static const std::vector<WeightScheme> schemes = {
        {"equal", 0.25, 0.25, 0.25, 0.25},
        {"quantity", 0.50, 0.10, 0.10, 0.30},
        {"quality", 0.0, 0.50, 0.50, 0.0},
        {"reference", 0.0, 0.20, 0.80, 0.0},
        {"efficiency", 0.20, 0.20, 0.20, 0.40},
    };
    return schemes;
}

const WeightScheme& scheme_by_name(const std::string& name) {
    for (const auto& s : builtin_schemes())
        if (s.name == name) return s;
    throw Error("unknown weighting scheme: " + name);
}

double normalize_count(double value, double reference) {
    if (reference <= 0.0) throw Error("normalize: reference must be positive");
    if (value < 0.0) throw Error("normalize: count must be nonnegative");
    return std::min(value / reference, 1.0);
}

double normalize_resource(double value, double cohort_min) {
    if (value <= 0.0 || cohort_min <= 0.0)
        throw Error("normalize: resource values must be positive");
    return cohort_min / value;
}

GroupScores group_scores(const MetricReport& report, const CohortMinima& minima,
                         bool* duration_only) {
    GroupScores g;
    g.size = (normalize_count(static_cast<double>(report.stats.fact_count),
                              static_cast<double>(report.anchors.fact_count)) +
              normalize_count(report.stats.density, report.anchors.density)) /
             2.0;

    const SemReport& s = report.semantic;
    g.consistency = (s.disjoint_types + (s.domain + s.range) / 2.0 + s.direction +
                     (s.literal_type + s.literal_format) / 2.0) /
                    4.0;

    double task_score = 0.0;
    switch (report.source_format) {
        case DataFormat::RDF:
            if (!report.reference.match_combined)
                throw Error("group_scores: RDF pipeline report lacks ER/OM matching metrics");
            task_score = report.reference.match_combined->f1();
            break;
        case DataFormat::JSON:
            if (!report.reference.relation_linking_accuracy)
                throw Error("group_scores: JSON pipeline report lacks relation-linking accuracy");
            task_score = *report.reference.relation_linking_accuracy;
            break;
        case DataFormat::TEXT:
            if (!report.reference.entity_linking_recall)
                throw Error("group_scores: TEXT pipeline report lacks entity-linking recall");
            task_score = *report.reference.entity_linking_recall;
            break;
        default:
            throw Error("group_scores: unsupported source format");
    }
    g.integration = (report.reference.kg_fuzzy_entities.f1() +
                     report.reference.source_entity_recall_fuzzy + task_score) /
                    3.0;

    double duration_score =
        normalize_resource(report.cumulative_duration_seconds, minima.duration_seconds);
    if (report.peak_memory_bytes && minima.peak_memory_bytes) {
        double memory_score = normalize_resource(static_cast<double>(*report.peak_memory_bytes),
                                                 *minima.peak_memory_bytes);
        g.efficiency = (duration_score + memory_score) / 2.0;
        if (duration_only) *duration_only = false;
    } else {
        g.efficiency = duration_score;
        if (duration_only) *duration_only = true;
    }
    return g;
}

double total_score(const GroupScores& groups, const WeightScheme& scheme) {
    scheme.validate();
    return scheme.alpha * groups.size + scheme.beta * groups.consistency +
           scheme.gamma * groups.integration + scheme.delta * groups.efficiency;
}

std::vector<PipelineScore> rank_pipelines(std::vector<PipelineScore> scores) {
    std::sort(scores.begin(), scores.end(), [](const PipelineScore& a, const PipelineScore& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.pipeline < b.pipeline;
    });
    return scores;
}

CohortMinima cohort_minima(const std::vector<MetricReport>& cohort) {
    if (cohort.empty()) throw Error("cohort of size 0 for resource normalization");
    CohortMinima minima;
    minima.duration_seconds = cohort.front().cumulative_duration_seconds;
    for (const auto& r : cohort) {
        minima.duration_seconds = std::min(minima.duration_seconds, r.cumulative_duration_seconds);
        if (r.peak_memory_bytes) {
            double mem = static_cast<double>(*r.peak_memory_bytes);
            if (!minima.peak_memory_bytes || mem < *minima.peak_memory_bytes)
                minima.peak_memory_bytes = mem;
        }
    }
    if (minima.duration_seconds <= 0.0) minima.duration_seconds = 1e-9;
    return minima;
}

}  // namespace kgb
