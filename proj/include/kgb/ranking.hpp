#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgb/metrics.hpp"

namespace kgb {

struct GroupScores {
    double size = 0.0;         // GM1
    double consistency = 0.0;  // GM2
    double integration = 0.0;  // GM3
    double efficiency = 0.0;   // GM4
};

struct WeightScheme {
    std::string name;
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;

    /// Weights must be nonnegative and sum to 1 within 1e-9.
    void validate() const;
};

/// equal, quantity, quality, reference, efficiency.
const std::vector<WeightScheme>& builtin_schemes();
const WeightScheme& scheme_by_name(const std::string& name);

/// Count normalization: min(value/reference, 1); over-generation is not
/// rewarded. Resource normalization: cohort_min/value, 1 for the cheapest.
double normalize_count(double value, double reference);
double normalize_resource(double value, double cohort_min);

struct CohortMinima {
    double duration_seconds = 0.0;
    std::optional<double> peak_memory_bytes;
};

/// Group metrics from one evaluation report. GM3's task-specific slot is the
/// combined ER/OM f-score for RDF sources, relation-linking accuracy for
/// JSON, and film entity-linking recall for TEXT; a missing required
/// sub-metric is an error. `duration_only` reports whether GM4 had to fall
/// back to duration alone.
GroupScores group_scores(const MetricReport& report, const CohortMinima& minima,
                         bool* duration_only = nullptr);

double total_score(const GroupScores& groups, const WeightScheme& scheme);

struct PipelineScore {
    std::string pipeline;
    GroupScores groups;
    double total = 0.0;
};

/// Descending by total, ties broken by pipeline name.
std::vector<PipelineScore> rank_pipelines(std::vector<PipelineScore> scores);

/// Minima over the cohort entering one ranking (duration, optional memory).
CohortMinima cohort_minima(const std::vector<MetricReport>& cohort);

}  // namespace kgb
