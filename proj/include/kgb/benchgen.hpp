#pragma once

#include <string>
#include <vector>

#include "kgb/exchange.hpp"
#include "kgb/ontology.hpp"
#include "kgb/rdf.hpp"

namespace kgb {

/// Fixed namespaces of the synthetic movie benchmark.
namespace bench_ns {
inline const std::string ref = "http://kgbench.org/ref/";
inline const std::string cls = ref + "class/";
inline const std::string prop = ref + "prop/";
inline const std::string ext = "http://kgbench.org/ext/";

inline std::string shaded(int source_index) {
    return "http://kgbench.org/src" + std::to_string(source_index) + "/";
}
}  // namespace bench_ns

struct BenchConfig {
    std::size_t n_films = 100;  // presets 100 / 1000 / 10000
    int n_splits = 4;
    double film_overlap_rate = 0.05;
    std::uint64_t rng_seed = 42;
    double ambiguity_rate = 0.2;
};

/// The fixed movie ontology: Film/Person/Company, 23 declared properties
/// (25 counting rdf:type and rdfs:label), full pairwise disjointness, and
/// maxCardinality 1 on the date and money properties.
Graph build_ontology_graph();

struct SplitSummary {
    int index = 0;  // 0 is the seed split
    std::size_t films = 0;
    std::size_t entities = 0;
    std::size_t film_overlap_with_seed = 0;
    double entity_overlap_with_seed = 0.0;  // share incl. persons/companies
};

struct GenerateSummary {
    std::string out_dir;
    std::vector<SplitSummary> splits;
};

/// Writes the full benchmark bundle:
///   ontology.nt reference.nt seed.nt seed_region.nt manifest.json
///   source<i>/{source.nt,source.json,source.txt}
///   source<i>/gt/{matches.er.json,expected_entities.json,gold_keymap.json,film_links.json}
/// Byte-identical for identical configs.
GenerateSummary generate(const BenchConfig& config, const std::string& out_dir);

struct AuditReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Recomputes the construction constraints of a bundle on disk: split sizes
/// and overlaps, shading isomorphism, ground-truth consistency, key-map
/// coverage, and manifest checksums.
AuditReport audit_bundle(const std::string& dir);

/// Read-only handle over a generated bundle.
struct Bundle {
    std::string dir;
    OntologySchema schema;
    Graph reference;
    Graph seed;
    Graph seed_region;
    int n_sources = 0;

    std::string source_path(int i, DataFormat format) const;
    std::string gt_dir(int i) const;
    GroundTruthBundle ground_truth(int i) const;
    Graph source_graph(int i) const;
    /// Shaded source renamed back into the reference namespace.
    Graph unshaded_source(int i) const;
};

Bundle load_bundle(const std::string& dir);

}  // namespace kgb
