#pragma once

#include <string>
#include <vector>

#include "kgb/csv.hpp"
#include "kgb/exchange.hpp"
#include "kgb/ontology.hpp"
#include "kgb/rdf.hpp"

namespace kgb {

/// Similarity thresholds shared by the matching and linking tasks. Defaults
/// mirror the fixed evaluation thresholds: entities 0.99, relations 0.5,
/// linkers 0.8, record linkage 0.5, schema matching 0.1.
struct SimilarityConfig {
    double entity_threshold = 0.99;
    double relation_threshold = 0.5;
    double link_threshold = 0.8;
    double csv_record_threshold = 0.5;
    double csv_schema_threshold = 0.1;
    int max_iterations = 3;
};

/// Namespace used by json_to_rdf for minted subjects, predicates, and types.
namespace gen_ns {
inline const std::string doc = "http://kgbench.org/gen/doc/";
inline const std::string key = "http://kgbench.org/gen/key/";
inline const std::string type = "http://kgbench.org/gen/type/";
}  // namespace gen_ns

/// Namespace for entities minted from unresolved surface forms.
inline const std::string new_entity_ns = "http://kgbench.org/new/";

/// One row per entity: id, type, then one column per distinct predicate in
/// canonical order; multi-valued cells joined with '|'.
CsvTable tabularize(const Graph& kg);

/// Lifts an array of JSON objects to generic RDF. Subjects are minted from a
/// stable content hash; scalar values become gen:key attributes, nested
/// objects become linked subjects, and every subject is typed by its path key.
Graph json_to_rdf(const Json& docs);

/// Lifts JSON documents to JSON_KE, linking object labels to KG entities and
/// keys to schema properties at `link_threshold`. Unlinked forms carry no
/// link; downstream materialization mints identifiers for them.
std::vector<KeDoc> json_linking(const Json& docs, const Graph& kg, const OntologySchema& schema,
                                const SimilarityConfig& cfg);

/// Materializes JSON_KE to RDF. Heads/tails resolve through entity links,
/// relations through property links; unresolved relations drop the triple,
/// unresolved entities mint deterministic IRIs (labelled with their surface
/// form). Attribute tails become literals typed per the schema range when the
/// lexical form parses, else xsd:string.
Graph generate_rdf_ke(const std::vector<KeDoc>& docs, const OntologySchema& schema);

/// Iterative joint entity/relation alignment between two RDF graphs.
/// Bootstrap scores entity pairs by IDF-weighted overlap of identical literal
/// values; subsequent rounds align relations by the fraction of matched
/// endpoint pairs they connect and rescore entities with relation evidence.
MatchSet graph_align(const Graph& seed, const Graph& source, const SimilarityConfig& cfg);

/// Clean-clean record linkage: token blocking on label tokens, Jaccard over
/// all cell-value tokens, greedy one-to-one assignment.
MatchSet csv_record_link(const CsvTable& a, const CsvTable& b, const SimilarityConfig& cfg);

/// Schema matching over two CSVs: per column pair, the maximum of header-name
/// trigram similarity and instance-value Jaccard overlap.
MatchSet csv_schema_match(const CsvTable& a, const CsvTable& b, const SimilarityConfig& cfg);

struct FusionResult {
    Graph graph;
    std::vector<std::string> warnings;
};

/// Merges `source` into `seed` under a current-KG-first policy: source ids and
/// predicates are rewritten per the matches, triples outside the ontology
/// inventory are dropped, single-valued properties keep the seed value when
/// present (else the first source value in canonical order), and types are
/// materialized via the schema.
FusionResult fusion_first(const Graph& seed, const Graph& source, const MatchSet& matches,
                          const OntologySchema& schema);

/// fusion_first with an empty match set; identifiers were resolved upstream.
FusionResult select_first(const Graph& seed, const Graph& source, const OntologySchema& schema);

/// Pattern-based extraction over blank-line separated documents. Each
/// sentence runs through an ordered verb-phrase rule list; one KeDoc per
/// document, links empty.
std::vector<KeDoc> text_extract(const std::string& text);

/// Links head/tail surface forms to the KG entity with the most similar
/// label (trigram similarity at `link_threshold`). Existing links are kept.
std::vector<KeDoc> entity_link(std::vector<KeDoc> docs, const Graph& kg,
                               const SimilarityConfig& cfg);

/// Links relation surface forms to schema properties via label/altLabel
/// similarity at `link_threshold`.
std::vector<KeDoc> relation_link(std::vector<KeDoc> docs, const OntologySchema& schema,
                                 const SimilarityConfig& cfg);

SimilarityConfig similarity_config_from(const Json& config);

/// True when the literal's lexical form is valid for the datatype
/// (integer/double/date/gYear/boolean/string rules).
bool lexical_form_valid(const std::string& lexical, const Iri& datatype);

}  // namespace kgb
