#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgb/rdf.hpp"

namespace kgb {

using Json = nlohmann::ordered_json;

/// The only typing pipeline validation knows about.
enum class DataFormat { RDF, JSON, TEXT, CSV, JSON_ER, JSON_KE };

std::string format_name(DataFormat f);
DataFormat parse_format(const std::string& name);
/// File extension without the dot (nt, json, csv, txt).
std::string format_extension(DataFormat f);

enum class MatchType { Entity, Relation };

struct MatchRecord {
    std::string id1;
    std::string id2;
    MatchType match_type = MatchType::Entity;
    double score = 0.0;
};

/// Scored entity/relation correspondences (the JSON_ER exchange format).
struct MatchSet {
    std::vector<MatchRecord> records;

    /// Drops duplicate (id1, id2, type) entries keeping the maximum score and
    /// sorts into canonical (type, id1, id2) order.
    void normalize();

    std::vector<MatchRecord> entity_matches() const;
    std::vector<MatchRecord> relation_matches() const;
};

struct SurfaceTriple {
    std::string head;
    std::string rel;
    std::string tail;
};

struct FormLink {
    std::string form;
    std::string link;
    double score = 0.0;
};

/// One document of the JSON_KE exchange format: raw text, extracted surface
/// triples, and form-to-IRI links.
struct KeDoc {
    std::string text;
    std::vector<SurfaceTriple> triples;  // input order preserved
    std::vector<FormLink> links;         // canonicalized to (form, link) order
};

MatchSet parse_match_set(const std::string& text);
std::string serialize_match_set(const MatchSet& ms);

std::vector<KeDoc> parse_ke_docs(const std::string& text);
std::string serialize_ke_docs(const std::vector<KeDoc>& docs);

struct ExpectedEntity {
    Iri id;
    Iri type;
    std::string label;
};

/// Ground truth shipped with each (seed, source) pair.
struct GroundTruthBundle {
    MatchSet expected_matches;                  // gold correspondences, score 1.0
    std::vector<ExpectedEntity> expected_entities;
    std::map<std::string, std::string> gold_key_map;  // JSON key path -> property IRI ("" = none)
    std::vector<FormLink> film_links;           // film surface form -> reference IRI
};

GroundTruthBundle load_ground_truth(const std::string& dir);
void save_ground_truth(const GroundTruthBundle& gt, const std::string& dir);

/// Raises FormatBoundaryError unless `content` parses as `format`.
void validate_content(DataFormat format, const std::string& content);

}  // namespace kgb
