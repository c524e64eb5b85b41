#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "kgb/errors.hpp"

namespace kgb {

namespace vocab {
inline const std::string rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline const std::string rdf_lang_string = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline const std::string rdfs_label = "http://www.w3.org/2000/01/rdf-schema#label";
inline const std::string rdfs_domain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline const std::string rdfs_range = "http://www.w3.org/2000/01/rdf-schema#range";
inline const std::string owl_class = "http://www.w3.org/2002/07/owl#Class";
inline const std::string owl_object_property = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline const std::string owl_datatype_property = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline const std::string owl_disjoint_with = "http://www.w3.org/2002/07/owl#disjointWith";
inline const std::string owl_equivalent_class = "http://www.w3.org/2002/07/owl#equivalentClass";
inline const std::string owl_equivalent_property = "http://www.w3.org/2002/07/owl#equivalentProperty";
inline const std::string skos_alt_label = "http://www.w3.org/2004/02/skos/core#altLabel";
inline const std::string xsd_ns = "http://www.w3.org/2001/XMLSchema#";
inline const std::string xsd_string = xsd_ns + "string";
inline const std::string xsd_integer = xsd_ns + "integer";
inline const std::string xsd_double = xsd_ns + "double";
inline const std::string xsd_boolean = xsd_ns + "boolean";
inline const std::string xsd_date = xsd_ns + "date";
inline const std::string xsd_gyear = xsd_ns + "gYear";
/// Direct annotation used instead of OWL restriction patterns (no blank nodes).
inline const std::string max_cardinality = "http://kgbench.org/meta/maxCardinality";
}  // namespace vocab

/// Absolute IRI. Non-empty and whitespace-free by construction.
class Iri {
public:
    Iri() = default;
    explicit Iri(std::string value);

    const std::string& value() const { return value_; }
    bool starts_with(std::string_view prefix) const;

    /// Segment after the last '/' or '#'; used for display and header matching.
    std::string local_name() const;

    bool operator==(const Iri& o) const { return value_ == o.value_; }
    bool operator!=(const Iri& o) const { return value_ != o.value_; }
    bool operator<(const Iri& o) const { return value_ < o.value_; }

private:
    std::string value_;
};

/// Typed literal. Datatype defaults to xsd:string; a language tag is only
/// permitted together with rdf:langString.
class Literal {
public:
    Literal() : datatype_(Iri(vocab::xsd_string)) {}
    explicit Literal(std::string lexical, Iri datatype = Iri(vocab::xsd_string),
                     std::optional<std::string> lang_tag = std::nullopt);

    const std::string& lexical() const { return lexical_; }
    const Iri& datatype() const { return datatype_; }
    const std::optional<std::string>& lang_tag() const { return lang_tag_; }

    bool operator==(const Literal& o) const {
        return lexical_ == o.lexical_ && datatype_ == o.datatype_ && lang_tag_ == o.lang_tag_;
    }

private:
    std::string lexical_;
    Iri datatype_;
    std::optional<std::string> lang_tag_;
};

using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const Literal& as_literal(const Term& t) { return std::get<Literal>(t); }

/// N-Triples serialization of a single term.
std::string nt_term(const Term& t);
std::string nt_iri(const Iri& iri);

struct Triple {
    Iri subject;
    Iri predicate;
    Term object;

    bool operator==(const Triple& o) const {
        return subject == o.subject && predicate == o.predicate && object == o.object;
    }
};

/// The triple's serialized line without the trailing " .". Canonical graph
/// order is the code-point order of these lines.
std::string nt_line(const Triple& t);

/// Immutable set of triples with subject/predicate/object indexes.
/// Construction sorts into canonical order and collapses duplicates, so
/// insertion order is never observable.
class Graph {
public:
    Graph() = default;
    static Graph from_triples(std::vector<Triple> triples);

    const std::vector<Triple>& triples() const { return triples_; }
    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }
    bool contains(const Triple& t) const;

    /// Index-backed lookups; results are in canonical order and equal what a
    /// linear scan would return.
    std::vector<const Triple*> with_subject(const Iri& s) const;
    std::vector<const Triple*> with_predicate(const Iri& p) const;
    std::vector<const Triple*> with_object(const Term& o) const;

    bool operator==(const Graph& o) const { return triples_ == o.triples_; }

private:
    std::vector<Triple> triples_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_subject_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_predicate_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_object_;
};

Graph graph_union(const Graph& a, const Graph& b);
Graph graph_difference(const Graph& a, const Graph& b);
Graph graph_intersection(const Graph& a, const Graph& b);

/// Parses UTF-8 N-Triples text. Comment lines and blank lines are skipped;
/// any malformed line aborts the parse with a ParseError naming the line.
Graph parse_ntriples(std::string_view text);

/// Canonical serialization: one line per triple, sorted, " .\n" terminated.
/// parse(serialize(g)) == g, and equal graphs serialize byte-identically.
std::string serialize_ntriples(const Graph& g);

/// Rewrites every IRI starting with `from` so it starts with `to` instead.
/// Applies to all positions; literals are untouched.
Graph rename_namespace(const Graph& g, const std::string& from, const std::string& to);

struct GraphStats {
    std::set<Iri> entities;    // subjects plus IRI objects of non-type predicates
    std::set<Iri> predicates;  // distinct predicate IRIs
    std::set<Iri> classes;     // distinct objects of rdf:type
};

GraphStats graph_stats_primitives(const Graph& g);

Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace kgb
