#include <algorithm>
#include <cctype>
#include <map>

#include "kgb/rng.hpp"
#include "kgb/tasks.hpp"
#include "kgb/textsim.hpp"

namespace kgb {

bool lexical_form_valid(const std::string& lexical, const Iri& datatype) {
    const std::string& dt = datatype.value();
    auto all_digits = [](const std::string& s, std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };

    if (dt == vocab::xsd_integer) {
        std::size_t start = (!lexical.empty() && (lexical[0] == '+' || lexical[0] == '-')) ? 1 : 0;
        return all_digits(lexical, start, lexical.size());
    }
    if (dt == vocab::xsd_double) {
        if (lexical.empty()) return false;
        char* end = nullptr;
        errno = 0;
        std::strtod(lexical.c_str(), &end);
        return errno == 0 && end == lexical.c_str() + lexical.size();
    }
    if (dt == vocab::xsd_date) {
        if (lexical.size() != 10 || lexical[4] != '-' || lexical[7] != '-') return false;
        if (!all_digits(lexical, 0, 4) || !all_digits(lexical, 5, 7) || !all_digits(lexical, 8, 10))
            return false;
        int month = std::stoi(lexical.substr(5, 2));
        int day = std::stoi(lexical.substr(8, 2));
        return month >= 1 && month <= 12 && day >= 1 && day <= 31;
    }
    if (dt == vocab::xsd_gyear) return lexical.size() == 4 && all_digits(lexical, 0, 4);
    if (dt == vocab::xsd_boolean)
        return lexical == "true" || lexical == "false" || lexical == "0" || lexical == "1";
    return true;  // strings and unknown datatypes accept any lexical form
}

namespace {

std::string doc_hash(const Json& value) { return to_hex(fnv1a64(value.dump())); }

Literal scalar_literal(const Json& value) {
    if (value.is_string()) return Literal(value.get<std::string>());
    if (value.is_boolean()) return Literal(value.get<bool>() ? "true" : "false",
                                           Iri(vocab::xsd_boolean));
    if (value.is_number_integer() || value.is_number_unsigned())
        return Literal(value.dump(), Iri(vocab::xsd_integer));
    if (value.is_number_float()) return Literal(value.dump(), Iri(vocab::xsd_double));
    return Literal(value.dump());
}

void lift_object(const Json& obj, const std::string& path_key, std::vector<Triple>& out,
                 std::string& subject_out) {
    Iri subject(gen_ns::doc + doc_hash(obj));
    subject_out = subject.value();
    out.push_back(Triple{subject, Iri(vocab::rdf_type), Term(Iri(gen_ns::type + path_key))});

    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& key = it.key();
        const Json& value = it.value();
        Iri predicate(gen_ns::key + key);

        auto link_child = [&](const Json& child) {
            std::string child_subject;
            lift_object(child, key, out, child_subject);
            out.push_back(Triple{subject, predicate, Term(Iri(child_subject))});
        };

        if (value.is_object()) {
            link_child(value);
        } else if (value.is_array()) {
            for (const Json& element : value) {
                if (element.is_object()) link_child(element);
                else if (!element.is_null())
                    out.push_back(Triple{subject, predicate, Term(scalar_literal(element))});
            }
        } else if (!value.is_null()) {
            out.push_back(Triple{subject, predicate, Term(scalar_literal(value))});
        }
    }
}

/// Display form of a JSON object: a label-ish key when present, else the
/// concatenation of its scalar values.
std::string object_form(const Json& obj) {
    for (const char* key : {"label", "title", "name"}) {
        if (obj.contains(key) && obj[key].is_string()) return obj[key].get<std::string>();
    }
    std::string concat;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (it.value().is_object() || it.value().is_array()) continue;
        if (!concat.empty()) concat += ' ';
        concat += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
    return concat;
}

std::string scalar_to_string(const Json& value) {
    return value.is_string() ? value.get<std::string>() : value.dump();
}

}  // namespace

Graph json_to_rdf(const Json& docs) {
    if (!docs.is_array()) throw TaskError("json_to_rdf: input must be an array of objects");
    std::vector<Triple> out;
    for (const Json& doc : docs) {
        if (!doc.is_object()) throw TaskError("json_to_rdf: non-object top-level element");
        std::string subject;
        lift_object(doc, "root", out, subject);
    }
    return Graph::from_triples(std::move(out));
}

namespace {

/// Label index over a KG with precomputed trigrams and a gram-level inverted
/// index; only labels sharing at least one gram with the form are scored.
struct LabelIndex {
    struct Entry {
        std::string iri;
        std::set<std::string> grams;
    };
    std::vector<Entry> entries;
    std::map<std::string, std::vector<std::size_t>> by_gram;

    explicit LabelIndex(const Graph& kg) {
        for (const Triple* t : kg.with_predicate(Iri(vocab::rdfs_label))) {
            if (is_iri(t->object)) continue;
            entries.push_back({t->subject.value(), trigrams(as_literal(t->object).lexical())});
        }
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (const auto& g : entries[i].grams) by_gram[g].push_back(i);
    }

    /// Best link for a form at the threshold; equal scores break toward the
    /// lower IRI.
    std::optional<FormLink> best(const std::string& form, double threshold) const {
        std::set<std::string> grams_f = trigrams(form);
        std::set<std::size_t> candidates;
        for (const auto& g : grams_f) {
            auto it = by_gram.find(g);
            if (it == by_gram.end()) continue;
            candidates.insert(it->second.begin(), it->second.end());
        }
        double best_score = 0.0;
        const std::string* best_iri = nullptr;
        for (std::size_t i : candidates) {
            double s = jaccard(grams_f, entries[i].grams);
            if (s > best_score || (s == best_score && best_iri && entries[i].iri < *best_iri)) {
                best_score = s;
                best_iri = &entries[i].iri;
            }
        }
        if (!best_iri || best_score < threshold) return std::nullopt;
        return FormLink{form, *best_iri, best_score};
    }
};

std::optional<FormLink> best_property_link(const std::string& key, const OntologySchema& schema,
                                           double threshold) {
    double best_score = 0.0;
    const Iri* best_prop = nullptr;
    for (const auto& [iri, spec] : schema.properties) {
        double s = trigram_similarity(key, spec.label);
        for (const std::string& alt : spec.alt_labels)
            s = std::max(s, trigram_similarity(key, alt));
        if (s > best_score || (s == best_score && best_prop && iri < *best_prop)) {
            best_score = s;
            best_prop = &iri;
        }
    }
    if (!best_prop || best_score < threshold) return std::nullopt;
    return FormLink{key, best_prop->value(), best_score};
}

void add_link_once(std::vector<FormLink>& links, const FormLink& link) {
    for (const auto& existing : links)
        if (existing.form == link.form) return;
    links.push_back(link);
}

void collect_surface(const Json& obj, const std::string& form, KeDoc& doc,
                     std::vector<std::pair<std::string, bool>>& forms) {
    forms.emplace_back(form, true);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& key = it.key();
        const Json& value = it.value();
        forms.emplace_back(key, false);

        auto nested = [&](const Json& child) {
            std::string child_form = object_form(child);
            doc.triples.push_back({form, key, child_form});
            collect_surface(child, child_form, doc, forms);
        };

        if (value.is_object()) {
            nested(value);
        } else if (value.is_array()) {
            for (const Json& element : value) {
                if (element.is_object()) nested(element);
                else if (!element.is_null())
                    doc.triples.push_back({form, key, scalar_to_string(element)});
            }
        } else if (!value.is_null()) {
            doc.triples.push_back({form, key, scalar_to_string(value)});
        }
    }
}

}  // namespace

std::vector<KeDoc> json_linking(const Json& docs, const Graph& kg, const OntologySchema& schema,
                                const SimilarityConfig& cfg) {
    if (!docs.is_array()) throw TaskError("json_linking: input must be an array of objects");
    LabelIndex index(kg);

    std::vector<KeDoc> out;
    for (const Json& obj : docs) {
        if (!obj.is_object()) throw TaskError("json_linking: non-object top-level element");
        KeDoc doc;
        std::vector<std::pair<std::string, bool>> forms;  // (form, is_entity)
        collect_surface(obj, object_form(obj), doc, forms);

        for (const auto& [form, is_entity] : forms) {
            if (form.empty()) continue;
            std::optional<FormLink> link =
                is_entity ? index.best(form, cfg.link_threshold)
                          : best_property_link(form, schema, cfg.link_threshold);
            if (link) add_link_once(doc.links, *link);
        }
        std::sort(doc.links.begin(), doc.links.end(), [](const FormLink& a, const FormLink& b) {
            return std::tie(a.form, a.link) < std::tie(b.form, b.link);
        });
        out.push_back(std::move(doc));
    }
    return out;
}

Graph generate_rdf_ke(const std::vector<KeDoc>& docs, const OntologySchema& schema) {
    std::vector<Triple> out;
    for (const KeDoc& doc : docs) {
        // Highest-scoring link per form, split into relation links (targets
        // are schema properties) and entity links (everything else).
        std::map<std::string, FormLink> entity_links, relation_links;
        for (const FormLink& link : doc.links) {
            bool is_property = schema.properties.count(Iri(link.link)) > 0;
            auto& slot = is_property ? relation_links : entity_links;
            auto it = slot.find(link.form);
            if (it == slot.end() || link.score > it->second.score) slot[link.form] = link;
        }

        auto resolve_entity = [&](const std::string& form) {
            auto it = entity_links.find(form);
            if (it != entity_links.end()) return Iri(it->second.link);
            Iri minted(new_entity_ns + to_hex(fnv1a64(normalize_text(form))));
            out.push_back(Triple{minted, Iri(vocab::rdfs_label), Term(Literal(form))});
            return minted;
        };

        for (const SurfaceTriple& st : doc.triples) {
            auto rel = relation_links.find(st.rel);
            if (rel == relation_links.end()) continue;  // unresolved relation: drop
            const PropertySpec* spec = schema.find_property(Iri(rel->second.link));
            if (!spec) continue;

            Iri head = resolve_entity(st.head);
            if (spec->kind == PropertyKind::Relation) {
                out.push_back(Triple{head, spec->iri, Term(resolve_entity(st.tail))});
            } else {
                Iri datatype = lexical_form_valid(st.tail, spec->range) ? spec->range
                                                                        : Iri(vocab::xsd_string);
                out.push_back(Triple{head, spec->iri, Term(Literal(st.tail, datatype))});
            }
        }
    }
    return Graph::from_triples(std::move(out));
}

std::vector<KeDoc> entity_link(std::vector<KeDoc> docs, const Graph& kg,
                               const SimilarityConfig& cfg) {
    LabelIndex index(kg);
    for (KeDoc& doc : docs) {
        std::set<std::string> linked;
        for (const FormLink& l : doc.links) linked.insert(l.form);
        std::set<std::string> forms;
        for (const SurfaceTriple& st : doc.triples) {
            forms.insert(st.head);
            forms.insert(st.tail);
        }
        for (const std::string& form : forms) {
            if (form.empty() || linked.count(form)) continue;
            if (auto link = index.best(form, cfg.link_threshold)) doc.links.push_back(*link);
        }
        std::sort(doc.links.begin(), doc.links.end(), [](const FormLink& a, const FormLink& b) {
            return std::tie(a.form, a.link) < std::tie(b.form, b.link);
        });
    }
    return docs;
}

std::vector<KeDoc> relation_link(std::vector<KeDoc> docs, const OntologySchema& schema,
                                 const SimilarityConfig& cfg) {
    for (KeDoc& doc : docs) {
        std::set<std::string> linked;
        for (const FormLink& l : doc.links) linked.insert(l.form);
        std::set<std::string> rels;
        for (const SurfaceTriple& st : doc.triples) rels.insert(st.rel);
        for (const std::string& rel : rels) {
            if (rel.empty() || linked.count(rel)) continue;
            if (auto link = best_property_link(rel, schema, cfg.link_threshold))
                doc.links.push_back(*link);
        }
        std::sort(doc.links.begin(), doc.links.end(), [](const FormLink& a, const FormLink& b) {
            return std::tie(a.form, a.link) < std::tie(b.form, b.link);
        });
    }
    return docs;
}

}  // namespace kgb
