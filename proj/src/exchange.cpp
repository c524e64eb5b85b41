#include "kgb/exchange.hpp"

#include <algorithm>
#include <filesystem>

#include "kgb/csv.hpp"

namespace kgb {

std::string format_name(DataFormat f) {
    switch (f) {
        case DataFormat::RDF: return "RDF";
        case DataFormat::JSON: return "JSON";
        case DataFormat::TEXT: return "TEXT";
        case DataFormat::CSV: return "CSV";
        case DataFormat::JSON_ER: return "JSON_ER";
        case DataFormat::JSON_KE: return "JSON_KE";
    }
    return "RDF";
}

DataFormat parse_format(const std::string& name) {
    if (name == "RDF") return DataFormat::RDF;
    if (name == "JSON") return DataFormat::JSON;
    if (name == "TEXT") return DataFormat::TEXT;
    if (name == "CSV") return DataFormat::CSV;
    if (name == "JSON_ER") return DataFormat::JSON_ER;
    if (name == "JSON_KE") return DataFormat::JSON_KE;
    throw Error("unknown data format: " + name);
}

std::string format_extension(DataFormat f) {
    switch (f) {
        case DataFormat::RDF: return "nt";
        case DataFormat::CSV: return "csv";
        case DataFormat::TEXT: return "txt";
        default: return "json";
    }
}

namespace {

std::string match_type_name(MatchType t) {
    return t == MatchType::Entity ? "entity" : "relation";
}

MatchType parse_match_type(const std::string& s, std::size_t index) {
    if (s == "entity") return MatchType::Entity;
    if (s == "relation") return MatchType::Relation;
    throw ParseError(index, s, "unknown match type");
}

std::tuple<std::string, std::string, std::string> record_key(const MatchRecord& r) {
    return {match_type_name(r.match_type), r.id1, r.id2};
}

}  // namespace

void MatchSet::normalize() {
    std::sort(records.begin(), records.end(), [](const MatchRecord& a, const MatchRecord& b) {
        auto ka = record_key(a), kb = record_key(b);
        if (ka != kb) return ka < kb;
        return a.score > b.score;
    });
    records.erase(std::unique(records.begin(), records.end(),
                              [](const MatchRecord& a, const MatchRecord& b) {
                                  return record_key(a) == record_key(b);
                              }),
                  records.end());
}

std::vector<MatchRecord> MatchSet::entity_matches() const {
    std::vector<MatchRecord> out;
    for (const auto& r : records)
        if (r.match_type == MatchType::Entity) out.push_back(r);
    return out;
}

std::vector<MatchRecord> MatchSet::relation_matches() const {
    std::vector<MatchRecord> out;
    for (const auto& r : records)
        if (r.match_type == MatchType::Relation) out.push_back(r);
    return out;
}

MatchSet parse_match_set(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(0, "", std::string("JSON_ER: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError(0, "", "JSON_ER: top level must be an array");

    MatchSet ms;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const Json& rec = doc[i];
        if (!rec.is_object()) throw ParseError(i, rec.dump(), "record must be an object");
        for (const char* key : {"id1", "id2", "type", "score"})
            if (!rec.contains(key))
                throw ParseError(i, rec.dump(), std::string("missing key '") + key + "'");
        if (!rec["id1"].is_string() || !rec["id2"].is_string() || !rec["type"].is_string())
            throw ParseError(i, rec.dump(), "id1/id2/type must be strings");
        if (!rec["score"].is_number())
            throw ParseError(i, rec.dump(), "score must be a number");
        MatchRecord r;
        r.id1 = rec["id1"].get<std::string>();
        r.id2 = rec["id2"].get<std::string>();
        r.match_type = parse_match_type(rec["type"].get<std::string>(), i);
        r.score = rec["score"].get<double>();
        if (r.score < 0.0 || r.score > 1.0)
            throw ParseError(i, rec.dump(), "score out of [0,1]");
        ms.records.push_back(std::move(r));
    }
    ms.normalize();
    return ms;
}

std::string serialize_match_set(const MatchSet& ms) {
    MatchSet canon = ms;
    canon.normalize();
    Json out = Json::array();
    for (const auto& r : canon.records) {
        Json rec;
        rec["id1"] = r.id1;
        rec["id2"] = r.id2;
        rec["type"] = match_type_name(r.match_type);
        rec["score"] = r.score;
        out.push_back(std::move(rec));
    }
    return out.dump(2) + "\n";
}

namespace {

KeDoc parse_ke_doc(const Json& doc, std::size_t index) {
    if (!doc.is_object()) throw ParseError(index, doc.dump(), "KeDoc must be an object");
    for (const char* key : {"text", "triples", "links"})
        if (!doc.contains(key))
            throw ParseError(index, doc.dump(), std::string("missing key '") + key + "'");
    if (!doc["text"].is_string()) throw ParseError(index, doc.dump(), "text must be a string");
    if (!doc["triples"].is_array() || !doc["links"].is_array())
        throw ParseError(index, doc.dump(), "triples/links must be arrays");

    KeDoc out;
    out.text = doc["text"].get<std::string>();
    for (const Json& t : doc["triples"]) {
        if (!t.is_object() || !t.contains("head") || !t.contains("rel") || !t.contains("tail") ||
            !t["head"].is_string() || !t["rel"].is_string() || !t["tail"].is_string())
            throw ParseError(index, t.dump(), "surface triple fields must be strings");
        out.triples.push_back({t["head"].get<std::string>(), t["rel"].get<std::string>(),
                               t["tail"].get<std::string>()});
    }
    for (const Json& l : doc["links"]) {
        if (!l.is_object() || !l.contains("form") || !l.contains("link") || !l.contains("score") ||
            !l["form"].is_string() || !l["link"].is_string() || !l["score"].is_number())
            throw ParseError(index, l.dump(), "malformed link");
        FormLink link{l["form"].get<std::string>(), l["link"].get<std::string>(),
                      l["score"].get<double>()};
        if (link.form.empty()) throw ParseError(index, l.dump(), "link form must be non-empty");
        if (link.score < 0.0 || link.score > 1.0)
            throw ParseError(index, l.dump(), "link score out of [0,1]");
        out.links.push_back(std::move(link));
    }
    std::sort(out.links.begin(), out.links.end(), [](const FormLink& a, const FormLink& b) {
        return std::tie(a.form, a.link) < std::tie(b.form, b.link);
    });
    return out;
}

Json ke_doc_to_json(const KeDoc& doc) {
    Json out;
    out["text"] = doc.text;
    Json triples = Json::array();
    for (const auto& t : doc.triples)
        triples.push_back(Json{{"head", t.head}, {"rel", t.rel}, {"tail", t.tail}});
    out["triples"] = std::move(triples);

    std::vector<FormLink> links = doc.links;
    std::sort(links.begin(), links.end(), [](const FormLink& a, const FormLink& b) {
        return std::tie(a.form, a.link) < std::tie(b.form, b.link);
    });
    Json jlinks = Json::array();
    for (const auto& l : links)
        jlinks.push_back(Json{{"form", l.form}, {"link", l.link}, {"score", l.score}});
    out["links"] = std::move(jlinks);
    return out;
}

}  // namespace

std::vector<KeDoc> parse_ke_docs(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(0, "", std::string("JSON_KE: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError(0, "", "JSON_KE: top level must be an array of KeDocs");
    std::vector<KeDoc> out;
    for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_ke_doc(doc[i], i));
    return out;
}

std::string serialize_ke_docs(const std::vector<KeDoc>& docs) {
    Json out = Json::array();
    for (const auto& d : docs) out.push_back(ke_doc_to_json(d));
    return out.dump(2) + "\n";
}

GroundTruthBundle load_ground_truth(const std::string& dir) {
    namespace fs = std::filesystem;
    GroundTruthBundle gt;
    gt.expected_matches = parse_match_set(read_file((fs::path(dir) / "matches.er.json").string()));

    Json entities = Json::parse(read_file((fs::path(dir) / "expected_entities.json").string()));
    for (const Json& e : entities)
        gt.expected_entities.push_back({Iri(e.at("id").get<std::string>()),
                                        Iri(e.at("type").get<std::string>()),
                                        e.at("label").get<std::string>()});

    Json keymap = Json::parse(read_file((fs::path(dir) / "gold_keymap.json").string()));
    for (auto it = keymap.begin(); it != keymap.end(); ++it)
        gt.gold_key_map[it.key()] = it.value().get<std::string>();

    Json links = Json::parse(read_file((fs::path(dir) / "film_links.json").string()));
    for (const Json& l : links)
        gt.film_links.push_back(
            {l.at("form").get<std::string>(), l.at("link").get<std::string>(), 1.0});
    return gt;
}

void save_ground_truth(const GroundTruthBundle& gt, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_file((fs::path(dir) / "matches.er.json").string(),
               serialize_match_set(gt.expected_matches));

    Json entities = Json::array();
    for (const auto& e : gt.expected_entities)
        entities.push_back(
            Json{{"id", e.id.value()}, {"type", e.type.value()}, {"label", e.label}});
    write_file((fs::path(dir) / "expected_entities.json").string(), entities.dump(2) + "\n");

    Json keymap = Json::object();
    for (const auto& [k, v] : gt.gold_key_map) keymap[k] = v;
    write_file((fs::path(dir) / "gold_keymap.json").string(), keymap.dump(2) + "\n");

    Json links = Json::array();
    for (const auto& l : gt.film_links)
        links.push_back(Json{{"form", l.form}, {"link", l.link}});
    write_file((fs::path(dir) / "film_links.json").string(), links.dump(2) + "\n");
}

void validate_content(DataFormat format, const std::string& content) {
    try {
        switch (format) {
            case DataFormat::RDF: parse_ntriples(content); break;
            case DataFormat::JSON:
                if (!Json::parse(content).is_array())
                    throw Error("JSON source must be a top-level array");
                break;
            case DataFormat::TEXT: break;
            case DataFormat::CSV: parse_csv(content); break;
            case DataFormat::JSON_ER: parse_match_set(content); break;
            case DataFormat::JSON_KE: parse_ke_docs(content); break;
        }
    } catch (const std::exception& e) {
        throw FormatBoundaryError("content does not parse as " + format_name(format) + ": " +
                                  e.what());
    }
}

}  // namespace kgb
