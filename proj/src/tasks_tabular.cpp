#include <algorithm>
#include <map>

#include "kgb/tasks.hpp"
#include "kgb/textsim.hpp"

namespace kgb {

SimilarityConfig similarity_config_from(const Json& config) {
    SimilarityConfig cfg;
    auto get = [&](const char* key, double& slot) {
        if (config.contains(key)) slot = config.at(key).get<double>();
    };
    get("entityThreshold", cfg.entity_threshold);
    get("relationThreshold", cfg.relation_threshold);
    get("linkThreshold", cfg.link_threshold);
    get("csvRecordThreshold", cfg.csv_record_threshold);
    get("csvSchemaThreshold", cfg.csv_schema_threshold);
    if (config.contains("maxIterations")) cfg.max_iterations = config.at("maxIterations").get<int>();
    return cfg;
}

CsvTable tabularize(const Graph& kg) {
    GraphStats stats = graph_stats_primitives(kg);

    std::vector<std::string> predicates;
    for (const Iri& p : stats.predicates)
        if (p.value() != vocab::rdf_type) predicates.push_back(p.value());
    std::sort(predicates.begin(), predicates.end());

    CsvTable table;
    table.header.push_back("id");
    table.header.push_back("type");
    for (const auto& p : predicates) table.header.push_back(p);

    std::map<std::string, std::size_t> column_of;
    for (std::size_t i = 0; i < table.header.size(); ++i) column_of[table.header[i]] = i;

    for (const Iri& entity : stats.entities) {
        std::map<std::size_t, std::vector<std::string>> cells;
        for (const Triple* t : kg.with_subject(entity)) {
            std::string value = is_iri(t->object) ? as_iri(t->object).value()
                                                  : as_literal(t->object).lexical();
            std::size_t col = t->predicate.value() == vocab::rdf_type
                                  ? 1
                                  : column_of.at(t->predicate.value());
            cells[col].push_back(std::move(value));
        }
        std::vector<std::string> row(table.header.size());
        row[0] = entity.value();
        for (auto& [col, values] : cells) row[col] = join_multi_value(std::move(values));
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return table;
}

MatchSet csv_record_link(const CsvTable& a, const CsvTable& b, const SimilarityConfig& cfg) {
    if (a.column("id") < 0 || b.column("id") < 0)
        throw TaskError("csv_record_link: both tables need an 'id' column");

    auto row_tokens = [](const CsvTable& t, const std::vector<std::string>& row) {
        std::set<std::string> out;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (t.header[c] == "id") continue;
            for (const std::string& v : split_multi_value(row[c]))
                for (const std::string& tok : tokens(v)) out.insert(tok);
        }
        return out;
    };

    // Blocking key: tokens of the label column when present, else all tokens.
    int label_a = a.column(vocab::rdfs_label);
    int label_b = b.column(vocab::rdfs_label);
    auto blocking_tokens = [&](const CsvTable& t, int label_col,
                               const std::vector<std::string>& row,
                               const std::set<std::string>& all) {
        if (label_col < 0) return all;
        std::set<std::string> out;
        for (const std::string& v : split_multi_value(row[static_cast<std::size_t>(label_col)]))
            for (const std::string& tok : tokens(v)) out.insert(tok);
        return out.empty() ? all : out;
    };

    std::vector<std::set<std::string>> tokens_a(a.rows.size()), tokens_b(b.rows.size());
    std::map<std::string, std::vector<std::size_t>> block;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        tokens_a[i] = row_tokens(a, a.rows[i]);
        for (const auto& tok : blocking_tokens(a, label_a, a.rows[i], tokens_a[i]))
            block[tok].push_back(i);
    }

    std::set<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t j = 0; j < b.rows.size(); ++j) {
        tokens_b[j] = row_tokens(b, b.rows[j]);
        for (const auto& tok : blocking_tokens(b, label_b, b.rows[j], tokens_b[j])) {
            auto it = block.find(tok);
            if (it == block.end()) continue;
            for (std::size_t i : it->second) candidates.insert({i, j});
        }
    }

    struct Scored {
        double score;
        std::string id_a, id_b;
    };
    std::vector<Scored> scored;
    std::size_t ida = static_cast<std::size_t>(a.column("id"));
    std::size_t idb = static_cast<std::size_t>(b.column("id"));
    for (const auto& [i, j] : candidates) {
        double s = jaccard(tokens_a[i], tokens_b[j]);
        if (s >= cfg.csv_record_threshold)
            scored.push_back({s, a.rows[i][ida], b.rows[j][idb]});
    }

    // Greedy one-to-one under the clean-clean assumption.
    std::sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
        if (x.score != y.score) return x.score > y.score;
        return std::tie(x.id_a, x.id_b) < std::tie(y.id_a, y.id_b);
    });
    std::set<std::string> used_a, used_b;
    MatchSet ms;
    for (const auto& s : scored) {
        if (used_a.count(s.id_a) || used_b.count(s.id_b)) continue;
        used_a.insert(s.id_a);
        used_b.insert(s.id_b);
        ms.records.push_back({s.id_a, s.id_b, MatchType::Entity, s.score});
    }
    ms.normalize();
    return ms;
}

MatchSet csv_schema_match(const CsvTable& a, const CsvTable& b, const SimilarityConfig& cfg) {
    auto column_values = [](const CsvTable& t, std::size_t col) {
        std::set<std::string> out;
        for (const auto& row : t.rows)
            for (const std::string& v : split_multi_value(row[col]))
                if (!v.empty()) out.insert(normalize_text(v));
        return out;
    };
    auto header_name = [](const std::string& h) {
        std::size_t pos = h.find_last_of("/#");
        return pos == std::string::npos ? h : h.substr(pos + 1);
    };
    auto skip = [](const std::string& h) { return h == "id" || h == "type"; };

    MatchSet ms;
    for (std::size_t i = 0; i < a.header.size(); ++i) {
        if (skip(a.header[i])) continue;
        auto values_a = column_values(a, i);
        for (std::size_t j = 0; j < b.header.size(); ++j) {
            if (skip(b.header[j]) || a.header[i] == b.header[j]) continue;
            double name_sim = trigram_similarity(header_name(a.header[i]), header_name(b.header[j]));
            double inst_sim = jaccard(values_a, column_values(b, j));
            if (values_a.empty()) inst_sim = 0.0;
            double score = std::max(name_sim, inst_sim);
            if (score >= cfg.csv_schema_threshold)
                ms.records.push_back({a.header[i], b.header[j], MatchType::Relation, score});
        }
    }
    ms.normalize();
    return ms;
}

}  // namespace kgb
