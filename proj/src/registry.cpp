#include "kgb/pipeline.hpp"
#include "kgb/tasks.hpp"

namespace kgb {

void TaskRegistry::add(TaskSignature signature, std::optional<BuiltinFn> builtin) {
    if (signature.inputs.empty() || signature.outputs.empty())
        throw Error("task signature needs at least one input and one output: " + signature.name);
    std::string name = signature.name;
    if (entries_.count(name)) throw Error("duplicate task name in registry: " + name);
    entries_.emplace(std::move(name), Entry{std::move(signature), std::move(builtin)});
}

const TaskRegistry::Entry* TaskRegistry::find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> TaskRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [name, _] : entries_) out.push_back(name);
    return out;
}

namespace {

const OntologySchema& need_schema(const TaskContext& ctx, const char* task) {
    if (!ctx.schema) throw TaskError(std::string(task) + ": engine has no ontology loaded");
    return *ctx.schema;
}

Json thresholds(std::initializer_list<std::pair<const char*, double>> defaults,
                bool with_iterations = false) {
    Json out = Json::object();
    for (const auto& [key, value] : defaults) out[key] = value;
    if (with_iterations) out["maxIterations"] = 3;
    return out;
}

}  // namespace

TaskRegistry TaskRegistry::standard() {
    TaskRegistry reg;
    using F = DataFormat;

    reg.add({"tabularize", {F::RDF}, {F::CSV}},
            [](const std::vector<std::string>& in, const Json&, const TaskContext&) {
                return std::vector<std::string>{serialize_csv(tabularize(parse_ntriples(in[0])))};
            });

    reg.add({"json_to_rdf", {F::JSON}, {F::RDF}},
            [](const std::vector<std::string>& in, const Json&, const TaskContext&) {
                return std::vector<std::string>{
                    serialize_ntriples(json_to_rdf(Json::parse(in[0])))};
            });

    reg.add({"json_linking", {F::JSON, F::RDF}, {F::JSON_KE},
             thresholds({{"linkThreshold", 0.8}})},
            [](const std::vector<std::string>& in, const Json& cfg, const TaskContext& ctx) {
                auto docs = json_linking(Json::parse(in[0]), parse_ntriples(in[1]),
                                         need_schema(ctx, "json_linking"),
                                         similarity_config_from(cfg));
                return std::vector<std::string>{serialize_ke_docs(docs)};
            });

    reg.add({"generate_rdf_ke", {F::JSON_KE}, {F::RDF}},
            [](const std::vector<std::string>& in, const Json&, const TaskContext& ctx) {
                auto g = generate_rdf_ke(parse_ke_docs(in[0]), need_schema(ctx, "generate_rdf_ke"));
                return std::vector<std::string>{serialize_ntriples(g)};
            });

    reg.add({"graph_align", {F::RDF, F::RDF}, {F::JSON_ER},
             thresholds({{"entityThreshold", 0.99}, {"relationThreshold", 0.5}}, true)},
            [](const std::vector<std::string>& in, const Json& cfg, const TaskContext&) {
                auto ms = graph_align(parse_ntriples(in[0]), parse_ntriples(in[1]),
                                      similarity_config_from(cfg));
                return std::vector<std::string>{serialize_match_set(ms)};
            });

    reg.add({"csv_record_link", {F::CSV, F::CSV}, {F::JSON_ER},
             thresholds({{"csvRecordThreshold", 0.5}})},
            [](const std::vector<std::string>& in, const Json& cfg, const TaskContext&) {
                auto ms = csv_record_link(parse_csv(in[0]), parse_csv(in[1]),
                                          similarity_config_from(cfg));
                return std::vector<std::string>{serialize_match_set(ms)};
            });

    reg.add({"csv_schema_match", {F::CSV, F::CSV}, {F::JSON_ER},
             thresholds({{"csvSchemaThreshold", 0.1}})},
            [](const std::vector<std::string>& in, const Json& cfg, const TaskContext&) {
                auto ms = csv_schema_match(parse_csv(in[0]), parse_csv(in[1]),
                                           similarity_config_from(cfg));
                return std::vector<std::string>{serialize_match_set(ms)};
            });

    reg.add({"merge_matches", {F::JSON_ER, F::JSON_ER}, {F::JSON_ER}},
            [](const std::vector<std::string>& in, const Json&, const TaskContext&) {
                MatchSet merged = parse_match_set(in[0]);
                MatchSet second = parse_match_set(in[1]);
                merged.records.insert(merged.records.end(), second.records.begin(),
                                      second.records.end());
                merged.normalize();
                return std::vector<std::string>{serialize_match_set(merged)};
            });

    reg.add({"fusion_first", {F::RDF, F::RDF, F::JSON_ER}, {F::RDF}},
            [](const std::vector<std::string>& in, const Json&, const TaskContext& ctx) {
                auto result = fusion_first(parse_ntriples(in[0]), parse_ntriples(in[1]),
                                           parse_match_set(in[2]),
                                           need_schema(ctx, "fusion_first"));
                return std::vector<std::string>{serialize_ntriples(result.graph)};
            });

    reg.add({"select_first", {F::RDF, F::RDF}, {F::RDF}},
            [](const std::vector<std::string>& in, const Json&, const TaskContext& ctx) {
                auto result = select_first(parse_ntriples(in[0]), parse_ntriples(in[1]),
                                           need_schema(ctx, "select_first"));
                return std::vector<std::string>{serialize_ntriples(result.graph)};
            });

    reg.add({"text_extract", {F::TEXT}, {F::JSON_KE}},
            [](const std::vector<std::string>& in, const Json&, const TaskContext&) {
                return std::vector<std::string>{serialize_ke_docs(text_extract(in[0]))};
            });

    reg.add({"entity_link", {F::JSON_KE, F::RDF}, {F::JSON_KE},
             thresholds({{"linkThreshold", 0.8}})},
            [](const std::vector<std::string>& in, const Json& cfg, const TaskContext&) {
                auto docs = entity_link(parse_ke_docs(in[0]), parse_ntriples(in[1]),
                                        similarity_config_from(cfg));
                return std::vector<std::string>{serialize_ke_docs(docs)};
            });

    reg.add({"relation_link", {F::JSON_KE}, {F::JSON_KE},
             thresholds({{"linkThreshold", 0.8}})},
            [](const std::vector<std::string>& in, const Json& cfg, const TaskContext& ctx) {
                auto docs = relation_link(parse_ke_docs(in[0]),
                                          need_schema(ctx, "relation_link"),
                                          similarity_config_from(cfg));
                return std::vector<std::string>{serialize_ke_docs(docs)};
            });

    // Remote-only contracts; reachable through the service backend.
    reg.add({"llm_extract", {F::TEXT}, {F::JSON_KE}});
    reg.add({"llm_mapping", {F::JSON, F::RDF}, {F::RDF}});
    reg.add({"llm_matcher", {F::RDF, F::RDF}, {F::JSON_ER}});

    return reg;
}

}  // namespace kgb
