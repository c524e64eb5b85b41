#include "kgb/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <map>

namespace kgb {

namespace fs = std::filesystem;

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Builtin: return "builtin";
        case Backend::Command: return "command";
        case Backend::Service: return "service";
    }
    return "builtin";
}

Backend parse_backend(const std::string& name) {
    if (name == "builtin") return Backend::Builtin;
    if (name == "command") return Backend::Command;
    if (name == "service") return Backend::Service;
    throw Error("unknown backend: " + name);
}

std::string PortRef::to_string() const {
    switch (kind) {
        case Kind::Seed: return "$seed";
        case Kind::Source: return "$source";
        case Kind::TaskOutput: return task_id + ".out" + std::to_string(out_index);
    }
    return "$seed";
}

PortRef parse_port_ref(const std::string& text) {
    if (text == "$seed") return {PortRef::Kind::Seed, "", 0};
    if (text == "$source") return {PortRef::Kind::Source, "", 0};
    std::size_t dot = text.rfind(".out");
    if (dot == std::string::npos || dot == 0)
        throw Error("malformed port reference: " + text);
    std::string index_part = text.substr(dot + 4);
    if (index_part.empty() ||
        index_part.find_first_not_of("0123456789") != std::string::npos)
        throw Error("malformed port reference: " + text);
    return {PortRef::Kind::TaskOutput, text.substr(0, dot), std::stoi(index_part)};
}

const PipelineSpec& PipelineProgram::stage_for_increment(int increment) const {
    if (stages.empty()) throw Error("pipeline program has no stages");
    return stages[static_cast<std::size_t>((increment - 1) % static_cast<int>(stages.size()))];
}

PipelineSpec pipeline_spec_from_json(const Json& doc) {
    PipelineSpec spec;
    spec.name = doc.at("name").get<std::string>();
    spec.source_format = parse_format(doc.at("sourceFormat").get<std::string>());
    for (const Json& jt : doc.at("tasks")) {
        TaskSpec task;
        task.id = jt.at("id").get<std::string>();
        task.task = jt.at("task").get<std::string>();
        task.backend = jt.contains("backend") ? parse_backend(jt.at("backend").get<std::string>())
                                              : Backend::Builtin;
        for (const Json& ref : jt.at("inputs"))
            task.inputs.push_back(parse_port_ref(ref.get<std::string>()));
        if (jt.contains("config")) task.config = jt.at("config");
        spec.tasks.push_back(std::move(task));
    }
    spec.output = parse_port_ref(doc.at("output").get<std::string>());
    return spec;
}

PipelineProgram load_pipeline_file(const std::string& path) {
    Json doc = Json::parse(read_file(path));
    PipelineProgram program;
    if (doc.contains("stages")) {
        program.name = doc.at("name").get<std::string>();
        for (const Json& stage : doc.at("stages"))
            program.stages.push_back(pipeline_spec_from_json(stage));
    } else {
        PipelineSpec spec = pipeline_spec_from_json(doc);
        program.name = spec.name;
        program.stages.push_back(std::move(spec));
    }
    return program;
}

std::string ValidationResult::summary() const {
    if (ok()) return "OK";
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += '\n';
        out += v.task_id.empty() ? v.message : v.task_id + " [" + v.port + "]: " + v.message;
    }
    return out;
}

ValidationResult validate_pipeline(const PipelineSpec& spec, const TaskRegistry& registry) {
    ValidationResult result;
    auto violate = [&](const std::string& task_id, const std::string& port,
                       const std::string& message) {
        result.violations.push_back({task_id, port, message});
    };

    // Formats available at each point; filled task by task.
    std::map<std::string, const TaskSignature*> resolved;  // task id -> signature
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
        const std::string& id = spec.tasks[i].id;
        if (position.count(id)) violate(id, "", "duplicate task id");
        position[id] = i;
    }

    auto resolve_format = [&](const PortRef& ref, std::size_t task_index,
                              bool& known) -> DataFormat {
        known = true;
        switch (ref.kind) {
            case PortRef::Kind::Seed: return DataFormat::RDF;
            case PortRef::Kind::Source: return spec.source_format;
            case PortRef::Kind::TaskOutput: break;
        }
        auto pos = position.find(ref.task_id);
        if (pos == position.end()) {
            known = false;
            violate(ref.task_id, ref.to_string(), "dangling reference to unknown task");
            return DataFormat::RDF;
        }
        if (pos->second >= task_index) {
            known = false;
            violate(ref.task_id, ref.to_string(),
                    "forward reference: tasks form a cycle or refer to later outputs");
            return DataFormat::RDF;
        }
        auto sig = resolved.find(ref.task_id);
        if (sig == resolved.end()) {
            known = false;  // upstream task itself unknown; already reported
            return DataFormat::RDF;
        }
        if (ref.out_index < 0 ||
            ref.out_index >= static_cast<int>(sig->second->outputs.size())) {
            known = false;
            violate(ref.task_id, ref.to_string(), "output port index out of range");
            return DataFormat::RDF;
        }
        return sig->second->outputs[static_cast<std::size_t>(ref.out_index)];
    };

    for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
        const TaskSpec& task = spec.tasks[i];
        const TaskRegistry::Entry* entry = registry.find(task.task);
        if (!entry) {
            violate(task.id, "", "unknown task name: " + task.task);
            continue;
        }
        if (task.backend == Backend::Builtin && !entry->builtin)
            violate(task.id, "", "task has no builtin implementation: " + task.task);

        const TaskSignature& sig = entry->signature;
        if (task.inputs.size() != sig.inputs.size()) {
            violate(task.id, "",
                    "input arity mismatch: expected " + std::to_string(sig.inputs.size()) +
                        ", got " + std::to_string(task.inputs.size()));
        } else {
            for (std::size_t k = 0; k < task.inputs.size(); ++k) {
                bool known = false;
                DataFormat actual = resolve_format(task.inputs[k], i, known);
                if (known && actual != sig.inputs[k])
                    violate(task.id, task.inputs[k].to_string(),
                            "expected " + format_name(sig.inputs[k]) + ", got " +
                                format_name(actual));
            }
        }
        resolved[task.id] = &sig;
    }

    if (spec.output.kind != PortRef::Kind::TaskOutput) {
        violate("", spec.output.to_string(), "pipeline output must reference a task output");
    } else {
        bool known = false;
        DataFormat fmt = resolve_format(spec.output, spec.tasks.size(), known);
        if (known && fmt != DataFormat::RDF)
            violate(spec.output.task_id, spec.output.to_string(),
                    "pipeline output must carry RDF, got " + format_name(fmt));
    }
    return result;
}

namespace {

Json merged_config(const TaskSignature& sig, const Json& overrides) {
    Json out = sig.config_defaults;
    for (auto it = overrides.begin(); it != overrides.end(); ++it) out[it.key()] = it.value();
    return out;
}

std::string flag_value(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

Json run_report_to_json(const RunReport& report) {
    Json out;
    out["pipeline"] = report.pipeline;
    out["increment"] = report.increment;
    out["sourceFormat"] = format_name(report.source_format);
    Json tasks = Json::array();
    for (const auto& t : report.per_task) {
        Json jt;
        jt["id"] = t.task_id;
        jt["task"] = t.task;
        jt["backend"] = backend_name(t.backend);
        jt["durationSeconds"] = t.duration_seconds;
        if (t.peak_memory_bytes) jt["peakMemoryBytes"] = *t.peak_memory_bytes;
        Json outputs = Json::array();
        for (const auto& [path, format] : t.outputs)
            outputs.push_back(Json{{"path", path}, {"format", format_name(format)}});
        jt["outputs"] = std::move(outputs);
        if (!t.notes.empty()) jt["notes"] = t.notes;
        tasks.push_back(std::move(jt));
    }
    out["tasks"] = std::move(tasks);
    out["totalDurationSeconds"] = report.total_duration_seconds;
    if (report.max_peak_memory_bytes) out["maxPeakMemoryBytes"] = *report.max_peak_memory_bytes;
    if (report.annotated_cost) out["annotatedCost"] = *report.annotated_cost;
    out["resultKg"] = report.result_kg;
    return out;
}

RunReport run_report_from_json(const Json& doc) {
    RunReport report;
    report.pipeline = doc.at("pipeline").get<std::string>();
    report.increment = doc.at("increment").get<int>();
    report.source_format = parse_format(doc.at("sourceFormat").get<std::string>());
    for (const Json& jt : doc.at("tasks")) {
        TaskRunReport t;
        t.task_id = jt.at("id").get<std::string>();
        t.task = jt.at("task").get<std::string>();
        t.backend = parse_backend(jt.at("backend").get<std::string>());
        t.duration_seconds = jt.at("durationSeconds").get<double>();
        if (jt.contains("peakMemoryBytes"))
            t.peak_memory_bytes = jt.at("peakMemoryBytes").get<std::uint64_t>();
        for (const Json& o : jt.at("outputs"))
            t.outputs.emplace_back(o.at("path").get<std::string>(),
                                   parse_format(o.at("format").get<std::string>()));
        if (jt.contains("notes"))
            for (const Json& n : jt.at("notes")) t.notes.push_back(n.get<std::string>());
        report.per_task.push_back(std::move(t));
    }
    report.total_duration_seconds = doc.at("totalDurationSeconds").get<double>();
    if (doc.contains("maxPeakMemoryBytes"))
        report.max_peak_memory_bytes = doc.at("maxPeakMemoryBytes").get<std::uint64_t>();
    if (doc.contains("annotatedCost"))
        report.annotated_cost = doc.at("annotatedCost").get<std::string>();
    report.result_kg = doc.at("resultKg").get<std::string>();
    return report;
}

ExecutionResult execute_pipeline(const PipelineSpec& spec, const std::string& seed_path,
                                 const std::string& source_path, const std::string& workdir,
                                 const TaskRegistry& registry, const EngineOptions& options) {
    ValidationResult validation = validate_pipeline(spec, registry);
    if (!validation.ok())
        throw PipelineError("pipeline failed static validation:\n" + validation.summary());

    if (!fs::exists(seed_path)) throw PipelineError("seed file missing: " + seed_path);
    if (!fs::exists(source_path)) throw PipelineError("source file missing: " + source_path);
    validate_content(DataFormat::RDF, read_file(seed_path));
    validate_content(spec.source_format, read_file(source_path));

    fs::create_directories(workdir);

    // Port -> staged file path.
    std::map<std::string, std::string> port_paths;
    port_paths["$seed"] = seed_path;
    port_paths["$source"] = source_path;

    RunReport report;
    report.pipeline = spec.name;
    report.source_format = spec.source_format;

    TaskContext ctx{options.schema};
    auto wall = [] { return std::chrono::steady_clock::now(); };
    auto started = wall();

    for (const TaskSpec& task : spec.tasks) {
        const TaskRegistry::Entry& entry = *registry.find(task.task);
        const TaskSignature& sig = entry.signature;
        Json config = merged_config(sig, task.config);

        std::vector<std::string> input_paths;
        for (const PortRef& ref : task.inputs) input_paths.push_back(port_paths.at(ref.to_string()));

        std::vector<std::string> output_paths;
        for (std::size_t k = 0; k < sig.outputs.size(); ++k)
            output_paths.push_back((fs::path(workdir) / (task.id + ".out" + std::to_string(k) +
                                                          "." + format_extension(sig.outputs[k])))
                                       .string());

        TaskRunReport task_report;
        task_report.task_id = task.id;
        task_report.task = task.task;
        task_report.backend = task.backend;
        auto t0 = wall();

        try {
            switch (task.backend) {
                case Backend::Builtin: {
                    std::vector<std::string> inputs;
                    for (const auto& p : input_paths) inputs.push_back(read_file(p));
                    std::vector<std::string> outputs = (*entry.builtin)(inputs, config, ctx);
                    if (outputs.size() != sig.outputs.size())
                        throw PipelineError("builtin task produced wrong output arity", task.id);
                    for (std::size_t k = 0; k < outputs.size(); ++k)
                        write_file(output_paths[k], outputs[k]);
                    break;
                }
                case Backend::Command: {
                    if (!config.contains("command"))
                        throw PipelineError("command backend requires config.command", task.id);
                    std::vector<std::string> argv{config.at("command").get<std::string>()};
                    argv.insert(argv.end(), input_paths.begin(), input_paths.end());
                    argv.insert(argv.end(), output_paths.begin(), output_paths.end());
                    for (auto it = config.begin(); it != config.end(); ++it)
                        if (it.key() != "command")
                            argv.push_back("--" + it.key() + "=" + flag_value(it.value()));
                    CommandResult res = run_command(argv);
                    task_report.peak_memory_bytes = res.peak_rss_bytes;
                    if (!res.captured_stderr.empty())
                        task_report.notes.push_back("stderr: " + res.captured_stderr);
                    if (res.exit_code != 0)
                        throw PipelineError("command exited with status " +
                                                std::to_string(res.exit_code) + ": " +
                                                res.captured_stderr,
                                            task.id);
                    for (std::size_t k = 0; k < output_paths.size(); ++k) {
                        if (!fs::exists(output_paths[k]))
                            throw PipelineError("command did not produce output " +
                                                    output_paths[k],
                                                task.id);
                        validate_content(sig.outputs[k], read_file(output_paths[k]));
                    }
                    break;
                }
                case Backend::Service: {
                    if (!config.contains("endpoint"))
                        throw PipelineError("service backend requires config.endpoint", task.id);
                    double timeout = options.service_timeout_seconds;
                    if (config.contains("timeoutSeconds"))
                        timeout = config.at("timeoutSeconds").get<double>();
                    std::vector<ServicePort> inputs;
                    for (std::size_t k = 0; k < input_paths.size(); ++k)
                        inputs.push_back({"in" + std::to_string(k), format_name(sig.inputs[k]),
                                          read_file(input_paths[k])});
                    auto outputs = invoke_service_task(config.at("endpoint").get<std::string>(),
                                                       task.task, inputs, config, timeout);
                    if (outputs.size() != sig.outputs.size())
                        throw FormatBoundaryError("service returned wrong output arity", task.id);
                    for (std::size_t k = 0; k < outputs.size(); ++k) {
                        if (outputs[k].format != format_name(sig.outputs[k]))
                            throw FormatBoundaryError(
                                "service output " + std::to_string(k) + " declared " +
                                    outputs[k].format + ", expected " +
                                    format_name(sig.outputs[k]),
                                task.id);
                        validate_content(sig.outputs[k], outputs[k].content);
                        write_file(output_paths[k], outputs[k].content);
                    }
                    break;
                }
            }
        } catch (const FormatBoundaryError& e) {
            if (e.task_id().empty()) throw FormatBoundaryError(e.what(), task.id);
            throw;
        } catch (const PipelineError& e) {
            if (e.task_id().empty()) throw PipelineError(e.what(), task.id);
            throw;
        } catch (const std::exception& e) {
            throw PipelineError(std::string(e.what()), task.id);
        }

        task_report.duration_seconds =
            std::chrono::duration<double>(wall() - t0).count();
        for (std::size_t k = 0; k < output_paths.size(); ++k) {
            task_report.outputs.emplace_back(output_paths[k], sig.outputs[k]);
            port_paths[task.id + ".out" + std::to_string(k)] = output_paths[k];
        }
        report.per_task.push_back(std::move(task_report));
    }

    report.total_duration_seconds = std::chrono::duration<double>(wall() - started).count();
    for (const auto& t : report.per_task)
        if (t.peak_memory_bytes &&
            (!report.max_peak_memory_bytes || *t.peak_memory_bytes > *report.max_peak_memory_bytes))
            report.max_peak_memory_bytes = t.peak_memory_bytes;

    auto out_it = port_paths.find(spec.output.to_string());
    if (out_it == port_paths.end())
        throw PipelineError("pipeline output port was never produced");
    report.result_kg = out_it->second;
    return {out_it->second, std::move(report)};
}

}  // namespace kgb
