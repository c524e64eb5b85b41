#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgb/exchange.hpp"
#include "kgb/ontology.hpp"

namespace kgb {

enum class Backend { Builtin, Command, Service };

std::string backend_name(Backend b);
Backend parse_backend(const std::string& name);

/// "$seed", "$source", or "<taskId>.out<k>".
struct PortRef {
    enum class Kind { Seed, Source, TaskOutput };
    Kind kind = Kind::Seed;
    std::string task_id;
    int out_index = 0;

    std::string to_string() const;
};

PortRef parse_port_ref(const std::string& text);

struct TaskContext {
    const OntologySchema* schema = nullptr;
};

/// Builtin task body: file contents in, file contents out (the engine stages
/// them to disk). Must be a pure function of (inputs, config).
using BuiltinFn = std::function<std::vector<std::string>(const std::vector<std::string>&,
                                                         const Json&, const TaskContext&)>;

struct TaskSignature {
    std::string name;
    std::vector<DataFormat> inputs;
    std::vector<DataFormat> outputs;
    Json config_defaults = Json::object();
};

class TaskRegistry {
public:
    struct Entry {
        TaskSignature signature;
        std::optional<BuiltinFn> builtin;
    };

    void add(TaskSignature signature, std::optional<BuiltinFn> builtin = std::nullopt);
    const Entry* find(const std::string& name) const;
    std::vector<std::string> names() const;

    /// All builtin tasks plus the service-only contracts (llm_*).
    static TaskRegistry standard();

private:
    std::map<std::string, Entry> entries_;
};

struct TaskSpec {
    std::string id;
    std::string task;
    Backend backend = Backend::Builtin;
    std::vector<PortRef> inputs;
    Json config = Json::object();
};

struct PipelineSpec {
    std::string name;
    DataFormat source_format = DataFormat::RDF;
    std::vector<TaskSpec> tasks;
    PortRef output;
};

/// One or more stages; single-source pipelines have exactly one, multi-source
/// programs cycle through their stages across increments.
struct PipelineProgram {
    std::string name;
    std::vector<PipelineSpec> stages;

    const PipelineSpec& stage_for_increment(int increment) const;
};

PipelineSpec pipeline_spec_from_json(const Json& doc);
PipelineProgram load_pipeline_file(const std::string& path);

struct Violation {
    std::string task_id;
    std::string port;
    std::string message;
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Static pipeline validation: every input reference must resolve to $seed,
/// $source, or an earlier task's output with the exact port format, and the
/// designated output must be an RDF task output. All violations are reported.
ValidationResult validate_pipeline(const PipelineSpec& spec, const TaskRegistry& registry);

struct TaskRunReport {
    std::string task_id;
    std::string task;
    Backend backend = Backend::Builtin;
    double duration_seconds = 0.0;
    std::optional<std::uint64_t> peak_memory_bytes;
    std::vector<std::pair<std::string, DataFormat>> outputs;  // (path, format)
    std::vector<std::string> notes;
};

struct RunReport {
    std::string pipeline;
    int increment = 1;
    DataFormat source_format = DataFormat::RDF;
    std::vector<TaskRunReport> per_task;
    double total_duration_seconds = 0.0;
    std::optional<std::uint64_t> max_peak_memory_bytes;
    std::optional<std::string> annotated_cost;
    std::string result_kg;
};

Json run_report_to_json(const RunReport& report);
RunReport run_report_from_json(const Json& doc);

struct ExecutionResult {
    std::string result_kg_path;
    RunReport report;
};

struct EngineOptions {
    const OntologySchema* schema = nullptr;
    double service_timeout_seconds = 300.0;
};

/// Sequential file-staged execution. Each task's outputs land in
/// `<workdir>/<taskId>.out<k>.<ext>`; a failing task aborts the run but keeps
/// every artifact produced so far. Builtin runs are byte-deterministic.
ExecutionResult execute_pipeline(const PipelineSpec& spec, const std::string& seed_path,
                                 const std::string& source_path, const std::string& workdir,
                                 const TaskRegistry& registry, const EngineOptions& options);

struct ServicePort {
    std::string name;
    std::string format;
    std::string content;
};

/// POSTs the request envelope to a remote task endpoint and validates the
/// response against the expected output formats.
std::vector<ServicePort> invoke_service_task(const std::string& endpoint,
                                             const std::string& task_name,
                                             const std::vector<ServicePort>& inputs,
                                             const Json& config, double timeout_seconds);

struct CommandResult {
    int exit_code = -1;
    std::string captured_stderr;
    std::optional<std::uint64_t> peak_rss_bytes;
};

/// Spawns `argv` (argv[0] is the executable), captures stderr, and samples the
/// child's peak RSS via process accounting.
CommandResult run_command(const std::vector<std::string>& argv);

}  // namespace kgb
