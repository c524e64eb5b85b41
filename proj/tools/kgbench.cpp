#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <regex>

#include <CLI11.hpp>

#include "kgb/benchgen.hpp"
#include "kgb/metrics.hpp"
#include "kgb/pipeline.hpp"
#include "kgb/ranking.hpp"

namespace fs = std::filesystem;
using namespace kgb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

/// Minimal glob: '*' inside any path segment, no '**'.
std::vector<std::string> expand_glob(const std::string& pattern) {
    auto segment_matches = [](const std::string& pat, const std::string& name) {
        std::string re;
        for (char c : pat) {
            if (c == '*') re += ".*";
            else if (std::string("\\^$.|?+()[]{}").find(c) != std::string::npos) re += std::string("\\") + c;
            else re += c;
        }
        return std::regex_match(name, std::regex(re));
    };

    fs::path p(pattern);
    std::vector<std::string> segments;
    for (const auto& part : p) segments.push_back(part.string());
    std::vector<fs::path> current = {p.is_absolute() ? fs::path("/") : fs::path(".")};
    for (std::size_t i = (p.is_absolute() ? 1 : 0); i < segments.size(); ++i) {
        const std::string& seg = segments[i];
        std::vector<fs::path> next;
        for (const fs::path& base : current) {
            if (seg.find('*') == std::string::npos) {
                fs::path candidate = base / seg;
                if (fs::exists(candidate)) next.push_back(candidate);
                continue;
            }
            if (!fs::is_directory(base)) continue;
            for (const auto& entry : fs::directory_iterator(base))
                if (segment_matches(seg, entry.path().filename().string()))
                    next.push_back(entry.path());
        }
        current = std::move(next);
    }
    std::vector<std::string> out;
    for (const auto& path : current) out.push_back(path.string());
    std::sort(out.begin(), out.end());
    return out;
}

std::string workdir_root(const std::string& out_dir) {
    const char* env = std::getenv("KGB_WORKDIR");
    return env && *env ? std::string(env) : (fs::path(out_dir) / "work").string();
}

Json parse_override_value(const std::string& raw) {
    try {
        return Json::parse(raw);
    } catch (...) {
        return Json(raw);  // plain strings need no quoting on the command line
    }
}

int cmd_gen(std::size_t films, std::uint64_t seed, const std::string& out, int splits,
            double overlap, double ambiguity) {
    BenchConfig config;
    config.n_films = films;
    config.rng_seed = seed;
    config.n_splits = splits;
    config.film_overlap_rate = overlap;
    config.ambiguity_rate = ambiguity;
    GenerateSummary summary = generate(config, out);
    std::cout << "generated " << out << "\n";
    for (const auto& s : summary.splits)
        std::cout << "  split " << s.index << ": films=" << s.films << " entities=" << s.entities
                  << " filmOverlapWithSeed=" << s.film_overlap_with_seed
                  << " entityOverlapWithSeed=" << s.entity_overlap_with_seed << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& spec_path) {
    TaskRegistry registry = TaskRegistry::standard();
    PipelineProgram program = load_pipeline_file(spec_path);
    bool ok = true;
    for (std::size_t s = 0; s < program.stages.size(); ++s) {
        ValidationResult result = validate_pipeline(program.stages[s], registry);
        if (!result.ok()) {
            ok = false;
            std::cout << "stage " << s << " (" << program.stages[s].name << "): INVALID\n"
                      << result.summary() << "\n";
        } else {
            std::cout << "stage " << s << " (" << program.stages[s].name << "): OK\n";
        }
    }
    return ok ? kExitOk : kExitValidation;
}

int cmd_run(const std::string& spec_path, const std::string& bench_dir, int increments,
            const std::string& out_dir, bool clean, const std::vector<std::string>& overrides,
            const std::string& cost_annotation) {
    if (increments < 1) {
        std::cerr << "error: increments must be >= 1\n";
        return kExitValidation;
    }
    TaskRegistry registry = TaskRegistry::standard();
    PipelineProgram program = load_pipeline_file(spec_path);
    Bundle bundle = load_bundle(bench_dir);
    if (increments > bundle.n_sources) {
        std::cerr << "error: bundle provides only " << bundle.n_sources << " source splits\n";
        return kExitValidation;
    }

    std::map<std::string, Json> config_overrides;
    for (const std::string& kv : overrides) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --set expects key=value\n";
            return kExitValidation;
        }
        config_overrides[kv.substr(0, eq)] = parse_override_value(kv.substr(eq + 1));
    }

    for (const PipelineSpec& stage : program.stages) {
        ValidationResult result = validate_pipeline(stage, registry);
        if (!result.ok()) {
            std::cerr << "pipeline '" << stage.name << "' failed validation:\n"
                      << result.summary() << "\n";
            return kExitValidation;
        }
    }

    fs::create_directories(out_dir);
    EngineOptions options;
    options.schema = &bundle.schema;

    for (int i = 1; i <= increments; ++i) {
        PipelineSpec stage = program.stage_for_increment(i);
        for (TaskSpec& task : stage.tasks) {
            const TaskRegistry::Entry* entry = registry.find(task.task);
            for (const auto& [key, value] : config_overrides)
                if (entry && entry->signature.config_defaults.contains(key))
                    task.config[key] = value;
        }

        std::string seed_path = i == 1 ? (fs::path(bench_dir) / "seed.nt").string()
                                       : (fs::path(out_dir) / ("kg_" + std::to_string(i - 1) +
                                                               ".nt")).string();
        std::string source_path = bundle.source_path(i, stage.source_format);
        std::string workdir =
            (fs::path(workdir_root(out_dir)) / ("inc" + std::to_string(i))).string();

        ExecutionResult result;
        try {
            result = execute_pipeline(stage, seed_path, source_path, workdir, registry, options);
        } catch (const PipelineError& e) {
            std::cerr << "increment " << i << " failed: " << e.what() << "\n";
            return kExitRuntime;
        }

        result.report.pipeline = program.name;
        result.report.increment = i;
        if (!cost_annotation.empty()) result.report.annotated_cost = cost_annotation;
        std::string kg_path = (fs::path(out_dir) / ("kg_" + std::to_string(i) + ".nt")).string();
        write_file(kg_path, read_file(result.result_kg_path));
        write_file((fs::path(out_dir) / ("run_" + std::to_string(i) + ".report.json")).string(),
                   run_report_to_json(result.report).dump(2) + "\n");
        std::cout << "increment " << i << ": " << kg_path << " ("
                  << result.report.total_duration_seconds << " s)\n";
    }

    if (clean) fs::remove_all(workdir_root(out_dir));
    return kExitOk;
}

int cmd_eval(const std::string& bench_dir, const std::string& kg_glob,
             const std::string& artifacts_dir, const std::string& out_dir) {
    Bundle bundle = load_bundle(bench_dir);
    fs::create_directories(out_dir);

    std::map<int, std::string> kg_paths;
    for (const std::string& path : expand_glob(kg_glob)) {
        std::smatch m;
        std::string name = fs::path(path).filename().string();
        if (std::regex_match(name, m, std::regex(R"(kg_(\d+)\.nt)")))
            kg_paths[std::stoi(m[1])] = path;
    }
    if (kg_paths.empty()) {
        std::cerr << "error: no kg_<i>.nt files match " << kg_glob << "\n";
        return kExitValidation;
    }

    Graph current_reference = bundle.seed;
    double cumulative_duration = 0.0;
    std::optional<std::uint64_t> peak_memory;
    int last_evaluated = 0;

    for (const auto& [increment, kg_path] : kg_paths) {
        // Roll the current reference forward to this increment.
        for (int j = last_evaluated + 1; j <= increment; ++j)
            current_reference = graph_union(current_reference, bundle.unshaded_source(j));
        last_evaluated = increment;

        Graph kg = load_graph_file(kg_path);
        RunReport run = run_report_from_json(Json::parse(read_file(
            (fs::path(artifacts_dir) / ("run_" + std::to_string(increment) + ".report.json"))
                .string())));
        cumulative_duration += run.total_duration_seconds;
        if (run.max_peak_memory_bytes &&
            (!peak_memory || *run.max_peak_memory_bytes > *peak_memory))
            peak_memory = run.max_peak_memory_bytes;

        PipelineArtifacts artifacts;
        artifacts.source_format = run.source_format;
        MatchSet produced;
        std::vector<KeDoc> ke_docs;
        bool any_er = false, any_ke = false;
        for (const auto& task : run.per_task) {
            for (const auto& [path, format] : task.outputs) {
                if (!fs::exists(path)) continue;
                if (format == DataFormat::JSON_ER) {
                    MatchSet ms = parse_match_set(read_file(path));
                    produced.records.insert(produced.records.end(), ms.records.begin(),
                                            ms.records.end());
                    any_er = true;
                } else if (format == DataFormat::JSON_KE) {
                    auto docs = parse_ke_docs(read_file(path));
                    ke_docs.insert(ke_docs.end(), docs.begin(), docs.end());
                    any_ke = true;
                }
            }
        }
        produced.normalize();
        if (any_er) artifacts.produced_matches = std::move(produced);
        if (any_ke) artifacts.ke_docs = std::move(ke_docs);

        // The matcher aligned against the previous increment's KG; without it
        // the matching metrics stay absent rather than misleading.
        std::optional<Graph> base;
        if (increment == 1) base = bundle.seed;
        else if (kg_paths.count(increment - 1)) base = load_graph_file(kg_paths.at(increment - 1));
        artifacts.alignment_base = base ? &*base : nullptr;

        MetricReport report;
        report.pipeline = run.pipeline;
        report.increment = increment;
        report.source_format = run.source_format;
        report.stats = compute_statistics(kg, bundle.schema);
        report.semantic = compute_semantic(kg, bundle.schema);
        report.reference = compute_reference(kg, bundle.ground_truth(increment),
                                             current_reference, bundle.seed_region, bundle.schema,
                                             artifacts);
        report.duration_seconds = run.total_duration_seconds;
        report.cumulative_duration_seconds = cumulative_duration;
        report.peak_memory_bytes = peak_memory;
        report.annotated_cost = run.annotated_cost;

        StatReport ref_stats = compute_statistics(current_reference, bundle.schema);
        report.anchors.fact_count = ref_stats.fact_count;
        report.anchors.density = ref_stats.density;

        std::string out_path =
            (fs::path(out_dir) / ("metrics_" + std::to_string(increment) + ".json")).string();
        write_file(out_path, metric_report_to_json(report).dump(2) + "\n");
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_rank(const std::string& reports_glob, const std::string& scheme_name, bool all_schemes,
             const std::string& out_path) {
    if (!all_schemes) {
        try {
            scheme_by_name(scheme_name);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitValidation;
        }
    }
    std::vector<MetricReport> reports;
    for (const std::string& path : expand_glob(reports_glob))
        reports.push_back(metric_report_from_json(Json::parse(read_file(path))));
    if (reports.empty()) {
        std::cerr << "error: no reports match " << reports_glob << "\n";
        return kExitValidation;
    }

    // One row per pipeline: the report of its highest increment.
    std::map<std::string, MetricReport> latest;
    for (auto& r : reports) {
        auto it = latest.find(r.pipeline);
        if (it == latest.end() || r.increment > it->second.increment) latest[r.pipeline] = r;
    }
    std::vector<MetricReport> cohort;
    for (auto& [_, r] : latest) cohort.push_back(r);
    CohortMinima minima = cohort_minima(cohort);

    std::vector<PipelineScore> base;
    bool any_duration_only = false;
    for (const auto& r : cohort) {
        bool duration_only = false;
        PipelineScore score;
        score.pipeline = r.pipeline;
        score.groups = group_scores(r, minima, &duration_only);
        any_duration_only = any_duration_only || duration_only;
        base.push_back(score);
    }

    std::vector<WeightScheme> schemes;
    if (all_schemes)
        schemes = builtin_schemes();
    else
        schemes.push_back(scheme_by_name(scheme_name));

    Json out_doc = Json::object();
    for (const WeightScheme& scheme : schemes) {
        std::vector<PipelineScore> scored = base;
        for (auto& s : scored) s.total = total_score(s.groups, scheme);
        scored = rank_pipelines(std::move(scored));

        std::printf("scheme %s (%.2f, %.2f, %.2f, %.2f)%s\n", scheme.name.c_str(), scheme.alpha,
                    scheme.beta, scheme.gamma, scheme.delta,
                    any_duration_only ? "  [GM4: duration only]" : "");
        std::printf("  %-24s %8s %8s %8s %8s %8s\n", "pipeline", "GM1", "GM2", "GM3", "GM4",
                    "total");
        Json rows = Json::array();
        for (const auto& s : scored) {
            std::printf("  %-24s %8.3f %8.3f %8.3f %8.3f %8.3f\n", s.pipeline.c_str(),
                        s.groups.size, s.groups.consistency, s.groups.integration,
                        s.groups.efficiency, s.total);
            rows.push_back(Json{{"pipeline", s.pipeline},
                               {"GM1", s.groups.size},
                               {"GM2", s.groups.consistency},
                               {"GM3", s.groups.integration},
                               {"GM4", s.groups.efficiency},
                               {"total", s.total}});
        }
        out_doc[scheme.name] = std::move(rows);
    }
    if (!out_path.empty()) write_file(out_path, out_doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_audit(const std::string& bench_dir) {
    AuditReport report = audit_bundle(bench_dir);
    if (report.ok()) {
        std::cout << "audit: 0 violations\n";
        return kExitOk;
    }
    std::cout << "audit: " << report.violations.size() << " violation(s)\n";
    for (const auto& v : report.violations) std::cout << "  " << v << "\n";
    return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knowledge-graph integration pipeline benchmark"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a benchmark bundle");
    std::size_t films = 100;
    std::uint64_t seed = 42;
    std::string out_dir;
    int splits = 4;
    double overlap = 0.05, ambiguity = 0.2;
    gen->add_option("--films", films, "number of film entities");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out_dir, "output directory")->required();
    gen->add_option("--splits", splits, "number of splits including the seed");
    gen->add_option("--overlap", overlap, "pairwise seed/source film overlap rate");
    gen->add_option("--ambiguity", ambiguity, "JSON ambiguity injection rate");

    auto* validate = app.add_subcommand("validate", "statically validate a pipeline spec");
    std::string spec_path;
    validate->add_option("--spec", spec_path, "pipeline spec file")->required();

    auto* run = app.add_subcommand("run", "execute a pipeline over benchmark increments");
    std::string bench_dir, run_out;
    int increments = 1;
    bool clean = false;
    std::vector<std::string> overrides;
    run->add_option("--spec", spec_path, "pipeline spec file")->required();
    run->add_option("--bench", bench_dir, "benchmark bundle directory")->required();
    run->add_option("--increments", increments, "number of increments to integrate")->required();
    run->add_option("--out", run_out, "output directory")->required();
    run->add_flag("--clean", clean, "remove staging artifacts after the run");
    run->add_option("--set", overrides, "config override key=value (applies to matching tasks)");
    std::string cost;
    run->add_option("--cost", cost, "manual cost annotation recorded in the run reports");

    auto* eval = app.add_subcommand("eval", "evaluate result KGs against the benchmark");
    std::string kg_glob, artifacts_dir, eval_out;
    eval->add_option("--bench", bench_dir, "benchmark bundle directory")->required();
    eval->add_option("--kg", kg_glob, "glob over kg_<i>.nt files")->required();
    eval->add_option("--artifacts", artifacts_dir, "run output directory with reports")->required();
    eval->add_option("--out", eval_out, "directory for metric reports")->required();

    auto* rank = app.add_subcommand("rank", "rank pipelines from metric reports");
    std::string reports_glob, scheme = "equal", rank_out;
    bool all_schemes = false;
    rank->add_option("--reports", reports_glob, "glob over metric report files")->required();
    rank->add_option("--scheme", scheme, "weighting scheme name");
    rank->add_flag("--all", all_schemes, "rank under all five schemes");
    rank->add_option("--out", rank_out, "optional JSON output file");

    auto* audit = app.add_subcommand("audit", "audit a generated bundle");
    audit->add_option("--bench", bench_dir, "benchmark bundle directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(films, seed, out_dir, splits, overlap, ambiguity);
        if (validate->parsed()) return cmd_validate(spec_path);
        if (run->parsed())
            return cmd_run(spec_path, bench_dir, increments, run_out, clean, overrides, cost);
        if (eval->parsed()) return cmd_eval(bench_dir, kg_glob, artifacts_dir, eval_out);
        if (rank->parsed()) return cmd_rank(reports_glob, scheme, all_schemes, rank_out);
        if (audit->parsed()) return cmd_audit(bench_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
