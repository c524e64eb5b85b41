#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "kgb/pipeline.hpp"

#define CPPHTTPLIB_NO_EXCEPTIONS 0
#include <httplib.h>

namespace kgb {

CommandResult run_command(const std::vector<std::string>& argv) {
    if (argv.empty()) throw PipelineError("empty command line");

    int err_pipe[2];
    if (pipe(err_pipe) != 0) throw PipelineError("pipe() failed");

    pid_t pid = fork();
    if (pid < 0) {
        close(err_pipe[0]);
        close(err_pipe[1]);
        throw PipelineError("fork() failed");
    }

    if (pid == 0) {
        close(err_pipe[0]);
        dup2(err_pipe[1], STDERR_FILENO);
        close(err_pipe[1]);
        std::vector<char*> raw;
        raw.reserve(argv.size() + 1);
        for (const std::string& a : argv) raw.push_back(const_cast<char*>(a.c_str()));
        raw.push_back(nullptr);
        execvp(raw[0], raw.data());
        std::fprintf(stderr, "exec failed: %s: %s\n", raw[0], std::strerror(errno));
        _exit(127);
    }

    close(err_pipe[1]);
    std::string captured;
    char buf[4096];
    ssize_t n;
    while ((n = read(err_pipe[0], buf, sizeof(buf))) > 0)
        captured.append(buf, static_cast<std::size_t>(n));
    close(err_pipe[0]);

    int status = 0;
    rusage usage{};
    if (wait4(pid, &status, 0, &usage) < 0) throw PipelineError("wait4() failed");

    CommandResult result;
    result.captured_stderr = captured;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (usage.ru_maxrss > 0)
        result.peak_rss_bytes = static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;  // KiB on Linux
    return result;
}

namespace {

struct EndpointParts {
    std::string base;  // scheme://host:port
    std::string path;
};

EndpointParts split_endpoint(const std::string& endpoint) {
    std::size_t scheme = endpoint.find("://");
    if (scheme == std::string::npos) throw PipelineError("malformed endpoint: " + endpoint);
    std::size_t path = endpoint.find('/', scheme + 3);
    if (path == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path), endpoint.substr(path)};
}

}  // namespace

std::vector<ServicePort> invoke_service_task(const std::string& endpoint,
                                             const std::string& task_name,
                                             const std::vector<ServicePort>& inputs,
                                             const Json& config, double timeout_seconds) {
    Json body;
    body["task"] = task_name;
    body["config"] = config;
    Json jin = Json::array();
    for (const auto& port : inputs)
        jin.push_back(Json{{"name", port.name}, {"format", port.format}, {"content", port.content}});
    body["inputs"] = std::move(jin);

    EndpointParts parts = split_endpoint(endpoint);
    httplib::Client client(parts.base);
    auto seconds = static_cast<time_t>(timeout_seconds);
    auto micros = static_cast<long>((timeout_seconds - static_cast<double>(seconds)) * 1e6);
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    httplib::Result res = client.Post(parts.path, body.dump(), "application/json");
    if (!res) {
        if (res.error() == httplib::Error::ConnectionTimeout ||
            res.error() == httplib::Error::Read || res.error() == httplib::Error::Write)
            throw PipelineError("service timeout or connection failure: " + endpoint);
        throw PipelineError("service unreachable: " + endpoint + " (" +
                            httplib::to_string(res.error()) + ")");
    }
    if (res->status != 200)
        throw PipelineError("service returned status " + std::to_string(res->status) + ": " +
                            res->body);

    Json doc;
    try {
        doc = Json::parse(res->body);
    } catch (const std::exception& e) {
        throw FormatBoundaryError(std::string("service response is not JSON: ") + e.what());
    }
    if (!doc.contains("outputs") || !doc["outputs"].is_array())
        throw FormatBoundaryError("service response missing 'outputs' array");

    std::vector<ServicePort> out;
    for (const Json& o : doc["outputs"]) {
        if (!o.contains("name") || !o.contains("format") || !o.contains("content"))
            throw FormatBoundaryError("service output entry missing name/format/content");
        out.push_back({o.at("name").get<std::string>(), o.at("format").get<std::string>(),
                       o.at("content").get<std::string>()});
    }
    return out;
}

}  // namespace kgb
