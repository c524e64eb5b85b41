#pragma once

#include <stdexcept>
#include <string>

namespace kgb {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input while parsing a serialized artifact (N-Triples, JSON_ER, ...).
/// Carries the 1-based line (or record index) and the offending content.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string content, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg + " [" + content + "]"),
          line_(line),
          content_(std::move(content)) {}

    std::size_t line() const { return line_; }
    const std::string& content() const { return content_; }

private:
    std::size_t line_;
    std::string content_;
};

/// A task rejected its inputs or failed while running.
class TaskError : public Error {
public:
    using Error::Error;
};

/// Raised by the execution engine: staging failures, backend failures,
/// or a produced artifact that does not parse in its declared format.
class PipelineError : public Error {
public:
    explicit PipelineError(const std::string& msg, std::string task_id = {})
        : Error(task_id.empty() ? msg : "task '" + task_id + "': " + msg),
          task_id_(std::move(task_id)) {}

    const std::string& task_id() const { return task_id_; }

private:
    std::string task_id_;
};

/// A produced artifact failed validation against its declared port format.
/// Kept distinct from PipelineError so soundness tests can tell format
/// boundary failures apart from ordinary task failures.
class FormatBoundaryError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

}  // namespace kgb
