#pragma once

#include <stdexcept>
#include <string>

namespace pmhd {

/// Failure categories. The numeric values double as process exit codes.
enum class ErrorKind : int {
    Config = 1,
    Invariant = 2,
    Solver = 3,
    Io = 4,
    Argument = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct InvariantError : Error {
    explicit InvariantError(const std::string& w) : Error(ErrorKind::Invariant, w) {}
};
struct SolverError : Error {
    explicit SolverError(const std::string& w) : Error(ErrorKind::Solver, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& w) : Error(ErrorKind::Argument, w) {}
};

}  // namespace pmhd
