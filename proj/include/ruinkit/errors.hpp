#ifndef RUINKIT_ERRORS_HPP
#define RUINKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ruinkit {

// Bad or missing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Model assumptions (A1/A3) violated; solving would be meaningless (exit code 3).
class AssumptionError : public std::runtime_error {
public:
    explicit AssumptionError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside the solver pipeline (exit code 4).
class SolverError : public std::runtime_error {
public:
    enum class Kind {
        NoContraction,
        MaxIterations,
        StepNotContractive,
        NonPositiveSolution,
        TailNotIntegrable,
    };

    SolverError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

} // namespace ruinkit

#endif
