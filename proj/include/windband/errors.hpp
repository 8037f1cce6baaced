#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace windband {

// Bad user input: out-of-range parameters, empty sets, mixed horizons.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Vector length mismatch between forecast, actuals and coefficients.
class DimensionError : public ValidationError {
public:
    explicit DimensionError(const std::string& what) : ValidationError(what) {}
};

// CSV parse failure; carries every offending line so the caller can fix
// the file in one pass.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::vector<std::string> issues)
        : std::runtime_error(what), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

} // namespace windband
