#pragma once

#include <stdexcept>
#include <string>

namespace oatk {

/// Invalid arguments or parameter combinations rejected up front.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A requested computation would exceed a declared row/cell/work cap.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded search (prime scan/sampling, rejection sampling) ran out of room.
class SearchExhaustedError : public std::runtime_error {
public:
    explicit SearchExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace oatk
