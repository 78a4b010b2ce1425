#ifndef CARDBOX_ERRORS_HPP_
#define CARDBOX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cardbox {

/// Invalid configuration or usage (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable, malformed or inconsistent input data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cardbox

#endif  // CARDBOX_ERRORS_HPP_
