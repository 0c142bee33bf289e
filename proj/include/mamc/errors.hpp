#pragma once

#include <stdexcept>
#include <string>

namespace mamc {

// Malformed or inconsistent input data (CSV rows, violated contract
// invariants, missing history). Carries a human-readable location when the
// source is a file.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}

    DataError(const std::string& source, long line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace mamc
