#pragma once

#include <stdexcept>
#include <string>

namespace zczseq {

// Raised when inputs violate a construction precondition or type invariant.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised for missing, unreadable or garbled files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zczseq
