#pragma once

#include <stdexcept>
#include <string>

namespace rfq {

// File could not be opened, read, or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// File opened but its content is malformed; carries the 1-based file line
// and column of the offending cell when known (0 = not applicable).
class ParseError : public IoError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : IoError(what), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Data cannot support the requested computation (e.g. zero-variance response).
class DegenerateDataError : public std::runtime_error {
public:
    explicit DegenerateDataError(const std::string& what) : std::runtime_error(what) {}
};

// A persisted model does not match the dataset it is applied to.
class ModelMismatchError : public std::runtime_error {
public:
    explicit ModelMismatchError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rfq
