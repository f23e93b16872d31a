#pragma once

#include <stdexcept>
#include <string>

namespace ren {

// Malformed rule codes, RLE text or table files. Line/column are 1-based, 0 when unknown.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ")"
                                      : what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// A well-formed value outside its permitted range (Wolfram number > 255, R < 1, ...).
class range_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a precondition (dimension mismatch, neighbor count > 8, insufficient pad).
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Rule is valid but the engine does not simulate it (B0 Life-like rules).
class unsupported_rule : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Request exceeds a fixed capacity (compiled table radius, engine radius).
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ren
