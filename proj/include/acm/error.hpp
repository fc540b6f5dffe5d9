#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LexError : public Error {
public:
    LexError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Domain errors during evaluation. `node` is the printed subexpression.
class EvalError : public Error {
public:
    EvalError(std::string reason, std::string node)
        : Error(reason + " in '" + node + "'"), reason_(std::move(reason)), node_(std::move(node)) {}
    const std::string& reason() const { return reason_; }
    const std::string& node() const { return node_; }

private:
    std::string reason_;
    std::string node_;
};

class SingularMetricError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class LookupError : public Error {
public:
    using Error::Error;
};

/// A precondition of a library call was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace acm
