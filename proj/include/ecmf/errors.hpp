#ifndef ECMF_ERRORS_HPP
#define ECMF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecmf {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a contract: mismatched operands, wrong call sequence.
class UsageError : public Error {
public:
    using Error::Error;
};

// Mathematically undefined request: division by zero, singular model,
// out-of-range evaluation point.
class DomainError : public Error {
public:
    using Error::Error;
};

// A constructed value would violate a type invariant.
class InvariantError : public Error {
public:
    using Error::Error;
};

// Work refused because it exceeds a configured bound.
class ResourceError : public Error {
public:
    using Error::Error;
};

// A numerical result cannot be certified to the requested accuracy.
class AccuracyError : public Error {
public:
    using Error::Error;
};

// Text input rejected; `position` is the byte offset of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_ = 0;
};

class NotImplementedError : public Error {
public:
    using Error::Error;
};

} // namespace ecmf

#endif
