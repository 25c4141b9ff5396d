#ifndef TUPLEVO_CORE_ERRORS_HPP
#define TUPLEVO_CORE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tuplevo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

struct LimitExceeded : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct UnknownFeature : Error {
    using Error::Error;
};

struct ArityError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct InvariantViolation : Error {
    using Error::Error;
};

struct InfeasibleInstance : Error {
    using Error::Error;
};

struct RepairFailure : Error {
    using Error::Error;
};

struct NoSolution : Error {
    using Error::Error;
};

struct CycleDetected : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct NonpositiveReference : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct HttpError : Error {
    using Error::Error;
};

struct Timeout : Error {
    using Error::Error;
};

struct RateLimited : Error {
    using Error::Error;
};

}  // namespace tuplevo

#endif
