#ifndef SOCLIN_COMMON_HPP
#define SOCLIN_COMMON_HPP

#include <stdexcept>
#include <string>

namespace soclin {

inline constexpr const char* kVersion = "0.1.0";

// Error taxonomy. The CLI maps these onto exit codes:
//   InputError -> 2, EmptyInput / empty results -> 3, NumericError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or unusable external data (files, tables, graph configs).
struct InputError : Error {
    using Error::Error;
};

// An operation that requires data received none.
struct EmptyInput : Error {
    using Error::Error;
};

// A model or numeric routine could not produce a valid result.
struct NumericError : Error {
    using Error::Error;
};

struct MissingYear : InputError {
    explicit MissingYear(const std::string& sent_id)
        : InputError("sentence '" + sent_id + "' has no '# year = <YYYY>' comment") {}
};

struct MalformedTree : InputError {
    MalformedTree(const std::string& sent_id, const std::string& what)
        : InputError("sentence '" + sent_id + "': " + what) {}
};

struct LengthMismatch : InputError {
    LengthMismatch(std::size_t nx, std::size_t ny)
        : InputError("series length mismatch: " + std::to_string(nx) + " vs " +
                     std::to_string(ny)) {}
};

struct DisconnectedGraph : InputError {
    explicit DisconnectedGraph(const std::string& what) : InputError(what) {}
};

struct TooFewPoints : NumericError {
    TooFewPoints(std::size_t got, std::size_t need)
        : NumericError("need at least " + std::to_string(need) + " points, got " +
                       std::to_string(got)) {}
};

struct NonPositiveY : NumericError {
    explicit NonPositiveY(const std::string& what) : NumericError(what) {}
};

struct ZeroVariance : NumericError {
    explicit ZeroVariance(const std::string& variable)
        : NumericError("series '" + variable + "' has zero variance") {}
};

} // namespace soclin

#endif // SOCLIN_COMMON_HPP
