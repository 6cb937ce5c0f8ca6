#ifndef QPMAP_ERRORS_HPP
#define QPMAP_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qpmap {

enum class ErrorCode {
    DimensionMismatch,
    ZeroColumnOfA,
    ZeroRowOfB,
    NonPositiveState,
    NumericOverflow,
    OddDimension,
    NotSymplectic,
    SingularMatrix,
    DegenerateResult,
    ParseError,
    InternalError,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure raised by the library. `index()` carries
/// the offending row/column/component or, for iteration, the failing time.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<long long> index = std::nullopt)
        : std::runtime_error(what), code_(code), index_(index) {}

    ErrorCode code() const noexcept { return code_; }
    std::optional<long long> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<long long> index_;
};

}  // namespace qpmap

#endif  // QPMAP_ERRORS_HPP
