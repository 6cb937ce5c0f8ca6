#include "qpmap/rational.hpp"

#include "qpmap/errors.hpp"

#include <cctype>

namespace qpmap {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroColumnOfA: return "ZeroColumnOfA";
        case ErrorCode::ZeroRowOfB: return "ZeroRowOfB";
        case ErrorCode::NonPositiveState: return "NonPositiveState";
        case ErrorCode::NumericOverflow: return "NumericOverflow";
        case ErrorCode::OddDimension: return "OddDimension";
        case ErrorCode::NotSymplectic: return "NotSymplectic";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::DegenerateResult: return "DegenerateResult";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    bool negative = false;
    if (text.starts_with('-')) {
        negative = true;
        text.remove_prefix(1);
    } else if (text.starts_with("\xE2\x88\x92")) {  // U+2212 minus sign
        negative = true;
        text.remove_prefix(3);
    }

    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    }

    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw Error(ErrorCode::ParseError, "zero denominator");
    }
    Rational r(negative ? mpz_class(-n) : n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    // get_str yields "p" for integers and "p/q" otherwise, once reduced.
    Rational copy = value;
    copy.canonicalize();
    return copy.get_str(10);
}

}  // namespace qpmap
