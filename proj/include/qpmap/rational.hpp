#ifndef QPMAP_RATIONAL_HPP
#define QPMAP_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qpmap {

/// Exact rational scalar. GMP keeps it canonical (denominator > 0, reduced)
/// after every arithmetic operation.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "p/q", "-p" or "-p/q" (ASCII '-' or U+2212). Throws
/// Error(ParseError) with a short reason ("zero denominator", ...).
Rational parse_rational(std::string_view text);

/// Canonical form: "p/q" with q > 0 and gcd 1, or "p" when q = 1.
std::string to_string(const Rational& value);

/// p/q in canonical form. Prefer this over mpq_class(p, q), which does not
/// reduce its arguments.
inline Rational ratio(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace qpmap

#endif  // QPMAP_RATIONAL_HPP
