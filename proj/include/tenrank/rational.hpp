// Arbitrary-precision integers and rationals, backed by GMP.
// mpq_class keeps values in lowest terms with positive denominator, which is
// exactly the canonical form every other component relies on.
#ifndef TENRANK_RATIONAL_HPP
#define TENRANK_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "tenrank/errors.hpp"

namespace tenrank {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p" or "p/q" with optional sign. Anything else is a ParseError.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
    std::string num = s, den = "1";
    if (auto pos = s.find('/'); pos != std::string::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
    }
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!is_int(num) || !is_int(den))
        throw Error(ErrorCode::ParseError, "bad rational literal '" + s + "'");
    Int n(num), d(den);
    return make_rational(n, d);
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace tenrank

#endif
