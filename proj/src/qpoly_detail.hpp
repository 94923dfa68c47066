// Internal dense univariate polynomial helpers over Q and Z, shared by the
// number-field construction and the automorphism search. Not installed.
#ifndef TENRANK_SRC_QPOLY_DETAIL_HPP
#define TENRANK_SRC_QPOLY_DETAIL_HPP

#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "tenrank/rational.hpp"

namespace tenrank::detail {

inline int poly_degree(const std::vector<Rational>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

inline void poly_trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    poly_trim(c);
    return c;
}

inline std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(std::vector<Rational> num,
                                                                           const std::vector<Rational>& den) {
    poly_trim(num);
    int dn = poly_degree(den);
    std::vector<Rational> quot;
    if (dn < 0) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    int dd = poly_degree(num);
    if (dd < dn) return {quot, num};
    quot.assign(static_cast<std::size_t>(dd - dn + 1), Rational(0));
    const Rational& lead = den[static_cast<std::size_t>(dn)];
    for (int i = dd; i >= dn; --i) {
        Rational c = num[static_cast<std::size_t>(i)] / lead;
        if (c == 0) continue;
        quot[static_cast<std::size_t>(i - dn)] = c;
        for (int j = 0; j <= dn; ++j)
            num[static_cast<std::size_t>(i - dn + j)] -= c * den[static_cast<std::size_t>(j)];
    }
    poly_trim(num);
    return {quot, num};
}

// returns (g, u) with u*a = g (mod m), g = gcd(a, m)
inline std::pair<std::vector<Rational>, std::vector<Rational>> poly_half_xgcd(std::vector<Rational> a,
                                                                              std::vector<Rational> m) {
    std::vector<Rational> r0 = std::move(m), r1 = std::move(a);
    std::vector<Rational> u0, u1{Rational(1)};
    poly_trim(r0);
    poly_trim(r1);
    while (poly_degree(r1) >= 0) {
        auto [q, r] = poly_divmod(r0, r1);
        std::vector<Rational> u2 = u0;
        auto qu = poly_mul(q, u1);
        if (u2.size() < qu.size()) u2.resize(qu.size(), Rational(0));
        for (std::size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
        poly_trim(u2);
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    return {r0, u0};
}

inline Int poly_eval_int(const std::vector<Int>& p, const Int& x) {
    Int acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// All positive divisors of |v|, v != 0. Trial division to 2^20; the cofactor
// must end up 1 or prime, otherwise the value is declared too hard (desk-scale
// minpolys never get near this).
inline std::optional<std::vector<Int>> positive_divisors(Int v) {
    v = abs(v);
    if (v == 0) return std::nullopt;
    std::vector<std::pair<Int, int>> fact;
    Int d = 2;
    while (d * d <= v && d <= (1 << 20)) {
        if (v % d == 0) {
            int e = 0;
            while (v % d == 0) {
                v /= d;
                ++e;
            }
            fact.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (v > 1) {
        if (mpz_probab_prime_p(v.get_mpz_t(), 40) == 0) return std::nullopt;
        fact.emplace_back(v, 1);
    }
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : fact) {
        std::size_t base = divs.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline std::string format_monic_factor(const std::vector<Rational>& f, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (int i = poly_degree(f); i >= 0; --i) {
        const Rational& c = f[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (i == 0) {
            os << rational_to_string(a);
        } else {
            if (a != 1) os << rational_to_string(a) << "*";
            os << var;
            if (i >= 2) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

// Monic integral model M(y) = D^n m(y/D) of a monic rational m, where y = D x
// and D is the lcm of the coefficient denominators.
struct IntegralModel {
    std::vector<Int> coeffs; // ascending, monic
    Int scale;               // D
};

inline IntegralModel integralize_monic(const std::vector<Rational>& m) {
    int n = static_cast<int>(m.size()) - 1;
    Int D = 1;
    for (int k = 0; k < n; ++k)
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), m[static_cast<std::size_t>(k)].get_den_mpz_t());
    IntegralModel out;
    out.scale = D;
    out.coeffs.assign(static_cast<std::size_t>(n) + 1, Int(0));
    out.coeffs[static_cast<std::size_t>(n)] = 1;
    Int Dpow = 1; // D^{n-k}
    for (int k = n - 1; k >= 0; --k) {
        Dpow *= D;
        Rational scaled = m[static_cast<std::size_t>(k)] * Rational(Dpow);
        out.coeffs[static_cast<std::size_t>(k)] = scaled.get_num();
    }
    return out;
}

} // namespace tenrank::detail

#endif
