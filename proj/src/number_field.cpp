#include "tenrank/number_field.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "qpoly_detail.hpp"

namespace tenrank {

namespace {

using detail::format_monic_factor;
using detail::integralize_monic;
using detail::poly_degree;
using detail::poly_divmod;
using detail::poly_eval_int;
using detail::poly_half_xgcd;
using detail::poly_mul;
using detail::poly_trim;
using detail::positive_divisors;

// Searches for a monic integer factor of degree k of the monic integer
// polynomial M by Kronecker interpolation: a factor's values at k+1 points
// divide M's values there, so candidates are interpolated from divisor
// choices and tested by exact division.
std::optional<std::vector<Rational>> kronecker_factor(const std::vector<Int>& M, int k) {
    static const long kPoints[] = {0, 1, -1, 2, -2};
    int npts = k + 1;
    std::vector<Int> pts, vals;
    for (int i = 0; i < npts; ++i) {
        Int t(kPoints[i]);
        Int v = poly_eval_int(M, t);
        if (v == 0) throw Error(ErrorCode::Internal, "unexpected integer root in factor search");
        pts.push_back(t);
        vals.push_back(v);
    }
    std::vector<std::vector<Int>> divs;
    long long combos = 1;
    for (int i = 0; i < npts; ++i) {
        auto dv = positive_divisors(vals[static_cast<std::size_t>(i)]);
        if (!dv) throw Error(ErrorCode::Internal, "irreducibility check: value too hard to factor");
        divs.push_back(*dv);
        combos *= static_cast<long long>(dv->size()) * (i == 0 ? 1 : 2);
        if (combos > 4'000'000)
            throw Error(ErrorCode::Internal, "irreducibility check: too many factor candidates");
    }

    std::vector<Rational> Mq(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) Mq[i] = Rational(M[i]);

    // odometer over signed divisor choices; the value at t=0 stays positive
    // since a factor and its negation interpolate to the same monic candidate
    std::vector<std::size_t> idx(static_cast<std::size_t>(npts), 0);
    std::vector<int> sign(static_cast<std::size_t>(npts), 1);
    while (true) {
        std::vector<Rational> h{Rational(0)};
        for (int i = 0; i < npts; ++i) {
            Rational di(divs[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]);
            if (sign[static_cast<std::size_t>(i)] < 0) di = -di;
            std::vector<Rational> basis{Rational(1)};
            Rational denom(1);
            for (int j = 0; j < npts; ++j) {
                if (j == i) continue;
                basis = poly_mul(basis, {Rational(-pts[static_cast<std::size_t>(j)]), Rational(1)});
                denom *= Rational(pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]);
            }
            Rational c = di / denom;
            if (h.size() < basis.size()) h.resize(basis.size(), Rational(0));
            for (std::size_t b = 0; b < basis.size(); ++b) h[b] += c * basis[b];
        }
        poly_trim(h);
        if (poly_degree(h) == k) {
            bool integral = true;
            for (const auto& c : h)
                if (!is_integer(c)) {
                    integral = false;
                    break;
                }
            Rational lead = h.back();
            if (integral && (lead == 1 || lead == -1)) {
                if (lead == -1)
                    for (auto& c : h) c = -c;
                auto [q, r] = poly_divmod(Mq, h);
                (void)q;
                if (poly_degree(r) < 0) return h;
            }
        }
        int pos = npts - 1;
        while (pos >= 0) {
            auto upos = static_cast<std::size_t>(pos);
            if (pos > 0 && sign[upos] > 0) {
                sign[upos] = -1;
                break;
            }
            sign[upos] = 1;
            if (++idx[upos] < divs[upos].size()) break;
            idx[upos] = 0;
            --pos;
        }
        if (pos < 0) return std::nullopt;
    }
}

// Throws ReducibleError when m (monic rational, degree >= 2) factors over Q.
// Rational root test first; factors of degree 2..4 by Kronecker interpolation,
// which is complete for the degree-8 cap.
void check_irreducible(const std::vector<Rational>& m) {
    int n = static_cast<int>(m.size()) - 1;
    if (n == 1) return;
    detail::IntegralModel im = integralize_monic(m);
    const Int& D = im.scale;

    if (im.coeffs[0] == 0) {
        std::vector<Rational> f{Rational(0), Rational(1)}; // factor x
        throw ReducibleError(format_monic_factor(f, "x"));
    }
    auto divs = positive_divisors(im.coeffs[0]);
    if (!divs) throw Error(ErrorCode::Internal, "irreducibility check: constant term too hard to factor");
    for (const Int& d : *divs) {
        for (int s : {1, -1}) {
            Int r = d * s;
            if (poly_eval_int(im.coeffs, r) == 0) {
                std::vector<Rational> f{-make_rational(r, D), Rational(1)}; // x - r/D
                throw ReducibleError(format_monic_factor(f, "x"));
            }
        }
    }
    if (n <= 3) return;

    for (int k = 2; k <= n / 2; ++k) {
        if (auto h = kronecker_factor(im.coeffs, k)) {
            // back from y = D x: g(x) = h(D x), made monic
            std::vector<Rational> g(h->size());
            Rational Dk(1);
            for (std::size_t j = 0; j < h->size(); ++j) {
                g[j] = (*h)[j] * Dk;
                Dk *= Rational(D);
            }
            Rational lead = g.back();
            for (auto& c : g) c /= lead;
            throw ReducibleError(format_monic_factor(g, "x"));
        }
    }
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

} // namespace

FieldPtr NumberField::create(std::vector<Rational> minpoly, std::string generator_name, int degree_cap) {
    while (!minpoly.empty() && minpoly.back() == 0) minpoly.pop_back();
    int n = static_cast<int>(minpoly.size()) - 1;
    if (n < 1 || minpoly.back() != 1)
        throw Error(ErrorCode::NotMonic, "minimal polynomial must be monic of degree >= 1");
    if (n > degree_cap)
        throw Error(ErrorCode::DegreeCapExceeded,
                    "degree " + std::to_string(n) + " exceeds cap " + std::to_string(degree_cap));
    if (!valid_identifier(generator_name))
        throw Error(ErrorCode::InvalidArgument, "bad generator name '" + generator_name + "'");
    check_irreducible(minpoly);
    return FieldPtr(new NumberField(std::move(minpoly), std::move(generator_name)));
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = FieldPtr(new NumberField({Rational(0), Rational(1)}, "a"));
    return q;
}

bool NumberField::same_as(const NumberField& other) const {
    return generator_name_ == other.generator_name_ && minpoly_ == other.minpoly_;
}

std::string NumberField::minpoly_string() const { return format_monic_factor(minpoly_, generator_name_); }

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "algebraic number without field");
    if (static_cast<int>(coeffs_.size()) != field_->degree())
        throw Error(ErrorCode::InvalidArgument, "coefficient count does not match field degree");
}

AlgebraicNumber AlgebraicNumber::from_rational(const FieldPtr& field, const Rational& q) {
    std::vector<Rational> c(static_cast<std::size_t>(field->degree()), Rational(0));
    c[0] = q;
    return AlgebraicNumber(field, std::move(c));
}

AlgebraicNumber AlgebraicNumber::zero(const FieldPtr& field) { return from_rational(field, Rational(0)); }
AlgebraicNumber AlgebraicNumber::one(const FieldPtr& field) { return from_rational(field, Rational(1)); }

AlgebraicNumber AlgebraicNumber::generator(const FieldPtr& field) {
    if (field->degree() == 1) return from_rational(field, -field->minpoly()[0]);
    std::vector<Rational> c(static_cast<std::size_t>(field->degree()), Rational(0));
    c[1] = 1;
    return AlgebraicNumber(field, std::move(c));
}

bool AlgebraicNumber::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool AlgebraicNumber::is_one() const {
    if (coeffs_[0] != 1) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

bool AlgebraicNumber::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

const Rational& AlgebraicNumber::rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::FieldError, "value is not rational");
    return coeffs_[0];
}

namespace {
void require_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!a.field()->same_as(*b.field()))
        throw Error(ErrorCode::FieldMismatch, "operands lie in different fields");
}
} // namespace

AlgebraicNumber AlgebraicNumber::operator-() const {
    AlgebraicNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& rhs) {
    require_same_field(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& rhs) {
    require_same_field(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& rhs) {
    require_same_field(*this, rhs);
    std::size_t n = coeffs_.size();
    if (n == 1) {
        coeffs_[0] *= rhs.coeffs_[0];
        return *this;
    }
    std::vector<Rational> prod(2 * n - 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    const auto& m = field_->minpoly();
    for (std::size_t i = 2 * n - 2; i >= n; --i) {
        if (prod[i] != 0) {
            Rational c = prod[i];
            prod[i] = 0;
            for (std::size_t k = 0; k < n; ++k) prod[i - n + k] -= c * m[k];
        }
        if (i == n) break;
    }
    prod.resize(n);
    coeffs_ = std::move(prod);
    return *this;
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& rhs) const {
    return field_->same_as(*rhs.field_) && coeffs_ == rhs.coeffs_;
}

std::string AlgebraicNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
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
        if (k == 0) {
            os << rational_to_string(a);
        } else {
            if (a != 1) os << rational_to_string(a) << "*";
            os << field_->generator_name();
            if (k >= 2) os << "^" << k;
        }
    }
    if (first) os << "0";
    return os.str();
}

AlgebraicNumber inverse(const AlgebraicNumber& a) {
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    auto [g, u] = poly_half_xgcd(a.coeffs(), a.field()->minpoly());
    if (poly_degree(g) != 0) throw Error(ErrorCode::Internal, "inverse: gcd not constant");
    Rational scale = Rational(1) / g[0];
    std::vector<Rational> c(static_cast<std::size_t>(a.field()->degree()), Rational(0));
    for (std::size_t i = 0; i < u.size() && i < c.size(); ++i) c[i] = u[i] * scale;
    return AlgebraicNumber(a.field(), std::move(c));
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a * inverse(b); }

AlgebraicNumber promote(const AlgebraicNumber& a, const FieldPtr& target) {
    if (a.field()->same_as(*target)) return AlgebraicNumber(target, a.coeffs());
    if (a.field()->degree() == 1) return AlgebraicNumber::from_rational(target, a.coeffs()[0]);
    throw Error(ErrorCode::FieldMismatch, "cannot embed element into target field");
}

bool FieldAutomorphism::is_identity() const {
    return image_of_generator == AlgebraicNumber::generator(field);
}

std::string FieldAutomorphism::to_string() const {
    return field->generator_name() + " -> " + image_of_generator.to_string();
}

AlgebraicNumber apply_automorphism(const FieldAutomorphism& sigma, const AlgebraicNumber& a) {
    if (!sigma.field->same_as(*a.field()))
        throw Error(ErrorCode::FieldMismatch, "automorphism applied across fields");
    const auto& c = a.coeffs();
    AlgebraicNumber acc = AlgebraicNumber::from_rational(a.field(), c.back());
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
        acc *= sigma.image_of_generator;
        acc += AlgebraicNumber::from_rational(a.field(), c[static_cast<std::size_t>(k)]);
    }
    return acc;
}

FieldAutomorphism compose(const FieldAutomorphism& sigma, const FieldAutomorphism& tau) {
    if (!sigma.field->same_as(*tau.field))
        throw Error(ErrorCode::FieldMismatch, "composing automorphisms of different fields");
    return FieldAutomorphism{sigma.field, apply_automorphism(sigma, tau.image_of_generator)};
}

} // namespace tenrank
