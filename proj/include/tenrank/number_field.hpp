// Number fields Q(alpha), their elements, and their field automorphisms.
//
// A NumberField is Q[x]/(m) for a monic irreducible m of degree <= kDegreeCap.
// Q itself is the degree-1 case m = x. Elements are coefficient vectors in the
// power basis 1, alpha, ..., alpha^{deg-1}, least degree first, always fully
// reduced, so structural equality is mathematical equality.
#ifndef TENRANK_NUMBER_FIELD_HPP
#define TENRANK_NUMBER_FIELD_HPP

#include <memory>
#include <string>
#include <vector>

#include "tenrank/rational.hpp"

namespace tenrank {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
public:
    static constexpr int kDegreeCap = 8;

    // Validates monicity, degree bounds, and irreducibility over Q.
    // Irreducibility is decided by exact trial factorization: rational root
    // test, then Kronecker interpolation search for factors of degree 2..4
    // (complete for the degree cap of 8). Throws NotMonic, ReducibleError,
    // DegreeCapExceeded.
    static FieldPtr create(std::vector<Rational> minpoly,
                           std::string generator_name = "a",
                           int degree_cap = kDegreeCap);

    // The canonical rationals-as-a-field handle: minpoly x, generator "a".
    static FieldPtr rationals();

    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
    const std::vector<Rational>& minpoly() const { return minpoly_; }
    const std::string& generator_name() const { return generator_name_; }
    bool is_rational_field() const { return degree() == 1; }

    // Structural identity: same minpoly and generator name.
    bool same_as(const NumberField& other) const;

    std::string minpoly_string() const;

private:
    NumberField(std::vector<Rational> minpoly, std::string generator_name)
        : minpoly_(std::move(minpoly)), generator_name_(std::move(generator_name)) {}

    std::vector<Rational> minpoly_; // c0..cn, cn == 1
    std::string generator_name_;
};

class AlgebraicNumber {
public:
    AlgebraicNumber() = default;
    // coeffs length must equal field degree.
    AlgebraicNumber(FieldPtr field, std::vector<Rational> coeffs);

    static AlgebraicNumber from_rational(const FieldPtr& field, const Rational& q);
    static AlgebraicNumber zero(const FieldPtr& field);
    static AlgebraicNumber one(const FieldPtr& field);
    static AlgebraicNumber generator(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const; // lies in Q
    // Requires is_rational(); the constant coefficient.
    const Rational& rational_value() const;

    AlgebraicNumber operator-() const;
    AlgebraicNumber& operator+=(const AlgebraicNumber& rhs);
    AlgebraicNumber& operator-=(const AlgebraicNumber& rhs);
    AlgebraicNumber& operator*=(const AlgebraicNumber& rhs);

    friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
    friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
    friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }

    bool operator==(const AlgebraicNumber& rhs) const;
    bool operator!=(const AlgebraicNumber& rhs) const { return !(*this == rhs); }

    // Serializes as a polynomial in the generator, e.g. "3/2 + 2*a".
    std::string to_string() const;

private:
    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

// Multiplicative inverse; throws DivisionByZero on zero input.
AlgebraicNumber inverse(const AlgebraicNumber& a);
AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);

// Re-embeds a into `target`. Identity when the fields agree; rationals embed
// into any field; anything else is a FieldMismatch.
AlgebraicNumber promote(const AlgebraicNumber& a, const FieldPtr& target);

struct FieldAutomorphism {
    FieldPtr field;
    AlgebraicNumber image_of_generator;

    bool is_identity() const;
    std::string to_string() const; // e.g. "a -> -a"
};

// All field automorphisms of F, i.e. one per root of the minimal polynomial
// lying inside F. The identity comes first; the rest are sorted by the image's
// coefficient vector. Deterministic.
//
// Method: p-adic Hensel lifting. Pick a small prime p with the (integralized)
// minpoly squarefree mod p; enumerate the roots of m in F_p[x]/(m) outright
// when p^deg is small, or as Frobenius powers x^{p^k} when m is irreducible
// mod p; Newton-lift each root, rationally reconstruct its coefficients, and
// verify m(candidate) = 0 exactly. Only exactly verified images are returned.
std::vector<FieldAutomorphism> automorphisms(const FieldPtr& field);

// Substitutes image_of_generator into a's coefficient polynomial.
AlgebraicNumber apply_automorphism(const FieldAutomorphism& sigma, const AlgebraicNumber& a);

// (sigma . tau)(x) = sigma(tau(x)).
FieldAutomorphism compose(const FieldAutomorphism& sigma, const FieldAutomorphism& tau);

} // namespace tenrank

#endif
