// Multivariate polynomials over Q: rings, monomials, term orders, ideals.
//
// Terms are stored sorted descending under graded reverse lexicographic order
// regardless of which order an algorithm runs with, so structurally equal
// polynomials compare equal and serialization is insertion-independent.
#ifndef TENRANK_POLY_HPP
#define TENRANK_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tenrank/number_field.hpp"
#include "tenrank/rational.hpp"

namespace tenrank {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
public:
    static RingPtr create(std::vector<std::string> vars);

    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::string& var_name(int i) const { return vars_[static_cast<std::size_t>(i)]; }
    int var_index(const std::string& name) const; // -1 when absent
    bool same_as(const PolyRing& other) const { return vars_ == other.vars_; }

private:
    explicit PolyRing(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    std::vector<std::string> vars_;
};

struct Monomial {
    std::vector<int> e;

    static Monomial one(int nvars) { return Monomial{std::vector<int>(static_cast<std::size_t>(nvars), 0)}; }

    int degree() const;
    bool is_one() const { return degree() == 0; }
    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& rhs) const;
    Monomial divide_by(const Monomial& rhs) const; // requires rhs.divides(*this)
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool coprime_with(const Monomial& b) const;

    bool operator==(const Monomial& rhs) const { return e == rhs.e; }
    bool operator!=(const Monomial& rhs) const { return e != rhs.e; }
};

struct MonomialOrder {
    enum class Kind { Grevlex, Lex, Block };
    Kind kind = Kind::Grevlex;
    int split = 0; // Block: variables [0, split) dominate

    static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
    static MonomialOrder lex() { return {Kind::Lex, 0}; }
    static MonomialOrder block(int split) { return {Kind::Block, split}; }

    int compare(const Monomial& a, const Monomial& b) const; // -1, 0, 1
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    std::string to_string() const;
};

using Term = std::pair<Monomial, Rational>;

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }
    static Polynomial constant(const RingPtr& ring, const Rational& c);
    static Polynomial variable(const RingPtr& ring, int index);
    // accumulates duplicates, drops zeros, sorts canonically
    static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_[0].first.is_one(); }
    int total_degree() const; // -1 for the zero polynomial

    // leading term under an arbitrary order (linear scan when not grevlex)
    const Term& leading_term(const MonomialOrder& order) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c, p; }

    bool operator==(const Polynomial& rhs) const;
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    Polynomial derivative(int var) const;

    // exact evaluation; point size must equal nvars and share one field
    AlgebraicNumber evaluate(const std::vector<AlgebraicNumber>& point) const;

    // e.g. "x11*x22 - x12*x21"; terms descending under `order`
    std::string to_string(const MonomialOrder& order = MonomialOrder::grevlex()) const;

private:
    RingPtr ring_;
    std::vector<Term> terms_; // sorted descending under grevlex, no zero coefficients
};

struct Ideal {
    RingPtr ring;
    std::vector<Polynomial> generators; // nonempty; the zero ideal is {0}

    static Ideal make(RingPtr ring, std::vector<Polynomial> gens);
};

} // namespace tenrank

#endif
