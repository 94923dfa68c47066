#include "tenrank/poly.hpp"

#include <algorithm>
#include <sstream>

#include "tenrank/errors.hpp"

namespace tenrank {

RingPtr PolyRing::create(std::vector<std::string> vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw Error(ErrorCode::InvalidArgument, "duplicate ring variable '" + vars[i] + "'");
    return RingPtr(new PolyRing(std::move(vars)));
}

int PolyRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

int Monomial::degree() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > other.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    Monomial m = *this;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] += rhs.e[i];
    return m;
}

Monomial Monomial::divide_by(const Monomial& rhs) const {
    Monomial m = *this;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] -= rhs.e[i];
    return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::max(a.e[i], b.e[i]);
    return m;
}

bool Monomial::coprime_with(const Monomial& b) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0 && b.e[i] > 0) return false;
    return true;
}

namespace {

int cmp_grevlex_span(const int* a, const int* b, int lo, int hi) {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1; // smaller trailing exponent is larger
    }
    return 0;
}

} // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    int n = static_cast<int>(a.e.size());
    switch (kind) {
        case Kind::Grevlex:
            return cmp_grevlex_span(a.e.data(), b.e.data(), 0, n);
        case Kind::Lex:
            for (int i = 0; i < n; ++i)
                if (a.e[static_cast<std::size_t>(i)] != b.e[static_cast<std::size_t>(i)])
                    return a.e[static_cast<std::size_t>(i)] < b.e[static_cast<std::size_t>(i)] ? -1 : 1;
            return 0;
        case Kind::Block: {
            int c = cmp_grevlex_span(a.e.data(), b.e.data(), 0, split);
            if (c != 0) return c;
            return cmp_grevlex_span(a.e.data(), b.e.data(), split, n);
        }
    }
    return 0;
}

std::string MonomialOrder::to_string() const {
    switch (kind) {
        case Kind::Grevlex: return "grevlex";
        case Kind::Lex: return "lex";
        case Kind::Block: return "block(" + std::to_string(split) + ")";
    }
    return "?";
}

namespace {
const MonomialOrder kCanonical = MonomialOrder::grevlex();

struct CanonicalDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return kCanonical.compare(a, b) > 0; }
};
} // namespace

Polynomial Polynomial::constant(const RingPtr& ring, const Rational& c) {
    Polynomial p(ring);
    if (c != 0) p.terms_.emplace_back(Monomial::one(ring->nvars()), c);
    return p;
}

Polynomial Polynomial::variable(const RingPtr& ring, int index) {
    if (index < 0 || index >= ring->nvars())
        throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    Monomial m = Monomial::one(ring->nvars());
    m.e[static_cast<std::size_t>(index)] = 1;
    Polynomial p(ring);
    p.terms_.emplace_back(std::move(m), Rational(1));
    return p;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms) {
    std::map<Monomial, Rational, CanonicalDesc> acc;
    for (auto& [m, c] : terms) {
        if (static_cast<int>(m.e.size()) != ring->nvars())
            throw Error(ErrorCode::InvalidArgument, "monomial arity does not match ring");
        acc[m] += c;
    }
    Polynomial p(ring);
    for (auto& [m, c] : acc)
        if (c != 0) p.terms_.emplace_back(m, c);
    return p;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

const Term& Polynomial::leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) throw Error(ErrorCode::Internal, "leading term of zero polynomial");
    if (order.kind == MonomialOrder::Kind::Grevlex) return terms_[0];
    const Term* best = &terms_[0];
    for (const auto& t : terms_)
        if (order.compare(t.first, best->first) > 0) best = &t;
    return *best;
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

namespace {
// merge two canonical term lists with coefficient combiner sign
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    CanonicalDesc before;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && before(a[i].first, b[j].first))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || before(b[j].first, a[i].first)) {
            out.push_back(b[j]);
            if (sign < 0) out.back().second = -out.back().second;
            ++j;
        } else {
            Rational c = a[i].second + (sign < 0 ? -b[j].second : b[j].second);
            if (c != 0) out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}
} // namespace

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (!ring_->same_as(*rhs.ring_)) throw Error(ErrorCode::InvalidArgument, "ring mismatch");
    terms_ = merge_terms(terms_, rhs.terms_, +1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (!ring_->same_as(*rhs.ring_)) throw Error(ErrorCode::InvalidArgument, "ring mismatch");
    terms_ = merge_terms(terms_, rhs.terms_, -1);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (!ring_->same_as(*rhs.ring_)) throw Error(ErrorCode::InvalidArgument, "ring mismatch");
    std::map<Monomial, Rational, CanonicalDesc> acc;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : rhs.terms_) acc[ma * mb] += ca * cb;
    Polynomial p(ring_);
    for (auto& [m, c] : acc)
        if (c != 0) p.terms_.emplace_back(m, c);
    return p;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    return ring_->same_as(*rhs.ring_) && terms_ == rhs.terms_;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial p(ring_);
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
        int e = m.e[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        Monomial dm = m;
        dm.e[static_cast<std::size_t>(var)] -= 1;
        out.emplace_back(std::move(dm), c * Rational(e));
    }
    return from_terms(ring_, std::move(out));
}

AlgebraicNumber Polynomial::evaluate(const std::vector<AlgebraicNumber>& point) const {
    if (static_cast<int>(point.size()) != ring_->nvars())
        throw Error(ErrorCode::InvalidArgument, "evaluation point arity mismatch");
    if (point.empty()) throw Error(ErrorCode::InvalidArgument, "evaluation in empty ring");
    const FieldPtr& field = point[0].field();
    AlgebraicNumber acc = AlgebraicNumber::zero(field);
    for (const auto& [m, c] : terms_) {
        AlgebraicNumber t = AlgebraicNumber::from_rational(field, c);
        for (std::size_t v = 0; v < point.size(); ++v)
            for (int k = 0; k < m.e[v]; ++k) t *= point[v];
        acc += t;
    }
    return acc;
}

std::string Polynomial::to_string(const MonomialOrder& order) const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [&](const Term* a, const Term* b) { return order.compare(a->first, b->first) > 0; });

    std::ostringstream os;
    bool first = true;
    for (const Term* t : sorted) {
        Rational c = t->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string mono;
        for (std::size_t v = 0; v < t->first.e.size(); ++v) {
            int e = t->first.e[v];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->var_name(static_cast<int>(v));
            if (e >= 2) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            os << rational_to_string(c);
        } else {
            if (c != 1) os << rational_to_string(c) << "*";
            os << mono;
        }
    }
    return os.str();
}

Ideal Ideal::make(RingPtr ring, std::vector<Polynomial> gens) {
    if (gens.empty()) gens.push_back(Polynomial::zero(ring));
    for (const auto& g : gens)
        if (!g.ring()->same_as(*ring)) throw Error(ErrorCode::InvalidArgument, "generator ring mismatch");
    return Ideal{std::move(ring), std::move(gens)};
}

} // namespace tenrank
