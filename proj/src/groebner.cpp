#include "tenrank/groebner.hpp"

#include <algorithm>
#include <set>

#include "tenrank/errors.hpp"

namespace tenrank {

namespace {

// working representation: terms sorted descending under the active order
using OPoly = std::vector<Term>;

OPoly to_ordered(const Polynomial& p, const MonomialOrder& ord) {
    OPoly t = p.terms();
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.first, b.first) > 0; });
    return t;
}

// a - c * m * b, all ordered
OPoly sub_scaled(const OPoly& a, const Rational& c, const Monomial& m, const OPoly& b,
                 const MonomialOrder& ord) {
    OPoly out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(a[i++]);
            continue;
        }
        Monomial mb = b[j].first * m;
        if (i == a.size()) {
            out.emplace_back(std::move(mb), -(c * b[j].second));
            ++j;
            continue;
        }
        int cmp = ord.compare(a[i].first, mb);
        if (cmp > 0) {
            out.push_back(a[i++]);
        } else if (cmp < 0) {
            out.emplace_back(std::move(mb), -(c * b[j].second));
            ++j;
        } else {
            Rational coef = a[i].second - c * b[j].second;
            if (coef != 0) out.emplace_back(a[i].first, std::move(coef));
            ++i;
            ++j;
        }
    }
    return out;
}

void make_monic(OPoly& p) {
    if (p.empty() || p[0].second == 1) return;
    Rational inv = Rational(1) / p[0].second;
    for (auto& [m, c] : p) c *= inv;
}

// full reduction of f modulo basis (all monic); leading terms strictly
// decrease, so the remainder accumulates already sorted
OPoly reduce_full(OPoly f, const std::vector<OPoly>& basis, const MonomialOrder& ord) {
    OPoly rem;
    std::size_t cursor = 0; // terms before cursor are irreducible
    while (cursor < f.size()) {
        const Monomial& lm = f[cursor].first;
        bool divided = false;
        for (const auto& g : basis) {
            if (g[0].first.divides(lm)) {
                Monomial q = lm.divide_by(g[0].first);
                Rational c = f[cursor].second; // g monic
                OPoly tail(f.begin() + static_cast<std::ptrdiff_t>(cursor), f.end());
                OPoly reduced = sub_scaled(tail, c, q, g, ord);
                f.resize(cursor);
                f.insert(f.end(), reduced.begin(), reduced.end());
                divided = true;
                break;
            }
        }
        if (!divided) ++cursor;
    }
    return f;
}

struct PairKey {
    Monomial lcm;
    int i, j;
};

struct PairCmp {
    MonomialOrder ord;
    bool operator()(const PairKey& a, const PairKey& b) const {
        int c = ord.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0; // smallest lcm first (normal strategy)
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Feasible: return "Feasible";
        case Verdict::Infeasible: return "Infeasible";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

GroebnerResult groebner(const Ideal& ideal, const MonomialOrder& order, long long budget) {
    if (budget <= 0) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
    const RingPtr& ring = ideal.ring;

    std::vector<OPoly> basis;
    for (const auto& g : ideal.generators) {
        if (g.is_zero()) continue;
        OPoly og = to_ordered(g, order);
        make_monic(og);
        basis.push_back(std::move(og));
    }

    std::set<PairKey, PairCmp> pairs(PairCmp{order});
    std::set<std::pair<int, int>> pending;
    auto push_pairs_for = [&](int k) {
        for (int i = 0; i < k; ++i) {
            pairs.insert({Monomial::lcm(basis[static_cast<std::size_t>(i)][0].first,
                                        basis[static_cast<std::size_t>(k)][0].first),
                          i, k});
            pending.insert({i, k});
        }
    };
    for (int k = 1; k < static_cast<int>(basis.size()); ++k) push_pairs_for(k);

    long long steps = 0;
    bool exhausted = false;
    while (!pairs.empty()) {
        PairKey pk = *pairs.begin();
        pairs.erase(pairs.begin());
        pending.erase({pk.i, pk.j});
        const OPoly& f = basis[static_cast<std::size_t>(pk.i)];
        const OPoly& g = basis[static_cast<std::size_t>(pk.j)];

        // product criterion
        if (f[0].first.coprime_with(g[0].first)) continue;
        // chain criterion
        bool skip = false;
        for (int k = 0; k < static_cast<int>(basis.size()) && !skip; ++k) {
            if (k == pk.i || k == pk.j) continue;
            if (!basis[static_cast<std::size_t>(k)][0].first.divides(pk.lcm)) continue;
            auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (!pending.count(key(pk.i, k)) && !pending.count(key(pk.j, k))) skip = true;
        }
        if (skip) continue;

        if (steps >= budget) {
            exhausted = true;
            break;
        }
        ++steps;

        // S-polynomial, then full reduction
        Monomial qf = pk.lcm.divide_by(f[0].first);
        Monomial qg = pk.lcm.divide_by(g[0].first);
        OPoly shifted_f;
        shifted_f.reserve(f.size());
        for (const auto& [m, c] : f) shifted_f.emplace_back(m * qf, c);
        OPoly s = sub_scaled(shifted_f, Rational(1), qg, g, order);
        OPoly r = reduce_full(std::move(s), basis, order);
        if (!r.empty()) {
            make_monic(r);
            basis.push_back(std::move(r));
            push_pairs_for(static_cast<int>(basis.size()) - 1);
        }
    }

    GroebnerResult out;
    out.steps = steps;
    if (exhausted) {
        out.status = ComputeStatus::BudgetExhausted;
        std::vector<Polynomial> partial;
        for (const auto& b : basis) partial.push_back(Polynomial::from_terms(ring, b));
        out.basis = GroebnerBasis{ideal, order, std::move(partial), false};
        return out;
    }

    // minimalize: keep only leading monomials not divisible by another kept one
    std::vector<int> idx(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        int c = order.compare(basis[static_cast<std::size_t>(a)][0].first,
                              basis[static_cast<std::size_t>(b)][0].first);
        if (c != 0) return c < 0;
        return a < b;
    });
    std::vector<OPoly> kept;
    for (int i : idx) {
        const Monomial& lm = basis[static_cast<std::size_t>(i)][0].first;
        bool redundant = false;
        for (const auto& k : kept)
            if (k[0].first.divides(lm)) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(basis[static_cast<std::size_t>(i)]);
    }
    // tail-reduce each against the others
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        std::vector<OPoly> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        OPoly r = others.empty() ? kept[i] : reduce_full(kept[i], others, order);
        make_monic(r);
        reduced.push_back(Polynomial::from_terms(ring, r));
    }
    out.status = ComputeStatus::Complete;
    out.basis = GroebnerBasis{ideal, order, std::move(reduced), true};
    return out;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& g) {
    if (!p.ring()->same_as(*g.ideal.ring))
        throw Error(ErrorCode::InvalidArgument, "polynomial not in the basis ring");
    std::vector<OPoly> basis;
    for (const auto& b : g.basis) {
        if (b.is_zero()) continue;
        OPoly ob = to_ordered(b, g.order);
        make_monic(ob);
        basis.push_back(std::move(ob));
    }
    if (basis.empty()) return p;
    OPoly r = reduce_full(to_ordered(p, g.order), basis, g.order);
    return Polynomial::from_terms(p.ring(), std::move(r));
}

std::optional<int> ideal_dimension(const GroebnerBasis& g) {
    if (!g.reduced) throw Error(ErrorCode::InvalidArgument, "ideal_dimension needs a reduced basis");
    int n = g.ideal.ring->nvars();
    if (n > 24) throw Error(ErrorCode::SizeCapExceeded, "dimension search supports at most 24 variables");

    std::vector<unsigned> lt_support;
    for (const auto& b : g.basis) {
        if (b.is_zero()) continue;
        const Monomial& lm = b.leading_term(g.order).first;
        if (lm.is_one()) return std::nullopt; // 1 in I: empty variety
        unsigned mask = 0;
        for (int v = 0; v < n; ++v)
            if (lm.e[static_cast<std::size_t>(v)] > 0) mask |= 1u << v;
        lt_support.push_back(mask);
    }
    if (lt_support.empty()) return n; // zero ideal

    // largest S with no leading-term support contained in S
    for (int size = n; size >= 0; --size) {
        // iterate subsets of fixed popcount
        for (unsigned s = 0; s < (1u << n); ++s) {
            if (__builtin_popcount(s) != size) continue;
            bool independent = true;
            for (unsigned m : lt_support)
                if ((m & ~s) == 0) {
                    independent = false;
                    break;
                }
            if (independent) return size;
        }
    }
    return 0;
}

FeasibilityResult is_feasible(const Ideal& ideal, long long budget) {
    GroebnerResult r = groebner(ideal, MonomialOrder::grevlex(), budget);
    if (r.status == ComputeStatus::BudgetExhausted) return {Verdict::Unknown, r.steps};
    for (const auto& b : r.basis.basis)
        if (!b.is_zero() && b.is_constant()) return {Verdict::Infeasible, r.steps};
    return {Verdict::Feasible, r.steps};
}

EliminationResult eliminate(const Ideal& ideal, const std::vector<std::string>& drop, long long budget) {
    const RingPtr& ring = ideal.ring;
    std::vector<bool> dropped(static_cast<std::size_t>(ring->nvars()), false);
    for (const auto& name : drop) {
        int i = ring->var_index(name);
        if (i < 0) throw Error(ErrorCode::InvalidArgument, "unknown variable '" + name + "'");
        dropped[static_cast<std::size_t>(i)] = true;
    }

    // permuted ring: dropped variables first, keepers after, ring order within
    std::vector<int> perm; // perm[new] = old
    for (int i = 0; i < ring->nvars(); ++i)
        if (dropped[static_cast<std::size_t>(i)]) perm.push_back(i);
    int nd = static_cast<int>(perm.size());
    for (int i = 0; i < ring->nvars(); ++i)
        if (!dropped[static_cast<std::size_t>(i)]) perm.push_back(i);

    std::vector<std::string> pnames, knames;
    for (int i : perm) pnames.push_back(ring->var_name(i));
    for (std::size_t i = static_cast<std::size_t>(nd); i < perm.size(); ++i)
        knames.push_back(ring->var_name(perm[i]));
    RingPtr pring = PolyRing::create(pnames);
    RingPtr kring = PolyRing::create(knames);

    std::vector<Polynomial> pgens;
    for (const auto& g : ideal.generators) {
        std::vector<Term> terms;
        for (const auto& [m, c] : g.terms()) {
            Monomial pm = Monomial::one(pring->nvars());
            for (int v = 0; v < pring->nvars(); ++v)
                pm.e[static_cast<std::size_t>(v)] = m.e[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])];
            terms.emplace_back(std::move(pm), c);
        }
        pgens.push_back(Polynomial::from_terms(pring, std::move(terms)));
    }

    GroebnerResult r = groebner(Ideal::make(pring, std::move(pgens)), MonomialOrder::block(nd), budget);
    if (r.status == ComputeStatus::BudgetExhausted) return {ComputeStatus::BudgetExhausted, std::nullopt, r.steps};

    std::vector<Polynomial> kept;
    for (const auto& b : r.basis.basis) {
        bool free_of_dropped = true;
        std::vector<Term> terms;
        for (const auto& [m, c] : b.terms()) {
            for (int v = 0; v < nd && free_of_dropped; ++v)
                if (m.e[static_cast<std::size_t>(v)] > 0) free_of_dropped = false;
            if (!free_of_dropped) break;
            Monomial km = Monomial::one(kring->nvars());
            for (int v = 0; v < kring->nvars(); ++v)
                km.e[static_cast<std::size_t>(v)] = m.e[static_cast<std::size_t>(nd + v)];
            terms.emplace_back(std::move(km), c);
        }
        if (free_of_dropped) kept.push_back(Polynomial::from_terms(kring, std::move(terms)));
    }
    return {ComputeStatus::Complete, Ideal::make(kring, std::move(kept)), r.steps};
}

} // namespace tenrank
