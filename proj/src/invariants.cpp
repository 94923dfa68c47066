#include "tenrank/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "tenrank/errors.hpp"

namespace tenrank {

const char* invariant_kind_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::Rank: return "rank";
        case InvariantKind::Subrank: return "subrank";
        case InvariantKind::GeometricRank: return "geometric_rank";
    }
    return "?";
}

std::optional<InvariantKind> invariant_kind_from_name(const std::string& name) {
    if (name == "rank") return InvariantKind::Rank;
    if (name == "subrank") return InvariantKind::Subrank;
    if (name == "geometric_rank" || name == "georank") return InvariantKind::GeometricRank;
    return std::nullopt;
}

std::string InvariantValue::to_string() const {
    if (exact()) return std::to_string(lo);
    return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "] unknown";
}

// --- exact linear algebra over the field ---

int matrix_rank(const Matrix& m) {
    Matrix w = m;
    int rank = 0;
    for (int col = 0; col < w.cols && rank < w.rows; ++col) {
        int pivot = -1;
        for (int row = rank; row < w.rows; ++row)
            if (!w.at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = 0; c < w.cols; ++c) std::swap(w.at(rank, c), w.at(pivot, c));
        AlgebraicNumber inv_p = inverse(w.at(rank, col));
        for (int row = rank + 1; row < w.rows; ++row) {
            if (w.at(row, col).is_zero()) continue;
            AlgebraicNumber f = w.at(row, col) * inv_p;
            for (int c = col; c < w.cols; ++c) w.at(row, c) -= f * w.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

int flattening_rank(const Tensor& t, const std::vector<int>& left_modes) {
    return matrix_rank(flatten(t, left_modes));
}

int max_flattening_rank(const Tensor& t) {
    if (t.order() == 1) return t.is_zero() ? 0 : 1;
    int best = 0;
    for (int m = 1; m <= t.order(); ++m) best = std::max(best, flattening_rank(t, {m}));
    return best;
}

int min_flattening_rank(const Tensor& t) {
    if (t.order() == 1) return t.is_zero() ? 0 : 1;
    int best = -1;
    for (int m = 1; m <= t.order(); ++m) {
        int r = flattening_rank(t, {m});
        best = best < 0 ? r : std::min(best, r);
    }
    return best;
}

// --- certificates ---

namespace {

Tensor outer_sum(const std::vector<std::vector<std::vector<AlgebraicNumber>>>& terms,
                 const std::vector<int>& dims, const FieldPtr& field) {
    Tensor acc(dims, field);
    for (const auto& term : terms) {
        if (static_cast<int>(term.size()) != static_cast<int>(dims.size()))
            throw Error(ErrorCode::ShapeMismatch, "certificate term has wrong mode count");
        for (std::size_t m = 0; m < dims.size(); ++m)
            if (static_cast<int>(term[m].size()) != dims[m])
                throw Error(ErrorCode::ShapeMismatch, "certificate vector length mismatch");
        for (std::size_t off = 0; off < acc.entry_count(); ++off) {
            std::vector<int> idx = acc.unflatten(off);
            AlgebraicNumber prod = AlgebraicNumber::one(field);
            bool zero = false;
            for (std::size_t m = 0; m < dims.size() && !zero; ++m) {
                const AlgebraicNumber& v = term[m][static_cast<std::size_t>(idx[m])];
                if (v.is_zero())
                    zero = true;
                else
                    prod *= promote(v, field);
            }
            if (!zero) acc.set_flat(off, acc.at_flat(off) + prod);
        }
    }
    return acc;
}

// one scaled basis outer product per nonzero entry
RankCertificate nonzero_entry_certificate(const Tensor& t) {
    RankCertificate cert;
    const FieldPtr& f = t.field();
    for (std::size_t off = 0; off < t.entry_count(); ++off) {
        const AlgebraicNumber& v = t.at_flat(off);
        if (v.is_zero()) continue;
        std::vector<int> idx = t.unflatten(off);
        std::vector<std::vector<AlgebraicNumber>> term;
        for (int m = 0; m < t.order(); ++m) {
            std::vector<AlgebraicNumber> vec(static_cast<std::size_t>(t.dims()[static_cast<std::size_t>(m)]),
                                             AlgebraicNumber::zero(f));
            vec[static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])] =
                (m == 0) ? v : AlgebraicNumber::one(f);
            term.push_back(std::move(vec));
        }
        cert.terms.push_back(std::move(term));
    }
    return cert;
}

// diagonal tensors decompose into one term per nonzero diagonal entry
std::optional<RankCertificate> diagonal_rank_certificate(const Tensor& t) {
    if (!t.is_diagonal()) return std::nullopt;
    return nonzero_entry_certificate(t);
}

long long diagonal_nonzero_count(const Tensor& t) {
    long long count = 0;
    for (std::size_t off = 0; off < t.entry_count(); ++off)
        if (!t.at_flat(off).is_zero()) ++count;
    return count;
}

// maps picking the nonzero diagonal entries and scaling them to 1
std::optional<Restriction> diagonal_subrank_certificate(const Tensor& t) {
    if (!t.is_diagonal() || t.is_zero()) return std::nullopt;
    const FieldPtr& f = t.field();
    std::vector<int> picks;
    for (int i = 0; i < t.dims()[0]; ++i) {
        std::vector<int> idx(static_cast<std::size_t>(t.order()), i);
        if (!t.at(idx).is_zero()) picks.push_back(i);
    }
    int r = static_cast<int>(picks.size());
    Restriction out;
    for (int m = 0; m < t.order(); ++m) {
        LinearMap map = LinearMap::zeros(r, t.dims()[static_cast<std::size_t>(m)], f);
        for (int k = 0; k < r; ++k) {
            if (m == 0) {
                std::vector<int> idx(static_cast<std::size_t>(t.order()), picks[static_cast<std::size_t>(k)]);
                map.at(k, picks[static_cast<std::size_t>(k)]) = inverse(t.at(idx));
            } else {
                map.at(k, picks[static_cast<std::size_t>(k)]) = AlgebraicNumber::one(f);
            }
        }
        out.maps.push_back(std::move(map));
    }
    return out;
}

// r = 1 witness from any nonzero entry: coordinate projections, scaled
std::optional<Restriction> unit_subrank_certificate(const Tensor& t) {
    for (std::size_t off = 0; off < t.entry_count(); ++off) {
        const AlgebraicNumber& v = t.at_flat(off);
        if (v.is_zero()) continue;
        std::vector<int> idx = t.unflatten(off);
        const FieldPtr& f = t.field();
        Restriction out;
        for (int m = 0; m < t.order(); ++m) {
            LinearMap map = LinearMap::zeros(1, t.dims()[static_cast<std::size_t>(m)], f);
            map.at(0, idx[static_cast<std::size_t>(m)]) =
                (m == 0) ? inverse(v) : AlgebraicNumber::one(f);
            out.maps.push_back(std::move(map));
        }
        return out;
    }
    return std::nullopt;
}

// --- bounded-height certificate search (rank) ---

constexpr long long kCertSearchNodeCap = 200'000;
constexpr long long kCertSearchSpaceCap = 600'000;

struct CertSearcher {
    const std::vector<int>& dims;
    FieldPtr field;
    int d;
    long long space = 1; // number of candidate term ordinals (3 values per coordinate)
    long long nodes_left = kCertSearchNodeCap;

    explicit CertSearcher(const Tensor& t) : dims(t.dims()), field(t.field()), d(t.order()) {
        for (int n : dims) {
            for (int j = 0; j < n; ++j) {
                space *= 3;
                if (space > kCertSearchSpaceCap) return;
            }
        }
    }

    // decode an ordinal into vectors with entries in {-1, 0, 1}; rejects
    // candidates with a zero vector or an unnormalized sign (the first nonzero
    // entry of every mode but the last must be positive)
    bool decode(long long ord, std::vector<std::vector<AlgebraicNumber>>& term) const {
        term.assign(static_cast<std::size_t>(d), {});
        for (int m = 0; m < d; ++m) {
            auto& vec = term[static_cast<std::size_t>(m)];
            vec.assign(static_cast<std::size_t>(dims[static_cast<std::size_t>(m)]),
                       AlgebraicNumber::zero(field));
            int first_sign = 0;
            bool nonzero = false;
            for (int j = 0; j < dims[static_cast<std::size_t>(m)]; ++j) {
                int digit = static_cast<int>(ord % 3) - 1; // -1, 0, 1
                ord /= 3;
                if (digit != 0) {
                    if (!nonzero) first_sign = digit;
                    nonzero = true;
                    vec[static_cast<std::size_t>(j)] =
                        AlgebraicNumber::from_rational(field, Rational(digit));
                }
            }
            if (!nonzero) return false;
            if (m + 1 < d && first_sign < 0) return false;
        }
        return true;
    }

    std::optional<std::vector<std::vector<std::vector<AlgebraicNumber>>>> search(const Tensor& rem,
                                                                                 int r, long long min_ord) {
        if (rem.is_zero()) return std::vector<std::vector<std::vector<AlgebraicNumber>>>{};
        if (r == 0) return std::nullopt;
        if (max_flattening_rank(rem) > r) return std::nullopt;
        std::vector<std::vector<AlgebraicNumber>> term;
        for (long long ord = min_ord; ord < space; ++ord) {
            if (--nodes_left <= 0) return std::nullopt;
            if (!decode(ord, term)) continue;
            Tensor next = rem;
            // subtract the outer product of the candidate
            for (std::size_t off = 0; off < next.entry_count(); ++off) {
                std::vector<int> idx = next.unflatten(off);
                AlgebraicNumber prod = AlgebraicNumber::one(field);
                bool zero = false;
                for (int m = 0; m < d && !zero; ++m) {
                    const AlgebraicNumber& v =
                        term[static_cast<std::size_t>(m)][static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])];
                    if (v.is_zero())
                        zero = true;
                    else
                        prod *= v;
                }
                if (!zero) next.set_flat(off, next.at_flat(off) - prod);
            }
            auto rest = search(next, r - 1, ord);
            if (rest) {
                rest->insert(rest->begin(), term);
                return rest;
            }
        }
        return std::nullopt;
    }
};

std::optional<RankCertificate> search_rank_certificate(const Tensor& t, int r) {
    CertSearcher s(t);
    if (s.space > kCertSearchSpaceCap) return std::nullopt;
    auto found = s.search(t, r, 0);
    if (!found) return std::nullopt;
    RankCertificate cert{std::move(*found)};
    return cert;
}

// --- chart systems ---

long long decision_variable_count(const Tensor& t, int r) {
    long long sum = 0;
    for (int n : t.dims()) sum += n;
    return sum * r;
}

// designation tuples: one coordinate per mode except the last
long long designation_count(const Tensor& t) {
    long long k = 1;
    for (int m = 0; m + 1 < t.order(); ++m) k *= t.dims()[static_cast<std::size_t>(m)];
    return k;
}

std::vector<int> decode_designation(const Tensor& t, long long ord) {
    std::vector<int> des(static_cast<std::size_t>(t.order() - 1));
    for (int m = t.order() - 2; m >= 0; --m) {
        des[static_cast<std::size_t>(m)] = static_cast<int>(ord % t.dims()[static_cast<std::size_t>(m)]);
        ord /= t.dims()[static_cast<std::size_t>(m)];
    }
    return des;
}

// multisets of size r over [0, k): non-decreasing selections in
// lexicographic order
struct MultisetIter {
    std::vector<long long> sel;
    long long k;
    bool done = false;

    MultisetIter(int r, long long k) : sel(static_cast<std::size_t>(r), 0), k(k) { done = (k == 0); }

    bool next() {
        int i = static_cast<int>(sel.size()) - 1;
        while (i >= 0 && sel[static_cast<std::size_t>(i)] == k - 1) --i;
        if (i < 0) return false;
        long long v = ++sel[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < sel.size(); ++j) sel[j] = v;
        return true;
    }
};

// appends -value (as a polynomial in the adjoined generator) to terms
void append_negated_entry(std::vector<Term>& terms, const AlgebraicNumber& value, const Monomial& mono,
                          int gen_var) {
    const auto& coeffs = value.coeffs();
    for (std::size_t q = 0; q < coeffs.size(); ++q) {
        if (coeffs[q] == 0) continue;
        Monomial mq = mono;
        if (q > 0) mq.e[static_cast<std::size_t>(gen_var)] += static_cast<int>(q);
        terms.emplace_back(std::move(mq), -coeffs[q]);
    }
}

void append_minpoly(std::vector<Polynomial>& gens, const RingPtr& ring, const FieldPtr& field,
                    int gen_var) {
    std::vector<Term> mp;
    const auto& m = field->minpoly();
    for (std::size_t q = 0; q < m.size(); ++q) {
        if (m[q] == 0) continue;
        Monomial mono = Monomial::one(ring->nvars());
        mono.e[static_cast<std::size_t>(gen_var)] = static_cast<int>(q);
        mp.emplace_back(std::move(mono), m[q]);
    }
    gens.push_back(Polynomial::from_terms(ring, std::move(mp)));
}

// system for: T decomposes into exactly r terms whose mode-m vectors (m < d)
// have the designated coordinate scaled to 1
Ideal rank_chart_system(const Tensor& t, int r, const std::vector<std::vector<int>>& des) {
    int d = t.order();
    const FieldPtr& field = t.field();
    bool adjoin = field->degree() > 1;

    std::vector<std::string> names;
    std::vector<std::vector<std::vector<int>>> vidx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        vidx[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(d), {});
        for (int m = 0; m < d; ++m) {
            auto& row = vidx[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
            row.assign(static_cast<std::size_t>(t.dims()[static_cast<std::size_t>(m)]), -1);
            for (int j = 0; j < t.dims()[static_cast<std::size_t>(m)]; ++j) {
                if (m < d - 1 && j == des[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]) continue;
                row[static_cast<std::size_t>(j)] = static_cast<int>(names.size());
                names.push_back("v" + std::to_string(i) + "_" + std::to_string(m) + "_" + std::to_string(j));
            }
        }
    }
    int gen_var = -1;
    if (adjoin) {
        gen_var = static_cast<int>(names.size());
        names.push_back(field->generator_name());
    }
    RingPtr ring = PolyRing::create(names);

    std::vector<Polynomial> gens;
    for (std::size_t off = 0; off < t.entry_count(); ++off) {
        std::vector<int> idx = t.unflatten(off);
        std::vector<Term> terms;
        for (int i = 0; i < r; ++i) {
            Monomial mono = Monomial::one(ring->nvars());
            for (int m = 0; m < d; ++m) {
                int v = vidx[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]
                            [static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])];
                if (v >= 0) mono.e[static_cast<std::size_t>(v)] += 1;
                // designated coordinates contribute the factor 1
            }
            terms.emplace_back(std::move(mono), Rational(1));
        }
        append_negated_entry(terms, t.at_flat(off), Monomial::one(ring->nvars()), gen_var);
        gens.push_back(Polynomial::from_terms(ring, std::move(terms)));
    }
    if (adjoin) append_minpoly(gens, ring, field, gen_var);
    return Ideal::make(ring, std::move(gens));
}

// system for: maps phi_m carry T onto the r-diagonal, with phi_m[k, des] = 1
// for every diagonal index k and every mode m < d
Ideal subrank_chart_system(const Tensor& t, int r, const std::vector<std::vector<int>>& des) {
    int d = t.order();
    const FieldPtr& field = t.field();
    bool adjoin = field->degree() > 1;

    std::vector<std::string> names;
    // vidx[m][k][j]
    std::vector<std::vector<std::vector<int>>> vidx(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) {
        vidx[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(r), {});
        for (int k = 0; k < r; ++k) {
            auto& row = vidx[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
            row.assign(static_cast<std::size_t>(t.dims()[static_cast<std::size_t>(m)]), -1);
            for (int j = 0; j < t.dims()[static_cast<std::size_t>(m)]; ++j) {
                if (m < d - 1 && j == des[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)]) continue;
                row[static_cast<std::size_t>(j)] = static_cast<int>(names.size());
                names.push_back("f" + std::to_string(m) + "_" + std::to_string(k) + "_" + std::to_string(j));
            }
        }
    }
    int gen_var = -1;
    if (adjoin) {
        gen_var = static_cast<int>(names.size());
        names.push_back(field->generator_name());
    }
    RingPtr ring = PolyRing::create(names);

    std::vector<Polynomial> gens;
    std::vector<int> target(static_cast<std::size_t>(d), 0);
    // iterate over all output entries (k_1, ..., k_d) in [r]^d
    while (true) {
        std::vector<Term> terms;
        for (std::size_t off = 0; off < t.entry_count(); ++off) {
            const AlgebraicNumber& val = t.at_flat(off);
            if (val.is_zero()) continue;
            std::vector<int> idx = t.unflatten(off);
            Monomial mono = Monomial::one(ring->nvars());
            for (int m = 0; m < d; ++m) {
                int v = vidx[static_cast<std::size_t>(m)][static_cast<std::size_t>(target[static_cast<std::size_t>(m)])]
                            [static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])];
                if (v >= 0) mono.e[static_cast<std::size_t>(v)] += 1;
            }
            // coefficient is the entry value, as a polynomial in the generator
            const auto& coeffs = val.coeffs();
            for (std::size_t q = 0; q < coeffs.size(); ++q) {
                if (coeffs[q] == 0) continue;
                Monomial mq = mono;
                if (q > 0) mq.e[static_cast<std::size_t>(gen_var)] += static_cast<int>(q);
                terms.emplace_back(std::move(mq), coeffs[q]);
            }
        }
        bool diag = std::all_of(target.begin(), target.end(), [&](int k) { return k == target[0]; });
        if (diag) terms.emplace_back(Monomial::one(ring->nvars()), Rational(-1));
        gens.push_back(Polynomial::from_terms(ring, std::move(terms)));

        int pos = d - 1;
        while (pos >= 0 && target[static_cast<std::size_t>(pos)] == r - 1) {
            target[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        target[static_cast<std::size_t>(pos)] += 1;
    }
    if (adjoin) append_minpoly(gens, ring, field, gen_var);
    return Ideal::make(ring, std::move(gens));
}

// disjunction of chart feasibilities over designation multisets, with a
// shared step pool; any Feasible chart wins, Infeasible needs all charts
struct ChartScan {
    Verdict verdict = Verdict::Infeasible;
    long long steps = 0;
};

template <typename SystemBuilder>
ChartScan scan_charts(const Tensor& t, int r, long long& pool, SystemBuilder&& build) {
    ChartScan out;
    long long k = designation_count(t);
    MultisetIter it(r, k);
    bool saw_unknown = false;
    if (it.done) throw Error(ErrorCode::Internal, "no designation charts");
    do {
        std::vector<std::vector<int>> des;
        for (long long ord : it.sel) des.push_back(decode_designation(t, ord));
        if (pool <= 0) {
            saw_unknown = true;
            break;
        }
        Ideal sys = build(t, r, des);
        FeasibilityResult f = is_feasible(sys, pool);
        pool -= f.steps;
        out.steps += f.steps;
        if (f.verdict == Verdict::Feasible) {
            out.verdict = Verdict::Feasible;
            return out;
        }
        if (f.verdict == Verdict::Unknown) saw_unknown = true;
    } while (it.next());
    out.verdict = saw_unknown ? Verdict::Unknown : Verdict::Infeasible;
    return out;
}

} // namespace

// --- rank ---

bool verify_rank_certificate(const Tensor& t, const RankCertificate& c) {
    return outer_sum(c.terms, t.dims(), t.field()) == t;
}

RankDecision rank_decision(const Tensor& t, int r, long long budget) {
    if (r < 0) throw Error(ErrorCode::InvalidArgument, "rank_decision needs r >= 0");
    RankDecision out;
    if (r == 0) {
        out.verdict = t.is_zero() ? Verdict::Feasible : Verdict::Infeasible;
        if (out.verdict == Verdict::Feasible) out.certificate = RankCertificate{};
        return out;
    }
    if (t.is_zero()) {
        out.verdict = Verdict::Feasible;
        out.certificate = RankCertificate{};
        return out;
    }
    int lo = max_flattening_rank(t);
    if (lo > r) {
        out.verdict = Verdict::Infeasible; // flattening rank is a lower bound
        return out;
    }
    if (t.order() == 1) { // vectors: the vector itself is a one-term witness
        out.verdict = Verdict::Feasible;
        std::vector<AlgebraicNumber> v(t.entries().begin(), t.entries().end());
        out.certificate = RankCertificate{{{std::move(v)}}};
        return out;
    }
    if (auto diag = diagonal_rank_certificate(t)) {
        if (static_cast<long long>(diag->terms.size()) <= r) {
            out.verdict = Verdict::Feasible;
            out.certificate = std::move(*diag);
            return out;
        }
        // diagonal flattening rank equals the nonzero count, so lo > r above
        // would have fired; reaching here means r < nonzero count
        out.verdict = Verdict::Infeasible;
        return out;
    }
    auto nnz = nonzero_entry_certificate(t);
    if (static_cast<long long>(nnz.terms.size()) <= r) {
        out.verdict = Verdict::Feasible;
        out.certificate = std::move(nnz);
        return out;
    }
    if (auto cert = search_rank_certificate(t, r)) {
        out.verdict = Verdict::Feasible;
        out.certificate = std::move(*cert);
        return out;
    }
    if (decision_variable_count(t, r) > kRankVariableCap)
        throw Error(ErrorCode::SizeCapExceeded, "rank decision system exceeds the variable cap");

    long long pool = budget;
    bool saw_unknown = false;
    for (int k = std::max(lo, 1); k <= r; ++k) {
        ChartScan scan = scan_charts(t, k, pool, rank_chart_system);
        out.steps += scan.steps;
        if (scan.verdict == Verdict::Feasible) {
            out.verdict = Verdict::Feasible;
            return out;
        }
        if (scan.verdict == Verdict::Unknown) saw_unknown = true;
    }
    out.verdict = saw_unknown ? Verdict::Unknown : Verdict::Infeasible;
    return out;
}

RankBounds rank_bounds(const Tensor& t, long long budget) {
    RankBounds out;
    if (t.is_zero()) {
        out.value = InvariantValue::exact_value(InvariantKind::Rank, 0);
        out.certificate = RankCertificate{};
        return out;
    }
    long long lo = max_flattening_rank(t);
    RankCertificate best = nonzero_entry_certificate(t);
    if (auto diag = diagonal_rank_certificate(t)) best = std::move(*diag);
    long long hi = static_cast<long long>(best.terms.size());

    // a cheap search can close the gap from above before any Groebner work
    if (lo < hi) {
        for (long long r = lo; r < hi; ++r) {
            if (auto cert = search_rank_certificate(t, static_cast<int>(r))) {
                best = std::move(*cert);
                hi = static_cast<long long>(best.terms.size());
                break;
            }
        }
    }

    long long pool = budget;
    while (lo < hi) {
        if (decision_variable_count(t, static_cast<int>(lo)) > kRankVariableCap) break;
        if (pool <= 0) break;
        ChartScan scan = scan_charts(t, static_cast<int>(lo), pool, rank_chart_system);
        out.steps += scan.steps;
        if (scan.verdict == Verdict::Infeasible) {
            ++lo; // rank > lo certified
        } else if (scan.verdict == Verdict::Feasible) {
            hi = lo; // decomposition with lo terms exists over C
        } else {
            break;
        }
    }
    out.value = InvariantValue{InvariantKind::Rank, lo, hi};
    if (static_cast<long long>(best.terms.size()) == hi) out.certificate = std::move(best);
    return out;
}

// --- subrank ---

bool verify_subrank_certificate(const Tensor& t, const Restriction& r, int rank) {
    if (rank < 1) throw Error(ErrorCode::InvalidArgument, "certificate verification needs r >= 1");
    for (const auto& map : r.maps)
        if (map.rows != rank) throw Error(ErrorCode::ShapeMismatch, "certificate maps must map into C^r");
    Tensor image = restrict_tensor(t, r);
    return image == unit_tensor(rank, t.order(), image.field());
}

SubrankDecision subrank_decision(const Tensor& t, int r, long long budget) {
    if (r < 0) throw Error(ErrorCode::InvalidArgument, "subrank_decision needs r >= 0");
    SubrankDecision out;
    if (r == 0) {
        out.verdict = Verdict::Feasible; // the empty diagonal is always reachable
        return out;
    }
    if (t.is_zero()) {
        out.verdict = Verdict::Infeasible;
        return out;
    }
    if (r > min_flattening_rank(t)) {
        // flattening ranks only drop under restriction and the r-diagonal has
        // flattening rank r in every mode
        out.verdict = Verdict::Infeasible;
        return out;
    }
    if (r == 1) {
        out.verdict = Verdict::Feasible;
        out.certificate = unit_subrank_certificate(t);
        return out;
    }
    if (auto diag = diagonal_subrank_certificate(t)) {
        long long have = static_cast<long long>(diag->maps[0].rows);
        if (r <= have) {
            if (r == have) {
                out.certificate = std::move(*diag);
            } else {
                // shrink: keep the first r diagonal picks
                Restriction small;
                for (const auto& map : diag->maps) {
                    LinearMap cut = LinearMap::zeros(r, map.cols, t.field());
                    for (int i = 0; i < r; ++i)
                        for (int j = 0; j < map.cols; ++j) cut.at(i, j) = map.at(i, j);
                    small.maps.push_back(std::move(cut));
                }
                out.certificate = std::move(small);
            }
            out.verdict = Verdict::Feasible;
            return out;
        }
        out.verdict = Verdict::Infeasible; // min flattening rank of a diagonal
                                           // equals its nonzero count
        return out;
    }
    if (t.order() == 1) {
        out.verdict = Verdict::Infeasible; // r >= 2 never fits in one mode
        return out;
    }
    if (decision_variable_count(t, r) > kRankVariableCap)
        throw Error(ErrorCode::SizeCapExceeded, "subrank decision system exceeds the variable cap");

    long long pool = budget;
    ChartScan scan = scan_charts(t, r, pool, subrank_chart_system);
    out.steps = scan.steps;
    out.verdict = scan.verdict;
    return out;
}

SubrankBounds subrank_bounds(const Tensor& t, long long budget) {
    SubrankBounds out;
    if (t.is_zero()) {
        out.value = InvariantValue::exact_value(InvariantKind::Subrank, 0);
        return out;
    }
    long long hi = min_flattening_rank(t);
    long long lo = 1;
    out.certificate = unit_subrank_certificate(t);
    if (auto diag = diagonal_subrank_certificate(t)) {
        lo = diag->maps[0].rows;
        out.certificate = std::move(*diag);
        // a diagonal with k nonzero entries has min flattening rank k
        out.value = InvariantValue{InvariantKind::Subrank, lo, hi};
        out.steps = 0;
        return out;
    }

    long long pool = budget;
    long long r = lo + 1;
    while (r <= hi) {
        if (decision_variable_count(t, static_cast<int>(r)) > kRankVariableCap) break;
        if (pool <= 0) break;
        ChartScan scan = scan_charts(t, static_cast<int>(r), pool, subrank_chart_system);
        out.steps += scan.steps;
        if (scan.verdict == Verdict::Feasible) {
            lo = r;
            ++r; // no rational witness from charts; the bound is still certified
        } else if (scan.verdict == Verdict::Infeasible) {
            hi = r - 1;
            break;
        } else {
            break;
        }
    }
    out.value = InvariantValue{InvariantKind::Subrank, lo, std::max(lo, hi)};
    return out;
}

// --- geometric rank ---

GeoRank geometric_rank(const Tensor& t, long long budget) {
    if (t.order() < 2) throw Error(ErrorCode::InvalidArgument, "geometric rank needs order >= 2");
    long long ambient = 0;
    for (int m = 0; m + 1 < t.order(); ++m) ambient += t.dims()[static_cast<std::size_t>(m)];

    Ideal sys = multilinear_system(t);
    GroebnerResult gb = groebner(sys, MonomialOrder::grevlex(), budget);
    GeoRank out;
    out.steps = gb.steps;
    if (gb.status == ComputeStatus::BudgetExhausted) {
        out.value = InvariantValue::interval(InvariantKind::GeometricRank, 0, ambient);
        return out;
    }
    auto dim = ideal_dimension(gb.basis);
    if (!dim)
        throw Error(ErrorCode::Internal, "annihilating variety cannot be empty (it contains 0)");
    // With an adjoined field generator the variety is the disjoint union, over
    // the conjugates of the generator, of the annihilating varieties of the
    // conjugated tensors; those all share one dimension, so the (x, a)-variety
    // has that same dimension and the x-codimension below is exact.
    out.value = InvariantValue::exact_value(InvariantKind::GeometricRank, ambient - *dim);
    return out;
}

// --- relation ideal ---

RelationIdeal relation_ideal(const Tensor& t, long long budget) {
    bool wide = false;
    for (int n : t.dims())
        if (n > 9) wide = true;

    std::vector<std::string> names;
    for (std::size_t off = 0; off < t.entry_count(); ++off)
        names.push_back(entry_var_name(t.unflatten(off), wide));

    RelationIdeal out;
    const FieldPtr& field = t.field();
    if (field->degree() == 1) {
        RingPtr ring = PolyRing::create(names);
        std::vector<Polynomial> gens;
        for (std::size_t off = 0; off < t.entry_count(); ++off) {
            Polynomial g = Polynomial::variable(ring, static_cast<int>(off));
            g -= Polynomial::constant(ring, t.at_flat(off).rational_value());
            gens.push_back(std::move(g));
        }
        GroebnerResult gb = groebner(Ideal::make(ring, std::move(gens)), MonomialOrder::grevlex(), budget);
        out.steps = gb.steps;
        if (gb.status == ComputeStatus::BudgetExhausted) {
            out.status = ComputeStatus::BudgetExhausted;
            return out;
        }
        out.ideal = Ideal::make(ring, gb.basis.basis);
        return out;
    }

    for (const auto& n : names)
        if (n == field->generator_name())
            throw Error(ErrorCode::InvalidArgument, "field generator name collides with entry variable");
    std::vector<std::string> full = names;
    full.push_back(field->generator_name());
    RingPtr ring = PolyRing::create(full);
    int gen_var = ring->nvars() - 1;

    std::vector<Polynomial> gens;
    for (std::size_t off = 0; off < t.entry_count(); ++off) {
        std::vector<Term> terms;
        Monomial xm = Monomial::one(ring->nvars());
        xm.e[off] = 1;
        terms.emplace_back(std::move(xm), Rational(1));
        append_negated_entry(terms, t.at_flat(off), Monomial::one(ring->nvars()), gen_var);
        gens.push_back(Polynomial::from_terms(ring, std::move(terms)));
    }
    append_minpoly(gens, ring, field, gen_var);

    EliminationResult elim = eliminate(Ideal::make(ring, std::move(gens)), {field->generator_name()}, budget);
    out.steps = elim.steps;
    if (elim.status == ComputeStatus::BudgetExhausted) {
        out.status = ComputeStatus::BudgetExhausted;
        return out;
    }
    out.ideal = std::move(elim.ideal);
    return out;
}

// --- Fekete estimation ---

namespace {

double nth_root(long long v, int n) {
    if (v < 0) throw Error(ErrorCode::Internal, "negative invariant value");
    if (v == 0) return 0.0;
    if (n == 1) return static_cast<double>(v);
    Int root, value(static_cast<long>(v));
    int exactp = mpz_root(root.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(n));
    if (exactp != 0) return root.get_d(); // perfect power: exact root
    return std::pow(static_cast<double>(v), 1.0 / static_cast<double>(n));
}

} // namespace

FeketeReport fekete_estimate(InvariantKind kind, const Tensor& t, int n_max, long long budget) {
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "fekete estimate needs n_max >= 1");
    FeketeReport report;
    report.kind = kind;
    for (int n = 1; n <= n_max; ++n) {
        Tensor power = box_power(t, n); // SizeCapExceeded propagates
        FeketeEntry entry;
        entry.n = n;
        switch (kind) {
            case InvariantKind::Rank: {
                RankBounds rb = rank_bounds(power, budget);
                entry.value = rb.value;
                entry.steps = rb.steps;
                break;
            }
            case InvariantKind::Subrank: {
                SubrankBounds sb = subrank_bounds(power, budget);
                entry.value = sb.value;
                entry.steps = sb.steps;
                break;
            }
            case InvariantKind::GeometricRank: {
                GeoRank gr = geometric_rank(power, budget);
                entry.value = gr.value;
                entry.steps = gr.steps;
                break;
            }
        }
        entry.root_lo = nth_root(entry.value.lo, n);
        entry.root_hi = nth_root(entry.value.hi, n);
        report.entries.push_back(entry);

        if (kind == InvariantKind::Rank) {
            double prev = report.running_bound.empty() ? entry.root_hi : report.running_bound.back();
            report.running_bound.push_back(std::min(prev, entry.root_hi));
        } else if (kind == InvariantKind::Subrank) {
            double prev = report.running_bound.empty() ? entry.root_lo : report.running_bound.back();
            report.running_bound.push_back(std::max(prev, entry.root_lo));
        }
    }
    return report;
}

GapThreshold gap_threshold(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "gap threshold needs d >= 2");
    double p = 1.0 / static_cast<double>(d);
    double h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    return {h, std::exp2(h)};
}

} // namespace tenrank
