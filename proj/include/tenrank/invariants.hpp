// The three tensor invariants and their decision procedures: rank and subrank
// via C-solvability of the defining polynomial systems (decided through
// Groebner feasibility on de-homogenized charts), geometric rank via the
// dimension of the annihilating variety, the relation ideal over Q, Fekete
// estimation of asymptotic counterparts under vertical powers, and the
// entropy gap thresholds.
//
// Unknown is a first-class verdict everywhere: no decision is ever guessed
// from numerics, and exhausted budgets surface as explicit intervals.
#ifndef TENRANK_INVARIANTS_HPP
#define TENRANK_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "tenrank/groebner.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

inline constexpr long long kDefaultBudget = 200'000; // S-polynomial reductions
inline constexpr int kRankVariableCap = 36;          // decision system variables

enum class InvariantKind { Rank, Subrank, GeometricRank };

const char* invariant_kind_name(InvariantKind k);
std::optional<InvariantKind> invariant_kind_from_name(const std::string& name);

struct InvariantValue {
    InvariantKind kind = InvariantKind::Rank;
    long long lo = 0, hi = 0;

    bool exact() const { return lo == hi; }
    static InvariantValue exact_value(InvariantKind k, long long v) { return {k, v, v}; }
    static InvariantValue interval(InvariantKind k, long long lo, long long hi) { return {k, lo, hi}; }
    std::string to_string() const; // "3" or "[1, 4] unknown"
};

// One factor tuple per summand; the certificate asserts
//   T = sum_i terms[i][0] x terms[i][1] x ... x terms[i][d-1].
struct RankCertificate {
    std::vector<std::vector<std::vector<AlgebraicNumber>>> terms;
};

// --- flattening ranks ---

// exact rank of the chosen flattening, by Gaussian elimination over the field
int flattening_rank(const Tensor& t, const std::vector<int>& left_modes);
// max over the single-mode splits {1}, ..., {d}; for vectors: 0 or 1
int max_flattening_rank(const Tensor& t);
// min over the single-mode splits (an upper bound for subrank)
int min_flattening_rank(const Tensor& t);

int matrix_rank(const Matrix& m);

// --- rank ---

struct RankDecision {
    Verdict verdict = Verdict::Unknown;
    std::optional<RankCertificate> certificate; // attached only when a rational
                                                // (or structurally obvious) witness was found
    long long steps = 0;
};

// Is rank(T) <= r over C?
RankDecision rank_decision(const Tensor& t, int r, long long budget);

bool verify_rank_certificate(const Tensor& t, const RankCertificate& c);

struct RankBounds {
    InvariantValue value;
    std::optional<RankCertificate> certificate; // witnesses value.hi
    long long steps = 0;
};

RankBounds rank_bounds(const Tensor& t, long long budget);

// --- subrank ---

struct SubrankDecision {
    Verdict verdict = Verdict::Unknown;
    std::optional<Restriction> certificate;
    long long steps = 0;
};

// Is subrank(T) >= r over C?
SubrankDecision subrank_decision(const Tensor& t, int r, long long budget);

bool verify_subrank_certificate(const Tensor& t, const Restriction& r, int rank);

struct SubrankBounds {
    InvariantValue value;
    std::optional<Restriction> certificate; // witnesses value.lo
    long long steps = 0;
};

SubrankBounds subrank_bounds(const Tensor& t, long long budget);

// --- geometric rank ---

struct GeoRank {
    InvariantValue value;
    long long steps = 0;
};

GeoRank geometric_rank(const Tensor& t, long long budget);

// --- relation ideal ---

struct RelationIdeal {
    ComputeStatus status = ComputeStatus::Complete;
    std::optional<Ideal> ideal; // reduced grevlex basis in the entry variables
    long long steps = 0;
};

// All polynomial relations over Q among the entries, via elimination of the
// field generator from <x_idx - p_idx(a), minpoly(a)>.
RelationIdeal relation_ideal(const Tensor& t, long long budget = kDefaultBudget);

// --- Fekete estimation ---

struct FeketeEntry {
    int n = 1;
    InvariantValue value;
    double root_lo = 0, root_hi = 0; // n-th roots of the bounds
    long long steps = 0;
};

struct FeketeReport {
    InvariantKind kind = InvariantKind::Rank;
    std::vector<FeketeEntry> entries;
    // rank: running min of upper roots (bounds the asymptotic value from
    // above); subrank: running max of lower roots (from below); empty for
    // geometric rank, where neither direction is claimed
    std::vector<double> running_bound;
};

FeketeReport fekete_estimate(InvariantKind kind, const Tensor& t, int n_max, long long budget);

// --- entropy gap ---

struct GapThreshold {
    double entropy = 0;   // h(1/d)
    double threshold = 0; // 2^{h(1/d)}
};

// h(p) = -p log2 p - (1-p) log2 (1-p) evaluated at p = 1/d; double precision
GapThreshold gap_threshold(int d);

} // namespace tenrank

#endif
