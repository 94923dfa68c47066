// Buchberger's algorithm and the ideal-theoretic queries built on it:
// normal forms, variety dimension, C-solvability, elimination.
//
// Budgets are counted in S-polynomial reductions so results are
// machine-independent; exhausting a budget yields an explicit Unknown with
// the partial basis attached, never a silent wrong answer.
#ifndef TENRANK_GROEBNER_HPP
#define TENRANK_GROEBNER_HPP

#include <optional>

#include "tenrank/poly.hpp"

namespace tenrank {

enum class ComputeStatus { Complete, BudgetExhausted };

struct GroebnerBasis {
    Ideal ideal;
    MonomialOrder order;
    std::vector<Polynomial> basis; // monic; sorted by leading monomial ascending when reduced
    bool reduced = false;
};

struct GroebnerResult {
    ComputeStatus status = ComputeStatus::Complete;
    GroebnerBasis basis; // the partial basis when exhausted (reduced == false)
    long long steps = 0; // S-polynomial reductions performed
};

// Buchberger with the normal selection strategy and both skip criteria.
// Deterministic for fixed input and order.
GroebnerResult groebner(const Ideal& ideal, const MonomialOrder& order, long long budget);

// Unique remainder of p modulo G (full reduction).
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& g);

// Krull dimension of the affine variety V(I) over C, computed as the largest
// variable subset independent modulo the leading-term ideal. Requires a
// reduced basis. nullopt encodes the empty variety (1 in I).
std::optional<int> ideal_dimension(const GroebnerBasis& g);

enum class Verdict { Feasible, Infeasible, Unknown };

const char* verdict_name(Verdict v);

struct FeasibilityResult {
    Verdict verdict = Verdict::Unknown;
    long long steps = 0;
};

// Does V(I) have a point over C?  Infeasible iff the reduced basis is {1}.
FeasibilityResult is_feasible(const Ideal& ideal, long long budget);

struct EliminationResult {
    ComputeStatus status = ComputeStatus::Complete;
    std::optional<Ideal> ideal; // I cap Q[kept vars]; generators form the
                                // reduced grevlex Groebner basis of that ideal
    long long steps = 0;
};

// Contraction of I to the subring without the dropped variables, via a
// two-block order that places the dropped variables first.
EliminationResult eliminate(const Ideal& ideal, const std::vector<std::string>& drop, long long budget);

} // namespace tenrank

#endif
