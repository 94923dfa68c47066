#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tenrank/groebner.hpp"

using namespace tenrank;

namespace {

Polynomial c(const RingPtr& r, long v) { return Polynomial::constant(r, Rational(v)); }

std::vector<std::string> basis_strings(const GroebnerBasis& g) {
    std::vector<std::string> out;
    for (const auto& b : g.basis) out.push_back(b.to_string(g.order));
    return out;
}

} // namespace

TEST_CASE("monomial orders") {
    auto R = PolyRing::create({"x", "y", "z"});
    Monomial x{{1, 0, 0}}, y{{0, 1, 0}}, z{{0, 0, 1}}, xy{{1, 1, 0}}, z2{{0, 0, 2}};
    auto grevlex = MonomialOrder::grevlex();
    CHECK(grevlex.compare(x, y) > 0);
    CHECK(grevlex.compare(y, z) > 0);
    CHECK(grevlex.compare(xy, z2) > 0); // same degree, reverse lexicographic
    auto lex = MonomialOrder::lex();
    CHECK(lex.compare(x, z2) > 0); // lex ignores total degree
    auto block = MonomialOrder::block(1);
    CHECK(block.compare(x, z2) > 0); // x-block dominates
    CHECK(block.compare(y, z) > 0);
}

TEST_CASE("polynomial building and printing") {
    auto R = PolyRing::create({"x11", "x12", "x21", "x22"});
    auto x11 = Polynomial::variable(R, 0), x12 = Polynomial::variable(R, 1);
    auto x21 = Polynomial::variable(R, 2), x22 = Polynomial::variable(R, 3);
    auto det = x11 * x22 - x12 * x21;
    // under grevlex the x12*x21 term leads (it avoids the smallest variable)
    CHECK(det.to_string() == "-x12*x21 + x11*x22");
    CHECK(det.to_string(MonomialOrder::lex()) == "x11*x22 - x12*x21");
    CHECK((det - det).to_string() == "0");
    CHECK((det - det).is_zero());
}

TEST_CASE("groebner: already reduced principal ideal") {
    auto R = PolyRing::create({"x"});
    auto x = Polynomial::variable(R, 0);
    auto r = groebner(Ideal::make(R, {x - c(R, 1)}), MonomialOrder::grevlex(), 1000);
    REQUIRE(r.status == ComputeStatus::Complete);
    CHECK(basis_strings(r.basis) == std::vector<std::string>{"x - 1"});
}

TEST_CASE("groebner: <x^2, x-y> under grevlex") {
    auto R = PolyRing::create({"x", "y"});
    auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);
    auto r = groebner(Ideal::make(R, {x * x, x - y}), MonomialOrder::grevlex(), 1000);
    REQUIRE(r.status == ComputeStatus::Complete);
    CHECK(basis_strings(r.basis) == std::vector<std::string>{"x - y", "y^2"});
}

TEST_CASE("groebner: <x^2-1, xy-1> under lex") {
    auto R = PolyRing::create({"x", "y"});
    auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);
    auto r = groebner(Ideal::make(R, {x * x - c(R, 1), x * y - c(R, 1)}), MonomialOrder::lex(), 1000);
    REQUIRE(r.status == ComputeStatus::Complete);
    CHECK(basis_strings(r.basis) == std::vector<std::string>{"y^2 - 1", "x - y"});
}

TEST_CASE("groebner: budget exhaustion reports Unknown with a partial basis") {
    auto R = PolyRing::create({"x", "y", "z"});
    auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1), z = Polynomial::variable(R, 2);
    // cyclic-3: needs several S-polynomial reductions
    auto g1 = x + y + z;
    auto g2 = x * y + y * z + z * x;
    auto g3 = x * y * z - c(R, 1);
    auto tiny = groebner(Ideal::make(R, {g1, g2, g3}), MonomialOrder::grevlex(), 1);
    CHECK(tiny.status == ComputeStatus::BudgetExhausted);
    CHECK(!tiny.basis.reduced);
    CHECK(tiny.basis.basis.size() >= 3);
    auto full = groebner(Ideal::make(R, {g1, g2, g3}), MonomialOrder::grevlex(), 100000);
    CHECK(full.status == ComputeStatus::Complete);
    CHECK(full.steps > 1);
}

TEST_CASE("groebner determinism and uniqueness under generator rewrites") {
    auto R = PolyRing::create({"x", "y", "z"});
    auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1), z = Polynomial::variable(R, 2);
    std::vector<Polynomial> gens{x * x - y, y * y - z, x * y - z * z};
    auto base = groebner(Ideal::make(R, gens), MonomialOrder::grevlex(), 100000);
    REQUIRE(base.status == ComputeStatus::Complete);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, 2), coef(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        auto rewritten = gens;
        // add random multiples of one generator to another, then shuffle
        for (int step = 0; step < 4; ++step) {
            int i = pick(rng), j = pick(rng);
            if (i == j) continue;
            auto mult = c(R, coef(rng)) + c(R, coef(rng)) * Polynomial::variable(R, pick(rng));
            rewritten[static_cast<std::size_t>(i)] += mult * rewritten[static_cast<std::size_t>(j)];
        }
        std::shuffle(rewritten.begin(), rewritten.end(), rng);
        auto again = groebner(Ideal::make(R, rewritten), MonomialOrder::grevlex(), 100000);
        REQUIRE(again.status == ComputeStatus::Complete);
        CHECK(basis_strings(again.basis) == basis_strings(base.basis));
    }
}

TEST_CASE("normal_form examples and invariance property") {
    auto R = PolyRing::create({"x", "y"});
    auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);

    auto g1 = groebner(Ideal::make(R, {x * x - c(R, 2)}), MonomialOrder::grevlex(), 1000);
    CHECK(normal_form(x * x, g1.basis).to_string() == "2");

    auto g2 = groebner(Ideal::make(R, {x - y, y * y}), MonomialOrder::grevlex(), 1000);
    CHECK(normal_form(x - y, g2.basis).is_zero());
    CHECK(normal_form(y * y * y, g2.basis).is_zero());

    // normal_form(p + q*g) == normal_form(p) for generators g and random q
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-4, 4), var(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p = c(R, coef(rng));
        for (int t = 0; t < 3; ++t)
            p += c(R, coef(rng)) * Polynomial::variable(R, var(rng)) * Polynomial::variable(R, var(rng));
        Polynomial q = c(R, coef(rng)) + c(R, coef(rng)) * Polynomial::variable(R, var(rng));
        for (const auto& g : g2.basis.basis)
            CHECK(normal_form(p + q * g, g2.basis) == normal_form(p, g2.basis));
    }
}

TEST_CASE("ideal_dimension examples") {
    auto R2 = PolyRing::create({"x", "y"});
    auto x = Polynomial::variable(R2, 0), y = Polynomial::variable(R2, 1);

    auto zero = groebner(Ideal::make(R2, {Polynomial::zero(R2)}), MonomialOrder::grevlex(), 100);
    CHECK(ideal_dimension(zero.basis) == 2);

    auto xy = groebner(Ideal::make(R2, {x * y}), MonomialOrder::grevlex(), 100);
    CHECK(ideal_dimension(xy.basis) == 1);

    auto unit = groebner(Ideal::make(R2, {c(R2, 1)}), MonomialOrder::grevlex(), 100);
    CHECK(!ideal_dimension(unit.basis).has_value());
}

TEST_CASE("ideal_dimension agrees with the elimination-based oracle on monomial ideals") {
    // oracle: dim = max |S| with I cap Q[S] = 0, each membership decided by
    // eliminating the complement (an independent engine path)
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<int> nv(2, 4), ng(1, 4), dg(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
        int n = nv(rng);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
        auto R = PolyRing::create(names);
        std::vector<Polynomial> gens;
        int k = ng(rng);
        for (int g = 0; g < k; ++g) {
            Monomial m = Monomial::one(n);
            int deg = dg(rng);
            std::uniform_int_distribution<int> var(0, n - 1);
            for (int t = 0; t < deg; ++t) m.e[static_cast<std::size_t>(var(rng))] += 1;
            gens.push_back(Polynomial::from_terms(R, {{m, Rational(1)}}));
        }
        auto gb = groebner(Ideal::make(R, gens), MonomialOrder::grevlex(), 100000);
        REQUIRE(gb.status == ComputeStatus::Complete);
        auto dim = ideal_dimension(gb.basis);
        REQUIRE(dim.has_value());

        int oracle = -1;
        for (unsigned s = 0; s < (1u << n); ++s) {
            std::vector<std::string> drop;
            for (int v = 0; v < n; ++v)
                if (!(s & (1u << v))) drop.push_back(names[static_cast<std::size_t>(v)]);
            auto contraction = eliminate(Ideal::make(R, gens), drop, 100000);
            REQUIRE(contraction.status == ComputeStatus::Complete);
            bool zero_ideal = true;
            for (const auto& p : contraction.ideal->generators)
                if (!p.is_zero()) zero_ideal = false;
            if (zero_ideal) oracle = std::max(oracle, __builtin_popcount(s));
        }
        CHECK(*dim == oracle);
    }
}

TEST_CASE("is_feasible examples") {
    auto R1 = PolyRing::create({"x"});
    auto x = Polynomial::variable(R1, 0);
    CHECK(is_feasible(Ideal::make(R1, {x, x - c(R1, 1)}), 1000).verdict == Verdict::Infeasible);
    CHECK(is_feasible(Ideal::make(R1, {x * x + c(R1, 1)}), 1000).verdict == Verdict::Feasible);

    auto R2 = PolyRing::create({"x", "y"});
    auto x2 = Polynomial::variable(R2, 0), y2 = Polynomial::variable(R2, 1);
    CHECK(is_feasible(Ideal::make(R2, {x2 * x2 - c(R2, 2), y2 - x2}), 1000).verdict == Verdict::Feasible);
}

TEST_CASE("is_feasible agrees with the numeric root-sampling oracle") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> nv(1, 3), coef(-3, 3);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        int n = nv(rng);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("z" + std::to_string(i));
        auto R = PolyRing::create(names);

        std::vector<Polynomial> sys;
        std::vector<std::vector<oracles::Cx>> seeds;
        if (trial % 4 == 3) {
            // crafted infeasible pair: f and f + 1 share no zero
            Polynomial f = Polynomial::constant(R, Rational(coef(rng)));
            for (int v = 0; v < n; ++v) {
                auto zv = Polynomial::variable(R, v);
                f += Polynomial::constant(R, Rational(coef(rng))) * zv * zv +
                     Polynomial::constant(R, Rational(coef(rng))) * zv;
            }
            sys.push_back(f);
            sys.push_back(f + Polynomial::constant(R, Rational(1)));
            while (sys.size() < static_cast<std::size_t>(n)) {
                Polynomial g = Polynomial::constant(R, Rational(coef(rng)));
                for (int v = 0; v < n; ++v)
                    g += Polynomial::constant(R, Rational(coef(rng))) * Polynomial::variable(R, v);
                sys.push_back(g);
            }
        } else {
            // planted root: random quadrics adjusted to vanish at an integer point
            std::vector<Rational> point;
            std::vector<oracles::Cx> seed;
            for (int v = 0; v < n; ++v) {
                int value = coef(rng);
                point.emplace_back(value);
                seed.emplace_back(static_cast<double>(value), 0.0);
            }
            for (int eq = 0; eq < n; ++eq) {
                Polynomial f = Polynomial::zero(R);
                for (int v = 0; v < n; ++v) {
                    auto zv = Polynomial::variable(R, v);
                    f += Polynomial::constant(R, Rational(coef(rng))) * zv * zv +
                         Polynomial::constant(R, Rational(coef(rng))) * zv;
                }
                // shift the constant so that f(point) = 0
                std::vector<AlgebraicNumber> pt;
                for (const auto& q : point)
                    pt.push_back(AlgebraicNumber::from_rational(NumberField::rationals(), q));
                AlgebraicNumber val = f.evaluate(pt);
                f -= Polynomial::constant(R, val.rational_value());
                sys.push_back(f);
            }
            seeds.push_back(seed);
        }

        auto verdict = is_feasible(Ideal::make(R, sys), 200000).verdict;
        if (verdict == Verdict::Unknown) continue; // budget ran out: nothing to compare
        bool numeric = oracles::sample_for_root(sys, static_cast<std::size_t>(n), seeds,
                                                1000 + static_cast<unsigned>(trial));
        CHECK((verdict == Verdict::Feasible) == numeric);
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("eliminate examples") {
    auto R = PolyRing::create({"x", "A"});
    auto x = Polynomial::variable(R, 0), a = Polynomial::variable(R, 1);

    auto r1 = eliminate(Ideal::make(R, {x - a, a * a - c(R, 2)}), {"A"}, 1000);
    REQUIRE(r1.status == ComputeStatus::Complete);
    REQUIRE(r1.ideal->generators.size() == 1);
    CHECK(r1.ideal->generators[0].to_string() == "x^2 - 2");
    CHECK(r1.ideal->ring->nvars() == 1);

    auto r2 = eliminate(Ideal::make(R, {x - c(R, 2) * a, a - c(R, 1)}), {"A"}, 1000);
    REQUIRE(r2.status == ComputeStatus::Complete);
    REQUIRE(r2.ideal->generators.size() == 1);
    CHECK(r2.ideal->generators[0].to_string() == "x - 2");

    // eliminating nothing returns the Groebner basis of the input
    auto r3 = eliminate(Ideal::make(R, {x - a, a * a - c(R, 2)}), {}, 1000);
    REQUIRE(r3.status == ComputeStatus::Complete);
    auto direct = groebner(Ideal::make(R, {x - a, a * a - c(R, 2)}), MonomialOrder::grevlex(), 1000);
    std::vector<std::string> got, want;
    for (const auto& p : r3.ideal->generators) got.push_back(p.to_string());
    for (const auto& p : direct.basis.basis) want.push_back(p.to_string());
    CHECK(got == want);
}
