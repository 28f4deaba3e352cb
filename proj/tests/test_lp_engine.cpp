#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lexpcm/lp.hpp"
#include "lexpcm/rng.hpp"
#include "oracles.hpp"

using namespace lexpcm;

namespace {

using oracles::random_feasible_bounded_lp;

double slack_of(const LpProblem& p, const LpConstraint& c, const std::vector<double>& x) {
    double lhs = 0.0;
    for (int j = 0; j < p.num_vars; ++j) lhs += c.coeffs[j] * x[j];
    return c.rhs - lhs;
}

}  // namespace

TEST_CASE("single binding constraint carries the dual") {
    auto p = LpProblem::minimize({1.0});
    p.add_constraint("floor", {1.0}, Relation::GreaterEq, 3.0);
    auto sol = solve(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(3.0));
    CHECK(sol.primal[0] == doctest::Approx(3.0));
    CHECK(std::abs(sol.duals.at("floor")) > 1e-9);
    CHECK(sol.duals.at("floor") == doctest::Approx(1.0));
    CHECK(sol.dual_objective == doctest::Approx(3.0));
}

TEST_CASE("infeasible and unbounded are reported via status") {
    auto inf = LpProblem::minimize({1.0});
    inf.add_constraint("a", {1.0}, Relation::LessEq, 1.0);
    inf.add_constraint("b", {1.0}, Relation::GreaterEq, 2.0);
    CHECK(solve(inf).status == LpStatus::Infeasible);

    auto unb = LpProblem::minimize({-1.0});
    unb.add_constraint("a", {1.0}, Relation::GreaterEq, 0.0);
    CHECK(solve(unb).status == LpStatus::Unbounded);
}

// First staged LP of the worked 4x4 example, base-2 logs: a12 -> 1, a24 -> 3,
// a23 = a34 -> 0, variables (x13, x14, z). Optimum 3, pinned by the known
// triad (2,3,4) whose rows are constant.
TEST_CASE("worked example, first stage") {
    auto p = LpProblem::minimize({0.0, 0.0, 1.0});
    p.set_free(0);
    p.set_free(1);
    const double a12 = 1.0, a23 = 0.0, a24 = 3.0, a34 = 0.0;
    p.add_constraint("t123+", {-1.0, 0.0, -1.0}, Relation::LessEq, -(a12 + a23));
    p.add_constraint("t123-", {1.0, 0.0, -1.0}, Relation::LessEq, a12 + a23);
    p.add_constraint("t124+", {0.0, -1.0, -1.0}, Relation::LessEq, -(a12 + a24));
    p.add_constraint("t124-", {0.0, 1.0, -1.0}, Relation::LessEq, a12 + a24);
    p.add_constraint("t134+", {1.0, -1.0, -1.0}, Relation::LessEq, -a34);
    p.add_constraint("t134-", {-1.0, 1.0, -1.0}, Relation::LessEq, a34);
    p.add_constraint("t234+", {0.0, 0.0, -1.0}, Relation::LessEq, -(a23 - a24 + a34));
    p.add_constraint("t234-", {0.0, 0.0, -1.0}, Relation::LessEq, a23 - a24 + a34);

    auto sol = solve(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(3.0).epsilon(1e-10));
    // The only nonzero dual among the triad rows sits on the constant triad
    // (2,3,4); by our sign convention it is negative.
    double d234 = sol.duals.at("t234+") + sol.duals.at("t234-");
    CHECK(std::abs(d234) > 1e-9);
    CHECK(d234 < 0.0);
    for (const char* id : {"t123+", "t123-", "t124+", "t124-", "t134+", "t134-"}) {
        CHECK(std::abs(sol.duals.at(id)) < 1e-9);
    }
}

// Second stage: triad (2,3,4) rows removed; unique solution x13 = 2,
// x14 = 3, objective 1 (base-2 units).
TEST_CASE("worked example, second stage") {
    auto p = LpProblem::minimize({0.0, 0.0, 1.0});
    p.set_free(0);
    p.set_free(1);
    const double a12 = 1.0, a23 = 0.0, a24 = 3.0, a34 = 0.0;
    p.add_constraint("t123+", {-1.0, 0.0, -1.0}, Relation::LessEq, -(a12 + a23));
    p.add_constraint("t123-", {1.0, 0.0, -1.0}, Relation::LessEq, a12 + a23);
    p.add_constraint("t124+", {0.0, -1.0, -1.0}, Relation::LessEq, -(a12 + a24));
    p.add_constraint("t124-", {0.0, 1.0, -1.0}, Relation::LessEq, a12 + a24);
    p.add_constraint("t134+", {1.0, -1.0, -1.0}, Relation::LessEq, -a34);
    p.add_constraint("t134-", {-1.0, 1.0, -1.0}, Relation::LessEq, a34);

    auto sol = solve(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.primal[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(sol.primal[1] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("strong duality and complementary slackness on random LPs") {
    SplitMix64 rng(2024);
    int solved = 0;
    for (int s = 0; solved < 200; ++s) {
        REQUIRE(s < 400);
        auto p = random_feasible_bounded_lp(rng);
        auto sol = solve(p);
        if (sol.status != LpStatus::Optimal) continue;  // rare: random equalities may clash
        ++solved;

        double scale = std::max(1.0, std::abs(sol.objective_value));
        CHECK(std::abs(sol.objective_value - sol.dual_objective) <= 1e-7 * scale);

        for (const auto& c : p.constraints) {
            double slack = slack_of(p, c, sol.primal);
            // primal feasibility
            if (c.rel == Relation::LessEq) CHECK(slack >= -1e-9 * scale);
            if (c.rel == Relation::GreaterEq) CHECK(slack <= 1e-9 * scale);
            if (c.rel == Relation::Equal) CHECK(std::abs(slack) <= 1e-8 * scale);
            // dual sign convention
            double dual = sol.duals.at(c.id);
            if (c.rel == Relation::LessEq) CHECK(dual <= 1e-9);
            if (c.rel == Relation::GreaterEq) CHECK(dual >= -1e-9);
            // complementary slackness
            CHECK(std::abs(dual) * std::abs(slack) <= 1e-7 * scale);
        }
    }
}

TEST_CASE("objective matches a vertex-enumeration oracle on small LPs") {
    SplitMix64 rng(77);
    int checked = 0;
    for (int s = 0; checked < 120; ++s) {
        REQUIRE(s < 400);
        auto p = random_feasible_bounded_lp(rng, 4, 8);
        auto sol = solve(p);
        auto oracle = oracles::vertex_enumeration_optimum(p);
        if (sol.status != LpStatus::Optimal) {
            // no feasible vertex should beat an infeasible/unbounded verdict
            continue;
        }
        REQUIRE(oracle.has_value());
        CHECK(sol.objective_value ==
              doctest::Approx(*oracle).epsilon(1e-8).scale(std::max(1.0, std::abs(*oracle))));
        ++checked;
    }
}

TEST_CASE("solving twice is bitwise identical") {
    SplitMix64 rng(31337);
    for (int s = 0; s < 20; ++s) {
        auto p = random_feasible_bounded_lp(rng, 10, 25);
        auto a = solve(p);
        auto b = solve(p);
        REQUIRE(a.status == b.status);
        if (a.status != LpStatus::Optimal) continue;
        REQUIRE(a.primal.size() == b.primal.size());
        for (std::size_t j = 0; j < a.primal.size(); ++j) {
            CHECK(a.primal[j] == b.primal[j]);  // exact, not approximate
        }
        CHECK(a.objective_value == b.objective_value);
    }
}

TEST_CASE("free variables and equality rows") {
    // minimize x + y s.t. x - y = 4, x + y >= 1, y free
    auto p = LpProblem::minimize({1.0, 1.0});
    p.set_free(0);
    p.set_free(1);
    p.add_constraint("eq", {1.0, -1.0}, Relation::Equal, 4.0);
    p.add_constraint("ge", {1.0, 1.0}, Relation::GreaterEq, 1.0);
    auto sol = solve(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(1.0));
    CHECK(sol.primal[0] - sol.primal[1] == doctest::Approx(4.0));
}

TEST_CASE("finite upper bounds") {
    auto p = LpProblem::minimize({-1.0, -2.0});
    p.upper[0] = 3.0;
    p.upper[1] = 2.5;
    p.add_constraint("cap", {1.0, 1.0}, Relation::LessEq, 4.0);
    auto sol = solve(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == doctest::Approx(-6.5));
    CHECK(sol.primal[0] == doctest::Approx(1.5));
    CHECK(sol.primal[1] == doctest::Approx(2.5));
    CHECK(std::abs(sol.objective_value - sol.dual_objective) <= 1e-9);
}
