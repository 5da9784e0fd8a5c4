#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "rplan/lp.hpp"
#include "rplan/lp_oracle.hpp"
#include "rplan/mps.hpp"
#include "rplan/simplex.hpp"

using namespace rplan;

namespace {

LinearProgram one_var_bounded() {
    LinearProgram lp;
    lp.add_variable("x", 0.0, kInf, -1.0);
    lp.add_row("cap", RowSense::LE, 3.0, {{0, 1.0}});
    return lp;
}

// Deterministic generator of small random programs with a mix of
// feasible, infeasible and unbounded instances.
LinearProgram random_lp(std::mt19937_64& rng, int max_vars, int max_rows) {
    auto ri = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int n = ri(1, max_vars);
    int m = ri(1, max_rows);
    LinearProgram lp;
    for (int j = 0; j < n; ++j) {
        int kind = ri(0, 9);
        double lb = 0.0, ub = kInf;
        if (kind < 5) {
            lb = 0.0;
            ub = ri(1, 20);
        } else if (kind < 7) {
            lb = ri(-10, 0);
            ub = lb + ri(1, 15);
        } else if (kind < 9) {
            lb = 0.0;
            ub = kInf;
        } else {
            lb = -kInf;
            ub = kInf;
        }
        double c = ri(-9, 9);
        lp.add_variable("x" + std::to_string(j), lb, ub, c);
    }
    for (int i = 0; i < m; ++i) {
        std::vector<SparseEntry> ent;
        for (int j = 0; j < n; ++j) {
            if (ri(0, 2) == 0) continue;
            int v = ri(-6, 6);
            if (v != 0) ent.push_back({j, static_cast<double>(v)});
        }
        if (ent.empty()) ent.push_back({ri(0, n - 1), 1.0});
        RowSense s = ri(0, 5) < 3 ? RowSense::LE : (ri(0, 1) ? RowSense::GE : RowSense::EQ);
        lp.add_row("r" + std::to_string(i), s, ri(-12, 20), std::move(ent));
    }
    return lp;
}

} // namespace

TEST_CASE("bounded single variable") {
    auto lp = one_var_bounded();
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal[0] == doctest::Approx(3.0));
    CHECK(sol.objective == doctest::Approx(-3.0));
}

TEST_CASE("missing upper bound is unbounded") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, kInf, -1.0);
    auto sol = solve_lp(lp);
    CHECK(sol.status == SolveStatus::Unbounded);
}

TEST_CASE("oracle matches hand results on tiny programs") {
    {
        auto sol = vertex_enumeration_oracle(one_var_bounded());
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.objective == doctest::Approx(-3.0));
    }
    {
        LinearProgram lp;
        lp.add_variable("x", 0.0, kInf, -1.0);
        CHECK(vertex_enumeration_oracle(lp).status == SolveStatus::Unbounded);
    }
    {
        LinearProgram lp;
        lp.add_variable("x", 0.0, kInf, 1.0);
        lp.add_row("neg", RowSense::LE, -1.0, {{0, 1.0}});
        CHECK(vertex_enumeration_oracle(lp).status == SolveStatus::Infeasible);
    }
}

TEST_CASE("oracle refuses oversized programs") {
    LinearProgram lp;
    for (int j = 0; j < 11; ++j) lp.add_variable("x" + std::to_string(j), 0, 1, 1.0);
    CHECK_THROWS_AS(vertex_enumeration_oracle(lp), TooLarge);
}

TEST_CASE("assignment-style program agrees in both directions") {
    // 6 vars: match 3 supplies to 3 demands at differing costs
    LinearProgram lp;
    const double cost[6] = {4, 1, 3, 2, 6, 5};
    for (int j = 0; j < 6; ++j) lp.add_variable("f" + std::to_string(j), 0.0, kInf, cost[j]);
    lp.add_row("s0", RowSense::EQ, 1.0, {{0, 1.0}, {1, 1.0}});
    lp.add_row("s1", RowSense::EQ, 1.0, {{2, 1.0}, {3, 1.0}});
    lp.add_row("s2", RowSense::EQ, 1.0, {{4, 1.0}, {5, 1.0}});
    lp.add_row("d0", RowSense::LE, 2.0, {{0, 1.0}, {2, 1.0}, {4, 1.0}});
    lp.add_row("d1", RowSense::LE, 2.0, {{1, 1.0}, {3, 1.0}, {5, 1.0}});
    auto a = solve_lp(lp);
    auto b = vertex_enumeration_oracle(lp);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
    // cheap picks 1+2+5 overload d1, shifting one unit costs +1
    CHECK(a.objective == doctest::Approx(9.0));
}

TEST_CASE("random programs match the enumeration oracle") {
    std::mt19937_64 rng(20250810ULL);
    int optimal = 0, infeasible = 0, unbounded = 0;
    for (int t = 0; t < 300; ++t) {
        auto lp = random_lp(rng, 5, 8);
        Solution fast, ref;
        REQUIRE_NOTHROW(fast = solve_lp(lp));
        REQUIRE_NOTHROW(ref = vertex_enumeration_oracle(lp));
        INFO("case ", t, " fast=", to_string(fast.status), " ref=", to_string(ref.status));
        REQUIRE(fast.status == ref.status);
        if (fast.status == SolveStatus::Optimal) {
            ++optimal;
            CHECK(std::abs(fast.objective - ref.objective) <=
                  1e-8 * (1.0 + std::abs(ref.objective)));
            CHECK(duality_gap(lp, fast) <= 1e-7 * (1.0 + std::abs(fast.objective)));
            double bnorm = 0.0;
            for (double v : lp.rhs()) bnorm = std::max(bnorm, std::abs(v));
            CHECK(primal_infeasibility(lp, fast.primal) <= 1e-7 * (1.0 + bnorm));
        } else if (fast.status == SolveStatus::Infeasible) {
            ++infeasible;
        } else {
            ++unbounded;
        }
    }
    // the generator must exercise all three statuses
    CHECK(optimal > 50);
    CHECK(infeasible > 10);
    CHECK(unbounded > 10);
}

TEST_CASE("objective scaling leaves the argmin unchanged") {
    std::mt19937_64 rng(99ULL);
    for (int t = 0; t < 40; ++t) {
        auto lp = random_lp(rng, 4, 6);
        auto base = solve_lp(lp);
        if (base.status != SolveStatus::Optimal) continue;
        LinearProgram scaled = lp;
        const double lambda = 3.5;
        for (int j = 0; j < scaled.num_vars(); ++j) scaled.cost(j) *= lambda;
        auto s2 = solve_lp(scaled);
        REQUIRE(s2.status == SolveStatus::Optimal);
        CHECK(std::abs(s2.objective - lambda * base.objective) <=
              1e-8 * (1.0 + std::abs(lambda * base.objective)));
    }
}

TEST_CASE("adding a constraint never decreases the minimum") {
    std::mt19937_64 rng(7ULL);
    for (int t = 0; t < 60; ++t) {
        auto lp = random_lp(rng, 4, 5);
        auto base = solve_lp(lp);
        if (base.status != SolveStatus::Optimal) continue;
        LinearProgram tight = lp;
        std::vector<SparseEntry> ent;
        for (int j = 0; j < tight.num_vars(); ++j)
            if (rng() % 2) ent.push_back({j, static_cast<double>(1 + rng() % 3)});
        if (ent.empty()) ent.push_back({0, 1.0});
        tight.add_row("extra", RowSense::LE, static_cast<double>(rng() % 10), std::move(ent));
        auto s2 = solve_lp(tight);
        if (s2.status == SolveStatus::Optimal)
            CHECK(s2.objective >= base.objective - 1e-8 * (1.0 + std::abs(base.objective)));
    }
}

TEST_CASE("identical input reproduces identical output") {
    std::mt19937_64 rng(5150ULL);
    auto lp = random_lp(rng, 5, 8);
    auto a = solve_lp(lp);
    auto b = solve_lp(lp);
    REQUIRE(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    if (a.status == SolveStatus::Optimal) {
        CHECK(std::memcmp(a.primal.data(), b.primal.data(),
                          a.primal.size() * sizeof(double)) == 0);
        CHECK(a.basis.statuses == b.basis.statuses);
    }
}

TEST_CASE("warm start reaches the same optimum") {
    std::mt19937_64 rng(31337ULL);
    int used = 0;
    for (int t = 0; t < 40; ++t) {
        auto lp = random_lp(rng, 5, 8);
        auto cold = solve_lp(lp);
        if (cold.status != SolveStatus::Optimal) continue;
        LinearProgram perturbed = lp;
        for (int j = 0; j < perturbed.num_vars(); ++j)
            perturbed.cost(j) *= 1.01;
        auto ref = solve_lp(perturbed);
        auto warm = solve_lp(perturbed, {}, cold.basis);
        REQUIRE(warm.status == ref.status);
        if (ref.status == SolveStatus::Optimal)
            CHECK(std::abs(warm.objective - ref.objective) <=
                  1e-8 * (1.0 + std::abs(ref.objective)));
        ++used;
    }
    CHECK(used > 5);
}

TEST_CASE("duality gap operations") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, kInf, 1.0);
    lp.add_row("floor", RowSense::GE, 2.0, {{0, 1.0}});
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(duality_gap(lp, sol) == doctest::Approx(0.0).epsilon(1e-12));

    Solution bad;
    bad.status = SolveStatus::Infeasible;
    CHECK_THROWS_AS(duality_gap(lp, bad), StatusError);
}

TEST_CASE("mps rendering round structure") {
    auto lp = one_var_bounded();
    std::string mps = to_mps(lp);
    CHECK(mps.find("NAME") == 0);
    CHECK(mps.find("ROWS") != std::string::npos);
    CHECK(mps.find(" L  R0000001") != std::string::npos);
    CHECK(mps.find("COLUMNS") != std::string::npos);
    CHECK(mps.find("ENDATA") != std::string::npos);
    // deterministic byte stream
    CHECK(to_mps(lp) == mps);
}

TEST_CASE("acceptance-scale oracle sweep stays fast") {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1234ULL);
    for (int t = 0; t < 100; ++t) {
        auto lp = random_lp(rng, 6, 12);
        auto fast = solve_lp(lp);
        auto ref = vertex_enumeration_oracle(lp);
        REQUIRE(fast.status == ref.status);
        if (fast.status == SolveStatus::Optimal)
            CHECK(std::abs(fast.objective - ref.objective) <=
                  1e-8 * (1.0 + std::abs(ref.objective)));
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(dt < 10.0);
}
