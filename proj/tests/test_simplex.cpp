#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "windband/simplex.hpp"
#include "windband/util.hpp"

using namespace windband::lp;

TEST_CASE("box-constrained maximum") {
    LinearProgram p;
    const int a = p.add_var(-1.0, 0.0, 1.0);
    const int b = p.add_var(-1.0, 0.0, 1.0);
    Row r;
    r.terms = {{a, 1.0}, {b, 1.0}};
    r.rhs = 1.0;
    p.add_row(r);

    const LpResult res = solve_lp(p);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.objective == doctest::Approx(-1.0));
    CHECK(res.solution[a] + res.solution[b] == doctest::Approx(1.0));
    // strong duality: c.x == -mu.b for x >= 0 problems
    CHECK(res.row_duals[0] == doctest::Approx(1.0));
}

TEST_CASE("phase 1 finds a feasible start") {
    LinearProgram p;
    const int x0 = p.add_var(0.5, 0.0, kInf);
    const int x1 = p.add_var(0.5, 0.0, kInf);
    Row r;
    r.terms = {{x0, -0.5}, {x1, -0.5}};
    r.rhs = -0.2; // x0 + x1 >= 0.4
    p.add_row(r);

    const LpResult res = solve_lp(p);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.objective == doctest::Approx(0.2));
    CHECK(res.solution[x0] + res.solution[x1] == doctest::Approx(0.4));
    CHECK(-res.row_duals[0] * p.rows[0].rhs == doctest::Approx(res.objective));
}

TEST_CASE("bound flip without a basis change") {
    LinearProgram p;
    const int x = p.add_var(-2.0, 0.0, 3.0); // no rows at all
    const LpResult res = solve_lp(p);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.solution[x] == doctest::Approx(3.0));
    CHECK(res.objective == doctest::Approx(-6.0));
}

TEST_CASE("infeasible bounds are detected") {
    LinearProgram p;
    const int x = p.add_var(1.0, 0.0, 1.0);
    Row r;
    r.terms = {{x, -1.0}};
    r.rhs = -2.0; // x >= 2 against an upper bound of 1
    p.add_row(r);
    CHECK(solve_lp(p).status == LpStatus::infeasible);
}

TEST_CASE("unbounded direction is reported") {
    LinearProgram p;
    const int x = p.add_var(-1.0, 0.0, kInf);
    Row r;
    r.terms = {{x, -1.0}};
    r.rhs = 0.0;
    p.add_row(r);
    CHECK(solve_lp(p).status == LpStatus::unbounded);
}

TEST_CASE("degenerate rows do not cycle") {
    LinearProgram p;
    const int x = p.add_var(1.0, 0.0, kInf);
    const int y = p.add_var(1.0, 0.0, kInf);
    for (int i = 0; i < 6; ++i) {
        Row r;
        r.terms = {{x, -1.0}, {y, -1.0}};
        r.rhs = -1.0;
        p.add_row(r); // six copies of x + y >= 1
    }
    const LpResult res = solve_lp(p);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.objective == doctest::Approx(1.0));
}

TEST_CASE("diet-style LP with equality-tight rows") {
    // min 2a + 3b  s.t.  a + b >= 2,  a - b <= 1,  a,b in [0, 5]
    LinearProgram p;
    const int a = p.add_var(2.0, 0.0, 5.0);
    const int b = p.add_var(3.0, 0.0, 5.0);
    Row r1;
    r1.terms = {{a, -1.0}, {b, -1.0}};
    r1.rhs = -2.0;
    p.add_row(r1);
    Row r2;
    r2.terms = {{a, 1.0}, {b, -1.0}};
    r2.rhs = 1.0;
    p.add_row(r2);

    const LpResult res = solve_lp(p);
    REQUIRE(res.status == LpStatus::optimal);
    // best: a = 1.5, b = 0.5 -> 4.5
    CHECK(res.objective == doctest::Approx(4.5));
    CHECK(res.solution[a] == doctest::Approx(1.5));
    CHECK(res.solution[b] == doctest::Approx(0.5));
}

TEST_CASE("random LPs satisfy weak duality against their own duals") {
    windband::SplitMix64 rng(97);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(4));
        const int m = 1 + static_cast<int>(rng.next_below(5));
        LinearProgram p;
        for (int j = 0; j < n; ++j)
            p.add_var(rng.next_double() * 2.0 - 0.5, 0.0, 2.0);
        for (int i = 0; i < m; ++i) {
            Row r;
            for (int j = 0; j < n; ++j)
                r.terms.push_back({j, rng.next_double() * 2.0 - 1.0});
            r.rhs = rng.next_double() * 2.0 - 0.5;
            p.add_row(r);
        }
        const LpResult res = solve_lp(p);
        if (res.status != LpStatus::optimal) continue;
        // primal feasibility
        for (const Row& row : p.rows) {
            double lhs = 0.0;
            for (const Term& t : row.terms) lhs += t.coef * res.solution[t.col];
            CHECK(lhs <= row.rhs + 1e-7);
        }
        for (int j = 0; j < n; ++j) {
            CHECK(res.solution[j] >= -1e-9);
            CHECK(res.solution[j] <= 2.0 + 1e-9);
        }
        // dual feasibility of the reported multipliers: c + A^T mu >= 0
        // wherever x sits strictly inside its box
        for (int j = 0; j < n; ++j) {
            double reduced = p.cost[j];
            for (std::size_t i = 0; i < p.rows.size(); ++i)
                for (const Term& t : p.rows[i].terms)
                    if (t.col == j) reduced += res.row_duals[i] * t.coef;
            if (res.solution[j] > 1e-7 && res.solution[j] < 2.0 - 1e-7)
                CHECK(std::abs(reduced) < 1e-6);
            if (res.solution[j] <= 1e-7) CHECK(reduced >= -1e-6);
            if (res.solution[j] >= 2.0 - 1e-7) CHECK(reduced <= 1e-6);
        }
    }
}
