#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polylab/lp.hpp"
#include "polylab/rng.hpp"

using namespace polylab;

namespace {

LinearConstraint row(std::vector<long> coeffs, long rhs, Rel rel = Rel::LessEq) {
    LinearConstraint c;
    for (long v : coeffs) c.coeffs.push_back(rat(v));
    c.rhs = rat(rhs);
    c.rel = rel;
    return c;
}

}  // namespace

TEST_CASE("contradictory bounds on one variable") {
    // c1 <= 1, c1 >= 2
    std::vector<LinearConstraint> sys{row({1}, 1), row({-1}, -2)};
    CHECK_FALSE(lp_feasible(sys, 1));
}

TEST_CASE("simplex corner is feasible") {
    // c1 + c2 = 1, c1 >= 0, c2 >= 0
    std::vector<LinearConstraint> sys{row({1, 1}, 1, Rel::Eq), row({-1, 0}, 0),
                                      row({0, -1}, 0)};
    CHECK(lp_feasible(sys, 2));
}

TEST_CASE("square adjacent-vertex antipodality system is infeasible") {
    // Direction c making (0,0) the unique max and (1,0) the unique min over
    // the unit square forces c2 <= -1 and c2 >= 1 at once.
    std::vector<std::vector<long>> verts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto diff = [&](int a, int b) {
        return std::vector<long>{verts[a][0] - verts[b][0], verts[a][1] - verts[b][1]};
    };
    std::vector<LinearConstraint> sys;
    for (int x = 0; x < 4; ++x) {
        if (x != 0) sys.push_back(row(diff(x, 0), -1));  // c.x <= c.u - 1
        if (x != 1) sys.push_back(row(diff(1, x), -1));  // c.x >= c.v + 1
    }
    CHECK_FALSE(lp_feasible(sys, 2));
}

TEST_CASE("equality chain propagates") {
    std::vector<LinearConstraint> base{row({1, -1, 0}, 0, Rel::Eq),
                                       row({0, 1, -1}, 0, Rel::Eq),
                                       row({0, 0, 1}, 5, Rel::Eq)};
    auto bad = base;
    bad.push_back(row({1, 0, 0}, 4));  // x = y = z = 5 but x <= 4
    CHECK_FALSE(lp_feasible(bad, 3));
    auto good = base;
    good.push_back(row({1, 0, 0}, 6));
    CHECK(lp_feasible(good, 3));
}

TEST_CASE("inconsistent equalities reduce to 0 = b") {
    std::vector<LinearConstraint> sys{row({1, 1}, 1, Rel::Eq), row({2, 2}, 3, Rel::Eq)};
    CHECK_FALSE(lp_feasible(sys, 2));
    std::vector<LinearConstraint> ok{row({1, 1}, 1, Rel::Eq), row({2, 2}, 2, Rel::Eq)};
    CHECK(lp_feasible(ok, 2));
}

TEST_CASE("unconstrained variables are fine") {
    std::vector<LinearConstraint> sys{row({1, 0, 0}, 3)};
    CHECK(lp_feasible(sys, 3));
    CHECK(lp_feasible({}, 4));
}

TEST_CASE("randomized: systems built around a known point are feasible") {
    // Constraints generated to hold at a hidden rational point must be
    // accepted; appending a contradictory pair of cuts must be rejected.
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        RngStream rng(2024, trial);
        int nvars = 2 + static_cast<int>(rng.next_below(3));
        std::vector<Rat> hidden;
        for (int v = 0; v < nvars; ++v)
            hidden.push_back(rat(static_cast<long>(rng.next_below(21)) - 10,
                                 1 + static_cast<long>(rng.next_below(4))));
        std::vector<LinearConstraint> sys;
        int ncons = 3 + static_cast<int>(rng.next_below(6));
        for (int c = 0; c < ncons; ++c) {
            LinearConstraint con;
            Rat lhs = rat(0);
            for (int v = 0; v < nvars; ++v) {
                long a = static_cast<long>(rng.next_below(11)) - 5;
                con.coeffs.push_back(rat(a));
                lhs += rat(a) * hidden[v];
            }
            if (rng.next_below(4) == 0) {
                con.rel = Rel::Eq;
                con.rhs = lhs;
            } else {
                con.rhs = lhs + rat(static_cast<long>(rng.next_below(5)));
            }
            sys.push_back(std::move(con));
        }
        CHECK(lp_feasible(sys, nvars));

        auto bad = sys;
        LinearConstraint cut;
        for (int v = 0; v < nvars; ++v) cut.coeffs.push_back(rat(v == 0 ? 1 : 0));
        cut.rhs = hidden[0] - 1;
        bad.push_back(cut);
        LinearConstraint cut2 = cut;
        cut2.coeffs[0] = rat(-1);
        cut2.rhs = -hidden[0];
        bad.push_back(cut2);
        CHECK_FALSE(lp_feasible(bad, nvars));
    }
}
