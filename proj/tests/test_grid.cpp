#include <doctest.h>

#include <cmath>

#include "rdweno/grid.hpp"
#include "rdweno/reactions.hpp"
#include "support.hpp"

using namespace rdweno;

TEST_SUITE("grid_state") {

TEST_CASE("make_grid spacing") {
    CHECK(make_grid(-1, 5, 1200).dx == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(make_grid(-5, 1, 600).dx == doctest::Approx(0.01).epsilon(1e-15));
    const Grid g = make_grid(-1, 5, 1200);
    CHECK(g.n_points() == 1201);
    CHECK(g.x(0) == -1.0);
}

TEST_CASE("make_grid rejects bad domains") {
    CHECK_THROWS_AS((void)make_grid(0, 1, 5), InvalidDomain);
    CHECK_THROWS_AS((void)make_grid(1, 1, 100), InvalidDomain);
    CHECK_THROWS_AS((void)make_grid(2, 1, 100), InvalidDomain);
    CHECK_NOTHROW((void)make_grid(0, 1, 6));
}

TEST_CASE("last node reproduces b within 8 ulps") {
    std::uniform_real_distribution<double> left(-10, 10), width(1e-3, 50);
    std::uniform_int_distribution<int> cells(6, 20000);
    for (int k = 0; k < 500; ++k) {
        const double a = left(test::rng());
        const double b = a + width(test::rng());
        const Grid g = make_grid(a, b, cells(test::rng()));
        CHECK(g.dx > 0);
        CHECK(test::ulp_distance(g.x(g.n_cells), b) <= 8);
    }
}

TEST_CASE("ghost extension of a constant field") {
    StateField f(1, 11, 1.0);
    auto ext = extend_with_ghosts(f, BoundarySpec{{1.0}, {0.0}});
    REQUIRE(ext.size() == 1);
    REQUIRE(ext[0].size() == 11 + 6);
    for (int g = 0; g < 3; ++g) {
        CHECK(ext[0][g] == 1.0);
        CHECK(ext[0][14 + g] == 0.0);
    }

    StateField half(1, 9, 0.5);
    const auto flat = extend_with_ghosts(half, BoundarySpec{{0.5}, {0.5}});
    for (double v : flat[0]) CHECK(v == 0.5);
}

TEST_CASE("ghost values agree with the Fisher profile beyond the domain") {
    const ReactionModel fisher{ModelKind::Fisher, 1.0, 1e4};
    const Grid g = make_grid(-1, 5, 1200);
    const StateField u = sample_exact(fisher, g, 0.0);
    const auto ext = extend_with_ghosts(u, equilibrium_limits(fisher))[0];
    for (int k = 1; k <= 3; ++k) {
        CHECK(std::abs(ext[3 - k] - exact_solution(fisher, g.a - k * g.dx, 0.0)[0]) < 1e-40);
        CHECK(std::abs(ext[3 + g.n_cells + k] - exact_solution(fisher, g.b + k * g.dx, 0.0)[0]) < 1e-40);
    }
}

TEST_CASE("ghost extension round-trips the interior") {
    std::uniform_real_distribution<double> dist(-3, 3);
    StateField f(2, 40);
    for (int s = 0; s < 2; ++s)
        for (int i = 0; i < 40; ++i) f(s, i) = dist(test::rng());
    const auto ext = extend_with_ghosts(f, BoundarySpec{{0.0, 3.0}, {1.0, 0.0}});
    for (int s = 0; s < 2; ++s)
        for (int i = 0; i < 40; ++i) CHECK(ext[s][i + 3] == f(s, i));
}

TEST_CASE("extension shape mismatch") {
    StateField f(2, 10);
    CHECK_THROWS_AS((void)extend_with_ghosts(f, BoundarySpec{{1.0}, {0.0}}), ShapeMismatch);
}

TEST_CASE("apply_dirichlet pins endpoints and is idempotent") {
    StateField f(1, 5);
    f(0, 0) = 0.999;
    f(0, 1) = 0.7;
    f(0, 2) = 0.5;
    f(0, 3) = 0.2;
    f(0, 4) = 0.001;
    const BoundarySpec bc{{1.0}, {0.0}};
    const StateField once = apply_dirichlet(f, bc);
    CHECK(once(0, 0) == 1.0);
    CHECK(once(0, 4) == 0.0);
    CHECK(once(0, 2) == 0.5);
    CHECK(apply_dirichlet(once, bc) == once);
}

TEST_CASE("Lotka-Volterra boundary pinning") {
    const ReactionModel lv{ModelKind::LotkaVolterra, 1.0, 7000};
    const BoundarySpec bc = equilibrium_limits(lv);
    const StateField f = apply_dirichlet(StateField(2, 8, 0.5), bc);
    CHECK(f(0, 0) == 0.0);
    CHECK(f(0, 7) == 1.0);
    CHECK(f(1, 0) == 3.0);
    CHECK(f(1, 7) == 0.0);
}

TEST_CASE("state field blow-up detection") {
    StateField f(1, 4, 0.5);
    CHECK(f.all_bounded(1e10));
    f(0, 2) = std::nan("");
    CHECK_FALSE(f.all_bounded(1e10));
    f(0, 2) = 2e10;
    CHECK_FALSE(f.all_bounded(1e10));
}

}
