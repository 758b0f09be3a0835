#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <sstream>

#include "hoadi/grid.hpp"
#include "hoadi/grid_io.hpp"

using namespace hoadi;

namespace {
Domain paper_domain() { return Domain{-5.0, 1.5, 0.05, 2.5, 1.0}; }
}

TEST_SUITE("grid") {

TEST_CASE("grid_from_level node counts and widths") {
    const UniformGrid g3 = grid_from_level(paper_domain(), {3, 3});
    CHECK(g3.m() == 9);
    CHECK(g3.n() == 9);
    CHECK(g3.dx() == doctest::Approx(0.8125).epsilon(1e-15));
    CHECK(g3.dy() == doctest::Approx(0.30625).epsilon(1e-15));

    const UniformGrid g0 = grid_from_level(paper_domain(), {0, 0});
    CHECK(g0.m() == 2);
    CHECK(g0.dx() == doctest::Approx(6.5).epsilon(1e-15));

    const UniformGrid g8 = grid_from_level(paper_domain(), {8, 8});
    CHECK(g8.m() == 257);
    CHECK(g8.n() == 257);

    CHECK_THROWS_AS(grid_from_level(paper_domain(), {-1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(grid_from_level(paper_domain(), {40, 3}), std::invalid_argument);
}

TEST_CASE("node coordinates are affine in the index") {
    const UniformGrid g = grid_from_level(paper_domain(), {5, 4});
    for (int i = 0; i + 1 < g.m(); ++i)
        CHECK(g.x(i + 1) - g.x(i) == doctest::Approx(g.dx()).epsilon(4e-16));
    for (int j = 0; j + 1 < g.n(); ++j)
        CHECK(g.y(j + 1) - g.y(j) == doctest::Approx(g.dy()).epsilon(4e-16));
}

TEST_CASE("one refinement doubles the cells and shares nodes bitwise") {
    const UniformGrid coarse = grid_from_level(paper_domain(), {4, 4});
    const UniformGrid fine = grid_from_level(paper_domain(), {5, 4});
    CHECK(fine.m() - 1 == 2 * (coarse.m() - 1));
    CHECK(fine.dx() == coarse.dx() / 2.0);
    for (int i = 0; i < coarse.m(); ++i) CHECK(fine.x(2 * i) == coarse.x(i));
}

TEST_CASE("timegrid_for examples") {
    const TimeGrid a = timegrid_for(std::pow(2.0, -4), 1.0, 5.0);
    CHECK(a.dt == doctest::Approx(5.0 / 256.0).epsilon(1e-15));
    CHECK(a.steps == 52);
    CHECK(a.has_short_final_step());
    CHECK(a.last_dt == doctest::Approx(1.0 / 256.0).epsilon(1e-12));
    CHECK(a.horizon() == doctest::Approx(1.0).epsilon(1e-15));

    const TimeGrid b = timegrid_for(1.0, 5.0, 5.0);
    CHECK(b.steps == 1);
    CHECK(b.dt == 5.0);
    CHECK_FALSE(b.has_short_final_step());

    const TimeGrid c = timegrid_for(std::pow(2.0, -8), 1.0, 5.0);
    CHECK(c.steps == 13108);
    CHECK(c.horizon() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eval_region_mask selects the near-strike window") {
    OptionSpec spec;
    ModelParams params;
    const UniformGrid g = grid_from_level(paper_domain(), {8, 8});
    const RegionMask m = eval_region_mask(g, spec, params);
    CHECK(m.count() > 0);
    for (int i = m.i_lo; i <= m.i_hi; ++i) {
        CHECK(g.x(i) >= std::log(0.5) - 1e-12);
        CHECK(g.x(i) <= std::log(2.0) + 1e-12);
    }
    // variance window [0.05, 1] maps through y = sigma/v
    for (int j = m.j_lo; j <= m.j_hi; ++j) {
        CHECK(g.y(j) >= 0.05 / params.v - 1e-12);
        CHECK(params.v * g.y(j) <= 1.0 + 1e-12);
    }
    CHECK_THROWS(eval_region_mask(grid_from_level(paper_domain(), {0, 0}), spec, params));
}

TEST_CASE("eval_region_mask can degenerate to a single column") {
    // domain sliced so exactly one node falls inside the x-window
    Domain dom{-2.0, std::log(2.0), 0.6, 2.0, 1.0};
    OptionSpec spec;
    ModelParams params;
    const UniformGrid g = grid_from_level(dom, {0, 2});
    const RegionMask m = eval_region_mask(g, spec, params);  // only x = K1 qualifies
    CHECK(m.i_lo == m.i_hi);
    CHECK(g.x(m.i_lo) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("mask coordinates are monotone under refinement") {
    OptionSpec spec;
    ModelParams params;
    const UniformGrid coarse = grid_from_level(paper_domain(), {4, 4});
    const UniformGrid fine = grid_from_level(paper_domain(), {5, 5});
    const RegionMask mc = eval_region_mask(coarse, spec, params);
    const RegionMask mf = eval_region_mask(fine, spec, params);
    CHECK(fine.x(mf.i_lo) <= coarse.x(mc.i_lo) + 1e-15);
    CHECK(fine.x(mf.i_hi) >= coarse.x(mc.i_hi) - 1e-15);
    CHECK(fine.y(mf.j_lo) <= coarse.y(mc.j_lo) + 1e-15);
    CHECK(fine.y(mf.j_hi) >= coarse.y(mc.j_hi) - 1e-15);
}

TEST_CASE("GridField finiteness guard") {
    const UniformGrid g = grid_from_level(paper_domain(), {3, 3});
    GridField f(g, 1.0);
    CHECK(f.all_finite());
    f.at(2, 2) = std::nan("");
    CHECK_FALSE(f.all_finite());
    CHECK_THROWS_WITH_AS(f.require_finite("stage Y1"), "non-finite value detected in stage Y1",
                         std::runtime_error);
}

TEST_CASE("binary field round trip is exact") {
    const UniformGrid g = grid_from_level(paper_domain(), {3, 4});
    GridField f(g);
    for (int j = 0; j < g.n(); ++j)
        for (int i = 0; i < g.m(); ++i) f.at(i, j) = std::sin(3.0 * i) * std::cos(j + 0.5);
    std::stringstream buf;
    write_field_binary(buf, f);
    const GridField back = read_field_binary(buf, g);
    CHECK(back.values() == f.values());

    std::stringstream again;
    write_field_binary(again, back);
    CHECK(again.str() == buf.str());
}

TEST_CASE("csv field layout: y header row, x first column") {
    const UniformGrid g = grid_from_level(Domain{0.0, 1.0, 1.0, 2.0, 1.0}, {1, 1});
    GridField f(g, 0.0);
    f.at(1, 2) = 42.0;
    std::stringstream os;
    write_field_csv(os, g, f);
    std::string line;
    std::getline(os, line);
    CHECK(line == "x,1,1.5,2");
    std::getline(os, line);  // row at x = 0
    CHECK(line == "0,0,0,0");
    std::getline(os, line);  // row at x = 0.5 carries the marked node at y = 2
    CHECK(line == "0.5,0,0,42");
}

}  // TEST_SUITE
