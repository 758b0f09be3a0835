#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <vector>

#include "hoadi/combine.hpp"

using namespace hoadi;

namespace {
Domain paper_domain() { return Domain{-5.0, 1.5, 0.05, 2.5, 1.0}; }

GridField sample(const UniformGrid& g, double (*f)(double, double)) {
    GridField out(g);
    for (int j = 0; j < g.n(); ++j)
        for (int i = 0; i < g.m(); ++i) out.at(i, j) = f(g.x(i), g.y(j));
    return out;
}

double cubic_xy(double x, double y) { return x * x * x + y * y * y - 2.0 * x * y + 0.5; }
double wavy(double x, double y) { return std::sin(x) * std::cos(y); }
}  // namespace

TEST_SUITE("combine") {

TEST_CASE("plan enumeration at n=6 and n=7") {
    const CombinationPlan p6 = make_plan(6);
    REQUIRE(p6.terms.size() == 3);
    CHECK(p6.terms[0].level == LevelIndex{3, 3});
    CHECK(p6.terms[0].sign == -1);
    CHECK(p6.terms[1].level == LevelIndex{3, 4});
    CHECK(p6.terms[1].sign == +1);
    CHECK(p6.terms[2].level == LevelIndex{4, 3});
    CHECK(p6.terms[2].sign == +1);
    CHECK(p6.weight_sum() == 1);

    const CombinationPlan p7 = make_plan(7);
    REQUIRE(p7.terms.size() == 5);
    CHECK(p7.terms[0].level == LevelIndex{3, 4});
    CHECK(p7.terms[0].sign == -1);
    CHECK(p7.terms[1].level == LevelIndex{3, 5});
    CHECK(p7.terms[1].sign == +1);
    CHECK(p7.terms[2].level == LevelIndex{4, 3});
    CHECK(p7.terms[2].sign == -1);
    CHECK(p7.terms[3].level == LevelIndex{4, 4});
    CHECK(p7.terms[3].sign == +1);
    CHECK(p7.terms[4].level == LevelIndex{5, 3});
    CHECK(p7.terms[4].sign == +1);
    CHECK(p7.weight_sum() == 1);
}

TEST_CASE("plan rejects levels below the admissible minimum") {
    CHECK_THROWS(make_plan(5));
    for (int n = 6; n <= 12; ++n) {
        const CombinationPlan p = make_plan(n);
        CHECK(p.weight_sum() == 1);
        for (const auto& t : p.terms) {
            CHECK(t.level.l1 >= 3);
            CHECK(t.level.l2 >= 3);
        }
    }
}

TEST_CASE("retained node count stays far below the full grid") {
    const CombinationPlan p9 = make_plan(9);
    const long sparse_nodes = p9.total_nodes(paper_domain());
    const long full_nodes = UniformGrid(paper_domain(), LevelIndex{9, 9}).node_count();
    CHECK(sparse_nodes * 4 < full_nodes);
}

TEST_CASE("interpolation copies coinciding nodes bitwise") {
    const UniformGrid src(paper_domain(), LevelIndex{4, 4});
    const UniformGrid dst(paper_domain(), LevelIndex{5, 5});
    const GridField f = sample(src, wavy);
    const GridField out = interpolate_to(src, f, dst);
    for (int j = 0; j < src.n(); ++j)
        for (int i = 0; i < src.m(); ++i) CHECK(out.at(2 * i, 2 * j) == f.at(i, j));
}

TEST_CASE("interpolation is exact on coordinate-degree-3 tensors") {
    const UniformGrid src(paper_domain(), LevelIndex{4, 3});
    const UniformGrid dst(paper_domain(), LevelIndex{6, 6});
    const GridField out = interpolate_to(src, sample(src, cubic_xy), dst);
    for (int j = 0; j < dst.n(); ++j)
        for (int i = 0; i < dst.m(); ++i)
            CHECK(std::abs(out.at(i, j) - cubic_xy(dst.x(i), dst.y(j))) < 1e-11);
}

TEST_CASE("interpolation error decays at fourth order on smooth fields") {
    const UniformGrid dst(paper_domain(), LevelIndex{7, 7});
    std::vector<double> errs;
    for (int l : {3, 4, 5}) {
        const UniformGrid src(paper_domain(), LevelIndex{l, l});
        const GridField out = interpolate_to(src, sample(src, wavy), dst);
        double worst = 0.0;
        for (int j = 0; j < dst.n(); ++j)
            for (int i = 0; i < dst.m(); ++i)
                worst = std::max(worst, std::abs(out.at(i, j) - wavy(dst.x(i), dst.y(j))));
        errs.push_back(worst);
    }
    CHECK(std::log2(errs[0] / errs[1]) > 3.5);
    CHECK(std::log2(errs[1] / errs[2]) > 3.5);
}

TEST_CASE("interpolation needs four source nodes per axis") {
    const UniformGrid src(paper_domain(), LevelIndex{1, 3});
    const UniformGrid dst(paper_domain(), LevelIndex{3, 3});
    CHECK_THROWS_AS(interpolate_to(src, GridField(src), dst), std::invalid_argument);
}

TEST_CASE("combining identical cubic sub-solutions reproduces the cubic") {
    const UniformGrid target(paper_domain(), LevelIndex{6, 6});
    auto solver = [&](LevelIndex level) {
        return sample(UniformGrid(paper_domain(), level), cubic_xy);
    };
    const GridField out = combine(make_plan(8), solver, target, 2);
    for (int j = 0; j < target.n(); ++j)
        for (int i = 0; i < target.m(); ++i)
            CHECK(std::abs(out.at(i, j) - cubic_xy(target.x(i), target.y(j))) < 1e-11);
}

TEST_CASE("combine is deterministic across thread counts") {
    const UniformGrid target(paper_domain(), LevelIndex{5, 5});
    auto solver = [&](LevelIndex level) {
        return sample(UniformGrid(paper_domain(), level), wavy);
    };
    const CombinationPlan plan = make_plan(7);
    const GridField serial = combine(plan, solver, target, 1);
    const GridField threaded = combine(plan, solver, target, 4);
    CHECK(serial.values() == threaded.values());
}

TEST_CASE("sub-solve failures name the level") {
    const UniformGrid target(paper_domain(), LevelIndex{5, 5});
    auto solver = [&](LevelIndex level) -> GridField {
        if (level == LevelIndex{4, 3}) throw std::runtime_error("boom");
        return sample(UniformGrid(paper_domain(), level), wavy);
    };
    CHECK_THROWS_WITH_AS(combine(make_plan(6), solver, target, 1),
                         "combine: sub-solve at level (4,3) failed: boom", std::runtime_error);
}

}  // TEST_SUITE
