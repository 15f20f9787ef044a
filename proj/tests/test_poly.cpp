#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chromalg/poly.hpp"

#include <random>

using namespace chromalg;

namespace {

QPoly rand_poly(GradingPtr g, std::mt19937& rng, long max_deg) {
    std::uniform_int_distribution<long> cdist(-5, 5);
    QPoly p(g);
    for (long d = 0; d <= max_deg; d += 2) {
        if (d > g->degree_bound) break;
        for (const auto& m : monomial_basis(*g, d)) {
            long c = cdist(rng);
            if (rng() % 3 == 0) p.add_term(m, PLocalScalar(c, g->prime));
        }
    }
    return p;
}

/* coefficient of q^d in prod 1/(1-q^{deg_i}), by dynamic programming */
long partition_count(const std::vector<long>& degs, long d) {
    std::vector<long> cnt(d + 1, 0);
    cnt[0] = 1;
    for (long deg : degs)
        for (long k = deg; k <= d; ++k) cnt[k] += cnt[k - deg];
    return cnt[d];
}

} // namespace

TEST_CASE("multiply: unit and kept product") {
    auto g2 = make_base_grading(2, 1, 4);
    QPoly v1 = QPoly::variable(g2, 0);
    QPoly one = QPoly::constant(g2, PLocalScalar::one(2));
    CHECK(v1 * one == v1);
    QPoly sq = v1 * v1;
    CHECK(sq.coefficient({2}).is_one());
    CHECK_FALSE(sq.truncated());
}

TEST_CASE("homogeneous component") {
    auto g = make_base_grading(2, 2, 12);
    QPoly v1 = QPoly::variable(g, 0);
    QPoly v2 = QPoly::variable(g, 1);
    QPoly s = v1 + v2;
    CHECK(s.homogeneous_component(2) == v1);
    CHECK(s.homogeneous_component(6) == v2);
    CHECK(s.homogeneous_component(4).is_zero());
}

TEST_CASE("monomial basis matches spec examples") {
    auto g1 = make_base_grading(2, 1, 8);  // Z_(2)[v1], |v1|=2
    auto b = monomial_basis(*g1, 4);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == Multidegree{2});

    auto g2 = make_base_grading(2, 2, 12);  // |v1|=2, |v2|=6
    auto b6 = monomial_basis(*g2, 6);
    REQUIRE(b6.size() == 2);
    CHECK(b6[0] == Multidegree{0, 1});  // lex order: v1-exp ascending
    CHECK(b6[1] == Multidegree{3, 0});

    CHECK(monomial_basis(*g2, 1).empty());  // odd degree
}

TEST_CASE("monomial basis counts match generating function") {
    for (long p : {2L, 3L}) {
        auto g = make_gamma_grading(p, 2, 24);
        std::vector<long> degs;
        for (const auto& v : g->vars) degs.push_back(v.degree);
        for (long d = 0; d <= 24; d += 2)
            CHECK(static_cast<long>(monomial_basis(*g, d).size()) == partition_count(degs, d));
    }
}

TEST_CASE("ring laws on random elements, truncation flags propagate") {
    std::mt19937 rng(7);
    auto g = make_gamma_grading(3, 1, 16);
    for (int trial = 0; trial < 15; ++trial) {
        QPoly a = rand_poly(g, rng, 8), b = rand_poly(g, rng, 8), c = rand_poly(g, rng, 8);
        CHECK((a * b) == (b * a));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
    }
    // truncation: (v1)*(v1) at p=2 with D=2 drops the degree-4 term
    auto glow = make_base_grading(2, 1, 2);
    QPoly v1 = QPoly::variable(glow, 0);
    QPoly sq = v1 * v1;
    CHECK(sq.is_zero());
    CHECK(sq.truncated());
    QPoly follow = sq + QPoly::constant(glow, PLocalScalar::one(2));
    CHECK(follow.truncated());  // sticky
}

TEST_CASE("rendering is stable and sorted") {
    auto g = make_base_grading(3, 2, 40);
    QPoly p = QPoly::variable(g, 1) + QPoly::variable(g, 0) * PLocalScalar(2, 3);
    CHECK(p.str() == "1*v2 + 2*v1");  // lex order on exponent vectors
}
