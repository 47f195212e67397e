#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrqmem/core.hpp"

using namespace mrqmem;

TEST_CASE("build_params accepts valid configurations") {
    auto p = build_params(7, 1.0, std::sqrt(1.0 / (pi * pi)), 1.0, 100.0, 10.0);
    CHECK(p.spacing == doctest::Approx(2.0 * pi / 100.0).epsilon(1e-15));
    CHECK(p.collective_rate() == doctest::Approx(1.0 / pi).epsilon(1e-12));

    auto q = build_params(1, 1.0, 0.0, 1.0, 100.0, 10.0);
    CHECK(q.collective_rate() == 0.0);
}

TEST_CASE("build_params rejects invalid configurations") {
    CHECK_THROWS_AS(build_params(7, 5.0, 1.0, 1.0, 100.0, 10.0),
                    std::invalid_argument);  // comb 35 exceeds band 20
    CHECK_THROWS_AS(build_params(0, 1.0, 1.0, 1.0, 100.0, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_params(3, -1.0, 1.0, 1.0, 100.0, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_params(3, 1.0, -0.5, 1.0, 100.0, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_params(3, 1.0, 1.0, 0.0, 100.0, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_params(3, 1.0, 1.0, 1.0, -100.0, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_params(3, 1.0, 1.0, 1.0, 100.0, 200.0),
                    std::invalid_argument);  // delta0 >= k0
}

TEST_CASE("index_set is centered") {
    CHECK(index_set(1) == std::vector<int>{0});
    CHECK(index_set(3) == std::vector<int>{-1, 0, 1});
    CHECK(index_set(7) == std::vector<int>{-3, -2, -1, 0, 1, 2, 3});
    CHECK(index_set(6) == std::vector<int>{-3, -2, -1, 0, 1, 2});
}

TEST_CASE("rect_comb_init alternating signs and exact unit norm") {
    auto p1 = build_params(1, 1.0, 0.1, 1.0, 100.0, 10.0);
    auto v1 = rect_comb_init(p1);
    CHECK(v1.values[0] == Complex(1.0, 0.0));

    auto p3 = build_params(3, 1.0, 0.1, 1.0, 100.0, 10.0);
    auto v3 = rect_comb_init(p3);
    double a = 1.0 / std::sqrt(3.0);
    CHECK(v3.values[0].real() == doctest::Approx(-a).epsilon(1e-15));
    CHECK(v3.values[1].real() == doctest::Approx(a).epsilon(1e-15));
    CHECK(v3.values[2].real() == doctest::Approx(-a).epsilon(1e-15));

    auto p7 = build_params(7, 1.0, 0.1, 1.0, 100.0, 10.0);
    CHECK(rect_comb_init(p7).values.squaredNorm() ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalize rescales and rejects zero input") {
    auto v = normalize(std::vector<Complex>{{2, 0}, {0, 0}, {0, 0}});
    CHECK(v.values[0] == Complex(1.0, 0.0));

    auto w = normalize(std::vector<Complex>{{1, 0}, {0, 1}});
    CHECK(w.values[0].real() == doctest::Approx(1.0 / std::sqrt(2)).epsilon(1e-15));
    CHECK(w.values[1].imag() == doctest::Approx(1.0 / std::sqrt(2)).epsilon(1e-15));

    CHECK_THROWS_AS(normalize(std::vector<Complex>{{0, 0}, {0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("detuning_of is Delta*n and odd in n") {
    auto p = build_params(7, 1.0, 0.1, 1.0, 100.0, 10.0);
    CHECK(detuning_of(0, p) == 0.0);
    CHECK(detuning_of(2, p) == 2.0);
    CHECK(detuning_of(-3, p) == -3.0);
    for (int n : index_set(7))
        CHECK(detuning_of(-n, p) == -detuning_of(n, p));
    CHECK_THROWS_AS(detuning_of(4, p), std::out_of_range);
    CHECK_THROWS_AS(detuning_of(-4, p), std::out_of_range);
}
