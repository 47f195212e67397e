#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mrqmem/analytic.hpp"
#include "mrqmem/full_model.hpp"

using namespace mrqmem;

TEST_CASE("discretize_waveguide: measure, symmetry, precondition") {
    auto p = build_params(3, 1.0, 0.1, 1.0, 100.0, 10.0);
    auto grid = discretize_waveguide(p, 64);
    CHECK(grid.size() == 128);
    double sum = 0.0;
    for (double w : grid.weights) sum += w;
    CHECK(sum == doctest::Approx(40.0).epsilon(1e-12));

    std::vector<double> fwd, bwd;
    for (int j = 0; j < grid.size(); ++j)
        (grid.branch[j] > 0 ? fwd : bwd).push_back(
            grid.branch[j] > 0 ? grid.wavenumbers[j] : -grid.wavenumbers[j]);
    std::sort(fwd.begin(), fwd.end());
    std::sort(bwd.begin(), bwd.end());
    for (size_t i = 0; i < fwd.size(); ++i)
        CHECK(fwd[i] == doctest::Approx(bwd[i]).epsilon(1e-14));

    CHECK_THROWS_AS(discretize_waveguide(p, 4), std::invalid_argument);
}

TEST_CASE("assemble_full_generator: decoupled blocks and anti-Hermiticity") {
    auto p0 = build_params(2, 1.0, 0.0, 1.0, 100.0, 10.0);
    auto grid = discretize_waveguide(p0, 16);
    Mat g0 = assemble_full_generator(grid, p0);
    for (int j = 0; j < grid.size(); ++j)
        for (int n = 0; n < 2; ++n) {
            CHECK(g0(j, grid.size() + n) == Complex(0.0, 0.0));
            CHECK(g0(grid.size() + n, j) == Complex(0.0, 0.0));
        }

    auto p = build_params(3, 1.0, 0.2, 1.0, 100.0, 10.0);
    Mat g = assemble_full_generator(discretize_waveguide(p, 16), p);
    CHECK((g + g.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("single resonator decays at the Fermi-golden-rule rate") {
    auto p = build_params(1, 1.0, 0.15, 1.0, 100.0, 10.0);
    double Gamma = p.collective_rate();
    auto grid = discretize_waveguide(p, 256);
    FullPropagator prop(grid, p);
    double t = 2.0;
    FullState st = prop.propagate_resonator_init(rect_comb_init(p), t);
    double pop = std::norm(st.resonators.values[0]);
    double rate = -std::log(pop) / (2.0 * t);
    CHECK(rate == doctest::Approx(Gamma).epsilon(0.05));
}

TEST_CASE("evolve_full: identity at t=0 and norm conservation") {
    auto p = build_params(5, 1.0, optimal_coupling(build_params(5, 1, 0.1, 1, 100, 10)),
                          1.0, 100.0, 10.0);
    auto grid = discretize_waveguide(p, 64);
    FullState init = make_initial_state(rect_comb_init(p), grid);
    FullState at0 = evolve_full(init, 0.0, grid, p);
    CHECK((at0.resonators.values - init.resonators.values).cwiseAbs().maxCoeff()
          <= 1e-12);
    FullPropagator prop(grid, p);
    for (double t : {0.5, 2.0, 2.0 * pi, 4.0 * pi})
        CHECK(prop.propagate(init, t).total_norm() ==
              doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("full model matches the reduced model in the wide-band limit") {
    // Measured max deviation 0.009 at this configuration.
    auto p = build_params(6, 1.0, 1.0 / pi, 1.0, 1000.0, 120.0);
    auto grid = discretize_waveguide(p, 512);
    FullPropagator prop(grid, p);
    auto init = rect_comb_init(p);
    FullState fs = make_initial_state(init, grid);
    double worst = 0.0;
    for (double t : {1.0, 3.0, 2.0 * pi}) {
        Vec full = rotating_resonators(prop.propagate(fs, t), p).values;
        Vec red = evolve_expm(init, t, p).values;
        worst = std::max(worst, (full - red).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 0.011);
}

TEST_CASE("output_field_direct: trivial cases") {
    auto p = build_params(3, 1.0, 0.0, 1.0, 100.0, 10.0);
    auto traj = evolve_trajectory(rect_comb_init(p), uniform_grid(2.0, 4096), p);
    CHECK(output_field_direct(traj, 100.0, 1.5, p) == Complex(0.0, 0.0));
    auto pg = build_params(3, 1.0, 0.3, 1.0, 100.0, 10.0);
    auto traj2 = evolve_trajectory(rect_comb_init(pg), uniform_grid(2.0, 4096), pg);
    CHECK(output_field_direct(traj2, 100.0, 0.0, pg) == Complex(0.0, 0.0));
}

TEST_CASE("output_field_direct rejects coarse sampling") {
    auto p = build_params(3, 1.0, 0.3, 1.0, 100.0, 10.0);
    auto traj = evolve_trajectory(rect_comb_init(p), uniform_grid(2.0, 8), p);
    CHECK_THROWS_AS(output_field_direct(traj, 110.0, 2.0, p),
                    std::invalid_argument);
}

TEST_CASE("output_field_direct agrees with the discretized mode amplitudes") {
    auto p = build_params(3, 1.0, 1.0 / pi, 1.0, 100.0, 10.0);
    auto grid = discretize_waveguide(p, 256);
    FullPropagator prop(grid, p);
    auto init = rect_comb_init(p);
    double t = 2.0 * pi;
    FullState st = prop.propagate_resonator_init(init, t);
    auto traj = evolve_trajectory(init, uniform_grid(t, 8193), p);
    // Band-center forward modes.
    std::vector<int> sel;
    for (int j = 0; j < grid.size(); ++j)
        if (grid.branch[j] > 0 && std::abs(grid.wavenumbers[j] - 100.0) < 0.3)
            sel.push_back(j);
    CHECK(sel.size() >= 4);
    for (int j : sel) {
        double direct = std::abs(output_field_direct(traj, grid.wavenumbers[j], t, p));
        double mode = std::abs(st.field[j]) / std::sqrt(grid.weights[j]);
        CHECK(direct == doctest::Approx(mode).epsilon(0.05));
    }
}

TEST_CASE("emission_spectra: matched init is balanced and symmetric") {
    auto p = build_params(5, 1.0, 1.0 / pi, 1.0, 1000.0, 60.0);
    auto grid = discretize_waveguide(p, 512);
    FullPropagator prop(grid, p);
    FullState st = prop.propagate_resonator_init(rect_comb_init(p), 2.0 * pi);
    auto sp = emission_spectra(st, grid);
    CHECK(std::abs(sp.asymmetry) <= 0.05);
    CHECK(sp.skew_forward <= 0.05);
    CHECK(sp.forward.size() == 512);
    CHECK(sp.backward.size() == 512);
}

TEST_CASE("emission_spectra: off-center excitation skews the line") {
    auto p = build_params(5, 1.0, 1.0 / pi, 1.0, 1000.0, 60.0);
    auto grid = discretize_waveguide(p, 512);
    FullPropagator prop(grid, p);
    Vec conc = Vec::Zero(5);
    conc[index_position(1, p)] = 1.0;
    FullState st = prop.propagate_resonator_init({conc, Frame::lab}, 2.0 * pi);
    auto sp = emission_spectra(st, grid);
    CHECK(sp.skew_forward > 0.5);
}
