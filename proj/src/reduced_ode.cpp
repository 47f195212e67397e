#include "mrqmem/reduced_ode.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace mrqmem {

Mat generator(const SystemParams& params) {
    int N = params.n_resonators;
    auto idx = index_set(N);
    double Gamma = params.collective_rate();
    Mat A = Mat::Constant(N, N, Complex(-Gamma, 0.0));
    for (int i = 0; i < N; ++i)
        A(i, i) += Complex(0.0, -params.comb_spacing * idx[i]);
    return A;
}

AmplitudeVector evolve_expm(const AmplitudeVector& init, double t,
                            const SystemParams& params) {
    if (t < 0) throw std::invalid_argument("evolve_expm requires t >= 0");
    Mat P = (generator(params) * t).exp();
    return {P * init.values, Frame::rotating};
}

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 2 || grid.front() != 0.0)
        throw std::invalid_argument("time grid must start at 0 with >= 2 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
}

bool is_uniform(const std::vector<double>& grid) {
    double h = grid[1] - grid[0];
    for (size_t i = 2; i < grid.size(); ++i)
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-12 * std::max(1.0, h))
            return false;
    return true;
}

}  // namespace

Trajectory evolve_trajectory(const AmplitudeVector& init,
                             const std::vector<double>& time_grid,
                             const SystemParams& params) {
    check_grid(time_grid);
    Trajectory traj{time_grid, {}, params};
    traj.states.reserve(time_grid.size());
    traj.states.push_back(init);
    Mat A = generator(params);
    if (is_uniform(time_grid)) {
        Mat P = (A * (time_grid[1] - time_grid[0])).exp();
        Vec v = init.values;
        for (size_t i = 1; i < time_grid.size(); ++i) {
            v = P * v;
            traj.states.push_back({v, Frame::rotating});
        }
    } else {
        for (size_t i = 1; i < time_grid.size(); ++i) {
            Mat P = (A * time_grid[i]).exp();
            traj.states.push_back({P * init.values, Frame::rotating});
        }
    }
    return traj;
}

Trajectory evolve_rk(const AmplitudeVector& init,
                     const std::vector<double>& time_grid,
                     const SystemParams& params) {
    check_grid(time_grid);
    Mat A = generator(params);
    double norm_a = A.cwiseAbs().rowwise().sum().maxCoeff();
    for (size_t i = 1; i < time_grid.size(); ++i) {
        double h = time_grid[i] - time_grid[i - 1];
        if (norm_a * h >= 1.0)
            throw std::invalid_argument("RK4 step too large: max|A|*h >= 1");
    }
    Trajectory traj{time_grid, {}, params};
    traj.states.reserve(time_grid.size());
    traj.states.push_back(init);
    Vec v = init.values;
    for (size_t i = 1; i < time_grid.size(); ++i) {
        double h = time_grid[i] - time_grid[i - 1];
        Vec k1 = A * v;
        Vec k2 = A * (v + 0.5 * h * k1);
        Vec k3 = A * (v + 0.5 * h * k2);
        Vec k4 = A * (v + h * k3);
        v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.states.push_back({v, Frame::rotating});
    }
    return traj;
}

double resonator_norm(const AmplitudeVector& state) {
    return state.values.squaredNorm();
}

std::vector<double> uniform_grid(double t_max, int samples) {
    if (samples < 2 || !(t_max > 0))
        throw std::invalid_argument("uniform_grid needs t_max > 0, samples >= 2");
    std::vector<double> g(samples);
    for (int i = 0; i < samples; ++i)
        g[i] = t_max * static_cast<double>(i) / (samples - 1);
    return g;
}

}  // namespace mrqmem
