#pragma once

#include "mrqmem/core.hpp"

namespace mrqmem {

// Reduced-system trajectory on a caller-supplied time grid (rotating frame).
struct Trajectory {
    std::vector<double> times;
    std::vector<AmplitudeVector> states;
    SystemParams params;
};

// A_{nm} = -i Delta n delta_{nm} - Gamma.
Mat generator(const SystemParams& params);

// exp(A t) * init via scaling-and-squaring Pade (authoritative).
AmplitudeVector evolve_expm(const AmplitudeVector& init, double t,
                            const SystemParams& params);

// Sample exp(A t) * init on a uniform grid using a precomputed step propagator.
Trajectory evolve_trajectory(const AmplitudeVector& init,
                             const std::vector<double>& time_grid,
                             const SystemParams& params);

// Classic fixed-step RK4 cross-check; requires max|A| * h < 1.
Trajectory evolve_rk(const AmplitudeVector& init,
                     const std::vector<double>& time_grid,
                     const SystemParams& params);

// Sum_n |beta_n|^2.
double resonator_norm(const AmplitudeVector& state);

// Uniform grid of `samples` points covering [0, t_max] inclusive.
std::vector<double> uniform_grid(double t_max, int samples);

}  // namespace mrqmem
