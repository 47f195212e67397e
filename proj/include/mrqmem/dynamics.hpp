#pragma once

#include <string>

#include "mrqmem/core.hpp"
#include "mrqmem/reduced_ode.hpp"

namespace mrqmem {

struct Series {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;
};

// Series with a validity mask for floored-denominator points.
struct MaskedSeries {
    Series series;
    std::vector<bool> valid;
};

struct Peak {
    double time = 0.0;
    double height = 0.0;
    double width = 0.0;  // full width at half prominence
    double prominence = 0.0;
};

struct PeakSet {
    std::vector<Peak> peaks;
};

struct SweepRow {
    double g = 0.0;
    double eta_echo = 0.0;       // dynamical efficiency at 2*pi/Delta
    double eta0_analytic = 0.0;  // closed-form eta0(g)
};

// eta(t) = 1 - sum_n |beta_n(t)|^2 pointwise along a trajectory.
Series efficiency_curve(const Trajectory& trajectory);

// e12(t) = (E1 - E2) / (E1 + E2), E_k = |beta_{n_k}|^2; denominators below
// 1e-30 emit 0 with valid=false.
MaskedSeries energy_difference(const Trajectory& trajectory, int n1, int n2);

// Local maxima of |values| with topographic prominence >= prominence_floor.
PeakSet detect_peaks(const Series& series, double prominence_floor);

// Reduced-model efficiency at the echo time for each g, plus eta0(g).
std::vector<SweepRow> sweep_coupling(const SystemParams& params,
                                     const std::vector<double>& g_values,
                                     const AmplitudeVector& init);

// |sum_n beta_n(t)|, the bright-mode amplitude.
Series collective_amplitude(const Trajectory& trajectory);

}  // namespace mrqmem
