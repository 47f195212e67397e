#pragma once

#include "mrqmem/core.hpp"
#include "mrqmem/reduced_ode.hpp"

namespace mrqmem {

// Discretized waveguide continuum: two mirror-symmetric bands of midpoint
// panels, backward branch first, then forward.
struct WaveguideGrid {
    std::vector<double> wavenumbers;
    std::vector<double> weights;
    std::vector<int> branch;  // +1 forward (k > 0), -1 backward
    int modes_per_band = 0;

    int size() const { return static_cast<int>(wavenumbers.size()); }
};

// Single-excitation state: discrete mode j carries f(k_j)*sqrt(w_j).
// Both sectors are stored in the lab frame.
struct FullState {
    Vec field;
    AmplitudeVector resonators;
    double time = 0.0;

    double total_norm() const {
        return field.squaredNorm() + resonators.values.squaredNorm();
    }
};

struct EmissionSpectra {
    std::vector<double> k_forward, k_backward;
    std::vector<double> forward, backward;  // |f(k)|^2 densities
    double asymmetry = 0.0;   // (P_fwd - P_bwd) / (P_fwd + P_bwd)
    // Normalized |f(k0+q)|^2 vs |f(k0-q)|^2 imbalance within each branch;
    // zero iff the emitted line is mirror-symmetric about the carrier.
    double skew_forward = 0.0, skew_backward = 0.0;
};

WaveguideGrid discretize_waveguide(const SystemParams& params, int modes_per_band);

// G = -i H in the lab frame: field diagonal -i c |k_j|, resonator diagonal
// -i (c k0 + Delta n), couplings -i g sqrt(w_j / 2) e^{-i k_j z n} and h.c.
Mat assemble_full_generator(const WaveguideGrid& grid, const SystemParams& params);

// Diagonalized rotating-frame propagator; cheap state evaluation at many t.
class FullPropagator {
  public:
    FullPropagator(const WaveguideGrid& grid, const SystemParams& params);

    // init has field amplitudes first (M entries) then resonator amplitudes.
    FullState propagate(const FullState& init, double t) const;
    FullState propagate_resonator_init(const AmplitudeVector& init, double t) const;

  private:
    const WaveguideGrid grid_;
    SystemParams params_;
    Eigen::VectorXd eigvals_;
    Mat eigvecs_;
};

FullState make_initial_state(const AmplitudeVector& resonator_init,
                             const WaveguideGrid& grid);

FullState evolve_full(const FullState& init, double t, const WaveguideGrid& grid,
                      const SystemParams& params);

// Rotating-frame resonator amplitudes beta_n = e^{+i c k0 t} alpha_n.
AmplitudeVector rotating_resonators(const FullState& state,
                                    const SystemParams& params);

// Retarded-integral output field of the emitted wave at wavenumber k, time t,
// from a rotating-frame resonator trajectory densely sampled on [0, t].
Complex output_field_direct(const Trajectory& beta_trajectory, double k, double t,
                            const SystemParams& params);

EmissionSpectra emission_spectra(const FullState& state, const WaveguideGrid& grid);

}  // namespace mrqmem
