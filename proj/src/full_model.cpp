#include "mrqmem/full_model.hpp"

#include <cmath>

#include <lapacke.h>

namespace mrqmem {

WaveguideGrid discretize_waveguide(const SystemParams& params, int modes_per_band) {
    if (modes_per_band < 8)
        throw std::invalid_argument("discretize_waveguide needs >= 8 modes per band");
    WaveguideGrid grid;
    grid.modes_per_band = modes_per_band;
    double d0 = params.band_halfwidth;
    double w = 2.0 * d0 / modes_per_band;
    auto add_band = [&](double center, int tag) {
        for (int j = 0; j < modes_per_band; ++j) {
            grid.wavenumbers.push_back(center - d0 + (j + 0.5) * w);
            grid.weights.push_back(w);
            grid.branch.push_back(tag);
        }
    };
    add_band(-params.carrier_wavenumber, -1);
    add_band(params.carrier_wavenumber, +1);
    return grid;
}

namespace {

// Rotating-frame Hermitian Hamiltonian: global shift by -c k0.
Mat rotating_hamiltonian(const WaveguideGrid& grid, const SystemParams& params) {
    int M = grid.size(), N = params.n_resonators;
    auto idx = index_set(N);
    double c = params.light_speed, k0 = params.carrier_wavenumber;
    double geff = params.coupling / std::sqrt(2.0);  // per-branch coupling
    Mat H = Mat::Zero(M + N, M + N);
    for (int j = 0; j < M; ++j)
        H(j, j) = c * std::abs(grid.wavenumbers[j]) - c * k0;
    for (int n = 0; n < N; ++n)
        H(M + n, M + n) = params.comb_spacing * idx[n];
    for (int j = 0; j < M; ++j) {
        double kj = grid.wavenumbers[j];
        double sw = std::sqrt(grid.weights[j]);
        for (int n = 0; n < N; ++n) {
            Complex cp = geff * sw * std::polar(1.0, -kj * params.spacing * idx[n]);
            H(j, M + n) = cp;
            H(M + n, j) = std::conj(cp);
        }
    }
    return H;
}

}  // namespace

Mat assemble_full_generator(const WaveguideGrid& grid, const SystemParams& params) {
    Mat H = rotating_hamiltonian(grid, params);
    double shift = params.light_speed * params.carrier_wavenumber;
    for (Eigen::Index i = 0; i < H.rows(); ++i) H(i, i) += shift;
    return Complex(0.0, -1.0) * H;
}

FullPropagator::FullPropagator(const WaveguideGrid& grid, const SystemParams& params)
    : grid_(grid), params_(params) {
    Mat H = rotating_hamiltonian(grid, params);
    int dim = static_cast<int>(H.rows());
    eigvals_.resize(dim);
    int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', dim,
        reinterpret_cast<lapack_complex_double*>(H.data()), dim, eigvals_.data());
    if (info != 0) throw std::runtime_error("zheevd failed");
    eigvecs_ = std::move(H);
}

FullState FullPropagator::propagate(const FullState& init, double t) const {
    if (t < 0) throw std::invalid_argument("propagate requires t >= 0");
    int M = grid_.size(), N = params_.n_resonators;
    double ck0 = params_.light_speed * params_.carrier_wavenumber;
    Vec psi(M + N);
    psi.head(M) = init.field;
    psi.tail(N) = init.resonators.values;
    // Lab -> rotating at the initial time.
    psi *= std::polar(1.0, ck0 * init.time);
    Vec coef = eigvecs_.adjoint() * psi;
    for (Eigen::Index i = 0; i < coef.size(); ++i)
        coef[i] *= std::polar(1.0, -eigvals_[i] * t);
    Vec out = eigvecs_ * coef;
    double t_final = init.time + t;
    out *= std::polar(1.0, -ck0 * t_final);
    FullState st;
    st.field = out.head(M);
    st.resonators = {out.tail(N), Frame::lab};
    st.time = t_final;
    return st;
}

FullState FullPropagator::propagate_resonator_init(const AmplitudeVector& init,
                                                   double t) const {
    return propagate(make_initial_state(init, grid_), t);
}

FullState make_initial_state(const AmplitudeVector& resonator_init,
                             const WaveguideGrid& grid) {
    FullState st;
    st.field = Vec::Zero(grid.size());
    st.resonators = {resonator_init.values, Frame::lab};
    st.time = 0.0;
    return st;
}

FullState evolve_full(const FullState& init, double t, const WaveguideGrid& grid,
                      const SystemParams& params) {
    return FullPropagator(grid, params).propagate(init, t);
}

AmplitudeVector rotating_resonators(const FullState& state,
                                    const SystemParams& params) {
    Complex ph = std::polar(
        1.0, params.light_speed * params.carrier_wavenumber * state.time);
    return {ph * state.resonators.values, Frame::rotating};
}

Complex output_field_direct(const Trajectory& beta_trajectory, double k, double t,
                            const SystemParams& params) {
    if (t < 0) throw std::invalid_argument("output_field_direct requires t >= 0");
    const auto& times = beta_trajectory.times;
    if (times.empty() || times.back() < t - 1e-12)
        throw std::invalid_argument("trajectory does not cover [0, t]");
    if (params.coupling == 0.0 || t == 0.0) return 0.0;

    int N = params.n_resonators;
    auto idx = index_set(N);
    double c = params.light_speed, k0 = params.carrier_wavenumber;
    double ak = std::abs(k);
    double sgn = (k >= 0) ? 1.0 : -1.0;
    double omega_eff = std::abs(ak - k0) * c +
                       params.comb_spacing * std::abs(idx.back());

    size_t last = 0;
    while (last + 1 < times.size() && times[last + 1] <= t + 1e-12) ++last;
    double dt_max = 0.0;
    for (size_t i = 1; i <= last; ++i)
        dt_max = std::max(dt_max, times[i] - times[i - 1]);
    if (omega_eff > 0 && dt_max > 2.0 * pi / (16.0 * omega_eff))
        throw std::invalid_argument(
            "trajectory sampling coarser than 16 points per oscillation");

    // Trapezoid over the rotating-frame integrand, per resonator.
    Vec integral = Vec::Zero(N);
    for (size_t i = 0; i + 1 <= last; ++i) {
        double h = times[i + 1] - times[i];
        Complex p0 = std::polar(1.0, (ak - k0) * c * times[i]);
        Complex p1 = std::polar(1.0, (ak - k0) * c * times[i + 1]);
        integral += 0.5 * h *
                    (p0 * beta_trajectory.states[i].values +
                     p1 * beta_trajectory.states[i + 1].values);
    }
    double geff = params.coupling / std::sqrt(2.0);
    Complex sum = 0.0;
    for (int n = 0; n < N; ++n)
        sum += std::polar(1.0, -ak * sgn * params.spacing * idx[n]) * integral[n];
    return Complex(0.0, -1.0) * geff * std::polar(1.0, -ak * c * t) * sum;
}

EmissionSpectra emission_spectra(const FullState& state, const WaveguideGrid& grid) {
    EmissionSpectra out;
    int Mb = grid.modes_per_band;
    double p_fwd = 0.0, p_bwd = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
        double p = std::norm(state.field[j]);
        double dens = p / grid.weights[j];
        if (grid.branch[j] > 0) {
            out.k_forward.push_back(grid.wavenumbers[j]);
            out.forward.push_back(dens);
            p_fwd += p;
        } else {
            out.k_backward.push_back(grid.wavenumbers[j]);
            out.backward.push_back(dens);
            p_bwd += p;
        }
    }
    double tot = p_fwd + p_bwd;
    out.asymmetry = (tot > 1e-300) ? (p_fwd - p_bwd) / tot : 0.0;
    // Intra-branch imbalance about the band center (pairs mirrored in q).
    auto skew = [&](const std::vector<double>& dens) {
        double num = 0.0, den = 0.0;
        for (int j = 0; j < Mb / 2; ++j) {
            double a = dens[j], b = dens[Mb - 1 - j];
            num += std::abs(a - b);
            den += a + b;
        }
        return (den > 1e-300) ? num / den : 0.0;
    };
    out.skew_forward = skew(out.forward);
    out.skew_backward = skew(out.backward);
    return out;
}

}  // namespace mrqmem
