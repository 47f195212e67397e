#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace mrqmem {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;

// Physical configuration of the resonator comb and waveguide.
struct SystemParams {
    int n_resonators = 1;          // N
    double comb_spacing = 1.0;     // Delta, rad per unit time
    double coupling = 0.0;         // g
    double light_speed = 1.0;      // c
    double carrier_wavenumber = 1.0;  // k0
    double band_halfwidth = 0.5;   // delta0
    double spacing = 2.0 * pi;     // z, defaults to 2*pi/k0

    double collective_rate() const {  // Gamma = pi g^2 / c
        return pi * coupling * coupling / light_speed;
    }
    double echo_time() const { return 2.0 * pi / comb_spacing; }
};

enum class Frame { lab, rotating };

// Complex amplitudes over the symmetric resonator index set.
struct AmplitudeVector {
    Vec values;
    Frame frame = Frame::rotating;

    int size() const { return static_cast<int>(values.size()); }
};

// Centered integer indices: odd N -> {-(N-1)/2..(N-1)/2}, even N -> {-N/2..N/2-1}.
std::vector<int> index_set(int n_resonators);

// Position of index n within the ordered index set; throws if out of range.
int index_position(int n, const SystemParams& params);

SystemParams build_params(int n_resonators, double comb_spacing, double coupling,
                          double light_speed, double carrier_wavenumber,
                          double band_halfwidth);

// Validates an already-populated params struct (used when z is overridden).
void validate_params(const SystemParams& params);

// c_n = (-1)^n / sqrt(N) over the centered index set.
AmplitudeVector rect_comb_init(const SystemParams& params);

// Rescale to unit norm; throws on all-zero input.
AmplitudeVector normalize(const std::vector<Complex>& values,
                          Frame frame = Frame::rotating);
AmplitudeVector normalize(const Vec& values, Frame frame = Frame::rotating);

// Rotating-frame detuning Delta * n; throws if n outside the index set.
double detuning_of(int n, const SystemParams& params);

}  // namespace mrqmem
