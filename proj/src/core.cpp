#include "mrqmem/core.hpp"

#include <cmath>
#include <string>

namespace mrqmem {

std::vector<int> index_set(int n_resonators) {
    std::vector<int> out;
    out.reserve(n_resonators);
    int lo = (n_resonators % 2 == 1) ? -(n_resonators - 1) / 2 : -n_resonators / 2;
    for (int i = 0; i < n_resonators; ++i) out.push_back(lo + i);
    return out;
}

int index_position(int n, const SystemParams& params) {
    int N = params.n_resonators;
    int lo = (N % 2 == 1) ? -(N - 1) / 2 : -N / 2;
    int pos = n - lo;
    if (pos < 0 || pos >= N)
        throw std::out_of_range("resonator index " + std::to_string(n) +
                                " outside the centered set for N=" + std::to_string(N));
    return pos;
}

void validate_params(const SystemParams& p) {
    if (p.n_resonators < 1) throw std::invalid_argument("n_resonators must be >= 1");
    if (!(p.comb_spacing > 0)) throw std::invalid_argument("comb_spacing must be > 0");
    if (p.coupling < 0) throw std::invalid_argument("coupling must be >= 0");
    if (!(p.light_speed > 0)) throw std::invalid_argument("light_speed must be > 0");
    if (!(p.carrier_wavenumber > 0))
        throw std::invalid_argument("carrier_wavenumber must be > 0");
    if (!(p.band_halfwidth > 0) || !(p.band_halfwidth < p.carrier_wavenumber))
        throw std::invalid_argument("band_halfwidth must satisfy 0 < delta0 < k0");
    if (!(p.spacing > 0)) throw std::invalid_argument("spacing must be > 0");
    if (!std::isfinite(p.collective_rate()))
        throw std::invalid_argument("collective rate is not finite");
    double comb_width = p.n_resonators * p.comb_spacing / p.light_speed;
    if (comb_width >= 2.0 * p.band_halfwidth)
        throw std::invalid_argument(
            "comb width N*Delta/c = " + std::to_string(comb_width) +
            " does not fit in the waveguide band 2*delta0 = " +
            std::to_string(2.0 * p.band_halfwidth));
}

SystemParams build_params(int n_resonators, double comb_spacing, double coupling,
                          double light_speed, double carrier_wavenumber,
                          double band_halfwidth) {
    SystemParams p;
    p.n_resonators = n_resonators;
    p.comb_spacing = comb_spacing;
    p.coupling = coupling;
    p.light_speed = light_speed;
    p.carrier_wavenumber = carrier_wavenumber;
    p.band_halfwidth = band_halfwidth;
    p.spacing = 2.0 * pi / carrier_wavenumber;
    validate_params(p);
    return p;
}

AmplitudeVector rect_comb_init(const SystemParams& params) {
    auto idx = index_set(params.n_resonators);
    Vec v(params.n_resonators);
    double amp = 1.0 / std::sqrt(static_cast<double>(params.n_resonators));
    for (int i = 0; i < params.n_resonators; ++i)
        v[i] = (idx[i] % 2 == 0) ? amp : -amp;
    return {v, Frame::rotating};
}

AmplitudeVector normalize(const Vec& values, Frame frame) {
    double norm = values.norm();
    if (norm == 0.0) throw std::invalid_argument("cannot normalize an all-zero vector");
    return {values / norm, frame};
}

AmplitudeVector normalize(const std::vector<Complex>& values, Frame frame) {
    Vec v = Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
    return normalize(v, frame);
}

double detuning_of(int n, const SystemParams& params) {
    index_position(n, params);
    return params.comb_spacing * n;
}

}  // namespace mrqmem
