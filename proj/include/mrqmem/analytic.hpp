#pragma once

#include "mrqmem/core.hpp"

namespace mrqmem {

struct EfficiencyBreakdown {
    double eta0 = 0.0;
    double eta1 = 0.0;
    double eta = 0.0;
};

// Which closed-form kernel to evaluate. `derived` removes the spurious factor
// of t from the published kernel denominator and flips the correction sign so
// that beta(0) = c; `printed` evaluates the published formula literally.
enum class Eq6Form { derived, printed };

// Gamma = pi g^2 / c.
double collective_rate(const SystemParams& params);

// g* = sqrt(c Delta) / pi, the impedance-matching optimum.
double optimal_coupling(const SystemParams& params);

// eta0 = 4x/(1+x)^2 with x = pi^2 g^2 / (c Delta).
double eta0(double g, const SystemParams& params);

// Retrieval-completeness integral; eta1(2*pi/Delta) = 1 for any normalized init.
double eta1(double t, const AmplitudeVector& init, const SystemParams& params);

// Closed-form solution of the reduced system for the matched infinite comb.
// Exact at t = 0 for both forms; finite-N accuracy is regression-tested.
AmplitudeVector beta_analytic(double t, const AmplitudeVector& init,
                              const SystemParams& params,
                              Eq6Form form = Eq6Form::derived);

EfficiencyBreakdown efficiency_analytic(double t, double g,
                                        const AmplitudeVector& init,
                                        const SystemParams& params);

}  // namespace mrqmem
