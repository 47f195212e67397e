#include "mrqmem/analytic.hpp"

#include <cmath>
#include <functional>

namespace mrqmem {

double collective_rate(const SystemParams& params) {
    return params.collective_rate();
}

double optimal_coupling(const SystemParams& params) {
    return std::sqrt(params.light_speed * params.comb_spacing) / pi;
}

double eta0(double g, const SystemParams& params) {
    double x = pi * pi * g * g / (params.light_speed * params.comb_spacing);
    double d = 1.0 + x;
    return 4.0 * x / (d * d);
}

namespace {

// Adaptive Simpson refinement with absolute tolerance.
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0 * tol)
        return left + right + err / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, int panels, double tol) {
    if (b <= a) return 0.0;
    double total = 0.0;
    double h = (b - a) / panels;
    double ptol = tol / panels;
    for (int i = 0; i < panels; ++i) {
        double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        double f0 = f(x0), fm = f(xm), f1 = f(x1);
        double whole = h / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson_rec(f, x0, x1, f0, fm, f1, whole, ptol, 24);
    }
    return total;
}

}  // namespace

double eta1(double t, const AmplitudeVector& init, const SystemParams& params) {
    if (t < 0) throw std::invalid_argument("eta1 requires t >= 0");
    double upper = params.comb_spacing * t / (2.0 * pi);
    if (upper == 0.0) return 0.0;
    auto idx = index_set(params.n_resonators);
    const Vec& c = init.values;
    auto integrand = [&](double tau) {
        Complex s = 0.0;
        for (size_t i = 0; i < idx.size(); ++i)
            s += c[static_cast<Eigen::Index>(i)] *
                 std::polar(1.0, 2.0 * pi * idx[i] * tau);
        return std::norm(s);
    };
    // Seed panel count resolves every integer harmonic before refinement.
    int panels = std::max(32, 8 * params.n_resonators *
                                  static_cast<int>(std::ceil(upper)));
    return integrate_adaptive(integrand, 0.0, upper, panels, 1e-10);
}

AmplitudeVector beta_analytic(double t, const AmplitudeVector& init,
                              const SystemParams& params, Eq6Form form) {
    int N = params.n_resonators;
    auto idx = index_set(N);
    double Delta = params.comb_spacing;
    double g = params.coupling, c = params.light_speed;
    double x = pi * pi * g * g / (c * Delta);
    double pref = (pi * g * g / (c * Delta)) / (1.0 + x);
    const Vec& c0 = init.values;
    Vec out(N);
    for (int i = 0; i < N; ++i) {
        Complex corr = 0.0;
        for (int j = 0; j < N; ++j) {
            int a = idx[i] - idx[j];
            Complex K;
            if (form == Eq6Form::derived) {
                K = (a == 0) ? Complex(Delta * t)
                             : std::sin(Delta * a * t / 2.0) / (a / 2.0) *
                                   std::polar(1.0, Delta * a * t / 2.0);
            } else {
                double at = a * t / 2.0;
                K = (std::abs(at) < 1e-12)
                        ? Complex(Delta)
                        : std::sin(Delta * at) / at * std::polar(1.0, Delta * at);
            }
            corr += K * c0[j];
        }
        Complex inner = (form == Eq6Form::derived) ? c0[i] - pref * corr
                                                   : c0[i] + pref * corr;
        out[i] = std::polar(1.0, -Delta * idx[i] * t) * inner;
    }
    return {out, Frame::rotating};
}

EfficiencyBreakdown efficiency_analytic(double t, double g,
                                        const AmplitudeVector& init,
                                        const SystemParams& params) {
    EfficiencyBreakdown b;
    b.eta0 = eta0(g, params);
    b.eta1 = eta1(t, init, params);
    b.eta = b.eta0 * b.eta1;
    return b;
}

}  // namespace mrqmem
