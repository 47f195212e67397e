#include "mrqmem/dynamics.hpp"

#include <cmath>

#include "mrqmem/analytic.hpp"

namespace mrqmem {

Series efficiency_curve(const Trajectory& trajectory) {
    Series s;
    s.times = trajectory.times;
    s.label = "efficiency";
    s.values.reserve(trajectory.states.size());
    for (const auto& st : trajectory.states)
        s.values.push_back(1.0 - resonator_norm(st));
    return s;
}

MaskedSeries energy_difference(const Trajectory& trajectory, int n1, int n2) {
    if (n1 == n2)
        throw std::invalid_argument("energy_difference requires distinct indices");
    int p1 = index_position(n1, trajectory.params);
    int p2 = index_position(n2, trajectory.params);
    MaskedSeries out;
    out.series.times = trajectory.times;
    out.series.label = "e12";
    for (const auto& st : trajectory.states) {
        double e1 = std::norm(st.values[p1]);
        double e2 = std::norm(st.values[p2]);
        double den = e1 + e2;
        if (den < 1e-30) {
            out.series.values.push_back(0.0);
            out.valid.push_back(false);
        } else {
            out.series.values.push_back((e1 - e2) / den);
            out.valid.push_back(true);
        }
    }
    return out;
}

PeakSet detect_peaks(const Series& series, double prominence_floor) {
    const auto& t = series.times;
    size_t n = series.values.size();
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = std::abs(series.values[i]);

    PeakSet out;
    size_t i = 1;
    while (i + 1 < n) {
        if (y[i - 1] < y[i]) {
            size_t j = i;
            while (j + 1 < n && y[j + 1] == y[i]) ++j;  // plateau
            if (j + 1 < n && y[j + 1] < y[i]) {
                size_t p = (i + j) / 2;
                // Topographic prominence: lowest descent before higher terrain.
                double left_min = y[p], right_min = y[p];
                for (size_t a = p; a-- > 0;) {
                    if (y[a] > y[p]) break;
                    left_min = std::min(left_min, y[a]);
                }
                for (size_t b = p + 1; b < n; ++b) {
                    if (y[b] > y[p]) break;
                    right_min = std::min(right_min, y[b]);
                }
                double prom = y[p] - std::max(left_min, right_min);
                if (prom >= prominence_floor) {
                    double ref = y[p] - 0.5 * prom;
                    double tl = t.front(), tr = t.back();
                    for (size_t a = p; a-- > 0;) {
                        if (y[a] < ref) {
                            double f = (ref - y[a]) / (y[a + 1] - y[a]);
                            tl = t[a] + f * (t[a + 1] - t[a]);
                            break;
                        }
                    }
                    for (size_t b = p + 1; b < n; ++b) {
                        if (y[b] < ref) {
                            double f = (y[b - 1] - ref) / (y[b - 1] - y[b]);
                            tr = t[b - 1] + f * (t[b] - t[b - 1]);
                            break;
                        }
                    }
                    out.peaks.push_back({t[p], y[p], tr - tl, prom});
                }
                i = j + 1;
                continue;
            }
            i = j + 1;
            continue;
        }
        ++i;
    }
    return out;
}

std::vector<SweepRow> sweep_coupling(const SystemParams& params,
                                     const std::vector<double>& g_values,
                                     const AmplitudeVector& init) {
    for (size_t i = 0; i < g_values.size(); ++i) {
        if (!(g_values[i] > 0))
            throw std::invalid_argument("sweep_coupling needs positive g values");
        if (i > 0 && g_values[i] <= g_values[i - 1])
            throw std::invalid_argument("sweep_coupling needs sorted g values");
    }
    std::vector<SweepRow> rows;
    rows.reserve(g_values.size());
    for (double g : g_values) {
        SystemParams p = params;
        p.coupling = g;
        AmplitudeVector fin = evolve_expm(init, p.echo_time(), p);
        rows.push_back({g, 1.0 - resonator_norm(fin), eta0(g, p)});
    }
    return rows;
}

Series collective_amplitude(const Trajectory& trajectory) {
    Series s;
    s.times = trajectory.times;
    s.label = "collective";
    for (const auto& st : trajectory.states)
        s.values.push_back(std::abs(st.values.sum()));
    return s;
}

}  // namespace mrqmem
