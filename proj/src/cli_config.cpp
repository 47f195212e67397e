#include "mrqmem/cli_config.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "mrqmem/analytic.hpp"
#include "mrqmem/dynamics.hpp"
#include "mrqmem/full_model.hpp"
#include "mrqmem/reduced_ode.hpp"

namespace mrqmem {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& where) {
    double out;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(where + ": expected a number, got '" + v + "'");
    return out;
}

int parse_int(const std::string& v, const std::string& where) {
    int out;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(where + ": expected an integer, got '" + v + "'");
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<Complex> parse_complex_list(const std::string& v,
                                        const std::string& where) {
    // Space- or semicolon-separated re,im pairs.
    std::string norm = v;
    std::replace(norm.begin(), norm.end(), ';', ' ');
    std::stringstream ss(norm);
    std::string pair;
    std::vector<Complex> out;
    while (ss >> pair) {
        auto parts = split(pair, ',');
        if (parts.size() != 2)
            throw ConfigError(where + ": expected re,im pair, got '" + pair + "'");
        out.emplace_back(parse_double(parts[0], where), parse_double(parts[1], where));
    }
    if (out.empty()) throw ConfigError(where + ": empty amplitude list");
    return out;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value,
             const std::string& where) {
    if (key == "model") cfg.model = value;
    else if (key == "n") cfg.n = parse_int(value, where);
    else if (key == "delta") cfg.delta = parse_double(value, where);
    else if (key == "units") cfg.units = value;
    else if (key == "g") cfg.g = parse_double(value, where);
    else if (key == "c") cfg.c = parse_double(value, where);
    else if (key == "k0") cfg.k0 = parse_double(value, where);
    else if (key == "delta0") cfg.delta0 = parse_double(value, where);
    else if (key == "init") cfg.init = value;
    else if (key == "init_values") cfg.init_values = parse_complex_list(value, where);
    else if (key == "t_max") cfg.t_max = parse_double(value, where);
    else if (key == "samples") cfg.samples = parse_int(value, where);
    else if (key == "modes_per_band") cfg.modes_per_band = parse_int(value, where);
    else if (key == "outputs") cfg.outputs = split(value, ',');
    else if (key == "n1") cfg.n1 = parse_int(value, where);
    else if (key == "n2") cfg.n2 = parse_int(value, where);
    else if (key == "prominence") cfg.prominence = parse_double(value, where);
    else if (key == "g_min") cfg.g_min = parse_double(value, where);
    else if (key == "g_max") cfg.g_max = parse_double(value, where);
    else if (key == "count") cfg.count = parse_int(value, where);
    else if (key == "grid") cfg.grid = value;
    else if (key == "out") cfg.out_dir = value;
    else if (key == "jobs") cfg.jobs = parse_int(value, where);
    else throw ConfigError(where + ": unknown key '" + key + "'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        set_key(cfg, key, value, where);
    }
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
    set_key(cfg, key, value, "--" + key);
}

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string canonical_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "model=" << cfg.model << "\nn=" << cfg.n
       << "\ndelta=" << format_double(cfg.delta) << "\nunits=" << cfg.units
       << "\ng=" << format_double(cfg.g) << "\nc=" << format_double(cfg.c)
       << "\nk0=" << format_double(cfg.k0)
       << "\ndelta0=" << format_double(cfg.delta0) << "\ninit=" << cfg.init;
    os << "\ninit_values=";
    for (const auto& z : cfg.init_values)
        os << format_double(z.real()) << "," << format_double(z.imag()) << " ";
    os << "\nt_max=" << format_double(cfg.t_max) << "\nsamples=" << cfg.samples
       << "\nmodes_per_band=" << cfg.modes_per_band << "\noutputs=";
    for (const auto& o : cfg.outputs) os << o << ",";
    os << "\nn1=" << cfg.n1 << "\nn2=" << cfg.n2
       << "\nprominence=" << format_double(cfg.prominence)
       << "\ng_min=" << format_double(cfg.g_min)
       << "\ng_max=" << format_double(cfg.g_max) << "\ncount=" << cfg.count
       << "\ngrid=" << cfg.grid << "\n";
    return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
    std::string s = canonical_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

ResolvedRun resolve(const RunConfig& cfg) {
    ResolvedRun run;
    run.cfg = cfg;
    if (cfg.model != "analytic" && cfg.model != "reduced" && cfg.model != "full")
        throw ConfigError("model: must be analytic, reduced, or full");
    if (cfg.units != "rad" && cfg.units != "hz")
        throw ConfigError("units: must be rad or hz");
    if (cfg.grid != "log" && cfg.grid != "linear")
        throw ConfigError("grid: must be log or linear");
    if (cfg.samples < 2) throw ConfigError("samples: must be >= 2");
    if (!(cfg.t_max > 0)) throw ConfigError("t_max: must be > 0");
    if (cfg.jobs < 1) throw ConfigError("jobs: must be >= 1");

    double delta_rad = (cfg.units == "hz") ? 2.0 * pi * cfg.delta : cfg.delta;
    SystemParams p;
    p.n_resonators = cfg.n;
    p.comb_spacing = delta_rad;
    p.light_speed = cfg.c;
    p.carrier_wavenumber = cfg.k0;
    p.band_halfwidth = cfg.delta0;
    p.spacing = 2.0 * pi / cfg.k0;
    p.coupling = (cfg.g < 0)
                     ? std::sqrt(cfg.c * delta_rad) / pi  // matching optimum
                     : cfg.g;
    try {
        validate_params(p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    run.params = p;

    if (cfg.init == "rect") {
        run.init = rect_comb_init(p);
    } else if (cfg.init == "custom") {
        if (static_cast<int>(cfg.init_values.size()) != cfg.n)
            throw ConfigError("init_values: expected " + std::to_string(cfg.n) +
                              " amplitudes, got " +
                              std::to_string(cfg.init_values.size()));
        try {
            run.init = normalize(cfg.init_values);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("init_values: ") + e.what());
        }
        double raw = 0.0;
        for (const auto& z : cfg.init_values) raw += std::norm(z);
        run.init_was_rescaled = std::abs(raw - 1.0) > 1e-12;
    } else {
        throw ConfigError("init: must be rect or custom");
    }

    for (const auto& o : cfg.outputs) {
        if (o != "amplitudes" && o != "efficiency" && o != "e12" &&
            o != "spectra" && o != "collective")
            throw ConfigError("outputs: unknown output '" + o + "'");
        if (o == "spectra" && cfg.model != "full")
            throw ConfigError("outputs: spectra requires model = full");
        if (o == "e12") {
            if (cfg.n1 == cfg.n2) throw ConfigError("e12: n1 and n2 must differ");
            try {
                index_position(cfg.n1, p);
                index_position(cfg.n2, p);
            } catch (const std::out_of_range& e) {
                throw ConfigError(std::string("e12: ") + e.what());
            }
        }
    }
    if (cfg.model == "full" && cfg.modes_per_band < 8)
        throw ConfigError("modes_per_band: must be >= 8");
    return run;
}

namespace {

std::filesystem::path output_dir(const RunConfig& cfg) {
    std::string dir = cfg.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("MR_QMEM_OUT");
        dir = env ? env : ".";
    }
    std::filesystem::create_directories(dir);
    return dir;
}

std::string hash_hex(const RunConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::string& hash,
              const std::string& header)
        : path_(path.string()), out_(path, std::ios::binary) {
        if (!out_) throw ConfigError("cannot open output file '" + path_ + "'");
        out_ << "# mr-qmem config-hash=" << hash << "\n" << header << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
};

void check_finite(double v, const std::string& what) {
    if (!std::isfinite(v))
        throw NumericalError("non-finite value in " + what);
}

// Rotating-frame resonator trajectory for the configured model, plus the
// final full-model state when the model is `full`.
struct ModelRun {
    Trajectory traj;
    bool has_full_state = false;
    FullState final_state;
    WaveguideGrid grid;
};

ModelRun compute_trajectory(const ResolvedRun& run) {
    const auto& cfg = run.cfg;
    const auto& p = run.params;
    auto grid = uniform_grid(cfg.t_max * p.echo_time(), cfg.samples);
    ModelRun out;
    if (cfg.model == "reduced") {
        out.traj = evolve_trajectory(run.init, grid, p);
    } else if (cfg.model == "analytic") {
        out.traj.times = grid;
        out.traj.params = p;
        for (double t : grid)
            out.traj.states.push_back(beta_analytic(t, run.init, p));
    } else {
        out.grid = discretize_waveguide(p, cfg.modes_per_band);
        FullPropagator prop(out.grid, p);
        FullState init = make_initial_state(run.init, out.grid);
        out.traj.times = grid;
        out.traj.params = p;
        for (double t : grid) {
            FullState st = prop.propagate(init, t);
            out.traj.states.push_back(rotating_resonators(st, p));
            if (t == grid.back()) {
                out.final_state = st;
                out.has_full_state = true;
            }
        }
    }
    for (const auto& st : out.traj.states)
        for (Eigen::Index i = 0; i < st.values.size(); ++i)
            if (!std::isfinite(st.values[i].real()) ||
                !std::isfinite(st.values[i].imag()))
                throw NumericalError("non-finite amplitude in trajectory");
    return out;
}

}  // namespace

std::vector<std::string> run_simulate(const ResolvedRun& run) {
    const auto& cfg = run.cfg;
    if (run.init_was_rescaled)
        std::cerr << "note: custom init renormalized to unit norm\n";
    auto dir = output_dir(cfg);
    std::string hash = hash_hex(cfg);
    ModelRun mr = compute_trajectory(run);
    double echo = run.params.echo_time();
    std::vector<std::string> written;

    for (const auto& o : cfg.outputs) {
        if (o == "amplitudes") {
            auto idx = index_set(cfg.n);
            std::string header = "time,time_echo";
            for (int n : idx)
                header += ",re_" + std::to_string(n) + ",im_" + std::to_string(n);
            CsvWriter w(dir / "amplitudes.csv", hash, header);
            for (size_t i = 0; i < mr.traj.times.size(); ++i) {
                std::vector<std::string> cells{
                    format_double(mr.traj.times[i]),
                    format_double(mr.traj.times[i] / echo)};
                for (Eigen::Index j = 0; j < mr.traj.states[i].values.size(); ++j) {
                    cells.push_back(format_double(mr.traj.states[i].values[j].real()));
                    cells.push_back(format_double(mr.traj.states[i].values[j].imag()));
                }
                w.row(cells);
            }
            written.push_back(w.path());
        } else if (o == "efficiency") {
            Series s = efficiency_curve(mr.traj);
            CsvWriter w(dir / "efficiency.csv", hash, "time,time_echo,efficiency");
            for (size_t i = 0; i < s.times.size(); ++i) {
                check_finite(s.values[i], "efficiency");
                w.row({format_double(s.times[i]), format_double(s.times[i] / echo),
                       format_double(s.values[i])});
            }
            written.push_back(w.path());
        } else if (o == "e12") {
            MaskedSeries ms = energy_difference(mr.traj, cfg.n1, cfg.n2);
            CsvWriter w(dir / "e12.csv", hash, "time,e12,valid");
            for (size_t i = 0; i < ms.series.times.size(); ++i) {
                check_finite(ms.series.values[i], "e12");
                w.row({format_double(ms.series.times[i]),
                       format_double(ms.series.values[i]),
                       ms.valid[i] ? "1" : "0"});
            }
            written.push_back(w.path());
        } else if (o == "collective") {
            Series s = collective_amplitude(mr.traj);
            CsvWriter w(dir / "collective.csv", hash, "time,time_echo,collective");
            for (size_t i = 0; i < s.times.size(); ++i) {
                check_finite(s.values[i], "collective");
                w.row({format_double(s.times[i]), format_double(s.times[i] / echo),
                       format_double(s.values[i])});
            }
            written.push_back(w.path());
        } else if (o == "spectra") {
            EmissionSpectra sp = emission_spectra(mr.final_state, mr.grid);
            CsvWriter w(dir / "spectra.csv", hash, "k,branch,density");
            for (size_t i = 0; i < sp.k_backward.size(); ++i) {
                check_finite(sp.backward[i], "spectra");
                w.row({format_double(sp.k_backward[i]), "backward",
                       format_double(sp.backward[i])});
            }
            for (size_t i = 0; i < sp.k_forward.size(); ++i) {
                check_finite(sp.forward[i], "spectra");
                w.row({format_double(sp.k_forward[i]), "forward",
                       format_double(sp.forward[i])});
            }
            written.push_back(w.path());
            std::cout << "spectra: asymmetry=" << format_double(sp.asymmetry)
                      << " skew_forward=" << format_double(sp.skew_forward)
                      << " skew_backward=" << format_double(sp.skew_backward)
                      << "\n";
        }
    }
    return written;
}

std::vector<std::string> run_sweep(const ResolvedRun& run) {
    const auto& cfg = run.cfg;
    const auto& p = run.params;
    double gstar = optimal_coupling(p);
    double g_min = (cfg.g_min > 0) ? cfg.g_min : gstar / 10.0;
    double g_max = (cfg.g_max > 0) ? cfg.g_max : gstar * 10.0;
    if (!(g_min > 0) || !(g_max > g_min))
        throw ConfigError("sweep: need 0 < g_min < g_max");
    if (cfg.count < 3) throw ConfigError("sweep: count must be >= 3");

    std::vector<double> gs(cfg.count);
    for (int i = 0; i < cfg.count; ++i) {
        double f = static_cast<double>(i) / (cfg.count - 1);
        gs[i] = (cfg.grid == "log")
                    ? g_min * std::pow(g_max / g_min, f)
                    : g_min + f * (g_max - g_min);
    }

    std::vector<SweepRow> rows(gs.size());
    int jobs = std::min<int>(cfg.jobs, static_cast<int>(gs.size()));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < gs.size(); i = next.fetch_add(1)) {
            SystemParams pp = p;
            pp.coupling = gs[i];
            AmplitudeVector fin = evolve_expm(run.init, pp.echo_time(), pp);
            rows[i] = {gs[i], 1.0 - resonator_norm(fin), eta0(gs[i], pp)};
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    auto dir = output_dir(cfg);
    CsvWriter w(dir / "sweep.csv", hash_hex(cfg), "g,eta_echo,eta0_analytic");
    size_t best = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        check_finite(rows[i].eta_echo, "sweep");
        w.row({format_double(rows[i].g), format_double(rows[i].eta_echo),
               format_double(rows[i].eta0_analytic)});
        if (rows[i].eta_echo > rows[best].eta_echo) best = i;
    }
    double rel = std::abs(rows[best].g - gstar) / gstar;
    std::cout << "sweep: argmax g=" << format_double(rows[best].g)
              << " eta=" << format_double(rows[best].eta_echo)
              << " rel_distance_to_gstar=" << format_double(rel) << "\n";
    if (best == 0 || best == rows.size() - 1)
        std::cerr << "warning: sweep argmax lies on the grid boundary\n";
    return {w.path()};
}

std::vector<std::string> run_compare(const ResolvedRun& run) {
    const auto& cfg = run.cfg;
    const auto& p = run.params;
    auto grid_t = uniform_grid(cfg.t_max * p.echo_time(), cfg.samples);

    Trajectory reduced = evolve_trajectory(run.init, grid_t, p);
    auto wg = discretize_waveguide(p, cfg.modes_per_band);
    FullPropagator prop(wg, p);
    FullState init = make_initial_state(run.init, wg);

    double scale = 0.0;
    for (const auto& st : reduced.states)
        scale = std::max(scale, st.values.cwiseAbs().maxCoeff());
    if (scale <= 0) scale = 1.0;

    auto dir = output_dir(cfg);
    CsvWriter w(dir / "compare.csv", hash_hex(cfg),
                "time,time_echo,dev_analytic_reduced,dev_reduced_full");
    double echo = p.echo_time();
    double max_ar = 0.0, max_rf = 0.0;
    for (size_t i = 0; i < grid_t.size(); ++i) {
        double t = grid_t[i];
        Vec ba = beta_analytic(t, run.init, p).values;
        Vec bf = rotating_resonators(prop.propagate(init, t), p).values;
        const Vec& br = reduced.states[i].values;
        double dar = (ba - br).cwiseAbs().maxCoeff() / scale;
        double drf = (br - bf).cwiseAbs().maxCoeff() / scale;
        check_finite(dar, "compare");
        check_finite(drf, "compare");
        max_ar = std::max(max_ar, dar);
        max_rf = std::max(max_rf, drf);
        w.row({format_double(t), format_double(t / echo), format_double(dar),
               format_double(drf)});
    }
    std::cout << "compare: N=" << cfg.n
              << " max_dev_analytic_reduced=" << format_double(max_ar)
              << " max_dev_reduced_full=" << format_double(max_rf) << "\n";
    return {w.path()};
}

std::vector<std::string> run_peaks(const ResolvedRun& run) {
    const auto& cfg = run.cfg;
    const auto& p = run.params;
    double per_interval = cfg.samples / (cfg.t_max * cfg.n);
    if (per_interval < 64)
        throw ConfigError("peaks: series undersampled; need >= 64 points per "
                          "2*pi/(N*Delta) interval");
    if (cfg.n1 == cfg.n2) throw ConfigError("peaks: n1 and n2 must differ");
    ModelRun mr = compute_trajectory(run);
    MaskedSeries ms = energy_difference(mr.traj, cfg.n1, cfg.n2);
    PeakSet ps = detect_peaks(ms.series, cfg.prominence);

    auto dir = output_dir(cfg);
    CsvWriter w(dir / "peaks.csv", hash_hex(cfg), "time,height,width");
    double max_width = 0.0;
    for (const auto& pk : ps.peaks) {
        w.row({format_double(pk.time), format_double(pk.height),
               format_double(pk.width)});
        max_width = std::max(max_width, pk.width);
    }
    double pulse = 2.0 * pi / (cfg.n * p.comb_spacing);
    std::cout << "peaks: count=" << ps.peaks.size()
              << " max_width=" << format_double(max_width)
              << " pulse_duration=" << format_double(pulse) << "\n";
    return {w.path()};
}

}  // namespace mrqmem
