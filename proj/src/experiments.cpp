#include "ckdv/experiments.hpp"

#include "ckdv/bourgain.hpp"
#include "ckdv/diagnostics.hpp"
#include "ckdv/dynamics.hpp"
#include "ckdv/field_io.hpp"
#include "ckdv/initial_data.hpp"
#include "ckdv/operator_lab.hpp"
#include "ckdv/picard.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

namespace ckdv {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kProgramVersion = "1.0.0";

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_manifest(const fs::path& dir, const std::string& name, const Config& cfg,
                    const RunOptions& opts, double wall_seconds) {
    json j;
    j["experiment"] = name;
    j["seed"] = opts.seed;
    j["versions"] = {{"program", kProgramVersion}, {"field_dump", kFieldDumpVersion}};
    j["wall_time_seconds"] = wall_seconds;
    json c = json::object();
    for (const auto& [k, v] : cfg.entries()) c[k] = v;
    j["config"] = c;
    write_json(dir / "manifest.json", j);
}

// Minimal static SVG: one polyline per named series over a shared x-axis.
std::string svg_plot(const std::vector<double>& xs,
                     const std::map<std::string, std::vector<double>>& series,
                     const std::string& x_label, bool log_y) {
    constexpr int w = 640, h = 400, ml = 60, mr = 20, mt = 20, mb = 40;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double x : xs) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    auto yval = [log_y](double v) {
        return log_y ? std::log10(std::max(std::abs(v), 1e-18)) : v;
    };
    for (const auto& [name, ys] : series)
        for (double y : ys) {
            ymin = std::min(ymin, yval(y));
            ymax = std::max(ymax, yval(y));
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;

    auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
    };
    auto py = [&](double y) {
        return h - mb - (yval(y) - ymin) / (ymax - ymin) * (h - mt - mb);
    };

    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "'>\n<rect x='" << ml << "' y='" << mt << "' width='" << (w - ml - mr)
        << "' height='" << (h - mt - mb) << "' fill='none' stroke='#444'/>\n";
    int ci = 0;
    int label_y = mt + 14;
    for (const auto& [name, ys] : series) {
        const char* color = colors[ci % 6];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.2' points='";
        for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
            out << px(xs[i]) << "," << py(ys[i]) << " ";
        out << "'/>\n<text x='" << (w - mr - 150) << "' y='" << label_y
            << "' fill='" << color << "' font-size='12'>" << name << "</text>\n";
        label_y += 14;
        ++ci;
    }
    out << "<text x='" << (w / 2) << "' y='" << (h - 8) << "' font-size='12' "
        << "text-anchor='middle'>" << x_label << (log_y ? " (log10 y)" : "") << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

GridPtr grid_from(const Config& cfg, std::size_t def_n = 256, double def_l = 100.0) {
    const auto n = static_cast<std::size_t>(cfg.get_int("grid.N", static_cast<std::int64_t>(def_n)));
    const double l = cfg.get_double("grid.L", def_l);
    try {
        return make_grid(n, l);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid.N/grid.L: ") + e.what());
    }
}

OriginalCoefficients system_from(const Config& cfg) {
    OriginalCoefficients oc;
    oc.a1 = cfg.get_double("system.a1", 0.0);
    oc.a2 = cfg.get_double("system.a2", 0.0);
    oc.a3 = cfg.get_double("system.a3", 0.0);
    oc.b1 = cfg.get_double("system.b1", 1.0);
    oc.b2 = cfg.get_double("system.b2", 1.0);
    const auto violations = validate(oc);
    if (!violations.empty()) {
        std::string msg = "system.{a1,a2,a3,b1,b2}: invalid coefficients:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw ConfigError(msg);
    }
    return oc;
}

std::pair<Field, Field> data_from(const Config& cfg, const GridPtr& grid, double a_coef) {
    const std::string kind = cfg.get_string("data.kind", "gaussian");
    const double eps = cfg.get_double("data.eps", 0.5);
    const double amplitude = cfg.get_double("data.amplitude", 1.0);
    const auto weights = cfg.get_double_list("data.weights", {1.0, 0.0});
    if (weights.size() != 2) throw ConfigError("data.weights: expected two entries");
    try {
        Field base{grid};
        if (kind == "gaussian") {
            base = dirac_approx(grid, eps, DiracKind::Gaussian);
        } else if (kind == "band_limited") {
            base = dirac_approx(grid, eps, DiracKind::BandLimited);
        } else if (kind == "pv") {
            base = pv_reciprocal(grid, eps);
        } else if (kind == "soliton") {
            base = soliton(grid, cfg.get_double("data.kappa", 1.0),
                           cfg.get_double("data.x0", 0.0), a_coef);
        } else if (kind == "zero") {
            // base stays zero
        } else if (kind == "file") {
            const auto dump = from_file(cfg.get_string("data.path"));
            return {dump.u, dump.v};
        } else {
            throw ConfigError("data.kind: unknown kind '" + kind + "'");
        }
        return {(amplitude * weights[0]) * base, (amplitude * weights[1]) * base};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("data.*: " + std::string(e.what()));
    }
}

DiagnosticsSeries norm_series(const Trajectory& traj) {
    DiagnosticsSeries s;
    for (const auto& st : traj.states) {
        s.append(st.t);
        s.channel("mass_u").push_back(st.u.grid()->length() * st.u.coeffs()[0].real());
        s.channel("mass_v").push_back(st.v.grid()->length() * st.v.coeffs()[0].real());
        s.channel("l2_u").push_back(st.u.l2_norm());
        s.channel("l2_v").push_back(st.v.l2_norm());
        s.channel("h1_u").push_back(st.u.sobolev_norm(1.0));
        s.channel("h1_v").push_back(st.v.sobolev_norm(1.0));
    }
    return s;
}

void merge_series(DiagnosticsSeries& into, const DiagnosticsSeries& from) {
    // channels from a series sampled on a subset of `into.times`, padded with
    // the nearest available value so the CSV stays rectangular
    for (const auto& [name, vals] : from.channels) {
        auto& c = into.channel(name);
        c.assign(into.times.size(), 0.0);
        std::size_t j = 0;
        for (std::size_t i = 0; i < into.times.size(); ++i) {
            while (j + 1 < from.times.size() && from.times[j + 1] <= into.times[i] + 1e-12)
                ++j;
            c[i] = vals.empty() ? 0.0 : vals[j];
        }
    }
}

void write_spectrum_plot(const fs::path& path, const Field& f) {
    const auto& xi = f.grid()->xi();
    std::vector<double> xs;
    std::map<std::string, std::vector<double>> series;
    auto& amp = series["spectrum"];
    for (std::size_t k = 0; k < f.size() / 2; ++k) {
        xs.push_back(xi[k]);
        amp.push_back(std::abs(f.coeffs()[k]));
    }
    write_text(path, svg_plot(xs, series, "xi", true));
}

struct ExperimentOutcome {
    bool fault = false;
    bool checks_passed = true;
    std::string message;
};

ExperimentOutcome exp_simulate(const Config& cfg, const RunOptions& opts,
                               bool with_diagnostics) {
    const auto oc = system_from(cfg);
    auto [rc, diag] = reduce(oc);
    auto grid = grid_from(cfg);
    auto [u0, v0] = data_from(cfg, grid, rc.a != 0.0 ? rc.a : 1.0);

    const double T = cfg.get_double("time.T", 1.0);
    const double dt = cfg.get_double("time.dt", 1e-3);
    const auto stride = static_cast<std::size_t>(cfg.get_int("time.stride", 10));
    if (!(T > 0.0) || !(dt > 0.0) || dt > T)
        throw ConfigError("time.T/time.dt: need 0 < dt <= T");

    auto result = integrate(State{u0, v0, 0.0}, T, dt, rc, {}, std::max<std::size_t>(1, stride));
    const auto& traj = result.trajectory;

    DiagnosticsSeries series = norm_series(traj);
    json summary;
    summary["final_t"] = traj.states.back().t;
    summary["snapshots"] = traj.states.size();
    summary["final_h1_u"] = traj.states.back().u.sobolev_norm(1.0);
    summary["final_h1_v"] = traj.states.back().v.sobolev_norm(1.0);
    summary["reduction_identity"] = diag.identity;

    if (with_diagnostics && !result.fault) {
        if (diag.identity) {
            const auto drift = conservation_drift(traj, oc);
            merge_series(series, drift);
            double dmax = 0.0;
            for (const auto& [name, vals] : drift.channels)
                for (double v : vals) dmax = std::max(dmax, v);
            summary["max_conservation_drift"] = dmax;
        }
        if (traj.states.size() >= 5 && traj.uniform) {
            const auto res = pde_residual(traj, rc);
            merge_series(series, res);
            double rmax = 0.0;
            for (const auto& [name, vals] : res.channels)
                for (double v : vals) rmax = std::max(rmax, v);
            summary["max_pde_residual"] = rmax;
        }
        try {
            const double cut = grid->xi_cut();
            const auto fit = analyticity_fit(traj.states.back().u, cut / 8.0, cut / 2.0);
            summary["gevrey_sigma"] = fit.sigma;
            summary["gevrey_fit_rms"] = fit.residual;
            summary["gevrey_modes"] = fit.modes;
        } catch (const std::exception& e) {
            summary["gevrey_sigma_error"] = e.what();
        }
    }

    write_text(opts.out_dir / "series.csv", series.to_csv());
    write_state_dump(opts.out_dir / "state_final.bin", traj.states.back().u,
                     traj.states.back().v, traj.states.back().t);
    if (cfg.get_bool("output.plots", false)) {
        write_spectrum_plot(opts.out_dir / "spectrum_u.svg", traj.states.back().u);
        std::map<std::string, std::vector<double>> norm_plot{
            {"h1_u", series.channel("h1_u")}, {"h1_v", series.channel("h1_v")}};
        write_text(opts.out_dir / "norms.svg", svg_plot(series.times, norm_plot, "t", false));
    }

    ExperimentOutcome out;
    if (result.fault) {
        out.fault = true;
        out.message = result.fault->message + " at t=" + std::to_string(result.fault->t);
        summary["fault"] = out.message;
    }
    write_json(opts.out_dir / "summary.json", summary);
    return out;
}

ExperimentOutcome exp_picard(const Config& cfg, const RunOptions& opts) {
    const auto oc = system_from(cfg);
    auto [rc, diag] = reduce(oc);
    auto grid = grid_from(cfg);
    auto [u0, v0] = data_from(cfg, grid, rc.a != 0.0 ? rc.a : 1.0);

    const double T = cfg.get_double("time.T", 0.1);
    const auto iterations =
        static_cast<std::size_t>(cfg.get_int("experiment.iterations", 8));
    PicardOptions popts;
    popts.s = cfg.get_double("experiment.s", 0.0);
    if (iterations < 1) throw ConfigError("experiment.iterations: need >= 1");

    const auto t_list = cfg.get_double_list("experiment.t_list", {});
    json summary;
    ExperimentOutcome out;

    if (!t_list.empty()) {
        const auto rows = contraction_vs_T(u0, v0, rc, t_list, iterations, popts);
        std::ostringstream csv;
        csv.precision(17);
        csv << "T,ratio,diverged\n";
        json jrows = json::array();
        for (const auto& r : rows) {
            csv << r.T << "," << r.ratio << "," << (r.diverged ? 1 : 0) << "\n";
            jrows.push_back({{"T", r.T}, {"ratio", r.ratio}, {"diverged", r.diverged}});
            if (r.diverged) out.checks_passed = false;
        }
        write_text(opts.out_dir / "series.csv", csv.str());
        summary["contraction_vs_T"] = jrows;
    } else {
        const auto res = picard_iterate(u0, v0, T, iterations, rc, popts);
        DiagnosticsSeries series;
        for (std::size_t n = 0; n < res.report.d.size(); ++n) {
            series.append(static_cast<double>(n + 1));
            series.channel("d_n").push_back(res.report.d[n]);
        }
        write_text(opts.out_dir / "series.csv", series.to_csv());
        write_state_dump(opts.out_dir / "state_final.bin",
                         res.trajectory.states.back().u, res.trajectory.states.back().v,
                         res.trajectory.states.back().t);
        summary["d"] = res.report.d;
        summary["ratios"] = res.report.ratios;
        summary["diverged"] = res.report.diverged;
        if (res.report.diverged) {
            out.fault = true;
            out.message = "picard iteration diverged";
        }
        for (double r : res.report.ratios)
            if (!(r < 1.0)) out.checks_passed = false;
    }
    write_json(opts.out_dir / "summary.json", summary);
    return out;
}

ExperimentOutcome exp_operator_check(const Config& cfg, const RunOptions& opts) {
    const auto n = static_cast<std::size_t>(cfg.get_int("grid.N", 256));
    const double l = cfg.get_double("grid.L", 40.0);
    auto grid = make_grid(n, l);
    const auto nt = static_cast<std::size_t>(cfg.get_int("experiment.nt", 33));
    const double dt = cfg.get_double("experiment.dt", 0.01);
    if (nt < 17 || nt % 2 == 0) throw ConfigError("experiment.nt: need odd nt >= 17");

    auto block = sample_block(grid, 0.05, dt, nt, [](double x, double t) {
        return std::exp(-x * x) * std::exp(-t * t) * (1.0 + 0.3 * std::sin(x));
    });

    json checks = json::array();
    bool all_pass = true;
    auto add = [&](const std::string& name, double residual, double tol) {
        const bool pass = residual <= tol;
        all_pass = all_pass && pass;
        checks.push_back(
            {{"identity", name}, {"residual", residual}, {"tolerance", tol}, {"pass", pass}});
    };
    add("[L,P] = 3L", commutator_residual(CommutatorKind::LP, block), 1e-6);
    add("[L,J] = 0", commutator_residual(CommutatorKind::LJ, block), 1e-6);
    add("(P+3) dx^3 = dx^3 P", commutator_residual(CommutatorKind::P3dx3, block), 1e-6);

    bool multinomial_ok = true;
    for (unsigned k = 0; k <= 10; ++k)
        multinomial_ok = multinomial_ok && (multinomial_weight_sum(k) == (1ull << (2 * k)));
    all_pass = all_pass && multinomial_ok;
    checks.push_back({{"identity", "sum of multinomial weights = 4^k, k <= 10"},
                      {"residual", multinomial_ok ? 0.0 : 1.0},
                      {"tolerance", 0.0},
                      {"pass", multinomial_ok}});

    // Leibniz form vs multinomial expansion on a separable analytic block
    ReducedCoefficients rc;
    rc.a = 2.0;
    auto ublock = sample_block(grid, 0.05, dt, nt, [](double x, double t) {
        return std::exp(-x * x) * (1.0 + t);
    });
    for (unsigned k = 0; k <= 2; ++k) {
        std::vector<Field> pu;
        SpaceTimeBlock cur = ublock;
        pu.push_back(cur.slices[cur.center_index()]);
        for (unsigned j = 1; j <= k; ++j) {
            cur = apply_P(cur);
            pu.push_back(cur.slices[cur.center_index()]);
        }
        const std::vector<Field> pv(pu.size(), Field{grid});
        const auto triple = bk_expansion(pu, pv, rc, k);
        const Field direct = leibniz_direct(ublock, rc, k);
        const double ref = std::max(direct.l2_norm(), 1e-300);
        add("leibniz k=" + std::to_string(k), (triple.b1 - direct).l2_norm() / ref, 1e-6);
    }

    json summary;
    summary["checks"] = checks;
    summary["all_pass"] = all_pass;
    write_json(opts.out_dir / "summary.json", summary);

    std::ostringstream csv;
    csv << "identity,residual,pass\n";
    for (const auto& c : checks)
        csv << "\"" << c["identity"].get<std::string>() << "\","
            << c["residual"].get<double>() << "," << (c["pass"].get<bool>() ? 1 : 0) << "\n";
    write_text(opts.out_dir / "series.csv", csv.str());

    ExperimentOutcome out;
    out.checks_passed = all_pass;
    return out;
}

ExperimentOutcome exp_bilinear_probe(const Config& cfg, const RunOptions& opts) {
    auto grid = grid_from(cfg, 128, 50.0);
    BilinearProbeConfig pc;
    pc.s = cfg.get_double("experiment.s", pc.s);
    pc.b = cfg.get_double("experiment.b", pc.b);
    pc.b_prime = cfg.get_double("experiment.b_prime", pc.b_prime);
    pc.trials = static_cast<std::size_t>(cfg.get_int("experiment.trials", 100));
    pc.nt = static_cast<std::size_t>(cfg.get_int("experiment.nt", 64));
    pc.t_span = cfg.get_double("experiment.t_span", pc.t_span);
    pc.xi_band = cfg.get_double("experiment.xi_band", pc.xi_band);
    pc.tau_band = cfg.get_double("experiment.tau_band", pc.tau_band);
    pc.seed = opts.seed;

    BilinearProbeStats stats;
    try {
        stats = bilinear_probe(grid, pc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("experiment.{s,b,b_prime}: ") + e.what());
    }

    DiagnosticsSeries series;
    for (std::size_t i = 0; i < stats.ratios.size(); ++i) {
        series.append(static_cast<double>(i + 1));
        series.channel("ratio").push_back(stats.ratios[i]);
    }
    write_text(opts.out_dir / "series.csv", series.to_csv());

    json summary;
    summary["max_ratio"] = stats.max_ratio;
    summary["median_ratio"] = stats.median_ratio;
    summary["skipped"] = stats.skipped;
    summary["trials"] = pc.trials;
    write_json(opts.out_dir / "summary.json", summary);

    ExperimentOutcome out;
    out.checks_passed = std::isfinite(stats.max_ratio) && stats.max_ratio > 0.0;
    return out;
}

ExperimentOutcome exp_refine(const Config& cfg, const RunOptions& opts) {
    const auto oc = system_from(cfg);
    auto [rc, diag] = reduce(oc);
    RefinementConfig rcfg;
    rcfg.n = static_cast<std::size_t>(cfg.get_int("grid.N", 4096));
    rcfg.length = cfg.get_double("grid.L", 300.0);
    rcfg.dt = cfg.get_double("time.dt", 1e-3);
    rcfg.window_center = cfg.get_double("experiment.window_center", 2.0);
    rcfg.window_half_width = cfg.get_double("experiment.window_half_width", 6.0);
    rcfg.amplitude = cfg.get_double("data.amplitude", 1.0);
    rcfg.rc = rc;
    const double t_probe = cfg.get_double("experiment.t_probe", 0.5);
    const auto eps_list = cfg.get_double_list("experiment.eps_list", {0.4, 0.2, 0.1, 0.05});

    std::vector<RefinementRow> rows;
    try {
        rows = refinement_study(eps_list, t_probe, rcfg);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("experiment.eps_list/experiment.t_probe: ") + e.what());
    }

    std::ostringstream csv;
    csv.precision(17);
    csv << "eps,h2_initial,h2_probe,boundary_mass,fault\n";
    json jrows = json::array();
    bool any_fault = false;
    for (const auto& r : rows) {
        csv << r.eps << "," << r.h2_initial << "," << r.h2_probe << "," << r.boundary_mass
            << "," << (r.fault ? 1 : 0) << "\n";
        jrows.push_back({{"eps", r.eps},
                         {"h2_initial", r.h2_initial},
                         {"h2_probe", r.h2_probe},
                         {"boundary_mass", r.boundary_mass},
                         {"fault", r.fault}});
        any_fault = any_fault || r.fault;
    }
    write_text(opts.out_dir / "series.csv", csv.str());
    json summary;
    summary["rows"] = jrows;
    summary["t_probe"] = t_probe;
    write_json(opts.out_dir / "summary.json", summary);

    ExperimentOutcome out;
    out.fault = any_fault;
    if (any_fault) out.message = "one or more refinement cells faulted";
    return out;
}

RunResult run_named(const std::string& name, const Config& cfg, const RunOptions& opts);

ExperimentOutcome exp_sweep(const Config& cfg, const RunOptions& opts) {
    const std::string axis = cfg.get_string("experiment.axis");
    const std::string inner = cfg.get_string("experiment.name", "simulate");
    if (inner == "sweep") throw ConfigError("experiment.name: nested sweep not supported");
    const auto values = cfg.get_double_list("experiment.values");
    if (axis.find('.') == std::string::npos)
        throw ConfigError("experiment.axis: expected a dotted scalar key, got '" + axis + "'");

    struct Cell {
        double value;
        RunResult result;
    };
    std::vector<std::future<Cell>> futures;
    for (std::size_t i = 0; i < values.size(); ++i) {
        futures.push_back(std::async(std::launch::async, [&, i]() {
            Cell cell;
            cell.value = values[i];
            Config sub = cfg;
            std::ostringstream v;
            v.precision(17);
            v << values[i];
            sub.set(axis, v.str());
            RunOptions sub_opts = opts;
            sub_opts.out_dir = opts.out_dir / ("cell_" + std::to_string(i));
            try {
                cell.result = run_named(inner, sub, sub_opts);
            } catch (const std::exception& e) {
                cell.result = RunResult{2, e.what()};
            }
            return cell;
        }));
    }

    std::ostringstream csv;
    csv.precision(17);
    csv << axis << ",status,message\n";
    json jrows = json::array();
    bool all_ok = true;
    for (auto& f : futures) {
        const Cell cell = f.get();
        const std::string mark = cell.result.status == 0 ? "" : "fault";
        csv << cell.value << "," << cell.result.status << ","
            << (cell.result.status == 0 ? "" : cell.result.message) << "\n";
        jrows.push_back({{"value", cell.value},
                         {"status", cell.result.status},
                         {"message", cell.result.message}});
        all_ok = all_ok && cell.result.status == 0;
    }
    write_text(opts.out_dir / "series.csv", csv.str());
    json summary;
    summary["axis"] = axis;
    summary["experiment"] = inner;
    summary["cells"] = jrows;
    write_json(opts.out_dir / "summary.json", summary);

    ExperimentOutcome out;
    out.checks_passed = all_ok;
    return out;
}

RunResult run_named(const std::string& name, const Config& cfg, const RunOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) return RunResult{1, "cannot create output directory " + opts.out_dir.string()};

    RunResult result;
    try {
        ExperimentOutcome outcome;
        if (name == "simulate") {
            outcome = exp_simulate(cfg, opts, false);
        } else if (name == "diagnose") {
            outcome = exp_simulate(cfg, opts, true);
        } else if (name == "picard") {
            outcome = exp_picard(cfg, opts);
        } else if (name == "operator-check") {
            outcome = exp_operator_check(cfg, opts);
        } else if (name == "bilinear-probe") {
            outcome = exp_bilinear_probe(cfg, opts);
        } else if (name == "refine") {
            outcome = exp_refine(cfg, opts);
        } else if (name == "sweep") {
            outcome = exp_sweep(cfg, opts);
        } else {
            return RunResult{1, "unknown experiment: " + name};
        }
        if (outcome.fault) {
            result = RunResult{2, outcome.message.empty() ? "numerical fault" : outcome.message};
        } else if (opts.assert_mode && !outcome.checks_passed) {
            result = RunResult{3, "one or more checks failed"};
        }
    } catch (const ConfigError& e) {
        result = RunResult{1, e.what()};
    } catch (const std::exception& e) {
        result = RunResult{2, e.what()};
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        write_manifest(opts.out_dir, name, cfg, opts, wall);
    } catch (const std::exception& e) {
        if (result.status == 0) result = RunResult{2, e.what()};
    }
    return result;
}

} // namespace

RunResult run_experiment(const std::string& name, const Config& cfg, const RunOptions& opts) {
    return run_named(name, cfg, opts);
}

} // namespace ckdv
