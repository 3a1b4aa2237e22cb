// capture: command-line front end for the particle-capture ODE toolkit.
// Every subcommand emits CSV (config comment line + header row) or JSON with
// the effective configuration embedded, so outputs are reproducible from the
// files alone.  Exact quantities are printed as "p/q" strings alongside any
// float renderings.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "capture/closed_form.hpp"
#include "capture/coefficients.hpp"
#include "capture/critical_series.hpp"
#include "capture/domb_sykes.hpp"
#include "capture/errors.hpp"
#include "capture/ode_oracle.hpp"
#include "capture/separatrix.hpp"

using json = nlohmann::ordered_json;
using namespace capture;

namespace {

std::string fmt_double(double v, int sig_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig_digits, v);
    return buf;
}

std::string sci3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

int default_float_digits() {
    if (const char* env = std::getenv("CAPTURE_FLOAT_DIGITS")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= 17) return v;
    }
    return 8;
}

// Writes to --out PATH or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw InvalidArgumentError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Csv {
    std::ostream& os;
    void comment(const std::string& config) { os << "# " << config << "\n"; }
    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) os << ",";
            os << fields[i];
        }
        os << "\n";
    }
};

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

[[noreturn]] void fail(const std::string& code, const std::string& message,
                       const json& context = json::object()) {
    json err = {{"error", {{"code", code}, {"message", message}, {"context", context}}}};
    std::cerr << err.dump() << "\n";
    std::exit(1);
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    auto colon = text.find(':', 1);  // skip a leading minus sign
    if (colon == std::string::npos)
        throw InvalidArgumentError(std::string(what) + " must look like LO:HI");
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InvalidArgumentError(std::string(what) + ": cannot parse '" + text + "'");
    }
}

std::pair<int, int> parse_resolution(const std::string& text) {
    auto x = text.find('x');
    try {
        if (x == std::string::npos) {
            int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw InvalidArgumentError("--resolution: cannot parse '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// coeffs

struct CoeffsOpts {
    int count = 8;
    std::string format = "csv";
    std::string out;
    int float_digits = 0;  // 0: no float column
};

void run_coeffs(const CoeffsOpts& o) {
    if (o.count < 1) throw InvalidArgumentError("--count must be >= 1");
    std::ostringstream cfg;
    cfg << "capture coeffs --count " << o.count << " --format " << o.format;
    if (o.float_digits > 0) cfg << " --float-digits " << o.float_digits;

    CoefficientTable t = generate_B(o.count - 1);
    Sink sink(o.out);
    if (o.format == "json") {
        json rows = json::array();
        for (int n = 0; n <= t.max_order; ++n) {
            json r = {{"n", n}, {"B", to_string(t.B[n])}, {"b", t.b[n].str()}};
            if (o.float_digits > 0) r["B_float"] = to_decimal_string(t.B[n], o.float_digits);
            rows.push_back(r);
        }
        emit_json(sink.stream(), {{"config", cfg.str()}, {"rows", rows}});
    } else {
        Csv csv{sink.stream()};
        csv.comment(cfg.str());
        std::vector<std::string> header = {"n", "B_n", "b_n"};
        if (o.float_digits > 0) header.push_back("B_n_float");
        csv.row(header);
        for (int n = 0; n <= t.max_order; ++n) {
            std::vector<std::string> row = {std::to_string(n), to_string(t.B[n]), t.b[n].str()};
            if (o.float_digits > 0) row.push_back(to_decimal_string(t.B[n], o.float_digits));
            csv.row(row);
        }
    }
}

// ---------------------------------------------------------------------------
// critical / critical-terms

struct CriticalOpts {
    int order = 30;
    std::vector<int> rows;
    std::string format = "csv";
    std::string out;
    int float_digits = 8;
};

void run_critical(const CriticalOpts& o) {
    std::ostringstream cfg;
    cfg << "capture critical --order " << o.order;
    if (!o.rows.empty()) {
        cfg << " --rows ";
        for (size_t i = 0; i < o.rows.size(); ++i) cfg << (i ? "," : "") << o.rows[i];
    }
    cfg << " --format " << o.format << " --float-digits " << o.float_digits;

    CoefficientTable table = generate_B(o.order);
    CriticalSeries cs = xc_from_zc(solve_zc(o.order, table), table);
    std::vector<int> rows = o.rows;
    if (rows.empty())
        for (int n = 1; n <= o.order; ++n) rows.push_back(n);
    auto data = partial_sum_table(cs, rows);

    Sink sink(o.out);
    auto mag = [](const Rational& r) { return sci3(std::abs(to_double(r))); };
    if (o.format == "json") {
        // theta-series coefficients, lowest order first
        json zc_series = json::array(), xc_series = json::array();
        for (int n = 0; n <= cs.order; ++n) {
            zc_series.push_back(to_string(cs.a[n]));
            xc_series.push_back(to_string(cs.xc[n]));
        }
        json jrows = json::array();
        for (const auto& r : data)
            jrows.push_back({{"n", r.n},
                             {"zc_sum", to_string(r.zc_sum)},
                             {"zc_sum_float", to_decimal_string(r.zc_sum, o.float_digits)},
                             {"zc_term", to_string(r.zc_term)},
                             {"zc_term_mag", mag(r.zc_term)},
                             {"xc_sum", to_string(r.xc_sum)},
                             {"xc_sum_float", to_decimal_string(r.xc_sum, o.float_digits)},
                             {"xc_term", to_string(r.xc_term)},
                             {"xc_term_mag", mag(r.xc_term)}});
        emit_json(sink.stream(), {{"config", cfg.str()},
                                  {"zc_series", zc_series},
                                  {"xc_series", xc_series},
                                  {"rows", jrows}});
    } else {
        Csv csv{sink.stream()};
        csv.comment(cfg.str());
        csv.row({"n", "zc_sum", "zc_sum_float", "zc_term", "zc_term_mag", "xc_sum",
                 "xc_sum_float", "xc_term", "xc_term_mag"});
        for (const auto& r : data)
            csv.row({std::to_string(r.n), to_string(r.zc_sum),
                     to_decimal_string(r.zc_sum, o.float_digits), to_string(r.zc_term),
                     mag(r.zc_term), to_string(r.xc_sum),
                     to_decimal_string(r.xc_sum, o.float_digits), to_string(r.xc_term),
                     mag(r.xc_term)});
    }
}

struct TermsOpts {
    int order = 30;
    std::string format = "csv";
    std::string out;
};

void run_critical_terms(const TermsOpts& o) {
    std::ostringstream cfg;
    cfg << "capture critical-terms --order " << o.order << " --format " << o.format;

    CoefficientTable table = generate_B(o.order);
    CriticalSeries cs = xc_from_zc(solve_zc(o.order, table), table);
    auto rows = term_ratios(cs);

    Sink sink(o.out);
    if (o.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows) {
            json jr = {{"n", r.n}};
            if (r.zc_defined) {
                jr["zc_ratio"] = r.zc_ratio;
                jr["zc_in_band"] = r.zc_ratio < 1.0;
            }
            if (r.xc_defined) {
                jr["xc_ratio"] = r.xc_ratio;
                jr["xc_in_band"] = r.xc_ratio < 1.0;
            }
            jrows.push_back(jr);
        }
        emit_json(sink.stream(), {{"config", cfg.str()}, {"rows", jrows}});
    } else {
        Csv csv{sink.stream()};
        csv.comment(cfg.str());
        csv.row({"n", "zc_ratio", "zc_in_band", "xc_ratio", "xc_in_band"});
        for (const auto& r : rows)
            csv.row({std::to_string(r.n), r.zc_defined ? fmt_double(r.zc_ratio, 10) : "",
                     r.zc_defined ? (r.zc_ratio < 1.0 ? "1" : "0") : "",
                     r.xc_defined ? fmt_double(r.xc_ratio, 10) : "",
                     r.xc_defined ? (r.xc_ratio < 1.0 ? "1" : "0") : ""});
    }
}

// ---------------------------------------------------------------------------
// separatrix

struct SeparatrixOpts {
    int max_order = 8;
    double z_min = 0.01;
    double z_max = 1.0;
    int points = 200;
    std::string out;
    int float_digits = 8;
};

void run_separatrix(const SeparatrixOpts& o) {
    if (o.points < 2) throw InvalidArgumentError("--points must be >= 2");
    if (o.max_order < 1) throw InvalidArgumentError("--max-order must be >= 1");
    if (!(o.z_min > 0.0) || !(o.z_max > o.z_min))
        throw InvalidArgumentError("need 0 < z-min < z-max");
    std::ostringstream cfg;
    cfg << "capture separatrix --max-order " << o.max_order << " --z-min " << o.z_min
        << " --z-max " << o.z_max << " --points " << o.points;

    CoefficientTable table = generate_B(o.max_order);
    std::vector<SeparatrixExpansion> exps;
    for (int k = 1; k <= o.max_order; ++k) exps.push_back(make_separatrix(table, 1, k));

    Sink sink(o.out);
    Csv csv{sink.stream()};
    csv.comment(cfg.str());
    std::vector<std::string> header = {"z"};
    for (int k = 1; k <= o.max_order; ++k) {
        header.push_back("x_" + std::to_string(k));
        header.push_back("u_" + std::to_string(k));
    }
    csv.row(header);
    for (int i = 0; i < o.points; ++i) {
        double z = o.z_min + (o.z_max - o.z_min) * i / (o.points - 1);
        std::vector<std::string> row = {fmt_double(z, o.float_digits)};
        for (const auto& e : exps) {
            row.push_back(fmt_double(eval_x_f64(e, z), o.float_digits));
            row.push_back(fmt_double(eval_u_f64(e, z), o.float_digits));
        }
        csv.row(row);
    }
}

// ---------------------------------------------------------------------------
// solution

struct SolutionOpts {
    std::string method = "rg";
    double x0 = 0.3;
    double u0 = -0.09;
    double epsilon = 1.0;
    double t_max = 10.0;
    int points = 200;
    std::string branch = "plus";
    std::string out;
    int float_digits = 8;
};

void run_solution(const SolutionOpts& o) {
    if (o.points < 2) throw InvalidArgumentError("--points must be >= 2");
    std::ostringstream cfg;
    cfg << "capture solution --method " << o.method << " --x0 " << o.x0 << " --u0 " << o.u0
        << " --epsilon " << o.epsilon << " --t-max " << o.t_max << " --points " << o.points
        << " --branch " << o.branch;

    SolutionConstants c = constants_from_ic(
        {o.x0, o.u0}, o.epsilon, o.branch == "minus" ? RootBranch::minus : RootBranch::plus);
    bool rg = o.method == "rg";

    Sink sink(o.out);
    Csv csv{sink.stream()};
    csv.comment(cfg.str());
    csv.row({"t", "x", "u"});
    for (int i = 0; i < o.points; ++i) {
        double t = o.t_max * i / (o.points - 1);
        double x, u;
        try {
            x = rg ? rg_eval(c, t) : matched_eval(c, t);
            u = rg ? rg_velocity(c, t) : matched_velocity(c, t);
        } catch (const PoleError&) {
            continue;  // skip the singular sample; neighbours show the blowup
        }
        csv.row({fmt_double(t, o.float_digits), fmt_double(x, o.float_digits),
                 fmt_double(u, o.float_digits)});
    }
}

// ---------------------------------------------------------------------------
// oracle commands

void add_integrator_flags(CLI::App* sub, IntegratorConfig& cfg) {
    sub->add_option("--rel-tol", cfg.rel_tol, "relative tolerance");
    sub->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance");
    sub->add_option("--t-max", cfg.t_max, "time budget");
    sub->add_option("--x-blowup", cfg.x_blowup, "divergence guard");
    sub->add_option("--attractor-tol", cfg.attractor_tol, "attractor ball radius");
}

std::string integrator_cfg_string(const IntegratorConfig& cfg) {
    std::ostringstream os;
    os << "--rel-tol " << cfg.rel_tol << " --abs-tol " << cfg.abs_tol << " --t-max " << cfg.t_max
       << " --x-blowup " << cfg.x_blowup << " --attractor-tol " << cfg.attractor_tol;
    return os.str();
}

struct FateOpts {
    double x0 = 0.5;
    double u0 = -0.25;
    IntegratorConfig cfg;
    std::string format = "json";
    std::string out;
    int float_digits = 8;
};

void run_fate(const FateOpts& o) {
    std::ostringstream cfg;
    cfg << "capture fate --x0 " << o.x0 << " --u0 " << o.u0 << " "
        << integrator_cfg_string(o.cfg);
    FateResult fr = classify_fate({o.x0, o.u0}, o.cfg);
    Sink sink(o.out);
    if (o.format == "json") {
        emit_json(sink.stream(), {{"config", cfg.str()},
                                  {"fate", fate_name(fr.fate)},
                                  {"t_event", fr.t_event}});
    } else {
        Csv csv{sink.stream()};
        csv.comment(cfg.str());
        csv.row({"fate", "t_event"});
        csv.row({fate_name(fr.fate), fmt_double(fr.t_event, o.float_digits)});
    }
}

struct TraceOpts {
    double delta = 1e-6;
    IntegratorConfig cfg;
    std::string format = "json";
    std::string out;
    int float_digits = 10;
};

void run_trace(const TraceOpts& o) {
    std::ostringstream cfg;
    cfg << "capture trace-separatrix --delta " << o.delta << " " << integrator_cfg_string(o.cfg);
    SeparatrixTrace tr = trace_separatrix(o.delta, o.cfg);
    Sink sink(o.out);
    if (o.format == "json") {
        emit_json(sink.stream(), {{"config", cfg.str()},
                                  {"xc_estimate", tr.xc_estimate},
                                  {"zc_estimate", tr.zc_estimate},
                                  {"backward_time", tr.backward_time},
                                  {"error_estimate", tr.error_estimate},
                                  {"points", tr.polyline.size()}});
    } else {
        Csv csv{sink.stream()};
        csv.comment(cfg.str());
        csv.row({"t", "x", "u"});
        for (const auto& p : tr.polyline)
            csv.row({fmt_double(p.t, o.float_digits), fmt_double(p.x, o.float_digits),
                     fmt_double(p.u, o.float_digits)});
    }
}

struct FindXcOpts {
    double tol = 1e-7;
    IntegratorConfig cfg;
    std::string format = "json";
    std::string out;
    int float_digits = 10;
};

void run_find_xc(const FindXcOpts& o) {
    std::ostringstream cfg;
    cfg << "capture find-xc --tol " << o.tol << " " << integrator_cfg_string(o.cfg);
    BisectionResult r = find_xc_bisection(o.cfg, o.tol);
    Sink sink(o.out);
    if (o.format == "json") {
        emit_json(sink.stream(), {{"config", cfg.str()},
                                  {"x_c", r.x_c},
                                  {"bracket_width", r.bracket_width},
                                  {"probes", r.probes}});
    } else {
        Csv csv{sink.stream()};
        csv.comment(cfg.str());
        csv.row({"x_c", "bracket_width", "probes"});
        csv.row({fmt_double(r.x_c, o.float_digits), fmt_double(r.bracket_width, 3),
                 std::to_string(r.probes)});
    }
}

struct PortraitOpts {
    std::string x_range = "0:1.2";
    std::string u_range = "-1.2:0.2";
    std::string resolution = "25";
    IntegratorConfig cfg;
    std::string format = "csv";
    std::string out;
    int float_digits = 8;
};

void run_portrait(const PortraitOpts& o) {
    auto [x_lo, x_hi] = parse_range(o.x_range, "--x-range");
    auto [u_lo, u_hi] = parse_range(o.u_range, "--u-range");
    auto [nx, nu] = parse_resolution(o.resolution);
    std::ostringstream cfg;
    cfg << "capture portrait --x-range " << o.x_range << " --u-range " << o.u_range
        << " --resolution " << o.resolution << " " << integrator_cfg_string(o.cfg);
    auto cells = phase_portrait(x_lo, x_hi, nx, u_lo, u_hi, nu, o.cfg);
    Sink sink(o.out);
    if (o.format == "json") {
        json jcells = json::array();
        for (const auto& c : cells)
            jcells.push_back({{"x0", c.x0},
                              {"u0", c.u0},
                              {"fate", fate_name(c.fate)},
                              {"t_event", c.t_event}});
        emit_json(sink.stream(), {{"config", cfg.str()}, {"cells", jcells}});
        return;
    }
    Csv csv{sink.stream()};
    csv.comment(cfg.str());
    csv.row({"x0", "u0", "fate", "t_event"});
    for (const auto& c : cells)
        csv.row({fmt_double(c.x0, o.float_digits), fmt_double(c.u0, o.float_digits),
                 fate_name(c.fate), fmt_double(c.t_event, o.float_digits)});
}

// ---------------------------------------------------------------------------
// domb-sykes

struct DombSykesOpts {
    int count = 40;
    std::string window;
    std::optional<double> delta;
    std::string format = "json";
    std::string out;
    int float_digits = 10;
};

void run_domb_sykes(const DombSykesOpts& o) {
    if (o.count < 3) throw InvalidArgumentError("--count must be >= 3");
    std::ostringstream cfg;
    cfg << "capture domb-sykes --count " << o.count;
    if (!o.window.empty()) cfg << " --window " << o.window;
    if (o.delta) cfg << " --delta " << *o.delta;
    cfg << " --format " << o.format;

    CoefficientTable t = generate_B(o.count);
    std::optional<FitWindow> window;
    if (!o.window.empty()) {
        auto [lo, hi] = parse_range(o.window, "--window");
        window = FitWindow{static_cast<int>(lo), static_cast<int>(hi)};
    }
    DombSykesReport rep = domb_sykes_report(t, window, o.delta);

    Sink sink(o.out);
    if (o.format == "json") {
        auto fit_json = [](const LineFit& f) {
            return json{{"slope", f.slope},
                        {"intercept", f.intercept},
                        {"max_residual", f.max_residual},
                        {"points_used", f.points_used},
                        {"excluded", f.excluded}};
        };
        json ratios = json::array();
        for (const auto& r : rep.ratios) ratios.push_back({{"n", r.n}, {"value", r.value}});
        json svals = json::array();
        for (const auto& s : rep.s_values) svals.push_back({{"n", s.n}, {"value", s.value}});
        emit_json(sink.stream(),
                  {{"config", cfg.str()},
                   {"delta", rep.delta},
                   {"growth", rep.growth},
                   {"fit_window", {{"lo", rep.fit_window.lo}, {"hi", rep.fit_window.hi}}},
                   {"offset_fit", fit_json(rep.offset_fit)},
                   {"growth_fit", fit_json(rep.growth_fit)},
                   {"ratios", ratios},
                   {"s_values", svals}});
    } else {
        double delta = o.delta.value_or(rep.delta);
        Csv csv{sink.stream()};
        csv.comment(cfg.str());
        csv.row({"n", "ratio", "inv_n_minus_delta", "s_n"});
        for (const auto& r : rep.ratios) {
            std::string s_n;
            for (const auto& sv : rep.s_values)
                if (sv.n == r.n) s_n = fmt_double(sv.value, o.float_digits);
            csv.row({std::to_string(r.n), fmt_double(r.value, o.float_digits),
                     fmt_double(1.0 / (r.n - delta), o.float_digits), s_n});
        }
    }
}

// ---------------------------------------------------------------------------
// emit-dataset

struct DatasetOpts {
    std::string figure;
    std::string out_dir = ".";
    int order = 30;
    int count = 40;
    int max_order = 8;
    std::string resolution = "25";
    std::string x_range = "0:1.2";
    std::string u_range = "-1.2:0.2";
    double delta = 1e-6;
    double tol = 1e-7;
};

std::ofstream open_in_dir(const std::string& dir, const std::string& name,
                          std::vector<std::string>& written) {
    std::filesystem::create_directories(dir);
    auto path = std::filesystem::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgumentError("cannot open " + path.string());
    written.push_back(path.string());
    return f;
}

void run_dataset(const DatasetOpts& o) {
    std::vector<std::string> written;
    IntegratorConfig cfg;

    if (o.figure == "fig1-portrait") {
        std::ostringstream base;
        base << "capture emit-dataset --figure fig1-portrait --x-range " << o.x_range
             << " --u-range " << o.u_range << " --resolution " << o.resolution;
        auto [x_lo, x_hi] = parse_range(o.x_range, "--x-range");
        auto [u_lo, u_hi] = parse_range(o.u_range, "--u-range");
        auto [nx, nu] = parse_resolution(o.resolution);
        {
            auto f = open_in_dir(o.out_dir, "fig1_portrait.csv", written);
            Csv csv{f};
            csv.comment(base.str());
            csv.row({"x0", "u0", "fate", "t_event"});
            for (const auto& c : phase_portrait(x_lo, x_hi, nx, u_lo, u_hi, nu, cfg))
                csv.row({fmt_double(c.x0, 8), fmt_double(c.u0, 8), fate_name(c.fate),
                         fmt_double(c.t_event, 8)});
        }
        {
            auto f = open_in_dir(o.out_dir, "fig1_nullcline.csv", written);
            Csv csv{f};
            csv.comment(base.str() + " (nullcline u = -x^2)");
            csv.row({"x", "u"});
            for (int i = 0; i <= 200; ++i) {
                double x = x_lo + (x_hi - x_lo) * i / 200.0;
                csv.row({fmt_double(x, 8), fmt_double(-x * x, 8)});
            }
        }
        {
            BisectionResult r = find_xc_bisection(cfg, o.tol);
            auto f = open_in_dir(o.out_dir, "fig1_xc.csv", written);
            Csv csv{f};
            csv.comment(base.str() + " (critical point on the nullcline)");
            csv.row({"x_c", "u_c"});
            csv.row({fmt_double(r.x_c, 10), fmt_double(-r.x_c * r.x_c, 10)});
        }
    } else if (o.figure == "fig2-separatrix") {
        std::ostringstream base;
        base << "capture emit-dataset --figure fig2-separatrix --max-order " << o.max_order
             << " --delta " << o.delta;
        {
            CoefficientTable table = generate_B(o.max_order);
            auto f = open_in_dir(o.out_dir, "fig2_series.csv", written);
            Csv csv{f};
            csv.comment(base.str() + " (series truncations in the (x,u) plane)");
            std::vector<std::string> header = {"z"};
            for (int k = 1; k <= o.max_order; ++k) {
                header.push_back("x_" + std::to_string(k));
                header.push_back("u_" + std::to_string(k));
            }
            csv.row(header);
            for (int i = 1; i <= 240; ++i) {
                double z = 1.2 * i / 240.0;
                std::vector<std::string> row = {fmt_double(z, 8)};
                for (int k = 1; k <= o.max_order; ++k) {
                    SeparatrixExpansion e = make_separatrix(table, 1, k);
                    row.push_back(fmt_double(eval_x_f64(e, z), 8));
                    row.push_back(fmt_double(eval_u_f64(e, z), 8));
                }
                csv.row(row);
            }
        }
        {
            SeparatrixTrace tr = trace_separatrix(o.delta, cfg);
            auto f = open_in_dir(o.out_dir, "fig2_exact.csv", written);
            Csv csv{f};
            csv.comment(base.str() + " (backward-integrated separatrix)");
            csv.row({"t", "x", "u"});
            for (const auto& p : tr.polyline)
                csv.row({fmt_double(p.t, 10), fmt_double(p.x, 10), fmt_double(p.u, 10)});
        }
    } else if (o.figure == "fig3-terms") {
        CoefficientTable table = generate_B(o.order);
        CriticalSeries cs = xc_from_zc(solve_zc(o.order, table), table);
        auto f = open_in_dir(o.out_dir, "fig3_terms.csv", written);
        Csv csv{f};
        csv.comment("capture emit-dataset --figure fig3-terms --order " + std::to_string(o.order));
        csv.row({"n", "zc_ratio", "zc_in_band", "xc_ratio", "xc_in_band"});
        for (const auto& r : term_ratios(cs))
            csv.row({std::to_string(r.n), r.zc_defined ? fmt_double(r.zc_ratio, 10) : "",
                     r.zc_defined ? (r.zc_ratio < 1.0 ? "1" : "0") : "",
                     r.xc_defined ? fmt_double(r.xc_ratio, 10) : "",
                     r.xc_defined ? (r.xc_ratio < 1.0 ? "1" : "0") : ""});
    } else if (o.figure == "fig4-domb-sykes") {
        CoefficientTable t = generate_B(o.count);
        DombSykesReport rep = domb_sykes_report(t, FitWindow{o.count / 2, o.count - 1}, -0.8);
        std::string base = "capture emit-dataset --figure fig4-domb-sykes --count " +
                           std::to_string(o.count) + " (delta fixed at -4/5)";
        {
            auto f = open_in_dir(o.out_dir, "fig4_main.csv", written);
            Csv csv{f};
            csv.comment(base);
            csv.row({"n", "inv_n_minus_delta", "ratio"});
            for (const auto& r : rep.ratios)
                csv.row({std::to_string(r.n), fmt_double(1.0 / (r.n + 0.8), 10),
                         fmt_double(r.value, 10)});
        }
        {
            auto f = open_in_dir(o.out_dir, "fig4_inset_offset.csv", written);
            Csv csv{f};
            csv.comment(base + " (offset inset: s_n against n)");
            csv.row({"n", "s_n"});
            for (const auto& s : rep.s_values)
                csv.row({std::to_string(s.n), fmt_double(s.value, 10)});
        }
    } else {
        throw InvalidArgumentError("unknown figure id: " + o.figure +
                                   " (expected fig1-portrait, fig2-separatrix, fig3-terms, "
                                   "fig4-domb-sykes)");
    }
    for (const auto& w : written) std::cout << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact series, closed-form, and numerical-oracle toolkit for the "
                 "particle-capture ODE  x'' + x' + eps x^2 = 0"};
    app.require_subcommand(1);
    int float_digits_env = default_float_digits();

    CoeffsOpts coeffs;
    auto* sc_coeffs = app.add_subcommand("coeffs", "separatrix coefficients B_n and b_n");
    sc_coeffs->add_option("--count", coeffs.count, "number of coefficients (n = 0..count-1)");
    sc_coeffs->add_option("--format", coeffs.format)->check(CLI::IsMember({"csv", "json"}));
    sc_coeffs->add_option("--out", coeffs.out, "output path (default stdout)");
    sc_coeffs->add_option("--float-digits", coeffs.float_digits, "add a decimal column");

    CriticalOpts critical;
    critical.float_digits = float_digits_env;
    auto* sc_critical = app.add_subcommand("critical", "partial-sum table for eps z_c, eps x_c");
    sc_critical->add_option("--order", critical.order, "series truncation order");
    sc_critical->add_option("--rows", critical.rows, "rows to print (default all)")
        ->delimiter(',');
    sc_critical->add_option("--format", critical.format)->check(CLI::IsMember({"csv", "json"}));
    sc_critical->add_option("--out", critical.out);
    sc_critical->add_option("--float-digits", critical.float_digits);

    TermsOpts terms;
    auto* sc_terms = app.add_subcommand("critical-terms", "term ratio data (d'Alembert test)");
    sc_terms->add_option("--order", terms.order);
    sc_terms->add_option("--format", terms.format)->check(CLI::IsMember({"csv", "json"}));
    sc_terms->add_option("--out", terms.out);

    SeparatrixOpts sep;
    sep.float_digits = float_digits_env;
    auto* sc_sep = app.add_subcommand("separatrix", "separatrix truncations over a z grid");
    sc_sep->add_option("--max-order", sep.max_order);
    sc_sep->add_option("--z-min", sep.z_min);
    sc_sep->add_option("--z-max", sep.z_max);
    sc_sep->add_option("--points", sep.points);
    sc_sep->add_option("--out", sep.out);
    sc_sep->add_option("--float-digits", sep.float_digits);

    SolutionOpts sol;
    sol.float_digits = float_digits_env;
    auto* sc_sol = app.add_subcommand("solution", "closed-form trajectory (t, x, u)");
    sc_sol->add_option("--method", sol.method)->check(CLI::IsMember({"matched", "rg"}));
    sc_sol->add_option("--x0", sol.x0)->required();
    sc_sol->add_option("--u0", sol.u0)->required();
    sc_sol->add_option("--epsilon", sol.epsilon);
    sc_sol->add_option("--t-max", sol.t_max);
    sc_sol->add_option("--points", sol.points);
    sc_sol->add_option("--branch", sol.branch)->check(CLI::IsMember({"plus", "minus"}));
    sc_sol->add_option("--out", sol.out);
    sc_sol->add_option("--float-digits", sol.float_digits);

    FateOpts fate;
    fate.float_digits = float_digits_env;
    auto* sc_fate = app.add_subcommand("fate", "classify capture/escape for one start");
    sc_fate->add_option("--x0", fate.x0)->required();
    sc_fate->add_option("--u0", fate.u0)->required();
    add_integrator_flags(sc_fate, fate.cfg);
    sc_fate->add_option("--format", fate.format)->check(CLI::IsMember({"csv", "json"}));
    sc_fate->add_option("--out", fate.out);

    TraceOpts trace;
    auto* sc_trace = app.add_subcommand("trace-separatrix", "backward separatrix trace");
    sc_trace->add_option("--delta", trace.delta, "seed distance from the origin");
    add_integrator_flags(sc_trace, trace.cfg);
    sc_trace->add_option("--format", trace.format)->check(CLI::IsMember({"csv", "json"}));
    sc_trace->add_option("--out", trace.out);

    FindXcOpts findxc;
    auto* sc_findxc = app.add_subcommand("find-xc", "bisection for the critical release point");
    sc_findxc->add_option("--tol", findxc.tol);
    add_integrator_flags(sc_findxc, findxc.cfg);
    sc_findxc->add_option("--format", findxc.format)->check(CLI::IsMember({"csv", "json"}));
    sc_findxc->add_option("--out", findxc.out);

    PortraitOpts portrait;
    auto* sc_portrait = app.add_subcommand("portrait", "fate raster over a grid");
    sc_portrait->add_option("--x-range", portrait.x_range, "LO:HI");
    sc_portrait->add_option("--u-range", portrait.u_range, "LO:HI");
    sc_portrait->add_option("--resolution", portrait.resolution, "N or NXxNU");
    add_integrator_flags(sc_portrait, portrait.cfg);
    sc_portrait->add_option("--format", portrait.format)->check(CLI::IsMember({"csv", "json"}));
    sc_portrait->add_option("--out", portrait.out);

    DombSykesOpts ds;
    auto* sc_ds = app.add_subcommand("domb-sykes", "coefficient growth extrapolation");
    sc_ds->add_option("--count", ds.count, "number of coefficients");
    sc_ds->add_option("--window", ds.window, "fit window LO:HI");
    double ds_delta = 0.0;
    auto* ds_delta_opt = sc_ds->add_option("--delta", ds_delta, "fix the offset for the fit");
    sc_ds->add_option("--format", ds.format)->check(CLI::IsMember({"csv", "json"}));
    sc_ds->add_option("--out", ds.out);

    DatasetOpts dataset;
    auto* sc_data = app.add_subcommand("emit-dataset", "figure reproduction file sets");
    sc_data->add_option("--figure", dataset.figure)->required();
    sc_data->add_option("--out-dir", dataset.out_dir);
    sc_data->add_option("--order", dataset.order);
    sc_data->add_option("--count", dataset.count);
    sc_data->add_option("--max-order", dataset.max_order);
    sc_data->add_option("--resolution", dataset.resolution);
    sc_data->add_option("--x-range", dataset.x_range);
    sc_data->add_option("--u-range", dataset.u_range);
    sc_data->add_option("--delta", dataset.delta);
    sc_data->add_option("--tol", dataset.tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json err = {{"error",
                     {{"code", "usage"}, {"message", e.what()}, {"context", json::object()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (*sc_coeffs) run_coeffs(coeffs);
        if (*sc_critical) run_critical(critical);
        if (*sc_terms) run_critical_terms(terms);
        if (*sc_sep) run_separatrix(sep);
        if (*sc_sol) run_solution(sol);
        if (*sc_fate) run_fate(fate);
        if (*sc_trace) run_trace(trace);
        if (*sc_findxc) run_find_xc(findxc);
        if (*sc_portrait) run_portrait(portrait);
        if (*sc_ds) {
            if (*ds_delta_opt) ds.delta = ds_delta;
            run_domb_sykes(ds);
        }
        if (*sc_data) run_dataset(dataset);
    } catch (const BreakdownError& e) {
        fail(e.code(), e.what(),
             {{"condition", "u0 > (1 - 4 x0)/4"},
              {"hint", "leading-order closed forms require 1 - 4 x0 - 4 u0 >= 0"}});
    } catch (const Error& e) {
        fail(e.code(), e.what());
    } catch (const std::exception& e) {
        fail("internal", e.what());
    }
    return 0;
}
