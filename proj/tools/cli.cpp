#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "orbit/amplitudes.hpp"
#include "orbit/corpus.hpp"
#include "orbit/dynamics.hpp"
#include "orbit/error.hpp"
#include "orbit/oracle.hpp"
#include "orbit/params.hpp"
#include "orbit/poles.hpp"
#include "svg.hpp"

namespace orbit::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Thrown once a subcommand has decided its exit status.
struct Exit {
    int code;
};

std::string num(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json jnum(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json jcomplex(Complex z)
{
    return json::array({jnum(z.real()), jnum(z.imag())});
}

class Csv {
public:
    explicit Csv(const std::vector<std::string>& header) { line(header); }

    void meta(const json& j) { text_ = "# " + j.dump() + "\n" + text_; }

    void line(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            text_ += (i ? "," : "") + cells[i];
        }
        text_ += '\n';
    }

    const std::string& text() const { return text_; }

private:
    std::string text_;
};

struct Emit {
    std::string out_dir = ".";
    bool csv = true;
    bool json = true;
    bool svg = false;
};

void write_file(const Emit& emit, const std::string& name, const std::string& text)
{
    std::error_code ec;
    fs::create_directories(emit.out_dir, ec);
    const fs::path path = fs::path(emit.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw InvalidArgument("cannot write " + path.string());
    }
}

// lo, hi, n as given on the command line or in the config file
Axis make_axis(const std::vector<double>& spec, const std::string& name, bool log_spaced)
{
    if (spec.size() != 3) {
        throw InvalidArgument(name + " needs lo,hi,n");
    }
    const double n = spec[2];
    if (!(n >= 1) || n != std::floor(n)) {
        throw InvalidArgument(name + ": n must be a positive integer");
    }
    Axis a{spec[0], spec[1], static_cast<int>(n), log_spaced};
    a.values();  // validates
    return a;
}

json axis_json(const Axis& a)
{
    return {{"lo", a.lo}, {"hi", a.hi}, {"n", a.n}, {"log", a.log_spaced}};
}

json base_meta(const std::string& command)
{
    return {{"command", command}, {"version", ORBIT_ENTANGLE_VERSION}};
}

// ---------------------------------------------------------------- options

struct PointOptions {
    std::optional<double> r, y, alpha;
    std::optional<double> omega, window, radius, accel;
    double eta0 = 1.0;

    void add(CLI::App* app)
    {
        app->add_option("--r", r, "R/xi");
        app->add_option("--y", y, "Omega xi");
        app->add_option("--alpha", alpha, "a xi");
        app->add_option("--omega", omega, "gap Omega (1/time)");
        app->add_option("--window", window, "switching width xi (time)");
        app->add_option("--radius", radius, "orbit radius R (length)");
        app->add_option("--accel", accel, "proper acceleration a (1/time)");
        app->add_option("--eta0", eta0, "coupling eta0");
    }

    OrbitPoint point() const
    {
        const bool dimless = r || y || alpha;
        const bool physical = omega || window || radius || accel;
        if (dimless == physical) {
            throw InvalidArgument("give either --r/--y/--alpha or --omega/--window/--radius/--accel");
        }
        if (dimless) {
            if (!(r && y && alpha)) {
                throw InvalidArgument("--r, --y and --alpha are all required");
            }
            return OrbitPoint::make(*r, *y, *alpha);
        }
        if (!(omega && window && radius && accel)) {
            throw InvalidArgument("--omega, --window, --radius and --accel are all required");
        }
        return derive_orbit_point({*omega, eta0, *window, *radius, *accel});
    }
};

struct RegulatorOptions {
    std::vector<double> eps;
    std::optional<double> truncation;
    std::optional<int> nodes;

    void add(CLI::App* app)
    {
        app->add_option("--eps", eps, "regulator ladder in units of xi'")->delimiter(',');
        app->add_option("--truncation", truncation, "integration length in units of xi'");
        app->add_option("--nodes", nodes, "quadrature panel budget");
    }

    Regulator regulator() const
    {
        Regulator reg;
        if (!eps.empty()) {
            reg.epsilon_ladder = eps;
        }
        if (truncation) {
            reg.truncation = *truncation;
        }
        if (nodes) {
            reg.node_budget = *nodes;
        }
        reg.validate();
        return reg;
    }
};

// ---------------------------------------------------------------- poles

struct PolesCmd {
    double beta = 0.0;
    std::string kind = "A";
    int kmax = 10;

    void add(CLI::App* app)
    {
        app->add_option("--beta", beta, "orbital speed in (0, 1)")->required();
        app->add_option("--kind", kind, "A (sine family) or X (cosine family)")
            ->check(CLI::IsMember({"A", "X"}));
        app->add_option("--kmax", kmax, "poles per branch");
    }

    int operator()(const Emit& emit, std::ostream& out, std::ostream& err) const
    {
        if (!(beta > 0.0 && beta < 1.0)) {
            throw InvalidArgument("--beta must lie in (0, 1)");
        }
        if (kmax < 1) {
            throw InvalidArgument("--kmax must be >= 1");
        }
        PoleSet set;
        try {
            set = kind == "A" ? solve_a_poles(beta, kmax) : solve_x_poles(beta, kmax);
        } catch (const NumericalError& e) {
            err << "pole solver failed: " << e.what() << '\n';
            throw Exit{kExitNumerical};
        }
        Csv csv({"kind", "branch", "k", "re", "im", "residual"});
        csv.line({kind, kind == "A" ? "z0" : "x0", "0", num(set.special.real()), num(set.special.imag()),
                  num(set.special_residual)});
        for (const auto& p : set.members) {
            csv.line({kind, to_string(p.branch), std::to_string(p.k), num(p.z.real()), num(p.z.imag()),
                      num(p.residual)});
        }
        if (emit.csv) {
            write_file(emit, "poles_" + kind + ".csv", csv.text());
        }
        out << "poles " << kind << " beta=" << num(beta) << ": " << set.members.size() + 1
            << " roots, max residual " << num(std::max(set.residual, set.special_residual)) << '\n';
        return kExitOk;
    }
};

// ---------------------------------------------------------------- amplitudes

json amplitude_json(const AmplitudeResult& res)
{
    return {{"A", jnum(res.a_val)},
            {"X", jcomplex(res.x_val)},
            {"absX", jnum(std::abs(res.x_val))},
            {"margin", jnum(std::abs(res.x_val) - res.a_val)},
            {"entangled", std::abs(res.x_val) > res.a_val},
            {"k_used", res.k_used},
            {"tail_estimate", jnum(res.tail_estimate)},
            {"imag_leak", jnum(res.imag_leak)}};
}

json report_json(const QuadratureReport& q)
{
    return {{"value", jcomplex(q.eps_extrapolated)},
            {"error_estimate", jnum(q.error_estimate)},
            {"convergence_order", jnum(q.convergence_order)}};
}

struct AmplitudesCmd {
    PointOptions point;
    RegulatorOptions reg;
    int kmax = 10;
    double tolerance = 0.0;
    bool oracle = false;

    void add(CLI::App* app)
    {
        point.add(app);
        reg.add(app);
        app->add_option("--kmax", kmax, "poles per branch");
        app->add_option("--tolerance", tolerance, "deepen the pole sums until the tail is below this");
        app->add_flag("--oracle", oracle, "also evaluate the quadrature oracle (A, X, Y)");
    }

    int operator()(const Emit& emit, std::ostream& out, std::ostream&) const
    {
        const OrbitPoint pt = point.point();
        AmplitudeOptions opt;
        opt.k_max = kmax;
        opt.k_cap = std::max(kmax, opt.k_cap);
        opt.tolerance = tolerance;
        opt.coupling = point.eta0;
        const AmplitudeResult res = amplitudes(pt, opt);
        json j = base_meta("amplitudes");
        j["point"] = {{"r", pt.r()}, {"y", pt.y()}, {"alpha", pt.alpha()}, {"gamma", pt.gamma()}, {"beta", pt.beta()}};
        j["eta0"] = point.eta0;
        j["closed_form"] = amplitude_json(res);
        if (oracle) {
            const Regulator r = reg.regulator();
            j["oracle"] = {{"regulator", r.fingerprint()},
                           {"A", report_json(quad_a(pt, r, point.eta0))},
                           {"X", report_json(quad_x(pt, r, point.eta0))},
                           {"Y", report_json(quad_y(pt, r, point.eta0))}};
        }
        if (emit.json) {
            write_file(emit, "amplitudes.json", j.dump(2) + "\n");
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
};

// ---------------------------------------------------------------- region

struct RegionCmd {
    std::vector<double> r{0.05, 3.0, 10};
    std::vector<double> y{0.05, 3.0, 10};
    std::vector<double> alpha{0.01, 10.0, 10};
    bool alpha_log = true;
    int kmax = 10;
    double tolerance = 0.0;

    void add(CLI::App* app)
    {
        app->add_option("--r", r, "lo,hi,n")->delimiter(',')->expected(3);
        app->add_option("--y", y, "lo,hi,n")->delimiter(',')->expected(3);
        app->add_option("--alpha", alpha, "lo,hi,n")->delimiter(',')->expected(3);
        app->add_flag("--alpha-log,!--alpha-linear", alpha_log, "log-spaced alpha axis (default)");
        app->add_option("--kmax", kmax, "poles per branch");
        app->add_option("--tolerance", tolerance, "deepen the pole sums until the tail is below this");
    }

    int operator()(const Emit& emit, std::ostream& out, std::ostream& err) const
    {
        const RegionGrid grid{make_axis(r, "--r", false), make_axis(y, "--y", false),
                              make_axis(alpha, "--alpha", alpha_log)};
        AmplitudeOptions opt;
        opt.k_max = kmax;
        opt.k_cap = std::max(kmax, opt.k_cap);
        opt.tolerance = tolerance;
        const auto samples = region_scan(grid, opt, thread_budget());

        Csv csv({"r", "y", "alpha", "A", "ReX", "ImX", "absX", "margin", "entangled", "k_used", "tail_estimate",
                 "imag_leak", "failed"});
        json meta = base_meta("region");
        meta["grid"] = {{"r", axis_json(grid.r)}, {"y", axis_json(grid.y)}, {"alpha", axis_json(grid.alpha)}};
        meta["k_max"] = kmax;
        meta["tolerance"] = tolerance;
        meta["units"] = "A and X in units of eta0^2";
        csv.meta(meta);
        std::size_t failed = 0;
        std::size_t inside = 0;
        for (const auto& s : samples) {
            const auto& q = s.result;
            failed += s.failed ? 1 : 0;
            inside += s.entangled ? 1 : 0;
            if (s.failed) {
                err << "point r=" << num(s.point.r()) << " y=" << num(s.point.y()) << " alpha=" << num(s.point.alpha())
                    << " failed: " << s.error << '\n';
                csv.line({num(s.point.r()), num(s.point.y()), num(s.point.alpha()), "nan", "nan", "nan", "nan", "nan",
                          "0", "0", "nan", "nan", "1"});
                continue;
            }
            csv.line({num(s.point.r()), num(s.point.y()), num(s.point.alpha()), num(q.a_val), num(q.x_val.real()),
                      num(q.x_val.imag()), num(std::abs(q.x_val)), num(s.margin), s.entangled ? "1" : "0",
                      std::to_string(q.k_used), num(q.tail_estimate), num(q.imag_leak), "0"});
        }
        if (emit.csv) {
            write_file(emit, "region.csv", csv.text());
        }
        if (emit.svg) {
            const auto rs = grid.r.values();
            const auto ys = grid.y.values();
            const auto as = grid.alpha.values();
            const std::size_t slice = rs.size() * ys.size();
            for (std::size_t k = 0; k < as.size(); ++k) {
                std::vector<double> margin(slice);
                for (std::size_t i = 0; i < slice; ++i) {
                    margin[i] = samples[k * slice + i].margin;
                }
                const auto segs = zero_contour(rs, ys, margin);
                char title[64];
                std::snprintf(title, sizeof title, "|X| = A at alpha = %.4g", as[k]);
                write_file(emit, "region_slice_" + std::to_string(k) + ".svg",
                           contour_plot({title, "r = R/xi", "y = Omega xi"}, rs.front(), rs.back(), ys.front(),
                                        ys.back(), segs));
            }
        }
        out << "region: " << samples.size() << " points, " << inside << " entangled, " << failed << " failed\n";
        return failed == samples.size() ? kExitNumerical : kExitOk;
    }
};

// ---------------------------------------------------------------- dynamics

struct ProfileOptions {
    double omega = 1.0;
    double eta0 = 1.0;
    std::optional<double> gamma;
    std::optional<double> radius;

    void add(CLI::App* app)
    {
        app->add_option("--omega", omega, "gap Omega (proper frame)");
        app->add_option("--eta0", eta0, "coupling eta0");
        app->add_option("--gamma", gamma, "Lorentz factor of the orbit");
        app->add_option("--radius", radius, "orbit radius R; sets gamma^2 = 1 + R a");
    }

    RelaxationProfile profile(double accel) const
    {
        if (gamma && radius) {
            throw InvalidArgument("give --gamma or --radius, not both");
        }
        if (radius && !(*radius > 0)) {
            throw InvalidArgument("--radius must be > 0");
        }
        const double g = radius ? std::sqrt(1.0 + *radius * accel) : gamma.value_or(1.0);
        return relaxation_profile(omega, accel, eta0, g);
    }
};

json profile_json(const RelaxationProfile& p)
{
    const auto esd = esd_time(p);
    json j = {{"omega", p.omega_gap},
              {"accel", p.accel},
              {"eta0", p.eta0},
              {"gamma", p.gamma},
              {"re_i_minus", jnum(p.re_i_minus)},
              {"re_i_plus", jnum(p.re_i_plus)},
              {"delta", jnum(p.delta)},
              {"T1", jnum(p.t1)},
              {"T2", jnum(p.t2)},
              {"beta_eff_omega", jnum(p.beta_eff_omega)},
              {"T_eff", jnum(p.t_eff)}};
    if (esd.never()) {
        j["t_esd"] = "never";
        j["t_esd_prime"] = "never";
    } else {
        j["t_esd"] = jnum(*esd.time);
        j["t_esd_prime"] = jnum(rescaled_time(p, *esd.time));
    }
    return j;
}

struct DynamicsCmd {
    ProfileOptions prof;
    double accel = 1.0;
    std::optional<double> tprime_max;
    int n = 200;
    bool integrate = false;

    void add(CLI::App* app)
    {
        prof.add(app);
        app->add_option("--accel", accel, "proper acceleration a");
        app->add_option("--tprime-max", tprime_max, "end of the trace in t' = eta0^2 Omega t / gamma (default 5 T1)");
        app->add_option("--n", n, "number of time steps");
        app->add_flag("--integrate", integrate, "cross-check with the Lindblad integrator");
    }

    int operator()(const Emit& emit, std::ostream& out, std::ostream&) const
    {
        const RelaxationProfile p = prof.profile(accel);
        if (n < 1) {
            throw InvalidArgument("--n must be >= 1");
        }
        if (!(p.eta0 > 0)) {
            throw InvalidArgument("--eta0 must be > 0 for a time trace");
        }
        const double unit = rescaled_time(p, 1.0);
        const double end = tprime_max.value_or(5.0 * p.t1 * unit);
        if (!(end > 0) || !std::isfinite(end)) {
            throw InvalidArgument("--tprime-max must be > 0");
        }
        std::vector<double> ts(n + 1);
        for (int i = 0; i <= n; ++i) {
            ts[i] = end * i / n / unit;
        }
        json meta = base_meta("dynamics");
        meta["profile"] = profile_json(p);
        meta["time"] = "t_prime = eta0^2 Omega t / gamma";
        if (integrate) {
            const auto traj = lindblad_integrate(p, bell_state(), ts);
            double dev = 0.0;
            for (const auto& s : traj) {
                dev = std::max(dev, (s.rho - density_at(p, s.time).rho).cwiseAbs().maxCoeff());
            }
            meta["integrator_max_deviation"] = dev;
        }
        Csv csv({"t_prime", "rho00", "rho11", "rho22", "rho33", "rho03", "C"});
        csv.meta(meta);
        std::vector<Series> series{{"rho00", {}, {}}, {"rho11", {}, {}}, {"rho33", {}, {}}, {"C", {}, {}}};
        for (double t : ts) {
            const auto s = density_at(p, t);
            const double c = concurrence_closed(p, t);
            const double tp = t * unit;
            csv.line({num(tp), num(s.rho(0, 0).real()), num(s.rho(1, 1).real()), num(s.rho(2, 2).real()),
                      num(s.rho(3, 3).real()), num(s.rho(0, 3).real()), num(c)});
            const double vals[4] = {s.rho(0, 0).real(), s.rho(1, 1).real(), s.rho(3, 3).real(), c};
            for (int k = 0; k < 4; ++k) {
                series[k].x.push_back(tp);
                series[k].y.push_back(vals[k]);
            }
        }
        if (emit.csv) {
            write_file(emit, "dynamics.csv", csv.text());
        }
        if (emit.json) {
            write_file(emit, "dynamics.json", meta.dump(2) + "\n");
        }
        if (emit.svg) {
            write_file(emit, "dynamics.svg", line_plot({"Bell state under orbital noise", "t'", ""}, series));
        }
        out << meta.dump(2) << '\n';
        return kExitOk;
    }
};

struct SurfaceCmd {
    ProfileOptions prof;
    std::vector<double> ratio{0.1, 10.0, 40};
    std::vector<double> tprime{0.0, 10.0, 50};

    void add(CLI::App* app)
    {
        prof.add(app);
        app->add_option("--a-over-omega", ratio, "lo,hi,n")->delimiter(',')->expected(3);
        app->add_option("--tprime", tprime, "lo,hi,n")->delimiter(',')->expected(3);
    }

    int operator()(const Emit& emit, std::ostream& out, std::ostream&) const
    {
        const Axis ra = make_axis(ratio, "--a-over-omega", false);
        const Axis ta = make_axis(tprime, "--tprime", false);
        if (ra.lo < 0 || ta.lo < 0) {
            throw InvalidArgument("a/Omega and t' must be >= 0");
        }
        json meta = base_meta("concurrence-surface");
        meta["a_over_omega"] = axis_json(ra);
        meta["t_prime"] = axis_json(ta);
        meta["omega"] = prof.omega;
        meta["eta0"] = prof.eta0;
        Csv csv({"a_over_omega", "t_prime", "C"});
        csv.meta(meta);
        for (double q : ra.values()) {
            const RelaxationProfile p = prof.profile(q * prof.omega);
            const double unit = rescaled_time(p, 1.0);
            for (double tp : ta.values()) {
                csv.line({num(q), num(tp), num(concurrence_closed(p, tp / unit))});
            }
        }
        if (emit.csv) {
            write_file(emit, "concurrence_surface.csv", csv.text());
        }
        out << "concurrence-surface: " << ra.n * ta.n << " points\n";
        return kExitOk;
    }
};

struct EsdCmd {
    std::vector<double> ratio{0.1, 100.0, 60};
    bool log_spaced = true;

    void add(CLI::App* app)
    {
        app->add_option("--a-over-omega", ratio, "lo,hi,n")->delimiter(',')->expected(3);
        app->add_flag("--log,!--linear", log_spaced, "log-spaced a/Omega axis (default)");
    }

    int operator()(const Emit& emit, std::ostream& out, std::ostream&) const
    {
        const Axis ra = make_axis(ratio, "--a-over-omega", log_spaced);
        if (!(ra.lo >= 0)) {
            throw InvalidArgument("a/Omega must be >= 0");
        }
        json meta = base_meta("esd-curve");
        meta["a_over_omega"] = axis_json(ra);
        meta["limit"] = std::log(1.0 / (std::sqrt(2.0) - 1.0));
        Csv csv({"a_over_omega", "t_esd_over_T2"});
        csv.meta(meta);
        Series s{"t_esd / T2", {}, {}};
        for (double q : ra.values()) {
            const RelaxationProfile p = relaxation_profile(1.0, q);
            const auto esd = esd_time(p);
            const double v = esd.never() ? INFINITY : *esd.time / p.t2;
            csv.line({num(q), num(v)});
            s.x.push_back(log_spaced ? std::log10(q) : q);
            s.y.push_back(v);
        }
        if (emit.csv) {
            write_file(emit, "esd_curve.csv", csv.text());
        }
        if (emit.svg) {
            write_file(emit, "esd_curve.svg",
                       line_plot({"sudden death time", log_spaced ? "log10(a/Omega)" : "a/Omega", "t_esd / T2"}, {s}));
        }
        out << "esd-curve: " << ra.n << " points\n";
        return kExitOk;
    }
};

// ---------------------------------------------------------------- corpus

struct VerifyCmd {
    std::string corpus = ORBIT_DEFAULT_CORPUS;
    double tolerance = 1e-3;
    int kmax = 10;

    void add(CLI::App* app)
    {
        app->add_option("--corpus", corpus, "oracle reference table");
        app->add_option("--tolerance", tolerance, "largest accepted relative error");
        app->add_option("--kmax", kmax, "poles per branch");
    }

    int operator()(const Emit& emit, std::ostream& out, std::ostream& err) const
    {
        const Corpus c = read_corpus(corpus);
        AmplitudeOptions opt;
        opt.k_max = kmax;
        opt.k_cap = std::max(kmax, opt.k_cap);
        const VerifyReport rep = verify_corpus(c, opt, tolerance);
        json j = base_meta("verify");
        j["corpus"] = corpus;
        j["tolerance"] = tolerance;
        j["fingerprint"] = rep.fingerprint;
        j["flagged"] = rep.flagged;
        j["ok"] = rep.ok();
        json rows = json::array();
        for (const auto& v : rep.rows) {
            json row = {{"r", v.row.r},
                        {"y", v.row.y},
                        {"alpha", v.row.alpha},
                        {"quantity", v.row.quantity},
                        {"oracle", jcomplex(v.row.value)},
                        {"rel_error", jnum(v.rel_error)},
                        {"fingerprint", v.row.fingerprint},
                        {"flagged", v.flagged}};
            if (v.closed) {
                row["closed"] = jcomplex(*v.closed);
            }
            rows.push_back(row);
            if (v.flagged) {
                err << "flagged: r=" << num(v.row.r) << " y=" << num(v.row.y) << " alpha=" << num(v.row.alpha) << ' '
                    << v.row.quantity << " rel_error=" << num(v.rel_error) << '\n';
            }
        }
        j["rows"] = rows;
        if (emit.json) {
            write_file(emit, "verify.json", j.dump(2) + "\n");
        }
        out << "verify: " << rep.rows.size() << " rows, " << rep.flagged << " flagged (tolerance " << num(tolerance)
            << ")\n";
        return rep.ok() ? kExitOk : kExitBreach;
    }
};

struct RebuildCmd {
    std::string corpus = ORBIT_DEFAULT_CORPUS;
    RegulatorOptions reg;

    void add(CLI::App* app)
    {
        app->add_option("--corpus", corpus, "file to write");
        reg.add(app);
    }

    int operator()(const Emit&, std::ostream& out, std::ostream&) const
    {
        const Corpus c = build_corpus(default_corpus_points(), reg.regulator(), thread_budget());
        write_corpus(corpus, c);
        out << "corpus-rebuild: " << c.rows.size() << " rows written to " << corpus << '\n';
        return kExitOk;
    }
};

}  // namespace

int thread_budget()
{
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("ORBIT_ENTANGLE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            n = std::min<long>(n, cap);
        }
    }
    return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Entanglement of two orbiting detectors: amplitudes, regions and open-system dynamics",
                 "orbit-entangle"};
    app.set_version_flag("--version", ORBIT_ENTANGLE_VERSION);
    app.set_config("--config", "", "TOML configuration file; flags override it");
    app.require_subcommand(1, 1);
    app.fallthrough();

    Emit emit;
    app.add_option("--out", emit.out_dir, "output directory");
    app.add_flag("--csv,!--no-csv", emit.csv, "write CSV tables (default on)");
    app.add_flag("--json,!--no-json", emit.json, "write JSON reports (default on)");
    app.add_flag("--svg,!--no-svg", emit.svg, "write SVG figures (default off)");

    PolesCmd poles;
    AmplitudesCmd amps;
    RegionCmd region;
    DynamicsCmd dyn;
    SurfaceCmd surface;
    EsdCmd esd;
    VerifyCmd verify;
    RebuildCmd rebuild;

    struct Entry {
        CLI::App* app;
        std::function<int(const Emit&, std::ostream&, std::ostream&)> fn;
    };
    std::vector<Entry> entries;
    auto add = [&](const char* name, const char* help, auto& cmd) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->configurable();
        cmd.add(sub);
        entries.push_back({sub, std::cref(cmd)});
    };
    add("poles", "roots of the pole equations", poles);
    add("amplitudes", "A and X at one point (closed form, optionally the oracle)", amps);
    add("region", "scan |X| > A over an (r, y, alpha) grid", region);
    add("dynamics", "density-matrix trace from the Bell state", dyn);
    add("concurrence-surface", "concurrence over (a/Omega, t')", surface);
    add("esd-curve", "sudden-death time over a/Omega", esd);
    add("verify", "check the closed forms against the oracle reference table", verify);
    add("corpus-rebuild", "recompute the oracle reference table", rebuild);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << ORBIT_ENTANGLE_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitInput;
    }

    for (const auto& e : entries) {
        if (!e.app->parsed()) {
            continue;
        }
        try {
            return e.fn(emit, out, err);
        } catch (const Exit& x) {
            return x.code;
        } catch (const InvalidArgument& x) {
            err << "invalid input: " << x.what() << '\n';
            return kExitInput;
        } catch (const NumericalError& x) {
            err << "numerical failure: " << x.what() << '\n';
            return kExitNumerical;
        }
    }
    return kExitInput;
}

}  // namespace orbit::cli
