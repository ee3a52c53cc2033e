#include "orbit/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "orbit/error.hpp"
#include "parallel.hpp"

namespace orbit {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Corpus parse_corpus(const std::string& text)
{
    Corpus c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream h(line.substr(1));
            std::string key;
            h >> key;
            if (key == "regulator") {
                h >> c.fingerprint;
            } else if (key == "version") {
                h >> c.version;
            }
            continue;
        }
        std::istringstream row(line);
        CorpusRow r;
        double re = 0.0;
        double im = 0.0;
        if (!(row >> r.r >> r.y >> r.alpha >> r.quantity >> re >> im >> r.error_estimate >> r.fingerprint)) {
            throw InvalidArgument("corpus line " + std::to_string(lineno) + " is malformed");
        }
        if (r.quantity != "A" && r.quantity != "X" && r.quantity != "Y") {
            throw InvalidArgument("corpus line " + std::to_string(lineno) + ": unknown quantity " + r.quantity);
        }
        r.value = {re, im};
        c.rows.push_back(r);
    }
    if (c.fingerprint.empty()) {
        throw InvalidArgument("corpus has no regulator header");
    }
    return c;
}

Corpus read_corpus(const std::string& path)
{
    std::ifstream f(path);
    if (!f) {
        throw InvalidArgument("cannot open corpus " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_corpus(ss.str());
}

std::string format_corpus(const Corpus& corpus)
{
    std::ostringstream out;
    out << "# oracle reference values\n";
    out << "# version " << corpus.version << "\n";
    out << "# regulator " << corpus.fingerprint << "\n";
    out << "# r y alpha quantity re im error_estimate fingerprint\n";
    for (const auto& r : corpus.rows) {
        out << num(r.r) << ' ' << num(r.y) << ' ' << num(r.alpha) << ' ' << r.quantity << ' ' << num(r.value.real())
            << ' ' << num(r.value.imag()) << ' ' << num(r.error_estimate) << ' ' << r.fingerprint << '\n';
    }
    return out.str();
}

void write_corpus(const std::string& path, const Corpus& corpus)
{
    std::ofstream f(path);
    if (!f) {
        throw InvalidArgument("cannot write corpus " + path);
    }
    f << format_corpus(corpus);
}

std::vector<OrbitPoint> default_corpus_points()
{
    const double vals[] = {0.5, 1.0, 2.0};
    std::vector<OrbitPoint> pts;
    for (double r : vals) {
        for (double y : vals) {
            for (double a : vals) {
                pts.push_back(OrbitPoint::make(r, y, a));
            }
        }
    }
    return pts;
}

Corpus build_corpus(const std::vector<OrbitPoint>& points, const Regulator& reg, int threads)
{
    reg.validate();
    Corpus c;
    c.fingerprint = reg.fingerprint();

    // one task per (point, quantity); Y only at the reference point
    struct Task {
        OrbitPoint pt;
        char q;
    };
    std::vector<Task> tasks;
    for (const auto& p : points) {
        tasks.push_back({p, 'A'});
        tasks.push_back({p, 'X'});
        if (p.r() == 1.0 && p.y() == 1.0 && p.alpha() == 1.0) {
            tasks.push_back({p, 'Y'});
        }
    }
    std::vector<CorpusRow> rows(tasks.size());
    std::vector<std::string> errors(tasks.size());
    detail::parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const auto& t = tasks[i];
        try {
            QuadratureReport rep;
            if (t.q == 'A') {
                rep = quad_a(t.pt, reg);
            } else if (t.q == 'X') {
                rep = quad_x(t.pt, reg);
            } else {
                rep = quad_y(t.pt, reg);
            }
            rows[i] = {t.pt.r(), t.pt.y(), t.pt.alpha(), std::string(1, t.q), rep.eps_extrapolated,
                       rep.error_estimate, c.fingerprint};
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!errors[i].empty()) {
            throw NumericalError("oracle failed at r=" + num(tasks[i].pt.r()) + " y=" + num(tasks[i].pt.y()) +
                                 " alpha=" + num(tasks[i].pt.alpha()) + ": " + errors[i]);
        }
    }
    c.rows = std::move(rows);
    return c;
}

VerifyReport verify_corpus(const Corpus& corpus, const AmplitudeOptions& opt, double tolerance)
{
    VerifyReport rep;
    rep.tolerance = tolerance;
    rep.fingerprint = corpus.fingerprint;
    for (const auto& row : corpus.rows) {
        VerifyRow v;
        v.row = row;
        if (row.quantity == "Y") {
            v.rel_error = std::numeric_limits<double>::quiet_NaN();
            rep.rows.push_back(v);
            continue;
        }
        const auto pt = OrbitPoint::make(row.r, row.y, row.alpha);
        const auto res = amplitudes(pt, opt);
        v.closed = row.quantity == "A" ? Complex(res.a_val, 0.0) : res.x_val;
        v.rel_error = std::abs(*v.closed - row.value) / std::abs(row.value);
        v.flagged = !(v.rel_error <= tolerance);
        rep.flagged += v.flagged ? 1 : 0;
        rep.rows.push_back(v);
    }
    return rep;
}

}  // namespace orbit
