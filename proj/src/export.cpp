#include "mge/export.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mge/errors.hpp"

namespace mge {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string csv_header(std::size_t q) {
    std::string h = "t";
    for (std::size_t i = 1; i <= q; ++i) h += ",theta_hat_" + std::to_string(i);
    h += ",err_norm,manifold_residual,storage";
    return h;
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    std::string text = csv_header(traj.dimension) + "\n";
    for (std::size_t r = 0; r < traj.size(); ++r) {
        text += format_double(traj.times[r]);
        for (double v : traj.estimates[r]) text += "," + format_double(v);
        text += "," + format_double(traj.err_norms[r]);
        text += "," + format_double(traj.manifold_residuals[r]);
        text += "," + format_double(traj.storage_values[r]);
        text += "\n";
    }
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

namespace {

double parse_field(std::string_view s, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw IoError(path.string() + ":" + std::to_string(line) + ": malformed number '" + std::string(s) + "'");
    return v;
}

}  // namespace

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");

    std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (columns < 5) throw IoError(path.string() + ": header has too few columns");
    Trajectory traj;
    traj.dimension = columns - 4;
    if (line != csv_header(traj.dimension)) throw IoError(path.string() + ": unexpected header '" + line + "'");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            const std::string_view field = std::string_view(line).substr(start, comma - start);
            fields.push_back(parse_field(field, path, lineno));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != columns)
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                          " fields");
        traj.times.push_back(fields[0]);
        traj.estimates.emplace_back(fields.begin() + 1, fields.begin() + 1 + static_cast<std::ptrdiff_t>(traj.dimension));
        traj.err_norms.push_back(fields[columns - 3]);
        traj.manifold_residuals.push_back(fields[columns - 2]);
        traj.storage_values.push_back(fields[columns - 1]);
    }
    return traj;
}

std::vector<std::filesystem::path> export_csv(const ScenarioResult& result, const std::filesystem::path& prefix) {
    std::vector<std::filesystem::path> written;
    for (const auto& est : result.estimators) {
        std::filesystem::path p = prefix;
        p += "_" + est.label + ".csv";
        write_trajectory_csv(est.trajectory, p);
        written.push_back(std::move(p));
    }
    return written;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 900.0;
constexpr double kPanelHeight = 300.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kGap = 70.0;
constexpr double kLogFloor = 1e-16;

constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
constexpr std::array<const char*, 4> kDashes = {"", "2,3", "8,4", "8,3,2,3"};

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    // Data extents widened by 5% on each side; degenerate spans get +-1.
    static Range padded(double lo, double hi) {
        if (!(hi > lo)) return {lo - 1.0, hi + 1.0};
        const double m = 0.05 * (hi - lo);
        return {lo - m, hi + m};
    }
};

struct Panel {
    double x0, y0, w, h;
    Range xr, yr;

    double px(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * w; }
    double py(double y) const { return y0 + h - (y - yr.lo) / (yr.hi - yr.lo) * h; }
};

void axes(std::ostringstream& os, const Panel& p, const std::string& title, const std::string& ylabel) {
    os << "<g class=\"axes\">\n";
    os << "<rect x=\"" << num(p.x0) << "\" y=\"" << num(p.y0) << "\" width=\"" << num(p.w) << "\" height=\""
       << num(p.h) << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = p.xr.lo + (p.xr.hi - p.xr.lo) * i / 4.0;
        const double fy = p.yr.lo + (p.yr.hi - p.yr.lo) * i / 4.0;
        const double X = p.px(fx);
        const double Y = p.py(fy);
        os << "<line x1=\"" << num(X) << "\" y1=\"" << num(p.y0 + p.h) << "\" x2=\"" << num(X) << "\" y2=\""
           << num(p.y0 + p.h + 5) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << num(X) << "\" y=\"" << num(p.y0 + p.h + 18)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
        os << "<line x1=\"" << num(p.x0 - 5) << "\" y1=\"" << num(Y) << "\" x2=\"" << num(p.x0) << "\" y2=\""
           << num(Y) << "\" stroke=\"#444\"/>\n";
        os << "<text x=\"" << num(p.x0 - 8) << "\" y=\"" << num(Y + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
    }
    os << "<text x=\"" << num(p.x0 + p.w / 2) << "\" y=\"" << num(p.y0 - 12)
       << "\" font-size=\"14\" text-anchor=\"middle\">" << escape_xml(title) << "</text>\n";
    os << "<text x=\"" << num(p.x0 + p.w / 2) << "\" y=\"" << num(p.y0 + p.h + 36)
       << "\" font-size=\"12\" text-anchor=\"middle\">t [s]</text>\n";
    os << "<text x=\"" << num(p.x0 - 55) << "\" y=\"" << num(p.y0 + p.h / 2) << "\" font-size=\"12\" "
       << "text-anchor=\"middle\" transform=\"rotate(-90 " << num(p.x0 - 55) << " " << num(p.y0 + p.h / 2)
       << ")\">" << escape_xml(ylabel) << "</text>\n";
    os << "</g>\n";
}

void polyline(std::ostringstream& os, const Panel& p, const std::vector<double>& xs,
              const std::vector<double>& ys, const char* color, const char* dash, const std::string& cls) {
    os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (*dash) os << " stroke-dasharray=\"" << dash << "\"";
    os << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ' ';
        os << num(p.px(xs[i])) << ',' << num(p.py(ys[i]));
    }
    os << "\"/>\n";
}

}  // namespace

std::string render_plot(const ScenarioResult& result) {
    const std::size_t q = result.true_params.size();

    double tmin = 0.0, tmax = 1.0;
    double ymin = 0.0, ymax = 0.0;
    double lmin = 0.0, lmax = 0.0;
    bool first_t = true, first_y = true, first_l = true;
    for (double th : result.true_params) {
        ymin = first_y ? th : std::min(ymin, th);
        ymax = first_y ? th : std::max(ymax, th);
        first_y = false;
    }
    auto log_err = [](double e) { return std::log10(std::max(e, kLogFloor)); };
    for (const auto& est : result.estimators) {
        const Trajectory& tr = est.trajectory;
        for (std::size_t r = 0; r < tr.size(); ++r) {
            tmin = first_t ? tr.times[r] : std::min(tmin, tr.times[r]);
            tmax = first_t ? tr.times[r] : std::max(tmax, tr.times[r]);
            first_t = false;
            for (double v : tr.estimates[r]) {
                ymin = first_y ? v : std::min(ymin, v);
                ymax = first_y ? v : std::max(ymax, v);
                first_y = false;
            }
            const double l = log_err(tr.err_norms[r]);
            lmin = first_l ? l : std::min(lmin, l);
            lmax = first_l ? l : std::max(lmax, l);
            first_l = false;
        }
    }

    const double plot_w = kWidth - kLeft - kRight;
    const Panel top{kLeft, kTop, plot_w, kPanelHeight, Range::padded(tmin, tmax), Range::padded(ymin, ymax)};
    const Panel bottom{kLeft, kTop + kPanelHeight + kGap, plot_w, kPanelHeight, Range::padded(tmin, tmax),
                       Range::padded(lmin, lmax)};
    const double height = kTop + 2 * kPanelHeight + kGap + 50.0;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
       << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(height) << "\">\n";
    os << "<title>" << escape_xml(result.name) << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    axes(os, top, result.name + ": parameter estimates", "estimate");
    axes(os, bottom, result.name + ": log10 error norm", "log10 |err|");

    os << "<g class=\"truth\">\n";
    for (std::size_t i = 0; i < q; ++i) {
        const double Y = top.py(result.true_params[i]);
        os << "<line x1=\"" << num(top.x0) << "\" y1=\"" << num(Y) << "\" x2=\"" << num(top.x0 + top.w)
           << "\" y2=\"" << num(Y) << "\" stroke=\"" << kColors[i % kColors.size()]
           << "\" stroke-opacity=\"0.6\" stroke-dasharray=\"6,4\"/>\n";
    }
    os << "</g>\n";

    for (std::size_t e = 0; e < result.estimators.size(); ++e) {
        const auto& est = result.estimators[e];
        const Trajectory& tr = est.trajectory;
        const char* dash = kDashes[e % kDashes.size()];
        os << "<g class=\"estimator\" data-label=\"" << escape_xml(est.label) << "\">\n";
        for (std::size_t i = 0; i < q; ++i) {
            std::vector<double> ys(tr.size());
            for (std::size_t r = 0; r < tr.size(); ++r) ys[r] = tr.estimates[r][i];
            polyline(os, top, tr.times, ys, kColors[i % kColors.size()], dash, "estimate");
        }
        std::vector<double> ls(tr.size());
        for (std::size_t r = 0; r < tr.size(); ++r) ls[r] = log_err(tr.err_norms[r]);
        polyline(os, bottom, tr.times, ls, kColors[e % kColors.size()], dash, "error");
        os << "</g>\n";
    }

    // Legend: line style per estimator, colour per parameter.
    const double lx = kLeft + plot_w + 20.0;
    double ly = kTop + 10.0;
    os << "<g class=\"legend\" font-size=\"12\">\n";
    for (std::size_t e = 0; e < result.estimators.size(); ++e) {
        const char* dash = kDashes[e % kDashes.size()];
        os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 30) << "\" y2=\""
           << num(ly) << "\" stroke=\"#333\" stroke-width=\"1.5\"";
        if (*dash) os << " stroke-dasharray=\"" << dash << "\"";
        os << "/>\n<text x=\"" << num(lx + 36) << "\" y=\"" << num(ly + 4) << "\">"
           << escape_xml(result.estimators[e].label) << "</text>\n";
        ly += 18.0;
    }
    ly += 8.0;
    for (std::size_t i = 0; i < q; ++i) {
        os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 30) << "\" y2=\""
           << num(ly) << "\" stroke=\"" << kColors[i % kColors.size()] << "\" stroke-width=\"3\"/>\n";
        os << "<text x=\"" << num(lx + 36) << "\" y=\"" << num(ly + 4) << "\">theta_" << (i + 1)
           << " (true " << tick_label(result.true_params[i]) << ")</text>\n";
        ly += 18.0;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

void emit_plot(const ScenarioResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << render_plot(result);
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace mge
