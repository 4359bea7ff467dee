#include "numrange/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "numrange/types.hpp"

namespace numrange {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> linear_ticks(double lo, double hi, int target = 5) {
    double span = hi - lo;
    if (span <= 0) return {lo};
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    std::vector<double> ticks;
    double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 1e-12 * span; t += step) ticks.push_back(t);
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    int elo = int(std::floor(std::log10(lo)));
    int ehi = int(std::ceil(std::log10(hi)));
    for (int e = elo; e <= ehi; ++e) {
        double t = std::pow(10.0, e);
        if (t >= lo / 1.0001 && t <= hi * 1.0001) ticks.push_back(t);
    }
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

}  // namespace

void SvgPlot::add_series(const std::string& name, const std::vector<double>& xs,
                         const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionError("SvgPlot: xs/ys length mismatch");
    series_.push_back({name, xs, ys});
}

std::string SvgPlot::render() const {
    const double W = 720, H = 480;
    const double ml = 70, mr = 160, mt = 40, mb = 55;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const Series& s : series_)
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            double x = s.xs[i], y = s.ys[i];
            if (log_x_ && x <= 0) continue;
            if (log_y_ && y <= 0) continue;
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    if (!(xlo < xhi)) { xlo -= 1.0; xhi = xlo + 2.0; }
    if (!(ylo < yhi)) { ylo -= 1.0; yhi = ylo + 2.0; }
    if (!log_x_) { double pad = 0.04 * (xhi - xlo); xlo -= pad; xhi += pad; }
    if (!log_y_) { double pad = 0.06 * (yhi - ylo); ylo -= pad; yhi += pad; }

    auto tx = [&](double x) {
        double u = log_x_ ? (std::log10(x) - std::log10(xlo)) / (std::log10(xhi) - std::log10(xlo))
                          : (x - xlo) / (xhi - xlo);
        return ml + u * pw;
    };
    auto ty = [&](double y) {
        double u = log_y_ ? (std::log10(y) - std::log10(ylo)) / (std::log10(yhi) - std::log10(ylo))
                          : (y - ylo) / (yhi - ylo);
        return mt + (1.0 - u) * ph;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    if (timestamp_) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%d %H:%M:%S", std::gmtime(&now));
        out << "<!-- generated " << buf << " -->\n";
    }
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << title_ << "</text>\n";

    // axes box
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

    std::vector<double> xticks = log_x_ ? log_ticks(xlo, xhi) : linear_ticks(xlo, xhi, 6);
    std::vector<double> yticks = log_y_ ? log_ticks(ylo, yhi) : linear_ticks(ylo, yhi, 5);
    for (double t : xticks) {
        double px = tx(t);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << mt + ph << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << mt << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << mt + ph << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(t) << "</text>\n";
    }
    for (double t : yticks) {
        double py = ty(t);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(py) << "\" x2=\"" << ml
            << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << ml << "\" y1=\"" << fmt(py) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << fmt(py) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(t) << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xlabel_ << "</text>\n";
    out << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << ylabel_ << "</text>\n";

    for (std::size_t si = 0; si < series_.size(); ++si) {
        const Series& s = series_[si];
        const char* color = kPalette[si % 8];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            double x = s.xs[i], y = s.ys[i];
            if ((log_x_ && x <= 0) || (log_y_ && y <= 0)) continue;
            pts << fmt(tx(x)) << "," << fmt(ty(y)) << " ";
        }
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        double ly = mt + 16 + 16 * double(si);
        out << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
            << ml + pw + 30 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << ml + pw + 35 << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void SvgPlot::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("SvgPlot: cannot open " + path);
    f << render();
}

}  // namespace numrange
