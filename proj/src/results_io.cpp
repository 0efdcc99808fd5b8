/*
   Copyright 2026 The ofdmts Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// CSV and SVG emission for error curves.

#include "ofdmts/error.hpp"
#include "ofdmts/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ofdmts::eval {

namespace {

constexpr const char* kCsvHeader = "scenario,method,snr_db,trials,errors,error_prob,ci_lo,ci_hi";

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(Errc::format, "csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
}

long to_long(const std::string& s, int line_no) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(Errc::format, "csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(Errc::io, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) fail(Errc::io, "write failed for " + path.string());
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

} // namespace

std::string format_csv(std::span<const ErrorCurve> curves) {
    if (curves.empty()) fail(Errc::invalid_argument, "no curves to emit");
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& c : curves) {
        if (c.scenario.find(',') != std::string::npos || c.method.find(',') != std::string::npos)
            fail(Errc::invalid_argument, "scenario and method names must not contain commas");
        for (const auto& p : c.points)
            out << c.scenario << ',' << c.method << ',' << num(p.snr_db) << ',' << p.trials << ',' << p.errors << ','
                << num(p.error_prob) << ',' << num(p.ci_lo) << ',' << num(p.ci_hi) << "\n";
    }
    return out.str();
}

void write_csv(std::span<const ErrorCurve> curves, const std::filesystem::path& path) {
    write_text(path, format_csv(curves));
}

std::vector<ErrorCurve> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) fail(Errc::format, "csv: missing or unexpected header");
    std::vector<ErrorCurve> curves;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 8) fail(Errc::format, "csv line " + std::to_string(line_no) + ": expected 8 fields");
        auto it = std::find_if(curves.begin(), curves.end(),
                               [&](const ErrorCurve& c) { return c.scenario == f[0] && c.method == f[1]; });
        if (it == curves.end()) {
            curves.push_back({f[0], f[1], {}});
            it = curves.end() - 1;
        }
        CurvePoint p;
        p.snr_db = to_double(f[2], line_no);
        p.trials = to_long(f[3], line_no);
        p.errors = to_long(f[4], line_no);
        p.error_prob = to_double(f[5], line_no);
        p.ci_lo = to_double(f[6], line_no);
        p.ci_hi = to_double(f[7], line_no);
        it->points.push_back(p);
    }
    return curves;
}

std::vector<ErrorCurve> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

void write_svg(std::span<const ErrorCurve> curves, const std::filesystem::path& path, std::string_view title) {
    if (curves.empty()) fail(Errc::invalid_argument, "no curves to plot");
    constexpr double width = 640, height = 440, left = 70, right = 170, top = 40, bottom = 60;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double x_min = 1e300, x_max = -1e300, p_min = 1.0;
    for (const auto& c : curves)
        for (const auto& p : c.points) {
            x_min = std::min(x_min, p.snr_db);
            x_max = std::max(x_max, p.snr_db);
            if (p.error_prob > 0.0) p_min = std::min(p_min, p.error_prob);
            if (p.ci_lo > 0.0) p_min = std::min(p_min, p.ci_lo);
        }
    if (x_max <= x_min) x_max = x_min + 1.0;
    // Zero-error points are drawn on the floor decade.
    const double floor_dec = std::floor(std::log10(p_min)) - (p_min >= 1.0 ? 1.0 : 0.0);
    const double dec_lo = std::min(floor_dec, -1.0);

    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double p) {
        const double lp = p > 0.0 ? std::max(std::log10(p), dec_lo) : dec_lo;
        return top + (0.0 - lp) / (0.0 - dec_lo) * ph;
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        svg << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
            << xml_escape(title) << "</text>\n";

    for (int d = static_cast<int>(dec_lo); d <= 0; ++d) {
        const double y = sy(std::pow(10.0, d));
        svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
            << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    for (const auto& p : curves.front().points) {
        const double x = sx(p.snr_db);
        svg << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
            << "\" stroke=\"#eee\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << p.snr_db
            << "</text>\n";
    }
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 18 << "\" text-anchor=\"middle\">SNR (dB)</text>\n"
        << "<text transform=\"translate(18," << top + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\">Error probability of TS</text>\n";

    for (std::size_t k = 0; k < curves.size(); ++k) {
        const char* color = palette[k % std::size(palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& p : curves[k].points) svg << sx(p.snr_db) << ',' << sy(p.error_prob) << ' ';
        svg << "\"/>\n";
        for (const auto& p : curves[k].points) {
            svg << "<line x1=\"" << sx(p.snr_db) << "\" y1=\"" << sy(p.ci_lo) << "\" x2=\"" << sx(p.snr_db)
                << "\" y2=\"" << sy(p.ci_hi) << "\" stroke=\"" << color << "\"/>\n"
                << "<circle cx=\"" << sx(p.snr_db) << "\" cy=\"" << sy(p.error_prob) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        }
        const double ly = top + 14 + 18.0 * static_cast<double>(k);
        svg << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 32 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly + 4 << "\">"
            << xml_escape(curves[k].scenario + " / " + curves[k].method) << "</text>\n";
    }
    svg << "</svg>\n";
    write_text(path, svg.str());
}

} // namespace ofdmts::eval
