#include "fdjc/output.hpp"
#include "fdjc/errors.hpp"
#include "fdjc/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace fdjc {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericalError("cannot open output file '" + path + "'");
    return out;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_csv(const std::string& path, const ObservableSeries& series,
               const ObservableSeries* oracle) {
    std::ofstream out = open_out(path);
    if (oracle) {
        out << "scaled_t,value,value_oracle,abs_diff\n";
        for (size_t i = 0; i < series.value.size(); ++i)
            out << fmt17(series.scaled_t[i]) << ',' << fmt17(series.value[i]) << ','
                << fmt17(oracle->value[i]) << ','
                << fmt17(std::abs(series.value[i] - oracle->value[i])) << '\n';
    } else {
        out << "scaled_t,value\n";
        for (size_t i = 0; i < series.value.size(); ++i)
            out << fmt17(series.scaled_t[i]) << ',' << fmt17(series.value[i]) << '\n';
    }
}

void write_svg(const std::string& path, const ObservableSeries& series) {
    const double width = 900, height = 500;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x0 = series.scaled_t.front(), x1 = series.scaled_t.back();
    double y0, y1;
    if (series.name == "W") {
        y0 = -1.0;
        y1 = 1.0;
    } else {
        y0 = *std::min_element(series.value.begin(), series.value.end());
        y1 = *std::max_element(series.value.begin(), series.value.end());
        double pad = 0.05 * (y1 - y0);
        if (pad == 0.0) pad = std::max(1.0, std::abs(y0));
        y0 -= pad;
        y1 += pad;
    }
    auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return mt + (y1 - y) / (y1 - y0) * ph; };

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << series.name << "</text>\n";

    // axes
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double xv = x0 + (x1 - x0) * i / 5.0;
        double X = sx(xv);
        out << "<line x1=\"" << X << "\" y1=\"" << mt + ph << "\" x2=\"" << X << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << X << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" font-size=\"12\">" << fmt_tick(xv) << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        double yv = y0 + (y1 - y0) * i / 4.0;
        double Y = sy(yv);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y << "\" x2=\"" << ml << "\" y2=\"" << Y
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << Y + 4
            << "\" text-anchor=\"end\" font-size=\"12\">" << fmt_tick(yv) << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-size=\"13\">scaled time</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1\" points=\"";
    for (size_t i = 0; i < series.value.size(); ++i) {
        double y = std::clamp(series.value[i], y0, y1);
        out << fmt_tick(sx(series.scaled_t[i])) << ',' << fmt_tick(sy(y));
        if (i + 1 < series.value.size()) out << ' ';
    }
    out << "\"/>\n</svg>\n";
}

void write_manifest(const std::string& path, const std::map<std::string, std::string>& keys,
                    const std::string& preset_label) {
    std::ofstream out = open_out(path);
    out << "# fdjc " << kVersion << " run manifest";
    if (!preset_label.empty()) out << " (resolved from preset " << preset_label << ")";
    out << "\n";
    for (const auto& [k, v] : keys) out << k << " = " << v << "\n";
}

} // namespace fdjc
