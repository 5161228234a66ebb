#include "fracbl/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "fracbl/errors.hpp"

namespace fracbl::output {

namespace {

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Short labels for tick marks; fixed format keeps the SVG locale independent.
std::string tick_label(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 4);
    return std::string(buf.data(), res.ptr);
}

std::string coord(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void settle() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) return "0";
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { append(header); }

void CsvWriter::add_row(std::span<const double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    append(cells);
}

void CsvWriter::add_row(const std::vector<std::string>& cells) { append(cells); }

void CsvWriter::append(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw ParameterError("csv: row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) text_ += ',';
        text_ += quote(cells[i]);
    }
    text_ += '\n';
}

std::string columns_to_csv(const std::vector<std::string>& header,
                           const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw ParameterError("csv: header and column count differ");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != rows) throw ParameterError("csv: columns differ in length");
    }
    CsvWriter csv(header);
    std::vector<double> row(columns.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) row[c] = columns[c][r];
        csv.add_row(row);
    }
    return csv.str();
}

std::string render_svg(const std::string& title, std::span<const Panel> panels) {
    constexpr double kTop = 48.0;
    constexpr double kBottom = 56.0;
    constexpr double kLeft = 64.0;
    constexpr double kGap = 72.0;
    constexpr double kRight = 24.0;
    constexpr int kTicks = 5;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(kSvgWidth) +
           "\" height=\"" + std::to_string(kSvgHeight) + "\" viewBox=\"0 0 " + std::to_string(kSvgWidth) + " " +
           std::to_string(kSvgHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + coord(kSvgWidth / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + escape_xml(title) +
           "</text>\n";

    const double count = static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    const double panel_w = (kSvgWidth - kLeft - kRight - kGap * (count - 1.0)) / count;
    const double panel_h = kSvgHeight - kTop - kBottom;

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        const double x0 = kLeft + static_cast<double>(p) * (panel_w + kGap);
        const double y0 = kTop;
        Range rx;
        Range ry;
        for (const auto& s : panel.series) {
            for (double v : s.x) rx.include(v);
            for (double v : s.y) ry.include(v);
        }
        rx.settle();
        ry.settle();
        auto px = [&](double v) { return x0 + (v - rx.lo) / (rx.hi - rx.lo) * panel_w; };
        auto py = [&](double v) { return y0 + panel_h - (v - ry.lo) / (ry.hi - ry.lo) * panel_h; };

        svg += "<g>\n";
        svg += "<rect x=\"" + coord(x0) + "\" y=\"" + coord(y0) + "\" width=\"" + coord(panel_w) + "\" height=\"" +
               coord(panel_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + coord(x0 + panel_w / 2) + "\" y=\"" + coord(y0 - 8) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape_xml(panel.title) +
               "</text>\n";
        svg += "<text x=\"" + coord(x0 + panel_w / 2) + "\" y=\"" + coord(y0 + panel_h + 40) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               escape_xml(panel.x_label) + "</text>\n";
        for (int t = 0; t <= kTicks; ++t) {
            const double fx = rx.lo + (rx.hi - rx.lo) * t / kTicks;
            const double fy = ry.lo + (ry.hi - ry.lo) * t / kTicks;
            svg += "<text x=\"" + coord(px(fx)) + "\" y=\"" + coord(y0 + panel_h + 18) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + tick_label(fx) +
                   "</text>\n";
            svg += "<text x=\"" + coord(x0 - 6) + "\" y=\"" + coord(py(fy) + 3) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + tick_label(fy) +
                   "</text>\n";
            svg += "<line x1=\"" + coord(x0) + "\" y1=\"" + coord(py(fy)) + "\" x2=\"" + coord(x0 + panel_w) +
                   "\" y2=\"" + coord(py(fy)) + "\" stroke=\"#dddddd\"/>\n";
        }
        for (std::size_t k = 0; k < panel.series.size(); ++k) {
            const Series& s = panel.series[k];
            const char* color = kColors[k % kColors.size()];
            std::string points;
            const std::size_t n = std::min(s.x.size(), s.y.size());
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                if (!points.empty()) points += ' ';
                points += coord(px(s.x[i])) + "," + coord(py(s.y[i]));
            }
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
                   points + "\"/>\n";
            const double ly = y0 + 16.0 + 16.0 * static_cast<double>(k);
            svg += "<line x1=\"" + coord(x0 + panel_w - 110) + "\" y1=\"" + coord(ly - 4) + "\" x2=\"" +
                   coord(x0 + panel_w - 90) + "\" y2=\"" + coord(ly - 4) + "\" stroke=\"" + color +
                   "\" stroke-width=\"2\"/>\n";
            svg += "<text x=\"" + coord(x0 + panel_w - 86) + "\" y=\"" + coord(ly) +
                   "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(s.label) + "</text>\n";
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace fracbl::output
