#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fracbl::output {

/// 17 significant digits, locale independent; zero of either sign prints "0".
std::string format_double(double v);

/// Comma-separated table with a header line and LF endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::span<const double> values);
    /// Text cells are quoted when they contain a comma, quote or newline.
    void add_row(const std::vector<std::string>& cells);

    const std::string& str() const noexcept { return text_; }

private:
    void append(const std::vector<std::string>& cells);

    std::size_t width_;
    std::string text_;
};

/// Columns of equal length written as CSV.
std::string columns_to_csv(const std::vector<std::string>& header,
                           const std::vector<std::vector<double>>& columns);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Panel {
    std::string title;
    std::string x_label;
    std::vector<Series> series;
};

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 480;

/// Static SVG 1.1 line plot, panels side by side, axes autoscaled to the data.
std::string render_svg(const std::string& title, std::span<const Panel> panels);

/// Throws IoError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace fracbl::output
