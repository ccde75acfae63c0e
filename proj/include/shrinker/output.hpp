#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace shrinker {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// CSV with a header row. Cells are written verbatim (no quoting is needed for numbers and ids).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  std::string str() const;
};

/// Line plot made of SVG polylines only.
struct SvgPlot {
  struct Series {
    std::string label;
    std::vector<double> x, y;
    std::string color = "#1f77b4";
    bool dashed = false;
  };
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  int width = 640;
  int height = 420;
  bool equal_aspect = false;

  std::string str() const;
};

/// Writes bytes as-is (binary mode), creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace shrinker
