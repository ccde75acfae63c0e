#include "shrinker/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "shrinker/errors.hpp"

namespace shrinker {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_number(v));
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

namespace {

std::string px(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, std::round(v * 100.0) / 100.0,
                                 std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string SvgPlot::str() const {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 >= x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad_y = 0.05 * (y1 - y0);
  y0 -= pad_y;
  y1 += pad_y;

  const double left = 70, right = 20, top = 40, bottom = 50;
  double pw = width - left - right, ph = height - top - bottom;
  if (equal_aspect) {
    const double scale = std::min(pw / (x1 - x0), ph / (y1 - y0));
    pw = scale * (x1 - x0);
    ph = scale * (y1 - y0);
  }
  auto X = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto Y = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  // frame
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"" << px(left) << ','
     << px(top) << ' ' << px(left) << ',' << px(top + ph) << ' ' << px(left + pw) << ','
     << px(top + ph) << "\"/>\n";
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"6,4\"";
    os << " points=\"";
    // points within half a pixel of the last emitted one are dropped (the final one is kept)
    bool first = true;
    double lx = 0.0, ly = 0.0;
    std::size_t last = s.x.size();
    while (last > 0 && !(std::isfinite(s.x[last - 1]) && std::isfinite(s.y[last - 1]))) --last;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      const double xp = X(s.x[i]), yp = Y(s.y[i]);
      if (!first && i + 1 != last && std::abs(xp - lx) < 0.5 && std::abs(yp - ly) < 0.5) continue;
      if (!first) os << ' ';
      os << px(xp) << ',' << px(yp);
      lx = xp;
      ly = yp;
      first = false;
    }
    os << "\"/>\n";
  }
  const int fs = 12;
  os << "<text x=\"" << px(left) << "\" y=\"" << px(top - 15) << "\" font-size=\"" << fs + 2
     << "\">" << escape(title) << "</text>\n";
  os << "<text x=\"" << px(left + pw / 2) << "\" y=\"" << px(top + ph + 35) << "\" font-size=\""
     << fs << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  os << "<text x=\"15\" y=\"" << px(top + ph / 2) << "\" font-size=\"" << fs
     << "\" transform=\"rotate(-90 15 " << px(top + ph / 2) << ")\" text-anchor=\"middle\">"
     << escape(y_label) << "</text>\n";
  os << "<text x=\"" << px(left - 5) << "\" y=\"" << px(top + ph) << "\" font-size=\"" << fs - 2
     << "\" text-anchor=\"end\">" << escape(format_number(y0)) << "</text>\n";
  os << "<text x=\"" << px(left - 5) << "\" y=\"" << px(top + 10) << "\" font-size=\"" << fs - 2
     << "\" text-anchor=\"end\">" << escape(format_number(y1)) << "</text>\n";
  os << "<text x=\"" << px(left) << "\" y=\"" << px(top + ph + 15) << "\" font-size=\"" << fs - 2
     << "\">" << escape(format_number(x0)) << "</text>\n";
  os << "<text x=\"" << px(left + pw) << "\" y=\"" << px(top + ph + 15) << "\" font-size=\""
     << fs - 2 << "\" text-anchor=\"end\">" << escape(format_number(x1)) << "</text>\n";
  // legend
  double ly = top + 5;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\""
       << px(left + pw - 150) << ',' << px(ly) << ' ' << px(left + pw - 125) << ',' << px(ly)
       << "\"/>\n";
    os << "<text x=\"" << px(left + pw - 120) << "\" y=\"" << px(ly + 4) << "\" font-size=\""
       << fs - 1 << "\">" << escape(s.label) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw ContractError("write failed: " + path.string());
}

}  // namespace shrinker
