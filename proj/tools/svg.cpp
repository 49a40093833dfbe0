#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace infodyn::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 140.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                      const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (double v : x) {
    x0 = std::min(x0, v);
    x1 = std::max(x1, v);
  }
  for (const auto& s : series) {
    for (double v : s.y) {
      if (!std::isfinite(v)) continue;
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) {
    x0 = std::isfinite(x0) ? x0 - 0.5 : 0.0;
    x1 = x0 + 1.0;
  }
  if (!std::isfinite(y0)) {
    y0 = 0.0;
    y1 = 1.0;
  }
  y0 = std::min(y0, 0.0);
  if (!(y1 > y0)) y1 = y0 + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
  auto sy = [&](double v) { return kTop + (y1 - v) / (y1 - y0) * ph; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  // Axes, with the y = 0 line when it is inside the range.
  svg << "<polyline fill=\"none\" stroke=\"black\" points=\"" << num(kLeft) << ',' << num(kTop) << ' ' << num(kLeft)
      << ',' << num(kTop + ph) << ' ' << num(kLeft + pw) << ',' << num(kTop + ph) << "\"/>\n";
  if (y0 < 0.0 && y1 > 0.0) {
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(0.0)) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
        << num(sy(0.0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  const auto label = [&](double px, double py, const std::string& text, const char* anchor) {
    svg << "<text x=\"" << num(px) << "\" y=\"" << num(py) << "\" font-family=\"sans-serif\" font-size=\"11\""
        << " text-anchor=\"" << anchor << "\">" << escape(text) << "</text>\n";
  };
  label(kLeft, kTop + ph + 16, num(x0), "middle");
  label(kLeft + pw, kTop + ph + 16, num(x1), "middle");
  label(kLeft + pw / 2, kTop + ph + 36, x_label, "middle");
  label(kLeft - 6, kTop + 4, num(y1), "end");
  label(kLeft - 6, kTop + ph + 4, num(y0), "end");

  double legend_y = kTop + 10;
  for (const auto& s : series) {
    // Break the line at non-finite values.
    std::ostringstream pts;
    std::size_t run = 0;
    const auto flush = [&] {
      if (run > 0) {
        svg << "<polyline fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
      }
      pts.str("");
      run = 0;
    };
    for (std::size_t k = 0; k < x.size() && k < s.y.size(); ++k) {
      if (!std::isfinite(s.y[k])) {
        flush();
        continue;
      }
      if (run++ > 0) pts << ' ';
      pts << num(sx(x[k])) << ',' << num(sy(s.y[k]));
    }
    flush();
    svg << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(legend_y) << "\" x2=\"" << num(kLeft + pw + 32)
        << "\" y2=\"" << num(legend_y) << "\" stroke=\"" << escape(s.color) << "\" stroke-width=\"2\"/>\n";
    label(kLeft + pw + 38, legend_y + 4, s.name, "start");
    legend_y += 18;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace infodyn::cli
