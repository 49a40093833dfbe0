#pragma once

#include <string>
#include <vector>

namespace infodyn::cli {

struct Series {
  std::string name;
  std::string color;
  std::vector<double> y;  // non-finite values are skipped
};

// Line plot of several series over a shared x axis as a standalone SVG document.
[[nodiscard]] std::string line_plot(const std::string& title, const std::string& x_label,
                                    const std::vector<double>& x, const std::vector<Series>& series);

}  // namespace infodyn::cli
