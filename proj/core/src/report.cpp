#include "waveholtz/report.hpp"

#include <algorithm>
#include <cmath>

namespace waveholtz {

double measured_rate(const std::vector<double>& history) {
  if (history.size() < 2) return 1.0;
  const std::size_t ratios = history.size() - 1;
  const std::size_t count = std::max<std::size_t>(1, ratios / 4);
  const std::size_t first = history.size() - 1 - count;
  const double a = history[first];
  const double b = history.back();
  if (!(a > 0.0) || !(b > 0.0)) return b == 0.0 ? 0.0 : 1.0;
  return std::pow(b / a, 1.0 / static_cast<double>(count));
}

}  // namespace waveholtz
