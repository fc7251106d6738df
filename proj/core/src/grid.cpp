#include "stratsim/grid.hpp"

#include <stdexcept>
#include <string>

namespace stratsim {

GridSpec make_grid(int n, double length, double dealias_fraction) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid: n must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("grid: box length must be positive");
  }
  if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0) {
    throw std::invalid_argument("grid: dealias_fraction must lie in (0,1]");
  }
  return GridSpec{n, length, dealias_fraction};
}

}  // namespace stratsim
