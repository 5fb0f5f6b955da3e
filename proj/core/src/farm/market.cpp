#include "ecoprompt/farm/market.hpp"

#include <algorithm>
#include <cmath>

namespace ecoprompt::farm {

long long demanded_units(const DemandModel& m, long long price) noexcept {
  const double ratio = static_cast<double>(m.reference_price) / static_cast<double>(price);
  return std::llround(static_cast<double>(m.base_demand) * std::pow(ratio, m.elasticity));
}

long long units_sold(const DemandModel& m, long long stock, long long price) noexcept {
  return std::max(0LL, std::min(stock, demanded_units(m, price)));
}

long long revenue(const DemandModel& m, long long stock, long long price) noexcept {
  return units_sold(m, stock, price) * price;
}

long long best_price(const DemandModel& m, long long stock) {
  const long long hi = std::max(1LL, m.max_price);
  long long best = 1;
  long long best_revenue = revenue(m, stock, 1);

  auto consider = [&](long long p) {
    if (p < 1 || p > hi) return;
    const long long r = revenue(m, stock, p);
    if (r > best_revenue || (r == best_revenue && p < best)) {
      best = p;
      best_revenue = r;
    }
  };

  consider(hi);
  const long long levels = std::min(stock, demanded_units(m, 1));
  for (long long q = 1; q <= levels; ++q) {
    // Largest price that still rounds to >= q units demanded.
    const double edge = static_cast<double>(m.reference_price) *
                        std::pow(static_cast<double>(m.base_demand) / (static_cast<double>(q) - 0.5),
                                 1.0 / m.elasticity);
    if (!std::isfinite(edge)) continue;
    const double clamped = std::clamp(std::floor(edge), 1.0, static_cast<double>(hi));
    const auto p = static_cast<long long>(clamped);
    // Neighbours absorb floating-point error at the rounding boundary.
    consider(p - 1);
    consider(p);
    consider(p + 1);
  }
  return best;
}

}  // namespace ecoprompt::farm
