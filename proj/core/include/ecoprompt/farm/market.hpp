#pragma once

namespace ecoprompt::farm {

/// Constant-elasticity weekly demand for one crop.
struct DemandModel {
  long long base_demand = 0;     // units demanded at the reference price
  long long reference_price = 1;
  double elasticity = 1.0;
  long long max_price = 100;
};

/// round(base_demand * (reference_price / price)^elasticity); price >= 1.
long long demanded_units(const DemandModel& model, long long price) noexcept;

/// min(stock, demanded_units(price)).
long long units_sold(const DemandModel& model, long long stock, long long price) noexcept;

long long revenue(const DemandModel& model, long long stock, long long price) noexcept;

/// Revenue-maximizing whole-coin price in [1, max_price]; the lowest such
/// price on ties. Only prices where the sold quantity is about to drop can
/// be optimal, so the search visits one candidate per demand level instead
/// of the whole price range.
long long best_price(const DemandModel& model, long long stock);

}  // namespace ecoprompt::farm
