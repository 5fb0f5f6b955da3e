#include "ecoprompt/footprint.hpp"

#include <cmath>
#include <cstdio>

#include "ecoprompt/error.hpp"

namespace ecoprompt {
namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

}  // namespace

void validate(const ModelProfile& p) {
  if (!(std::isfinite(p.gen_speed_tps) && p.gen_speed_tps > 0.0)) {
    throw Error(ErrorCode::config, "model profile '" + p.name + "': gen_speed_tps must be > 0");
  }
  if (!(p.gpu_utilization >= 0.0 && p.gpu_utilization <= 1.0)) {
    throw Error(ErrorCode::config,
                "model profile '" + p.name + "': gpu_utilization must lie in [0, 1]");
  }
  if (!finite_nonneg(p.gpu_power_w) || !finite_nonneg(p.nongpu_power_w)) {
    throw Error(ErrorCode::config, "model profile '" + p.name + "': powers must be >= 0");
  }
  if (!finite_nonneg(p.ttft_s)) {
    throw Error(ErrorCode::config, "model profile '" + p.name + "': ttft_s must be >= 0");
  }
}

void validate(const DatacenterProfile& dc) {
  if (!(std::isfinite(dc.pue) && dc.pue >= 1.0)) {
    throw Error(ErrorCode::config, "datacenter profile '" + dc.name + "': pue must be >= 1");
  }
  if (!finite_nonneg(dc.wue_l_per_kwh)) {
    throw Error(ErrorCode::config, "datacenter profile '" + dc.name + "': wue must be >= 0");
  }
  if (!finite_nonneg(dc.cif_g_per_kwh)) {
    throw Error(ErrorCode::config, "datacenter profile '" + dc.name + "': cif must be >= 0");
  }
}

void validate(const QueryUsage& usage) {
  if (usage.input_tokens < 0 || usage.output_tokens < 0) {
    throw Error(ErrorCode::validation, "token counts must be non-negative");
  }
  if (usage.measured_latency_s &&
      !(std::isfinite(*usage.measured_latency_s) && *usage.measured_latency_s >= 0.0)) {
    throw Error(ErrorCode::validation, "measured latency must be a non-negative number");
  }
}

void validate(const RelatableConstants& c) {
  if (!(c.drop_volume_ml > 0.0 && c.balloon_mass_g > 0.0 && c.led_power_w > 0.0)) {
    throw Error(ErrorCode::config, "relatable-unit constants must be positive");
  }
}

double estimate_latency(const ModelProfile& profile, const QueryUsage& usage) noexcept {
  if (usage.measured_latency_s) return *usage.measured_latency_s;
  return profile.ttft_s + static_cast<double>(usage.output_tokens) / profile.gen_speed_tps;
}

double estimate_energy(const ModelProfile& profile, const DatacenterProfile& dc,
                       double latency_s) noexcept {
  return profile.effective_power_w() * latency_s / 3600.0 * dc.pue;
}

// L/kWh and mL/Wh are the same ratio.
double energy_to_water(const DatacenterProfile& dc, double energy_wh) noexcept {
  return energy_wh * dc.wue_l_per_kwh;
}

double energy_to_carbon(const DatacenterProfile& dc, double energy_wh) noexcept {
  return energy_wh * dc.cif_g_per_kwh / 1000.0;
}

FootprintEstimate estimate_footprint(const ModelProfile& profile, const DatacenterProfile& dc,
                                     const QueryUsage& usage) noexcept {
  FootprintEstimate fp;
  fp.latency_s = estimate_latency(profile, usage);
  fp.energy_wh = estimate_energy(profile, dc, fp.latency_s);
  fp.water_ml = energy_to_water(dc, fp.energy_wh);
  fp.carbon_g = energy_to_carbon(dc, fp.energy_wh);
  return fp;
}

std::string format_drops(double drops) {
  // Any nonzero amount below a drop and a half still costs something.
  if (drops > 0.0 && drops < 1.5) return "~1 drop";
  const auto rounded = static_cast<long long>(std::llround(drops));
  return std::to_string(rounded) + (rounded == 1 ? " drop" : " drops");
}

std::string format_balloons(double balloons) {
  const std::string num = fixed(balloons, 2);
  return num + (num == "1.00" ? " balloon" : " balloons");
}

std::string format_led_minutes(double minutes) {
  const std::string num = fixed(minutes, 1);
  return num + (num == "1.0" ? " minute" : " minutes");
}

std::string RelatableUnits::compact() const {
  return water_display + ", " + co2_display + ", " + led_display;
}

RelatableUnits to_relatable(const FootprintEstimate& fp, const RelatableConstants& c) {
  RelatableUnits r;
  r.water_drops = fp.water_ml / c.drop_volume_ml;
  r.co2_balloons = fp.carbon_g / c.balloon_mass_g;
  r.led_minutes = fp.energy_wh / c.led_power_w * 60.0;
  r.water_display = format_drops(r.water_drops);
  r.co2_display = format_balloons(r.co2_balloons);
  r.led_display = format_led_minutes(r.led_minutes);
  return r;
}

}  // namespace ecoprompt
