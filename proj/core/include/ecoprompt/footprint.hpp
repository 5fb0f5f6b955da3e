#pragma once

// Per-query inference footprint model.
//
// Energy is derived from the time a query keeps an accelerator busy:
//
//   energy_wh = (gpu_power_w * gpu_utilization + nongpu_power_w) * latency_s / 3600 * pue
//
// and then converted with datacenter multipliers: WUE (L/kWh, numerically
// mL/Wh) for water and CIF (g/kWh) for carbon. Everything here is a modeled
// estimate of operational inference cost; training and embodied hardware
// footprints are not part of the model.

#include <optional>
#include <string>

namespace ecoprompt {

struct ModelProfile {
  std::string name = "default-llm";
  double ttft_s = 0.5;          // time to first token
  double gen_speed_tps = 40.0;  // output tokens per second
  double gpu_power_w = 700.0;   // peak board power
  double gpu_utilization = 0.55;
  double nongpu_power_w = 70.0;  // CPU/RAM/network share per query

  double effective_power_w() const noexcept {
    return gpu_power_w * gpu_utilization + nongpu_power_w;
  }

  bool operator==(const ModelProfile&) const = default;
};

struct DatacenterProfile {
  std::string name = "default-dc";
  double pue = 1.2;
  double wue_l_per_kwh = 2.0;  // on-site cooling + off-site generation water
  double cif_g_per_kwh = 400.0;

  bool operator==(const DatacenterProfile&) const = default;
};

/// Throws Error(config) when an invariant does not hold.
void validate(const ModelProfile& profile);
void validate(const DatacenterProfile& dc);

struct QueryUsage {
  long long input_tokens = 0;
  long long output_tokens = 0;
  std::optional<double> measured_latency_s;

  bool operator==(const QueryUsage&) const = default;
};

/// Throws Error(validation) for negative counts or a negative measured latency.
void validate(const QueryUsage& usage);

struct FootprintEstimate {
  double energy_wh = 0.0;
  double water_ml = 0.0;
  double carbon_g = 0.0;
  double latency_s = 0.0;

  FootprintEstimate& operator+=(const FootprintEstimate& other) noexcept {
    energy_wh += other.energy_wh;
    water_ml += other.water_ml;
    carbon_g += other.carbon_g;
    latency_s += other.latency_s;
    return *this;
  }

  bool operator==(const FootprintEstimate&) const = default;
};

/// Every serialized estimate carries this label.
inline constexpr const char* kEstimateLabel = "modeled estimate";

double estimate_latency(const ModelProfile& profile, const QueryUsage& usage) noexcept;
double estimate_energy(const ModelProfile& profile, const DatacenterProfile& dc,
                       double latency_s) noexcept;
double energy_to_water(const DatacenterProfile& dc, double energy_wh) noexcept;
double energy_to_carbon(const DatacenterProfile& dc, double energy_wh) noexcept;

FootprintEstimate estimate_footprint(const ModelProfile& profile, const DatacenterProfile& dc,
                                     const QueryUsage& usage) noexcept;

// ---------------------------------------------------------------------------
// Child-relatable units

struct RelatableConstants {
  double drop_volume_ml = 0.25;
  double balloon_mass_g = 25.0;  // ~13 L party balloon of CO2
  double led_power_w = 10.0;

  bool operator==(const RelatableConstants&) const = default;
};

void validate(const RelatableConstants& constants);

struct RelatableUnits {
  double water_drops = 0.0;
  double co2_balloons = 0.0;
  double led_minutes = 0.0;

  std::string water_display;   // "3 drops", "~1 drop"
  std::string co2_display;     // "0.01 balloons"
  std::string led_display;     // "2.3 minutes"

  /// "3 drops, 0.01 balloons, 2.3 minutes"
  std::string compact() const;
};

RelatableUnits to_relatable(const FootprintEstimate& fp, const RelatableConstants& constants);

/// Nearest whole drop; any nonzero amount under 1.5 drops is shown as "~1 drop".
std::string format_drops(double drops);
std::string format_balloons(double balloons);
std::string format_led_minutes(double minutes);

}  // namespace ecoprompt
