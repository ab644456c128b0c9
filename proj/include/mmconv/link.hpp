#pragma once

// Thermal noise added by a lossy link modeled as a beam splitter whose
// second port sees a thermal bath at the link temperature.

#include <string>

namespace mmconv::link {

struct LinkModel {
  double omega = 0.0;           // carrier, rad/s
  double temperature = 0.0;     // kelvin
  double atten_db_per_m = 0.0;  // dB/m

  void validate() const;
};

/// Bose-Einstein occupation 1 / (exp(hbar omega / kT) - 1); 0 at T = 0.
double thermal_occupation(double omega, double temperature);

struct LinkNoise {
  double transmittance = 1.0;  // t = 10^(-alpha l / 10)
  double added_photons = 0.0;  // N = (1 - t) nbar
};

LinkNoise link_noise(const LinkModel& link, double length);

/// Length at which the added noise reaches n_max; +infinity when the thermal
/// occupation itself does not exceed n_max.
double threshold_length(const LinkModel& link, double n_max);

/// One cell of the link comparison table, as shipped in the data directory.
struct LinkRow {
  std::string band;          // e.g. "microwave"
  std::string name;          // config section name
  LinkModel model;
  std::string atten_bound;   // "" for an estimate, "lower" when alpha is a lower bound
  std::string reference_occupation;
  std::string reference_l001;
  std::string reference_l01;
};

}  // namespace mmconv::link
