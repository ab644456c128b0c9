#include "mmconv/link.hpp"

#include <cmath>
#include <limits>

#include "mmconv/constants.hpp"
#include "mmconv/error.hpp"

namespace mmconv::link {

void LinkModel::validate() const {
  if (!(omega > 0.0) || !(temperature >= 0.0) || !(atten_db_per_m > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "link needs positive frequency and attenuation, non-negative temperature");
  }
}

double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0) || temperature < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "need omega > 0 and temperature >= 0");
  }
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(kHbar * omega / (kBoltzmann * temperature));
}

LinkNoise link_noise(const LinkModel& link, double length) {
  link.validate();
  if (!(length >= 0.0)) throw Error(ErrorCode::InvalidArgument, "length must be non-negative");
  LinkNoise n;
  n.transmittance = std::pow(10.0, -link.atten_db_per_m * length / 10.0);
  // 1 - t without cancellation for short links.
  const double loss = -std::expm1(-link.atten_db_per_m * length / 10.0 * std::log(10.0));
  n.added_photons = loss * thermal_occupation(link.omega, link.temperature);
  return n;
}

double threshold_length(const LinkModel& link, double n_max) {
  link.validate();
  if (!(n_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "noise threshold must be positive");
  const double nbar = thermal_occupation(link.omega, link.temperature);
  if (nbar <= n_max) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log1p(-n_max / nbar) / std::log(10.0) / link.atten_db_per_m;
}

}  // namespace mmconv::link
