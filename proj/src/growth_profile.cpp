#include "poincarekit/growth_profile.hpp"

#include <algorithm>

#include "poincarekit/errors.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {

std::string to_string(GrowthMode mode) {
  switch (mode) {
    case GrowthMode::VertexRatio: return "vertex-ratio";
    case GrowthMode::HalfBallRatio: return "half-ball-ratio";
    case GrowthMode::Absolute: return "absolute";
  }
  return "?";
}

GrowthMode growth_mode_from_string(const std::string& s) {
  if (s == "vertex-ratio") return GrowthMode::VertexRatio;
  if (s == "half-ball-ratio") return GrowthMode::HalfBallRatio;
  if (s == "absolute") return GrowthMode::Absolute;
  throw InputError("unknown growth mode '" + s + "'");
}

GrowthProfile::GrowthProfile(std::vector<double> radii, std::vector<double> values,
                             GrowthMode mode, bool require_monotone, bool saturated)
    : radii_(std::move(radii)), values_(std::move(values)), mode_(mode),
      saturated_(saturated) {
  if (radii_.empty()) throw InputError("GrowthProfile: empty radii");
  if (radii_.size() != values_.size())
    throw InputError("GrowthProfile: radii/values length mismatch");
  if (radii_.front() < 0.0) throw InputError("GrowthProfile: radii must be nonnegative");
  for (std::size_t i = 0; i + 1 < radii_.size(); ++i) {
    if (!(radii_[i] < radii_[i + 1]))
      throw InputError("GrowthProfile: radii must be strictly increasing");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0)) throw InputError("GrowthProfile: values must be nonnegative");
    if (require_monotone && i > 0 && values_[i] < values_[i - 1])
      throw InputError("GrowthProfile: values must be nondecreasing in radius");
  }
  if (mode_ != GrowthMode::Absolute && values_.front() < 1.0)
    throw InputError("GrowthProfile: ratio-mode value at smallest radius must be >= 1");
}

double GrowthProfile::value_at(double r) const {
  if (r < 0.0) throw InputError("GrowthProfile: negative radius");
  auto it = std::lower_bound(radii_.begin(), radii_.end(), r);
  if (it == radii_.end()) {
    if (saturated_) return values_.back();
    throw InputError("GrowthProfile: radius " + format_double(r) +
                     " beyond table end " + format_double(radii_.back()));
  }
  return values_[static_cast<std::size_t>(it - radii_.begin())];
}

} // namespace poincarekit
