#ifndef POINCAREKIT_GROWTH_PROFILE_HPP
#define POINCAREKIT_GROWTH_PROFILE_HPP

#include <string>
#include <vector>

namespace poincarekit {

enum class GrowthMode {
  VertexRatio,   // max_x nu(B(x,R)) / nu(x)
  HalfBallRatio, // max_x nu(B(x,R)) / nu(B(x,1/2)); B(x,1/2) = {x} on graphs
  Absolute,      // max_x nu(B(x,R))
};

std::string to_string(GrowthMode mode);
GrowthMode growth_mode_from_string(const std::string& s);

// Tabulated radius -> value function with right-continuous step evaluation:
// value_at(r) is the value at the smallest tabulated radius >= r. Evaluation
// past the table throws, never extrapolates, unless the table is marked
// saturated (the underlying graph was swept to its diameter, so the exact
// growth really is constant from the last radius on).
class GrowthProfile {
public:
  GrowthProfile(std::vector<double> radii, std::vector<double> values, GrowthMode mode,
                bool require_monotone = true, bool saturated = false);

  double value_at(double r) const;
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }
  GrowthMode mode() const { return mode_; }
  bool saturated() const { return saturated_; }
  double max_radius() const { return radii_.back(); }
  std::size_t size() const { return radii_.size(); }

private:
  std::vector<double> radii_;
  std::vector<double> values_;
  GrowthMode mode_;
  bool saturated_;
};

} // namespace poincarekit

#endif
