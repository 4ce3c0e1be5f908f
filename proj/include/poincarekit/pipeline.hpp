#ifndef POINCAREKIT_PIPELINE_HPP
#define POINCAREKIT_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poincarekit/discretize.hpp"
#include "poincarekit/measured_graph.hpp"
#include "poincarekit/poincare.hpp"

namespace poincarekit {
namespace pipeline {

struct PipelineConfig {
  std::vector<double> sigmas = {1.0};
  double r0 = 1.0;
  double L = 1.0;
  std::uint64_t seed = 0;
  int trials = 16;
  int lemma35_u_count = 20;
  std::vector<double> lemma35_R = {2, 3, 4};
  std::vector<double> report_R; // empty: 1..min(diameter, 8)
  std::vector<int> centers;     // empty: eccentricity-minimizing vertex
};

struct Lemma35Cell {
  int center;
  double R, sigma;
  discretize::GradientCheckReport check;
};

// End-to-end reproduction of the discretization proof chain at epsilon = 1,
// with every intermediate quantity surfaced. Sections fill in order so a
// caller holding the report still has the finished parts if a later stage
// throws.
struct PipelineReport {
  double epsilon = 1.0;
  int host_vertices = 0;
  int host_diameter = 0;
  double f_3_5 = 0, f_7_5 = 0;
  double lambda = 0;
  double valid_R_min = 0;
  bool regime_reachable = false;
  std::string regime_flag;
  std::vector<std::pair<double, double>> C_loc;  // (sigma, constant)
  std::vector<std::pair<double, double>> C0;     // (sigma, theorem constant)
  std::optional<discretize::MultiplicityReport> multiplicity;
  std::optional<discretize::QiReport> qi;
  std::optional<discretize::TransferReport> transfer;
  std::vector<Lemma35Cell> lemma35;
  std::vector<poincare::PoincareReport> ratios;
  bool any_violation = false;
  bool complete = false;
};

void run_pipeline(const MeasuredGraph& host, const PipelineConfig& config,
                  PipelineReport& out);

} // namespace pipeline
} // namespace poincarekit

#endif
