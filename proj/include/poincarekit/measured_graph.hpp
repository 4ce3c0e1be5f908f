#ifndef POINCAREKIT_MEASURED_GRAPH_HPP
#define POINCAREKIT_MEASURED_GRAPH_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

namespace poincarekit {

// Finite connected graph with unit edge lengths and a positive vertex measure.
// Immutable after construction; every operation on it is a pure read.
class MeasuredGraph {
public:
  // adjacency must be symmetric with no self-loops and no parallel edges,
  // measure strictly positive, and the graph connected.
  MeasuredGraph(std::vector<std::vector<int>> adjacency, Eigen::VectorXd measure,
                std::vector<std::string> labels = {});

  static MeasuredGraph from_edges(int vertex_count,
                                  const std::vector<std::pair<int, int>>& edges,
                                  Eigen::VectorXd measure,
                                  std::vector<std::string> labels = {});

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  double measure(int v) const;
  const Eigen::VectorXd& measure_vector() const { return measure_; }
  double total_measure() const { return measure_.sum(); }
  std::size_t edge_count() const { return edge_count_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(int v) const;
  const std::vector<std::string>& labels() const { return labels_; }

  void check_vertex(int v) const; // throws InputError on unknown id

private:
  std::vector<std::vector<int>> adjacency_;
  Eigen::VectorXd measure_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

// Common test substrates.
MeasuredGraph make_path(int n, double measure = 1.0);
MeasuredGraph make_cycle(int n, double measure = 1.0);
MeasuredGraph make_grid(int rows, int cols, double measure = 1.0);
MeasuredGraph make_complete(int n, double measure = 1.0);

} // namespace poincarekit

#endif
