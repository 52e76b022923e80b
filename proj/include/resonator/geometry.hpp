#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace resonator {

using Vec3 = Eigen::Vector3d;

enum class Kind { Chain, Ring, Grid };

/// A single spherical resonator B_R(center).
struct Resonator {
  Vec3 center;
  double radius;
};

struct GridDims {
  std::size_t m;  // rows
  std::size_t n;  // columns, n >= m
};

/// Unordered pair of 1-based resonator indices, stored with first < second.
using Edge = std::pair<std::size_t, std::size_t>;

/// Identical spheres of radius R placed at gap eps in one of the three
/// layouts. Chain centers sit at ((l-1)(2R+eps), 0, 0); ring centers at the
/// vertices of the regular N-gon of side 2R+eps in the x1x2-plane, labelled
/// counterclockwise; grid entry (row gamma, column alpha) is resonator
/// i = (gamma-1)n + alpha at ((alpha-1)(2R+eps), (gamma-1)(2R+eps), 0).
class Arrangement {
 public:
  // N = 1, 2 are accepted only with allow_small = true (cross-check mode).
  static Arrangement chain(std::size_t N, double R, double eps,
                           bool allow_small = false);
  static Arrangement ring(std::size_t N, double R, double eps);
  static Arrangement grid(std::size_t m, std::size_t n, double R, double eps);

  Kind kind() const { return kind_; }
  std::size_t size() const { return resonators_.size(); }
  double radius() const { return radius_; }
  double gap() const { return gap_; }
  const std::optional<GridDims>& grid_dims() const { return grid_dims_; }
  const std::vector<Resonator>& resonators() const { return resonators_; }
  const Vec3& center(std::size_t i) const;  // 1-based

  /// Center distance of adjacent resonators, 2R + eps.
  double pitch() const { return 2.0 * radius_ + gap_; }

 private:
  Arrangement(Kind kind, std::vector<Resonator> resonators, double radius,
              double gap, std::optional<GridDims> dims);
  void validate() const;

  Kind kind_;
  std::vector<Resonator> resonators_;
  double radius_;
  double gap_;
  std::optional<GridDims> grid_dims_;
};

/// Edges connect resonators whose centers are exactly one pitch apart; these
/// are the pairs whose capacitance entries carry the divergent gap factor.
struct TangencyGraph {
  std::size_t n_vertices = 0;
  std::vector<Edge> edges;  // sorted lexicographically

  std::vector<std::size_t> degrees() const;
  bool has_edge(std::size_t i, std::size_t j) const;
};

TangencyGraph tangency_graph(const Arrangement& arr);

/// Narrow region between an adjacent pair: the ball of radius r around the
/// midpoint of the two centers, minus the resonators.
struct GapRegion {
  Edge pair;
  Vec3 center;
  double r;
};

/// One region per tangency edge; requires 0 < r < R/4.
std::vector<GapRegion> gap_regions(const Arrangement& arr, double r);

/// Default cutoff r = R/5.
std::vector<GapRegion> gap_regions(const Arrangement& arr);

}  // namespace resonator
