#include "resonator/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "resonator/errors.hpp"

namespace resonator {

namespace {

void check_scales(double R, double eps) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw InvalidDims("radius must be positive and finite");
  }
  if (!(eps > 0.0) || !(eps < R)) {
    throw InvalidGap("gap must satisfy 0 < eps < R");
  }
}

}  // namespace

Arrangement::Arrangement(Kind kind, std::vector<Resonator> resonators,
                         double radius, double gap,
                         std::optional<GridDims> dims)
    : kind_(kind),
      resonators_(std::move(resonators)),
      radius_(radius),
      gap_(gap),
      grid_dims_(std::move(dims)) {
  validate();
}

Arrangement Arrangement::chain(std::size_t N, double R, double eps,
                               bool allow_small) {
  check_scales(R, eps);
  if (N == 0 || (N <= 2 && !allow_small)) {
    throw InvalidDims("chain needs N > 2 (N <= 2 only in cross-check mode)");
  }
  std::vector<Resonator> res;
  res.reserve(N);
  const double pitch = 2.0 * R + eps;
  for (std::size_t l = 1; l <= N; ++l) {
    res.push_back({Vec3(static_cast<double>(l - 1) * pitch, 0.0, 0.0), R});
  }
  return Arrangement(Kind::Chain, std::move(res), R, eps, std::nullopt);
}

Arrangement Arrangement::ring(std::size_t N, double R, double eps) {
  check_scales(R, eps);
  if (N <= 2) {
    throw InvalidDims("ring needs N > 2");
  }
  // Unique regular N-gon with side 2R + eps.
  const double side = 2.0 * R + eps;
  const double circumradius = side / (2.0 * std::sin(std::numbers::pi / N));
  std::vector<Resonator> res;
  res.reserve(N);
  for (std::size_t l = 1; l <= N; ++l) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(l - 1) / N;
    res.push_back({Vec3(circumradius * std::cos(phi),
                        circumradius * std::sin(phi), 0.0),
                   R});
  }
  return Arrangement(Kind::Ring, std::move(res), R, eps, std::nullopt);
}

Arrangement Arrangement::grid(std::size_t m, std::size_t n, double R,
                              double eps) {
  check_scales(R, eps);
  if (m < 2 || n < m) {
    throw InvalidDims("grid needs n >= m >= 2");
  }
  std::vector<Resonator> res;
  res.reserve(m * n);
  const double pitch = 2.0 * R + eps;
  for (std::size_t gamma = 1; gamma <= m; ++gamma) {
    for (std::size_t alpha = 1; alpha <= n; ++alpha) {
      res.push_back({Vec3(static_cast<double>(alpha - 1) * pitch,
                          static_cast<double>(gamma - 1) * pitch, 0.0),
                     R});
    }
  }
  return Arrangement(Kind::Grid, std::move(res), R, eps, GridDims{m, n});
}

const Vec3& Arrangement::center(std::size_t i) const {
  if (i < 1 || i > resonators_.size()) {
    throw IndexOutOfRange("resonator index out of range");
  }
  return resonators_[i - 1].center;
}

void Arrangement::validate() const {
  const double pitch = 2.0 * radius_ + gap_;
  const std::size_t N = resonators_.size();
  for (std::size_t i = 0; i < N; ++i) {
    if (!resonators_[i].center.allFinite()) {
      throw InvalidDims("resonator center not finite");
    }
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d = (resonators_[i].center - resonators_[j].center).norm();
      // Every pair is either adjacent (distance = pitch to 1e-12 relative)
      // or strictly farther apart.
      if (d < pitch * (1.0 - 1e-12)) {
        throw InvalidDims("resonators overlap or sit closer than one pitch");
      }
    }
  }
}

std::vector<std::size_t> TangencyGraph::degrees() const {
  std::vector<std::size_t> deg(n_vertices, 0);
  for (const auto& [i, j] : edges) {
    ++deg[i - 1];
    ++deg[j - 1];
  }
  return deg;
}

bool TangencyGraph::has_edge(std::size_t i, std::size_t j) const {
  Edge e = i < j ? Edge{i, j} : Edge{j, i};
  return std::binary_search(edges.begin(), edges.end(), e);
}

TangencyGraph tangency_graph(const Arrangement& arr) {
  TangencyGraph g;
  const std::size_t N = arr.size();
  g.n_vertices = N;
  const double pitch = arr.pitch();
  for (std::size_t i = 1; i <= N; ++i) {
    for (std::size_t j = i + 1; j <= N; ++j) {
      const double d = (arr.center(i) - arr.center(j)).norm();
      if (std::abs(d - pitch) <= 1e-9 * pitch) {
        g.edges.emplace_back(i, j);
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<GapRegion> gap_regions(const Arrangement& arr, double r) {
  if (!(r > 0.0) || !(r < arr.radius() / 4.0)) {
    throw InvalidCutoff("gap-region cutoff must satisfy 0 < r < R/4");
  }
  std::vector<GapRegion> regions;
  for (const Edge& e : tangency_graph(arr).edges) {
    regions.push_back(
        {e, 0.5 * (arr.center(e.first) + arr.center(e.second)), r});
  }
  return regions;
}

std::vector<GapRegion> gap_regions(const Arrangement& arr) {
  return gap_regions(arr, arr.radius() / 5.0);
}

}  // namespace resonator
