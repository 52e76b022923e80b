#include "resonator/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "resonator/errors.hpp"

namespace resonator {

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form grouping tolerance; the values are exact trig expressions.
constexpr double kGroupTol = 1e-9;

double two_one_minus_cos(double theta) { return 2.0 * (1.0 - std::cos(theta)); }

std::vector<double> chain_values(std::size_t N) {
  std::vector<double> v(N);
  for (std::size_t i = 1; i <= N; ++i) {
    v[i - 1] = two_one_minus_cos(static_cast<double>(i - 1) * kPi /
                                 static_cast<double>(N));
  }
  return v;
}

}  // namespace

std::vector<double> ClosedFormSpectrum::expanded() const {
  std::vector<double> out;
  out.reserve(N);
  for (const auto& g : groups) {
    out.insert(out.end(), g.multiplicity, g.a);
  }
  return out;
}

ClosedFormSpectrum chain_eigenvalues(std::size_t N) {
  if (N < 2) {
    throw InvalidDims("chain spectrum needs N >= 2");
  }
  ClosedFormSpectrum spec;
  spec.kind = SpectrumKind::Chain;
  spec.N = N;
  for (std::size_t i = 1; i <= N; ++i) {
    const double theta =
        static_cast<double>(i - 1) * kPi / static_cast<double>(N);
    spec.groups.push_back({two_one_minus_cos(theta), 1, theta});
  }
  return spec;
}

std::size_t ring_alpha(std::size_t N) {
  return N % 2 == 1 ? (N + 1) / 2 : N / 2;
}

ClosedFormSpectrum ring_eigenvalues(std::size_t N) {
  if (N < 3) {
    throw InvalidDims("ring spectrum needs N >= 3");
  }
  ClosedFormSpectrum spec;
  spec.kind = SpectrumKind::Ring;
  spec.N = N;
  spec.groups.push_back({0.0, 1, 0.0});
  for (std::size_t t = 2; t <= ring_alpha(N); ++t) {
    const double theta =
        2.0 * static_cast<double>(t - 1) * kPi / static_cast<double>(N);
    spec.groups.push_back({two_one_minus_cos(theta), 2, theta});
  }
  if (N % 2 == 0) {
    spec.groups.push_back({4.0, 1, kPi});
  }
  return spec;
}

ClosedFormSpectrum grid_eigenvalues(std::size_t m, std::size_t n) {
  if (m < 2 || n < m) {
    throw InvalidDims("grid spectrum needs n >= m >= 2");
  }
  const auto am = chain_values(m);
  const auto an = chain_values(n);
  std::vector<double> sums;
  sums.reserve(m * n);
  for (double g : am) {
    for (double a : an) {
      sums.push_back(g + a);
    }
  }
  std::sort(sums.begin(), sums.end());

  ClosedFormSpectrum spec;
  spec.kind = SpectrumKind::Grid;
  spec.N = m * n;
  spec.dims = GridDims{m, n};
  for (std::size_t k = 0; k < sums.size();) {
    std::size_t j = k;
    while (j < sums.size() && sums[j] - sums[k] <= kGroupTol) {
      ++j;
    }
    spec.groups.push_back({sums[k], j - k, std::nullopt});
    k = j;
  }
  return spec;
}

NonUniformResult nonuniform_chain3(double eps1, double eps2) {
  if (!(eps1 > 0.0) || !(eps1 < 1.0) || !(eps2 > 0.0) || !(eps2 < 1.0)) {
    throw DegenerateGap("gaps must satisfy 0 < eps < 1");
  }
  const double L1 = std::abs(std::log(eps1));
  const double L2 = std::abs(std::log(eps2));
  if (L1 == 0.0 || L2 == 0.0) {
    throw DegenerateGap("|log eps| vanishes");
  }
  const double root = std::sqrt(L1 * L1 + L2 * L2 - L1 * L2);

  NonUniformResult out;
  const double ratio = L1 / L2;
  out.ratio_warning = ratio > 8.0 || ratio < 0.125;
  out.spectrum.kind = SpectrumKind::NonUniformChain3;
  out.spectrum.N = 3;
  out.spectrum.log_units = true;
  out.spectrum.groups.push_back({0.0, 1, std::nullopt});
  out.spectrum.groups.push_back({L1 + L2 - root, 1, std::nullopt});  // a_2
  out.spectrum.groups.push_back({L1 + L2 + root, 1, std::nullopt});  // a_3
  return out;
}

double chain_charpoly(std::size_t N, double a) {
  // f_N(a) = -a sin(N theta)/sin(theta) with cos(theta) = (2 - a)/2 on (0,4);
  // evaluated through the exact root product where the trig form degenerates
  // or a leaves (0,4) (grid factors shift a outside that window).
  if (a > 0.0 && a < 4.0) {
    const double theta = std::acos(0.5 * (2.0 - a));
    const double s = std::sin(theta);
    if (s >= 1e-8) {
      return -a * std::sin(static_cast<double>(N) * theta) / s;
    }
  }
  double prod = N % 2 == 0 ? 1.0 : -1.0;
  for (double root : chain_values(N)) {
    prod *= a - root;
  }
  return prod;
}

double ring_charpoly(std::size_t N, double a) {
  if (a >= 0.0 && a <= 4.0) {
    const double theta = std::acos(0.5 * (2.0 - a));
    return 2.0 * (std::cos(static_cast<double>(N) * theta) - 1.0);
  }
  // Outside [0,4]: product over the closed-form roots with multiplicity.
  double prod = N % 2 == 0 ? 1.0 : -1.0;
  for (const auto& g : ring_eigenvalues(N).groups) {
    for (std::size_t k = 0; k < g.multiplicity; ++k) {
      prod *= a - g.a;
    }
  }
  return prod;
}

double grid_charpoly(std::size_t m, std::size_t n, double a) {
  // det(A_grid - aI) = prod_gamma f_n(a - a_m^gamma), the block-determinant
  // factorization of the Kronecker sum.
  double prod = 1.0;
  for (double g : chain_values(m)) {
    prod *= chain_charpoly(n, a - g);
  }
  return prod;
}

std::vector<EigenPair> dense_eigen(const Eigen::MatrixXd& sym) {
  if (sym.rows() != sym.cols()) {
    throw NotSymmetric("matrix is not square");
  }
  const double scale = std::max(sym.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (sym - sym.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw NotSymmetric("matrix asymmetry exceeds 1e-10 relative");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (sym + sym.transpose()));
  if (solver.info() != Eigen::Success) {
    throw SingularSystem("symmetric eigensolver failed");
  }
  std::vector<EigenPair> pairs(static_cast<std::size_t>(sym.rows()));
  for (Eigen::Index i = 0; i < sym.rows(); ++i) {
    pairs[static_cast<std::size_t>(i)] = {solver.eigenvalues()[i],
                                          solver.eigenvectors().col(i)};
  }
  return pairs;
}

DistinctGroups distinct_count(const ClosedFormSpectrum& spec, double tol) {
  if (!(tol > 0.0)) {
    throw InvalidParams("grouping tolerance must be positive");
  }
  std::vector<double> values = spec.expanded();
  std::sort(values.begin(), values.end());
  DistinctGroups out;
  for (std::size_t k = 0; k < values.size();) {
    std::size_t j = k;
    while (j < values.size() && values[j] - values[k] <= tol) {
      ++j;
    }
    out.groups.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(k),
                            values.begin() + static_cast<std::ptrdiff_t>(j));
    k = j;
  }
  out.count = out.groups.size();
  return out;
}

Eigen::VectorXd chain_eigenvector(std::size_t N, std::size_t i) {
  if (i < 1 || i > N) {
    throw IndexOutOfRange("chain eigenvector index out of range");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(N));
  if (i == 1) {
    v.setOnes();
    return v;
  }
  const double theta =
      static_cast<double>(i - 1) * kPi / static_cast<double>(N);
  const double s = std::sin(theta);
  for (std::size_t l = 1; l <= N; ++l) {
    v[static_cast<Eigen::Index>(l - 1)] =
        (std::sin(static_cast<double>(l) * theta) -
         std::sin(static_cast<double>(l - 1) * theta)) /
        s;
  }
  return v;
}

RingBasis ring_eigenbasis(std::size_t N, std::size_t t) {
  const auto spec = ring_eigenvalues(N);
  if (t < 1 || t > spec.groups.size()) {
    throw IndexOutOfRange("ring spectral group index out of range");
  }
  RingBasis basis;
  basis.a = spec.groups[t - 1].a;
  const Eigen::Index n = static_cast<Eigen::Index>(N);
  if (t == 1) {
    basis.vectors.push_back(Eigen::VectorXd::Ones(n));
    return basis;
  }
  if (N % 2 == 0 && t == spec.groups.size()) {
    Eigen::VectorXd v(n);
    for (std::size_t l = 1; l <= N; ++l) {
      v[static_cast<Eigen::Index>(l - 1)] = l % 2 == 1 ? 1.0 : -1.0;
    }
    basis.vectors.push_back(v);
    return basis;
  }
  const double theta = *spec.groups[t - 1].theta;
  const double s = std::sin(theta);
  Eigen::VectorXd b1(n), b2(n);
  for (std::size_t l = 1; l <= N; ++l) {
    b1[static_cast<Eigen::Index>(l - 1)] =
        -std::sin((static_cast<double>(l) - 2.0) * theta) / s;
    b2[static_cast<Eigen::Index>(l - 1)] =
        -std::sin((static_cast<double>(l) - 1.0) * theta) / s;
  }
  basis.vectors.push_back(b1);
  basis.vectors.push_back(b2);
  return basis;
}

Eigen::MatrixXd path_laplacian(std::size_t N) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N),
                                            static_cast<Eigen::Index>(N));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(N); ++i) {
    A(i, i) = (i == 0 || i == static_cast<Eigen::Index>(N) - 1) ? 1.0 : 2.0;
    if (i > 0) {
      A(i, i - 1) = A(i - 1, i) = -1.0;
    }
  }
  if (N == 1) {
    A(0, 0) = 0.0;
  }
  return A;
}

Eigen::MatrixXd cycle_laplacian(std::size_t N) {
  const Eigen::Index n = static_cast<Eigen::Index>(N);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = 2.0;
    A(i, (i + 1) % n) -= 1.0;
    A((i + 1) % n, i) -= 1.0;
  }
  return A;
}

Eigen::MatrixXd grid_laplacian(std::size_t m, std::size_t n) {
  const Eigen::Index N = static_cast<Eigen::Index>(m * n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  auto idx = [n](std::size_t gamma, std::size_t alpha) {
    return static_cast<Eigen::Index>((gamma - 1) * n + alpha - 1);
  };
  for (std::size_t g = 1; g <= m; ++g) {
    for (std::size_t a = 1; a <= n; ++a) {
      const Eigen::Index i = idx(g, a);
      if (a < n) {
        A(i, idx(g, a + 1)) = A(idx(g, a + 1), i) = -1.0;
      }
      if (g < m) {
        A(i, idx(g + 1, a)) = A(idx(g + 1, a), i) = -1.0;
      }
    }
  }
  for (Eigen::Index i = 0; i < N; ++i) {
    A(i, i) = -A.row(i).sum();
  }
  return A;
}

LocalizationReport localization_check(const Eigen::MatrixXd& C,
                                      const ClosedFormSpectrum& spec,
                                      double rho) {
  if (!(rho > 0.0)) {
    throw InvalidParams("rho must be positive");
  }
  const auto pairs = dense_eigen(C);
  if (pairs.size() != spec.N) {
    throw DimensionMismatch("matrix size does not match the spectrum");
  }

  // Assign each normalized eigenvalue to the nearest closed-form group.
  std::vector<std::size_t> counts(spec.groups.size(), 0);
  std::vector<double> residuals(spec.groups.size(), 0.0);
  for (const auto& p : pairs) {
    const double x = p.value / rho;
    std::size_t best = 0;
    double best_d = std::abs(x - spec.groups[0].a);
    for (std::size_t g = 1; g < spec.groups.size(); ++g) {
      const double d = std::abs(x - spec.groups[g].a);
      if (d < best_d) {
        best_d = d;
        best = g;
      }
    }
    ++counts[best];
    residuals[best] = std::max(residuals[best], best_d);
  }
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    if (counts[g] != spec.groups[g].multiplicity) {
      throw CountMismatch("group around a = " + std::to_string(spec.groups[g].a) +
                          " captured " + std::to_string(counts[g]) +
                          " eigenvalues, expected " +
                          std::to_string(spec.groups[g].multiplicity));
    }
  }

  LocalizationReport report;
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    report.groups.push_back({spec.groups[g].a, spec.groups[g].multiplicity,
                             residuals[g], residuals[g] * rho});
    report.max_residual = std::max(report.max_residual, residuals[g]);
  }
  return report;
}

}  // namespace resonator
