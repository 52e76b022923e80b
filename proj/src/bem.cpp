#include "resonator/bem.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>

#include "resonator/errors.hpp"

namespace resonator {

namespace {

constexpr double kPi = std::numbers::pi;

// Golden-angle spiral on the unit sphere: quasi-uniform, equal-area panels.
std::vector<Vec3> fibonacci_sphere(std::size_t count) {
  std::vector<Vec3> pts;
  pts.reserve(count);
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) /
                               static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(k);
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

// Polar product rule on the equivalent-area disc of one panel, mapped back
// onto the sphere. Nodes in the tangent plane at the panel center; weights
// renormalized so they sum to the panel area.
struct DiscRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
};

DiscRule cap_quadrature(const Vec3& panel_center, const Vec3& sphere_center,
                        double R, double area, int n_radial, int n_angular) {
  const Vec3 normal = (panel_center - sphere_center).normalized();
  Vec3 t1 = normal.unitOrthogonal();
  Vec3 t2 = normal.cross(t1);
  const double a = std::sqrt(area / kPi);

  DiscRule rule;
  double total = 0.0;
  for (int i = 0; i < n_radial; ++i) {
    // Midpoint rule in r^2 keeps the radial weights equal-area.
    const double r = a * std::sqrt((i + 0.5) / n_radial);
    for (int k = 0; k < n_angular; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / n_angular;
      const Vec3 flat = panel_center + r * std::cos(phi) * t1 +
                        r * std::sin(phi) * t2;
      rule.points.push_back(sphere_center +
                            R * (flat - sphere_center).normalized());
      rule.weights.push_back(1.0);
      total += 1.0;
    }
  }
  for (double& w : rule.weights) {
    w *= area / total;
  }
  return rule;
}

}  // namespace

BEMContext::BEMContext(const Arrangement& arr, std::size_t per_sphere)
    : arr_(arr), per_sphere_(per_sphere) {}

BEMContext BEMContext::assemble(const Arrangement& arr,
                                std::size_t panels_per_sphere) {
  if (panels_per_sphere < 100) {
    throw InvalidParams("need at least 100 panels per sphere");
  }
  BEMContext ctx(arr, panels_per_sphere);
  const std::size_t N = arr.size();
  const double R = arr.radius();
  ctx.area_ = 4.0 * kPi * R * R / static_cast<double>(panels_per_sphere);

  // Spheres in the right half of a chain get the x1-mirrored cloud, so that
  // mirror-symmetric arrangements produce mirror-symmetric discretizations.
  const auto base = fibonacci_sphere(panels_per_sphere);
  ctx.centers_.reserve(N * panels_per_sphere);
  for (std::size_t l = 0; l < N; ++l) {
    const bool mirror = arr.kind() == Kind::Chain && 2 * (l + 1) > N + 1;
    for (const Vec3& u : base) {
      Vec3 dir = u;
      if (mirror) {
        dir.x() = -dir.x();
      }
      ctx.centers_.push_back(arr.resonators()[l].center + R * dir);
      ctx.normals_.push_back(dir);
      ctx.sphere_of_.push_back(l);
    }
  }

  const Eigen::Index P = static_cast<Eigen::Index>(ctx.centers_.size());
  ctx.S_.resize(P, P);
  // Diagonal: exact self-integral of a spherical cap of area A, which equals
  // the flat equivalent-area disc value a/2 with a = sqrt(A/pi).
  const double self = -0.5 * std::sqrt(ctx.area_ / kPi);
  const double panel_radius = std::sqrt(ctx.area_ / kPi);

  // Panel pairs closer than a few radii get the kernel integrated over the
  // source cap instead of the midpoint value; averaging the two source
  // choices keeps S symmetric.
  auto near_value = [&](std::size_t p, std::size_t q, int nr, int na) {
    double acc = 0.0;
    for (std::size_t s : {p, q}) {
      const std::size_t other = s == p ? q : p;
      const Vec3& sphere_center =
          arr.resonators()[ctx.sphere_of_[s]].center;
      const DiscRule rule = cap_quadrature(ctx.centers_[s], sphere_center, R,
                                           ctx.area_, nr, na);
      double sum = 0.0;
      for (std::size_t k = 0; k < rule.points.size(); ++k) {
        sum += -rule.weights[k] /
               (4.0 * kPi * (ctx.centers_[other] - rule.points[k]).norm());
      }
      acc += 0.5 * sum;
    }
    return acc;
  };

  for (Eigen::Index p = 0; p < P; ++p) {
    ctx.S_(p, p) = self;
    for (Eigen::Index q = p + 1; q < P; ++q) {
      const std::size_t sp = static_cast<std::size_t>(p);
      const std::size_t sq = static_cast<std::size_t>(q);
      const double r = (ctx.centers_[sp] - ctx.centers_[sq]).norm();
      double v;
      if (r < 3.0 * panel_radius) {
        v = near_value(sp, sq, 6, 12);
      } else if (r < 8.0 * panel_radius) {
        v = near_value(sp, sq, 3, 6);
      } else {
        v = -ctx.area_ / (4.0 * kPi * r);
      }
      ctx.S_(p, q) = v;
      ctx.S_(q, p) = v;
    }
  }

  ctx.neg_llt_.compute(-ctx.S_);
  if (ctx.neg_llt_.info() != Eigen::Success) {
    throw SingularSystem("single-layer matrix is not negative definite");
  }

  // psi_l = S^{-1}[chi_l], reused by capacitance and field evaluation.
  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(P, static_cast<Eigen::Index>(N));
  for (Eigen::Index p = 0; p < P; ++p) {
    chi(p, static_cast<Eigen::Index>(ctx.sphere_of_[static_cast<std::size_t>(p)])) = 1.0;
  }
  ctx.psi_ = -ctx.neg_llt_.solve(chi);
  return ctx;
}

Eigen::VectorXd BEMContext::solve(const Eigen::VectorXd& b) const {
  return -neg_llt_.solve(b);
}

Eigen::VectorXcd BEMContext::solve(const Eigen::VectorXcd& b) const {
  Eigen::VectorXd re = -neg_llt_.solve(b.real().eval());
  Eigen::VectorXd im = -neg_llt_.solve(b.imag().eval());
  return re + std::complex<double>(0.0, 1.0) * im;
}

Eigen::VectorXd BEMContext::resonator_integrals(
    const Eigen::VectorXd& density) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(arr_.size()));
  for (std::size_t p = 0; p < centers_.size(); ++p) {
    out[static_cast<Eigen::Index>(sphere_of_[p])] +=
        density[static_cast<Eigen::Index>(p)] * area_;
  }
  return out;
}

Eigen::VectorXcd BEMContext::resonator_integrals(
    const Eigen::VectorXcd& density) const {
  return resonator_integrals(density.real().eval()).cast<std::complex<double>>() +
         std::complex<double>(0.0, 1.0) *
             resonator_integrals(density.imag().eval()).cast<std::complex<double>>();
}

double BEMContext::evaluate_laplace(const Eigen::VectorXd& density,
                                    const Vec3& x) const {
  double sum = 0.0;
  for (std::size_t p = 0; p < centers_.size(); ++p) {
    const double r = (x - centers_[p]).norm();
    sum += -density[static_cast<Eigen::Index>(p)] * area_ / (4.0 * kPi * r);
  }
  return sum;
}

std::complex<double> BEMContext::evaluate_helmholtz(
    const Eigen::VectorXcd& density, double k, const Vec3& x) const {
  std::complex<double> sum = 0.0;
  for (std::size_t p = 0; p < centers_.size(); ++p) {
    const double r = (x - centers_[p]).norm();
    const std::complex<double> kernel =
        -std::exp(std::complex<double>(0.0, k * r)) / (4.0 * kPi * r);
    sum += density[static_cast<Eigen::Index>(p)] * kernel * area_;
  }
  return sum;
}

double BEMContext::panel_diameter() const {
  return 2.0 * std::sqrt(area_ / kPi);
}

bool BEMContext::gap_underresolved() const {
  return panel_diameter() > arr_.gap();
}

void BEMContext::require_exterior(const Vec3& x) const {
  for (const Resonator& res : arr_.resonators()) {
    if ((x - res.center).norm() <= res.radius) {
      throw PointInsideResonator("evaluation point lies inside a resonator");
    }
  }
}

BEMCapacitanceResult bem_capacitance(const BEMContext& ctx) {
  const std::size_t N = ctx.arrangement().size();
  Eigen::MatrixXd C(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t j = 0; j < N; ++j) {
    const Eigen::VectorXd integrals =
        ctx.resonator_integrals(ctx.charge_basis().col(static_cast<Eigen::Index>(j)).eval());
    C.col(static_cast<Eigen::Index>(j)) = -integrals;
  }

  BEMCapacitanceResult result;
  const double scale = C.cwiseAbs().maxCoeff();
  result.asymmetry = (C - C.transpose()).cwiseAbs().maxCoeff() / scale;
  result.matrix.entries = 0.5 * (C + C.transpose());
  result.matrix.provenance = Provenance::BEM;
  result.resolution_warning = N > 1 && ctx.gap_underresolved();
  return result;
}

BEMCapacitanceResult bem_capacitance(const Arrangement& arr,
                                     std::size_t panels_per_sphere) {
  return bem_capacitance(BEMContext::assemble(arr, panels_per_sphere));
}

}  // namespace resonator
