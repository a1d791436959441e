// SPDX-License-Identifier: Apache-2.0
#include "conebessel/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>

#include "conebessel/errors.hpp"
#include "conebessel/parallel.hpp"

namespace conebessel {

namespace {

constexpr double kTanhSinhSpan = 4.0;

struct Node1 {
  double x;
  double comp;
  double w;
};

// Tanh-sinh rule on [0, 1] with step 2^-level.
std::vector<Node1> tanh_sinh(int level) {
  const double h = std::ldexp(1.0, -level);
  const int k_max = static_cast<int>(std::ceil(kTanhSinhSpan / h));
  std::vector<Node1> out;
  out.reserve(2 * k_max + 1);
  for (int k = -k_max; k <= k_max; ++k) {
    const double t = k * h;
    const double s = std::numbers::pi * std::sinh(t);
    const double u = 1.0 / (1.0 + std::exp(-s));
    const double c = 1.0 / (1.0 + std::exp(s));
    const double w = h * std::numbers::pi * std::cosh(t) * u * c;
    if (w > 0.0 && u > 0.0) out.push_back({u, c, w});
  }
  return out;
}

struct SpherePoint {
  std::array<double, 3> dir;
  double w;
};

std::vector<SpherePoint> sphere_rule(int d, int level) {
  const int m = 4 << level;
  std::vector<SpherePoint> out;
  if (d == 1) {
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * std::numbers::pi * j / m;
      out.push_back({{std::cos(th), std::sin(th), 0.0}, 2.0 * std::numbers::pi / m});
    }
    return out;
  }
  const unsigned gl = static_cast<unsigned>(m / 2);
  const std::vector<double> pos = boost::math::legendre_p_zeros<double>(static_cast<int>(gl));
  std::vector<std::pair<double, double>> zw;
  for (double z : pos) {
    const double dp = boost::math::legendre_p_prime(static_cast<int>(gl), z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    zw.emplace_back(z, w);
    if (z != 0.0) zw.emplace_back(-z, w);
  }
  for (const auto& [z, wz] : zw) {
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < m; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / m;
      out.push_back({{rho * std::cos(ph), rho * std::sin(ph), z}, wz * 2.0 * std::numbers::pi / m});
    }
  }
  return out;
}

}  // namespace

ConeQuadrature::ConeQuadrature(const FieldParams& fp, ConeDomain domain, int level, double radius)
    : fp_(fp), domain_(domain), level_(level), radius_(domain == ConeDomain::Unit ? 1.0 : radius) {
  if (fp.q > 2) throw ValidationError("cone quadrature supports q <= 2");
  if (fp.q == 2 && fp.field == Field::H) throw ValidationError("cone quadrature: quaternionic q = 2 unsupported");
  if (level < 0 || level > 12) throw ValidationError("cone quadrature level must lie in [0, 12]");
  if (domain == ConeDomain::Cone && !(radius > 0.0)) throw ValidationError("cone quadrature needs a radius > 0");

  const std::vector<Node1> radial = tanh_sinh(level);
  const double scale = radius_;
  if (fp.q == 1) {
    for (const Node1& n : radial) {
      ConeNode node;
      node.eig = {scale * n.x, 0.0};
      node.comp = {n.comp, 0.0};
      node.weight = scale * n.w;
      nodes_.push_back(node);
    }
    return;
  }
  const std::vector<SpherePoint> sphere = sphere_rule(fp.d, level);
  const double jac0 = std::pow(2.0, 0.5 * fp.d);
  nodes_.reserve(radial.size() * radial.size() * sphere.size());
  for (const Node1& na : radial) {
    const double a = scale * na.x;
    for (const Node1& nt : radial) {
      const double b = a * nt.x;
      const double jac = jac0 * std::pow(0.5 * a * nt.comp, fp.d);
      const double w = scale * na.w * nt.w * a * jac;
      if (!(w > 0.0)) continue;
      for (const SpherePoint& sp : sphere) {
        ConeNode node;
        node.eig = {a, b};
        node.comp = {na.comp, na.comp + a * nt.comp};
        node.dir = sp.dir;
        node.weight = w * sp.w;
        nodes_.push_back(node);
      }
    }
  }
}

Mat ConeQuadrature::matrix(const ConeNode& node) const {
  if (fp_.q == 1) return Mat::Constant(1, 1, cd(node.eig[0]));
  const double c = 0.5 * (node.eig[0] + node.eig[1]);
  const double r = 0.5 * (node.eig[0] - node.eig[1]);
  const auto& n = node.dir;
  Mat x(2, 2);
  if (fp_.d == 1) {
    x << c + r * n[0], r * n[1], r * n[1], c - r * n[0];
  } else {
    x << c + r * n[2], cd(r * n[0], -r * n[1]), cd(r * n[0], r * n[1]), c - r * n[2];
  }
  return x;
}

double ConeQuadrature::det(const ConeNode& node) const {
  return fp_.q == 1 ? node.eig[0] : node.eig[0] * node.eig[1];
}

double ConeQuadrature::det_complement(const ConeNode& node) const {
  return fp_.q == 1 ? node.comp[0] : node.comp[0] * node.comp[1];
}

int default_level(int q) { return q == 1 ? 6 : 3; }

QuadResult cone_integrate(const ConeIntegrand& f, const FieldParams& fp, const QuadSpec& spec) {
  const int level = spec.level > 0 ? spec.level : default_level(fp.q);
  auto integrate = [&](int lv, std::size_t& count) {
    const ConeQuadrature quad(fp, spec.domain, lv, spec.radius);
    const auto& nodes = quad.nodes();
    count = nodes.size();
    const std::size_t chunks = chunk_count(nodes.size());
    std::vector<double> part(chunks, 0.0);
    parallel_chunks(chunks, [&](std::size_t c) {
      const std::size_t lo = c * kChunkSize;
      const std::size_t hi = std::min(nodes.size(), lo + kChunkSize);
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += nodes[i].weight * f(quad.matrix(nodes[i]), nodes[i], quad);
      part[c] = s;
    });
    double total = 0.0;
    for (double p : part) total += p;
    return total;
  };
  QuadResult res;
  std::size_t coarse_count = 0;
  res.value = integrate(level, res.nodes);
  const double coarse = integrate(level - 1, coarse_count);
  res.error = std::abs(res.value - coarse);
  res.flagged = !(res.error <= spec.tol * std::max(std::abs(res.value), 1e-300));
  return res;
}

double laplace_radius(const Mat& y) {
  const double lo = hermitian_eigen(y).values.back();
  if (!(lo > 0.0)) throw DomainError("Laplace integral needs y positive definite");
  return 16.0 * std::log(10.0) / lo;
}

}  // namespace conebessel
