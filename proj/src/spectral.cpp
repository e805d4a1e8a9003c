#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "finitype/dimcalc.hpp"

namespace finitype {

namespace {

constexpr double kRelTarget = 1e-11;  // leaves room under the 1e-10 contract after slack

// Irreducible nonnegative block.
Enclosure perron_block(const Matrix<double>& b) {
  const Eigen::Index n = b.rows();
  if (n == 1) return {b(0, 0), b(0, 0)};
  Eigen::VectorXd v(n);
  {
    Eigen::EigenSolver<Matrix<double>> es(b, true);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::abs(es.eigenvectors()(i, best).real());
  }
  double vmax = v.maxCoeff();
  if (!(vmax > 0) || !std::isfinite(vmax)) v.setOnes(); else v /= vmax;
  for (Eigen::Index i = 0; i < n; ++i) v[i] = std::max(v[i], 1e-12);

  // Power iteration on B + I (primitive since B is irreducible) tightens the
  // Collatz-Wielandt bounds min/max (Bv)_i / v_i.
  Enclosure e{0.0, std::numeric_limits<double>::infinity()};
  for (int it = 0; it < 200000; ++it) {
    Eigen::VectorXd bv = b * v;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = bv[i] / v[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    e.lo = std::max(e.lo, lo);
    e.hi = std::min(e.hi, hi);
    if (e.hi - e.lo <= kRelTarget * e.hi) break;
    v = bv + v;
    v /= v.maxCoeff();
  }
  // Outward slack for rounding in the bounds themselves.
  double slack = 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n);
  e.lo *= (1.0 - slack);
  e.hi *= (1.0 + slack);
  return e;
}

std::vector<std::vector<Eigen::Index>> pattern_components(const Matrix<double>& m) {
  const Eigen::Index n = m.rows();
  // Reachability closure is fine at these sizes.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) reach[i][j] = m(i, j) != 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      if (reach[i][k])
        for (Eigen::Index j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  std::vector<char> done(n, 0);
  std::vector<std::vector<Eigen::Index>> comps;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<Eigen::Index> c{i};
    done[i] = 1;
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (!done[j] && reach[i][j] && reach[j][i]) {
        c.push_back(j);
        done[j] = 1;
      }
    comps.push_back(std::move(c));
  }
  return comps;
}

}  // namespace

Enclosure spectral_radius(const Matrix<double>& m) {
  if (m.rows() != m.cols()) throw DimError(DimErrc::NotSquare, "spectral_radius needs a square matrix");
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    bool any = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m(i, j) < 0) throw std::invalid_argument("dimcalc: spectral_radius needs a nonnegative matrix");
      any = any || m(i, j) > 0;
    }
    if (!any) throw DimError(DimErrc::ZeroRow, "matrix row " + std::to_string(i) + " is zero");
  }
  if (n == 1) return {m(0, 0), m(0, 0)};
  // Fast path: all entries positive means irreducible.
  if ((m.array() > 0).all()) return perron_block(m);
  Enclosure best{0.0, 0.0};
  for (const auto& c : pattern_components(m)) {
    const Eigen::Index k = static_cast<Eigen::Index>(c.size());
    Matrix<double> b(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) b(i, j) = m(c[i], c[j]);
    Enclosure e = perron_block(b);
    best.lo = std::max(best.lo, e.lo);
    best.hi = std::max(best.hi, e.hi);
  }
  return best;
}

Enclosure spectral_radius(const RationalMatrix& m) { return spectral_radius(to_double(m)); }

}  // namespace finitype
