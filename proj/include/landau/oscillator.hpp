#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "params.hpp"
#include "special.hpp"

namespace landau {

using cplx = std::complex<double>;

/// State in the (n+1)-fold degenerate shell n_x + n_y = n of the isotropic
/// 2-D oscillator. Component i holds |n_x = n - i, n_y = i>, so the shell
/// basis runs |n,0>, |n-1,1>, ..., |0,n>.
struct FockVector2D {
  int n = 0;
  Eigen::VectorXcd coefficients;
  bool normalized = false;

  static std::size_t slot(int n, int nx) { return static_cast<std::size_t>(n - nx); }
  cplx coefficient(int nx) const { return coefficients(static_cast<Eigen::Index>(slot(n, nx))); }
  double norm() const { return coefficients.norm(); }
};

/// |n, m> with n = n_+ + n_-, m = n_+ - n_-.
struct SphericalLabel {
  int n = 0;
  int m = 0;

  SphericalLabel(int n_, int m_) : n(n_), m(m_) {
    if (n < 0 || std::abs(m) > n || (n + m) % 2 != 0) {
      throw std::invalid_argument("SphericalLabel: need n >= 0, |m| <= n and n + m even (n=" +
                                  std::to_string(n) + ", m=" + std::to_string(m) + ")");
    }
  }
  int n_plus() const { return (n + m) / 2; }
  int n_minus() const { return (n - m) / 2; }
};

/// Matrix of L_z = i (a_x a_y^dag - a_x^dag a_y) in the shell basis.
inline Eigen::MatrixXcd lz_matrix(int n) {
  if (n < 0) throw std::invalid_argument("lz_matrix: n must be >= 0");
  const int dim = n + 1;
  Eigen::MatrixXcd lz = Eigen::MatrixXcd::Zero(dim, dim);
  for (int nx = 0; nx <= n; ++nx) {
    const int ny = n - nx;
    const auto col = static_cast<Eigen::Index>(FockVector2D::slot(n, nx));
    // a_x a_y^dag |nx, ny> = sqrt(nx (ny+1)) |nx-1, ny+1>
    if (nx > 0) {
      const auto row = static_cast<Eigen::Index>(FockVector2D::slot(n, nx - 1));
      lz(row, col) += cplx(0.0, std::sqrt(double(nx) * (ny + 1)));
    }
    // a_x^dag a_y |nx, ny> = sqrt((nx+1) ny) |nx+1, ny-1>
    if (ny > 0) {
      const auto row = static_cast<Eigen::Index>(FockVector2D::slot(n, nx + 1));
      lz(row, col) -= cplx(0.0, std::sqrt(double(nx + 1) * ny));
    }
  }
  return lz;
}

/// Scale v so that its first component with modulus above `floor` is real and positive.
inline void fix_phase(Eigen::VectorXcd& v, double floor = 1e-12) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > floor) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = cplx(v(i).real(), 0.0);
      return;
    }
  }
}

struct ZeemanSplit {
  int n = 0;
  double lambda = 0.0;
  std::vector<double> eigenvalues;            // descending
  std::vector<Eigen::VectorXcd> eigenvectors;  // unit norm, phase fixed
};

/// First-order degenerate perturbation theory for Delta H = lambda L_z.
inline ZeemanSplit zeeman_split(int n, double lambda) {
  const Eigen::MatrixXcd h = lambda * lz_matrix(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("zeeman_split: eigensolver failed");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n + 1));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals(a) > vals(b); });
  ZeemanSplit z;
  z.n = n;
  z.lambda = lambda;
  for (auto i : order) {
    z.eigenvalues.push_back(vals(i));
    Eigen::VectorXcd v = solver.eigenvectors().col(i);
    v.normalize();
    fix_phase(v);
    z.eigenvectors.push_back(std::move(v));
  }
  return z;
}

struct BasisChange {
  FockVector2D state;
  double raw_norm = 0.0;  // norm of the double-sum output before normalisation
};

/// |n, m> in the Cartesian shell basis from the closed double sum over (k, j)
/// with weights C(n+, k) C(n-, j) i^{k-j} sqrt((n-k-j)! (k+j)!).
inline BasisChange basis_change(int n, int m) {
  const SphericalLabel lab(n, m);
  const int np = lab.n_plus(), nm = lab.n_minus();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n + 1);
  const double log_pref = -0.5 * (log_factorial(np) + log_factorial(nm) + n * std::log(2.0));
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k <= np; ++k) {
    for (int j = 0; j <= nm; ++j) {
      const int ny = k + j, nx = n - k - j;
      if (nx < 0) continue;
      const double mag = std::exp(log_pref + log_binomial(np, k) + log_binomial(nm, j) +
                                  0.5 * (log_factorial(nx) + log_factorial(ny)));
      c(static_cast<Eigen::Index>(FockVector2D::slot(n, nx))) += mag * ipow[((k - j) % 4 + 4) % 4];
    }
  }
  BasisChange out;
  out.raw_norm = c.norm();
  if (out.raw_norm == 0.0) throw std::runtime_error("basis_change: vanishing vector");
  c /= out.raw_norm;
  fix_phase(c);
  out.state = FockVector2D{n, std::move(c), true};
  return out;
}

/// Columns |n, n>, |n, n-2>, ..., |n, -n>.
inline Eigen::MatrixXcd basis_change_matrix(int n) {
  Eigen::MatrixXcd u(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) u.col(i) = basis_change(n, n - 2 * i).state.coefficients;
  return u;
}

struct NonsplittingRow {
  int m = 0;
  double energy = 0.0;
};

struct NonsplittingTable {
  int n = 0;
  double delta_b = 0.0;
  double omega_l_prime = 0.0;
  std::vector<NonsplittingRow> rows;
  double spread = 0.0;               // max - min Landau energy over m
  ZeemanSplit oscillator_contrast;   // shell n = 1 split by lambda = e delta_b / (2 m_e)
};

/// Landau energies (2n+1) omega'_L with omega'_L = e (B + delta_b)/(2 m_e), one row per m.
inline NonsplittingTable landau_nonsplitting_check(int n, const std::vector<int>& ms, double delta_b,
                                                   const PhysicalParams& p = {}) {
  if (n < 0) throw std::invalid_argument("landau_nonsplitting_check: n must be >= 0");
  if (!(delta_b > -p.B())) throw std::invalid_argument("landau_nonsplitting_check: need delta_b > -B");
  NonsplittingTable t;
  t.n = n;
  t.delta_b = delta_b;
  const PhysicalParams shifted = p.with_field(p.B() + delta_b);
  t.omega_l_prime = shifted.larmor_frequency();
  for (int m : ms) {
    if (m > n) throw std::invalid_argument("landau_nonsplitting_check: m must satisfy m <= n");
    t.rows.push_back({m, (2.0 * n + 1.0) * t.omega_l_prime});
  }
  if (!t.rows.empty()) {
    const auto [lo, hi] = std::minmax_element(t.rows.begin(), t.rows.end(),
                                              [](auto& a, auto& b) { return a.energy < b.energy; });
    t.spread = hi->energy - lo->energy;
  }
  t.oscillator_contrast = zeeman_split(1, p.e() * delta_b / (2.0 * p.mass()));
  return t;
}

}  // namespace landau
