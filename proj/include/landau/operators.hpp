#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "finite_difference.hpp"
#include "gauge.hpp"
#include "params.hpp"
#include "wavefield.hpp"

namespace landau {

enum class OperatorKind {
  P_can_x,
  P_can_y,
  L_can_z,
  P_mech_x,
  P_mech_y,
  L_mech_z,
  P_cons_x,
  P_cons_y,
  L_cons_z,
  L_cons_z_inhomog,
  X_guiding,
  Y_guiding,
  Rc2,
  R2,
  Hamiltonian,
  Position_x,
  Position_y,
  Position_r2,
  Custom,
};

inline std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::P_can_x: return "P_can_x";
    case OperatorKind::P_can_y: return "P_can_y";
    case OperatorKind::L_can_z: return "L_can_z";
    case OperatorKind::P_mech_x: return "P_mech_x";
    case OperatorKind::P_mech_y: return "P_mech_y";
    case OperatorKind::L_mech_z: return "L_mech_z";
    case OperatorKind::P_cons_x: return "P_cons_x";
    case OperatorKind::P_cons_y: return "P_cons_y";
    case OperatorKind::L_cons_z: return "L_cons_z";
    case OperatorKind::L_cons_z_inhomog: return "L_cons_z_inhomog";
    case OperatorKind::X_guiding: return "X_guiding";
    case OperatorKind::Y_guiding: return "Y_guiding";
    case OperatorKind::Rc2: return "Rc2";
    case OperatorKind::R2: return "R2";
    case OperatorKind::Hamiltonian: return "Hamiltonian";
    case OperatorKind::Position_x: return "Position_x";
    case OperatorKind::Position_y: return "Position_y";
    case OperatorKind::Position_r2: return "Position_r2";
    case OperatorKind::Custom: return "Custom";
  }
  return "?";
}

inline bool depends_on_potential(OperatorKind k) {
  switch (k) {
    case OperatorKind::P_can_x:
    case OperatorKind::P_can_y:
    case OperatorKind::L_can_z:
    case OperatorKind::Position_x:
    case OperatorKind::Position_y:
    case OperatorKind::Position_r2:
    case OperatorKind::Custom: return false;
    default: return true;
  }
}

/// Every kind except Custom is self-adjoint.
inline bool is_hermitian(OperatorKind k) { return k != OperatorKind::Custom; }

class GaugeMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridTooCoarseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PlaneWaveExpectationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::Position_x;
  GaugeSpec gauge;
  PhysicalParams params;
  Discretization scheme;
  std::shared_ptr<const RadialFieldProfile> profile;  // L_cons_z_inhomog only
  std::function<cplx(double, double)> multiplier;      // Custom only
  std::string name;

  static OperatorSpec of(OperatorKind kind, const GaugeSpec& gauge,
                         const PhysicalParams& params = {}, Discretization scheme = {}) {
    OperatorSpec s;
    s.kind = kind;
    s.gauge = gauge;
    s.params = params;
    s.scheme = scheme;
    return s;
  }
  static OperatorSpec inhomogeneous_oam(std::shared_ptr<const RadialFieldProfile> profile,
                                        const GaugeSpec& gauge, const PhysicalParams& params = {},
                                        Discretization scheme = {}) {
    OperatorSpec s = of(OperatorKind::L_cons_z_inhomog, gauge, params, scheme);
    s.profile = std::move(profile);
    return s;
  }
  static OperatorSpec custom(std::function<cplx(double, double)> f, std::string name = "custom") {
    OperatorSpec s;
    s.kind = OperatorKind::Custom;
    s.multiplier = std::move(f);
    s.name = std::move(name);
    return s;
  }

  std::string describe() const {
    if (kind == OperatorKind::Custom) return "Custom(" + name + ")";
    return to_string(kind);
  }
};

namespace detail {

/// Flattened field plus the number of untrusted edge cells.
struct Field {
  std::vector<cplx> v;
  std::size_t margin = 0;
};

class OperatorEngine {
 public:
  OperatorEngine(const GridSpec& g, const GaugeSpec& gauge, const PhysicalParams& p,
                 Discretization scheme)
      : g_(g), gauge_(gauge), p_(p), s_(scheme) {
    s_.validate();
    if (s_.covariant && !gauge_.chi.is_zero()) {
      chi_phase_.resize(g_.size());
      for (std::size_t iy = 0; iy < g_.ny; ++iy)
        for (std::size_t ix = 0; ix < g_.nx; ++ix)
          chi_phase_[g_.index(ix, iy)] = std::polar(1.0, p_.e() * gauge_.chi.value(g_.x(ix), g_.y(iy)));
      gauge_.chi = {};
    }
  }

  std::size_t radius() const { return s_.radius(); }

  Field apply(const OperatorSpec& op, const Field& f) const {
    if (chi_phase_.empty() || !depends_on_potential(op.kind)) return apply_base(op, f);
    Field w{std::vector<cplx>(f.v.size()), f.margin};
    for (std::size_t k = 0; k < w.v.size(); ++k) w.v[k] = chi_phase_[k] * f.v[k];
    Field r = apply_base(op, w);
    for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] *= std::conj(chi_phase_[k]);
    return r;
  }

  Field apply_base(const OperatorSpec& op, const Field& f) const {
    const double eb = p_.e() * p_.B();
    switch (op.kind) {
      case OperatorKind::P_can_x: return canonical(f, Axis::x);
      case OperatorKind::P_can_y: return canonical(f, Axis::y);
      case OperatorKind::L_can_z:
        return combine(times_x(canonical(f, Axis::y)), -1.0, times_y(canonical(f, Axis::x)));
      case OperatorKind::P_mech_x: return mechanical(f, Axis::x);
      case OperatorKind::P_mech_y: return mechanical(f, Axis::y);
      case OperatorKind::L_mech_z: return l_mech(f);
      case OperatorKind::P_cons_x: return combine(mechanical(f, Axis::x), eb, times_y(f));
      case OperatorKind::P_cons_y: return combine(mechanical(f, Axis::y), -eb, times_x(f));
      case OperatorKind::L_cons_z: return combine(l_mech(f), -0.5 * eb, times_r2(f));
      case OperatorKind::L_cons_z_inhomog: {
        if (!op.profile) throw std::invalid_argument("L_cons_z_inhomog needs a field profile");
        const auto& prof = *op.profile;
        const double e = p_.e();
        return combine(l_mech(f), -1.0, multiply(f, [&](double x, double y) {
                         return cplx(e * prof.flux(std::hypot(x, y)), 0.0);
                       }));
      }
      case OperatorKind::X_guiding: return combine(times_x(f), -1.0 / eb, mechanical(f, Axis::y));
      case OperatorKind::Y_guiding: return combine(times_y(f), 1.0 / eb, mechanical(f, Axis::x));
      case OperatorKind::Rc2: {
        const Field a = mechanical(mechanical(f, Axis::x), Axis::x);
        const Field b = mechanical(mechanical(f, Axis::y), Axis::y);
        return scaled(combine(a, 1.0, b), 1.0 / (eb * eb));
      }
      case OperatorKind::R2: {
        OperatorSpec xs = op, ys = op;
        xs.kind = OperatorKind::X_guiding;
        ys.kind = OperatorKind::Y_guiding;
        return combine(apply_base(xs, apply_base(xs, f)), 1.0, apply_base(ys, apply_base(ys, f)));
      }
      case OperatorKind::Hamiltonian: return hamiltonian(f);
      case OperatorKind::Position_x: return times_x(f);
      case OperatorKind::Position_y: return times_y(f);
      case OperatorKind::Position_r2: return times_r2(f);
      case OperatorKind::Custom: {
        if (!op.multiplier) throw std::invalid_argument("Custom operator without a multiplier");
        return multiply(f, op.multiplier);
      }
    }
    throw std::logic_error("unknown operator kind");
  }

  /// (p + eA) along one axis, A taken pointwise.
  Field mechanical(const Field& f, Axis axis) const {
    Field out = canonical(f, axis);
    const double e = p_.e();
    for (std::size_t iy = 0; iy < g_.ny; ++iy)
      for (std::size_t ix = 0; ix < g_.nx; ++ix) {
        const Vec2 a = potential_at(gauge_, p_, g_.x(ix), g_.y(iy));
        const std::size_t k = g_.index(ix, iy);
        out.v[k] += e * (axis == Axis::x ? a.x : a.y) * f.v[k];
      }
    return out;
  }

  Field canonical(const Field& f, Axis axis) const {
    auto d = derivative(f.v, g_, axis, s_.order);
    for (auto& z : d) z *= cplx(0.0, -1.0);
    return {std::move(d), f.margin + radius()};
  }

  Field l_mech(const Field& f) const {
    return combine(times_x(mechanical(f, Axis::y)), -1.0, times_y(mechanical(f, Axis::x)));
  }

  Field hamiltonian(const Field& f) const {
    const double inv2m = 0.5 / p_.mass();
    // -(1/2m) lap + (-i e/2m)(div(A psi) + A.grad psi) + e^2 A^2/2m
    const double e = p_.e();
    const auto dxx = second_derivative(f.v, g_, Axis::x, s_.order);
    const auto dyy = second_derivative(f.v, g_, Axis::y, s_.order);
    std::vector<cplx> ax_psi(f.v.size()), ay_psi(f.v.size());
    std::vector<double> ax(f.v.size()), ay(f.v.size());
    for (std::size_t iy = 0; iy < g_.ny; ++iy)
      for (std::size_t ix = 0; ix < g_.nx; ++ix) {
        const std::size_t k = g_.index(ix, iy);
        const Vec2 a = potential_at(gauge_, p_, g_.x(ix), g_.y(iy));
        ax[k] = a.x;
        ay[k] = a.y;
        ax_psi[k] = a.x * f.v[k];
        ay_psi[k] = a.y * f.v[k];
      }
    const auto d_axpsi = derivative(ax_psi, g_, Axis::x, s_.order);
    const auto d_aypsi = derivative(ay_psi, g_, Axis::y, s_.order);
    const auto dpsi_x = derivative(f.v, g_, Axis::x, s_.order);
    const auto dpsi_y = derivative(f.v, g_, Axis::y, s_.order);
    Field out{std::vector<cplx>(f.v.size()), f.margin + radius()};
    const cplx mi(0.0, -1.0);
    for (std::size_t k = 0; k < out.v.size(); ++k) {
      out.v[k] = -inv2m * (dxx[k] + dyy[k]) +
                 mi * e * inv2m * (d_axpsi[k] + d_aypsi[k] + ax[k] * dpsi_x[k] + ay[k] * dpsi_y[k]) +
                 e * e * inv2m * (ax[k] * ax[k] + ay[k] * ay[k]) * f.v[k];
    }
    return out;
  }

  template <class M>
  Field multiply(const Field& f, M&& m) const {
    Field out{std::vector<cplx>(f.v.size()), f.margin};
    parallel_rows(g_.ny, [&](std::size_t iy) {
      const double y = g_.y(iy);
      for (std::size_t ix = 0; ix < g_.nx; ++ix) {
        const std::size_t k = g_.index(ix, iy);
        out.v[k] = cplx(m(g_.x(ix), y)) * f.v[k];
      }
    });
    return out;
  }
  Field times_x(const Field& f) const {
    return multiply(f, [](double x, double) { return x; });
  }
  Field times_y(const Field& f) const {
    return multiply(f, [](double, double y) { return y; });
  }
  Field times_r2(const Field& f) const {
    return multiply(f, [](double x, double y) { return x * x + y * y; });
  }

  static Field combine(const Field& a, double cb, const Field& b) {
    Field out{std::vector<cplx>(a.v.size()), std::max(a.margin, b.margin)};
    for (std::size_t k = 0; k < a.v.size(); ++k) out.v[k] = a.v[k] + cb * b.v[k];
    return out;
  }
  static Field scaled(Field f, double s) {
    for (auto& z : f.v) z *= s;
    return f;
  }

 private:
  GridSpec g_;
  GaugeSpec gauge_;
  PhysicalParams p_;
  Discretization s_;
  std::vector<cplx> chi_phase_;
};

inline void check_gauge(const OperatorSpec& op, const WaveField& psi) {
  if (depends_on_potential(op.kind) && !(op.gauge == psi.gauge())) {
    throw GaugeMismatchError("operator " + op.describe() + " is tagged with gauge " +
                             op.gauge.describe() + " but the field lives in " +
                             psi.gauge().describe());
  }
}

inline void check_spacing(const OperatorSpec& op, const GridSpec& g) {
  const double limit = op.params.magnetic_length() / 8.0 * (1.0 + 1e-9);
  if (op.kind == OperatorKind::Hamiltonian && (g.dx() > limit || g.dy() > limit)) {
    throw GridTooCoarseError("Hamiltonian needs grid spacing <= l_B/8");
  }
}

inline WaveField apply_unchecked(const OperatorSpec& op, const WaveField& psi) {
  check_gauge(op, psi);
  const OperatorEngine eng(psi.grid(), psi.gauge(), op.params, op.scheme);
  Field f{std::vector<cplx>(psi.values().begin(), psi.values().end()), psi.margin()};
  Field r = eng.apply(op, f);
  return psi.with_values(std::move(r.v), r.margin);
}

}  // namespace detail

/// op applied to psi. Edge cells reached by the stencils are added to the margin.
inline WaveField apply(const OperatorSpec& op, const WaveField& psi) {
  detail::check_gauge(op, psi);
  detail::check_spacing(op, psi.grid());
  return detail::apply_unchecked(op, psi);
}

/// ab psi, with each factor applied in turn (b first).
inline WaveField apply_product(const OperatorSpec& a, const OperatorSpec& b, const WaveField& psi) {
  return apply(a, apply(b, psi));
}

struct ExpectationReport {
  OperatorKind kind{};
  std::string operator_name;
  std::string state;
  cplx value;
  double error_estimate = 0.0;
  GridSpec grid;
  std::size_t margin = 0;
  std::vector<std::string> warnings;

  double real() const { return value.real(); }
  /// |Im| below 1e-8 (1 + |Re|) for self-adjoint kinds.
  bool imaginary_part_ok() const {
    return !is_hermitian(kind) || std::abs(value.imag()) < 1e-8 * (1.0 + std::abs(value.real()));
  }
};

struct ExpectationOptions {
  bool estimate_error = true;
  double norm_tolerance = 1e-3;
};

namespace detail {

inline cplx raw_expectation(const OperatorSpec& op, const WaveField& psi) {
  const WaveField a = apply_unchecked(op, psi);
  const std::size_t margin = a.margin();
  const cplx num = integrate_interior(psi.grid(), margin, [&](std::size_t ix, std::size_t iy) {
    return std::conj(psi(ix, iy)) * a(ix, iy);
  });
  const double den = integrate_interior(psi.grid(), margin, [&](std::size_t ix, std::size_t iy) {
    return std::norm(psi(ix, iy));
  });
  return num / den;
}

}  // namespace detail

/// <psi|op|psi> / <psi|psi> by trapezoidal quadrature. The error estimate is
/// |v_h - v_2h| from the same field sampled on every second grid point.
inline ExpectationReport expectation(const OperatorSpec& op, const WaveField& psi,
                                     ExpectationOptions opts = {}) {
  if (psi.label().plane_wave_normalized) {
    throw PlaneWaveExpectationError(
        "expectation: plane-wave normalised states give divergent diagonal expectations; use a "
        "wave packet");
  }
  detail::check_gauge(op, psi);
  detail::check_spacing(op, psi.grid());
  const double nrm = norm_squared(psi);
  if (std::abs(nrm - 1.0) > opts.norm_tolerance) {
    throw std::invalid_argument("expectation: state is not normalised (norm^2 = " +
                                std::to_string(nrm) + ")");
  }
  ExpectationReport r;
  r.kind = op.kind;
  r.operator_name = op.describe();
  r.state = psi.label().describe();
  r.grid = psi.grid();
  r.value = detail::raw_expectation(op, psi);
  r.margin = psi.margin() + 0;
  const double limit = op.params.magnetic_length() / 8.0 * (1.0 + 1e-9);
  if (psi.grid().dx() > limit || psi.grid().dy() > limit) {
    r.warnings.push_back("grid spacing exceeds l_B/8");
  }
  if (opts.estimate_error) {
    const WaveField coarse = psi.coarsened();
    const std::size_t need = 4 * op.scheme.radius() + 1;
    if (coarse.grid().nx > 2 * need && coarse.grid().ny > 2 * need) {
      r.error_estimate = std::abs(r.value - detail::raw_expectation(op, coarse));
    } else {
      r.warnings.push_back("grid too small for a refinement estimate");
    }
  }
  if (!r.imaginary_part_ok()) r.warnings.push_back("imaginary part above tolerance");
  return r;
}

/// Expected result of a commutator: a scalar times psi or another operator applied to psi.
using CommutatorTarget = std::variant<cplx, OperatorSpec>;

/// ||(ab - ba) psi - expected psi|| / ||psi|| over the common interior.
inline double commutator_residual(const OperatorSpec& a, const OperatorSpec& b, const WaveField& psi,
                                  const CommutatorTarget& expected) {
  const WaveField ab = detail::apply_unchecked(a, detail::apply_unchecked(b, psi));
  const WaveField ba = detail::apply_unchecked(b, detail::apply_unchecked(a, psi));
  std::optional<WaveField> target;
  std::size_t margin = std::max(ab.margin(), ba.margin());
  if (const auto* op = std::get_if<OperatorSpec>(&expected)) {
    target = detail::apply_unchecked(*op, psi);
    margin = std::max(margin, target->margin());
  }
  const cplx scalar = std::holds_alternative<cplx>(expected) ? std::get<cplx>(expected) : cplx{};
  const GridSpec& g = psi.grid();
  const double res = integrate_interior(g, margin, [&](std::size_t ix, std::size_t iy) {
    const cplx t = target ? (*target)(ix, iy) : scalar * psi(ix, iy);
    return std::norm(ab(ix, iy) - ba(ix, iy) - t);
  });
  const double nrm = integrate_interior(g, margin, [&](std::size_t ix, std::size_t iy) {
    return std::norm(psi(ix, iy));
  });
  return std::sqrt(res / nrm);
}

/// ||op psi - lambda psi|| / ||psi||.
inline double eigen_residual(const OperatorSpec& op, const WaveField& psi, cplx lambda) {
  const WaveField a = detail::apply_unchecked(op, psi);
  const GridSpec& g = psi.grid();
  const double res = integrate_interior(g, a.margin(), [&](std::size_t ix, std::size_t iy) {
    return std::norm(a(ix, iy) - lambda * psi(ix, iy));
  });
  const double nrm = integrate_interior(g, a.margin(), [&](std::size_t ix, std::size_t iy) {
    return std::norm(psi(ix, iy));
  });
  return std::sqrt(res / nrm);
}

struct GuidingCenterReport {
  ExpectationReport rc2;
  ExpectationReport r2;
  ExpectationReport l_can;
  double johnson_lippmann_residual = 0.0;
};

/// <r_c^2>, <R^2>, <L_can_z> and |<L_can_z> - (<r_c^2> - <R^2>)/(2 l_B^2)|.
inline GuidingCenterReport guiding_center_report(const WaveField& psi, const PhysicalParams& p,
                                                 Discretization scheme = {},
                                                 ExpectationOptions opts = {}) {
  GuidingCenterReport r;
  r.rc2 = expectation(OperatorSpec::of(OperatorKind::Rc2, psi.gauge(), p, scheme), psi, opts);
  r.r2 = expectation(OperatorSpec::of(OperatorKind::R2, psi.gauge(), p, scheme), psi, opts);
  r.l_can = expectation(OperatorSpec::of(OperatorKind::L_can_z, psi.gauge(), p, scheme), psi, opts);
  r.johnson_lippmann_residual =
      std::abs(r.l_can.real() - (r.rc2.real() - r.r2.real()) / (2.0 * p.magnetic_length_sq()));
  return r;
}

struct DensityCurrentMaps {
  GridSpec grid;
  std::size_t margin = 0;
  std::vector<double> density;
  std::vector<double> jx;
  std::vector<double> jy;
};

/// |psi|^2 and j = (e/m) Re[psi^* (p + eA) psi].
inline DensityCurrentMaps density_current_maps(const WaveField& psi, const PhysicalParams& p,
                                               Discretization scheme = {}) {
  const auto px = detail::apply_unchecked(
      OperatorSpec::of(OperatorKind::P_mech_x, psi.gauge(), p, scheme), psi);
  const auto py = detail::apply_unchecked(
      OperatorSpec::of(OperatorKind::P_mech_y, psi.gauge(), p, scheme), psi);
  DensityCurrentMaps m;
  m.grid = psi.grid();
  m.margin = px.margin();
  const std::size_t n = psi.grid().size();
  m.density.resize(n);
  m.jx.resize(n);
  m.jy.resize(n);
  const double c = p.e() / p.mass();
  const auto v = psi.values();
  const auto vx = px.values();
  const auto vy = py.values();
  for (std::size_t k = 0; k < n; ++k) {
    m.density[k] = std::norm(v[k]);
    m.jx[k] = c * (std::conj(v[k]) * vx[k]).real();
    m.jy[k] = c * (std::conj(v[k]) * vy[k]).real();
  }
  return m;
}

/// Expectation of L_mech_z - e flux(r) for a radial field profile.
inline ExpectationReport conserved_oam_inhomogeneous(std::shared_ptr<const RadialFieldProfile> profile,
                                                     const WaveField& psi, const PhysicalParams& p,
                                                     Discretization scheme = {},
                                                     ExpectationOptions opts = {}) {
  if (!profile) throw std::invalid_argument("conserved_oam_inhomogeneous: missing field profile");
  return expectation(OperatorSpec::inhomogeneous_oam(std::move(profile), psi.gauge(), p, scheme), psi,
                     opts);
}

}  // namespace landau
