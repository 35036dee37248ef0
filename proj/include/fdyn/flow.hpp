#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "fdyn/complex_core.hpp"
#include "fdyn/fji.hpp"

namespace fdyn {

namespace flows {

/// dz/dt = lambda z, A_t z = z exp(lambda t).
template <typename Scalar>
struct Linear {
  Complex<Scalar> lambda{-1, 0};
  friend bool operator==(const Linear&, const Linear&) = default;
};

/// dx/dt = -y + x(4 - x^2 - y^2), dy/dt = x + y(4 - x^2 - y^2); the circle
/// of radius 2 is an attracting limit cycle.
struct LimitCycle {
  friend bool operator==(const LimitCycle&, const LimitCycle&) = default;
};

/// dz/dt = a z + exp(i t). Non-autonomous: the time-t solution maps only
/// form a group at multiples of the period 2 pi.
template <typename Scalar>
struct PeriodicForced {
  Scalar a = Scalar(0.01);
  friend bool operator==(const PeriodicForced&, const PeriodicForced&) = default;
};

template <typename Scalar>
using ClosedForm = std::variant<Linear<Scalar>, LimitCycle, PeriodicForced<Scalar>>;

/// Fixed-step classical Runge-Kutta integration of a closed-form flow's
/// right-hand side.
template <typename Scalar>
struct NumericRK4 {
  ClosedForm<Scalar> base = Linear<Scalar>{};
  Scalar dt = Scalar(1e-3);
  friend bool operator==(const NumericRK4&, const NumericRK4&) = default;
};

}  // namespace flows

template <typename Scalar>
using BasicFlowSpec = std::variant<flows::Linear<Scalar>, flows::LimitCycle,
                                   flows::PeriodicForced<Scalar>, flows::NumericRK4<Scalar>>;

using FlowSpec = BasicFlowSpec<double>;

template <typename Scalar>
void validate_flow(const BasicFlowSpec<Scalar>& flow) {
  if (const auto* lin = std::get_if<flows::Linear<Scalar>>(&flow); lin && !is_finite(lin->lambda))
    throw std::invalid_argument("flow: non-finite lambda");
  if (const auto* pf = std::get_if<flows::PeriodicForced<Scalar>>(&flow); pf && !std::isfinite(pf->a))
    throw std::invalid_argument("flow: non-finite a");
  if (const auto* rk = std::get_if<flows::NumericRK4<Scalar>>(&flow)) {
    if (!std::isfinite(rk->dt) || !(rk->dt > 0)) throw std::invalid_argument("flow: dt must be > 0");
    validate_flow<Scalar>(std::visit([](const auto& b) { return BasicFlowSpec<Scalar>(b); }, rk->base));
  }
}

template <typename Scalar>
bool is_autonomous(const BasicFlowSpec<Scalar>& flow) {
  if (std::holds_alternative<flows::PeriodicForced<Scalar>>(flow)) return false;
  if (const auto* rk = std::get_if<flows::NumericRK4<Scalar>>(&flow))
    return !std::holds_alternative<flows::PeriodicForced<Scalar>>(rk->base);
  return true;
}

namespace detail {

template <typename Scalar>
Complex<Scalar> forcing_offset(Scalar a) {
  return Complex<Scalar>(a, 1) / (1 + a * a);
}

template <typename Scalar>
Complex<Scalar> closed_rhs(const flows::ClosedForm<Scalar>& f, Scalar t, const Complex<Scalar>& z) {
  return std::visit(
      [&](const auto& k) -> Complex<Scalar> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, flows::Linear<Scalar>>) {
          return k.lambda * z;
        } else if constexpr (std::is_same_v<K, flows::LimitCycle>) {
          return Complex<Scalar>(0, 1) * z + z * (4 - std::norm(z));
        } else {
          return k.a * z + std::polar(Scalar(1), t);
        }
      },
      f);
}

template <typename Scalar>
std::optional<Complex<Scalar>> closed_apply(const flows::ClosedForm<Scalar>& f, const Complex<Scalar>& z,
                                            Scalar t) {
  return std::visit(
      [&](const auto& k) -> std::optional<Complex<Scalar>> {
        using K = std::decay_t<decltype(k)>;
        Complex<Scalar> w;
        if constexpr (std::is_same_v<K, flows::Linear<Scalar>>) {
          w = z * std::exp(k.lambda * t);
        } else if constexpr (std::is_same_v<K, flows::LimitCycle>) {
          const Scalar rho0 = std::abs(z);
          if (rho0 == 0) return Complex<Scalar>(0, 0);
          // rho(t) = 2 e^{4t} (4/rho0^2 + e^{8t} - 1)^{-1/2}, rewritten to avoid e^{8t} overflow.
          const Scalar q = 1 + (4 / (rho0 * rho0) - 1) * std::exp(-8 * t);
          if (!(q > 0)) return std::nullopt;
          const Scalar rho = 2 / std::sqrt(q);
          w = z * (rho / rho0) * std::polar(Scalar(1), t);
        } else {
          const Complex<Scalar> off = forcing_offset(k.a);
          w = (z + off) * std::exp(k.a * t) - off * std::polar(Scalar(1), t);
        }
        if (!is_finite(w)) return std::nullopt;
        return w;
      },
      f);
}

// Inverse of the solution map from time 0 to time t.
template <typename Scalar>
std::optional<Complex<Scalar>> closed_inverse(const flows::ClosedForm<Scalar>& f,
                                              const Complex<Scalar>& w, Scalar t) {
  if (const auto* pf = std::get_if<flows::PeriodicForced<Scalar>>(&f)) {
    const Complex<Scalar> off = forcing_offset(pf->a);
    const Complex<Scalar> z = (w + off * std::polar(Scalar(1), t)) * std::exp(-pf->a * t) - off;
    if (!is_finite(z)) return std::nullopt;
    return z;
  }
  return closed_apply(f, w, -t);
}

template <typename Scalar>
std::optional<Complex<Scalar>> rk4_integrate(const flows::ClosedForm<Scalar>& f, Complex<Scalar> z,
                                             Scalar t_from, Scalar t_to, Scalar dt) {
  const Scalar span = t_to - t_from;
  const auto steps = static_cast<long long>(std::ceil(std::abs(span) / dt - Scalar(1e-9)));
  if (steps <= 0) return z;
  const Scalar h = span / static_cast<Scalar>(steps);
  Scalar t = t_from;
  for (long long s = 0; s < steps; ++s) {
    const Complex<Scalar> k1 = closed_rhs(f, t, z);
    const Complex<Scalar> k2 = closed_rhs(f, t + h / 2, z + (h / 2) * k1);
    const Complex<Scalar> k3 = closed_rhs(f, t + h / 2, z + (h / 2) * k2);
    const Complex<Scalar> k4 = closed_rhs(f, t + h, z + h * k3);
    z += (h / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    t = t_from + span * static_cast<Scalar>(s + 1) / static_cast<Scalar>(steps);
    if (!is_finite(z)) return std::nullopt;
  }
  return z;
}

}  // namespace detail

/// A_t z: the solution at time t of the flow's ODE started from z at time 0.
/// nullopt when the trajectory leaves every bounded set before time t.
template <typename Scalar>
std::optional<Complex<Scalar>> try_flow_apply(const BasicFlowSpec<Scalar>& flow, const Complex<Scalar>& z,
                                              Scalar t) {
  if (t == 0) return z;
  if (const auto* rk = std::get_if<flows::NumericRK4<Scalar>>(&flow))
    return detail::rk4_integrate(rk->base, z, Scalar(0), t, rk->dt);
  return std::visit(
      [&](const auto& k) -> std::optional<Complex<Scalar>> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, flows::NumericRK4<Scalar>>) {
          return std::nullopt;
        } else {
          return detail::closed_apply(flows::ClosedForm<Scalar>(k), z, t);
        }
      },
      flow);
}

/// Inverse of the time-t solution map (time t back to time 0). For autonomous
/// flows this is A_{-t}; for PeriodicForced it coincides with A_{-t} only when
/// t is a multiple of 2 pi.
template <typename Scalar>
std::optional<Complex<Scalar>> try_flow_inverse(const BasicFlowSpec<Scalar>& flow,
                                                const Complex<Scalar>& w, Scalar t) {
  if (t == 0) return w;
  if (const auto* rk = std::get_if<flows::NumericRK4<Scalar>>(&flow))
    return detail::rk4_integrate(rk->base, w, t, Scalar(0), rk->dt);
  return std::visit(
      [&](const auto& k) -> std::optional<Complex<Scalar>> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, flows::NumericRK4<Scalar>>) {
          return std::nullopt;
        } else {
          return detail::closed_inverse(flows::ClosedForm<Scalar>(k), w, t);
        }
      },
      flow);
}

template <typename Scalar>
Complex<Scalar> flow_apply(const BasicFlowSpec<Scalar>& flow, const Complex<Scalar>& z, Scalar t) {
  if (!is_finite(z) || !std::isfinite(t)) throw std::invalid_argument("flow_apply: non-finite argument");
  if (auto w = try_flow_apply(flow, z, t)) return *w;
  throw DomainError("flow_apply: trajectory leaves every bounded set before time t");
}

template <typename Scalar>
Complex<Scalar> flow_inverse(const BasicFlowSpec<Scalar>& flow, const Complex<Scalar>& w, Scalar t) {
  if (!is_finite(w) || !std::isfinite(t)) throw std::invalid_argument("flow_inverse: non-finite argument");
  if (auto z = try_flow_inverse(flow, w, t)) return *z;
  throw DomainError("flow_inverse: backward trajectory leaves every bounded set");
}

/// Right-hand side g(t, z) of the flow's ODE.
template <typename Scalar>
Complex<Scalar> flow_rhs(const BasicFlowSpec<Scalar>& flow, Scalar t, const Complex<Scalar>& z) {
  if (const auto* rk = std::get_if<flows::NumericRK4<Scalar>>(&flow)) return detail::closed_rhs(rk->base, t, z);
  return std::visit(
      [&](const auto& k) -> Complex<Scalar> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, flows::NumericRK4<Scalar>>) {
          return {};
        } else {
          return detail::closed_rhs(flows::ClosedForm<Scalar>(k), t, z);
        }
      },
      flow);
}

/// |(A_{t+h} z - A_{t-h} z) / 2h - g(t, A_t z)|: how well the solution map
/// satisfies its differential equation at time t.
template <typename Scalar>
Scalar ode_residual(const BasicFlowSpec<Scalar>& flow, const Complex<Scalar>& z, Scalar t, Scalar h) {
  if (!(h > 0) || !std::isfinite(h)) throw std::invalid_argument("ode_residual: h must be > 0");
  const Complex<Scalar> ahead = flow_apply(flow, z, t + h);
  const Complex<Scalar> behind = flow_apply(flow, z, t - h);
  const Complex<Scalar> here = flow_apply(flow, z, t);
  return std::abs((ahead - behind) / (2 * h) - flow_rhs(flow, t, here));
}

/// Raster of A_t K_c by pullback: each pixel z0 is classified through the
/// orbit of A_t^{-1} z0 under z^2 + c; pullback failures are Invalid.
template <typename Scalar>
BasicRasterField<Scalar> fmi_flow_julia(const BasicGridSpec<Scalar>& grid, const Complex<Scalar>& c,
                                        const BasicFlowSpec<Scalar>& flow, Scalar t,
                                        const BasicIterParams<Scalar>& params) {
  if (!is_finite(c) || !std::isfinite(t)) throw std::invalid_argument("fmi_flow_julia: non-finite c or t");
  params.validate_for(c);
  validate_flow(flow);
  return detail::fill_field(grid, [&](const Complex<Scalar>& z) {
    const auto w = try_flow_inverse(flow, z, t);
    if (!w) return BasicOrbitResult<Scalar>::invalid();
    return detail::iterate_quadratic(*w, c, params);
  });
}

template <typename Scalar>
std::vector<BasicRasterField<Scalar>> trajectory_sweep(const BasicGridSpec<Scalar>& grid,
                                                       const Complex<Scalar>& c,
                                                       const BasicFlowSpec<Scalar>& flow,
                                                       const std::vector<Scalar>& t_values,
                                                       const BasicIterParams<Scalar>& params) {
  std::vector<BasicRasterField<Scalar>> frames;
  frames.reserve(t_values.size());
  for (const Scalar t : t_values) frames.push_back(fmi_flow_julia(grid, c, flow, t, params));
  return frames;
}

}  // namespace fdyn
