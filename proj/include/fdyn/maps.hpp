#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "fdyn/complex_core.hpp"
#include "fdyn/flow.hpp"

namespace fdyn {

template <typename Scalar>
struct BasicMapSpec;

namespace maps {

struct Identity {
  friend bool operator==(const Identity&, const Identity&) = default;
};

/// z -> a z + b, a != 0.
template <typename Scalar>
struct Affine {
  Complex<Scalar> a{1, 0};
  Complex<Scalar> b{0, 0};
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// z -> arccos(1/z - 1), inverse w -> 1 / (1 + cos w).
struct ArccosReciprocal {
  friend bool operator==(const ArccosReciprocal&, const ArccosReciprocal&) = default;
};

/// z -> (arcsin z)^(1/5), inverse w -> sin(w^5).
struct ArcsinRoot5 {
  friend bool operator==(const ArcsinRoot5&, const ArcsinRoot5&) = default;
};

/// c -> (1/c - 1)^(1/2), inverse w -> 1 / (w^2 + 1).
struct ReciprocalSqrt {
  friend bool operator==(const ReciprocalSqrt&, const ReciprocalSqrt&) = default;
};

/// z -> z^2 + a c + b. Not injective; the inverse takes the principal square root.
template <typename Scalar>
struct QuadraticParam {
  Scalar a = 0;
  Complex<Scalar> b{0, 0};
  Complex<Scalar> c{0, 0};
  Complex<Scalar> shift() const { return a * c + b; }
  friend bool operator==(const QuadraticParam&, const QuadraticParam&) = default;
};

/// The time-t solution map A_t of a flow.
template <typename Scalar>
struct FlowMap {
  BasicFlowSpec<Scalar> flow = flows::Linear<Scalar>{};
  Scalar t = 0;
  friend bool operator==(const FlowMap&, const FlowMap&) = default;
};

/// base composed with itself `count` times; count = 0 is the identity.
template <typename Scalar>
struct Iterated {
  std::shared_ptr<const BasicMapSpec<Scalar>> base;
  int count = 1;
  friend bool operator==(const Iterated& x, const Iterated& y) {
    if (x.count != y.count) return false;
    if (!x.base || !y.base) return x.base == y.base;
    return *x.base == *y.base;
  }
};

}  // namespace maps

enum class Branch { Principal };

template <typename Scalar>
struct BasicMapSpec {
  using Kind = std::variant<maps::Identity, maps::Affine<Scalar>, maps::ArccosReciprocal, maps::ArcsinRoot5,
                            maps::ReciprocalSqrt, maps::QuadraticParam<Scalar>, maps::FlowMap<Scalar>,
                            maps::Iterated<Scalar>>;

  Kind kind = maps::Identity{};
  Branch branch = Branch::Principal;

  BasicMapSpec() = default;
  template <typename K, typename = std::enable_if_t<!std::is_same_v<std::decay_t<K>, BasicMapSpec>>>
  BasicMapSpec(K&& k) : kind(std::forward<K>(k)) {}  // NOLINT(google-explicit-constructor)

  friend bool operator==(const BasicMapSpec&, const BasicMapSpec&) = default;
};

using MapSpec = BasicMapSpec<double>;

/// f composed with itself k times.
template <typename Scalar>
BasicMapSpec<Scalar> iterate_map(const BasicMapSpec<Scalar>& f, int k) {
  if (k < 0) throw std::invalid_argument("iterate_map: negative count");
  return maps::Iterated<Scalar>{std::make_shared<const BasicMapSpec<Scalar>>(f), k};
}

/// Configuration-file key of each kind.
template <typename Scalar>
std::string_view kind_name(const BasicMapSpec<Scalar>& m) {
  return std::visit(
      [](const auto& k) -> std::string_view {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, maps::Identity>) return "identity";
        else if constexpr (std::is_same_v<K, maps::Affine<Scalar>>) return "affine";
        else if constexpr (std::is_same_v<K, maps::ArccosReciprocal>) return "arccos_reciprocal";
        else if constexpr (std::is_same_v<K, maps::ArcsinRoot5>) return "arcsin_root5";
        else if constexpr (std::is_same_v<K, maps::ReciprocalSqrt>) return "reciprocal_sqrt";
        else if constexpr (std::is_same_v<K, maps::QuadraticParam<Scalar>>) return "quadratic_param";
        else if constexpr (std::is_same_v<K, maps::FlowMap<Scalar>>) return "flow";
        else return "iterated";
      },
      m.kind);
}

template <typename Scalar>
void validate_map(const BasicMapSpec<Scalar>& m) {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, maps::Affine<Scalar>>) {
          if (!is_finite(k.a) || !is_finite(k.b)) throw std::invalid_argument("affine: non-finite coefficient");
          if (k.a == Complex<Scalar>(0, 0)) throw std::invalid_argument("affine: a must be non-zero");
        } else if constexpr (std::is_same_v<K, maps::QuadraticParam<Scalar>>) {
          if (!std::isfinite(k.a) || !is_finite(k.b) || !is_finite(k.c))
            throw std::invalid_argument("quadratic_param: non-finite parameter");
        } else if constexpr (std::is_same_v<K, maps::FlowMap<Scalar>>) {
          if (!std::isfinite(k.t)) throw std::invalid_argument("flow map: non-finite t");
          validate_flow(k.flow);
        } else if constexpr (std::is_same_v<K, maps::Iterated<Scalar>>) {
          if (!k.base) throw std::invalid_argument("iterated: missing base map");
          if (k.count < 0) throw std::invalid_argument("iterated: negative count");
          validate_map(*k.base);
        }
      },
      m.kind);
}

namespace detail {

// Poles and branch points are excluded within this radius.
template <typename Scalar>
constexpr Scalar kPoleExclusion = Scalar(1e-9);

// Adding +0 turns a -0 component into +0, so cut points take the value
// approached from above: arg in (-pi, pi].
template <typename Scalar>
Complex<Scalar> canonical_zero(const Complex<Scalar>& z) {
  return {z.real() + Scalar(0), z.imag() + Scalar(0)};
}

template <typename Scalar>
Complex<Scalar> principal_root(const Complex<Scalar>& w, int n) {
  if (w == Complex<Scalar>(0, 0)) return {0, 0};
  return std::exp(std::log(canonical_zero(w)) / Scalar(n));
}

template <typename Scalar>
std::optional<Complex<Scalar>> finite_or_none(const Complex<Scalar>& z) {
  if (!is_finite(z)) return std::nullopt;
  return z;
}

}  // namespace detail

/// f(z) on the principal branch; nullopt outside the forward domain.
template <typename Scalar>
std::optional<Complex<Scalar>> try_eval_forward(const BasicMapSpec<Scalar>& m, const Complex<Scalar>& z) {
  using C = Complex<Scalar>;
  return std::visit(
      [&](const auto& k) -> std::optional<C> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, maps::Identity>) {
          return z;
        } else if constexpr (std::is_same_v<K, maps::Affine<Scalar>>) {
          return detail::finite_or_none<Scalar>(k.a * z + k.b);
        } else if constexpr (std::is_same_v<K, maps::ArccosReciprocal>) {
          if (std::abs(z) <= detail::kPoleExclusion<Scalar>) return std::nullopt;
          return detail::finite_or_none<Scalar>(std::acos(detail::canonical_zero<Scalar>(Scalar(1) / z - Scalar(1))));
        } else if constexpr (std::is_same_v<K, maps::ArcsinRoot5>) {
          return detail::finite_or_none<Scalar>(detail::principal_root<Scalar>(std::asin(detail::canonical_zero(z)), 5));
        } else if constexpr (std::is_same_v<K, maps::ReciprocalSqrt>) {
          if (std::abs(z) <= detail::kPoleExclusion<Scalar>) return std::nullopt;
          return detail::finite_or_none<Scalar>(std::sqrt(detail::canonical_zero<Scalar>(Scalar(1) / z - Scalar(1))));
        } else if constexpr (std::is_same_v<K, maps::QuadraticParam<Scalar>>) {
          return detail::finite_or_none<Scalar>(z * z + k.shift());
        } else if constexpr (std::is_same_v<K, maps::FlowMap<Scalar>>) {
          return try_flow_apply(k.flow, z, k.t);
        } else {
          std::optional<C> w = z;
          for (int n = 0; n < k.count && w; ++n) w = try_eval_forward(*k.base, *w);
          return w;
        }
      },
      m.kind);
}

/// f^{-1}(w) in closed form; nullopt at poles of the inverse.
template <typename Scalar>
std::optional<Complex<Scalar>> try_eval_inverse(const BasicMapSpec<Scalar>& m, const Complex<Scalar>& w) {
  using C = Complex<Scalar>;
  return std::visit(
      [&](const auto& k) -> std::optional<C> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, maps::Identity>) {
          return w;
        } else if constexpr (std::is_same_v<K, maps::Affine<Scalar>>) {
          return detail::finite_or_none<Scalar>((w - k.b) / k.a);
        } else if constexpr (std::is_same_v<K, maps::ArccosReciprocal>) {
          const C den = Scalar(1) + std::cos(w);
          if (!is_finite(den) || std::abs(den) <= detail::kPoleExclusion<Scalar>) return std::nullopt;
          return detail::finite_or_none<Scalar>(Scalar(1) / den);
        } else if constexpr (std::is_same_v<K, maps::ArcsinRoot5>) {
          const C w2 = w * w;
          return detail::finite_or_none<Scalar>(std::sin(w2 * w2 * w));
        } else if constexpr (std::is_same_v<K, maps::ReciprocalSqrt>) {
          const C den = w * w + Scalar(1);
          if (!is_finite(den) || std::abs(den) <= detail::kPoleExclusion<Scalar>) return std::nullopt;
          return detail::finite_or_none<Scalar>(Scalar(1) / den);
        } else if constexpr (std::is_same_v<K, maps::QuadraticParam<Scalar>>) {
          return detail::finite_or_none<Scalar>(std::sqrt(detail::canonical_zero<Scalar>(w - k.shift())));
        } else if constexpr (std::is_same_v<K, maps::FlowMap<Scalar>>) {
          return try_flow_inverse(k.flow, w, k.t);
        } else {
          std::optional<C> z = w;
          for (int n = 0; n < k.count && z; ++n) z = try_eval_inverse(*k.base, *z);
          return z;
        }
      },
      m.kind);
}

template <typename Scalar>
Complex<Scalar> eval_forward(const BasicMapSpec<Scalar>& m, const Complex<Scalar>& z) {
  if (!is_finite(z)) throw std::invalid_argument("eval_forward: non-finite point");
  if (auto w = try_eval_forward(m, z)) return *w;
  throw DomainError(std::string("eval_forward: point outside the domain of ") + std::string(kind_name(m)));
}

template <typename Scalar>
Complex<Scalar> eval_inverse(const BasicMapSpec<Scalar>& m, const Complex<Scalar>& w) {
  if (!is_finite(w)) throw std::invalid_argument("eval_inverse: non-finite point");
  if (auto z = try_eval_inverse(m, w)) return *z;
  throw DomainError(std::string("eval_inverse: point outside the inverse domain of ") +
                    std::string(kind_name(m)));
}

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct BasicBilipschitzEstimate {
  Scalar l1 = 0;
  Scalar l2 = 0;
  long valid_pairs = 0;
};

using BilipschitzEstimate = BasicBilipschitzEstimate<double>;

namespace detail {

inline double radical_inverse(unsigned long long index, unsigned base) {
  double inv = 1.0 / base;
  double scale = inv;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv;
  }
  return result;
}

}  // namespace detail

/// Empirical bi-Lipschitz bracket (l1, l2) of f over a rectangular region.
///
/// Pairs come from a 4-D Halton sequence. Even pairs place u and v
/// independently in the region; odd pairs put v at a log-uniform distance
/// (1% to 100% of the region diagonal) from u so the local stretch |f'| is
/// sampled as well as the global one. Points outside the domain are skipped.
/// The extremal pairs are then refined by a compass search over (u, v),
/// keeping both points in the region and at least 0.1% of the diagonal apart.
template <typename Scalar>
BasicBilipschitzEstimate<Scalar> estimate_bilipschitz(const BasicMapSpec<Scalar>& m,
                                                      const BasicGridSpec<Scalar>& region, long n_pairs) {
  if (n_pairs < 100) throw std::invalid_argument("estimate_bilipschitz: n_pairs must be >= 100");
  validate_map(m);
  using C = Complex<Scalar>;
  const Scalar x0 = region.re_min();
  const Scalar y0 = region.im_min();
  const Scalar w = region.width();
  const Scalar h = region.height();
  const Scalar diag = std::hypot(w, h);
  const Scalar min_sep = diag * Scalar(1e-3);
  auto clamp_into = [&](C z) {
    return C(std::clamp(z.real(), x0, x0 + w), std::clamp(z.imag(), y0, y0 + h));
  };
  auto ratio = [&](const C& u, const C& v, Scalar floor) -> std::optional<Scalar> {
    const Scalar duv = std::abs(u - v);
    if (!(duv > floor)) return std::nullopt;
    const auto fu = try_eval_forward(m, u);
    const auto fv = try_eval_forward(m, v);
    if (!fu || !fv) return std::nullopt;
    return std::abs(*fu - *fv) / duv;
  };

  struct Pair {
    C u, v;
    Scalar q;
  };
  std::optional<Pair> lo, hi;
  BasicBilipschitzEstimate<Scalar> est{std::numeric_limits<Scalar>::infinity(), 0, 0};
  for (long k = 0; k < n_pairs; ++k) {
    // Skip the first Halton points, which cluster at the region's corner.
    const auto idx = static_cast<unsigned long long>(k) + 17;
    const Scalar h2 = Scalar(detail::radical_inverse(idx, 2));
    const Scalar h3 = Scalar(detail::radical_inverse(idx, 3));
    const Scalar h5 = Scalar(detail::radical_inverse(idx, 5));
    const Scalar h7 = Scalar(detail::radical_inverse(idx, 7));
    const C u(x0 + h2 * w, y0 + h3 * h);
    C v;
    if (k % 2 == 0) {
      v = C(x0 + h5 * w, y0 + h7 * h);
    } else {
      const Scalar sep = diag * std::pow(Scalar(10), Scalar(-2) * h7);
      v = clamp_into(u + std::polar(sep, 2 * std::numbers::pi_v<Scalar> * h5));
    }
    const auto q = ratio(u, v, Scalar(1e-12));
    if (!q) continue;
    if (!lo || *q < lo->q) lo = Pair{u, v, *q};
    if (!hi || *q > hi->q) hi = Pair{u, v, *q};
    est.l1 = std::min(est.l1, *q);
    est.l2 = std::max(est.l2, *q);
    ++est.valid_pairs;
  }
  if (est.valid_pairs < 10)
    throw InsufficientSamples("estimate_bilipschitz: fewer than 10 valid pairs in the region");

  // sign = +1 climbs towards l2, -1 descends towards l1.
  auto refine = [&](Pair best, Scalar sign) {
    const C steps[4] = {C(1, 0), C(-1, 0), C(0, 1), C(0, -1)};
    for (Scalar step = diag / 16; step > diag * Scalar(1e-9); step /= 2) {
      bool moved = true;
      for (int round = 0; moved && round < 64; ++round) {
        moved = false;
        for (int which = 0; which < 2; ++which)
          for (const C& d : steps) {
            Pair trial = best;
            C& z = which == 0 ? trial.u : trial.v;
            z = clamp_into(z + d * step);
            const auto q = ratio(trial.u, trial.v, min_sep);
            if (!q || sign * (*q - best.q) <= std::abs(best.q) * Scalar(1e-12)) continue;
            trial.q = *q;
            best = trial;
            moved = true;
          }
      }
    }
    return best.q;
  };
  est.l1 = std::min(est.l1, refine(*lo, Scalar(-1)));
  est.l2 = std::max(est.l2, refine(*hi, Scalar(1)));
  return est;
}

}  // namespace fdyn
