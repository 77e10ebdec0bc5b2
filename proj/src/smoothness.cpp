#include "pmetric/smoothness.hpp"

#include <optional>
#include <stdexcept>

namespace pmetric {

namespace {

std::size_t stride_of(const ProductSpace& space, std::size_t s) {
  std::size_t stride = 1;
  for (std::size_t t = s + 1; t < space.site_count(); ++t) stride *= space.site(t).size();
  return stride;
}

}  // namespace

Rational partial_lipschitz(const FunctionOnX& f, std::size_t s) {
  const auto& space = f.space();
  if (s >= space.site_count()) throw std::out_of_range("site index out of range");
  const std::size_t n = space.site(s).size();
  const std::size_t stride = stride_of(space, s);
  std::optional<Rational> best;
  for (std::size_t x = 0; x < space.config_count(); ++x) {
    const std::size_t a = space.coord(x, s);
    const std::size_t base = x - a * stride;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      const std::size_t y = base + b * stride;
      Rational ratio = (f[x] - f[y]) / space.site(s).metric[a][b];
      if (!best || ratio > *best) best = std::move(ratio);
    }
  }
  return best.value_or(Rational(0));
}

std::vector<Rational> partial_lipschitz_all(const FunctionOnX& f) {
  std::vector<Rational> out;
  for (std::size_t s = 0; s < f.space().site_count(); ++s) out.push_back(partial_lipschitz(f, s));
  return out;
}

Rational dobrushin_norm(const FunctionOnX& f) {
  Rational total;
  for (const auto& d : partial_lipschitz_all(f)) total += d;
  return total;
}

bool in_F_e(const FunctionOnX& f, const WeightVector& e) {
  const auto& space = f.space();
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (x == y) continue;
      if (f[x] - f[y] > cost_e(space, e, x, y)) return false;
    }
  }
  return true;
}

bool chain_bound_holds(const FunctionOnX& f, std::size_t x, std::size_t y) {
  const auto& space = f.space();
  const auto delta = partial_lipschitz_all(f);
  Rational bound;
  for (std::size_t s = 0; s < delta.size(); ++s) bound += delta[s] * space.site_distance(s, x, y);
  return f[x] - f[y] <= bound;
}

FunctionOnX c_transform(const FunctionOnX& psi, const CostOnPairs& c) {
  require_same_space(psi.space_ptr(), c.space_ptr());
  std::vector<Rational> out(psi.size());
  for (std::size_t x = 0; x < psi.size(); ++x) {
    Rational best = psi[0] + c(0, x);
    for (std::size_t y = 1; y < psi.size(); ++y) best = min(best, psi[y] + c(y, x));
    out[x] = std::move(best);
  }
  return FunctionOnX(psi.space_ptr(), std::move(out));
}

bool is_one_lipschitz(const FunctionOnX& psi, const CostOnPairs& c) {
  require_same_space(psi.space_ptr(), c.space_ptr());
  for (std::size_t x = 0; x < psi.size(); ++x) {
    for (std::size_t xp = 0; xp < psi.size(); ++xp) {
      if (psi[x] - psi[xp] > c(xp, x)) return false;
    }
  }
  return true;
}

bool is_c_convex(const FunctionOnX& psi, const CostOnPairs& c) {
  return c_transform(psi, c) == psi;
}

FunctionOnX c_convex_envelope(const FunctionOnX& zeta, const CostOnPairs& c) {
  require_same_space(zeta.space_ptr(), c.space_ptr());
  std::vector<Rational> out(zeta.size());
  for (std::size_t x = 0; x < zeta.size(); ++x) {
    Rational best = zeta[0] - c(x, 0);
    for (std::size_t y = 1; y < zeta.size(); ++y) best = max(best, zeta[y] - c(x, y));
    out[x] = std::move(best);
  }
  return FunctionOnX(zeta.space_ptr(), std::move(out));
}

}  // namespace pmetric
