#pragma once

#include <cstddef>
#include <vector>

#include "pmetric/measures.hpp"

namespace pmetric {

/// Delta_s(f): max of (f(x) - f(y)) / d_s(x, y) over ordered pairs x != y that
/// agree off site s. Zero when site s has a single point.
Rational partial_lipschitz(const FunctionOnX& f, std::size_t s);

/// (Delta_s(f))_s for every site.
std::vector<Rational> partial_lipschitz_all(const FunctionOnX& f);

/// ||f|| = sum_s Delta_s(f).
Rational dobrushin_norm(const FunctionOnX& f);

/// f(x) - f(y) <= c_e(x, y) for every ordered pair.
bool in_F_e(const FunctionOnX& f, const WeightVector& e);

/// f(x) - f(y) <= sum_s Delta_s(f) d_s(x, y). Holds for every f and pair;
/// exposed as a self-test of partial_lipschitz.
bool chain_bound_holds(const FunctionOnX& f, std::size_t x, std::size_t y);

// Semi-metric c-transform machinery. `c` may be asymmetric and negative.

/// psi^c(x) = min_y (psi(y) + c(y, x)).
FunctionOnX c_transform(const FunctionOnX& psi, const CostOnPairs& c);

/// psi(x) - psi(x') <= c(x', x) for every ordered pair.
bool is_one_lipschitz(const FunctionOnX& psi, const CostOnPairs& c);

/// Decided by the fixed-point test psi^c == psi.
bool is_c_convex(const FunctionOnX& psi, const CostOnPairs& c);

/// x -> max_y (zeta(y) - c(x, y)); c-convex by construction.
FunctionOnX c_convex_envelope(const FunctionOnX& zeta, const CostOnPairs& c);

}  // namespace pmetric
