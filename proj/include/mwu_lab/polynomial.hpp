// Copyright 2026 The mwu_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MWU_LAB_POLYNOMIAL_HPP
#define MWU_LAB_POLYNOMIAL_HPP

// Sparse polynomials with nonnegative coefficients over a product of
// simplices D = { x_ij >= 0, Σ_j x_ij = 1 } and the Baum-Eagon growth map
//
//   x_ij  ↦  x_ij ∂P/∂x_ij / Σ_j' x_ij' ∂P/∂x_ij'.
//
// For P with nonnegative coefficients the map strictly increases P unless
// it fixes x. Homogeneity is not required: padding every monomial with a
// dummy variable pinned to one yields the same map.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mwu_lab/error.hpp"

namespace mwu_lab {

// Variable values grouped by block (one block per simplex).
using BlockPoint = std::vector<std::vector<double>>;

struct Power {
  std::uint32_t variable = 0;
  std::uint32_t exponent = 0;
  auto operator<=>(const Power&) const = default;
};

struct Monomial {
  double coefficient = 0.0;
  std::vector<Power> powers;  // sorted by variable, exponents >= 1
};

class SimplexPolynomial {
 public:
  static constexpr double kNegativeTolerance = 1e-12;

  // Brings `terms` to canonical form: powers sorted and merged per variable,
  // identical exponent maps merged, zero coefficients dropped. Coefficients
  // in [-negative_tolerance, 0) count as zero; anything below throws
  // NegativeCoefficient.
  SimplexPolynomial(std::vector<std::size_t> block_sizes, std::vector<Monomial> terms,
                    double negative_tolerance = kNegativeTolerance)
      : block_sizes_(std::move(block_sizes)) {
    offsets_.reserve(block_sizes_.size() + 1);
    offsets_.push_back(0);
    for (auto size : block_sizes_) {
      if (size == 0) throw DimensionMismatch("blocks must hold at least one variable");
      offsets_.push_back(offsets_.back() + size);
    }
    std::map<std::vector<Power>, double> merged;
    for (auto& term : terms) {
      if (!std::isfinite(term.coefficient)) {
        throw NegativeCoefficient("non-finite coefficient");
      }
      std::map<std::uint32_t, std::uint32_t> exponents;
      for (const auto& p : term.powers) {
        if (p.variable >= num_variables()) {
          throw DimensionMismatch("variable index " + std::to_string(p.variable) +
                                  " out of range");
        }
        if (p.exponent > 0) exponents[p.variable] += p.exponent;
      }
      std::vector<Power> key;
      for (auto [v, e] : exponents) key.push_back({v, e});
      merged[std::move(key)] += term.coefficient;
    }
    for (auto& [powers, coefficient] : merged) {
      if (coefficient < -negative_tolerance) {
        throw NegativeCoefficient("coefficient " + std::to_string(coefficient) +
                                  " on a degree-" + std::to_string(degree_of(powers)) +
                                  " monomial");
      }
      if (coefficient <= 0.0) continue;
      terms_.push_back({coefficient, powers});
    }
  }

  const std::vector<std::size_t>& block_sizes() const { return block_sizes_; }
  std::size_t num_blocks() const { return block_sizes_.size(); }
  std::size_t num_variables() const { return offsets_.back(); }
  std::uint32_t variable(std::size_t block, std::size_t index) const {
    return static_cast<std::uint32_t>(offsets_.at(block) + index);
  }
  const std::vector<Monomial>& terms() const { return terms_; }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& t : terms_) d = std::max(d, degree_of(t.powers));
    return d;
  }

  double min_coefficient() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) m = std::min(m, t.coefficient);
    return m;
  }

  std::vector<double> flatten(const BlockPoint& x) const {
    if (x.size() != block_sizes_.size()) {
      throw DimensionMismatch("point has " + std::to_string(x.size()) +
                              " blocks, polynomial has " +
                              std::to_string(block_sizes_.size()));
    }
    std::vector<double> flat;
    flat.reserve(num_variables());
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (x[b].size() != block_sizes_[b]) {
        throw DimensionMismatch("block " + std::to_string(b) + " has " +
                                std::to_string(x[b].size()) + " values, expected " +
                                std::to_string(block_sizes_[b]));
      }
      flat.insert(flat.end(), x[b].begin(), x[b].end());
    }
    return flat;
  }

  double eval(const BlockPoint& x) const {
    const auto flat = flatten(x);
    double total = 0.0;
    for (const auto& t : terms_) {
      double v = t.coefficient;
      for (const auto& p : t.powers) v *= ipow(flat[p.variable], p.exponent);
      total += v;
    }
    return total;
  }

  // ∂P/∂x_var evaluated at x.
  double partial(std::size_t var, const BlockPoint& x) const {
    if (var >= num_variables()) throw DimensionMismatch("variable out of range");
    const auto flat = flatten(x);
    double total = 0.0;
    for (const auto& t : terms_) total += term_partial(t, var, flat);
    return total;
  }

  // All partials at once, flat variable order.
  std::vector<double> gradient(const BlockPoint& x) const {
    const auto flat = flatten(x);
    std::vector<double> grad(num_variables(), 0.0);
    for (const auto& t : terms_) {
      for (const auto& p : t.powers) grad[p.variable] += term_partial(t, p.variable, flat);
    }
    return grad;
  }

 private:
  static std::size_t degree_of(const std::vector<Power>& powers) {
    std::size_t d = 0;
    for (const auto& p : powers) d += p.exponent;
    return d;
  }

  static double ipow(double base, std::uint32_t exponent) {
    double r = 1.0;
    for (std::uint32_t k = 0; k < exponent; ++k) r *= base;
    return r;
  }

  static double term_partial(const Monomial& t, std::size_t var,
                             const std::vector<double>& flat) {
    double v = t.coefficient;
    bool found = false;
    for (const auto& p : t.powers) {
      if (p.variable == var) {
        found = true;
        v *= static_cast<double>(p.exponent) * ipow(flat[p.variable], p.exponent - 1);
      } else {
        v *= ipow(flat[p.variable], p.exponent);
      }
    }
    return found ? v : 0.0;
  }

  std::vector<std::size_t> block_sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<Monomial> terms_;
};

// Throws DomainError unless x lies in D (entries >= 0, block sums 1 ± tol).
inline void check_in_domain(const SimplexPolynomial& poly, const BlockPoint& x,
                            double tol = 1e-9) {
  poly.flatten(x);
  for (std::size_t b = 0; b < x.size(); ++b) {
    double sum = 0.0;
    for (double v : x[b]) {
      if (!(v >= 0.0)) throw DomainError("negative coordinate in block " + std::to_string(b));
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw DomainError("block " + std::to_string(b) + " sums to " + std::to_string(sum));
    }
  }
}

inline BlockPoint baum_eagon_step(const SimplexPolynomial& poly, const BlockPoint& x) {
  check_in_domain(poly, x);
  const auto grad = poly.gradient(x);
  BlockPoint next(x.size());
  std::size_t offset = 0;
  for (std::size_t b = 0; b < x.size(); ++b) {
    const auto n = x[b].size();
    double denominator = 0.0;
    for (std::size_t j = 0; j < n; ++j) denominator += x[b][j] * grad[offset + j];
    if (!(denominator > 0.0)) {
      throw DegenerateDenominator("block " + std::to_string(b) +
                                  " has denominator " + std::to_string(denominator));
    }
    next[b].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      next[b][j] = x[b][j] * grad[offset + j] / denominator;
    }
    offset += n;
  }
  return next;
}

// {"blocks": [...], "monomials": [{"coefficient": c, "powers": [[var, exp], ...]}]}
inline nlohmann::json polynomial_to_json(const SimplexPolynomial& poly) {
  nlohmann::json j;
  j["blocks"] = poly.block_sizes();
  auto terms = nlohmann::json::array();
  for (const auto& t : poly.terms()) {
    auto powers = nlohmann::json::array();
    for (const auto& p : t.powers) powers.push_back({p.variable, p.exponent});
    terms.push_back({{"coefficient", t.coefficient}, {"powers", std::move(powers)}});
  }
  j["monomials"] = std::move(terms);
  return j;
}

inline SimplexPolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    auto blocks = j.at("blocks").get<std::vector<std::size_t>>();
    std::vector<Monomial> terms;
    for (const auto& m : j.at("monomials")) {
      Monomial term{m.at("coefficient").get<double>(), {}};
      for (const auto& p : m.at("powers")) {
        term.powers.push_back({p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>()});
      }
      terms.push_back(std::move(term));
    }
    return SimplexPolynomial(std::move(blocks), std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw DimensionMismatch(std::string("malformed polynomial dump: ") + e.what());
  }
}

}  // namespace mwu_lab

#endif  // MWU_LAB_POLYNOMIAL_HPP
