// Copyright 2026 The epsfc Authors
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

#include "epsfc/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace epsfc {
namespace {

long double pow2(std::size_t n) { return std::ldexp(1.0L, static_cast<int>(n)); }

/// Number of non-empty coalitions, 2^n - 1.
long double nonempty_count(std::size_t n) { return pow2(n) - 1.0L; }

bool is_small_integer(double x) {
  return x >= 1.0 && x <= 0x1.0p52 && std::floor(x) == x;
}

/// Row n of Pascal's triangle in 128 bits; empty if an entry overflows.
std::vector<U128> pascal_row(std::size_t n) {
  const U128 max = ~static_cast<U128>(0);
  std::vector<U128> row{1};
  for (std::size_t r = 1; r <= n; ++r) {
    std::vector<U128> next(r + 1);
    next[0] = next[r] = 1;
    for (std::size_t k = 1; k < r; ++k) {
      if (row[k - 1] > max - row[k]) return {};
      next[k] = row[k - 1] + row[k];
    }
    row = std::move(next);
  }
  return row;
}

void check_universe(const std::vector<Coalition>& coalitions, std::size_t n) {
  std::unordered_set<Coalition, CoalitionHash> seen;
  for (const auto& c : coalitions) {
    if (c.universe() != n) throw std::invalid_argument("coalition over a different universe");
    if (c.empty()) throw std::invalid_argument("distribution support may not contain the empty coalition");
    if (!seen.insert(c).second) throw std::invalid_argument("duplicate coalition " + c.to_string() + " in support");
  }
}

}  // namespace

long double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0L;
  k = std::min(k, n - k);
  long double r = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return std::round(r);
}

// ---------------------------------------------------------------------------
// Construction

CoalitionDistribution CoalitionDistribution::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("distribution needs at least one agent");
  CoalitionDistribution d;
  d.kind_ = Kind::kUniform;
  d.n_ = n;
  return d;
}

CoalitionDistribution CoalitionDistribution::size_tilted(std::size_t n, std::vector<double> g) {
  if (n == 0) throw std::invalid_argument("distribution needs at least one agent");
  if (g.size() != n) throw std::invalid_argument("size-tilted weights need one entry per size 1..n");
  for (double w : g)
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("size-tilted weights must be positive and finite");

  CoalitionDistribution d;
  d.kind_ = Kind::kSizeTilted;
  d.n_ = n;
  d.g_ = std::move(g);
  d.size_mass_.assign(n + 1, 0.0L);
  d.cumulative_.assign(n + 1, 0.0L);

  // Kahan-compensated running total of C(n,s) g(s).
  long double sum = 0.0L, comp = 0.0L;
  for (std::size_t s = 1; s <= n; ++s) {
    d.size_mass_[s] = binomial(n, s) * static_cast<long double>(d.g_[s - 1]);
    long double y = d.size_mass_[s] - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    d.cumulative_[s] = sum;
  }
  d.normalizer_ = sum;

  const bool integral = std::all_of(d.g_.begin(), d.g_.end(), is_small_integer);
  if (integral && sum < 0x1.0p120L) {
    auto row = pascal_row(n);
    if (!row.empty()) {
      d.cumulative_exact_.assign(n + 1, 0);
      U128 acc = 0;
      for (std::size_t s = 1; s <= n; ++s) {
        acc += row[s] * static_cast<U128>(static_cast<std::uint64_t>(d.g_[s - 1]));
        d.cumulative_exact_[s] = acc;
      }
    }
  }
  return d;
}

CoalitionDistribution CoalitionDistribution::family_uniform(std::vector<Coalition> support) {
  if (support.empty()) throw std::invalid_argument("family distribution needs a non-empty support");
  const std::size_t n = support.front().universe();
  check_universe(support, n);
  CoalitionDistribution d;
  d.kind_ = Kind::kFamily;
  d.n_ = n;
  d.family_ = std::move(support);
  d.family_set_ = std::make_shared<const std::unordered_set<Coalition, CoalitionHash>>(d.family_.begin(),
                                                                                        d.family_.end());
  d.p_ = 1.0 / static_cast<double>(d.family_.size());
  d.family_total_mass_ = 1.0;
  return d;
}

CoalitionDistribution CoalitionDistribution::adversarial_bounded(std::vector<Coalition> family, std::size_t n,
                                                                 double lambda) {
  if (n == 0) throw std::invalid_argument("distribution needs at least one agent");
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be >= 1");
  check_universe(family, n);
  CoalitionDistribution d;
  d.kind_ = Kind::kAdversarial;
  d.n_ = n;
  d.lambda_ = lambda;
  d.family_ = std::move(family);
  d.family_set_ = std::make_shared<const std::unordered_set<Coalition, CoalitionHash>>(d.family_.begin(),
                                                                                        d.family_.end());
  const long double f = static_cast<long double>(d.family_.size());
  d.p_ = static_cast<double>(lambda / (f * (lambda - 1.0L) + nonempty_count(n)));
  d.family_total_mass_ = static_cast<double>(f * d.p_);
  return d;
}

// ---------------------------------------------------------------------------
// Sampling

Coalition CoalitionDistribution::sample_uniform(Rng& rng) const {
  Coalition c(n_);
  do {
    c = Coalition(n_);
    for (std::size_t base = 0; base < n_; base += 64) {
      std::uint64_t bits = rng();
      std::size_t width = std::min<std::size_t>(64, n_ - base);
      if (width < 64) bits &= (std::uint64_t{1} << width) - 1;
      while (bits != 0) {
        c.insert(base + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  } while (c.empty());
  return c;
}

Coalition CoalitionDistribution::sample_of_size(Rng& rng, std::size_t s) const {
  // Floyd's algorithm: s draws, uniform over s-subsets.
  Coalition c(n_);
  for (std::size_t j = n_ - s; j < n_; ++j) {
    auto t = static_cast<AgentId>(uniform_below(rng, j + 1));
    if (c.contains(t))
      c.insert(j);
    else
      c.insert(t);
  }
  return c;
}

std::size_t CoalitionDistribution::sample_size(Rng& rng) const {
  if (!cumulative_exact_.empty()) {
    U128 u = uniform_below_u128(rng, cumulative_exact_[n_]);
    auto it = std::upper_bound(cumulative_exact_.begin() + 1, cumulative_exact_.end(), u);
    return static_cast<std::size_t>(it - cumulative_exact_.begin());
  }
  long double u = static_cast<long double>(uniform_unit(rng)) * normalizer_;
  auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

Coalition CoalitionDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::kUniform:
      return sample_uniform(rng);
    case Kind::kSizeTilted:
      return sample_of_size(rng, sample_size(rng));
    case Kind::kFamily:
      return family_[uniform_below(rng, family_.size())];
    case Kind::kAdversarial: {
      if (!family_.empty() && uniform_unit(rng) < family_total_mass_)
        return family_[uniform_below(rng, family_.size())];
      // Off-family mass is uniform over the complement of the family.
      if (static_cast<long double>(family_.size()) >= nonempty_count(n_))
        return family_[uniform_below(rng, family_.size())];
      for (;;) {
        Coalition c = sample_uniform(rng);
        if (!family_set_->contains(c)) return c;
      }
    }
  }
  throw std::logic_error("unknown distribution kind");
}

// ---------------------------------------------------------------------------
// Masses

double CoalitionDistribution::point_mass(const Coalition& c) const {
  if (c.universe() != n_) throw std::invalid_argument("coalition over a different universe");
  if (c.empty()) return 0.0;
  switch (kind_) {
    case Kind::kUniform:
      return static_cast<double>(1.0L / nonempty_count(n_));
    case Kind::kSizeTilted:
      return static_cast<double>(static_cast<long double>(g_[c.size() - 1]) / normalizer_);
    case Kind::kFamily:
      return family_set_->contains(c) ? p_ : 0.0;
    case Kind::kAdversarial:
      return family_set_->contains(c) ? p_ : p_ / lambda_;
  }
  return 0.0;
}

std::vector<double> CoalitionDistribution::size_pmf() const {
  std::vector<double> pmf(n_ + 1, 0.0);
  switch (kind_) {
    case Kind::kUniform:
      for (std::size_t s = 1; s <= n_; ++s) pmf[s] = static_cast<double>(binomial(n_, s) / nonempty_count(n_));
      break;
    case Kind::kSizeTilted:
      for (std::size_t s = 1; s <= n_; ++s) pmf[s] = static_cast<double>(size_mass_[s] / normalizer_);
      break;
    case Kind::kFamily:
      for (const auto& c : family_) pmf[c.size()] += p_;
      break;
    case Kind::kAdversarial: {
      std::vector<long double> on(n_ + 1, 0.0L);
      for (const auto& c : family_) on[c.size()] += 1.0L;
      for (std::size_t s = 1; s <= n_; ++s)
        pmf[s] = static_cast<double>(on[s] * p_ + (binomial(n_, s) - on[s]) * (p_ / lambda_));
      break;
    }
  }
  return pmf;
}

double CoalitionDistribution::mean_size() const {
  auto pmf = size_pmf();
  long double mu = 0.0L;
  for (std::size_t s = 1; s <= n_; ++s) mu += static_cast<long double>(s) * pmf[s];
  return static_cast<double>(mu);
}

double lambda_of(const CoalitionDistribution& dist) {
  using Kind = CoalitionDistribution::Kind;
  switch (dist.kind()) {
    case Kind::kUniform:
      return 1.0;
    case Kind::kSizeTilted: {
      const auto& g = dist.size_weights();
      auto [lo, hi] = std::minmax_element(g.begin(), g.end());
      return *hi / *lo;
    }
    case Kind::kFamily:
      if (static_cast<long double>(dist.family().size()) == nonempty_count(dist.agents())) return 1.0;
      throw UnboundedLambda("family-uniform distribution assigns zero mass to some coalition");
    case Kind::kAdversarial: {
      const auto f = static_cast<long double>(dist.family().size());
      if (f == 0.0L || f == nonempty_count(dist.agents())) return 1.0;
      return dist.lambda_parameter();
    }
  }
  throw std::logic_error("unknown distribution kind");
}

// ---------------------------------------------------------------------------
// Bounds

Bounds bartlett_bounds(double a, double lambda) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("bartlett_bounds: a must lie in [0, 1]");
  if (!(lambda >= 1.0)) throw std::invalid_argument("bartlett_bounds: lambda must be >= 1");
  if (a == 0.0) return {0.0, 0.0};
  return {a / (a + lambda * (1.0 - a)), lambda * a / (lambda * a + 1.0 - a)};
}

Bounds mean_size_bounds(std::size_t n, double lambda) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("mean_size_bounds: lambda must be >= 1");
  const double nd = static_cast<double>(n);
  return {nd / (lambda + 1.0), lambda * nd / (lambda + 1.0)};
}

double size_window_delta(double lambda, double eps, std::size_t n) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
  if (n == 0) throw std::invalid_argument("n must be positive");
  return std::sqrt(3.0 * (lambda + 1.0) * std::log(4.0 / eps) / static_cast<double>(n));
}

bool SizeInterval::contains(std::size_t s) const {
  return std::binary_search(sizes.begin(), sizes.end(), s);
}

std::vector<std::size_t> sizes_strictly_between(double lo, double hi, std::size_t n) {
  auto tol = [](double x) { return 1e-9 * std::max(1.0, std::abs(x)); };
  std::vector<std::size_t> sizes;
  for (std::size_t s = 1; s <= n; ++s) {
    const auto x = static_cast<double>(s);
    if (x > lo + tol(lo) && x < hi - tol(hi)) sizes.push_back(s);
  }
  return sizes;
}

SizeInterval size_interval(double mu, double lambda, double eps, std::size_t n) {
  const double delta = size_window_delta(lambda, eps, n);
  SizeInterval iv;
  iv.lo = (1.0 - delta) * mu;
  iv.hi = (1.0 + delta) * mu;
  iv.sizes = sizes_strictly_between(iv.lo, iv.hi, n);
  return iv;
}

}  // namespace epsfc
