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

#ifndef EPSFC_DISTRIBUTIONS_HPP
#define EPSFC_DISTRIBUTIONS_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "epsfc/coalition.hpp"
#include "epsfc/random.hpp"

namespace epsfc {

/// Raised by lambda_of for distributions that give some coalition zero mass.
class UnboundedLambda : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Sampleable distribution over the non-empty subsets of n agents.
///
/// Four shapes are supported: uniform, size-tilted (mass of S proportional
/// to a positive weight g(|S|)), uniform over an explicit support family,
/// and the two-level adversarial distribution that puts mass p on a family
/// and p / lambda on every other coalition. Instances are immutable and may
/// be shared across threads; sampling takes the caller's engine.
class CoalitionDistribution {
 public:
  enum class Kind { kUniform, kSizeTilted, kFamily, kAdversarial };

  static CoalitionDistribution uniform(std::size_t n);
  /// `g[s-1]` is the weight of every coalition of size s; all must be > 0.
  static CoalitionDistribution size_tilted(std::size_t n, std::vector<double> g);
  /// Rejects an empty support, duplicates, empty coalitions and mixed universes.
  static CoalitionDistribution family_uniform(std::vector<Coalition> support);
  /// Mass p = lambda / (|F|(lambda - 1) + 2^n - 1) on each family member,
  /// p / lambda elsewhere.
  static CoalitionDistribution adversarial_bounded(std::vector<Coalition> family, std::size_t n, double lambda);

  Kind kind() const { return kind_; }
  std::size_t agents() const { return n_; }
  const std::vector<double>& size_weights() const { return g_; }
  const std::vector<Coalition>& family() const { return family_; }
  double lambda_parameter() const { return lambda_; }
  bool in_family(const Coalition& c) const { return family_set_ && family_set_->contains(c); }

  Coalition sample(Rng& rng) const;

  /// Probability of drawing exactly `c`; zero for the empty set.
  double point_mass(const Coalition& c) const;

  /// P(|C| = s) for s = 0..n (entry 0 is always 0).
  std::vector<double> size_pmf() const;

  /// E|C|.
  double mean_size() const;

  /// On-family point mass of the adversarial distribution.
  double adversarial_family_mass() const { return p_; }

 private:
  CoalitionDistribution() = default;

  Coalition sample_uniform(Rng& rng) const;
  Coalition sample_of_size(Rng& rng, std::size_t s) const;
  std::size_t sample_size(Rng& rng) const;

  Kind kind_ = Kind::kUniform;
  std::size_t n_ = 0;

  // Size-tilted: weights, per-size total masses C(n,s) g(s), cumulative
  // totals (exact in 128 bits when every weight is integral and small).
  std::vector<double> g_;
  std::vector<long double> size_mass_;
  std::vector<long double> cumulative_;
  std::vector<U128> cumulative_exact_;
  long double normalizer_ = 0;

  // Family / adversarial.
  std::vector<Coalition> family_;
  std::shared_ptr<const std::unordered_set<Coalition, CoalitionHash>> family_set_;
  double lambda_ = 1.0;
  double p_ = 0.0;
  double family_total_mass_ = 0.0;
};

/// Ratio of the largest to the smallest point mass. Throws UnboundedLambda for
/// family-uniform distributions that leave some coalition unsupported.
double lambda_of(const CoalitionDistribution& dist);

/// Binomial coefficient as a long double (exact below 2^64).
long double binomial(std::size_t n, std::size_t k);

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Mass of a family holding an `a` fraction of 2^N under a lambda-bounded
/// distribution lies within [a / (a + lambda(1-a)), lambda a / (lambda a + 1 - a)].
Bounds bartlett_bounds(double a, double lambda);

/// n/(lambda+1) <= E|C| <= lambda n/(lambda+1).
Bounds mean_size_bounds(std::size_t n, double lambda);

/// Relative half-width of the high-probability size window:
/// sqrt(3 (lambda + 1) ln(4/eps) / n).
double size_window_delta(double lambda, double eps, std::size_t n);

/// Open real interval (lo, hi) and the integer sizes in [1, n] strictly inside it.
struct SizeInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> sizes;

  bool contains(std::size_t s) const;
  bool empty() const { return sizes.empty(); }
};

/// Integer sizes s in [1, n] with lo < s < hi. Endpoints that equal an
/// integer up to rounding noise are treated as exactly that integer.
std::vector<std::size_t> sizes_strictly_between(double lo, double hi, std::size_t n);

/// ((1 - Delta) mu, (1 + Delta) mu) with Delta = size_window_delta(lambda, eps, n).
SizeInterval size_interval(double mu, double lambda, double eps, std::size_t n);

}  // namespace epsfc

#endif  // EPSFC_DISTRIBUTIONS_HPP
