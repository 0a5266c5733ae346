// Copyright 2026 The eprlab Authors
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

#include "eprlab/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "eprlab/counter_rng.hpp"

namespace eprlab::est {

namespace {

struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  // Chan et al. pairwise update.
  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
    const double n = na + nb;
    const double delta = o.mean - mean;
    mean += delta * (nb / n);
    m2 += o.m2 + delta * delta * (na * nb / n);
    count += o.count;
  }
};

// Per-draw product xi1 * xi2, with all setting-dependent work hoisted out.
class ProductSampler {
 public:
  ProductSampler(const lhv::HiddenVariableModel& model, const Setting& s1, const Setting& s2)
      : gaussian_(model.kind() == lhv::SampleSpaceKind::kGaussianPair) {
    if (gaussian_) {
      u_ = model.linear_xi1().eta_coefficients(s1);
      v_ = model.linear_xi2().eta_coefficients(s2);
      return;
    }
    double cum = 0.0;
    for (const auto& a : model.atoms()) {
      cum += a.weight;
      cumulative_.push_back(cum);
      products_.push_back(lhv::evaluate(a.xi1, s1) * lhv::evaluate(a.xi2, s2));
    }
    last_positive_ = 0;
    for (std::size_t k = 0; k < model.atoms().size(); ++k)
      if (model.atoms()[k].weight > 0.0) last_positive_ = k;
  }

  double operator()(const std::array<double, 2>& u) const {
    if (gaussian_) {
      const double e1 = rng::normal_quantile(u[0]);
      const double e2 = rng::normal_quantile(u[1]);
      return (u_[0] * e1 + u_[1] * e2) * (v_[0] * e1 + v_[1] * e2);
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u[0]);
    const std::size_t k = std::min(static_cast<std::size_t>(it - cumulative_.begin()), last_positive_);
    return products_[k];
  }

 private:
  bool gaussian_;
  std::array<double, 2> u_{}, v_{};
  std::vector<double> cumulative_;
  std::vector<double> products_;
  std::size_t last_positive_ = 0;
};

}  // namespace

CorrelationEstimate mc_estimate(const lhv::HiddenVariableModel& model, const Setting& s1, const Setting& s2,
                                std::uint64_t n, std::uint64_t seed, McOptions options) {
  if (n < 2) throw ValidationError("Monte Carlo estimate needs at least 2 samples");
  const ProductSampler sample(model, s1, s2);
  const rng::CounterRng gen(seed);

  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> partial(blocks);
  auto run_block = [&](std::uint64_t b) {
    Moments m;
    const std::uint64_t end = std::min(n, (b + 1) * kBlockSize);
    for (std::uint64_t i = b * kBlockSize; i < end; ++i) m.push(sample(gen.uniforms(i)));
    partial[b] = m;
  };

  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) run_block(b);
      });
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  const double var = std::max(0.0, total.m2 / static_cast<double>(n - 1));
  return {total.mean, std::sqrt(var / static_cast<double>(n)), n, seed};
}

ComparisonReport compare(double exact, const CorrelationEstimate& est) {
  const double diff = est.mean - exact;
  if (est.std_error > 0.0) return {exact, est, diff / est.std_error, false};
  if (std::abs(diff) <= kZeroVarianceMatchTol * std::max(1.0, std::abs(exact))) return {exact, est, 0.0, false};
  return {exact, est, std::copysign(std::numeric_limits<double>::infinity(), diff), true};
}

}  // namespace eprlab::est
