// SPDX-License-Identifier: Apache-2.0
#include "r1tc/fixtures.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "r1tc/rng.hpp"

namespace r1tc {

namespace {

// Copies of data/*.txt so the regression suite does not depend on the working directory.
constexpr std::string_view k_example51 = R"txt(# 3x4x3 tensor with 20 noisy observations (rank-1 ground truth)
3 4 3
1 1 1 20.06
2 1 1 40.02
3 1 1 20.15
1 2 1 -10.01
3 2 1 -10.03
1 3 1 40.35
3 4 1 40.11
2 1 2 40.08
3 1 2 20.04
1 1 2 20.14
1 2 2 -10.09
3 2 2 -10.03
2 2 2 -20.12
1 4 2 40.00
2 4 2 80.57
1 1 3 30.03
3 1 3 30.18
1 3 3 60.41
2 3 3 121.13
3 3 3 60.52
)txt";

constexpr std::string_view k_example53 = R"txt(# 3x3x4 tensor with 11 noisy observations; slice 4 has a single entry
3 3 4
3 1 1 3.03
3 2 1 6.02
1 3 1 3.02
2 1 2 1.52
1 1 2 0.76
3 1 3 0.76
3 2 3 1.53
1 2 3 0.51
2 3 3 1.52
3 3 3 2.26
1 3 4 3.76
)txt";

constexpr std::string_view k_example54 = R"txt(# 3x3x3 exact rank-1 data with two distinct rank-1 completions
3 3 3
1 3 1 4
1 3 3 4
2 1 3 1
1 1 2 4
2 3 2 16
1 2 2 4
3 1 2 2
2 1 1 1
3 2 2 2
3 3 3 2
3 3 1 2
2 2 1 1
2 2 3 1
)txt";

constexpr std::string_view k_example55 = R"txt(# 3x3x7 tensor whose objective is |a (x) b|^2 plus the Choi biquadratic form
3 3 7
1 1 1 1
2 2 1 1
3 3 1 1
1 1 5 1
1 1 6 1
1 1 7 1
1 2 2 0
2 3 3 0
3 1 4 0
1 3 5 0
2 1 6 0
3 2 7 0
1 1 2 1.7320508075688772
1 1 3 1.7320508075688772
1 1 4 1.7320508075688772
)txt";

}  // namespace

std::vector<std::string_view> fixture_names() {
  return {"example51", "example53", "example54", "example55"};
}

std::string_view fixture_text(std::string_view name) {
  if (name == "example51") return k_example51;
  if (name == "example53") return k_example53;
  if (name == "example54") return k_example54;
  if (name == "example55") return k_example55;
  throw ValidationError("unknown fixture '" + std::string(name) + "'");
}

ObservedTensor fixture_tensor(std::string_view name) {
  std::istringstream in{std::string(fixture_text(name))};
  return parse_tensor(in, std::string(name));
}

Instance example52_instance(std::uint64_t seed, double sigma) {
  constexpr int n = 10;
  GroundTruth truth;
  truth.a.resize(n);
  truth.b.resize(n);
  truth.c.resize(n);
  for (int i = 0; i < n; ++i) {
    truth.a[i] = std::sin(i + 1.0);
    truth.b[i] = std::cos(i + 1.0);
    truth.c[i] = std::sin(i + 1.0);
  }
  Philox4x64 rng(seed);
  std::vector<Entry> entries;
  std::vector<double> noise;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if ((i + j + k + 3) % 3 != 0) continue;
        const double d = sigma * rng.normal();
        noise.push_back(d);
        entries.push_back({{i, j, k}, truth.a[i] * truth.b[j] * truth.c[k] + d});
      }
    }
  }
  truth.noise = Eigen::Map<const Vector>(noise.data(), static_cast<Eigen::Index>(noise.size()));
  truth.noise_norm = truth.noise.norm();
  return Instance{ObservedTensor({n, n, n}, std::move(entries)), std::move(truth)};
}

}  // namespace r1tc
