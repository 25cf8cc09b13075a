// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "r1tc/rng.hpp"
#include "r1tc/tensor.hpp"

namespace r1tc::testing {

inline Vector random_vector(Philox4x64& rng, int n) {
  Vector v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

inline Vector random_unit(Philox4x64& rng, int n) {
  Vector v = random_vector(rng, n);
  return v / v.norm();
}

/// Observations of a (x) b (x) c plus optional noise on a random subset with
/// each entry kept with probability `keep`.
inline ObservedTensor random_tensor(Philox4x64& rng, Dims d, double keep, double noise = 0.0,
                                    const Vector* a = nullptr, const Vector* b = nullptr,
                                    const Vector* c = nullptr) {
  const Vector ra = a ? *a : random_vector(rng, d.n1);
  const Vector rb = b ? *b : random_vector(rng, d.n2);
  const Vector rc = c ? *c : random_vector(rng, d.n3);
  std::vector<Entry> entries;
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.n2; ++j)
      for (int k = 0; k < d.n3; ++k)
        if (rng.uniform() < keep)
          entries.push_back({{i, j, k}, ra[i] * rb[j] * rc[k] + noise * rng.normal()});
  if (entries.empty()) entries.push_back({{0, 0, 0}, ra[0] * rb[0] * rc[0]});
  return ObservedTensor(d, std::move(entries));
}

/// Dense tensor with arbitrary (not rank-1) values on a random subset.
inline ObservedTensor random_values(Philox4x64& rng, Dims d, double keep) {
  std::vector<Entry> entries;
  for (int i = 0; i < d.n1; ++i)
    for (int j = 0; j < d.n2; ++j)
      for (int k = 0; k < d.n3; ++k)
        if (rng.uniform() < keep) entries.push_back({{i, j, k}, rng.normal()});
  if (entries.empty()) entries.push_back({{0, 0, 0}, 1.0});
  return ObservedTensor(d, std::move(entries));
}

}  // namespace r1tc::testing
