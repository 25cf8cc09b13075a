// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "r1tc/harness.hpp"

namespace r1tc {

/// Names of the embedded fixture tensors: example51, example53, example54, example55.
std::vector<std::string_view> fixture_names();

/// Raw tensor-file text of a fixture; throws ValidationError for unknown names.
std::string_view fixture_text(std::string_view name);
ObservedTensor fixture_tensor(std::string_view name);

/// A_ijk = sin(i) cos(j) sin(k) + Normal(0, sigma) on i + j + k = 0 mod 3
/// (one-based), n = 10. Truth factors are left unnormalized.
Instance example52_instance(std::uint64_t seed, double sigma);

}  // namespace r1tc
