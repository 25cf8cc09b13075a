// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "r1tc/fixtures.hpp"
#include "r1tc/report.hpp"

using namespace r1tc;
using testing::random_vector;

TEST_CASE("rank1_distance matches the dense difference") {
  Philox4x64 rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector a = random_vector(rng, 3), b = random_vector(rng, 2), c = random_vector(rng, 4);
    const Vector x = random_vector(rng, 3), y = random_vector(rng, 2), z = random_vector(rng, 4);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 4; ++k) sum += std::pow(a[i] * b[j] * c[k] - x[i] * y[j] * z[k], 2);
    CHECK(rank1_distance(a, b, c, x, y, z) == doctest::Approx(std::sqrt(sum)).epsilon(1e-9));
  }
  CHECK(rank1_distance(Vector::Ones(2), Vector::Ones(2), Vector::Ones(2), Vector::Ones(2),
                       Vector::Ones(2), Vector::Ones(2)) == 0.0);
}

TEST_CASE("truth files round-trip") {
  const Instance inst = generate_instance({{3, 4, 5}, 0.5, 1e-2, 4});
  std::stringstream io;
  write_truth(io, inst.truth);
  const GroundTruth back = parse_truth(io);
  CHECK(back.a == inst.truth.a);
  CHECK(back.b == inst.truth.b);
  CHECK(back.c == inst.truth.c);
  CHECK(back.noise_norm == inst.truth.noise_norm);
  std::istringstream bad("a 1 2\nq 3\n");
  CHECK_THROWS_AS(parse_truth(bad), ParseError);
  std::istringstream missing("a 1\nb 2\n");
  CHECK_THROWS_AS(parse_truth(missing), ParseError);
}

TEST_CASE("report and factor CSV carry every candidate") {
  const ObservedTensor t = fixture_tensor("example54");
  const CompletionResult r = complete(t);
  std::ostringstream rep, csv;
  write_report(rep, r);
  write_factors_csv(csv, r);
  const std::string s = rep.str();
  for (const char* key : {"route=separable", "rank=2", "pstar=", "cert_lb=", "best=", "candidate.2.c=",
                          "candidate.1.singular=false", "candidate.2.err_abs="}) {
    CHECK_MESSAGE(s.find(key) != std::string::npos, key);
  }
  std::size_t lines = 0;
  for (char ch : csv.str()) lines += ch == '\n';
  CHECK(lines == 1 + 2 * (3 + 3 + 3));
}

TEST_CASE("diagnosis against a known truth") {
  const Instance inst = generate_instance({{4, 4, 4}, 0.9, 1e-3, 12});
  const CompletionResult r = complete(inst.tensor);
  const Diagnosis d = diagnose(inst.tensor, r, inst.truth);
  REQUIRE(d.err_rat.has_value());
  CHECK(*d.err_rat < 1.0);
  CHECK(d.full_distance < 10 * inst.truth.noise_norm);
  CHECK(d.identifiability.pass);
}
