// Copyright 2026 The seatwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "doctest.h"
#include "seatwalk/balancer.h"

namespace seatwalk {
namespace {

TEST_CASE("published gains by motion kind") {
  CHECK(select_gains(MotionKind::kTranslation) == BalancerGains{5.0, 0.3});
  CHECK(select_gains(MotionKind::kRotation) == BalancerGains{5.0, 0.03});
}

TEST_CASE("PI output on a short sequence") {
  Balancer b;
  CHECK(b.step(3.0, 1.0) == doctest::Approx(5.0 * 2 + 0.3 * 2));
  CHECK(b.step(1.0, 2.0) == doctest::Approx(5.0 * -1 + 0.3 * 1));
  CHECK(b.accumulated() == 1.0);
  b.reset();
  CHECK(b.accumulated() == 0.0);
}

TEST_CASE("matches the closed form while no clamp engages") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  Balancer b({5.0, 0.3});
  double sum = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double l = 3.0 + d(rng);
    const double r = 3.0 + d(rng);
    sum += l - r;
    const double out = b.step(l, r);
    CHECK(out == doctest::Approx(5.0 * (l - r) + 0.3 * sum).epsilon(1e-12));
  }
}

TEST_CASE("anti-windup and output clamps") {
  Balancer b({5.0, 0.3}, 50.0, 20.0);
  for (int i = 0; i < 100; ++i) b.step(2.0, 1.0);
  CHECK(b.accumulated() == 50.0);
  CHECK(b.step(2.0, 1.0) == 20.0);
  // Unwinding starts immediately from the clamp, not from 100.
  CHECK(b.step(1.0, 2.0) == doctest::Approx(-5.0 + 0.3 * 49.0));
  for (int i = 0; i < 300; ++i) b.step(0.0, 4.0);
  CHECK(b.accumulated() == -50.0);
  CHECK(b.step(0.0, 4.0) == -20.0);
}

TEST_CASE("disabled balancer outputs zero and holds its state") {
  Balancer b;
  b.step(2.0, 1.0);
  b.set_enabled(false);
  CHECK(b.step(9.0, 0.0) == 0.0);
  CHECK(b.accumulated() == 1.0);
  b.set_enabled(true);
  CHECK(b.step(1.0, 1.0) == doctest::Approx(0.3));
}

TEST_CASE("switching gains keeps the accumulator") {
  Balancer b;
  b.step(2.0, 1.0);
  b.set_gains(select_gains(MotionKind::kRotation));
  CHECK(b.step(1.0, 1.0) == doctest::Approx(0.03));
}

}  // namespace
}  // namespace seatwalk
