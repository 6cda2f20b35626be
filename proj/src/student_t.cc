/*
 * Copyright 2026 The powerindex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "powerindex/error.h"
#include "powerindex/sampling.h"

namespace powerindex {

namespace {

constexpr double kQuantileTolerance = 1e-9;

// P(T > t) for t >= 0.
double StudentUpperTail(double t, double dof) {
  const double x = dof / (dof + t * t);
  return 0.5 * boost::math::ibeta(dof / 2, 0.5, x);
}

void CheckAlpha(double alpha) {
  if (!(alpha > 0 && alpha < 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "tail probability must lie in (0, 1)");
  }
}

}  // namespace

double NormalUpperQuantile(double alpha) {
  CheckAlpha(alpha);
  return boost::math::quantile(
      boost::math::complement(boost::math::normal(), alpha));
}

double StudentUpperQuantile(double alpha, double dof) {
  CheckAlpha(alpha);
  if (!(dof > 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "degrees of freedom must be positive");
  }
  if (std::isinf(dof)) return NormalUpperQuantile(alpha);
  if (alpha == 0.5) return 0;
  if (alpha > 0.5) return -StudentUpperQuantile(1 - alpha, dof);

  double lo = 0;
  double hi = 1;
  while (StudentUpperTail(hi, dof) > alpha) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > kQuantileTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (StudentUpperTail(mid, dof) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace powerindex
