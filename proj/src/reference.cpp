// Copyright 2026 The kfp Authors
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
#include "kfp/reference.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "kfp/error.hpp"

namespace kfp::reference {

namespace {

using Big = boost::multiprecision::cpp_bin_float_100;

Big series(const Big& a, const Big& b, const Big& z) {
  Big term = 1, sum = 1;
  const Big tiny = std::numeric_limits<Big>::epsilon() * 1e-5;
  for (int k = 0; k < 4000; ++k) {
    term *= (a + k) / (b + k) * z / (k + 1);
    sum += term;
    if (term == 0) break;
    if (k > abs(z) && abs(term) < tiny * abs(sum)) break;
  }
  return sum;
}

void check_range(double tau) {
  if (!(std::abs(tau) <= 60.0))
    throw Error(ErrorCode::domain_error, "reference series limited to |tau| <= 60");
}

}  // namespace

double kummer_m(double a, double b, double tau) {
  check_range(tau);
  return static_cast<double>(series(Big(a), Big(b), Big(tau)));
}

double tricomi_psi(double tau) {
  check_range(tau);
  const Big third = Big(1) / 3, sixth = Big(1) / 6;
  const Big t(tau);
  const Big c1 = boost::math::tgamma(third) / boost::math::tgamma(sixth);
  const Big c2 = boost::math::tgamma(-third) / boost::math::tgamma(-sixth);
  Big root = tau == 0.0 ? Big(0) : (tau > 0 ? cbrt(t) : -cbrt(-t));
  Big v = c1 * series(-sixth, 2 * third, t) + c2 * root * series(sixth, 4 * third, t);
  return static_cast<double>(v);
}

}  // namespace kfp::reference
