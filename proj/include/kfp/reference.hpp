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
#pragma once

namespace kfp::reference {

/// Plain power series of M(a, b, tau) summed in 100-digit binary floating
/// point, rounded to double. Independent of the production evaluator; meant
/// for |tau| <= 60.
double kummer_m(double a, double b, double tau);

/// Psi(tau) from its defining Kummer combination in 100-digit arithmetic.
double tricomi_psi(double tau);

}  // namespace kfp::reference
