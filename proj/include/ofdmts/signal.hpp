/*
   Copyright 2026 The ofdmts Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "ofdmts/config.hpp"

#include <complex>
#include <span>
#include <vector>

namespace ofdmts {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

namespace signal {

// Zadoff-Chu sequence of length n. Even n uses exp(-j*pi*u*k^2/n), odd n
// uses exp(-j*pi*u*k*(k+1)/n). Throws Errc::invalid_root unless gcd(u, n) = 1.
CVec zadoff_chu(int n, int root);

// body(n) = 1/sqrt(N) * sum_k d(k) exp(j*2*pi*k*n/N). The 1/sqrt(N) factor
// makes a unit-modulus input produce unit mean power.
CVec modulate(std::span<const cplx> freq);

// Exact inverse of modulate().
CVec demodulate(std::span<const cplx> body);

// Prepends the last ng samples. ng = 0 is a no-op copy; ng >= N throws
// Errc::invalid_cp.
CVec add_cp(std::span<const cplx> body, int ng);

struct TrainingSymbol {
    CVec freq;    // d(k), length N, unit modulus
    CVec body;    // s(n), length N
    CVec with_cp; // length Ng + N
};

TrainingSymbol make_training_symbol(const OfdmConfig& config);

// Time-domain reference the correlator matches against. Identical to
// make_training_symbol(config).body.
CVec local_sequence(const OfdmConfig& config);

} // namespace signal
} // namespace ofdmts
