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
#include "ofdmts/signal.hpp"

#include <span>

namespace ofdmts::correlator {

// F(m) = |sum_{n<N} conj(x(n)) * y(m + n)|^2 for m in [0, Ns).
struct TimingMetric {
    RVec f;
};

// Q = F / ||F||_2, the network input.
struct FeatureVector {
    RVec q;
};

TimingMetric timing_metric(const OfdmConfig& config, std::span<const cplx> y, std::span<const cplx> x);

// Throws Errc::degenerate_input for an all-zero metric.
FeatureVector normalize(const TimingMetric& metric);

// argmax_m F(m), first index on ties.
int classic_estimate(const TimingMetric& metric);

} // namespace ofdmts::correlator
