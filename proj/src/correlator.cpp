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

#include "ofdmts/correlator.hpp"

#include "ofdmts/error.hpp"

#include <cmath>

namespace ofdmts::correlator {

TimingMetric timing_metric(const OfdmConfig& config, std::span<const cplx> y, std::span<const cplx> x) {
    const auto n = static_cast<std::size_t>(config.n());
    const auto ns = static_cast<std::size_t>(config.ns());
    if (x.size() != n) fail(Errc::dimension, "local sequence length " + std::to_string(x.size()) + " != N");
    if (y.size() != static_cast<std::size_t>(config.nw()))
        fail(Errc::dimension, "observed vector length " + std::to_string(y.size()) + " != Nw");

    TimingMetric out;
    out.f.resize(ns);
    for (std::size_t m = 0; m < ns; ++m) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[m + i];
        out.f[m] = std::norm(acc);
    }
    return out;
}

FeatureVector normalize(const TimingMetric& metric) {
    double sq = 0.0;
    for (double v : metric.f) sq += v * v;
    if (!(sq > 0.0) || !std::isfinite(sq)) fail(Errc::degenerate_input, "timing metric is identically zero");
    const double inv = 1.0 / std::sqrt(sq);
    FeatureVector out;
    out.q.reserve(metric.f.size());
    for (double v : metric.f) out.q.push_back(v * inv);
    return out;
}

int classic_estimate(const TimingMetric& metric) {
    if (metric.f.empty()) fail(Errc::dimension, "empty timing metric");
    std::size_t best = 0;
    for (std::size_t m = 1; m < metric.f.size(); ++m)
        if (metric.f[m] > metric.f[best]) best = m;
    return static_cast<int>(best);
}

} // namespace ofdmts::correlator
