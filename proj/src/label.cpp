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

#include "ofdmts/label.hpp"

#include "ofdmts/error.hpp"

#include <string>

namespace ofdmts::label {

namespace {

int ceil_div2(int v) { return (v + 1) / 2; } // v >= 0

void check_region_args(int theta, int tau_l, int ng) {
    if (ng < 1) fail(Errc::invalid_argument, "Ng must be positive");
    if (theta < 0) fail(Errc::invalid_offset, "timing offset must be nonnegative");
    if (tau_l < 0 || tau_l > ng)
        fail(Errc::invalid_argument, "tau_L " + std::to_string(tau_l) + " outside [0, Ng=" + std::to_string(ng) + "]");
}

} // namespace

const char* mode_name(LabelMode mode) noexcept {
    return mode == LabelMode::triangular ? "triangular" : "rectangular";
}

LabelMode parse_mode(std::string_view name) {
    if (name == "triangular" || name == "tri") return LabelMode::triangular;
    if (name == "rectangular" || name == "rect") return LabelMode::rectangular;
    fail(Errc::invalid_argument, "unknown label mode '" + std::string(name) + "'");
}

Interval isi_free_region(int theta, int tau_l, int ng) {
    check_region_args(theta, tau_l, ng);
    return {theta + tau_l, theta + ng};
}

int zeta(int d, int region_len) {
    if (region_len < 1 || d < 1 || d > region_len)
        fail(Errc::invalid_argument, "zeta position " + std::to_string(d) + " outside [1, " +
                                         std::to_string(region_len) + "]");
    return d < ceil_div2(region_len + 1) ? d : region_len - d + 1;
}

int midpoint(int theta, int tau_l, int ng) {
    check_region_args(theta, tau_l, ng);
    return theta + ceil_div2(tau_l + ng);
}

TimingLabel build_label(const LabelSpec& spec) {
    check_region_args(spec.theta, spec.tau_l, spec.ng);
    if (spec.theta + spec.ng > spec.ns - 1)
        fail(Errc::invalid_offset, "theta + Ng = " + std::to_string(spec.theta + spec.ng) +
                                       " exceeds Ns - 1 = " + std::to_string(spec.ns - 1));
    const Interval region = isi_free_region(spec.theta, spec.tau_l, spec.ng);
    const int d_len = region.length();
    TimingLabel out;
    out.t.assign(static_cast<std::size_t>(spec.ns), 0.0);
    for (int d = 1; d <= d_len; ++d) {
        const double v = spec.mode == LabelMode::triangular ? zeta(d, d_len) : 1.0;
        out.t[static_cast<std::size_t>(region.first + d - 1)] = v;
    }
    return out;
}

LosPrior default_prior(int ng) { return {(7 * ng + 7) / 8}; }

Interval tau_l_range(const LosPrior& prior, int ng) {
    const int r = prior.los_ratio;
    if (r <= 0 || r >= ng)
        fail(Errc::prior_violation, "LOS ratio " + std::to_string(r) + " must lie in (0, Ng=" + std::to_string(ng) + ")");
    if (r < ceil_div2(ng)) return {1, r};
    return {2 * r - ng, r};
}

int sample_tau_l(const LosPrior& prior, int ng, Rng& rng) {
    const Interval range = tau_l_range(prior, ng);
    std::uniform_int_distribution<int> pick(range.first, range.last);
    return pick(rng);
}

Interval narrowed_region(int theta, const LosPrior& prior, int ng) {
    // validates the prior
    (void)tau_l_range(prior, ng);
    return {theta + prior.los_ratio, theta + ng - 1};
}

} // namespace ofdmts::label
