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

#include "ofdmts/rng.hpp"
#include "ofdmts/signal.hpp"

#include <string_view>

namespace ofdmts::label {

enum class LabelMode {
    triangular,
    // All-ones over the ISI-free region. An approximate baseline for
    // rectangular-label learners, not an exact reproduction of one.
    rectangular,
};

const char* mode_name(LabelMode mode) noexcept;
LabelMode parse_mode(std::string_view name);

// Closed index interval [first, last].
struct Interval {
    int first = 0;
    int last = -1;

    int length() const noexcept { return last - first + 1; }
    bool contains(int m) const noexcept { return m >= first && m <= last; }
    bool operator==(const Interval&) const = default;
};

// DFT-window starts free of ISI: [theta + tau_l, theta + ng].
// Requires theta >= 0 and 0 <= tau_l <= ng.
Interval isi_free_region(int theta, int tau_l, int ng);

// Label value at 1-based position d of a region of length region_len.
int zeta(int d, int region_len);

// theta + ceil((tau_l + ng) / 2); always inside isi_free_region.
int midpoint(int theta, int tau_l, int ng);

struct LabelSpec {
    int theta = 0;
    int tau_l = 0;
    int ng = 0;
    int ns = 0;
    LabelMode mode = LabelMode::triangular;
};

struct TimingLabel {
    RVec t;
};

// [theta+tau_l zeros | zeta(1..D) | ns-theta-ng-1 zeros]; the rectangular
// mode writes ones in the middle segment instead.
TimingLabel build_label(const LabelSpec& spec);

// Integer bound ceil(xi_LOS / (c T)) on the maximum path delay, in samples.
struct LosPrior {
    int los_ratio = 0;
};

// ceil(7 * ng / 8), the bound used for training.
LosPrior default_prior(int ng);

// Inclusive range sample_tau_l draws from.
Interval tau_l_range(const LosPrior& prior, int ng);

// Uniform integer on [1, r] if r < ceil(ng/2), else on [2r - ng, r].
// Throws Errc::prior_violation unless 0 < r < ng.
int sample_tau_l(const LosPrior& prior, int ng, Rng& rng);

// Narrowed region [theta + r, theta + ng - 1] implied by the prior.
Interval narrowed_region(int theta, const LosPrior& prior, int ng);

} // namespace ofdmts::label
