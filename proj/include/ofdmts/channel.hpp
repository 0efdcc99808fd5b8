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
#include "ofdmts/rng.hpp"
#include "ofdmts/signal.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ofdmts::channel {

struct Tap {
    int delay = 0;      // samples
    double power = 0.0; // linear, averaged over fading
};

struct DelayProfile {
    std::string name;
    std::vector<Tap> taps; // strictly increasing delays starting at 0, powers sum to 1

    int max_delay() const { return taps.empty() ? 0 : taps.back().delay; }
};

// Checks the profile invariants and that its maximum delay fits in the CP.
void validate_profile(const DelayProfile& profile, const OfdmConfig& config);

// taps tau_l = l - 1 with average power proportional to exp(-eta * (l - 1)).
DelayProfile exp_decay_profile(int taps, double eta);

// Tapped-delay-line profile text:
//
//   # comment lines
//   scale_samples 5.6445
//   <normalized_delay> <power_dB>
//   ...
//
// Delays are multiplied by scale_samples and rounded to the nearest sample,
// taps on the same sample are merged by summing linear power and the result
// is renormalized. Throws Errc::profile on malformed input or when the
// largest delay is not below ng.
DelayProfile parse_tdl_profile(std::string_view text, std::string name, int ng);
DelayProfile load_tdl_profile(const std::filesystem::path& path, int ng);

struct ChannelRealization {
    CVec gains;              // h_l, sum |h_l|^2 = 1
    std::vector<int> delays; // tau_l
    int theta = 0;           // CP start of the first path in the window
    double cfo = 0.0;        // normalized to the subcarrier spacing
    double noise_var = 0.0;  // complex noise variance per sample

    int max_delay() const { return delays.empty() ? 0 : delays.back(); }
};

// Rayleigh draw around the profile. The gain vector is renormalized per draw
// so the total channel power is exactly 1, and noise_var = 10^(-snr_db/10).
ChannelRealization draw_realization(const DelayProfile& profile, const OfdmConfig& config, int theta,
                                    double cfo, double snr_db, Rng& rng);

// Transmit samples addressed by window index n. Index 0 is the first sample
// of the observed window; the stream also holds `origin` samples of history
// before it so delayed paths have something to read.
struct TxStream {
    CVec samples;
    int origin = 0;

    int first() const noexcept { return -origin; }
    int end() const noexcept { return static_cast<int>(samples.size()) - origin; }
    const cplx& at(int n) const { return samples.at(static_cast<std::size_t>(n + origin)); }
};

// Places the training symbol's CP at window index theta and fills every other
// position in [-Ng, Nw) with random QPSK data symbols built through the same
// modulate/add_cp path.
TxStream assemble_frame(const OfdmConfig& config, const signal::TrainingSymbol& symbol, int theta, Rng& rng);

struct ObservedFrame {
    CVec y; // length Nw
    ChannelRealization truth;
};

// y(n) = exp(j*2*pi*n*cfo/N) * sum_l h_l * stream(n - tau_l) + w(n).
ObservedFrame observe(const TxStream& stream, const ChannelRealization& realization, const OfdmConfig& config,
                      Rng& rng);

} // namespace ofdmts::channel
