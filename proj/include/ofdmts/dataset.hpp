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
#include "ofdmts/label.hpp"
#include "ofdmts/network.hpp"
#include "ofdmts/rng.hpp"
#include "ofdmts/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace ofdmts::dataset {

struct SampleMeta {
    int theta = 0;
    int tau_l_true = 0;  // maximum delay of the simulated channel
    int tau_l_label = 0; // tau_L the label was built with
    double snr_db = 0.0;
    double eta = 0.0;
    bool operator==(const SampleMeta&) const = default;
};

struct TrainingSample {
    RVec q; // unit-norm feature vector, length Ns
    RVec t; // label, length Ns
    SampleMeta meta;
    bool operator==(const TrainingSample&) const = default;
};

struct GenOptions {
    label::LosPrior prior{28};
    label::LabelMode mode = label::LabelMode::triangular;
    double eta_min = 0.01;
    double eta_max = 0.5;
    std::vector<double> snr_set_db{-2.0, 0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
    double cfo = 0.0;
};

// Default training recipe for the config: prior ceil(7 Ng / 8), triangular labels.
GenOptions default_gen_options(const OfdmConfig& config);

// Draws theta, tau_L, eta and SNR for one sample without simulating it.
SampleMeta draw_params(const OfdmConfig& config, const GenOptions& options, Rng& rng);

// Simulates one frame with an exp-decay channel of tau_L + 1 taps, runs the
// correlator, and labels it. Redraws a bounded number of times on a
// degenerate metric, then throws Errc::degenerate_input.
TrainingSample generate_sample(const OfdmConfig& config, const GenOptions& options, Rng& rng);

struct Dataset {
    int n = 0;
    int ng = 0;
    std::uint64_t seed = 0;
    label::LabelMode mode = label::LabelMode::triangular;
    std::vector<TrainingSample> samples;

    int ns() const noexcept { return n + ng; }
    bool operator==(const Dataset&) const = default;
};

// Sample i is generated from a stream seeded by (seed, i), so the result does
// not depend on generation order.
Dataset generate_dataset(const OfdmConfig& config, const GenOptions& options, std::size_t count,
                         std::uint64_t seed);

// Binary dataset file, little-endian:
//   char[4] "OTSD" | u32 version | u32 N | u32 Ng | u32 Ns | u32 label mode |
//   u64 count | u64 seed |
//   f64 q[count*Ns] | f64 t[count*Ns] |
//   per sample: i32 theta, i32 tau_true, i32 tau_label, f64 snr_db, f64 eta
constexpr std::uint32_t kDatasetVersion = 1;

void save_dataset(const Dataset& data, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);
// Also rejects files generated for a different frame shape.
Dataset load_dataset(const std::filesystem::path& path, const OfdmConfig& config);

struct TrainOptions {
    double learning_rate = 1e-3;
    int batch_size = 32;
    int max_epochs = 100;
    int patience = 10;           // epochs without validation improvement before stopping
    double val_fraction = 0.1;   // held out; 0 disables early stopping
    double lr_decay = 1.0;       // per-epoch multiplier, 1 = constant rate
};

struct EpochLoss {
    int epoch = 0; // 0 = before the first update
    double train = 0.0;
    double validation = 0.0; // NaN without a validation split
};

struct TrainResult {
    network::Mlp model; // best validation epoch, or the last epoch without a split
    std::vector<EpochLoss> trace;
    int best_epoch = 0;
    bool early_stopped = false;
};

// Throws Errc::training if a loss becomes non-finite.
TrainResult train_pipeline(const Dataset& data, const TrainOptions& options, std::uint64_t seed);

} // namespace ofdmts::dataset
