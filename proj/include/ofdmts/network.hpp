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
#include "ofdmts/signal.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <span>

namespace ofdmts::network {

// Single-hidden-layer perceptron: o = w2 * sigmoid(w1 * q + b1) + b2.
// For an OFDM config the shape is Ns -> N -> Ns.
struct Mlp {
    Eigen::MatrixXd w1; // hidden x inputs
    Eigen::VectorXd b1; // hidden
    Eigen::MatrixXd w2; // outputs x hidden
    Eigen::VectorXd b2; // outputs

    int inputs() const noexcept { return static_cast<int>(w1.cols()); }
    int hidden() const noexcept { return static_cast<int>(w1.rows()); }
    int outputs() const noexcept { return static_cast<int>(w2.rows()); }

    bool operator==(const Mlp& other) const;
};

// Same layout as Mlp; holds dL/dparam.
using Gradient = Mlp;

Mlp zeros(int inputs, int hidden, int outputs);

// Weights uniform on +-1/sqrt(fan_in), biases zero.
Mlp init(int inputs, int hidden, int outputs, std::uint64_t seed);
Mlp init(const OfdmConfig& config, std::uint64_t seed);

// Throws Errc::dimension on shape mismatch and Errc::invalid_argument unless
// ||q||_2 = 1 within 1e-6.
RVec forward(const Mlp& model, std::span<const double> q);

// No normalization check; used for toy problems and batched passes.
Eigen::VectorXd forward_raw(const Mlp& model, const Eigen::VectorXd& q);

// Samples are columns: inputs is (inputs x B), targets is (outputs x B).
struct BatchView {
    const Eigen::MatrixXd& inputs;
    const Eigen::MatrixXd& targets;
};

// Mean over the batch of the squared l2 error.
double loss(const Mlp& model, BatchView batch);

// Exact gradient of loss().
Gradient backward(const Mlp& model, BatchView batch);

struct TrainState {
    Mlp model;
    double learning_rate = 1e-3;
    long step = 0;
    std::uint64_t rng_seed = 0;
};

// model -= learning_rate * gradient; ++step.
void sgd_step(TrainState& state, BatchView batch);

// argmax_m |o(m)|, first index on ties.
int estimate(std::span<const double> output);

// Binary model file, little-endian:
//   char[4] "OTSM" | u32 version | u32 inputs | u32 hidden | u32 outputs |
//   u32 label mode | f64 w1[hidden*inputs] (row-major) | f64 b1[hidden] |
//   f64 w2[outputs*hidden] (row-major) | f64 b2[outputs]
constexpr std::uint32_t kModelVersion = 1;

void save_model(const Mlp& model, const std::filesystem::path& path,
                label::LabelMode mode = label::LabelMode::triangular);
Mlp load_model(const std::filesystem::path& path, label::LabelMode* mode = nullptr);
// Also checks the shape against config (Ns -> N -> Ns).
Mlp load_model(const std::filesystem::path& path, const OfdmConfig& config, label::LabelMode* mode = nullptr);

void check_shape(const Mlp& model, const OfdmConfig& config);

} // namespace ofdmts::network
