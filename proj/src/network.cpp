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

#include "ofdmts/network.hpp"

#include "binary_io.hpp"
#include "ofdmts/error.hpp"
#include "ofdmts/rng.hpp"

#include <cmath>

namespace ofdmts::network {

namespace {

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) { return (1.0 + (-z.array()).exp()).inverse().matrix(); }

void check_batch(const Mlp& model, BatchView batch) {
    if (batch.inputs.cols() == 0) fail(Errc::invalid_argument, "empty batch");
    if (batch.inputs.cols() != batch.targets.cols())
        fail(Errc::dimension, "batch inputs and targets have different sample counts");
    if (batch.inputs.rows() != model.inputs() || batch.targets.rows() != model.outputs())
        fail(Errc::dimension, "batch shape does not match the network");
}

struct Activations {
    Eigen::MatrixXd hidden; // sigmoid(w1 q + b1)
    Eigen::MatrixXd output;
};

Activations run(const Mlp& model, const Eigen::MatrixXd& inputs) {
    Activations a;
    a.hidden = sigmoid((model.w1 * inputs).colwise() + model.b1);
    a.output = (model.w2 * a.hidden).colwise() + model.b2;
    return a;
}

} // namespace

bool Mlp::operator==(const Mlp& other) const {
    auto same = [](const auto& a, const auto& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
    };
    return same(w1, other.w1) && same(b1, other.b1) && same(w2, other.w2) && same(b2, other.b2);
}

Mlp zeros(int inputs, int hidden, int outputs) {
    if (inputs < 1 || hidden < 1 || outputs < 1) fail(Errc::invalid_argument, "layer sizes must be positive");
    Mlp m;
    m.w1 = Eigen::MatrixXd::Zero(hidden, inputs);
    m.b1 = Eigen::VectorXd::Zero(hidden);
    m.w2 = Eigen::MatrixXd::Zero(outputs, hidden);
    m.b2 = Eigen::VectorXd::Zero(outputs);
    return m;
}

Mlp init(int inputs, int hidden, int outputs, std::uint64_t seed) {
    Mlp m = zeros(inputs, hidden, outputs);
    Rng rng(derive_seed(seed, {0x696e6974}));
    const double a1 = 1.0 / std::sqrt(static_cast<double>(inputs));
    const double a2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    std::uniform_real_distribution<double> u1(-a1, a1);
    std::uniform_real_distribution<double> u2(-a2, a2);
    // Fill row-major so the draw order matches the file layout.
    for (int r = 0; r < m.w1.rows(); ++r)
        for (int c = 0; c < m.w1.cols(); ++c) m.w1(r, c) = u1(rng);
    for (int r = 0; r < m.w2.rows(); ++r)
        for (int c = 0; c < m.w2.cols(); ++c) m.w2(r, c) = u2(rng);
    return m;
}

Mlp init(const OfdmConfig& config, std::uint64_t seed) { return init(config.ns(), config.n(), config.ns(), seed); }

Eigen::VectorXd forward_raw(const Mlp& model, const Eigen::VectorXd& q) {
    if (q.size() != model.inputs()) fail(Errc::dimension, "input length does not match the network");
    const Eigen::VectorXd h = sigmoid(model.w1 * q + model.b1);
    return model.w2 * h + model.b2;
}

RVec forward(const Mlp& model, std::span<const double> q) {
    if (static_cast<int>(q.size()) != model.inputs())
        fail(Errc::dimension, "input length " + std::to_string(q.size()) + " does not match the network");
    const Eigen::Map<const Eigen::VectorXd> in(q.data(), static_cast<Eigen::Index>(q.size()));
    const double norm = in.norm();
    if (std::abs(norm - 1.0) > 1e-6)
        fail(Errc::invalid_argument, "network input must have unit l2 norm, got " + std::to_string(norm));
    const Eigen::VectorXd o = forward_raw(model, in);
    return RVec(o.data(), o.data() + o.size());
}

double loss(const Mlp& model, BatchView batch) {
    check_batch(model, batch);
    const Activations a = run(model, batch.inputs);
    return (a.output - batch.targets).squaredNorm() / static_cast<double>(batch.inputs.cols());
}

Gradient backward(const Mlp& model, BatchView batch) {
    check_batch(model, batch);
    const Activations a = run(model, batch.inputs);
    const double scale = 2.0 / static_cast<double>(batch.inputs.cols());

    const Eigen::MatrixXd d_out = scale * (a.output - batch.targets);
    const Eigen::MatrixXd d_hidden =
        ((model.w2.transpose() * d_out).array() * a.hidden.array() * (1.0 - a.hidden.array())).matrix();

    Gradient g;
    g.w2 = d_out * a.hidden.transpose();
    g.b2 = d_out.rowwise().sum();
    g.w1 = d_hidden * batch.inputs.transpose();
    g.b1 = d_hidden.rowwise().sum();
    return g;
}

void sgd_step(TrainState& state, BatchView batch) {
    if (!(state.learning_rate >= 0.0)) fail(Errc::invalid_argument, "learning rate must be nonnegative");
    const Gradient g = backward(state.model, batch);
    const double lr = state.learning_rate;
    state.model.w1 -= lr * g.w1;
    state.model.b1 -= lr * g.b1;
    state.model.w2 -= lr * g.w2;
    state.model.b2 -= lr * g.b2;
    ++state.step;
}

int estimate(std::span<const double> output) {
    if (output.empty()) fail(Errc::dimension, "empty network output");
    std::size_t best = 0;
    for (std::size_t m = 1; m < output.size(); ++m)
        if (std::abs(output[m]) > std::abs(output[best])) best = m;
    return static_cast<int>(best);
}

void check_shape(const Mlp& model, const OfdmConfig& config) {
    if (model.inputs() != config.ns() || model.hidden() != config.n() || model.outputs() != config.ns())
        fail(Errc::dimension, "model shape " + std::to_string(model.inputs()) + "->" + std::to_string(model.hidden()) +
                                  "->" + std::to_string(model.outputs()) + " does not match config " +
                                  std::to_string(config.ns()) + "->" + std::to_string(config.n()) + "->" +
                                  std::to_string(config.ns()));
}

void save_model(const Mlp& model, const std::filesystem::path& path, label::LabelMode mode) {
    io::Writer w;
    w.magic("OTSM");
    w.u32(kModelVersion);
    w.u32(static_cast<std::uint32_t>(model.inputs()));
    w.u32(static_cast<std::uint32_t>(model.hidden()));
    w.u32(static_cast<std::uint32_t>(model.outputs()));
    w.u32(static_cast<std::uint32_t>(mode));
    for (int r = 0; r < model.w1.rows(); ++r)
        for (int c = 0; c < model.w1.cols(); ++c) w.f64(model.w1(r, c));
    for (int i = 0; i < model.b1.size(); ++i) w.f64(model.b1(i));
    for (int r = 0; r < model.w2.rows(); ++r)
        for (int c = 0; c < model.w2.cols(); ++c) w.f64(model.w2(r, c));
    for (int i = 0; i < model.b2.size(); ++i) w.f64(model.b2(i));
    w.save(path);
}

Mlp load_model(const std::filesystem::path& path, label::LabelMode* mode) {
    io::Reader r(path);
    r.expect_magic("OTSM");
    const auto version = r.u32();
    if (version != kModelVersion)
        fail(Errc::format, r.name() + ": unsupported model version " + std::to_string(version));
    const auto inputs = r.u32();
    const auto hidden = r.u32();
    const auto outputs = r.u32();
    const auto mode_raw = r.u32();
    if (mode_raw > 1) fail(Errc::format, r.name() + ": unknown label mode " + std::to_string(mode_raw));
    if (inputs == 0 || hidden == 0 || outputs == 0 || inputs > 1u << 16 || hidden > 1u << 16 || outputs > 1u << 16)
        fail(Errc::format, r.name() + ": implausible layer sizes");
    const std::size_t count = std::size_t{hidden} * inputs + hidden + std::size_t{outputs} * hidden + outputs;
    if (r.remaining() != count * 8)
        fail(Errc::format, r.name() + ": payload size does not match the header (truncated or padded file)");

    Mlp m = zeros(static_cast<int>(inputs), static_cast<int>(hidden), static_cast<int>(outputs));
    for (int i = 0; i < m.w1.rows(); ++i)
        for (int c = 0; c < m.w1.cols(); ++c) m.w1(i, c) = r.f64();
    for (int i = 0; i < m.b1.size(); ++i) m.b1(i) = r.f64();
    for (int i = 0; i < m.w2.rows(); ++i)
        for (int c = 0; c < m.w2.cols(); ++c) m.w2(i, c) = r.f64();
    for (int i = 0; i < m.b2.size(); ++i) m.b2(i) = r.f64();
    if (mode) *mode = static_cast<label::LabelMode>(mode_raw);
    return m;
}

Mlp load_model(const std::filesystem::path& path, const OfdmConfig& config, label::LabelMode* mode) {
    Mlp m = load_model(path, mode);
    check_shape(m, config);
    return m;
}

} // namespace ofdmts::network
