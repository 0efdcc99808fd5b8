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

#include "ofdmts/dataset.hpp"

#include "binary_io.hpp"
#include "ofdmts/channel.hpp"
#include "ofdmts/correlator.hpp"
#include "ofdmts/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ofdmts::dataset {

namespace {

constexpr int kMaxRedraws = 8;

struct Assets {
    signal::TrainingSymbol symbol;
    CVec reference;
};

Assets make_assets(const OfdmConfig& config) {
    Assets a{signal::make_training_symbol(config), {}};
    a.reference = a.symbol.body;
    return a;
}

void check_options(const OfdmConfig& config, const GenOptions& options) {
    (void)label::tau_l_range(options.prior, config.ng());
    if (options.snr_set_db.empty()) fail(Errc::invalid_argument, "SNR set must not be empty");
    if (!(options.eta_min >= 0.0) || !(options.eta_max >= options.eta_min))
        fail(Errc::invalid_argument, "decay range must satisfy 0 <= eta_min <= eta_max");
}

TrainingSample simulate(const OfdmConfig& config, const GenOptions& options, const Assets& assets, Rng& rng) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const SampleMeta meta = draw_params(config, options, rng);
        const auto profile = channel::exp_decay_profile(meta.tau_l_true + 1, meta.eta);
        const auto real = channel::draw_realization(profile, config, meta.theta, options.cfo, meta.snr_db, rng);
        const auto stream = channel::assemble_frame(config, assets.symbol, meta.theta, rng);
        const auto frame = channel::observe(stream, real, config, rng);
        const auto metric = correlator::timing_metric(config, frame.y, assets.reference);
        try {
            TrainingSample s;
            s.q = correlator::normalize(metric).q;
            s.t = label::build_label({meta.theta, meta.tau_l_label, config.ng(), config.ns(), options.mode}).t;
            s.meta = meta;
            return s;
        } catch (const Error& e) {
            if (e.code() != Errc::degenerate_input) throw;
        }
    }
    fail(Errc::degenerate_input, "timing metric stayed degenerate after " + std::to_string(kMaxRedraws) + " redraws");
}

} // namespace

GenOptions default_gen_options(const OfdmConfig& config) {
    GenOptions o;
    o.prior = label::default_prior(config.ng());
    return o;
}

SampleMeta draw_params(const OfdmConfig& config, const GenOptions& options, Rng& rng) {
    check_options(config, options);
    SampleMeta m;
    std::uniform_real_distribution<double> eta(options.eta_min, options.eta_max);
    std::uniform_int_distribution<std::size_t> snr(0, options.snr_set_db.size() - 1);
    std::uniform_int_distribution<int> theta(0, config.max_theta());
    m.eta = eta(rng);
    m.tau_l_true = label::sample_tau_l(options.prior, config.ng(), rng);
    m.tau_l_label = m.tau_l_true;
    m.snr_db = options.snr_set_db[snr(rng)];
    m.theta = theta(rng);
    return m;
}

TrainingSample generate_sample(const OfdmConfig& config, const GenOptions& options, Rng& rng) {
    return simulate(config, options, make_assets(config), rng);
}

Dataset generate_dataset(const OfdmConfig& config, const GenOptions& options, std::size_t count,
                         std::uint64_t seed) {
    if (count == 0) fail(Errc::invalid_argument, "dataset needs at least one sample");
    check_options(config, options);
    const Assets assets = make_assets(config);
    Dataset d;
    d.n = config.n();
    d.ng = config.ng();
    d.seed = seed;
    d.mode = options.mode;
    d.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = make_rng(seed, {0x64617461, i});
        d.samples.push_back(simulate(config, options, assets, rng));
    }
    return d;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
    if (data.samples.empty()) fail(Errc::invalid_argument, "refusing to save an empty dataset");
    const auto ns = static_cast<std::size_t>(data.ns());
    for (const auto& s : data.samples)
        if (s.q.size() != ns || s.t.size() != ns) fail(Errc::dimension, "sample length does not match Ns");

    io::Writer w;
    w.magic("OTSD");
    w.u32(kDatasetVersion);
    w.u32(static_cast<std::uint32_t>(data.n));
    w.u32(static_cast<std::uint32_t>(data.ng));
    w.u32(static_cast<std::uint32_t>(data.ns()));
    w.u32(static_cast<std::uint32_t>(data.mode));
    w.u64(data.samples.size());
    w.u64(data.seed);
    for (const auto& s : data.samples)
        for (double v : s.q) w.f64(v);
    for (const auto& s : data.samples)
        for (double v : s.t) w.f64(v);
    for (const auto& s : data.samples) {
        w.i32(s.meta.theta);
        w.i32(s.meta.tau_l_true);
        w.i32(s.meta.tau_l_label);
        w.f64(s.meta.snr_db);
        w.f64(s.meta.eta);
    }
    w.save(path);
}

Dataset load_dataset(const std::filesystem::path& path) {
    io::Reader r(path);
    r.expect_magic("OTSD");
    const auto version = r.u32();
    if (version != kDatasetVersion)
        fail(Errc::format, r.name() + ": unsupported dataset version " + std::to_string(version));
    Dataset d;
    d.n = static_cast<int>(r.u32());
    d.ng = static_cast<int>(r.u32());
    const auto ns = r.u32();
    const auto mode = r.u32();
    const auto count = r.u64();
    d.seed = r.u64();
    if (d.n <= 0 || d.ng <= 0 || static_cast<int>(ns) != d.n + d.ng)
        fail(Errc::format, r.name() + ": inconsistent frame dimensions in header");
    if (mode > 1) fail(Errc::format, r.name() + ": unknown label mode");
    if (count == 0) fail(Errc::format, r.name() + ": header declares zero samples");
    d.mode = static_cast<label::LabelMode>(mode);

    constexpr std::size_t meta_bytes = 3 * 4 + 2 * 8;
    const std::size_t per_sample = 2 * std::size_t{ns} * 8 + meta_bytes;
    if (count > r.remaining() / per_sample || r.remaining() != count * per_sample)
        fail(Errc::format, r.name() + ": payload size does not match the header sample count");

    d.samples.resize(count);
    for (auto& s : d.samples) {
        s.q.resize(ns);
        for (auto& v : s.q) v = r.f64();
    }
    for (auto& s : d.samples) {
        s.t.resize(ns);
        for (auto& v : s.t) v = r.f64();
    }
    for (auto& s : d.samples) {
        s.meta.theta = r.i32();
        s.meta.tau_l_true = r.i32();
        s.meta.tau_l_label = r.i32();
        s.meta.snr_db = r.f64();
        s.meta.eta = r.f64();
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path& path, const OfdmConfig& config) {
    Dataset d = load_dataset(path);
    if (d.n != config.n() || d.ng != config.ng())
        fail(Errc::dimension, path.string() + ": dataset was generated for N=" + std::to_string(d.n) +
                                  " Ng=" + std::to_string(d.ng) + ", config has N=" + std::to_string(config.n()) +
                                  " Ng=" + std::to_string(config.ng()));
    return d;
}

namespace {

struct Columns {
    Eigen::MatrixXd q;
    Eigen::MatrixXd t;
};

Columns gather(const Dataset& data, std::span<const std::size_t> idx) {
    const auto ns = data.ns();
    Columns c{Eigen::MatrixXd(ns, static_cast<Eigen::Index>(idx.size())),
              Eigen::MatrixXd(ns, static_cast<Eigen::Index>(idx.size()))};
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const auto& s = data.samples[idx[j]];
        c.q.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(s.q.data(), ns);
        c.t.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(s.t.data(), ns);
    }
    return c;
}

std::string trace_tail(const std::vector<EpochLoss>& trace) {
    std::ostringstream out;
    const std::size_t from = trace.size() > 3 ? trace.size() - 3 : 0;
    for (std::size_t i = from; i < trace.size(); ++i)
        out << " [epoch " << trace[i].epoch << " train=" << trace[i].train << " val=" << trace[i].validation << "]";
    return out.str();
}

} // namespace

TrainResult train_pipeline(const Dataset& data, const TrainOptions& options, std::uint64_t seed) {
    if (data.samples.empty()) fail(Errc::invalid_argument, "cannot train on an empty dataset");
    if (options.batch_size < 1 || options.max_epochs < 0 || options.patience < 1)
        fail(Errc::invalid_argument, "batch size and patience must be positive, epochs nonnegative");
    if (!(options.learning_rate > 0.0) || !(options.lr_decay > 0.0))
        fail(Errc::invalid_argument, "learning rate and decay must be positive");
    if (!(options.val_fraction >= 0.0 && options.val_fraction < 1.0))
        fail(Errc::invalid_argument, "validation fraction must be in [0, 1)");

    const std::size_t total = data.samples.size();
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng split_rng = make_rng(seed, {0x73706c6974});
    std::shuffle(order.begin(), order.end(), split_rng);

    auto n_val = static_cast<std::size_t>(std::floor(options.val_fraction * static_cast<double>(total)));
    if (n_val >= total) n_val = total - 1;
    std::vector<std::size_t> val_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
    std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
    // Ascending order inside each split keeps full-set losses independent of the shuffle.
    std::sort(val_idx.begin(), val_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    const Columns train_all = gather(data, train_idx);
    const Columns val_all = n_val > 0 ? gather(data, val_idx) : Columns{};

    network::TrainState state;
    state.model = network::init(data.ns(), data.n, data.ns(), derive_seed(seed, {0x6d6f64656c}));
    state.learning_rate = options.learning_rate;
    state.rng_seed = seed;
    Rng shuffle_rng = make_rng(seed, {0x73687566});

    auto evaluate = [&](int epoch) {
        EpochLoss e;
        e.epoch = epoch;
        e.train = network::loss(state.model, {train_all.q, train_all.t});
        e.validation = n_val > 0 ? network::loss(state.model, {val_all.q, val_all.t})
                                 : std::numeric_limits<double>::quiet_NaN();
        return e;
    };

    TrainResult result;
    result.trace.push_back(evaluate(0));
    result.model = state.model;
    double best = n_val > 0 ? result.trace.back().validation : result.trace.back().train;
    int since_best = 0;

    std::vector<std::size_t> epoch_order(train_idx);
    const auto bs = static_cast<std::size_t>(options.batch_size);
    for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
        std::shuffle(epoch_order.begin(), epoch_order.end(), shuffle_rng);
        for (std::size_t start = 0; start < epoch_order.size(); start += bs) {
            const std::size_t len = std::min(bs, epoch_order.size() - start);
            const Columns b = gather(data, std::span(epoch_order).subspan(start, len));
            network::sgd_step(state, {b.q, b.t});
        }
        state.learning_rate *= options.lr_decay;

        const EpochLoss e = evaluate(epoch);
        result.trace.push_back(e);
        if (!std::isfinite(e.train) || (n_val > 0 && !std::isfinite(e.validation)))
            fail(Errc::training, "training diverged at epoch " + std::to_string(epoch) + " (lr=" +
                                     std::to_string(state.learning_rate) + "):" + trace_tail(result.trace));

        if (n_val == 0) {
            result.model = state.model;
            result.best_epoch = epoch;
            continue;
        }
        if (e.validation < best) {
            best = e.validation;
            result.model = state.model;
            result.best_epoch = epoch;
            since_best = 0;
        } else if (++since_best >= options.patience) {
            result.early_stopped = true;
            break;
        }
    }
    return result;
}

} // namespace ofdmts::dataset
