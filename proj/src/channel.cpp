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

#include "ofdmts/channel.hpp"

#include "ofdmts/error.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace ofdmts::channel {

void validate_profile(const DelayProfile& profile, const OfdmConfig& config) {
    if (profile.taps.empty()) fail(Errc::profile, "profile '" + profile.name + "' has no taps");
    if (profile.taps.front().delay != 0) fail(Errc::profile, "profile '" + profile.name + "' must start at delay 0");
    double total = 0.0;
    for (std::size_t i = 0; i < profile.taps.size(); ++i) {
        const auto& tap = profile.taps[i];
        if (!(tap.power > 0.0) || !std::isfinite(tap.power))
            fail(Errc::profile, "profile '" + profile.name + "' has a non-positive tap power");
        if (i > 0 && tap.delay <= profile.taps[i - 1].delay)
            fail(Errc::profile, "profile '" + profile.name + "' delays must be strictly increasing");
        total += tap.power;
    }
    if (std::abs(total - 1.0) > 1e-9) fail(Errc::profile, "profile '" + profile.name + "' powers do not sum to 1");
    if (profile.max_delay() >= config.ng())
        fail(Errc::profile, "profile '" + profile.name + "' max delay " + std::to_string(profile.max_delay()) +
                                " is not below Ng=" + std::to_string(config.ng()));
}

DelayProfile exp_decay_profile(int taps, double eta) {
    if (taps < 1) fail(Errc::invalid_argument, "exp-decay profile needs at least one tap");
    if (!(eta >= 0.0) || !std::isfinite(eta)) fail(Errc::invalid_argument, "decay factor must be finite and >= 0");
    DelayProfile p;
    p.name = "exp-decay";
    p.taps.resize(static_cast<std::size_t>(taps));
    double total = 0.0;
    for (int l = 0; l < taps; ++l) {
        p.taps[l] = {l, std::exp(-eta * l)};
        total += p.taps[l].power;
    }
    for (auto& t : p.taps) t.power /= total;
    return p;
}

DelayProfile parse_tdl_profile(std::string_view text, std::string name, int ng) {
    std::istringstream in{std::string(text)};
    std::string line;
    double scale = 0.0;
    bool have_scale = false;
    std::map<int, double> merged;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        const auto where = "profile '" + name + "' line " + std::to_string(line_no) + ": ";
        if (first == "scale_samples") {
            if (!(fields >> scale) || !(scale > 0.0) || !std::isfinite(scale))
                fail(Errc::profile, where + "scale_samples must be a positive number");
            have_scale = true;
            continue;
        }
        if (!have_scale) fail(Errc::profile, where + "scale_samples header must precede tap rows");

        double delay = 0.0;
        double power_db = 0.0;
        try {
            std::size_t used = 0;
            delay = std::stod(first, &used);
            if (used != first.size()) throw std::invalid_argument(first);
        } catch (const std::exception&) {
            fail(Errc::profile, where + "bad delay '" + first + "'");
        }
        if (!(fields >> power_db)) fail(Errc::profile, where + "missing power column");
        std::string extra;
        if (fields >> extra) fail(Errc::profile, where + "unexpected trailing field '" + extra + "'");
        if (!(delay >= 0.0) || !std::isfinite(delay)) fail(Errc::profile, where + "delay must be >= 0");
        if (!std::isfinite(power_db)) fail(Errc::profile, where + "power must be finite");

        const int quantized = static_cast<int>(std::lround(delay * scale));
        merged[quantized] += std::pow(10.0, power_db / 10.0);
    }
    if (merged.empty()) fail(Errc::profile, "profile '" + name + "' has no tap rows");

    DelayProfile p;
    p.name = std::move(name);
    double total = 0.0;
    for (const auto& [delay, power] : merged) total += power;
    for (const auto& [delay, power] : merged) p.taps.push_back({delay, power / total});
    if (p.taps.front().delay != 0) fail(Errc::profile, "profile '" + p.name + "' first tap must quantize to delay 0");
    if (p.max_delay() >= ng)
        fail(Errc::profile, "profile '" + p.name + "' max delay " + std::to_string(p.max_delay()) +
                                " is not below Ng=" + std::to_string(ng));
    return p;
}

DelayProfile load_tdl_profile(const std::filesystem::path& path, int ng) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open profile file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tdl_profile(buf.str(), path.stem().string(), ng);
}

ChannelRealization draw_realization(const DelayProfile& profile, const OfdmConfig& config, int theta,
                                    double cfo, double snr_db, Rng& rng) {
    validate_profile(profile, config);
    if (theta < 0 || theta > config.max_theta())
        fail(Errc::invalid_offset, "timing offset " + std::to_string(theta) + " outside [0, " +
                                       std::to_string(config.max_theta()) + "]");
    if (!std::isfinite(cfo) || !std::isfinite(snr_db)) fail(Errc::invalid_argument, "cfo and snr must be finite");

    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    ChannelRealization r;
    r.theta = theta;
    r.cfo = cfo;
    r.noise_var = std::pow(10.0, -snr_db / 10.0);
    r.gains.reserve(profile.taps.size());
    r.delays.reserve(profile.taps.size());
    double total = 0.0;
    for (const auto& tap : profile.taps) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        const cplx h = std::sqrt(tap.power) * cplx(re, im);
        r.gains.push_back(h);
        r.delays.push_back(tap.delay);
        total += std::norm(h);
    }
    if (!(total > 0.0)) {
        // Probability-zero event; fall back to the mean profile.
        for (std::size_t i = 0; i < r.gains.size(); ++i) r.gains[i] = std::sqrt(profile.taps[i].power);
        total = 1.0;
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& h : r.gains) h *= scale;
    return r;
}

namespace {

CVec random_data_symbol(const OfdmConfig& config, Rng& rng) {
    static constexpr double a = std::numbers::sqrt2 / 2.0;
    std::uniform_int_distribution<int> bits(0, 3);
    CVec d(static_cast<std::size_t>(config.n()));
    for (auto& v : d) {
        const int b = bits(rng);
        v = {(b & 1) ? a : -a, (b & 2) ? a : -a};
    }
    return signal::add_cp(signal::modulate(d), config.ng());
}

} // namespace

TxStream assemble_frame(const OfdmConfig& config, const signal::TrainingSymbol& symbol, int theta, Rng& rng) {
    if (theta < 0 || theta > config.max_theta())
        fail(Errc::invalid_offset, "timing offset " + std::to_string(theta) + " outside [0, " +
                                       std::to_string(config.max_theta()) + "]");
    const int sym_len = config.n() + config.ng();
    if (static_cast<int>(symbol.with_cp.size()) != sym_len)
        fail(Errc::dimension, "training symbol length does not match the config");

    TxStream stream;
    stream.origin = config.ng();
    stream.samples.assign(static_cast<std::size_t>(config.nw() + stream.origin), cplx{});

    auto place = [&](const CVec& seg, int start) {
        for (int i = 0; i < sym_len; ++i) {
            const int n = start + i;
            if (n >= stream.first() && n < stream.end()) stream.samples[static_cast<std::size_t>(n + stream.origin)] = seg[i];
        }
    };

    // Data symbols before the training symbol, nearest first.
    for (int start = theta - sym_len; start + sym_len > stream.first(); start -= sym_len)
        place(random_data_symbol(config, rng), start);
    place(symbol.with_cp, theta);
    for (int start = theta + sym_len; start < stream.end(); start += sym_len)
        place(random_data_symbol(config, rng), start);
    return stream;
}

ObservedFrame observe(const TxStream& stream, const ChannelRealization& realization, const OfdmConfig& config,
                      Rng& rng) {
    if (realization.gains.size() != realization.delays.size() || realization.gains.empty())
        fail(Errc::dimension, "realization gains and delays must be nonempty and equal length");
    const int nw = config.nw();
    if (stream.end() < nw || stream.first() > -realization.max_delay())
        fail(Errc::dimension, "stream does not cover the observed window for the channel delays");

    ObservedFrame frame;
    frame.truth = realization;
    frame.y.resize(static_cast<std::size_t>(nw));
    const double sigma = std::sqrt(realization.noise_var / 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double w = 2.0 * std::numbers::pi * realization.cfo / config.n();
    for (int n = 0; n < nw; ++n) {
        cplx acc{0.0, 0.0};
        for (std::size_t l = 0; l < realization.gains.size(); ++l)
            acc += realization.gains[l] * stream.at(n - realization.delays[l]);
        if (realization.cfo != 0.0) acc *= std::polar(1.0, w * n);
        if (realization.noise_var > 0.0) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            acc += sigma * cplx(re, im);
        }
        frame.y[static_cast<std::size_t>(n)] = acc;
    }
    return frame;
}

} // namespace ofdmts::channel
