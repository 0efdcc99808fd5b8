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

#include "ofdmts/eval.hpp"

#include "ofdmts/correlator.hpp"
#include "ofdmts/error.hpp"
#include "ofdmts/rng.hpp"

#include <boost/math/distributions/beta.hpp>

#include <cmath>
#include <numbers>

namespace ofdmts::eval {

bool is_correct(int theta_hat, int theta, int tau_l, int ng) {
    const int d = theta_hat - theta;
    return tau_l <= d && d <= ng;
}

channel::DelayProfile resolve_profile(const Scenario& scenario) {
    channel::DelayProfile p = std::visit(
        [&](const auto& spec) -> channel::DelayProfile {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, ExpDecayChannel>)
                return channel::exp_decay_profile(spec.taps, spec.eta);
            else
                return channel::load_tdl_profile(spec.file, scenario.config.ng());
        },
        scenario.channel);
    channel::validate_profile(p, scenario.config);
    return p;
}

std::string method_name(const Method& method) {
    if (std::holds_alternative<ClassicMethod>(method)) return "classic";
    const auto& m = std::get<LearnedMethod>(method);
    return m.label_mode == label::LabelMode::triangular ? "learned" : "learned-rect~";
}

Interval95 clopper_pearson(long errors, long trials, double confidence) {
    if (trials < 1 || errors < 0 || errors > trials) fail(Errc::invalid_argument, "invalid binomial counts");
    const double alpha = 1.0 - confidence;
    Interval95 ci;
    const auto k = static_cast<double>(errors);
    const auto n = static_cast<double>(trials);
    ci.lo = errors == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<double>(k, n - k + 1.0), alpha / 2);
    ci.hi = errors == trials ? 1.0
                             : boost::math::quantile(boost::math::beta_distribution<double>(k + 1.0, n - k),
                                                     1.0 - alpha / 2);
    return ci;
}

namespace {

std::uint64_t snr_key(double snr_db) {
    return static_cast<std::uint64_t>(std::llround(snr_db * 1e6));
}

constexpr int kMaxRedraws = 8;

} // namespace

std::vector<ErrorCurve> run_curves(std::span<const Method> methods, const Scenario& scenario) {
    if (methods.empty()) fail(Errc::invalid_argument, "no methods to evaluate");
    if (scenario.trials < 1) fail(Errc::invalid_argument, "scenario '" + scenario.name + "' needs trials >= 1");
    if (scenario.snr_db.empty()) fail(Errc::invalid_argument, "scenario '" + scenario.name + "' has no SNR points");
    const OfdmConfig& config = scenario.config;
    for (const auto& m : methods)
        if (const auto* learned = std::get_if<LearnedMethod>(&m)) {
            if (!learned->model) fail(Errc::invalid_argument, "learned method without a model");
            network::check_shape(*learned->model, config);
        }
    if (scenario.fixed_theta && (*scenario.fixed_theta < 0 || *scenario.fixed_theta > config.max_theta()))
        fail(Errc::invalid_offset, "scenario '" + scenario.name + "' fixed theta out of range");

    const auto profile = resolve_profile(scenario);
    const int tau_l = profile.max_delay();
    const auto symbol = signal::make_training_symbol(config);
    const CVec& reference = symbol.body;

    std::vector<ErrorCurve> curves(methods.size());
    for (std::size_t k = 0; k < methods.size(); ++k) {
        curves[k].scenario = scenario.name;
        curves[k].method = method_name(methods[k]);
    }

    std::uniform_int_distribution<int> theta_dist(0, config.max_theta());
    for (double snr : scenario.snr_db) {
        std::vector<long> errors(methods.size(), 0);
        for (long trial = 0; trial < scenario.trials; ++trial) {
            for (int attempt = 0;; ++attempt) {
                if (attempt == kMaxRedraws)
                    fail(Errc::degenerate_input, "degenerate timing metric in scenario '" + scenario.name + "'");
                Rng rng = make_rng(scenario.seed, {snr_key(snr), static_cast<std::uint64_t>(trial),
                                                   static_cast<std::uint64_t>(attempt)});
                const int theta = scenario.fixed_theta ? *scenario.fixed_theta : theta_dist(rng);
                const auto real = channel::draw_realization(profile, config, theta, scenario.cfo, snr, rng);
                const auto stream = channel::assemble_frame(config, symbol, theta, rng);
                const auto frame = channel::observe(stream, real, config, rng);
                const auto metric = correlator::timing_metric(config, frame.y, reference);

                correlator::FeatureVector q;
                try {
                    q = correlator::normalize(metric);
                } catch (const Error& e) {
                    if (e.code() == Errc::degenerate_input) continue;
                    throw;
                }
                for (std::size_t k = 0; k < methods.size(); ++k) {
                    int theta_hat = 0;
                    if (const auto* learned = std::get_if<LearnedMethod>(&methods[k]))
                        theta_hat = network::estimate(network::forward(*learned->model, q.q));
                    else
                        theta_hat = correlator::classic_estimate(metric);
                    if (!is_correct(theta_hat, theta, tau_l, config.ng())) ++errors[k];
                }
                break;
            }
        }
        for (std::size_t k = 0; k < methods.size(); ++k) {
            CurvePoint p;
            p.snr_db = snr;
            p.trials = scenario.trials;
            p.errors = errors[k];
            p.error_prob = static_cast<double>(errors[k]) / static_cast<double>(scenario.trials);
            const auto ci = clopper_pearson(errors[k], scenario.trials);
            p.ci_lo = ci.lo;
            p.ci_hi = ci.hi;
            curves[k].points.push_back(p);
        }
    }
    return curves;
}

ErrorCurve run_curve(const Method& method, const Scenario& scenario) {
    return run_curves(std::span(&method, 1), scenario).front();
}

const std::vector<std::string>& complexity_methods() {
    static const std::vector<std::string> ids{"ref-ompalg", "ref-labelts", "ref-newts", "prop"};
    return ids;
}

double complexity_cm(std::string_view method_id, int n, int ns, int ng, int taps) {
    if (n < 1 || ns < 1 || ng < 1 || taps < 1) fail(Errc::invalid_argument, "complexity dimensions must be positive");
    const double N = n, Ns = ns, Ng = ng;
    if (method_id == "prop") return N * Ns + 0.5 * N * Ns;
    if (method_id == "ref-newts") return 0.5 * Ns * Ns + 2.0 * N * Ns + 1.5 * Ng * Ns + Ns;
    if (method_id == "ref-labelts") return 1.5 * N + 4.0 * (Ns - 1.0) + 16.0 * Ns * Ns;
    if (method_id == "ref-ompalg") {
        double sum = 0.0;
        for (int l = 1; l <= taps; ++l) {
            const double L = l;
            sum += 3.0 * L * Ns + L * L * L + L * L * Ns;
        }
        return taps * N * Ns + sum;
    }
    fail(Errc::unknown_method, "unknown complexity method '" + std::string(method_id) + "'");
}

std::vector<std::string> preset_names() {
    return {"effectiveness", "robustness-N96", "robustness-N128", "robustness-N160", "generalization-TDL-B",
            "generalization-TDL-C"};
}

Scenario preset_scenario(std::string_view name, const OfdmConfig& config, const std::filesystem::path& profile_dir,
                         long trials, std::uint64_t seed) {
    Scenario s;
    s.name = std::string(name);
    s.config = config;
    s.channel = ExpDecayChannel{28, std::numbers::ln10 / 27.0};
    s.snr_db = {-2.0, 0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
    s.trials = trials;
    s.seed = seed;

    if (name == "effectiveness") return s;
    for (int n : {96, 128, 160}) {
        if (name == "robustness-N" + std::to_string(n)) {
            s.config = OfdmConfig(n, config.ng(), coprime_root(n, config.zc_root()));
            return s;
        }
    }
    if (name == "generalization-TDL-B") {
        s.channel = TdlChannel{profile_dir / "tdl_b.txt"};
        return s;
    }
    if (name == "generalization-TDL-C") {
        s.channel = TdlChannel{profile_dir / "tdl_c.txt"};
        return s;
    }
    fail(Errc::invalid_argument, "unknown scenario preset '" + std::string(name) + "'");
}

std::vector<Scenario> preset_scenarios(const OfdmConfig& config, const std::filesystem::path& profile_dir, long trials,
                                       std::uint64_t seed) {
    std::vector<Scenario> out;
    for (const auto& name : preset_names()) out.push_back(preset_scenario(name, config, profile_dir, trials, seed));
    return out;
}

} // namespace ofdmts::eval
