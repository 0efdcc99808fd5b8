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

#include "ofdmts/channel.hpp"
#include "ofdmts/config.hpp"
#include "ofdmts/label.hpp"
#include "ofdmts/network.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ofdmts::eval {

// A window start is correct when it lies in [theta + tau_l, theta + ng].
bool is_correct(int theta_hat, int theta, int tau_l, int ng);

struct ExpDecayChannel {
    int taps = 28;
    double eta = 0.0;
};

struct TdlChannel {
    std::filesystem::path file;
};

using ChannelSpec = std::variant<ExpDecayChannel, TdlChannel>;

struct Scenario {
    std::string name;
    OfdmConfig config = default_config();
    ChannelSpec channel = ExpDecayChannel{};
    std::optional<int> fixed_theta; // empty: uniform over [0, Ns - Ng - 1] per trial
    double cfo = 0.0;
    std::vector<double> snr_db;
    long trials = 0;
    std::uint64_t seed = 0;
};

channel::DelayProfile resolve_profile(const Scenario& scenario);

// Classic correlator or a trained network.
struct ClassicMethod {};
struct LearnedMethod {
    const network::Mlp* model = nullptr;
    label::LabelMode label_mode = label::LabelMode::triangular;
};
using Method = std::variant<ClassicMethod, LearnedMethod>;

// "classic", "learned" or "learned-rect~". The trailing '~' marks the
// rectangular label as an approximate baseline.
std::string method_name(const Method& method);

struct CurvePoint {
    double snr_db = 0.0;
    long trials = 0;
    long errors = 0;
    double error_prob = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

struct ErrorCurve {
    std::string scenario;
    std::string method;
    std::vector<CurvePoint> points;
};

struct Interval95 {
    double lo = 0.0;
    double hi = 1.0;
};

// Exact two-sided Clopper-Pearson interval for `errors` out of `trials`.
Interval95 clopper_pearson(long errors, long trials, double confidence = 0.95);

// Frames for trial i at a given SNR come from seed (scenario.seed, snr, i),
// so every method sees the same frames and reordering the SNR list does not
// change any point.
std::vector<ErrorCurve> run_curves(std::span<const Method> methods, const Scenario& scenario);
ErrorCurve run_curve(const Method& method, const Scenario& scenario);

// Complex multiplications per estimate. Method ids: prop, ref-newts,
// ref-labelts, ref-ompalg. Throws Errc::unknown_method otherwise.
double complexity_cm(std::string_view method_id, int n, int ns, int ng, int taps);
const std::vector<std::string>& complexity_methods();

// Named presets built around `config`:
//   effectiveness                 exp-decay L=28, eta=ln10/27
//   robustness-N96/N128/N160      effectiveness with N replaced
//   generalization-TDL-B/TDL-C    TDL profiles from profile_dir
std::vector<Scenario> preset_scenarios(const OfdmConfig& config, const std::filesystem::path& profile_dir,
                                       long trials = 2000, std::uint64_t seed = 1);
Scenario preset_scenario(std::string_view name, const OfdmConfig& config, const std::filesystem::path& profile_dir,
                         long trials = 2000, std::uint64_t seed = 1);
std::vector<std::string> preset_names();

// CSV columns: scenario,method,snr_db,trials,errors,error_prob,ci_lo,ci_hi.
// Floating values use 17 significant digits so parsing is exact.
void write_csv(std::span<const ErrorCurve> curves, const std::filesystem::path& path);
std::string format_csv(std::span<const ErrorCurve> curves);
std::vector<ErrorCurve> parse_csv(std::string_view text);
std::vector<ErrorCurve> read_csv(const std::filesystem::path& path);

// Static line plot, error probability (log scale) against SNR.
void write_svg(std::span<const ErrorCurve> curves, const std::filesystem::path& path, std::string_view title = {});

} // namespace ofdmts::eval
