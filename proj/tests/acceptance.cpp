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

// Acceptance checks. Each invocation runs one criterion and prints a single
// PASS/FAIL line; the exit status is nonzero on FAIL.
//
// Criteria 6-8 share trained artifacts stored in the work directory.
// Criterion 6 always rebuilds them; 7 and 8 reuse them when present.
// Criterion 9 rebuilds everything in memory and compares bytes.

#include "ofdmts/channel.hpp"
#include "ofdmts/correlator.hpp"
#include "ofdmts/dataset.hpp"
#include "ofdmts/eval.hpp"
#include "ofdmts/label.hpp"
#include "ofdmts/network.hpp"

#include <CLI11.hpp>

#include "gradient_check.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ofdmts;

namespace {

constexpr std::uint64_t kDataSeed = 7;
constexpr std::uint64_t kModelSeed = 11;
constexpr std::uint64_t kEvalSeed = 1;
constexpr std::size_t kTrainCount = 10000;
constexpr long kTrials = 2000;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---- criterion 1 ----------------------------------------------------------

std::vector<double> label_reference(int theta, int tau_l, int ng, int ns) {
    std::vector<double> t(static_cast<std::size_t>(ns), 0.0);
    const int len = ng - tau_l + 1;
    for (int m = theta + tau_l; m <= theta + ng; ++m) {
        const int d = m - theta - tau_l + 1;
        t[m] = std::min(d, len - d + 1);
    }
    return t;
}

Outcome label_exactness() {
    Stopwatch sw;
    std::vector<double> expect(28, 0.0);
    for (double v : {1.0, 2.0, 3.0, 2.0, 1.0}) expect.push_back(v);
    expect.resize(160, 0.0);
    const bool example = label::build_label({0, 28, 32, 160}).t == expect;

    Rng rng(1);
    long bad_support = 0, bad_peak = 0, bad_value = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto cfg = default_config();
        const int theta = std::uniform_int_distribution<int>(0, cfg.max_theta())(rng);
        const int tau = std::uniform_int_distribution<int>(0, cfg.ng())(rng);
        const auto t = label::build_label({theta, tau, cfg.ng(), cfg.ns()}).t;
        const auto ref = label_reference(theta, tau, cfg.ng(), cfg.ns());
        const auto region = label::isi_free_region(theta, tau, cfg.ng());
        for (int m = 0; m < cfg.ns(); ++m) {
            if ((t[m] != 0.0) != region.contains(m)) ++bad_support;
            if (t[m] != ref[m]) ++bad_value;
        }
        const double peak = *std::max_element(t.begin(), t.end());
        if (t[label::midpoint(theta, tau, cfg.ng())] != peak) ++bad_peak;
    }
    const double s = sw.seconds();
    Outcome o;
    o.pass = example && bad_support == 0 && bad_peak == 0 && bad_value == 0 && s < 1.0;
    o.detail = std::string("example ") + (example ? "exact" : "WRONG") + ", 10^4 specs: support mismatches " +
               std::to_string(bad_support) + ", value mismatches " + std::to_string(bad_value) +
               ", midpoint off-peak " + std::to_string(bad_peak) + ", " + fmt("%.3f s", s);
    return o;
}

// ---- criterion 2 ----------------------------------------------------------

std::array<long, 33> sampler_histogram() {
    Rng rng(2);
    std::array<long, 33> h{};
    for (int i = 0; i < 100000; ++i) ++h.at(static_cast<std::size_t>(label::sample_tau_l({28}, 32, rng)));
    return h;
}

Outcome sampler_law() {
    Stopwatch sw;
    const auto h = sampler_histogram();
    bool ok = true;
    std::string freqs;
    for (int v = 0; v <= 32; ++v) {
        const double f = h[v] / 1e5;
        if (v >= 24 && v <= 28) {
            ok = ok && std::abs(f - 0.2) <= 0.02;
            freqs += " " + std::to_string(v) + ":" + fmt("%.4f", f);
        } else {
            ok = ok && h[v] == 0;
        }
    }
    const double s = sw.seconds();
    return {ok && s < 1.0, "range [24,28], freq" + freqs + ", " + fmt("%.3f s", s)};
}

// ---- criterion 3 ----------------------------------------------------------

Outcome gradient_check() {
    Stopwatch sw;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        worst = std::max(worst, testing::finite_difference_check(seed).max_rel_error);
    const double s = sw.seconds();
    return {worst < 1e-5 && s < 5.0, "20 toy 6-4-6 nets, max rel error " + fmt("%.3e", worst) + ", " + fmt("%.3f s", s)};
}

// ---- criterion 4 ----------------------------------------------------------

Outcome correlator_oracle() {
    Stopwatch sw;
    long toy_mismatch = 0;
    const OfdmConfig toy(8, 4, 3);
    Rng rng(4);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        CVec y(static_cast<std::size_t>(toy.nw())), x(8);
        for (auto& v : y) v = {g(rng), g(rng)};
        for (auto& v : x) v = {g(rng), g(rng)};
        const auto f = correlator::timing_metric(toy, y, x).f;
        for (int m = 0; m < toy.ns(); ++m) {
            cplx acc{0.0, 0.0};
            for (int n = 0; n < toy.n(); ++n) acc += std::conj(x[n]) * y[m + n];
            if (f[m] != std::norm(acc)) ++toy_mismatch;
        }
    }

    const auto cfg = default_config();
    const auto sym = signal::make_training_symbol(cfg);
    channel::ChannelRealization clean;
    clean.gains = {1.0};
    clean.delays = {0};
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
        const int theta = i % (cfg.max_theta() + 1);
        Rng frame_rng = make_rng(4, {static_cast<std::uint64_t>(i)});
        const auto stream = channel::assemble_frame(cfg, sym, theta, frame_rng);
        const auto y = channel::observe(stream, clean, cfg, frame_rng).y;
        if (correlator::classic_estimate(correlator::timing_metric(cfg, y, sym.body)) == theta + cfg.ng()) ++hits;
    }
    const double s = sw.seconds();
    return {toy_mismatch == 0 && hits == 1000 && s < 10.0,
            "toy N=8 Ng=4 mismatches " + std::to_string(toy_mismatch) + ", noiseless argmax = theta+Ng in " +
                std::to_string(hits) + "/1000, " + fmt("%.3f s", s)};
}

// ---- criterion 5 ----------------------------------------------------------

Outcome complexity_table() {
    const std::vector<std::pair<std::string, double>> expect{
        {"prop", 30720}, {"ref-newts", 70240}, {"ref-labelts", 410428}, {"ref-ompalg", 2167396}};
    bool ok = true;
    std::string detail;
    for (const auto& [id, want] : expect) {
        const double got = eval::complexity_cm(id, 128, 160, 32, 28);
        const bool match = got == want;
        ok = ok && match;
        detail += id + "=" + fmt("%.0f", got) + (match ? "" : " (expected " + fmt("%.0f", want) + ")") + " ";
    }
    return {ok, detail};
}

// ---- shared artifacts for 6-9 ---------------------------------------------

struct Artifacts {
    std::map<std::string, std::string> files; // name -> bytes
};

std::vector<eval::ErrorCurve> evaluate(const std::string& preset, const network::Mlp& tri,
                                       const network::Mlp* rect) {
    auto s = eval::preset_scenario(preset, default_config(), OFDMTS_PROFILE_DIR, kTrials, kEvalSeed);
    std::vector<eval::Method> methods{eval::ClassicMethod{}, eval::LearnedMethod{&tri}};
    if (rect) methods.push_back(eval::LearnedMethod{rect, label::LabelMode::rectangular});
    return eval::run_curves(methods, s);
}

// Runs the full protocol and writes every artifact to dir.
void build_artifacts(const fs::path& dir) {
    fs::create_directories(dir);
    const auto cfg = default_config();
    auto opt = dataset::default_gen_options(cfg);
    network::Mlp models[2];
    for (int k = 0; k < 2; ++k) {
        opt.mode = k == 0 ? label::LabelMode::triangular : label::LabelMode::rectangular;
        const std::string tag = k == 0 ? "tri" : "rect";
        const auto data = dataset::generate_dataset(cfg, opt, kTrainCount, kDataSeed);
        dataset::save_dataset(data, dir / ("train-" + tag + ".bin"));
        const auto trained = dataset::train_pipeline(data, dataset::TrainOptions{}, kModelSeed);
        network::save_model(trained.model, dir / ("model-" + tag + ".bin"), opt.mode);
        std::ofstream trace(dir / ("trace-" + tag + ".csv"));
        trace << "epoch,train,validation\n";
        for (const auto& e : trained.trace) trace << e.epoch << ',' << e.train << ',' << e.validation << '\n';
        models[k] = trained.model;
    }
    eval::write_csv(evaluate("effectiveness", models[0], &models[1]), dir / "effectiveness.csv");
    eval::write_csv(evaluate("generalization-TDL-B", models[0], nullptr), dir / "tdl-b.csv");
    eval::write_csv(evaluate("generalization-TDL-C", models[0], nullptr), dir / "tdl-c.csv");
    std::ofstream(dir / "complete") << "ok\n";
}

const std::vector<std::string> kArtifactFiles{"train-tri.bin",   "train-rect.bin", "model-tri.bin", "model-rect.bin",
                                              "effectiveness.csv", "tdl-b.csv",     "tdl-c.csv"};

void ensure_artifacts(const fs::path& dir, bool force) {
    if (force || !fs::exists(dir / "complete")) {
        fs::remove(dir / "complete");
        build_artifacts(dir);
    }
}

const eval::ErrorCurve& curve(const std::vector<eval::ErrorCurve>& cs, const std::string& method) {
    for (const auto& c : cs)
        if (c.method == method) return c;
    throw std::runtime_error("missing curve " + method);
}

const eval::CurvePoint& at(const eval::ErrorCurve& c, double snr) {
    for (const auto& p : c.points)
        if (p.snr_db == snr) return p;
    throw std::runtime_error("missing SNR point");
}

std::string describe(const eval::CurvePoint& p) {
    return fmt("%.4f", p.error_prob) + " [" + fmt("%.4f", p.ci_lo) + "," + fmt("%.4f", p.ci_hi) + "]";
}

Outcome effectiveness(const fs::path& dir) {
    Stopwatch sw;
    ensure_artifacts(dir, true);
    const auto cs = eval::read_csv(dir / "effectiveness.csv");
    const auto& classic = curve(cs, "classic");
    const auto& learned = curve(cs, "learned");
    bool ok = true;
    std::string detail;
    for (double snr : {0.0, 2.0, 4.0, 6.0, 8.0, 10.0}) {
        const auto& c = at(classic, snr);
        const auto& l = at(learned, snr);
        ok = ok && l.error_prob < c.error_prob;
        if (snr >= 6.0) ok = ok && l.ci_hi < c.ci_lo;
        detail += fmt("%+.0f dB", snr) + " learned " + describe(l) + " classic " + describe(c) + "; ";
    }
    detail += "protocol " + fmt("%.1f s", sw.seconds());
    return {ok, detail};
}

Outcome label_shapes(const fs::path& dir) {
    ensure_artifacts(dir, false);
    const auto cs = eval::read_csv(dir / "effectiveness.csv");
    const auto& tri = at(curve(cs, "learned"), 10.0);
    const auto& rect = at(curve(cs, "learned-rect~"), 10.0);
    const bool overlap = tri.ci_hi >= rect.ci_lo && rect.ci_hi >= tri.ci_lo;
    return {tri.error_prob <= rect.error_prob,
            "10 dB triangular " + describe(tri) + " rectangular~ " + describe(rect) +
                (overlap ? " (CIs overlap; rectangular label is an approximation)" : " (CIs separate)")};
}

Outcome generalization(const fs::path& dir) {
    ensure_artifacts(dir, false);
    bool ok = true;
    std::string detail;
    for (const char* file : {"tdl-b.csv", "tdl-c.csv"}) {
        const auto cs = eval::read_csv(dir / file);
        const auto& classic = curve(cs, "classic");
        const auto& learned = curve(cs, "learned");
        detail += std::string(file).substr(0, 5) + ":";
        for (double snr : {6.0, 8.0, 10.0}) {
            const auto& c = at(classic, snr);
            const auto& l = at(learned, snr);
            ok = ok && l.error_prob < c.error_prob;
            if (snr == 10.0) ok = ok && l.ci_hi < c.ci_lo;
            detail += fmt(" %.0f dB ", snr) + describe(l) + " vs " + describe(c);
        }
        detail += "; ";
    }
    return {ok, detail};
}

// ---- criterion 9 ----------------------------------------------------------

std::string fingerprint_1_to_5() {
    std::ostringstream out;
    for (double v : label::build_label({0, 28, 32, 160}).t) out << v << ',';
    for (long v : sampler_histogram()) out << v << ',';
    for (std::uint64_t seed = 1; seed <= 20; ++seed) out << testing::finite_difference_check(seed).max_rel_error << ',';
    const auto cfg = default_config();
    const auto sym = signal::make_training_symbol(cfg);
    Rng rng(4);
    const auto stream = channel::assemble_frame(cfg, sym, 17, rng);
    const auto real = channel::draw_realization(channel::exp_decay_profile(28, 0.1), cfg, 17, 0.0, 3.0, rng);
    for (double v : correlator::timing_metric(cfg, channel::observe(stream, real, cfg, rng).y, sym.body).f)
        out << v << ',';
    for (const auto& id : eval::complexity_methods()) out << eval::complexity_cm(id, 128, 160, 32, 28) << ',';
    return out.str();
}

Outcome determinism(const fs::path& dir) {
    ensure_artifacts(dir, false);
    std::map<std::string, std::string> first;
    for (const auto& f : kArtifactFiles) first[f] = read_bytes(dir / f);

    const fs::path again = dir / "repeat";
    fs::remove_all(again);
    build_artifacts(again);
    bool ok = fingerprint_1_to_5() == fingerprint_1_to_5();
    std::string detail = std::string("criteria 1-5 outputs ") + (ok ? "identical" : "DIFFER");
    for (const auto& f : kArtifactFiles) {
        const bool same = !first[f].empty() && first[f] == read_bytes(again / f);
        ok = ok && same;
        detail += ", " + f + (same ? " identical" : " DIFFERS");
    }
    fs::remove_all(again);
    return {ok, detail};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int criterion = 0;
    std::string workdir = (fs::temp_directory_path() / "ofdmts_acceptance").string();
    app.add_option("--criterion", criterion, "criterion number 1-9")->required()->check(CLI::Range(1, 9));
    app.add_option("--workdir", workdir, "directory for shared artifacts");
    CLI11_PARSE(app, argc, argv);

    Outcome o;
    try {
        switch (criterion) {
        case 1: o = label_exactness(); break;
        case 2: o = sampler_law(); break;
        case 3: o = gradient_check(); break;
        case 4: o = correlator_oracle(); break;
        case 5: o = complexity_table(); break;
        case 6: o = effectiveness(workdir); break;
        case 7: o = label_shapes(workdir); break;
        case 8: o = generalization(workdir); break;
        case 9: o = determinism(workdir); break;
        }
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %s: %s\n", criterion, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    return o.pass ? 0 : 1;
}
