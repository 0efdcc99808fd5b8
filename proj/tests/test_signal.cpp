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

#include "ofdmts/config.hpp"
#include "ofdmts/error.hpp"
#include "ofdmts/signal.hpp"

#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace ofdmts;
using ofdmts::testing::code_of;

namespace {

// Straight evaluation of the IDFT sum with std::polar per term.
CVec idft_oracle(const CVec& d) {
    const auto n = static_cast<double>(d.size());
    CVec out(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) {
        cplx acc{};
        for (std::size_t k = 0; k < d.size(); ++k)
            acc += d[k] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k * t) / n);
        out[t] = acc / std::sqrt(n);
    }
    return out;
}

} // namespace

TEST_CASE("config derives window and search lengths") {
    const OfdmConfig c(128, 32);
    CHECK(c.nw() == 288);
    CHECK(c.ns() == 160);
    CHECK(c.nw() == 2 * c.n() + c.ng());
    CHECK(c.ns() == c.nw() - c.n());
    CHECK(c.max_theta() == 127);
    CHECK(c.zc_root() == 25);

    CHECK(code_of([] { OfdmConfig(128, 0); }) == Errc::invalid_cp);
    CHECK(code_of([] { OfdmConfig(128, 128); }) == Errc::invalid_cp);
    CHECK(code_of([] { OfdmConfig(128, 32, 64); }) == Errc::invalid_root);
}

TEST_CASE("config text format") {
    const auto c = parse_config("# small setup\nN = 96\nNg=32 # cp\n");
    CHECK(c.n() == 96);
    CHECK(c.ng() == 32);
    CHECK(c.zc_root() == 25);
    CHECK(parse_config(format_config(OfdmConfig(64, 16, 7))) == OfdmConfig(64, 16, 7));
    // default root is bumped to the next coprime value when needed
    CHECK(parse_config("N = 160\n").zc_root() == 27);
    CHECK(code_of([] { parse_config("N = 160\nzc_root = 25\n"); }) == Errc::invalid_root);
    CHECK(code_of([] { parse_config("Nw = 288\n"); }) == Errc::format);
    CHECK(code_of([] { parse_config("bogus = 1\n"); }) == Errc::format);
    CHECK(code_of([] { parse_config("N = 12x\n"); }) == Errc::format);
    CHECK(code_of([] { parse_config("N 128\n"); }) == Errc::format);
    CHECK(code_of([] { load_config("/nonexistent/ofdmts.cfg"); }) == Errc::io);
}

TEST_CASE("zadoff_chu") {
    SUBCASE("unit modulus at N=128, u=25") {
        for (const auto& v : signal::zadoff_chu(128, 25)) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    }
    SUBCASE("hand-evaluated N=4, u=1") {
        const auto d = signal::zadoff_chu(4, 1);
        const double pi = std::numbers::pi;
        const CVec expect{1.0, std::polar(1.0, -pi / 4), std::polar(1.0, -pi), std::polar(1.0, -9 * pi / 4)};
        REQUIRE(d.size() == 4);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(d[k] - expect[k]) < 1e-12);
    }
    SUBCASE("odd length uses k(k+1)") {
        const auto d = signal::zadoff_chu(5, 2);
        for (int k = 0; k < 5; ++k)
            CHECK(std::abs(d[k] - std::polar(1.0, -std::numbers::pi * 2 * k * (k + 1) / 5.0)) < 1e-12);
    }
    SUBCASE("non-coprime root") {
        CHECK(code_of([] { signal::zadoff_chu(4, 2); }) == Errc::invalid_root);
    }
    SUBCASE("deterministic") { CHECK(signal::zadoff_chu(128, 25) == signal::zadoff_chu(128, 25)); }
}

TEST_CASE("modulate") {
    SUBCASE("single tone gives a constant") {
        CVec d(16, 0.0);
        d[0] = 1.0;
        for (const auto& v : signal::modulate(d)) CHECK(std::abs(v - 0.25) < 1e-12);
    }
    SUBCASE("zeros stay zero") {
        for (const auto& v : signal::modulate(CVec(8, 0.0))) CHECK(v == cplx{});
    }
    SUBCASE("matches the IDFT sum and round-trips") {
        const auto d = signal::zadoff_chu(128, 25);
        const auto body = signal::modulate(d);
        const auto oracle = idft_oracle(d);
        double power = 0.0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            CHECK(std::abs(body[i] - oracle[i]) < 1e-9);
            power += std::norm(body[i]);
        }
        CHECK(std::abs(power - 128.0) < 1e-9);
        CHECK(std::abs(power / 128.0 - 1.0) < 1e-9);
        const auto back = signal::demodulate(body);
        for (std::size_t k = 0; k < d.size(); ++k) CHECK(std::abs(back[k] - d[k]) < 1e-9);
    }
    SUBCASE("empty input") { CHECK(code_of([] { signal::modulate(CVec{}); }) == Errc::dimension); }
}

TEST_CASE("add_cp") {
    const CVec body{1.0, 2.0, 3.0, 4.0};
    CHECK(signal::add_cp(body, 2) == CVec{3.0, 4.0, 1.0, 2.0, 3.0, 4.0});
    CHECK(signal::add_cp(body, 0) == body);
    CHECK(code_of([&] { signal::add_cp(body, 4); }) == Errc::invalid_cp);
    CHECK(code_of([&] { signal::add_cp(body, -1); }) == Errc::invalid_cp);
}

TEST_CASE("training symbol and local sequence") {
    const auto cfg = default_config();
    const auto sym = signal::make_training_symbol(cfg);
    REQUIRE(sym.freq.size() == 128);
    REQUIRE(sym.body.size() == 128);
    REQUIRE(sym.with_cp.size() == 160);
    for (int n = 0; n < cfg.ng(); ++n) {
        CHECK(sym.with_cp[n] == sym.body[cfg.n() - cfg.ng() + n]);
        CHECK(sym.with_cp[n] == sym.with_cp[n + cfg.n()]);
    }
    const auto x = signal::local_sequence(cfg);
    CHECK(x == sym.body);
    CHECK(x == signal::modulate(signal::zadoff_chu(128, 25)));
    CHECK(x == signal::local_sequence(cfg));
    double p = 0.0;
    for (const auto& v : x) p += std::norm(v);
    CHECK(std::abs(p / 128.0 - 1.0) < 1e-9);
}
