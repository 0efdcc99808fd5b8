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

#include "ofdmts/signal.hpp"

#include "ofdmts/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace ofdmts::signal {

namespace {

// e^{sign * j*2*pi*m/n} for m in [0, n). Products k*n are reduced mod n
// before lookup so every twiddle is evaluated from an exact integer phase.
CVec twiddles(std::size_t n, double sign) {
    CVec w(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        w[m] = {std::cos(phase), std::sin(phase)};
    }
    return w;
}

CVec direct_dft(std::span<const cplx> in, double sign) {
    const std::size_t n = in.size();
    const CVec w = twiddles(n, sign);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CVec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += in[i] * w[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc * scale;
    }
    return out;
}

} // namespace

CVec zadoff_chu(int n, int root) {
    if (n < 1) fail(Errc::invalid_argument, "Zadoff-Chu length must be positive");
    if (root <= 0 || std::gcd(root, n) != 1)
        fail(Errc::invalid_root, "Zadoff-Chu root " + std::to_string(root) + " is not coprime with length " +
                                     std::to_string(n));
    const long long two_n = 2LL * n;
    const long long odd = n % 2;
    CVec d(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
        // exponent u*k*(k+odd) kept modulo 2N: the phase is periodic in 2N
        const long long e = (static_cast<long long>(root) % two_n) * ((k * (k + odd)) % two_n) % two_n;
        const double phase = -std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
        d[static_cast<std::size_t>(k)] = {std::cos(phase), std::sin(phase)};
    }
    return d;
}

CVec modulate(std::span<const cplx> freq) {
    if (freq.empty()) fail(Errc::dimension, "modulate: empty input");
    return direct_dft(freq, +1.0);
}

CVec demodulate(std::span<const cplx> body) {
    if (body.empty()) fail(Errc::dimension, "demodulate: empty input");
    return direct_dft(body, -1.0);
}

CVec add_cp(std::span<const cplx> body, int ng) {
    const int n = static_cast<int>(body.size());
    if (ng < 0 || ng >= n)
        fail(Errc::invalid_cp, "CP length " + std::to_string(ng) + " must be in [0, " + std::to_string(n) + ")");
    CVec out;
    out.reserve(body.size() + static_cast<std::size_t>(ng));
    out.insert(out.end(), body.end() - ng, body.end());
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

TrainingSymbol make_training_symbol(const OfdmConfig& config) {
    TrainingSymbol sym;
    sym.freq = zadoff_chu(config.n(), config.zc_root());
    sym.body = modulate(sym.freq);
    sym.with_cp = add_cp(sym.body, config.ng());
    return sym;
}

CVec local_sequence(const OfdmConfig& config) { return modulate(zadoff_chu(config.n(), config.zc_root())); }

} // namespace ofdmts::signal
