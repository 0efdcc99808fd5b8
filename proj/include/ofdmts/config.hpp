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

#include <filesystem>
#include <string>
#include <string_view>

namespace ofdmts {

constexpr int kDefaultZcRoot = 25;

// Frame dimensions. The window and search lengths are derived from N and Ng
// (Nw = 2N + Ng, Ns = N + Ng) and never set independently.
class OfdmConfig {
public:
    OfdmConfig(int n, int ng, int zc_root = kDefaultZcRoot);

    int n() const noexcept { return n_; }
    int ng() const noexcept { return ng_; }
    int nw() const noexcept { return 2 * n_ + ng_; }
    int ns() const noexcept { return n_ + ng_; }
    int zc_root() const noexcept { return zc_root_; }

    // Largest legal timing offset; keeps the trailing zero run of the label
    // nonnegative.
    int max_theta() const noexcept { return ns() - ng_ - 1; }

    bool operator==(const OfdmConfig&) const = default;

private:
    int n_;
    int ng_;
    int zc_root_;
};

// Default frame: N = 128, Ng = 32 (Nw = 288, Ns = 160).
OfdmConfig default_config();

// Smallest root >= `preferred` that is coprime with n.
int coprime_root(int n, int preferred = kDefaultZcRoot);

// Key-value text format:
//
//   # comment
//   N = 128
//   Ng = 32
//   zc_root = 25
//
// Missing keys fall back to the defaults. Nw and Ns are derived and are
// rejected if present.
OfdmConfig parse_config(std::string_view text);
OfdmConfig load_config(const std::filesystem::path& path);
std::string format_config(const OfdmConfig& config);

} // namespace ofdmts
