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

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ofdmts {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::invalid_root: return "invalid root";
    case Errc::invalid_cp: return "invalid cyclic prefix";
    case Errc::invalid_offset: return "invalid timing offset";
    case Errc::dimension: return "dimension mismatch";
    case Errc::profile: return "profile error";
    case Errc::degenerate_input: return "degenerate input";
    case Errc::prior_violation: return "prior violation";
    case Errc::format: return "format error";
    case Errc::io: return "i/o error";
    case Errc::training: return "training error";
    case Errc::unknown_method: return "unknown method";
    }
    return "unknown error";
}

OfdmConfig::OfdmConfig(int n, int ng, int zc_root) : n_(n), ng_(ng), zc_root_(zc_root) {
    if (n < 2) fail(Errc::invalid_argument, "N must be at least 2, got " + std::to_string(n));
    if (ng <= 0 || ng >= n)
        fail(Errc::invalid_cp, "CP length must satisfy 0 < Ng < N, got Ng=" + std::to_string(ng) +
                                   " N=" + std::to_string(n));
    if (zc_root <= 0 || std::gcd(zc_root, n) != 1)
        fail(Errc::invalid_root, "zc_root " + std::to_string(zc_root) + " is not coprime with N=" +
                                     std::to_string(n));
}

OfdmConfig default_config() { return OfdmConfig(128, 32, kDefaultZcRoot); }

int coprime_root(int n, int preferred) {
    int u = preferred < 1 ? 1 : preferred;
    while (std::gcd(u, n) != 1) ++u;
    return u;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

int parse_int(std::string_view key, std::string_view value, int line_no) {
    int out = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end)
        fail(Errc::format, "config line " + std::to_string(line_no) + ": bad integer for '" +
                               std::string(key) + "': '" + std::string(value) + "'");
    return out;
}

} // namespace

OfdmConfig parse_config(std::string_view text) {
    int n = 128;
    int ng = 32;
    int root = kDefaultZcRoot;
    bool root_given = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(Errc::format, "config line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (key == "N") {
            n = parse_int(key, value, line_no);
        } else if (key == "Ng") {
            ng = parse_int(key, value, line_no);
        } else if (key == "zc_root") {
            root = parse_int(key, value, line_no);
            root_given = true;
        } else if (key == "Nw" || key == "Ns") {
            fail(Errc::format, "config line " + std::to_string(line_no) + ": '" + std::string(key) +
                                   "' is derived from N and Ng and cannot be set");
        } else {
            fail(Errc::format, "config line " + std::to_string(line_no) + ": unknown key '" +
                                   std::string(key) + "'");
        }
        if (pos > text.size()) break;
    }
    if (!root_given) root = coprime_root(n, kDefaultZcRoot);
    return OfdmConfig(n, ng, root);
}

OfdmConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const OfdmConfig& config) {
    std::ostringstream out;
    out << "N = " << config.n() << "\n"
        << "Ng = " << config.ng() << "\n"
        << "zc_root = " << config.zc_root() << "\n";
    return out.str();
}

} // namespace ofdmts
