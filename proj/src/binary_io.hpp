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

// Little-endian primitives shared by the model and dataset file formats.

#include "ofdmts/error.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace ofdmts::io {

class Writer {
public:
    void u32(std::uint32_t v) { put(v, 4); }
    void i32(std::int32_t v) { put(static_cast<std::uint32_t>(v), 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
    void magic(const char (&m)[5]) { bytes_.insert(bytes_.end(), m, m + 4); }

    void save(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::io, "cannot open " + path.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes_.data()), static_cast<std::streamsize>(bytes_.size()));
        if (!out) fail(Errc::io, "write failed for " + path.string());
    }

private:
    void put(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }

    std::vector<unsigned char> bytes_;
};

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) : what_(path.string()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(Errc::io, "cannot open " + what_);
        bytes_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }

    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(get(4))); }
    std::uint64_t u64() { return get(8); }
    double f64() { return std::bit_cast<double>(get(8)); }

    void expect_magic(const char (&m)[5]) {
        need(4);
        for (int i = 0; i < 4; ++i)
            if (bytes_[pos_ + i] != static_cast<unsigned char>(m[i]))
                fail(Errc::format, what_ + ": bad magic, expected '" + std::string(m, 4) + "'");
        pos_ += 4;
    }

    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
    const std::string& name() const noexcept { return what_; }

private:
    void need(std::size_t n) const {
        if (remaining() < n) fail(Errc::format, what_ + ": truncated file");
    }

    std::uint64_t get(int n) {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    std::string what_;
    std::vector<unsigned char> bytes_;
    std::size_t pos_ = 0;
};

} // namespace ofdmts::io
