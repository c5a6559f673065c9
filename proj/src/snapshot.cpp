// Copyright 2026 The envwalk Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "envwalk/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"

#include "envwalk/errors.hpp"

namespace envwalk {

namespace {

void put_f64(std::ostream &out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> bytes{};
    for (unsigned i = 0; i < 8; ++i) {
        bytes[i] = static_cast<char>((bits >> (8U * i)) & 0xffU);
    }
    out.write(bytes.data(), bytes.size());
}

double get_f64(std::istream &in) {
    std::array<char, 8> bytes{};
    if (!in.read(bytes.data(), bytes.size())) {
        throw IoError("snapshot payload is truncated");
    }
    std::uint64_t bits = 0;
    for (unsigned i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8U * i);
    }
    return std::bit_cast<double>(bits);
}

} // namespace

void write_snapshot(const PureState &state, std::ostream &out) {
    const nlohmann::json header = {{"d_S", state.sites()},
                                   {"d_E", state.env_dim()},
                                   {"layout", kSnapshotLayout},
                                   {"encoding", "f64le-interleaved"},
                                   {"count", state.size()}};
    out << header.dump() << '\n';
    for (const auto &a : state.amplitudes()) {
        put_f64(out, a.real());
        put_f64(out, a.imag());
    }
    if (!out) {
        throw IoError("failed to write snapshot");
    }
}

PureState read_snapshot(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("snapshot header missing");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &ex) {
        throw IoError(std::string("snapshot header is not JSON: ") + ex.what());
    }
    if (header.value("layout", std::string()) != kSnapshotLayout) {
        throw StructuralError("unsupported snapshot layout");
    }
    const int sites = header.at("d_S").get<int>();
    const int env_dim = header.at("d_E").get<int>();
    PureState probe(sites, env_dim);
    if (header.at("count").get<std::size_t>() != probe.size()) {
        throw StructuralError("snapshot count does not match d_S and d_E");
    }
    std::vector<Complex> amps(probe.size());
    for (auto &a : amps) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        a = Complex(re, im);
    }
    return PureState::from_amplitudes(sites, env_dim, std::move(amps));
}

void save_snapshot(const PureState &state, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_snapshot(state, out);
}

PureState load_snapshot(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_snapshot(in);
}

} // namespace envwalk
