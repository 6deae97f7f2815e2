#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "armvalue/csv.hpp"
#include "armvalue/hier_model.hpp"

namespace armvalue {

static_assert(std::endian::native == std::endian::little,
              "the draws file format is little-endian");

// Binary layout of a draws file:
//   bytes 0-7   magic "ARMVDRW1"
//   bytes 8-11  uint32 player count P
//   bytes 12-19 uint64 retained draw count D
//   bytes 20-   D rows of P doubles, row-major, the retained mu draws
// Player-to-column mapping lives in a companion index CSV.
inline constexpr char kDrawsMagic[8] = {'A', 'R', 'M', 'V', 'D', 'R', 'W', '1'};
inline constexpr std::string_view kDrawsIndexHeader = "player_id,column";

inline void write_draws(std::ostream& out, const PosteriorDraws& draws) {
    out.write(kDrawsMagic, 8);
    std::uint32_t players = std::uint32_t(draws.player_ids.size());
    std::uint64_t retained = std::uint64_t(draws.n_retained);
    out.write(reinterpret_cast<const char*>(&players), sizeof players);
    out.write(reinterpret_cast<const char*>(&retained), sizeof retained);
    out.write(reinterpret_cast<const char*>(draws.mu.data()),
              std::streamsize(draws.mu.size() * sizeof(double)));
}

inline void write_draws_index(std::ostream& out, const PosteriorDraws& draws) {
    out << kDrawsIndexHeader << '\n';
    for (std::size_t i = 0; i < draws.player_ids.size(); ++i)
        out << draws.player_ids[i] << ',' << i << '\n';
}

// Reads the mu draw matrix back; sigma2/mu0/tau2 traces are not persisted.
inline PosteriorDraws read_draws(std::istream& bin, std::istream& index) {
    char magic[8];
    bin.read(magic, 8);
    if (!bin || std::memcmp(magic, kDrawsMagic, 8) != 0)
        throw ParseError("not a draws file (bad magic)");
    std::uint32_t players = 0;
    std::uint64_t retained = 0;
    bin.read(reinterpret_cast<char*>(&players), sizeof players);
    bin.read(reinterpret_cast<char*>(&retained), sizeof retained);
    if (!bin) throw ParseError("truncated draws header");

    PosteriorDraws draws;
    draws.n_retained = std::int64_t(retained);
    draws.mu.resize(std::size_t(players) * retained);
    bin.read(reinterpret_cast<char*>(draws.mu.data()),
             std::streamsize(draws.mu.size() * sizeof(double)));
    if (!bin) throw ParseError("truncated draws body");

    draws.player_ids.resize(players);
    std::vector<bool> seen(players, false);
    csv::Reader reader(index, kDrawsIndexHeader);
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        std::size_t line = reader.line_number();
        reader.expect_fields(f, 2);
        long long column = csv::parse_int(f[1], line, "column");
        if (column < 0 || column >= players) csv::fail(line, "column", "column out of range");
        if (seen[std::size_t(column)]) csv::fail(line, "column", "duplicate column");
        seen[std::size_t(column)] = true;
        draws.player_ids[std::size_t(column)] = std::string(f[0]);
    }
    for (std::uint32_t i = 0; i < players; ++i)
        if (!seen[i]) throw ParseError("draws index is missing column " + std::to_string(i));
    return draws;
}

}  // namespace armvalue
