#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace armvalue {

// Baserunner occupancy.  Eight values, coded as three characters where each
// occupied base shows its number: "1--", "-2-", "12-", ..., "---".
struct BaseConfig {
    bool first = false;
    bool second = false;
    bool third = false;

    friend auto operator<=>(const BaseConfig&, const BaseConfig&) = default;

    int runner_count() const { return int(first) + int(second) + int(third); }

    // Dense index in [0, 8).
    int index() const { return int(first) | int(second) << 1 | int(third) << 2; }

    std::string code() const {
        std::string s = "---";
        if (first) s[0] = '1';
        if (second) s[1] = '2';
        if (third) s[2] = '3';
        return s;
    }

    static std::optional<BaseConfig> parse(std::string_view code) {
        if (code.size() != 3) return std::nullopt;
        BaseConfig b;
        if (code[0] == '1') b.first = true;
        else if (code[0] != '-') return std::nullopt;
        if (code[1] == '2') b.second = true;
        else if (code[1] != '-') return std::nullopt;
        if (code[2] == '3') b.third = true;
        else if (code[2] != '-') return std::nullopt;
        return b;
    }

    static std::array<BaseConfig, 8> all() {
        std::array<BaseConfig, 8> configs;
        for (int i = 0; i < 8; ++i)
            configs[i] = BaseConfig{bool(i & 1), bool(i & 2), bool(i & 4)};
        return configs;
    }
};

// Baserunner configuration plus outs.  Outs 0-2 are the 24 live states; any
// state with three outs is terminal and carries an expected-run value of zero.
struct GameState {
    BaseConfig bases;
    int outs = 0;

    friend auto operator<=>(const GameState&, const GameState&) = default;

    bool terminal() const { return outs >= 3; }

    // Dense index in [0, 24); live states only.
    int index() const { return bases.index() * 3 + outs; }
};

inline std::array<GameState, 24> all_game_states() {
    std::array<GameState, 24> states;
    int k = 0;
    for (BaseConfig bases : BaseConfig::all())
        for (int outs = 0; outs < 3; ++outs)
            states[k++] = GameState{bases, outs};
    return states;
}

// The five tracked base-stealing configurations.  The two first-and-second
// variants share a game state but track different runners of a double steal.
enum class StealCategory {
    FirstOnly,         // R1: runner on first
    SecondOnly,        // R2: runner on second
    FirstAndThird,     // R13: runner on first steals second, third holds
    DoubleStealLead,   // R12L: first and second, lead runner tracked
    DoubleStealTrail,  // R12T: first and second, trailing runner tracked
};

inline constexpr std::array<StealCategory, 5> kStealCategories = {
    StealCategory::FirstOnly, StealCategory::SecondOnly, StealCategory::FirstAndThird,
    StealCategory::DoubleStealLead, StealCategory::DoubleStealTrail};

inline std::string_view category_code(StealCategory c) {
    switch (c) {
        case StealCategory::FirstOnly: return "R1";
        case StealCategory::SecondOnly: return "R2";
        case StealCategory::FirstAndThird: return "R13";
        case StealCategory::DoubleStealLead: return "R12L";
        case StealCategory::DoubleStealTrail: return "R12T";
    }
    return "";
}

inline std::optional<StealCategory> parse_steal_category(std::string_view code) {
    for (StealCategory c : kStealCategories)
        if (category_code(c) == code) return c;
    return std::nullopt;
}

struct StealSituation {
    StealCategory category = StealCategory::FirstOnly;
    int outs = 0;

    friend auto operator<=>(const StealSituation&, const StealSituation&) = default;

    // Dense index in [0, 15).
    int index() const { return int(category) * 3 + outs; }

    GameState game_state() const {
        BaseConfig bases;
        switch (category) {
            case StealCategory::FirstOnly: bases = {true, false, false}; break;
            case StealCategory::SecondOnly: bases = {false, true, false}; break;
            case StealCategory::FirstAndThird: bases = {true, false, true}; break;
            case StealCategory::DoubleStealLead:
            case StealCategory::DoubleStealTrail: bases = {true, true, false}; break;
        }
        return GameState{bases, outs};
    }
};

inline std::array<StealSituation, 15> all_steal_situations() {
    std::array<StealSituation, 15> situations;
    int k = 0;
    for (StealCategory c : kStealCategories)
        for (int outs = 0; outs < 3; ++outs)
            situations[k++] = StealSituation{c, outs};
    return situations;
}

}  // namespace armvalue
