// Regenerates the reference data files under data/.  The expected-runs file
// is illustrative: three published anchor values are pinned and the other 21
// states come from the plate-appearance simulation in synthgen.  Users with a
// real Expected Runs Matrix should replace the file.

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "armvalue/run_matrix.hpp"
#include "armvalue/synthgen.hpp"

namespace {

constexpr std::uint64_t kSeed = 20020405;
constexpr std::int64_t kInningsPerState = 400000;

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);

    armvalue::PlateAppearanceModel model;
    std::array<double, 24> values =
        armvalue::simulate_expected_runs(model, kInningsPerState, kSeed);

    // published anchors: (1st alone, 0 outs), (empty, 1 out), (2nd alone, 0 outs)
    using armvalue::BaseConfig;
    using armvalue::GameState;
    values[GameState{BaseConfig{true, false, false}, 0}.index()] = 0.90;
    values[GameState{BaseConfig{false, false, false}, 1}.index()] = 0.28;
    values[GameState{BaseConfig{false, true, false}, 0}.index()] = 1.14;

    armvalue::ExpectedRunsMatrix matrix = armvalue::ExpectedRunsMatrix::from_values(values);
    auto warnings = matrix.monotonicity_warnings();
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    if (!warnings.empty()) {
        std::cerr << "refusing to write a non-monotone matrix\n";
        return 1;
    }

    {
        std::ofstream out(dir / "run_matrix.csv", std::ios::binary);
        matrix.write(out);
    }
    {
        std::ofstream out(dir / "transitions_catcher.csv", std::ios::binary);
        armvalue::CatcherTransitionTable::defaults().write(out);
    }
    {
        std::ofstream out(dir / "transitions_outfield.csv", std::ios::binary);
        armvalue::OutfieldTransitionTable::defaults().write(out);
    }
    std::cout << "wrote " << (dir / "run_matrix.csv").string() << " and transition tables\n";
    return 0;
}
