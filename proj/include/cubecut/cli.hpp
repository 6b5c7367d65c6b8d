#pragma once

// Command-line front end shared by the `cubecut` binary and the tests.
//
//   cubecut verify      [lemma|all] --d --k [--component] [--trials --seed --p --alpha] [--out]
//   cubecut recover     --d --k [--component] (--p | --p-grid) [--trials --seed --solver
//                       --restarts --max-passes --format --out --timing]
//   cubecut concentrate --d --k [--component] (--p | --p-grid) [--trials --seed --format --out]
//   cubecut spectrum    --d --k [--format --out]
//   cubecut enumerate   --d --k [--component] [--p --seed --format --out]
//
// Exit status: 0 success, 1 a verify check failed, 2 usage or scale error.

#include <iosfwd>

namespace cubecut {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubecut
