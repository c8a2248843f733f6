#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "csf/report_io.hpp"

namespace csf::cli {

enum class Mode { simulate, slingshot, verify, render };

const char* to_string(Mode m) noexcept;
/// Throws InvalidInput for an unknown name.
Mode parse_mode(const std::string& name);

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInputError = 2;

struct Overrides {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
};

/// Runs one experiment. Relative paths inside `config` resolve against
/// `base_dir`; `out` and `seed` from `overrides` replace the config fields.
/// Progress lines go to `log`, diagnostics to `err`. Returns the exit code.
int run(Mode mode, const Json& config, const std::filesystem::path& base_dir, const Overrides& overrides,
        std::ostream& log, std::ostream& err);

/// Reads the JSON config at `path` (parse errors report line and column)
/// and calls run().
int run_file(Mode mode, const std::filesystem::path& path, const Overrides& overrides, std::ostream& log,
             std::ostream& err);

/// Entry point of the csf executable.
int main(int argc, char** argv);

}  // namespace csf::cli
