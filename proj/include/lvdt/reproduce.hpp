#pragma once

// Regenerates the bench tables and figures from the bundled data and checks
// each against its acceptance threshold.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lvdt {

enum class Target { table1, table2, table3, fig7, fig9, fig10 };

std::optional<Target> parse_target(std::string_view name);
std::string_view to_string(Target target);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  Target target = Target::table1;
  std::vector<Check> checks;
  std::vector<std::filesystem::path> files;

  bool passed() const;
  /// One "PASS|FAIL name: detail" line per check.
  std::string summary() const;
};

/// Writes the target's CSV files into out_dir.
Report reproduce(Target target, const std::filesystem::path& out_dir);

}  // namespace lvdt
