#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "csf/report_io.hpp"

namespace csf {

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  unsigned threads = 0;        // 0 = CSF_THREADS or hardware concurrency
  std::size_t basic_grid = 64;  // segment grid of is_basic_rectangle
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;  // one line, no trailing newline
  Json detail;
  std::vector<VerificationRow> rows;  // criteria 6 and 9
};

inline constexpr int kCriterionCount = 10;

/// Runs criteria by number. Criteria 7 to 9 share one slingshot family run,
/// computed on first use. Criterion 10 reruns 1 to 9 in a fresh suite and
/// compares the report bytes with this suite's results, computing any of
/// 1 to 9 not yet run.
class AcceptanceSuite {
 public:
  explicit AcceptanceSuite(AcceptanceOptions options = {});
  ~AcceptanceSuite();
  AcceptanceSuite(const AcceptanceSuite&) = delete;
  AcceptanceSuite& operator=(const AcceptanceSuite&) = delete;

  /// Throws InvalidInput for an id outside 1..10.
  CriterionResult run(int id);

 private:
  struct Family;
  const Family& family();
  CriterionResult run_one(int id);
  CriterionResult run_determinism();

  AcceptanceOptions opt_;
  std::unique_ptr<Family> fam_;
  std::vector<CriterionResult> first_pass_;
};

/// Results in the order of `ids`.
std::vector<CriterionResult> run_acceptance(std::span<const int> ids, const AcceptanceOptions& options = {});

const char* criterion_name(int id);

/// "criterion 3 [PASS] intersection monotonicity: ..."
std::string format_line(const CriterionResult& r);

Json to_json(const CriterionResult& r);
/// Document over several criteria; the byte-compared report of criterion 10.
Json acceptance_report(std::span<const CriterionResult> results, const AcceptanceOptions& options);

}  // namespace csf
