#ifndef HAVT_REPORT_HPP
#define HAVT_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "havt/lemmas.hpp"

namespace havt {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::vector<unsigned> m_values = {1};
  std::vector<std::string> lemmas = {"all"};
  std::string format = "json";  // json | text
  std::string out_path;         // empty = stdout
  unsigned depth = 2;
  unsigned threads = 0;
  bool giant_test = false;
  std::uint64_t budget_points = 1ull << 26;
  bool cycles = false;
  std::string dot_path;

  void validate() const;  // throws ParamError on bad values
};

struct RunReport {
  std::string version = kToolVersion;
  RunConfig config;
  std::vector<LemmaReport> rows;  // ordered by (m, canonical lemma order)
  bool aggregate_pass = true;     // fails only on check failures, not skips
  double wall_sec = 0.0;          // excluded from the determinism contract
};

/// Runs the selected checks for each m. `override_ev` substitutes a
/// prepared evaluator for its m (fault-injection tests use this).
RunReport run_verify(const RunConfig& config,
                     const Evaluator* override_ev = nullptr);

nlohmann::json report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report);

// exit codes: 0 all pass, 1 any check failed, 2 usage or resource error
int cmd_verify(const RunConfig& config, const Evaluator* override_ev = nullptr);
int cmd_explore(const RunConfig& config);
int cmd_order(const RunConfig& config);

int run_cli(int argc, const char* const* argv);

}  // namespace havt

#endif
