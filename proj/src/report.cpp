#include "havt/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "havt/cayley.hpp"
#include "havt/permgroup.hpp"

namespace havt {

namespace {

constexpr std::int64_t kJsonIntSafe = (1ll << 53);

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skipped";
  }
}

nlohmann::json row_to_json(const LemmaReport& row) {
  nlohmann::json data = nlohmann::json::object();
  for (const auto& [key, value] : row.data) {
    if (value >= kJsonIntSafe || value <= -kJsonIntSafe)
      data[key] = std::to_string(value);
    else
      data[key] = value;
  }
  for (const auto& [key, value] : row.text) {
    if (key == "method") continue;
    data[key] = value;
  }
  nlohmann::json j{{"lemma_id", row.lemma_id},
                   {"m", row.m},
                   {"status", status_name(row.status)},
                   {"data", data}};
  if (auto it = row.text.find("method"); it != row.text.end())
    j["method"] = it->second;
  if (row.witness) j["witness"] = *row.witness;
  return j;
}

}  // namespace

void RunConfig::validate() const {
  if (m_values.empty()) throw ParamError("at least one m value is required");
  for (unsigned m : m_values)
    if (m < 1 || m > kMaxM)
      throw ParamError("m must be in [1, " + std::to_string(kMaxM) + "]");
  if (format != "json" && format != "text")
    throw ParamError("format must be json or text");
  const auto& ids = all_lemma_ids();
  for (const std::string& id : lemmas)
    if (id != "all" && std::find(ids.begin(), ids.end(), id) == ids.end())
      throw ParamError("unknown lemma id: " + id);
}

RunReport run_verify(const RunConfig& config, const Evaluator* override_ev) {
  config.validate();
  auto t0 = std::chrono::steady_clock::now();

  RunReport report;
  report.config = config;

  CheckOptions opt;
  opt.threads = config.threads;
  opt.giant_test = config.giant_test;
  opt.budget_points = config.budget_points;

  std::vector<unsigned> ms = config.m_values;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  for (unsigned m : ms) {
    GroupParams params = GroupParams::make(m);
    Evaluator local(params);
    const Evaluator* ev = &local;
    if (override_ev && override_ev->params().m == m) ev = override_ev;
    for (LemmaReport& row : run_all(*ev, config.lemmas, opt)) {
      if (row.status == CheckStatus::fail) report.aggregate_pass = false;
      report.rows.push_back(std::move(row));
    }
  }
  report.wall_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const LemmaReport& row : report.rows) rows.push_back(row_to_json(row));
  nlohmann::json config{{"m", report.config.m_values},
                        {"lemmas", report.config.lemmas},
                        {"format", report.config.format},
                        {"threads", report.config.threads},
                        {"giant_test", report.config.giant_test},
                        {"budget_points", report.config.budget_points}};
  return nlohmann::json{{"version", report.version},
                        {"schema_version", kSchemaVersion},
                        {"config", config},
                        {"rows", rows},
                        {"aggregate", report.aggregate_pass ? "pass" : "fail"},
                        {"wall_ms", static_cast<std::int64_t>(
                                        report.wall_sec * 1000.0)}};
}

std::string report_to_text(const RunReport& report) {
  std::ostringstream out;
  out << "verification report (version " << report.version << ")\n";
  out << std::string(76, '-') << '\n';
  for (const LemmaReport& row : report.rows) {
    std::string id = row.lemma_id;
    id.resize(24, ' ');
    std::string mm = "m=" + std::to_string(row.m);
    mm.resize(6, ' ');
    std::string st = status_name(row.status);
    st.resize(8, ' ');
    out << id << mm << st;
    std::string details;
    for (const auto& [key, value] : row.data) {
      if (!details.empty()) details += ", ";
      details += key + "=" + std::to_string(value);
    }
    if (auto it = row.text.find("method"); it != row.text.end())
      details += (details.empty() ? "" : ", ") + std::string("method=") +
                 it->second;
    if (auto it = row.text.find("skip_reason"); it != row.text.end())
      details += (details.empty() ? "" : ", ") + std::string("reason=\"") +
                 it->second + "\"";
    if (row.witness) details += " witness=" + *row.witness;
    out << details << '\n';
  }
  out << std::string(76, '-') << '\n';
  out << "aggregate: " << (report.aggregate_pass ? "pass" : "fail") << '\n';
  return out.str();
}

namespace {

int write_output(const RunConfig& config, const std::string& payload) {
  if (config.out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(config.out_path);
  if (!out) {
    std::cerr << "cannot write " << config.out_path << '\n';
    return 2;
  }
  out << payload;
  return 0;
}

}  // namespace

int cmd_verify(const RunConfig& config, const Evaluator* override_ev) {
  try {
    RunReport report = run_verify(config, override_ev);
    std::string payload = config.format == "json"
                              ? report_to_json(report).dump(2) + "\n"
                              : report_to_text(report);
    int rc = write_output(config, payload);
    if (rc != 0) return rc;
    return report.aggregate_pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_explore(const RunConfig& config) {
  try {
    config.validate();
    unsigned m = config.m_values.front();
    GroupParams params = GroupParams::make(m);
    Evaluator ev(params);
    EvalBudget budget;
    budget.max_points = config.budget_points;

    std::ostringstream out;
    LocalBall b = ball(ev, config.depth, budget);
    std::vector<unsigned> per_depth(config.depth + 1, 0);
    for (unsigned d : b.depth) ++per_depth[d];
    out << "m=" << m << " depth=" << config.depth
        << " vertices=" << b.vertices.size() << " (per depth:";
    for (unsigned c : per_depth) out << ' ' << c;
    out << ")\n";
    bool regular = true;
    for (std::uint32_t v = 0; v < b.vertices.size(); ++v)
      if (b.depth[v] < config.depth && b.undirected_degree(v) != 4)
        regular = false;
    out << "internal vertices 4-regular: " << (regular ? "yes" : "no")
        << '\n';

    if (config.cycles) {
      AlternatingCycles cycles = alternating_cycles(ev);
      out << "|C1|=" << cycles.c1.size() << " |C2|=" << cycles.c2.size()
          << " common=" << cycles.common_vertices
          << " closed-form-agrees=" << (cycles.closed_form_agrees ? "yes" : "no")
          << '\n';
      auto [radius, attachment] = radius_and_attachment(ev);
      out << "radius=" << radius << " attachment=" << attachment << '\n';
    }
    if (!config.dot_path.empty()) {
      std::ofstream dot(config.dot_path);
      if (!dot) {
        std::cerr << "cannot write " << config.dot_path << '\n';
        return 2;
      }
      dot << dot_export(b);
      out << "dot written to " << config.dot_path << '\n';
    }
    std::cout << out.str();
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_order(const RunConfig& config) {
  try {
    config.validate();
    unsigned m = config.m_values.front();
    GroupParams params = GroupParams::make(m);
    Evaluator ev(params);
    std::vector<Perm> gens = {
        materialize(ev, ActionWord::of(m, {AtomKind::X, AtomKind::Y})),
        materialize(ev, ActionWord::of(m, {AtomKind::X, AtomKind::Z}))};
    CheckOptions policy;
    CertifyOptions copt;
    if (m <= policy.bsgs_max_m) {
      copt.bsgs_degree_cap = params.n;
    } else if (config.giant_test && m <= policy.giant_max_m) {
      copt.bsgs_degree_cap = 0;
      copt.giant_test = true;
    } else if (config.giant_test) {
      std::cerr << "m=" << m << " is beyond the giant-test policy (m <= "
                << policy.giant_max_m << ")\n";
      return 2;
    } else {
      std::cerr << "m=" << m
                << " is beyond the exact-chain policy; pass --giant-test\n";
      return 2;
    }
    AlternatingCert cert =
        certify_alternating(std::span<const Perm>(gens), 0, copt);
    std::cout << "m=" << m << " group=<xy,xz> alternating="
              << (cert.alternating ? "yes" : "no") << " method=" << cert.method;
    if (cert.jordan_prime) std::cout << " prime=" << cert.jordan_prime;
    std::cout << " order=" << cert.order.get_str() << '\n';
    return cert.alternating ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"verification suite for the D8^2 x C2^m permutation "
               "construction and its Cayley-graph local structure"};
  app.require_subcommand(1);

  RunConfig config;
  std::string m_list = "1";
  std::string lemma_list = "all";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--m", m_list, "comma-separated list of m values");
    cmd->add_option("--threads", config.threads, "worker threads (0 = auto)")
        ->envname("HAVT_THREADS");
    cmd->add_option("--budget-points", config.budget_points,
                    "materialization budget in points");
    cmd->add_flag("--giant-test", config.giant_test,
                  "allow the Jordan-style giant certification");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the lemma checks");
  add_common(verify);
  verify->add_option("--lemmas", lemma_list,
                     "comma-separated lemma ids, or 'all'");
  verify->add_option("--format", config.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", config.out_path, "output path (default stdout)");

  CLI::App* explore =
      app.add_subcommand("explore", "local Cayley-graph structure");
  add_common(explore);
  explore->add_option("--depth", config.depth, "ball depth to expand");
  explore->add_flag("--cycles", config.cycles,
                    "print the two alternating cycles through the identity");
  explore->add_option("--dot", config.dot_path, "write the ball as DOT");

  CLI::App* order =
      app.add_subcommand("order", "certified order of <xy, xz>");
  add_common(order);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  // --m and --lemmas arrive as comma lists
  config.m_values.clear();
  std::stringstream ms(m_list);
  std::string tok;
  while (std::getline(ms, tok, ',')) {
    if (tok.empty()) continue;
    try {
      long v = std::stol(tok);
      if (v < 1 || v > static_cast<long>(kMaxM)) {
        std::cerr << "error: m must be in [1, " << kMaxM << "]\n";
        return 2;
      }
      config.m_values.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      std::cerr << "error: bad m value '" << tok << "'\n";
      return 2;
    }
  }
  config.lemmas.clear();
  std::stringstream ls(lemma_list);
  while (std::getline(ls, tok, ',')) {
    if (!tok.empty()) config.lemmas.push_back(tok);
  }

  if (verify->parsed()) return cmd_verify(config);
  if (explore->parsed()) return cmd_explore(config);
  return cmd_order(config);
}

}  // namespace havt
