#include "elenchus/driver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace elenchus::driver {

namespace fs = std::filesystem;

namespace {

std::string problem_name(const std::string& path) {
  return fs::path(path).stem().string();
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void emit_strategy(const StrategyNode& root, const Options& options,
                   const std::string& path, std::ostream& diag) {
  std::string target = options.strategy_out;
  if (target.empty()) {
    target = fs::path(path).stem().string() +
             (options.emit == EmitFormat::Dot ? ".strategy.dot" : ".strategy.txt");
  }
  std::ofstream out(target);
  if (!out) {
    diag << "cannot write strategy to '" << target << "'\n";
    return;
  }
  out << (options.emit == EmitFormat::Dot ? strategy_to_dot(root) : strategy_to_text(root));
  diag << "strategy written to " << target << "\n";
}

}  // namespace

ProveReport prove_file(const std::string& path, const Options& options, std::ostream& out,
                       std::ostream& diag) {
  ProveReport report;
  report.problem = problem_name(path);
  auto started = std::chrono::steady_clock::now();
  auto finish = [&](SzsStatus status) {
    report.status = std::move(status);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                         .count();
    out << "% SZS status " << report.status.token() << " for " << report.problem << "\n";
    return report;
  };

  tptp::TptpProblem problem;
  Formula goal = Formula::atom("placeholder");
  try {
    tptp::ParseOptions popts;
    popts.include_root = options.include_dir;
    problem = tptp::parse_file(path, popts);
    goal = tptp::combine(problem);
  } catch (const tptp::FragmentViolation& v) {
    diag << report.problem << ": " << v.what() << "\n";
    return finish(SzsStatus::inappropriate(v.what()));
  } catch (const tptp::SyntaxError& e) {
    diag << report.problem << ": " << e.what() << "\n";
    return finish(SzsStatus::error(e.what()));
  } catch (const tptp::CombineError& e) {
    diag << report.problem << ": " << e.what() << "\n";
    return finish(SzsStatus::error(e.what()));
  } catch (const std::exception& e) {
    diag << report.problem << ": " << e.what() << "\n";
    return finish(SzsStatus::error(e.what()));
  }

  report.propositional = goal.is_quantifier_free();

  SearchConfig cfg;
  cfg.ruleset = options.ruleset;
  cfg.depth_limit = options.depth_limit;
  cfg.time_limit = options.time_limit;
  cfg.prefer_defense = options.prefer_defense.value_or(
      report.propositional ? PreferDefense::Strict : PreferDefense::Heuristic);
  if (options.trace) {
    cfg.on_expand = [&out](const Dialogue& d) {
      if (d.size() > 0) out << render_move(d.moves().back(), d.size() - 1) << "\n";
    };
  }

  SearchOutcome outcome = search(goal, cfg);
  report.nodes = outcome.nodes_expanded;
  SzsStatus status = classify(outcome, report.propositional);
  if (outcome.kind == SearchOutcome::Kind::StrategyFound &&
      options.emit != EmitFormat::None)
    emit_strategy(*outcome.root, options, path, diag);
  return finish(std::move(status));
}

int exit_code(const SzsStatus& status) {
  switch (status.kind) {
    case SzsKind::Theorem:
    case SzsKind::NonTheorem:
      return 0;
    case SzsKind::GaveUp:
    case SzsKind::Timeout:
      return 1;
    case SzsKind::Inappropriate:
    case SzsKind::Error:
      return 2;
  }
  return 2;
}

std::optional<std::string> intended_status(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != '%') continue;
    std::size_t mark = line.find("Status (intuit.)");
    if (mark == std::string::npos) continue;
    std::size_t colon = line.find(':', mark);
    if (colon == std::string::npos) continue;
    std::string value = trim(line.substr(colon + 1));
    std::size_t space = value.find_first_of(" \t");
    if (space != std::string::npos) value = value.substr(0, space);
    if (!value.empty()) return value;
  }
  return std::nullopt;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string csv_line(const BatchRecord& r) {
  std::ostringstream os;
  os << csv_field(r.problem) << ',' << csv_field(r.intended) << ',' << csv_field(r.computed)
     << ',' << r.agrees << ',' << csv_field(r.reason) << ',' << std::fixed
     << std::setprecision(3) << r.seconds;
  return os.str();
}

std::vector<BatchRecord> run_batch(const std::string& dir, const Options& options,
                                   std::chrono::milliseconds per_problem_timeout,
                                   const std::string& csv_path, std::ostream& summary,
                                   int jobs) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".p")
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  std::vector<BatchRecord> records(files.size());
  Options per_problem = options;
  per_problem.time_limit = per_problem_timeout;
  per_problem.trace = false;
  per_problem.emit = EmitFormat::None;

  auto prove_one = [&](std::size_t i) {
    std::ostringstream out_sink, diag_sink;
    BatchRecord rec;
    rec.problem = problem_name(files[i]);
    try {
      ProveReport report = prove_file(files[i], per_problem, out_sink, diag_sink);
      rec.computed = report.status.token();
      rec.reason = report.status.reason;
      rec.seconds = report.seconds;
    } catch (const std::exception& e) {
      rec.computed = "Error";
      rec.reason = e.what();
    }
    if (auto intended = intended_status(files[i])) {
      rec.intended = *intended;
      rec.agrees = rec.intended == rec.computed ? "+" : "-";
    }
    records[i] = std::move(rec);
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i) prove_one(i);
  } else {
    std::mutex mu;
    std::size_t next = 0;
    auto worker = [&]() {
      while (true) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= files.size()) return;
          i = next++;
        }
        prove_one(i);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write CSV to '" + csv_path + "'");
    csv << "problem,intended,computed,agrees,reason,seconds\n";
    for (const BatchRecord& r : records) csv << csv_line(r) << "\n";
  }

  std::map<std::string, int> counts;
  int agreed = 0, with_intended = 0;
  for (const BatchRecord& r : records) {
    ++counts[r.computed];
    if (!r.intended.empty()) {
      ++with_intended;
      if (r.agrees == "+") ++agreed;
    }
  }
  summary << records.size() << " problem(s)";
  for (const auto& [token, count] : counts) summary << ", " << count << " " << token;
  if (with_intended > 0) summary << "; agreement " << agreed << "/" << with_intended;
  summary << "\n";
  return records;
}

}  // namespace elenchus::driver
