#include "seqmod/frontend/run.hpp"
#include "seqmod/harness/conformance.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <map>
#include <thread>

using namespace seqmod;

namespace {

int prove_files(const std::vector<std::string>& files, const RunOptions& opt, const std::string& output,
                std::size_t jobs) {
  std::vector<RunReport> reports(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) reports[i] = run_file(files[i], opt);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(jobs, files.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kExitProved;
  for (const auto& r : reports) code = std::max(code, r.exit_code);
  if (output == "json") {
    if (reports.size() == 1) {
      std::cout << reports.front().json.dump(2) << "\n";
    } else {
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (const auto& r : reports) all.push_back(r.json);
      std::cout << all.dump(2) << "\n";
    }
  } else {
    for (const auto& r : reports) std::cout << r.text();
  }
  return code;
}

int conformance(const std::string& target, bool with_mutants, const HarnessConfig& cfg, const std::string& output) {
  std::vector<std::string> backends;
  if (target == "all") {
    backends = backend_names();
  } else {
    backends = {target};
  }
  std::vector<std::string> mutants;
  if (with_mutants) {
    for (const auto& b : backends) {
      auto m = mutant_names(b);
      mutants.insert(mutants.end(), m.begin(), m.end());
    }
  }
  bool ok = true;
  nlohmann::ordered_json j;
  j["backends"] = nlohmann::ordered_json::array();
  j["mutants"] = nlohmann::ordered_json::array();
  for (const auto& b : backends) {
    ConformanceReport r = run_conformance(b, cfg);
    ok = ok && r.passed();
    if (output == "json") {
      j["backends"].push_back(r.json());
    } else {
      std::cout << r.text();
    }
  }
  for (const auto& m : mutants) {
    ConformanceReport r = run_conformance(m, cfg);
    bool caught = !r.passed();
    ok = ok && caught;
    if (output == "json") {
      nlohmann::ordered_json x;
      x["mutant"] = m;
      x["caught"] = caught;
      x["failed_axioms"] = r.failed_axioms();
      j["mutants"].push_back(x);
    } else {
      std::cout << "mutant " << m << ": " << (caught ? "caught" : "NOT CAUGHT");
      for (const auto& a : r.failed_axioms()) std::cout << " " << a;
      std::cout << "\n";
    }
  }
  if (output == "json") {
    j["passed"] = ok;
    std::cout << j.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Sequent-calculus prover with delayed instantiation modulo theories"};
  app.require_subcommand(1);

  RunOptions opt;
  std::vector<std::string> files;
  std::string calculus = "di";
  std::string order = "left";
  std::string pmode = "sat";
  std::string output = "text";
  std::size_t jobs = 1;

  auto* prove = app.add_subcommand("prove", "search for a proof of each problem file");
  prove->add_option("files", files, "problem files")->required()->check(CLI::ExistingFile);
  prove->add_option("--calculus", calculus, "di or sdi")->check(CLI::IsMember({"di", "sdi"}));
  prove->add_option("--theory", opt.theory, "fol, enum or lra")->check(CLI::IsMember({"fol", "enum", "lra"}));
  prove->add_option("--order", order, "branch order for conjunctions")
      ->check(CLI::IsMember({"left", "right", "random"}));
  prove->add_option("--seed", opt.search.seed, "seed for --order random");
  prove->add_option("--max-exists", opt.search.max_exists, "expansions per existential")->check(CLI::PositiveNumber);
  prove->add_option("--pulls", opt.search.pulls, "stream pulls per leaf")->check(CLI::PositiveNumber);
  prove->add_option("--nodes", opt.search.nodes, "node budget")->check(CLI::PositiveNumber);
  prove->add_option("--depth", opt.search.depth, "term depth ceiling for enum")->check(CLI::PositiveNumber);
  prove->add_option("--pmode", pmode, "sat or true")->check(CLI::IsMember({"sat", "true"}));
  prove->add_flag("--check", opt.check, "check the proof, fold and reconstruct ground proofs");
  prove->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));
  prove->add_option("--jobs", jobs, "problems run in parallel")->check(CLI::PositiveNumber);
  prove->add_flag("--timing", opt.timing, "include wall time in reports");

  std::string target;
  bool with_mutants = false;
  HarnessConfig hcfg;
  std::string conf_output = "text";
  std::vector<std::string> targets = backend_names();
  targets.push_back("all");
  for (const auto& m : mutant_names()) targets.push_back(m);
  auto* conf = app.add_subcommand("conformance", "check a backend against the constraint-structure axioms");
  conf->add_option("theory", target, "fol, enum, lra, all or a mutant name")->required()->check(CLI::IsMember(targets));
  conf->add_flag("--mutants", with_mutants, "also run the bundled broken backends, which must fail");
  conf->add_option("--cases", hcfg.cases, "cases per axiom")->check(CLI::PositiveNumber);
  conf->add_option("--seed", hcfg.seed, "generator seed");
  conf->add_option("--output", conf_output, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*prove) {
    opt.search.calculus = calculus == "sdi" ? Calculus::SDI : Calculus::DI;
    opt.search.order = order == "right" ? BranchOrder::Right : order == "random" ? BranchOrder::Random : BranchOrder::Left;
    opt.search.pmode = pmode == "true" ? PMode::AlwaysTrue : PMode::Satisfiable;
    return prove_files(files, opt, output, jobs);
  }
  return conformance(target, with_mutants, hcfg, conf_output);
}
