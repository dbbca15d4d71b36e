#include "seqmod/frontend/run.hpp"

#include "seqmod/errors.hpp"
#include "seqmod/fol.hpp"
#include "seqmod/ground_enum.hpp"
#include "seqmod/kernel/check.hpp"
#include "seqmod/kernel/fold.hpp"
#include "seqmod/lra.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seqmod {

namespace {

using Json = nlohmann::ordered_json;

template <class T>
Json proof_json(const ProofPtr<typename T::Constraint>& n, const T& theory) {
  Json j;
  j["rule"] = to_string(n->rule);
  j["domain"] = n->domain.to_string();
  j["sequent"] = to_string(n->context);
  if (n->input) j["input"] = theory.render(*n->input);
  j["output"] = theory.render(n->output);
  if (n->rule != Rule::Leaf) j["principal"] = n->principal;
  if (n->fresh) j["fresh"] = n->fresh->name;
  if (n->rule == Rule::And) j["order"] = n->right_first ? "right-first" : "left-first";
  if (n->rule == Rule::Leaf) {
    Json used = Json::array();
    for (const auto& l : n->used) used.push_back(l.to_string());
    j["used"] = used;
    j["stream_index"] = n->stream_index;
  }
  Json children = Json::array();
  for (const auto& c : n->children) children.push_back(proof_json(c, theory));
  j["children"] = children;
  return j;
}

template <class T>
RunReport run_with(const T& theory, const Problem& problem, const RunOptions& opt) {
  RunReport report;
  Json& j = report.json;
  j["theory"] = theory.name();
  j["calculus"] = to_string(opt.search.calculus);
  j["order"] = to_string(opt.search.order);
  if (opt.search.order == BranchOrder::Random) j["seed"] = opt.search.seed;

  Domain d = initial_domain(problem);
  Context gamma{to_nnf(problem.goal)};
  spdlog::debug("goal {} over {}", to_string(gamma), d.to_string());

  auto start = std::chrono::steady_clock::now();
  auto outcome = prove(gamma, d, theory, opt.search);
  auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  switch (outcome.status) {
    case Status::Proved:
      j["outcome"] = "proved";
      report.exit_code = kExitProved;
      break;
    case Status::Exhausted:
      j["outcome"] = "unknown";
      report.exit_code = kExitExhausted;
      break;
    case Status::ResourceError:
      j["outcome"] = "resource-error";
      report.exit_code = kExitResource;
      break;
  }
  if (!outcome.detail.empty()) j["detail"] = outcome.detail;
  if (outcome.status == Status::Exhausted) j["complete"] = outcome.complete;
  j["constraint"] = outcome.constraint ? Json(theory.render(*outcome.constraint)) : Json(nullptr);
  j["proof"] = outcome.proof ? proof_json(outcome.proof, theory) : Json(nullptr);

  if (opt.check && outcome.proof) {
    ProofCheck ck = check_proof(outcome.proof, theory, opt.search.pmode);
    j["check"] = ck.ok ? "passed" : "failed: " + ck.message;
    if (!ck.ok) report.exit_code = kExitCheckFailed;
    try {
      Instantiation rho = fold(*outcome.constraint, d, theory);
      Json f = Json::object();
      for (const auto& [m, t] : rho.values()) f[m] = t.to_string();
      j["fold"] = f;
      Reconstruction r = reconstruct_ground(outcome.proof, rho, theory);
      j["reconstruction"] = r.ok ? "passed" : "failed: " + r.message;
      j["leaves_checked"] = r.leaves;
      if (!r.ok) report.exit_code = kExitCheckFailed;
    } catch (const UnsupportedWitness& e) {
      j["reconstruction"] = std::string("unsupported: ") + e.what();
    } catch (const Error& e) {
      j["reconstruction"] = std::string("failed: ") + e.what();
      report.exit_code = kExitCheckFailed;
    }
  }

  Json stats;
  stats["nodes"] = outcome.stats.nodes;
  stats["pulls"] = outcome.stats.pulls;
  stats["backtracks"] = outcome.stats.backtracks;
  stats["iterations"] = outcome.stats.iterations;
  stats["exists_cap"] = outcome.stats.exists_cap;
  if (outcome.proof) stats["proof_size"] = proof_size(outcome.proof);
  if (opt.timing) stats["wall_ms"] = elapsed;
  j["stats"] = stats;
  return report;
}

RunReport input_error(const std::string& message) {
  RunReport r;
  r.exit_code = kExitInput;
  r.json["outcome"] = "input-error";
  r.json["detail"] = message;
  return r;
}

void text_proof(const Json& n, int depth, std::ostringstream& out) {
  out << std::string(2 * static_cast<std::size_t>(depth) + 2, ' ') << n["rule"].get<std::string>();
  if (n.contains("fresh")) out << " " << n["fresh"].get<std::string>();
  out << "  " << n["sequent"].get<std::string>() << "  -> " << n["output"].get<std::string>() << "\n";
  for (const auto& c : n["children"]) text_proof(c, depth + 1, out);
}

}  // namespace

std::string RunReport::text() const {
  std::ostringstream out;
  if (json.contains("file")) out << json["file"].get<std::string>() << ": ";
  out << outcome();
  if (json.contains("detail")) out << " (" << json["detail"].get<std::string>() << ")";
  out << "\n";
  if (json.contains("constraint") && !json["constraint"].is_null()) {
    out << "  constraint: " << json["constraint"].get<std::string>() << "\n";
  }
  for (const char* key : {"check", "reconstruction"}) {
    if (json.contains(key)) out << "  " << key << ": " << json[key].get<std::string>() << "\n";
  }
  if (json.contains("fold")) out << "  fold: " << json["fold"].dump() << "\n";
  if (json.contains("stats")) out << "  stats: " << json["stats"].dump() << "\n";
  if (json.contains("proof") && !json["proof"].is_null()) text_proof(json["proof"], 0, out);
  return out.str();
}

RunReport run_problem(const Problem& problem, const RunOptions& opt) {
  try {
    opt.search.validate();
    if (opt.theory == "fol" || opt.theory == "enum") {
      if (problem.goal.uses_arithmetic()) return input_error("theory " + opt.theory + " does not accept arithmetic");
      if (opt.theory == "fol") return run_with(FolTheory(problem.signature), problem, opt);
      EnumConfig cfg;
      cfg.ceiling = opt.search.depth;
      return run_with(EnumTheory(problem.signature, cfg), problem, opt);
    }
    if (opt.theory == "lra") return run_with(LraTheory(problem.signature), problem, opt);
    return input_error("unknown theory " + opt.theory);
  } catch (const ResourceError& e) {
    RunReport r;
    r.exit_code = kExitResource;
    r.json["outcome"] = "resource-error";
    r.json["detail"] = e.what();
    return r;
  } catch (const Error& e) {
    return input_error(e.what());
  }
}

RunReport run_file(const std::string& path, const RunOptions& opt) {
  std::ifstream in(path);
  RunReport r;
  if (!in) {
    r = input_error("cannot read " + path);
  } else {
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      r = run_problem(parse_problem(buf.str()), opt);
    } catch (const ParseError& e) {
      r = input_error(e.what());
    }
  }
  Json with_file;
  with_file["file"] = path;
  for (auto it = r.json.begin(); it != r.json.end(); ++it) with_file[it.key()] = it.value();
  r.json = std::move(with_file);
  return r;
}

void init_logging() {
  const char* env = std::getenv("SEQMOD_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

}  // namespace seqmod
