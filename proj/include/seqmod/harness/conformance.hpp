#pragma once

#include "seqmod/harness/harness.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace seqmod {

struct ConformanceReport {
  std::string backend;
  std::vector<AxiomReport> axioms;
  double seconds = 0;

  bool passed() const;
  std::vector<std::string> failed_axioms() const;
  nlohmann::ordered_json json() const;
  std::string text() const;
};

/// Universe over d = [c0; X1; e; X2; X3], constant a, unary f, predicates p/1 and q/2.
UniverseSpec first_order_universe();
/// Universe over d = [c0; X1; e; X2] with rational meta-variables and eigenvariable e.
UniverseSpec rational_universe();

LiteralGen first_order_literals();
LiteralGen rational_literals();

/// Names accepted by run_conformance: the three backends and the bundled mutants.
std::vector<std::string> backend_names();
std::vector<std::string> mutant_names(const std::string& backend = "");

ConformanceReport run_conformance(const std::string& backend, const HarnessConfig& cfg = {});

}  // namespace seqmod
