#include "reconf/csp.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reconf/errors.hpp"

namespace reconf {

namespace {

std::size_t pow_sz(std::size_t base, std::size_t exp) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > (std::size_t{1} << 40)) throw capacity_error("truth table too large");
    v *= base;
  }
  return v;
}

}  // namespace

bool Constraint::eval(const Word& assignment, std::size_t alphabet) const {
  std::size_t idx = 0;
  for (std::size_t v : scope) idx = idx * alphabet + assignment[v];
  return table[idx] != 0;
}

void ConstraintSystem::validate() const {
  if (alphabet < 2) throw invalid_instance_error("alphabet must have size >= 2");
  for (const auto& c : constraints) {
    for (std::size_t v : c.scope) {
      if (v >= num_vars)
        throw invalid_instance_error("constraint scope index out of range");
    }
    if (c.table.size() != pow_sz(alphabet, c.scope.size()))
      throw invalid_instance_error("constraint table size mismatch");
  }
}

void validate_assignment(const ConstraintSystem& psi, const Word& assignment) {
  if (assignment.size() != psi.num_vars)
    throw invalid_instance_error("assignment length != num_vars");
  for (Sym s : assignment) {
    if (s >= psi.alphabet)
      throw invalid_instance_error("assignment symbol outside alphabet");
  }
}

std::size_t satisfied_count(const ConstraintSystem& psi, const Word& assignment) {
  std::size_t sat = 0;
  for (const auto& c : psi.constraints) sat += c.eval(assignment, psi.alphabet);
  return sat;
}

Rat value_of(const ConstraintSystem& psi, const Word& assignment) {
  validate_assignment(psi, assignment);
  if (psi.constraints.empty())
    throw invalid_instance_error("value of a system with no constraints");
  return rat(static_cast<std::int64_t>(satisfied_count(psi, assignment)),
             static_cast<std::int64_t>(psi.constraints.size()));
}

Rat sequence_value(const ConstraintSystem& psi, const std::vector<Word>& steps) {
  validate_sequence(steps);
  Rat best = 2;
  for (const auto& step : steps) best = std::min(best, value_of(psi, step));
  return best;
}

ConstraintSystem cnf_to_csp(const CnfFormula& cnf) {
  ConstraintSystem psi;
  psi.num_vars = cnf.num_vars;
  psi.alphabet = 2;
  for (const auto& clause : cnf.clauses) {
    if (clause.empty()) throw invalid_instance_error("empty clause");
    Constraint c;
    // Scope = distinct variables in order of first occurrence.
    for (int lit : clause) {
      if (lit == 0) throw invalid_instance_error("zero literal");
      auto v = static_cast<std::size_t>(std::abs(lit)) - 1;
      if (v >= cnf.num_vars)
        throw invalid_instance_error("literal above declared num_vars");
      if (std::find(c.scope.begin(), c.scope.end(), v) == c.scope.end())
        c.scope.push_back(v);
    }
    std::size_t entries = pow_sz(2, c.scope.size());
    c.table.resize(entries, 0);
    for (std::size_t idx = 0; idx < entries; ++idx) {
      // Digit k of idx (most significant first) is the value of scope[k].
      bool sat = false;
      for (int lit : clause) {
        auto v = static_cast<std::size_t>(std::abs(lit)) - 1;
        auto slot = static_cast<std::size_t>(
            std::find(c.scope.begin(), c.scope.end(), v) - c.scope.begin());
        std::size_t shift = c.scope.size() - 1 - slot;
        bool val = (idx >> shift) & 1u;
        if (val == (lit > 0)) {
          sat = true;
          break;
        }
      }
      c.table[idx] = sat;
    }
    psi.constraints.push_back(std::move(c));
  }
  psi.validate();
  return psi;
}

CnfFormula example_formula() {
  CnfFormula cnf;
  cnf.num_vars = 3;
  cnf.clauses = {{-1, -2, 3}, {-1, 2, -3}, {1, -2, -3}};
  return cnf;
}

DimacsInstance parse_dimacs(std::istream& in) {
  DimacsInstance inst;
  std::string line;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") {
      std::string key;
      if (ls >> key) {
        std::string val;
        if ((key == "start" || key == "goal") && (ls >> val)) {
          if (key == "start")
            inst.start = parse_bits(val);
          else
            inst.goal = parse_bits(val);
        }
      }
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> inst.cnf.num_vars >> declared_clauses) || fmt != "cnf")
        throw invalid_instance_error("bad DIMACS problem line");
      have_header = true;
      continue;
    }
    if (!have_header) throw invalid_instance_error("clause before p-line");
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw invalid_instance_error("empty clause");
        inst.cnf.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) inst.cnf.clauses.push_back(current);
  if (!have_header) throw invalid_instance_error("missing DIMACS p-line");
  if (declared_clauses != 0 && declared_clauses != inst.cnf.clauses.size())
    throw invalid_instance_error("clause count differs from p-line");
  return inst;
}

DimacsInstance parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_instance_error("cannot open " + path);
  return parse_dimacs(in);
}

std::string csp_to_json(const ConstraintSystem& psi) {
  nlohmann::json j;
  j["num_vars"] = psi.num_vars;
  j["alphabet_size"] = psi.alphabet;
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : psi.constraints) {
    nlohmann::json jc;
    jc["scope"] = c.scope;
    jc["table"] = c.table;
    j["constraints"].push_back(std::move(jc));
  }
  return j.dump(2);
}

ConstraintSystem csp_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ConstraintSystem psi;
  psi.num_vars = j.at("num_vars").get<std::size_t>();
  psi.alphabet = j.at("alphabet_size").get<std::size_t>();
  for (const auto& jc : j.at("constraints")) {
    Constraint c;
    c.scope = jc.at("scope").get<std::vector<std::size_t>>();
    c.table = jc.at("table").get<std::vector<std::uint8_t>>();
    psi.constraints.push_back(std::move(c));
  }
  psi.validate();
  return psi;
}

ConstraintSystem csp_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_instance_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return csp_from_json(ss.str());
}

}  // namespace reconf
