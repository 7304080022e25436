#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reconf/rational.hpp"
#include "reconf/word.hpp"

namespace reconf {

// One q-ary constraint: a scope of variable indices and an explicit truth
// table over alphabet^q. Table index: scope[0] is the most significant digit.
struct Constraint {
  std::vector<std::size_t> scope;
  std::vector<std::uint8_t> table;

  bool eval(const Word& assignment, std::size_t alphabet) const;
};

struct ConstraintSystem {
  std::size_t num_vars = 0;
  std::size_t alphabet = 2;
  std::vector<Constraint> constraints;

  // Scope indices in range, table sizes exactly alphabet^arity.
  void validate() const;
};

void validate_assignment(const ConstraintSystem& psi, const Word& assignment);

// Number of satisfied constraints; the integer core of value computations.
std::size_t satisfied_count(const ConstraintSystem& psi, const Word& assignment);

// Fraction of satisfied constraints, exact. Requires at least one constraint.
Rat value_of(const ConstraintSystem& psi, const Word& assignment);

// Minimum of value_of over the steps. Validates the sequence invariants.
Rat sequence_value(const ConstraintSystem& psi, const std::vector<Word>& steps);

// CNF clauses as DIMACS-style literals: +v / -v, 1-based.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// One constraint per clause, duplicates kept with multiplicity.
ConstraintSystem cnf_to_csp(const CnfFormula& cnf);

// The 3-clause formula of the worked SAT-reconfiguration example:
// (~x1 | ~x2 | x3) & (~x1 | x2 | ~x3) & (x1 | ~x2 | ~x3).
CnfFormula example_formula();

struct DimacsInstance {
  CnfFormula cnf;
  std::optional<Bits> start;
  std::optional<Bits> goal;
};

// DIMACS CNF extended with optional `c start <bits>` / `c goal <bits>` lines.
DimacsInstance parse_dimacs(std::istream& in);
DimacsInstance parse_dimacs_file(const std::string& path);

// JSON wire format: {num_vars, alphabet_size, constraints:[{scope, table}]}.
std::string csp_to_json(const ConstraintSystem& psi);
ConstraintSystem csp_from_json(const std::string& text);
ConstraintSystem csp_from_json_file(const std::string& path);

}  // namespace reconf
