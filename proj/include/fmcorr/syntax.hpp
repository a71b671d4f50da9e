#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fmcorr/formula.hpp"

namespace fmcorr {

// Concrete ASCII syntax:
//   atoms     p, q1, foo_bar         [a-z][a-zA-Z0-9_]*
//   nominals  @i0                    '@' followed by an identifier
//   constants bot, top
//   prefix    [] (box), <*> (black diamond)     tightest
//   binary    &  >  |  >  ->  (right associative)
//   inequality        phi <= psi
//   quasi-inequality  ineq & ... & ineq => ineq   (empty antecedent: nothing, "{}" or "∅")
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
};

Formula parse_formula(std::string_view text);
Inequality parse_inequality(std::string_view text);
QuasiInequality parse_quasi(std::string_view text);

std::string print_formula(const Formula& f);
std::string print_inequality(const Inequality& i);
std::string print_quasi(const QuasiInequality& q);

// Constructor-style dump, e.g. Implies(Box(p), p).
std::string ast_string(const Formula& f);

}  // namespace fmcorr
