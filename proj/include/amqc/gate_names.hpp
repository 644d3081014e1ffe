#pragma once

// Gate expressions for the command line. An expression is a product of
// tokens written left to right as matrices are multiplied, so "HT" is H.T
// (T acts first). Tokens may be separated by spaces or '*':
//
//   I X Y Z H T Tdg            one-qubit gates
//   CZ CNOT SWAP SCT M N       two-qubit gates (M, N: the model gates)
//   R(<angle>)                 diag(1, e^{i angle}); angle like 0.3, pi/8, -3pi/4
//   [re im re im re im re im]  a 2x2 literal, row-major
//
// "@path" reads the expression from a file.

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "amqc/gates.hpp"
#include "amqc/model_k.hpp"
#include "amqc/model_l.hpp"

namespace amqc {

namespace detail {

inline double parse_angle(std::string_view s) {
  std::string t;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw std::invalid_argument("empty angle");
  const auto pi_at = t.find("pi");
  if (pi_at == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad angle '" + t + "'");
    return v;
  }
  double coeff = 1.0;
  const std::string head = t.substr(0, pi_at);
  if (head == "-") {
    coeff = -1.0;
  } else if (!head.empty() && head != "+") {
    std::size_t used = 0;
    coeff = std::stod(head, &used);
    if (used != head.size()) throw std::invalid_argument("bad angle '" + t + "'");
  }
  double den = 1.0;
  const std::string tail = t.substr(pi_at + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw std::invalid_argument("bad angle '" + t + "'");
    std::size_t used = 0;
    den = std::stod(tail.substr(1), &used);
    if (used != tail.size() - 1 || den == 0.0) throw std::invalid_argument("bad angle '" + t + "'");
  }
  return coeff * std::numbers::pi / den;
}

inline MatN multiply_checked(const MatN& acc, const MatN& g, const std::string& expr) {
  if (acc.size() == 0) return g;
  if (acc.rows() != g.rows()) {
    throw DimensionMismatch("gate expression '" + expr + "' mixes one- and two-qubit gates");
  }
  return acc * g;
}

}  // namespace detail

inline MatN parse_gate(std::string_view text) {
  std::string expr(text);
  if (!expr.empty() && expr[0] == '@') {
    std::ifstream in(expr.substr(1));
    if (!in) throw std::invalid_argument("cannot read gate file '" + expr.substr(1) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    expr = buf.str();
  }
  static const std::vector<std::pair<std::string, MatN>> named = [] {
    return std::vector<std::pair<std::string, MatN>>{
        {"CNOT", cnot()},
        {"SWAP", swap_gate()},
        {"SCT", swap_controlled(t_gate())},
        {"Tdg", t_gate().adjoint()},
        {"CZ", cz()},
        {"I", identity2()},
        {"X", pauli_x()},
        {"Y", pauli_y()},
        {"Z", pauli_z()},
        {"H", hadamard()},
        {"T", t_gate()},
        {"M", closed_form_m(specific_k_instance())},
        {"N", closed_form_n(sct_instance())},
    };
  }();

  MatN acc;
  std::size_t i = 0;
  while (i < expr.size()) {
    const char c = expr[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++i;
      continue;
    }
    if (expr.compare(i, 2, "R(") == 0) {
      const auto close = expr.find(')', i);
      if (close == std::string::npos) throw std::invalid_argument("unterminated R( in '" + expr + "'");
      const double angle = detail::parse_angle(std::string_view(expr).substr(i + 2, close - i - 2));
      acc = detail::multiply_checked(acc, phase_gate(angle), expr);
      i = close + 1;
      continue;
    }
    if (c == '[') {
      const auto close = expr.find(']', i);
      if (close == std::string::npos) throw std::invalid_argument("unterminated [ in '" + expr + "'");
      std::string body = expr.substr(i + 1, close - i - 1);
      for (char& ch : body) {
        if (ch == ',') ch = ' ';
      }
      std::istringstream nums(body);
      std::vector<double> v;
      for (double x; nums >> x;) v.push_back(x);
      if (v.size() != 8 || !nums.eof()) {
        throw std::invalid_argument("matrix literal needs 8 numbers");
      }
      Mat2 m;
      m << cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5]), cplx(v[6], v[7]);
      acc = detail::multiply_checked(acc, m, expr);
      i = close + 1;
      continue;
    }
    bool matched = false;
    for (const auto& [name, g] : named) {
      if (expr.compare(i, name.size(), name) == 0) {
        acc = detail::multiply_checked(acc, g, expr);
        i += name.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw std::invalid_argument("unknown gate at '" + expr.substr(i) + "'");
  }
  if (acc.size() == 0) throw std::invalid_argument("empty gate expression");
  require_unitary(acc, "gate expression", kArgumentUnitaryTol);
  return acc;
}

}  // namespace amqc
