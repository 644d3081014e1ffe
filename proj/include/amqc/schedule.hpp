#pragma once

// Minimal-control schedules: an ordered list of ancilla preparations and
// fixed interactions between one register qubit and one ancilla.
//
// Text form, one instruction per line:
//
//   REGISTER <n>
//   PREP <ancilla> <bit>
//   INT <interaction> <register_qubit> <ancilla>
//
// `#` starts a comment; blank lines are ignored. REGISTER is optional when
// parsing (default: one past the highest register qubit used) and always
// written by to_text.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "amqc/errors.hpp"

namespace amqc {

struct Prep {
  std::string ancilla;
  int bit = 0;

  bool operator==(const Prep&) const = default;
};

struct Interact {
  std::string interaction;
  int qubit = 0;
  std::string ancilla;

  bool operator==(const Interact&) const = default;
};

using Instruction = std::variant<Prep, Interact>;

struct Schedule {
  int register_size = 0;
  std::vector<Instruction> instructions;

  bool operator==(const Schedule&) const = default;

  Schedule& prep(std::string ancilla, int bit) {
    instructions.emplace_back(Prep{std::move(ancilla), bit});
    return *this;
  }

  Schedule& interact(std::string interaction, int qubit, std::string ancilla) {
    instructions.emplace_back(Interact{std::move(interaction), qubit, std::move(ancilla)});
    return *this;
  }

  std::size_t interaction_count() const {
    std::size_t n = 0;
    for (const auto& ins : instructions) n += std::holds_alternative<Interact>(ins);
    return n;
  }

  std::size_t ancilla_count() const {
    std::size_t n = 0;
    for (const auto& ins : instructions) n += std::holds_alternative<Prep>(ins);
    return n;
  }

  // Prepared bit of each ancilla.
  std::map<std::string, int> ancilla_preps() const {
    std::map<std::string, int> out;
    for (const auto& ins : instructions) {
      if (const auto* p = std::get_if<Prep>(&ins)) out[p->ancilla] = p->bit;
    }
    return out;
  }

  // Every ancilla is prepared exactly once and before its first use, bits
  // are 0/1, and every interaction names a register qubit in range.
  void validate() const {
    if (register_size < 0 || register_size > 20) {
      throw ScheduleInvalid("register size out of range");
    }
    std::set<std::string> prepared;
    for (std::size_t i = 0; i < instructions.size(); ++i) {
      const auto where = " (instruction " + std::to_string(i) + ")";
      if (const auto* p = std::get_if<Prep>(&instructions[i])) {
        if (p->bit != 0 && p->bit != 1) throw ScheduleInvalid("preparation bit must be 0 or 1" + where);
        if (!prepared.insert(p->ancilla).second) {
          throw ScheduleInvalid("ancilla '" + p->ancilla + "' prepared twice" + where);
        }
      } else {
        const auto& in = std::get<Interact>(instructions[i]);
        if (in.qubit < 0 || in.qubit >= register_size) {
          throw ScheduleInvalid("register qubit out of range" + where);
        }
        if (!prepared.count(in.ancilla)) {
          throw ScheduleInvalid("ancilla '" + in.ancilla + "' used before preparation" + where);
        }
      }
    }
  }
};

inline std::string to_text(const Schedule& s) {
  std::ostringstream out;
  out << "REGISTER " << s.register_size << '\n';
  for (const auto& ins : s.instructions) {
    if (const auto* p = std::get_if<Prep>(&ins)) {
      out << "PREP " << p->ancilla << ' ' << p->bit << '\n';
    } else {
      const auto& in = std::get<Interact>(ins);
      out << "INT " << in.interaction << ' ' << in.qubit << ' ' << in.ancilla << '\n';
    }
  }
  return out.str();
}

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

inline int parse_int(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty()) throw ParseError(std::string("missing ") + what, line);
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + tok + "'", line);
  }
  if (used != tok.size()) throw ParseError(std::string("bad ") + what + " '" + tok + "'", line);
  return value;
}

}  // namespace detail

// Parses and validates the text form. Malformed lines and invariant
// violations raise ParseError carrying the 1-based line number.
inline Schedule parse_schedule(std::string_view text) {
  Schedule s;
  bool explicit_register = false;
  int highest_qubit = -1;
  std::size_t highest_qubit_line = 0;
  std::set<std::string> prepared;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "REGISTER") {
      if (tok.size() != 2) throw ParseError("REGISTER takes one field", line_no);
      if (explicit_register || !s.instructions.empty()) {
        throw ParseError("REGISTER must be the first instruction", line_no);
      }
      s.register_size = detail::parse_int(tok[1], line_no, "register size");
      if (s.register_size < 0 || s.register_size > 20) {
        throw ParseError("register size out of range", line_no);
      }
      explicit_register = true;
    } else if (kw == "PREP") {
      if (tok.size() != 3) throw ParseError("PREP takes two fields", line_no);
      if (!detail::is_identifier(tok[1])) throw ParseError("bad ancilla id '" + tok[1] + "'", line_no);
      const int bit = detail::parse_int(tok[2], line_no, "bit");
      if (bit != 0 && bit != 1) throw ParseError("bit must be 0 or 1", line_no);
      if (!prepared.insert(tok[1]).second) {
        throw ParseError("ancilla '" + tok[1] + "' prepared twice", line_no);
      }
      s.prep(tok[1], bit);
    } else if (kw == "INT") {
      if (tok.size() != 4) throw ParseError("INT takes three fields", line_no);
      if (!detail::is_identifier(tok[1])) throw ParseError("bad interaction name '" + tok[1] + "'", line_no);
      const int q = detail::parse_int(tok[2], line_no, "register qubit");
      if (q < 0 || q >= 20) throw ParseError("register qubit out of range", line_no);
      if (!detail::is_identifier(tok[3])) throw ParseError("bad ancilla id '" + tok[3] + "'", line_no);
      if (!prepared.count(tok[3])) {
        throw ParseError("ancilla '" + tok[3] + "' used before preparation", line_no);
      }
      s.interact(tok[1], q, tok[3]);
      if (q > highest_qubit) {
        highest_qubit = q;
        highest_qubit_line = line_no;
      }
    } else {
      throw ParseError("unknown instruction '" + kw + "'", line_no);
    }
  }
  if (!explicit_register) s.register_size = highest_qubit + 1;
  if (highest_qubit >= s.register_size) {
    throw ParseError("register qubit beyond REGISTER size", highest_qubit_line);
  }
  s.validate();
  return s;
}

}  // namespace amqc
