#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qeuler/errors.hpp"
#include "qeuler/rational.hpp"

namespace qeuler::cli {

/// "a..b" or a single "k"; both endpoints inclusive.
inline std::pair<long, long> parse_range(std::string_view text) {
  auto fail = [&](const std::string& msg, std::size_t pos) {
    throw ParseError("invalid range '" + std::string(text) + "': " + msg,
                     pos);
  };
  std::size_t dots = text.find("..");
  auto read = [&](std::string_view part, std::size_t offset) -> long {
    if (part.empty()) fail("expected an integer", offset);
    for (std::size_t i = 0; i < part.size(); ++i) {
      char c = part[i];
      if (!(std::isdigit(static_cast<unsigned char>(c)) ||
            (i == 0 && c == '-')))
        fail("expected an integer", offset + i);
    }
    return std::stol(std::string(part));
  };
  if (dots == std::string_view::npos) {
    long k = read(text, 0);
    return {k, k};
  }
  long lo = read(text.substr(0, dots), 0);
  long hi = read(text.substr(dots + 2), dots + 2);
  if (lo > hi) fail("empty range", 0);
  return {lo, hi};
}

/// Comma-separated integers, e.g. "0,1,2".
inline std::vector<long> parse_int_list(std::string_view text) {
  std::vector<long> out;
  std::size_t i = 0;
  while (true) {
    std::size_t comma = text.find(',', i);
    std::string_view part = text.substr(
        i, comma == std::string_view::npos ? std::string_view::npos
                                           : comma - i);
    if (part.empty())
      throw ParseError("invalid list '" + std::string(text) +
                           "': expected an integer",
                       i);
    for (std::size_t j = 0; j < part.size(); ++j)
      if (!(std::isdigit(static_cast<unsigned char>(part[j])) ||
            (j == 0 && part[j] == '-')))
        throw ParseError("invalid list '" + std::string(text) +
                             "': expected an integer",
                         i + j);
    out.push_back(std::stol(std::string(part)));
    if (comma == std::string_view::npos) break;
    i = comma + 1;
  }
  return out;
}

/// Certified agreement valuation between a closed-form value and an
/// integral-route value: the exact (or lower-bounded) valuation of the
/// difference, except that an identically-zero difference reports the
/// digits the integral route actually certified.
inline long agreement_valuation(long difference_vlb, long achieved) {
  if (difference_vlb >= kValInfinity) return achieved;
  return difference_vlb;
}

/// Exit-code policy: definite failures dominate, then non-convergence.
inline int exit_code_for(bool any_definite_fail, bool any_not_converged) {
  if (any_definite_fail) return 1;
  if (any_not_converged) return 3;
  return 0;
}

/// Render a valuation lower bound, using "inf" for an exact zero.
inline std::string valuation_str(long vlb) {
  if (vlb >= kValInfinity) return "inf";
  return std::to_string(vlb);
}

/// Quote a CSV field when it contains a comma, quote or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace qeuler::cli
