#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "l1quad/errors.hpp"
#include "l1quad/expr.hpp"

namespace l1quad {

/// A test function: expression text plus an interval on which f, f′, f″ are finite.
struct CorpusEntry {
  std::string expr;
  double lo = 0.5;
  double hi = 3.0;
};

/// The eight functions every certificate is checked against.
inline std::vector<CorpusEntry> builtin_corpus() {
  return {
      {"x^2", -2.0, 3.0},      {"x^3", -2.0, 3.0},  {"exp(x)", -2.0, 3.0},
      {"sin(x)", -3.0, 4.0},   {"ln(x)", 0.25, 4.0}, {"1/x", 0.25, 4.0},
      {"x^2.5", 0.1, 4.0},     {"x*exp(x)", -2.0, 2.0},
  };
}

/// A wider set used to exercise the parser and differentiator.
inline std::vector<CorpusEntry> parser_corpus() {
  std::vector<CorpusEntry> c = builtin_corpus();
  const std::vector<CorpusEntry> extra = {
      {"2*x^3 - 1", -2.0, 2.0},
      {"sin(x) + 2*x", -3.0, 3.0},
      {"cos(3*x) - x/2", -2.0, 2.0},
      {"tan(x/2)", -1.0, 1.0},
      {"sqrt(x + 1)", 0.0, 3.0},
      {"exp(-x^2)", -2.0, 2.0},
      {"2^x", -2.0, 2.0},
      {"x^x", 0.3, 2.5},
      {"ln(1 + x^2) / (2 + sin(x))", -2.0, 2.0},
      {"-x^2 + 3*x - 7", -3.0, 3.0},
      {"(x - 1)^3 * e^x", -1.0, 2.0},
      {"x^-2 + pi*x", 0.5, 3.0},
      {"sqrt(x)^3 - x^(1/3)", 0.2, 3.0},
      {"1 / (1 + 25*x^2)", -1.0, 1.0},
      {"exp(sin(x)) * cos(x)", -3.0, 3.0},
      {"x - -x^2", -2.0, 2.0},
  };
  c.insert(c.end(), extra.begin(), extra.end());
  return c;
}

/// Reads a corpus file: one expression per line, optionally followed by
/// `; lo hi` to set the sampling interval (default [0.5, 3]). Blank lines and
/// lines starting with '#' are ignored. Every expression is parsed eagerly.
inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open corpus file " + path);
  std::vector<CorpusEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    CorpusEntry entry;
    const auto semi = line.find(';');
    entry.expr = line.substr(0, semi);
    while (!entry.expr.empty() && std::isspace(static_cast<unsigned char>(entry.expr.back()))) {
      entry.expr.pop_back();
    }
    if (semi != std::string::npos) {
      std::istringstream dom(line.substr(semi + 1));
      if (!(dom >> entry.lo >> entry.hi) || !(entry.lo < entry.hi)) {
        throw DomainError("bad domain in corpus line: " + line);
      }
    }
    (void)parse(entry.expr);
    out.push_back(std::move(entry));
  }
  return out;
}

/// Seeded 64-bit stream: std::mt19937_64, doubles as (word >> 11)·2⁻⁵³.
/// The mapping is spelled out so draws are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace l1quad
