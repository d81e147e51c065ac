#pragma once

// DIMACS CNF export of an NAE instance. Variable e - N + 1 is true iff
// element e coloured +1; each triple contributes (-x -y -z) and (x y z),
// with repeated elements collapsed.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "monosq/colour.hpp"
#include "monosq/threshold.hpp"

namespace monosq {

inline std::string encode_dimacs(const NaeInstance& inst) {
  std::vector<std::vector<long long>> clauses;
  clauses.reserve(2 * inst.triples.size());
  for (const auto& t : inst.triples) {
    std::vector<long long> vars;
    for (Int e : {t.x, t.y, t.z}) {
      const auto v = static_cast<long long>(e - inst.N + 1);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<long long> neg;
    for (auto v : vars) neg.push_back(-v);
    clauses.push_back(std::move(neg));
    clauses.push_back(std::move(vars));
  }
  std::ostringstream out;
  out << "c n=" << inst.N << " m=" << inst.M << " triples=" << inst.triples.size() << "\n";
  out << "c variable v is element " << inst.N << " + v - 1; true means colour +1\n";
  out << "p cnf " << inst.size() << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    for (auto lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

// Colours from a model given as signed literals (any order; absent
// variables default to +1).
inline std::vector<Colour> decode_model(const NaeInstance& inst, const std::vector<long long>& model) {
  std::vector<Colour> colours(inst.size(), Colour::plus);
  for (auto lit : model) {
    const auto v = static_cast<Int>(lit < 0 ? -lit : lit);
    if (v >= 1 && v <= inst.size()) colours[v - 1] = lit < 0 ? Colour::minus : Colour::plus;
  }
  return colours;
}

}  // namespace monosq
