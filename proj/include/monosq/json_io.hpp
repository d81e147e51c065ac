#pragma once

#include <string>

#include <json.hpp>

#include "monosq/colouring_io.hpp"
#include "monosq/finder.hpp"
#include "monosq/oracle.hpp"
#include "monosq/threshold.hpp"

namespace monosq {

inline constexpr const char* kVersion = "0.1.0";

inline Json to_json(const Solution& s) {
  return {{"x", s.x}, {"y", s.y}, {"z", s.z}, {"colour", to_string(s.colour)}};
}

inline Solution solution_from_json(const Json& j, const std::string& at = "") {
  detail::require_keys(j, {"x", "y", "z", "colour"}, at);
  return {detail::get_uint(j["x"], at + "/x"), detail::get_uint(j["y"], at + "/y"),
          detail::get_uint(j["z"], at + "/z"), detail::get_colour(j["colour"], at + "/colour")};
}

inline Json to_json(const ProofCase& pc) {
  Json out;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, cases::MonochromaticBand>)
          out = {{"band_colour", to_string(c.band_colour)}};
        else if constexpr (std::is_same_v<T, cases::PairSumAtK> || std::is_same_v<T, cases::PairSumAtKPlus1>)
          out = {{"k", c.k}, {"i", c.i}};
        else if constexpr (std::is_same_v<T, cases::IntervalSum>)
          out = {{"k", c.k}, {"j", c.j}};
        else if constexpr (std::is_same_v<T, cases::ResidueSquare>)
          out = {{"k", c.k}, {"m", c.m}, {"j1", c.j1}, {"j2", c.j2}};
        else
          out = {{"k", c.k}, {"u", c.u}, {"v", c.v}};
      },
      pc);
  out["tag"] = std::string(case_tag(pc));
  return out;
}

inline ProofCase proof_case_from_json(const Json& j, const std::string& at) {
  if (!j.is_object() || !j.contains("tag") || !j["tag"].is_string())
    throw ParseError("proof case needs a string \"tag\"", at + "/tag");
  const auto tag = j["tag"].get<std::string>();
  auto u = [&](const char* key) { return detail::get_uint(j[key], at + "/" + key); };
  if (tag == "monochromatic_band") {
    detail::require_keys(j, {"tag", "band_colour"}, at);
    return cases::MonochromaticBand{detail::get_colour(j["band_colour"], at + "/band_colour")};
  }
  if (tag == "pair_sum_k") {
    detail::require_keys(j, {"tag", "k", "i"}, at);
    return cases::PairSumAtK{u("k"), u("i")};
  }
  if (tag == "pair_sum_k_plus_1") {
    detail::require_keys(j, {"tag", "k", "i"}, at);
    return cases::PairSumAtKPlus1{u("k"), u("i")};
  }
  if (tag == "interval_sum") {
    detail::require_keys(j, {"tag", "k", "j"}, at);
    return cases::IntervalSum{u("k"), u("j")};
  }
  if (tag == "residue_square") {
    detail::require_keys(j, {"tag", "k", "m", "j1", "j2"}, at);
    return cases::ResidueSquare{u("k"), u("m"), u("j1"), u("j2")};
  }
  if (tag == "final_k") {
    detail::require_keys(j, {"tag", "k", "u", "v"}, at);
    return cases::FinalK{u("k"), u("u"), u("v")};
  }
  throw ParseError("unknown case tag \"" + tag + "\"", at + "/tag");
}

inline Json to_json(const ProofTrace& t) {
  return {{"flipped", t.flipped}, {"case", to_json(t.proof_case)}, {"solution", to_json(t.solution)}};
}

inline ProofTrace trace_from_json(const Json& j, const std::string& at = "") {
  detail::require_keys(j, {"flipped", "case", "solution"}, at);
  if (!j["flipped"].is_boolean()) throw ParseError("flipped must be a boolean", at + "/flipped");
  return {j["flipped"].get<bool>(), proof_case_from_json(j["case"], at + "/case"),
          solution_from_json(j["solution"], at + "/solution")};
}

inline Json to_json(const ThresholdResult& r) {
  Json out = {{"N", r.N},
              {"status", r.cap_exceeded ? "cap_exceeded" : "found"},
              {"last_avoidable_M", r.last_avoidable},
              {"nodes_explored", r.nodes_explored},
              {"method", r.method == SearchMethod::backtracking ? "backtracking" : "external-solver"}};
  out["S"] = r.S ? Json(*r.S) : Json(nullptr);
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

}  // namespace monosq
