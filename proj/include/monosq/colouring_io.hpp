#pragma once

// Colouring file format:
//   {"domain": [lo, hi], "rule": {...}}
// with rule one of
//   {"type":"piecewise","segments":[{"from":a,"to":b,"colour":"+1"},...]}
//   {"type":"periodic","period":p,"anchor":a,"pattern":["+1","-1",...]}
//   {"type":"bitmap","offset":a,"bits_base64":"..."}
//   {"type":"random","seed":u}
//   {"type":"flip","inner":{...}}
// Unknown keys are rejected.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "monosq/colouring.hpp"
#include "monosq/errors.hpp"

namespace monosq {

using Json = nlohmann::json;

namespace base64 {

inline constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

inline std::string encode(const std::vector<std::uint8_t>& in) {
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < in.size(); i += 3) {
    const std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8) | in[i + 2];
    for (int s = 18; s >= 0; s -= 6) out += kAlphabet[(v >> s) & 63];
  }
  if (const auto rest = in.size() - i; rest != 0) {
    std::uint32_t v = in[i] << 16;
    if (rest == 2) v |= in[i + 1] << 8;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += rest == 2 ? kAlphabet[(v >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

// Returns false on malformed input; `bad` receives the offending offset.
inline bool decode(std::string_view in, std::vector<std::uint8_t>& out, std::size_t& bad) {
  out.clear();
  if (in.size() % 4 != 0) {
    bad = in.size();
    return false;
  }
  auto index = [](char c) -> int {
    const auto p = kAlphabet.find(c);
    return p == std::string_view::npos ? -1 : static_cast<int>(p);
  };
  for (std::size_t i = 0; i < in.size(); i += 4) {
    std::uint32_t v = 0;
    int pad = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      const char c = in[i + j];
      if (c == '=' && i + 4 == in.size() && j >= 2) {
        ++pad;
        v <<= 6;
        continue;
      }
      const int d = index(c);
      if (d < 0 || pad != 0) {
        bad = i + j;
        return false;
      }
      v = (v << 6) | static_cast<std::uint32_t>(d);
    }
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(v >> 8));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(v));
  }
  return true;
}

}  // namespace base64

inline Json to_json(const ColouringSource& s) {
  Json rule;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, PiecewiseRule>) {
          Json segs = Json::array();
          for (const auto& seg : r.segments)
            segs.push_back(
                {{"from", seg.range.lo()}, {"to", seg.range.hi()}, {"colour", to_string(seg.colour)}});
          rule = {{"type", "piecewise"}, {"segments", std::move(segs)}};
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          Json pat = Json::array();
          for (Colour c : r.pattern) pat.push_back(to_string(c));
          rule = {{"type", "periodic"},
                  {"period", r.pattern.size()},
                  {"anchor", r.anchor},
                  {"pattern", std::move(pat)}};
        } else if constexpr (std::is_same_v<R, BitmapRule>) {
          rule = {{"type", "bitmap"}, {"offset", r.offset}, {"bits_base64", base64::encode(r.bytes)}};
        } else if constexpr (std::is_same_v<R, RandomRule>) {
          rule = {{"type", "random"}, {"seed", r.seed}};
        } else {
          rule = {{"type", "flip"}, {"inner", to_json(*r.inner)}};
        }
      },
      s.rule());
  return Json{{"domain", Json::array({s.domain().lo(), s.domain().hi()})}, {"rule", std::move(rule)}};
}

namespace detail {

inline void require_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& at) {
  if (!obj.is_object()) throw ParseError("expected an object", at.empty() ? "/" : at);
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError("unknown key \"" + key + "\"", at + "/" + key);
  }
  for (auto a : allowed)
    if (!obj.contains(std::string(a)))
      throw ParseError("missing key \"" + std::string(a) + "\"", at + "/" + std::string(a));
}

inline Int get_uint(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned()) throw ParseError("expected a non-negative integer", at);
  return j.get<Int>();
}

inline std::int64_t get_int(const Json& j, const std::string& at) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) throw ParseError("integer out of range", at);
    return static_cast<std::int64_t>(v);
  }
  if (!j.is_number_integer()) throw ParseError("expected an integer", at);
  return j.get<std::int64_t>();
}

inline Colour get_colour(const Json& j, const std::string& at) {
  if (!j.is_string()) throw ParseError("expected a colour string", at);
  auto c = parse_colour(j.get<std::string>());
  if (!c) throw ParseError("colour must be \"+1\" or \"-1\"", at);
  return *c;
}

// Wraps construction failures so that callers see a parse error located at
// the offending document node.
template <class F>
auto located(const std::string& at, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), at.empty() ? "/" : at);
  }
}

inline ColouringSource colouring_from_json(const Json& doc, const std::string& at) {
  require_keys(doc, {"domain", "rule"}, at);
  const Json& d = doc["domain"];
  if (!d.is_array() || d.size() != 2) throw ParseError("domain must be [lo, hi]", at + "/domain");
  const Int lo = get_uint(d[0], at + "/domain/0");
  const Int hi = get_uint(d[1], at + "/domain/1");
  const Interval domain = located(at + "/domain", [&] { return Interval(lo, hi); });

  const Json& r = doc["rule"];
  const std::string rat = at + "/rule";
  if (!r.is_object() || !r.contains("type") || !r["type"].is_string())
    throw ParseError("rule needs a string \"type\"", rat);
  const auto type = r["type"].get<std::string>();

  if (type == "piecewise") {
    require_keys(r, {"type", "segments"}, rat);
    if (!r["segments"].is_array()) throw ParseError("segments must be an array", rat + "/segments");
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < r["segments"].size(); ++i) {
      const auto sat = rat + "/segments/" + std::to_string(i);
      const Json& s = r["segments"][i];
      require_keys(s, {"from", "to", "colour"}, sat);
      const Int a = get_uint(s["from"], sat + "/from");
      const Int b = get_uint(s["to"], sat + "/to");
      segs.push_back({located(sat, [&] { return Interval(a, b); }), get_colour(s["colour"], sat + "/colour")});
    }
    return located(rat, [&] { return make_piecewise(domain, std::move(segs)); });
  }
  if (type == "periodic") {
    require_keys(r, {"type", "period", "anchor", "pattern"}, rat);
    const Int p = get_uint(r["period"], rat + "/period");
    const auto anchor = get_int(r["anchor"], rat + "/anchor");
    if (!r["pattern"].is_array()) throw ParseError("pattern must be an array", rat + "/pattern");
    std::vector<Colour> pat;
    for (std::size_t i = 0; i < r["pattern"].size(); ++i)
      pat.push_back(get_colour(r["pattern"][i], rat + "/pattern/" + std::to_string(i)));
    if (p < 1 || pat.size() != p) throw ParseError("period must equal pattern length >= 1", rat + "/period");
    return located(rat, [&] { return make_periodic(domain, std::move(pat), anchor); });
  }
  if (type == "bitmap") {
    require_keys(r, {"type", "offset", "bits_base64"}, rat);
    const Int off = get_uint(r["offset"], rat + "/offset");
    if (!r["bits_base64"].is_string()) throw ParseError("bits_base64 must be a string", rat + "/bits_base64");
    std::vector<std::uint8_t> bytes;
    std::size_t bad = 0;
    if (!base64::decode(r["bits_base64"].get<std::string>(), bytes, bad))
      throw ParseError("invalid base64 at character " + std::to_string(bad), rat + "/bits_base64");
    return located(rat, [&] { return make_bitmap(domain, off, std::move(bytes)); });
  }
  if (type == "random") {
    require_keys(r, {"type", "seed"}, rat);
    return make_random(domain, get_uint(r["seed"], rat + "/seed"));
  }
  if (type == "flip") {
    require_keys(r, {"type", "inner"}, rat);
    auto inner = colouring_from_json(r["inner"], rat + "/inner");
    if (!(inner.domain() == domain)) throw ParseError("flip inner domain differs", rat + "/inner/domain");
    return make_flip(std::move(inner));
  }
  throw ParseError("unknown rule type \"" + type + "\"", rat + "/type");
}

}  // namespace detail

inline ColouringSource colouring_from_json(const Json& doc) {
  return detail::colouring_from_json(doc, "");
}

inline std::string serialize(const ColouringSource& s) { return to_json(s).dump(); }

inline ColouringSource deserialize(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  return colouring_from_json(doc);
}

}  // namespace monosq
