#pragma once

// Exact search for S(N), the least M such that every 2-colouring of [N, M]
// has a monochromatic solution of x + y = z^2. A colouring avoids all
// solutions iff every solution triple is not-all-equal (NAE), so each M is
// one NAE-satisfiability instance.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "monosq/checked.hpp"
#include "monosq/colouring.hpp"
#include "monosq/oracle.hpp"

namespace monosq {

inline constexpr Int kMaxInstanceElement = Int{1} << 20;

struct Triple {
  Int x, y, z;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct NaeInstance {
  Int N = 1;
  Int M = 1;
  std::vector<Triple> triples;  // sorted by (z, x) when made by build_instance

  Int size() const noexcept { return M - N + 1; }
};

// Solution triples on [N, y] whose largest element is y. For x <= y and
// x + y = z^2 the largest element is always y.
inline std::vector<Triple> triples_ending_at(Int N, Int y, bool exclude_trivial = true) {
  std::vector<Triple> out;
  for (Int z = std::max(N, isqrt(y + N - 1) + 1); z <= y && z * z <= 2 * y; ++z) {
    const Int x = z * z - y;
    if (x < N || x > y) continue;
    if (exclude_trivial && is_trivial(x, y, z)) continue;
    out.push_back({x, y, z});
  }
  return out;
}

inline NaeInstance build_instance(Int N, Int M, bool exclude_trivial = true) {
  if (N < 1 || N > M) throw PreconditionError("instance needs 1 <= N <= M");
  if (M > kMaxInstanceElement)
    throw CapacityError("M = " + std::to_string(M) + " exceeds the exact-search cap 2^20");
  NaeInstance inst{N, M, {}};
  for (Int y = N; y <= M; ++y) {
    auto t = triples_ending_at(N, y, exclude_trivial);
    inst.triples.insert(inst.triples.end(), t.begin(), t.end());
  }
  std::sort(inst.triples.begin(), inst.triples.end(),
            [](const Triple& a, const Triple& b) { return a.z != b.z ? a.z < b.z : a.x < b.x; });
  return inst;
}

// True when no triple of `inst` is monochromatic under `colours`
// (colours[i] is the colour of N + i).
inline bool avoids_all(const NaeInstance& inst, std::span<const Colour> colours) {
  return std::all_of(inst.triples.begin(), inst.triples.end(), [&](const Triple& t) {
    const Colour c = colours[t.z - inst.N];
    return !(colours[t.x - inst.N] == c && colours[t.y - inst.N] == c);
  });
}

struct SearchOutcome {
  std::optional<std::vector<Colour>> assignment;
  std::uint64_t nodes = 0;
};

// Depth-first NAE search: ascending variable order, +1 tried first, the
// first variable fixed to +1 (colour-swap symmetry). When two members of a
// triple agree, the third is forced to the other colour.
class NaeSolver {
 public:
  explicit NaeSolver(const NaeInstance& inst) : n_(static_cast<std::uint32_t>(inst.size())) {
    std::vector<std::uint32_t> degree(n_, 0);
    for (const auto& t : inst.triples) {
      Con c{};
      for (Int e : {t.x, t.y, t.z}) {
        const auto v = static_cast<std::uint32_t>(e - inst.N);
        if (std::find(c.v.begin(), c.v.begin() + c.size, v) == c.v.begin() + c.size) c.v[c.size++] = v;
      }
      if (c.size == 1) unsat_at_root_ = true;
      for (std::uint8_t i = 0; i < c.size; ++i) ++degree[c.v[i]];
      cons_.push_back(c);
    }
    occ_start_.assign(n_ + 1, 0);
    for (std::uint32_t v = 0; v < n_; ++v) occ_start_[v + 1] = occ_start_[v] + degree[v];
    occ_.resize(occ_start_[n_]);
    std::vector<std::uint32_t> fill(occ_start_.begin(), occ_start_.end() - 1);
    for (std::uint32_t ci = 0; ci < cons_.size(); ++ci)
      for (std::uint8_t i = 0; i < cons_[ci].size; ++i) occ_[fill[cons_[ci].v[i]]++] = ci;
  }

  // Assumptions are (variable, colour) pairs fixed before the search.
  SearchOutcome solve(std::span<const std::pair<std::uint32_t, Colour>> assumptions = {}) {
    SearchOutcome out;
    val_.assign(n_, 0);
    trail_.clear();
    qhead_ = 0;
    if (unsat_at_root_) return out;
    for (auto [v, c] : assumptions) {
      if (val_[v] == 0) {
        assign(v, value(c));
        if (!propagate()) return out;
      } else if (val_[v] != value(c)) {
        return out;
      }
    }
    const bool fix_first = n_ > 0 && val_[0] == 0;

    struct Frame {
      std::uint32_t var;
      std::size_t mark;
      bool second;
    };
    std::vector<Frame> stack;
    std::uint32_t next = 0;
    for (;;) {
      while (next < n_ && val_[next] != 0) ++next;
      if (next == n_) break;
      ++out.nodes;
      stack.push_back({next, trail_.size(), fix_first && next == 0});
      assign(next, 1);
      bool ok = propagate();
      while (!ok) {
        while (!stack.empty() && stack.back().second) {
          undo(stack.back().mark);
          stack.pop_back();
        }
        if (stack.empty()) return out;
        Frame& f = stack.back();
        undo(f.mark);
        f.second = true;
        ++out.nodes;
        assign(f.var, -1);
        next = f.var;
        ok = propagate();
      }
    }
    std::vector<Colour> colours(n_);
    for (std::uint32_t v = 0; v < n_; ++v) colours[v] = val_[v] > 0 ? Colour::plus : Colour::minus;
    out.assignment = std::move(colours);
    return out;
  }

  std::uint32_t variables() const noexcept { return n_; }

 private:
  struct Con {
    std::array<std::uint32_t, 3> v;
    std::uint8_t size;
  };

  void assign(std::uint32_t v, std::int8_t c) {
    val_[v] = c;
    trail_.push_back(v);
  }

  void undo(std::size_t mark) {
    for (std::size_t i = mark; i < trail_.size(); ++i) val_[trail_[i]] = 0;
    trail_.resize(mark);
    qhead_ = mark;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const std::uint32_t v = trail_[qhead_++];
      const std::int8_t c = val_[v];
      for (std::uint32_t k = occ_start_[v]; k < occ_start_[v + 1]; ++k) {
        const Con& con = cons_[occ_[k]];
        if (con.size == 2) {
          const std::uint32_t o = con.v[0] == v ? con.v[1] : con.v[0];
          if (val_[o] == 0)
            assign(o, static_cast<std::int8_t>(-c));
          else if (val_[o] == c)
            return false;
          continue;
        }
        std::uint32_t others[2];
        std::uint8_t n = 0;
        for (std::uint8_t i = 0; i < 3; ++i)
          if (con.v[i] != v) others[n++] = con.v[i];
        const std::int8_t a = val_[others[0]];
        const std::int8_t b = val_[others[1]];
        if (a == c && b == c) return false;
        if (a == c && b == 0)
          assign(others[1], static_cast<std::int8_t>(-c));
        else if (b == c && a == 0)
          assign(others[0], static_cast<std::int8_t>(-c));
      }
    }
    return true;
  }

  std::uint32_t n_;
  bool unsat_at_root_ = false;
  std::vector<Con> cons_;
  std::vector<std::uint32_t> occ_start_;
  std::vector<std::uint32_t> occ_;
  std::vector<std::int8_t> val_;
  std::vector<std::uint32_t> trail_;
  std::size_t qhead_ = 0;
};

// Avoiding colouring of [N, M], or none. With jobs > 1 the tree is split on
// the colours of the variables after the first; the lexicographically first
// satisfiable prefix wins, which reproduces the sequential witness.
inline SearchOutcome is_avoidable(const NaeInstance& inst, unsigned jobs = 1) {
  NaeSolver root(inst);
  const std::uint32_t n = root.variables();
  if (jobs <= 1 || n < 8) return root.solve();

  std::uint32_t bits = 0;
  while ((std::size_t{1} << bits) < 4 * std::size_t{jobs} && bits + 1 < n && bits < 16) ++bits;
  const std::size_t prefixes = std::size_t{1} << bits;
  std::vector<SearchOutcome> slots(prefixes);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::atomic<std::uint64_t> nodes{0};

  auto worker = [&] {
    NaeSolver solver(inst);
    std::vector<std::pair<std::uint32_t, Colour>> assume(bits + 1);
    for (std::size_t p; (p = next.fetch_add(1)) < prefixes;) {
      if (p > best.load()) continue;
      assume[0] = {0, Colour::plus};
      for (std::uint32_t i = 0; i < bits; ++i)
        assume[i + 1] = {i + 1, (p >> (bits - 1 - i)) & 1 ? Colour::minus : Colour::plus};
      auto r = solver.solve(assume);
      nodes += r.nodes;
      if (r.assignment) {
        slots[p] = std::move(r);
        for (std::size_t cur = best.load(); p < cur && !best.compare_exchange_weak(cur, p);) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  SearchOutcome out;
  out.nodes = nodes.load();
  if (const auto b = best.load(); b < prefixes) out.assignment = std::move(slots[b].assignment);
  return out;
}

enum class SearchMethod { backtracking, external_solver };

struct ThresholdOptions {
  bool exclude_trivial = true;
  unsigned jobs = 1;
};

struct ThresholdResult {
  Int N = 1;
  std::optional<Int> S;                    // empty when the cap was reached
  Int last_avoidable = 0;                  // largest M shown avoidable (0 if none)
  std::optional<ColouringSource> witness;  // avoiding colouring of [N, last_avoidable]
  std::uint64_t nodes_explored = 0;
  SearchMethod method = SearchMethod::backtracking;
  bool cap_exceeded = false;
};

inline ColouringSource witness_colouring(Int N, std::span<const Colour> colours) {
  return make_bitmap(Interval(N, N + colours.size() - 1), colours);
}

// Decides one instance; a returned assignment must avoid every triple.
using Decider = std::function<SearchOutcome(const NaeInstance&)>;

// Ascending M from N. Each step first tries to extend the previous witness
// by one element (either colour); only when both extensions fail is
// `decide` run on the full instance.
inline ThresholdResult search_S(Int N, Int cap, const ThresholdOptions& opt, const Decider& decide,
                                SearchMethod method) {
  if (N < 1) throw PreconditionError("N must be >= 1");
  if (cap < N) throw PreconditionError("cap must be >= N");
  if (cap > kMaxInstanceElement) throw CapacityError("cap exceeds the exact-search limit 2^20");
  ThresholdResult res;
  res.N = N;
  res.method = method;
  NaeInstance inst{N, N - 1, {}};
  std::vector<Colour> current;
  bool have = false;
  for (Int M = N; M <= cap; ++M) {
    const auto fresh = triples_ending_at(N, M, opt.exclude_trivial);
    inst.M = M;
    inst.triples.insert(inst.triples.end(), fresh.begin(), fresh.end());
    bool extended = false;
    if (have) {
      for (Colour c : {Colour::plus, Colour::minus}) {
        current.push_back(c);
        const bool ok = std::all_of(fresh.begin(), fresh.end(), [&](const Triple& t) {
          const Colour cz = current[t.z - N];
          return !(current[t.x - N] == cz && current[t.y - N] == cz);
        });
        if (ok) {
          extended = true;
          break;
        }
        current.pop_back();
      }
    }
    if (!extended) {
      auto out = decide(inst);
      res.nodes_explored += out.nodes;
      if (!out.assignment) {
        res.S = M;
        break;
      }
      if (!avoids_all(inst, *out.assignment))
        throw ContradictionError("decider returned a colouring with a monochromatic triple at M = " +
                                 std::to_string(M));
      current = std::move(*out.assignment);
    }
    have = true;
    res.last_avoidable = M;
  }
  if (!res.S) res.cap_exceeded = true;
  if (have) res.witness = witness_colouring(N, current);
  return res;
}

inline ThresholdResult search_S(Int N, Int cap, const ThresholdOptions& opt = {}) {
  return search_S(
      N, cap, opt, [&](const NaeInstance& inst) { return is_avoidable(inst, opt.jobs); }, SearchMethod::backtracking);
}

}  // namespace monosq
