#include "mdim/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mdim/kernels.hpp"

namespace mdim {

namespace {

using Clock = std::chrono::steady_clock;

// Immutable data shared by all workers: the distance matrix and the
// splitting bounds used for pruning.
//
// A vertex v splits a class C into at most b pieces when v is not in C,
// where b is the number of distinct nonzero distances from v to C's side(s);
// a member of C contributes one extra singleton. With r picks left a class of
// size s therefore needs s <= b^r + r b^(r-1), and if s > b^r at least one of
// the remaining picks must be a member of C.
struct Engine {
  std::size_t n = 0;
  std::size_t n_points = 0;
  std::vector<std::uint8_t> dist;
  std::uint32_t radix = 1;
  std::uint64_t b_side[2] = {1, 1};
  std::uint64_t b_all = 1;

  explicit Engine(const Incidence& inc) : n(inc.num_vertices()), n_points(inc.num_points()) {
    if (n > Distances::kMatrixLimit) throw std::invalid_argument("exact search limited to 4096 vertices");
    if (n == 0) return;
    const Distances d(inc);
    dist.resize(n * n);
    for (Index v = 0; v < n; ++v) {
      const auto row = d.row(v);
      std::copy(row.begin(), row.end(), dist.begin() + static_cast<std::size_t>(v) * n);
    }
    radix = static_cast<std::uint32_t>(d.diameter()) + 1;
    for (Index v = 0; v < n; ++v) {
      std::vector<bool> seen_side[2] = {std::vector<bool>(radix, false), std::vector<bool>(radix, false)};
      std::vector<bool> seen_all(radix, false);
      for (Index x = 0; x < n; ++x) {
        const std::uint8_t dv = dist[static_cast<std::size_t>(v) * n + x];
        if (dv == 0) continue;
        seen_side[x < n_points ? 0 : 1][dv] = true;
        seen_all[dv] = true;
      }
      for (int s = 0; s < 2; ++s)
        b_side[s] = std::max<std::uint64_t>(b_side[s], std::count(seen_side[s].begin(), seen_side[s].end(), true));
      b_all = std::max<std::uint64_t>(b_all, std::count(seen_all.begin(), seen_all.end(), true));
    }
  }

  std::span<const std::uint8_t> row(Index v) const { return {dist.data() + static_cast<std::size_t>(v) * n, n}; }
};

std::uint64_t sat_pow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 40)) return r;
    r *= b;
  }
  return r;
}

enum class Outcome { none, found, aborted };

struct Shared {
  std::atomic<std::uint32_t> best_first;
  std::atomic<std::uint32_t> cutoff;
  Clock::time_point deadline;
  bool has_deadline = false;
  std::atomic<bool> timed_out{false};
};

class Worker {
 public:
  Worker(const Engine& e, std::uint32_t k)
      : e_(e), k_(k), cls_(k + 1, std::vector<std::uint32_t>(e.n)), ncls_(k + 1, 0), keys_(e.n),
        stamp_gen_(e.n * e.radix + 1, 0), stamp_val_(e.n * e.radix + 1, 0), sizes_(e.n), sides_(e.n),
        max_member_(e.n) {}

  // Explore all k-subsets whose smallest element is `first`.
  Outcome run_subtree(std::uint32_t first, std::uint64_t cap, Shared& shared) {
    first_ = first;
    cap_ = cap;
    nodes_ = 0;
    aborted_ = false;
    shared_ = &shared;
    chosen_.clear();
    std::fill(cls_[0].begin(), cls_[0].end(), 0);
    ncls_[0] = 1;
    chosen_.push_back(first);
    refine(0, first);
    if (count_node()) return Outcome::aborted;
    const bool ok = dfs(1, first + 1);
    if (ok) return Outcome::found;
    return aborted_ ? Outcome::aborted : Outcome::none;
  }

  std::uint64_t nodes() const { return nodes_; }
  const std::vector<Index>& chosen() const { return chosen_; }

 private:
  // True when the subtree must stop.
  bool count_node() {
    ++nodes_;
    if (nodes_ > cap_) aborted_ = true;
    if ((nodes_ & 0xfff) == 0) {
      if (shared_->best_first.load(std::memory_order_relaxed) < first_ ||
          shared_->cutoff.load(std::memory_order_relaxed) < first_)
        aborted_ = true;
      if (shared_->has_deadline && Clock::now() > shared_->deadline) {
        shared_->timed_out = true;
        aborted_ = true;
      }
    }
    return aborted_;
  }

  void refine(std::uint32_t d, Index v) {
    kernels::combine_keys(cls_[d], e_.row(v), e_.radix, keys_);
    const std::uint32_t gen = next_gen();
    std::uint32_t count = 0;
    auto& out = cls_[d + 1];
    for (std::size_t x = 0; x < e_.n; ++x) {
      const std::uint32_t key = keys_[x];
      if (stamp_gen_[key] != gen) {
        stamp_gen_[key] = gen;
        stamp_val_[key] = count++;
      }
      out[x] = stamp_val_[key];
    }
    ncls_[d + 1] = count;
  }

  std::uint32_t next_gen() {
    if (++gen_ == 0) {
      std::fill(stamp_gen_.begin(), stamp_gen_.end(), 0);
      gen_ = 1;
    }
    return gen_;
  }

  void pad_from(std::uint32_t start) {
    while (chosen_.size() < k_) chosen_.push_back(start++);
  }

  // Returns false when the partition at depth d cannot be made discrete with
  // r more picks from vertices >= start. On success `forced` is the class
  // that must receive a member pick when r == 1, or UINT32_MAX.
  bool feasible(std::uint32_t d, std::uint32_t r, std::uint32_t start, std::uint32_t& forced) {
    const auto& c = cls_[d];
    const std::uint32_t m = ncls_[d];
    std::fill(sizes_.begin(), sizes_.begin() + m, 0);
    std::fill(sides_.begin(), sides_.begin() + m, 0);
    for (std::size_t x = 0; x < e_.n; ++x) {
      ++sizes_[c[x]];
      sides_[c[x]] |= x < e_.n_points ? 1 : 2;
      max_member_[c[x]] = static_cast<std::uint32_t>(x);
    }
    forced = UINT32_MAX;
    std::uint32_t big = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (sizes_[i] < 2) continue;
      const std::uint64_t b = sides_[i] == 3 ? e_.b_all : e_.b_side[sides_[i] == 1 ? 0 : 1];
      const std::uint64_t no_member = sat_pow(b, r);
      const std::uint64_t cap = no_member + static_cast<std::uint64_t>(r) * sat_pow(b, r - 1);
      if (sizes_[i] > cap) return false;
      if (sizes_[i] > no_member) {
        if (++big > r || max_member_[i] < start) return false;
        forced = i;
      }
    }
    return true;
  }

  bool dfs(std::uint32_t d, std::uint32_t start) {
    if (ncls_[d] == e_.n) {
      pad_from(start);
      return true;
    }
    const std::uint32_t r = k_ - d;
    if (r == 0) return false;
    if (e_.n - start < r) return false;
    std::uint32_t forced;
    if (!feasible(d, r, start, forced)) return false;
    if (r == 1) return leaf(d, start, forced);

    for (std::uint32_t v = start; v + r <= e_.n; ++v) {
      refine(d, v);
      if (count_node()) return false;
      chosen_.push_back(v);
      if (dfs(d + 1, v + 1)) return true;
      chosen_.pop_back();
      if (aborted_) return false;
    }
    return false;
  }

  // Last pick: v must make every class of the partition a singleton.
  bool leaf(std::uint32_t d, std::uint32_t start, std::uint32_t forced) {
    const auto& c = cls_[d];
    members_.clear();
    for (std::size_t x = 0; x < e_.n; ++x)
      if (sizes_[c[x]] > 1) members_.push_back(static_cast<Index>(x));
    for (std::uint32_t v = start; v < e_.n; ++v) {
      if (forced != UINT32_MAX && c[v] != forced) continue;
      if (count_node()) return false;
      const auto row = e_.row(v);
      const std::uint32_t gen = next_gen();
      bool ok = true;
      for (Index x : members_) {
        const std::uint32_t key = c[x] * e_.radix + row[x];
        if (stamp_gen_[key] == gen) {
          ok = false;
          break;
        }
        stamp_gen_[key] = gen;
      }
      if (ok) {
        chosen_.push_back(v);
        return true;
      }
    }
    return false;
  }

  const Engine& e_;
  std::uint32_t k_;
  std::vector<std::vector<std::uint32_t>> cls_;
  std::vector<std::uint32_t> ncls_;
  std::vector<std::uint32_t> keys_;
  std::vector<std::uint32_t> stamp_gen_, stamp_val_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint8_t> sides_;
  std::vector<std::uint32_t> max_member_;
  std::vector<Index> members_;
  std::vector<Index> chosen_;
  std::uint32_t gen_ = 0;
  std::uint32_t first_ = 0;
  std::uint64_t cap_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  Shared* shared_ = nullptr;
};

struct Feasibility {
  CertifyStatus status = CertifyStatus::budget_exhausted;
  std::vector<Index> subset;
  std::uint64_t nodes = 0;
};

// Lexicographically first resolving k-subset, searched in parallel over the
// smallest element and merged deterministically.
Feasibility feasibility(const Engine& e, std::uint32_t k, std::uint64_t node_budget, unsigned threads,
                        Clock::time_point deadline, bool has_deadline) {
  Feasibility out;
  if (k == 0) {
    out.status = e.n <= 1 ? CertifyStatus::resolving_set_exists : CertifyStatus::no_resolving_set;
    return out;
  }
  if (k > e.n) {
    out.status = CertifyStatus::no_resolving_set;
    return out;
  }
  const std::uint32_t n_first = static_cast<std::uint32_t>(e.n - k + 1);
  struct Slot {
    Outcome outcome = Outcome::aborted;
    bool done = false;
    std::uint64_t nodes = 0;
    std::vector<Index> subset;
  };
  std::vector<Slot> slots(n_first);
  Shared shared;
  shared.best_first = n_first;
  shared.cutoff = n_first;
  shared.deadline = deadline;
  shared.has_deadline = has_deadline;
  std::atomic<std::uint32_t> next{0};
  std::mutex merge;
  const std::uint64_t cap = node_budget == UINT64_MAX ? UINT64_MAX : node_budget;

  auto work = [&] {
    Worker w(e, k);
    for (;;) {
      const std::uint32_t f = next.fetch_add(1);
      if (f >= n_first) return;
      if (f > shared.best_first.load() || f > shared.cutoff.load() || shared.timed_out.load()) continue;
      const Outcome o = w.run_subtree(f, cap, shared);
      std::lock_guard lock(merge);
      Slot& s = slots[f];
      s.outcome = o;
      s.done = true;
      s.nodes = w.nodes();
      if (o == Outcome::found) {
        s.subset = w.chosen();
        std::uint32_t cur = shared.best_first.load();
        while (f < cur && !shared.best_first.compare_exchange_weak(cur, f)) {
        }
      }
      // Stop everything past the first prefix that already exceeds the budget.
      std::uint64_t total = 0;
      for (std::uint32_t i = 0; i < n_first && slots[i].done; ++i) {
        total += slots[i].nodes;
        if (total > node_budget || slots[i].outcome == Outcome::found) {
          std::uint32_t cur = shared.cutoff.load();
          while (i < cur && !shared.cutoff.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    }
  };

  const unsigned t = std::max(1u, threads);
  if (t == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::uint64_t total = 0;
  for (std::uint32_t f = 0; f < n_first; ++f) {
    const Slot& s = slots[f];
    if (!s.done || s.outcome == Outcome::aborted) {
      out.status = CertifyStatus::budget_exhausted;
      out.nodes = total;
      return out;
    }
    total += s.nodes;
    if (total > node_budget) {
      out.status = CertifyStatus::budget_exhausted;
      out.nodes = total;
      return out;
    }
    if (s.outcome == Outcome::found) {
      out.status = CertifyStatus::resolving_set_exists;
      out.subset = s.subset;
      out.nodes = total;
      return out;
    }
  }
  out.status = CertifyStatus::no_resolving_set;
  out.nodes = total;
  return out;
}

Clock::time_point deadline_of(const SearchBudget& b, bool& has) {
  has = std::isfinite(b.seconds);
  if (!has) return Clock::time_point::max();
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(b.seconds));
}

}  // namespace

VertexSet greedy_upper(const Incidence& inc) {
  const std::size_t n = inc.num_vertices();
  if (n <= 1) return {};
  const Distances d(inc);
  std::vector<std::uint32_t> cls(n, 0), trial(n);
  std::vector<Index> chosen;
  std::vector<bool> in_set(n, false);
  std::vector<std::uint64_t> sizes(n * (static_cast<std::size_t>(d.diameter()) + 1));
  const std::uint32_t radix = static_cast<std::uint32_t>(d.diameter()) + 1;

  auto unseparated = [&](const std::vector<std::uint32_t>& c, std::span<const std::uint8_t> row) {
    std::fill(sizes.begin(), sizes.end(), 0);
    std::uint64_t pairs = 0;
    for (std::size_t x = 0; x < n; ++x) pairs += sizes[c[x] * radix + row[x]]++;
    return pairs;
  };
  std::vector<std::uint8_t> zero(n, 0);
  std::uint64_t pairs = unseparated(cls, zero);
  while (pairs > 0) {
    Index best = 0;
    std::uint64_t best_pairs = UINT64_MAX;
    for (Index v = 0; v < n; ++v) {
      if (in_set[v]) continue;
      const std::uint64_t p = unseparated(cls, d.row(v));
      if (p < best_pairs) {
        best_pairs = p;
        best = v;
      }
    }
    const auto row = d.row(best);
    std::vector<std::uint32_t> relabel(n * radix, UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t x = 0; x < n; ++x) {
      auto& slot = relabel[cls[x] * radix + row[x]];
      if (slot == UINT32_MAX) slot = next++;
      trial[x] = slot;
    }
    cls.swap(trial);
    in_set[best] = true;
    chosen.push_back(best);
    pairs = best_pairs;
  }
  return VertexSet::from_vertices(chosen, inc.num_points());
}

CertifyResult certify_lower(const Incidence& inc, std::uint32_t k, const SearchBudget& budget) {
  const Engine e(inc);
  bool has_deadline = false;
  const auto deadline = deadline_of(budget, has_deadline);
  const Feasibility f = feasibility(e, k, budget.nodes, budget.threads, deadline, has_deadline);
  CertifyResult r;
  r.status = f.status;
  r.nodes = f.nodes;
  if (f.status == CertifyStatus::resolving_set_exists) r.witness = VertexSet::from_vertices(f.subset, inc.num_points());
  return r;
}

MuResult exact_mu(const Incidence& inc, std::uint32_t max_k, const SearchBudget& budget) {
  const Engine e(inc);
  bool has_deadline = false;
  const auto deadline = deadline_of(budget, has_deadline);
  MuResult r;
  std::uint64_t used = 0;
  for (std::uint32_t k = 0; k <= max_k; ++k) {
    const std::uint64_t remaining = budget.nodes == UINT64_MAX ? UINT64_MAX : budget.nodes - std::min(used, budget.nodes);
    const Feasibility f = feasibility(e, k, remaining, budget.threads, deadline, has_deadline);
    used += f.nodes;
    r.nodes = used;
    if (f.status == CertifyStatus::budget_exhausted) {
      r.status = MuStatus::budget_exhausted;
      r.lower_bound = k;
      return r;
    }
    if (f.status == CertifyStatus::resolving_set_exists) {
      r.status = MuStatus::exact;
      r.mu = k;
      r.lower_bound = k;
      r.basis = VertexSet::from_vertices(f.subset, inc.num_points());
      return r;
    }
  }
  r.status = MuStatus::max_k_reached;
  r.lower_bound = max_k + 1;
  return r;
}

}  // namespace mdim
