#include "ipset/search.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <thread>

namespace ipset {

using Code = Ring::Code;

namespace {

using Clock = std::chrono::steady_clock;

// Lookup tables for F_q with q <= 256. Points are indexed x * q + y.
struct FieldTables {
  Ring ring;
  std::uint32_t q = 0;
  std::uint32_t n = 0;
  std::uint32_t one = 0;  // index of (0, 1), the second seed point
  bool char2 = false;
  std::vector<std::uint8_t> add, sub, mul, inv, neg;
  std::vector<std::uint8_t> px, py;      // coordinates of a point index
  std::vector<std::uint8_t> norm;        // x^2 + y^2
  std::vector<std::uint8_t> integral;    // integral predicate on an offset
  std::vector<std::uint16_t> dir;        // direction rank of an offset
  std::vector<std::uint32_t> key;        // precedence key

  FieldTables(const Ring& r, Convention conv) : ring(r), q(r.order()), n(r.order() * r.order()) {
    char2 = r.characteristic() == 2;
    one = r.one();
    add.resize(q * q);
    sub.resize(q * q);
    mul.resize(q * q);
    inv.assign(q, 0);
    neg.resize(q);
    for (Code a = 0; a < q; ++a) {
      neg[a] = static_cast<std::uint8_t>(r.neg(a));
      if (auto i = r.inv(a)) inv[a] = static_cast<std::uint8_t>(*i);
      for (Code b = 0; b < q; ++b) {
        add[a * q + b] = static_cast<std::uint8_t>(r.add(a, b));
        sub[a * q + b] = static_cast<std::uint8_t>(r.sub(a, b));
        mul[a * q + b] = static_cast<std::uint8_t>(r.mul(a, b));
      }
    }
    px.resize(n);
    py.resize(n);
    norm.resize(n);
    integral.resize(n);
    dir.resize(n);
    key.resize(n);
    for (Code x = 0; x < q; ++x)
      for (Code y = 0; y < q; ++y) {
        const std::uint32_t p = x * q + y;
        px[p] = static_cast<std::uint8_t>(x);
        py[p] = static_cast<std::uint8_t>(y);
        norm[p] = add[mul[x * q + x] * q + mul[y * q + y]];
        integral[p] = is_integral_distance(r, norm[p], conv);
        dir[p] = static_cast<std::uint16_t>(x != 0 ? mul[y * q + inv[x]] : (y != 0 ? q : q + 1));
        key[p] = dir[p] * n + p;
      }
  }

  std::uint8_t A(std::uint32_t a, std::uint32_t b) const { return add[a * q + b]; }
  std::uint8_t S(std::uint32_t a, std::uint32_t b) const { return sub[a * q + b]; }
  std::uint8_t M(std::uint32_t a, std::uint32_t b) const { return mul[a * q + b]; }
  std::uint32_t pt(std::uint32_t x, std::uint32_t y) const { return x * q + y; }
  std::uint32_t diff(std::uint32_t a, std::uint32_t b) const { return pt(S(px[a], px[b]), S(py[a], py[b])); }
};

void check_field(const Ring& r) {
  if (!r.is_field()) throw SearchError("arc and general-position searches need a field, got " + r.spec());
  if (r.order() > 256) throw SearchLimitError("arc and general-position searches support q <= 256");
}

// Rejects when the normalized image of w under the pair (u, v), or its
// mirror, precedes the key of P[2]. Pairs at distance zero are skipped.
struct CanonTester {
  const FieldTables& t;
  std::uint32_t p2key;

  // 0: skipped, 1: passed, 2: rejected.
  int test(std::uint32_t u, std::uint32_t v, std::uint32_t w) const {
    const std::uint32_t V = t.diff(v, u);
    const std::uint8_t nv = t.norm[V];
    if (nv == 0) return 0;
    const std::uint32_t W = t.diff(w, u);
    const std::uint8_t vx = t.px[V], vy = t.py[V], wx = t.px[W], wy = t.py[W];
    const std::uint8_t re = t.A(t.M(wx, vx), t.M(wy, vy));
    const std::uint8_t im = t.S(t.M(wy, vx), t.M(wx, vy));
    const std::uint8_t k = t.inv[nv];
    const std::uint8_t a = t.M(im, k), b = t.M(re, k);
    if (t.key[t.pt(t.neg[a], b)] < p2key || t.key[t.pt(a, b)] < p2key) return 2;
    return 1;
  }

  bool accept(const std::uint32_t* P, std::size_t k, std::uint32_t budget) const {
    if (k < 3) return true;
    const std::uint64_t limit = k <= 8 ? std::numeric_limits<std::uint64_t>::max() : budget;
    std::uint64_t used = 0;
    const std::uint32_t last = P[k - 1];
    auto run = [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
      const int r = test(u, v, w);
      if (r != 0) ++used;
      return r == 2;
    };
    for (int role = 0; role < 3; ++role)
      for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j + 1 < k; ++j) {
          if (i == j) continue;
          if (used >= limit) return true;
          const std::uint32_t a = P[i], b = P[j];
          const bool reject = role == 0 ? run(a, b, last) : role == 1 ? run(last, a, b) : run(a, last, b);
          if (reject) return false;
        }
    return true;
  }
};

struct Shared {
  explicit Shared(const SearchConfig& c) : cfg(c) {}
  const SearchConfig& cfg;
  std::mutex mutex;
  std::uint64_t reported = 0;

  void report(std::uint64_t delta) {
    if (!cfg.progress) return;
    std::lock_guard<std::mutex> lock(mutex);
    reported += delta;
    cfg.progress(reported);
  }
};

struct Circle {
  std::uint8_t cx, cy, r;
};

class Worker {
 public:
  Worker(const FieldTables& t, const SearchConfig& cfg, Shared& shared, std::uint64_t node_limit)
      : t_(t), cfg_(cfg), shared_(shared), node_limit_(node_limit),
        general_(cfg.mode == SearchMode::MaxGeneralPosition), canon_{t, 0} {}

  void run(const std::vector<std::uint32_t>& roots, std::uint32_t id, std::uint32_t width) {
    P_ = {0, t_.one};
    best_ = 2;
    witnesses_.push_back(P_);
    if (id == 0) ++nodes_;
    const auto suffix = suffix_directions(roots);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!admissible(2 + suffix[i])) break;
      if (i % width != id) continue;
      branch(roots, i);
      if (aborted_) break;
    }
    flush_progress();
  }

  std::size_t best() const { return best_; }
  const std::vector<std::vector<std::uint32_t>>& witnesses() const { return witnesses_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t pruned() const { return pruned_; }
  bool aborted() const { return aborted_; }

 private:
  bool admissible(std::size_t bound) const {
    return bound > best_ || (bound == best_ && witnesses_.size() < cfg_.witness_limit);
  }

  std::vector<std::uint32_t> suffix_directions(const std::vector<std::uint32_t>& c) const {
    std::vector<std::uint32_t> out(c.size() + 1, 0);
    for (std::size_t i = c.size(); i-- > 0;)
      out[i] = out[i + 1] + (i + 1 == c.size() || t_.dir[c[i]] != t_.dir[c[i + 1]] ? 1 : 0);
    return out;
  }

  void record() {
    if (P_.size() > best_) {
      best_ = P_.size();
      witnesses_.clear();
    }
    if (P_.size() == best_ && witnesses_.size() < cfg_.witness_limit) witnesses_.push_back(P_);
  }

  void flush_progress() {
    if (nodes_ > flushed_) shared_.report(nodes_ - flushed_);
    flushed_ = nodes_;
  }

  // Adds c[i] to P and explores its subtree.
  void branch(const std::vector<std::uint32_t>& c, std::size_t i) {
    const std::uint32_t x = c[i];
    P_.push_back(x);
    if (cfg_.isomorph_pruning && !canon_accept()) {
      ++pruned_;
      P_.pop_back();
      return;
    }
    std::vector<std::uint32_t> child;
    std::size_t j = i + 1;
    while (j < c.size() && t_.dir[c[j]] == t_.dir[x]) ++j;
    filter(c, j, x, child);
    extend(child);
    P_.pop_back();
  }

  bool canon_accept() {
    canon_.p2key = t_.key[P_[2]];
    return canon_.accept(P_.data(), P_.size(), cfg_.canon_triple_budget);
  }

  void filter(const std::vector<std::uint32_t>& c, std::size_t from, std::uint32_t x, std::vector<std::uint32_t>& out) {
    const std::size_t k = P_.size() - 1;  // points before x
    line_dirs_.clear();
    for (std::size_t a = 0; a < k; ++a) line_dirs_.push_back(t_.dir[t_.diff(P_[a], x)]);
    circles_.clear();
    bool char2_block = false;
    if (general_) {
      if (t_.char2) {
        std::size_t same = 0;
        for (std::size_t a = 0; a < k; ++a) same += t_.norm[P_[a]] == t_.norm[x];
        char2_block = same >= 2;
      } else {
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = a + 1; b < k; ++b) circles_.push_back(circle(P_[a], P_[b], x));
      }
    }
    out.reserve(c.size() - from);
    for (std::size_t j = from; j < c.size(); ++j) {
      const std::uint32_t y = c[j];
      const std::uint32_t off = t_.diff(y, x);
      if (!t_.integral[off]) continue;
      const std::uint16_t d = t_.dir[off];
      bool ok = true;
      for (auto ld : line_dirs_)
        if (ld == d) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (char2_block && t_.norm[y] == t_.norm[x]) continue;
      const std::uint8_t yx = t_.px[y], yy = t_.py[y];
      for (const auto& cc : circles_)
        if (t_.norm[t_.pt(t_.S(yx, cc.cx), t_.S(yy, cc.cy))] == cc.r) {
          ok = false;
          break;
        }
      if (ok) out.push_back(y);
    }
  }

  // Circumcircle of three non-collinear points (odd characteristic).
  Circle circle(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    const std::uint32_t B = t_.diff(b, a), C = t_.diff(c, a);
    const std::uint8_t bx = t_.px[B], by = t_.py[B], cx = t_.px[C], cy = t_.py[C];
    const std::uint8_t det = t_.S(t_.M(bx, cy), t_.M(by, cx));
    const std::uint8_t k = t_.inv[t_.A(det, det)];
    const std::uint8_t nb = t_.norm[B], nc = t_.norm[C];
    const std::uint8_t ox = t_.M(t_.S(t_.M(nb, cy), t_.M(nc, by)), k);
    const std::uint8_t oy = t_.M(t_.S(t_.M(bx, nc), t_.M(cx, nb)), k);
    return {t_.A(ox, t_.px[a]), t_.A(oy, t_.py[a]), t_.norm[t_.pt(ox, oy)]};
  }

  void extend(const std::vector<std::uint32_t>& c) {
    ++nodes_;
    if (cfg_.progress && nodes_ - flushed_ >= cfg_.progress_interval) flush_progress();
    if (nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    record();
    if (c.empty()) return;
    const auto suffix = suffix_directions(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!admissible(P_.size() + suffix[i])) break;
      branch(c, i);
      if (aborted_) return;
    }
  }

  const FieldTables& t_;
  const SearchConfig& cfg_;
  Shared& shared_;
  std::uint64_t node_limit_;
  bool general_;
  CanonTester canon_;

  std::vector<std::uint32_t> P_;
  std::size_t best_ = 0;
  std::vector<std::vector<std::uint32_t>> witnesses_;
  std::uint64_t nodes_ = 0, flushed_ = 0, pruned_ = 0;
  bool aborted_ = false;
  std::vector<std::uint16_t> line_dirs_;
  std::vector<Circle> circles_;
};

PointSet to_point_set(const FieldTables& t, const std::vector<std::uint32_t>& pts) {
  PointSet out(t.ring);
  for (auto p : pts) out.insert(Point(t.ring, {t.px[p], t.py[p]}));
  return out;
}

std::vector<Point> sorted_points(const PointSet& s) {
  std::vector<Point> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

void sort_witnesses(std::vector<PointSet>& w) {
  std::stable_sort(w.begin(), w.end(),
                   [](const PointSet& a, const PointSet& b) { return sorted_points(a) < sorted_points(b); });
}

SearchResult backtrack_search(const SearchConfig& cfg) {
  check_field(cfg.ring);
  if (cfg.parallel_width == 0 || cfg.witness_limit == 0 || cfg.canon_triple_budget == 0)
    throw SearchError("search budgets must be positive");
  const auto start = Clock::now();
  const FieldTables t(cfg.ring, cfg.convention);

  std::vector<std::uint32_t> roots;
  for (std::uint32_t p = 0; p < t.n; ++p)
    if (t.px[p] != 0 && t.integral[p] && t.integral[t.diff(p, t.one)]) roots.push_back(p);
  std::sort(roots.begin(), roots.end(), [&](auto a, auto b) { return t.key[a] < t.key[b]; });

  const std::uint32_t width = cfg.parallel_width;
  const std::uint64_t total_limit = cfg.node_limit.value_or(std::numeric_limits<std::uint64_t>::max());
  const std::uint64_t per_worker = cfg.node_limit ? (total_limit + width - 1) / width : total_limit;

  Shared shared(cfg);
  std::vector<Worker> workers;
  workers.reserve(width);
  for (std::uint32_t w = 0; w < width; ++w) workers.emplace_back(t, cfg, shared, per_worker);
  if (width == 1) {
    workers[0].run(roots, 0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::uint32_t w = 0; w < width; ++w) threads.emplace_back([&, w] { workers[w].run(roots, w, width); });
    for (auto& th : threads) th.join();
  }

  SearchResult res;
  for (const auto& w : workers) {
    res.nodes_expanded += w.nodes();
    res.pruned_by_canon += w.pruned();
    res.complete = res.complete && !w.aborted();
    res.best_cardinality = std::max(res.best_cardinality, w.best());
  }
  for (const auto& w : workers)
    if (w.best() == res.best_cardinality)
      for (const auto& s : w.witnesses()) res.witnesses.push_back(to_point_set(t, s));
  sort_witnesses(res.witnesses);
  if (res.witnesses.size() > cfg.witness_limit) res.witnesses.erase(res.witnesses.begin() + cfg.witness_limit, res.witnesses.end());
  res.wall_time = Clock::now() - start;
  return res;
}

// Bitset maximum clique with greedy colouring bounds.
class CliqueSolver {
 public:
  using Word = std::uint64_t;

  CliqueSolver(std::size_t n, std::uint64_t node_limit) : n_(n), words_((n + 63) / 64), adj_(n * words_, 0), limit_(node_limit) {}

  void connect(std::size_t a, std::size_t b) {
    adj_[a * words_ + b / 64] |= Word{1} << (b % 64);
    adj_[b * words_ + a / 64] |= Word{1} << (a % 64);
  }

  std::vector<std::size_t> solve() {
    std::vector<Word> all(words_, 0);
    for (std::size_t v = 0; v < n_; ++v) all[v / 64] |= Word{1} << (v % 64);
    std::vector<std::size_t> current;
    expand(all, current);
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  void expand(std::vector<Word> P, std::vector<std::size_t>& C) {
    if (++nodes_ > limit_) {
      aborted_ = true;
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    std::vector<Word> U = P, Q(words_);
    std::size_t col = 0;
    auto any = [&](const std::vector<Word>& s) {
      for (auto w : s)
        if (w) return true;
      return false;
    };
    while (any(U)) {
      ++col;
      Q = U;
      for (std::size_t wi = 0; wi < words_; ++wi) {
        while (Q[wi]) {
          const std::size_t v = wi * 64 + static_cast<std::size_t>(__builtin_ctzll(Q[wi]));
          Q[wi] &= Q[wi] - 1;
          U[v / 64] &= ~(Word{1} << (v % 64));
          const Word* nv = &adj_[v * words_];
          for (std::size_t k = wi; k < words_; ++k) Q[k] &= ~nv[k];
          order.push_back(v);
          colour.push_back(col);
        }
      }
    }
    std::vector<Word> NP(words_);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (C.size() + colour[i] <= best_.size()) return;
      const std::size_t v = order[i];
      C.push_back(v);
      const Word* nv = &adj_[v * words_];
      bool nonempty = false;
      for (std::size_t k = 0; k < words_; ++k) nonempty |= (NP[k] = P[k] & nv[k]) != 0;
      if (!nonempty) {
        if (C.size() > best_.size()) best_ = C;
      } else {
        expand(NP, C);
      }
      C.pop_back();
      if (aborted_) return;
      P[v / 64] &= ~(Word{1} << (v % 64));
    }
  }

  std::size_t n_, words_;
  std::vector<Word> adj_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::size_t> best_;
};

}  // namespace

SearchResult clique_search(const SearchConfig& cfg) {
  const Ring& r = cfg.ring;
  const std::uint64_t order = r.order();
  if (order * order > cfg.vertex_bound)
    throw SearchLimitError("clique search over " + r.spec() + " exceeds the vertex bound " + std::to_string(cfg.vertex_bound));
  const auto start = Clock::now();
  const Code m = r.order();
  auto integral = [&](Code dx, Code dy) { return is_integral_distance(r, r.add(r.sqr(dx), r.sqr(dy)), cfg.convention); };

  // Translation invariance: every maximum clique has a translate through the origin.
  std::vector<std::pair<Code, Code>> verts;
  for (Code x = 0; x < m; ++x)
    for (Code y = 0; y < m; ++y)
      if ((x != 0 || y != 0) && integral(x, y)) verts.emplace_back(x, y);
  std::vector<std::uint8_t> offset_ok(std::size_t{m} * m);
  for (Code x = 0; x < m; ++x)
    for (Code y = 0; y < m; ++y) offset_ok[std::size_t{x} * m + y] = integral(x, y);

  CliqueSolver solver(verts.size(), cfg.node_limit.value_or(std::numeric_limits<std::uint64_t>::max()));
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      if (offset_ok[std::size_t{r.sub(verts[a].first, verts[b].first)} * m + r.sub(verts[a].second, verts[b].second)])
        solver.connect(a, b);
  const auto clique = solver.solve();

  SearchResult res;
  PointSet w(r);
  w.insert(Point(r, {0, 0}));
  for (auto v : clique) w.insert(Point(r, {verts[v].first, verts[v].second}));
  res.best_cardinality = w.size();
  res.witnesses.push_back(std::move(w));
  res.nodes_expanded = solver.nodes();
  res.complete = !solver.aborted();
  res.wall_time = Clock::now() - start;
  if (cfg.progress) cfg.progress(res.nodes_expanded);
  return res;
}

SearchResult clique_search(const Ring& ring, Convention conv) {
  SearchConfig cfg(ring);
  cfg.mode = SearchMode::MaxIntegral;
  cfg.convention = conv;
  return clique_search(cfg);
}

SearchResult run_search(const SearchConfig& cfg) {
  if (cfg.mode == SearchMode::MaxIntegral) return clique_search(cfg);
  return backtrack_search(cfg);
}

std::uint32_t origin_direction_rank(const Point& p) {
  const Ring& r = p.ring();
  if (p.x() != 0) return r.mul(p.y(), *r.inv(p.x()));
  return p.y() != 0 ? r.order() : r.order() + 1;
}

bool precedes(const Point& a, const Point& b) {
  const auto da = origin_direction_rank(a), db = origin_direction_rank(b);
  if (da != db) return da < db;
  return a < b;
}

DirectionBuckets make_direction_buckets(const Ring& ring) {
  check_field(ring);
  DirectionBuckets out{ring, std::vector<std::vector<Point>>(ring.order() + 1)};
  for (Code x = 0; x < ring.order(); ++x)
    for (Code y = 0; y < ring.order(); ++y) {
      if (x == 0 && (y == 0 || y == ring.one())) continue;
      const Point p(ring, {x, y});
      out.buckets[origin_direction_rank(p)].push_back(p);
    }
  return out;
}

SearchState::SearchState(const Ring& ring, SearchMode mode, Convention conv)
    : ring_(ring), mode_(mode), conv_(conv), points_(ring), blocked_(std::size_t{ring.order()} * ring.order(), 0) {
  check_field(ring);
}

SearchState SearchState::seeded(const Ring& ring, SearchMode mode, Convention conv) {
  SearchState s(ring, mode, conv);
  s.push(Point(ring, {0, 0}));
  s.push(Point(ring, {0, ring.one()}));
  return s;
}

void SearchState::push(const Point& p) {
  const Code q = ring_.order();
  const auto& old = points_.points();
  std::vector<std::uint32_t> marks;
  for (Code x = 0; x < q; ++x)
    for (Code y = 0; y < q; ++y) {
      const Point c(ring_, {x, y});
      bool block = c == p || !delta(c, p, conv_);
      for (std::size_t a = 0; a < old.size() && !block; ++a) block = collinear(old[a], p, c);
      if (mode_ == SearchMode::MaxGeneralPosition)
        for (std::size_t a = 0; a < old.size() && !block; ++a)
          for (std::size_t b = a + 1; b < old.size() && !block; ++b) block = concircular(old[a], old[b], p, c);
      if (block) marks.push_back(x * q + y);
    }
  for (auto m : marks) ++blocked_[m];
  marks_.push_back(std::move(marks));
  points_.insert(p);
}

void SearchState::pop() {
  if (marks_.empty()) throw SearchError("pop on an empty search state");
  for (auto m : marks_.back()) --blocked_[m];
  marks_.pop_back();
  std::vector<Point> keep(points_.begin(), points_.end() - 1);
  points_ = PointSet(ring_, keep);
}

bool SearchState::blocked(const Point& p) const { return blocked_[std::size_t{p.x()} * ring_.order() + p.y()] != 0; }

std::uint64_t SearchState::state_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) { h = (h ^ v) * 1099511628211ull; };
  for (const auto& p : points_) {
    mix(p.x());
    mix(p.y());
  }
  for (auto b : blocked_) mix(b);
  return h;
}

bool canon_check(const PointSet& points, std::uint32_t triple_budget) {
  check_field(points.ring());
  if (points.size() < 3) return true;
  const FieldTables t(points.ring(), Convention::Default);
  std::vector<std::uint32_t> P;
  for (const auto& p : points) P.push_back(t.pt(p.x(), p.y()));
  const CanonTester tester{t, t.key[P[2]]};
  return tester.accept(P.data(), P.size(), triple_budget);
}

}  // namespace ipset
