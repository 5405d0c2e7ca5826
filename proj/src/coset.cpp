#include "topsurg/analysis.hpp"

#include <deque>

#include "json.hpp"

#include "topsurg/error.hpp"

namespace topsurg {

namespace {

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t max_cosets)
      : cols_(2 * p.generator_count()), max_(max_cosets) {
    for (const auto& r : p.relators()) {
      std::vector<int> w;
      for (const auto& l : cyclic_reduce(r).letters()) w.push_back(2 * l.gen + (l.sign > 0 ? 0 : 1));
      if (!w.empty()) relators_.push_back(std::move(w));
    }
    add_row();
    defined_ = 1;
  }

  EnumerationResult run() {
    EnumerationResult result;
    std::size_t alpha = 0;
    while (alpha < rows()) {
      if (live(alpha) && !complete_row(alpha)) {
        lookahead();
        if (rows() >= max_) {
          result.outcome = EnumerationResult::Outcome::Inconclusive;
          result.cosets_used = defined_;
          return result;
        }
        alpha = remap_[alpha];
        continue;
      }
      ++alpha;
    }
    compact();
    result.outcome = EnumerationResult::Outcome::Finite;
    result.order = rows();
    result.cosets_used = defined_;
    result.table.generators = cols_ / 2;
    result.table.rows.reserve(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      result.table.rows.emplace_back(table_.begin() + r * cols_, table_.begin() + (r + 1) * cols_);
    }
    return result;
  }

 private:
  static int inv(int x) { return x ^ 1; }

  std::size_t rows() const { return parent_.size(); }
  bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }
  int& at(std::size_t c, int x) { return table_[c * cols_ + x]; }

  void add_row() {
    parent_.push_back(static_cast<int>(parent_.size()));
    table_.insert(table_.end(), cols_, -1);
  }

  // False when the table is full.
  bool define(int c, int x) {
    if (rows() >= max_) return false;
    const int d = static_cast<int>(rows());
    add_row();
    ++defined_;
    at(c, x) = d;
    at(d, inv(x)) = c;
    return true;
  }

  // Scans every relator at alpha, filling gaps, then defines any missing
  // entries of its row. False when it ran out of room.
  bool complete_row(std::size_t alpha) {
    const int a = static_cast<int>(alpha);
    for (const auto& w : relators_) {
      if (!scan(a, w, true)) return false;
      if (!live(alpha)) return true;
    }
    for (int x = 0; x < cols_; ++x) {
      if (!live(alpha)) return true;
      if (at(alpha, x) < 0 && !define(a, x)) return false;
    }
    return true;
  }

  // Scan of w at coset a. With fill, gaps are closed by new definitions;
  // without, the scan stops at the first gap longer than one letter.
  bool scan(int a, const std::vector<int>& w, bool fill) {
    int f = a;
    int b = a;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
      if (i > j) {
        if (f != a) coincidence(f, a);
        return true;
      }
      while (j >= i && at(b, inv(w[j])) >= 0) b = at(b, inv(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        at(f, w[i]) = b;
        at(b, inv(w[i])) = f;
        return true;
      }
      if (!fill) return true;
      if (!define(f, w[i])) return false;
    }
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b, std::deque<int>& queue) {
    const int ra = rep(a);
    const int rb = rep(b);
    if (ra == rb) return;
    const int lo = std::min(ra, rb);
    const int hi = std::max(ra, rb);
    parent_[hi] = lo;
    queue.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int g = queue.front();
      queue.pop_front();
      for (int x = 0; x < cols_; ++x) {
        const int d = at(g, x);
        if (d < 0) continue;
        at(g, x) = -1;
        if (at(d, inv(x)) == g) at(d, inv(x)) = -1;
        const int mu = rep(g);
        const int nu = rep(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x), queue);
        } else if (at(nu, inv(x)) >= 0) {
          merge(mu, at(nu, inv(x)), queue);
        } else {
          at(mu, x) = nu;
          at(nu, inv(x)) = mu;
        }
      }
    }
  }

  void lookahead() {
    for (std::size_t c = 0; c < rows(); ++c) {
      for (const auto& w : relators_) {
        if (!live(c)) break;
        scan(static_cast<int>(c), w, false);
      }
    }
    compact();
  }

  // Drops dead cosets, keeping the relative order of live ones.
  void compact() {
    remap_.assign(rows(), -1);
    int next = 0;
    for (std::size_t c = 0; c < rows(); ++c) {
      if (live(c)) remap_[c] = next++;
    }
    // Dead rows map to the image of their representative, so an index held
    // across compaction still lands on the same coset.
    for (std::size_t c = 0; c < rows(); ++c) {
      if (!live(c)) remap_[c] = remap_[rep(static_cast<int>(c))];
    }
    std::vector<int> table(static_cast<std::size_t>(next) * cols_, -1);
    for (std::size_t c = 0; c < rows(); ++c) {
      if (!live(c)) continue;
      for (int x = 0; x < cols_; ++x) {
        const int d = at(c, x);
        table[remap_[c] * cols_ + x] = d < 0 ? -1 : remap_[d];
      }
    }
    table_ = std::move(table);
    parent_.resize(next);
    for (int c = 0; c < next; ++c) parent_[c] = c;
  }

  int cols_;
  std::size_t max_;
  std::size_t defined_ = 0;
  std::vector<std::vector<int>> relators_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::vector<int> remap_;
};

}  // namespace

EnumerationResult todd_coxeter(const Presentation& p, std::size_t max_cosets) {
  if (max_cosets < 1) throw Error(ErrorKind::InvalidArgument, "max_cosets must be at least 1");
  return Enumerator(p, max_cosets).run();
}

std::string to_json(const EnumerationResult& r) {
  nlohmann::json j;
  j["cosets_used"] = r.cosets_used;
  if (r.finite()) {
    j["outcome"] = "finite";
    j["order"] = r.order;
  } else {
    j["outcome"] = "inconclusive";
  }
  return j.dump();
}

}  // namespace topsurg
