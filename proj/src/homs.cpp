#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <thread>

#include "json.hpp"

#include "topsurg/analysis.hpp"
#include "topsurg/error.hpp"

namespace topsurg {

namespace {

// S_n with elements indexed 0..n!-1 in lexicographic order; element 0 is the
// identity. Products compose left to right.
class SymmetricGroup {
 public:
  explicit SymmetricGroup(int n) : n_(n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int size = order();
    mul_.resize(static_cast<std::size_t>(size) * size);
    inv_.resize(size);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) c[i] = perms_[b][perms_[a][i]];
        mul_[static_cast<std::size_t>(a) * size + b] = index_of(c);
      }
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[perms_[a][i]] = i;
      inv_[a] = index_of(c);
    }
  }

  int order() const { return static_cast<int>(perms_.size()); }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order() + b]; }
  int inv(int a) const { return inv_[a]; }

  bool generates_all(const std::vector<int>& gens) const {
    std::vector<char> seen(order(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (int g : gens) {
        const int h = mul(queue[i], g);
        if (!seen[h]) {
          seen[h] = 1;
          queue.push_back(h);
        }
      }
    }
    return static_cast<int>(queue.size()) == order();
  }

 private:
  int index_of(const std::vector<int>& p) const {
    return static_cast<int>(std::lower_bound(perms_.begin(), perms_.end(), p) - perms_.begin());
  }

  int n_;
  std::vector<std::vector<int>> perms_;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

struct Counts {
  std::uint64_t homs = 0;
  std::uint64_t surjections = 0;
};

class HomSearch {
 public:
  HomSearch(const Presentation& p, const SymmetricGroup& sym, bool want_surjections)
      : sym_(sym), gens_(p.generator_count()), surj_(want_surjections), by_depth_(gens_) {
    for (const auto& r : p.relators()) {
      const Word w = free_reduce(r);
      const int top = w.max_generator();
      if (top < 0) continue;
      by_depth_[top].push_back(w.letters());
    }
  }

  Counts count_from(int first_value) const {
    Counts c;
    std::vector<int> image(gens_, 0);
    image[0] = first_value;
    if (satisfied(image, 0)) descend(image, 1, c);
    return c;
  }

  Counts count_all() const {
    Counts c;
    if (gens_ == 0) {
      c.homs = 1;
      c.surjections = sym_.order() == 1 ? 1 : 0;
      return c;
    }
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::future<Counts>> parts;
    for (unsigned w = 0; w < workers; ++w) {
      parts.push_back(std::async(std::launch::async, [this, w, workers]() {
        Counts local;
        for (int v = static_cast<int>(w); v < sym_.order(); v += static_cast<int>(workers)) {
          const Counts part = count_from(v);
          local.homs += part.homs;
          local.surjections += part.surjections;
        }
        return local;
      }));
    }
    for (auto& f : parts) {
      const Counts part = f.get();
      c.homs += part.homs;
      c.surjections += part.surjections;
    }
    return c;
  }

 private:
  bool satisfied(const std::vector<int>& image, int depth) const {
    for (const auto& letters : by_depth_[depth]) {
      int acc = 0;
      for (const auto& l : letters) {
        const int x = l.sign > 0 ? image[l.gen] : sym_.inv(image[l.gen]);
        acc = sym_.mul(acc, x);
      }
      if (acc != 0) return false;
    }
    return true;
  }

  void descend(std::vector<int>& image, int depth, Counts& c) const {
    if (depth == gens_) {
      ++c.homs;
      if (surj_ && sym_.generates_all(image)) ++c.surjections;
      return;
    }
    for (int v = 0; v < sym_.order(); ++v) {
      image[depth] = v;
      if (satisfied(image, depth)) descend(image, depth + 1, c);
    }
  }

  const SymmetricGroup& sym_;
  int gens_;
  bool surj_;
  std::vector<std::vector<std::vector<Letter>>> by_depth_;
};

Counts run_search(const Presentation& p, int n, double budget, bool surjections) {
  if (n < 1 || n > 6) {
    throw Error(ErrorKind::SearchTooLarge, "symmetric group degree must be between 1 and 6");
  }
  double factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= k;
  const double space = std::pow(factorial, p.generator_count());
  if (space > budget) {
    throw Error(ErrorKind::SearchTooLarge,
                "search space n!^generators = " + std::to_string(space) +
                    " exceeds the budget; eliminate generators first (tietze_eliminate)");
  }
  const SymmetricGroup sym(n);
  return HomSearch(p, sym, surjections).count_all();
}

}  // namespace

std::uint64_t count_homs(const Presentation& p, int n, double budget) {
  return run_search(p, n, budget, false).homs;
}

std::uint64_t count_surjections(const Presentation& p, int n, double budget) {
  return run_search(p, n, budget, true).surjections;
}

Verdict distinguish(const Presentation& p1, const Presentation& p2, std::size_t max_cosets) {
  const auto ab1 = abelianize(p1);
  const auto ab2 = abelianize(p2);
  if (!(ab1 == ab2)) {
    return {true, "abelianization " + to_string(ab1) + " vs " + to_string(ab2)};
  }
  const Presentation q1 = tietze_eliminate(p1);
  const Presentation q2 = tietze_eliminate(p2);
  for (int n : {2, 3, 4}) {
    std::uint64_t h1 = 0, h2 = 0;
    try {
      h1 = count_homs(q1, n);
      h2 = count_homs(q2, n);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SearchTooLarge) continue;
      throw;
    }
    if (h1 != h2) {
      return {true, "homomorphisms to S" + std::to_string(n) + ": " + std::to_string(h1) + " vs " +
                        std::to_string(h2)};
    }
  }
  const auto e1 = todd_coxeter(q1, max_cosets);
  if (e1.finite()) {
    const auto e2 = todd_coxeter(q2, max_cosets);
    if (e2.finite() && e1.order != e2.order) {
      return {true, "order " + std::to_string(e1.order) + " vs " + std::to_string(e2.order)};
    }
  }
  return {false, ""};
}

std::string to_json(const Verdict& v) {
  nlohmann::json j;
  j["verdict"] = v.different ? "different" : "indistinguishable";
  if (v.different) j["witness"] = v.witness;
  return j.dump();
}

}  // namespace topsurg
