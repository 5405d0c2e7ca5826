#include "topsurg/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "topsurg/error.hpp"

namespace topsurg {

namespace {
// Runs at least this long are written as x^k.
constexpr std::int64_t kPowerThreshold = 4;
}  // namespace

Word Word::letter(int gen, int sign) { return power(gen, sign); }

Word Word::power(int gen, std::int64_t exp) {
  Word w;
  w.append(gen, exp);
  return w;
}

Word Word::from_letters(const std::vector<Letter>& letters) {
  Word w;
  for (const auto& l : letters) w.append(l.gen, l.sign);
  return w;
}

Word& Word::append(int gen, std::int64_t exp) {
  if (gen < 0) throw Error(ErrorKind::InvalidArgument, "negative generator index");
  if (exp == 0) return *this;
  // Same-sign runs of one generator coalesce; opposite signs stay separate
  // until free_reduce.
  if (!runs_.empty() && runs_.back().gen == gen && (runs_.back().exp > 0) == (exp > 0)) {
    runs_.back().exp += exp;
  } else {
    runs_.push_back({gen, exp});
  }
  return *this;
}

Word& Word::append(const Word& w) {
  for (const auto& r : w.runs_) append(r.gen, r.exp);
  return *this;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  for (const auto& r : runs_) {
    const int sign = r.exp > 0 ? 1 : -1;
    for (std::int64_t k = 0; k < std::abs(r.exp); ++k) out.push_back({r.gen, sign});
  }
  return out;
}

bool Word::empty() const { return free_reduce(*this).runs_.empty(); }

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const auto& r : runs_) n += std::abs(r.exp);
  return n;
}

std::int64_t Word::exponent_sum() const {
  std::int64_t n = 0;
  for (const auto& r : runs_) n += r.exp;
  return n;
}

std::int64_t Word::exponent_sum(int gen) const {
  std::int64_t n = 0;
  for (const auto& r : runs_) {
    if (r.gen == gen) n += r.exp;
  }
  return n;
}

std::int64_t Word::occurrences(int gen) const {
  std::int64_t n = 0;
  for (const auto& r : runs_) {
    if (r.gen == gen) n += std::abs(r.exp);
  }
  return n;
}

int Word::max_generator() const {
  int g = -1;
  for (const auto& r : runs_) g = std::max(g, r.gen);
  return g;
}

Word Word::inverse() const {
  Word w;
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.append(it->gen, -it->exp);
  return w;
}

bool operator==(const Word& a, const Word& b) {
  return free_reduce(a).runs_ == free_reduce(b).runs_;
}

Word free_reduce(const Word& w) {
  std::vector<Word::Run> stack;
  for (const auto& r : w.runs()) {
    if (!stack.empty() && stack.back().gen == r.gen) {
      stack.back().exp += r.exp;
      if (stack.back().exp == 0) stack.pop_back();
    } else {
      stack.push_back(r);
    }
  }
  Word out;
  for (const auto& r : stack) out.append(r.gen, r.exp);
  return out;
}

Word cyclic_reduce(const Word& w) {
  std::vector<Word::Run> runs = free_reduce(w).runs();
  while (runs.size() >= 2 && runs.front().gen == runs.back().gen) {
    const std::int64_t total = runs.front().exp + runs.back().exp;
    runs.pop_back();
    if (total == 0) {
      runs.erase(runs.begin());
    } else {
      runs.front().exp = total;
    }
  }
  Word out;
  for (const auto& r : runs) out.append(r.gen, r.exp);
  return out;
}

Word substitute(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (const auto& r : w.runs()) {
    if (r.gen >= static_cast<int>(images.size())) {
      throw Error(ErrorKind::UnknownGenerator, "generator index outside substitution");
    }
    const Word piece = r.exp > 0 ? images[r.gen] : images[r.gen].inverse();
    for (std::int64_t k = 0; k < std::abs(r.exp); ++k) out.append(piece);
  }
  return free_reduce(out);
}

std::string to_text(const Word& w, const std::vector<std::string>& names) {
  const Word r = free_reduce(w);
  if (r.runs().empty()) return "1";
  std::string out;
  for (const auto& run : r.runs()) {
    if (run.gen >= static_cast<int>(names.size())) {
      throw Error(ErrorKind::UnknownGenerator, "word uses a generator without a name");
    }
    std::string name = names[run.gen];
    if (run.exp < 0) {
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    }
    const std::int64_t count = std::abs(run.exp);
    if (count >= kPowerThreshold) {
      if (!out.empty()) out += ' ';
      out += name + "^" + std::to_string(count);
      continue;
    }
    for (std::int64_t k = 0; k < count; ++k) {
      if (!out.empty()) out += ' ';
      out += name;
    }
  }
  return out;
}

}  // namespace topsurg
