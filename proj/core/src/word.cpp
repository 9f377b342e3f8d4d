#include "kfs/word.hpp"

#include <algorithm>
#include <cmath>

namespace kfs {

Word Word::parse(std::string_view digits) {
  std::vector<Symbol> syms;
  syms.reserve(digits.size());
  for (char c : digits) {
    if (c < '1' || c > '9') throw ConfigError("Word::parse: digit expected");
    syms.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(std::move(syms));
}

Word Word::parent() const {
  if (empty()) throw ConfigError("Word::parent: empty word has no parent");
  std::vector<Symbol> syms(symbols_.begin(), symbols_.end() - 1);
  return Word(std::move(syms));
}

Word Word::appended(Symbol s) const {
  std::vector<Symbol> syms(symbols_);
  syms.push_back(s);
  return Word(std::move(syms));
}

Word Word::concat(const Word& tail) const {
  std::vector<Symbol> syms(symbols_);
  syms.insert(syms.end(), tail.symbols_.begin(), tail.symbols_.end());
  return Word(std::move(syms));
}

bool Word::is_prefix_of(const Word& other) const {
  if (size() > other.size()) return false;
  return std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string Word::str() const {
  if (empty()) return "-";
  std::string out;
  out.reserve(size());
  for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
  return out;
}

namespace {

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 2) {
    throw ConfigError("alphabet size must be at least 2");
  }
  if (alphabet_size > 255) {
    throw ConfigError("alphabet size exceeds symbol storage");
  }
}

// alphabet^length without overflow; saturates at max.
std::uint64_t word_count(int alphabet_size, int length) {
  std::uint64_t count = 1;
  for (int i = 0; i < length; ++i) {
    if (count > UINT64_MAX / static_cast<std::uint64_t>(alphabet_size)) {
      return UINT64_MAX;
    }
    count *= static_cast<std::uint64_t>(alphabet_size);
  }
  return count;
}

}  // namespace

void for_each_word(int alphabet_size, int length,
                   const std::function<void(std::span<const Symbol>)>& visit,
                   const Budget& budget) {
  check_alphabet(alphabet_size);
  if (length < 0) throw ConfigError("word length must be non-negative");
  const std::uint64_t total = word_count(alphabet_size, length);
  if (total > budget.max_words) {
    throw BudgetError("word enumeration exceeds budget: " +
                      std::to_string(total) + " > " +
                      std::to_string(budget.max_words));
  }
  std::vector<Symbol> buf(static_cast<std::size_t>(length), Symbol{1});
  if (length == 0) {
    visit(std::span<const Symbol>{});
    return;
  }
  while (true) {
    visit(buf);
    int pos = length - 1;
    while (pos >= 0 && buf[pos] == static_cast<Symbol>(alphabet_size)) {
      buf[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++buf[pos];
  }
}

std::vector<Word> enumerate_words(int alphabet_size, int length,
                                  const Budget& budget) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(
      std::min<std::uint64_t>(word_count(alphabet_size, length), 1u << 20)));
  for_each_word(
      alphabet_size, length,
      [&](std::span<const Symbol> syms) {
        out.emplace_back(std::vector<Symbol>(syms.begin(), syms.end()));
      },
      budget);
  return out;
}

double birkhoff_sum(
    int range, const std::function<double(std::span<const Symbol>)>& value,
    const Word& omega) {
  if (range < 1) throw ConfigError("birkhoff_sum: range must be >= 1");
  const std::size_t m = omega.size();
  if (m == 0) return 0.0;
  // Extend by repeating the last symbol so every length-`range` block is
  // defined.
  std::vector<Symbol> ext(omega.symbols().begin(), omega.symbols().end());
  ext.resize(m + static_cast<std::size_t>(range) - 1, omega.last());
  num::KahanSum sum;
  for (std::size_t k = 0; k < m; ++k) {
    sum.add(value(std::span<const Symbol>(ext.data() + k,
                                          static_cast<std::size_t>(range))));
  }
  return sum.value();
}

StoppingPartition stopping_partition(int alphabet_size,
                                     const BirkhoffBounds& bounds,
                                     double threshold, const Budget& budget) {
  check_alphabet(alphabet_size);
  if (!(threshold < 0.0)) {
    throw ConfigError("stopping_partition: threshold must be negative");
  }
  for (Symbol s = 1; s <= static_cast<Symbol>(alphabet_size); ++s) {
    const Symbol one[1] = {s};
    if (!(bounds(std::span<const Symbol>(one, 1)).hi < 0.0)) {
      throw ConfigError(
          "stopping_partition: per-symbol sup must be strictly negative "
          "(partition would be infinite)");
    }
  }
  StoppingPartition out;
  out.threshold = threshold;
  std::uint64_t visited = 0;
  std::vector<Symbol> buf;
  // Depth-first so memory stays proportional to the partition, not to
  // alphabet^depth.
  std::function<void()> descend = [&]() {
    for (Symbol s = 1; s <= static_cast<Symbol>(alphabet_size); ++s) {
      buf.push_back(s);
      if (++visited > budget.max_words) {
        throw BudgetError("stopping_partition: enumeration budget exceeded");
      }
      const double sup = bounds(buf).hi;
      if (sup < threshold) {
        out.words.emplace_back(std::vector<Symbol>(buf));
      } else {
        descend();
      }
      buf.pop_back();
    }
  };
  descend();
  return out;
}

}  // namespace kfs
