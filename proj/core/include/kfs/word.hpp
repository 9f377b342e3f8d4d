#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kfs/errors.hpp"
#include "kfs/numeric.hpp"

namespace kfs {

using Symbol = std::uint8_t;  // 1-based: symbols take values 1..alphabet_size

// Finite word over the alphabet {1,...,n}, packed as a byte array. The empty
// word has length 0 and denotes the root cylinder.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  // Parses digit strings like "121"; only alphabets up to 9 symbols.
  static Word parse(std::string_view digits);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  Symbol last() const { return symbols_.back(); }

  // Drops the last symbol (the parent cylinder).
  Word parent() const;
  Word appended(Symbol s) const;
  Word concat(const Word& tail) const;
  bool is_prefix_of(const Word& other) const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(
        a.symbols_.begin(), a.symbols_.end(), b.symbols_.begin(),
        b.symbols_.end());
  }

 private:
  std::vector<Symbol> symbols_;
};

// All alphabet_size^length words in lexicographic order. Throws BudgetError
// before allocating when the count exceeds the budget.
std::vector<Word> enumerate_words(int alphabet_size, int length,
                                  const Budget& budget = {});

// Depth-first traversal without materialising the word list; emits words in
// lexicographic order. The visitor receives the symbol buffer of the current
// word.
void for_each_word(int alphabet_size, int length,
                   const std::function<void(std::span<const Symbol>)>& visit,
                   const Budget& budget = {});

// Birkhoff sum of a finite-range potential along omega, with the canonical
// continuation repeating the last symbol. `value` receives a block of `range`
// symbols.
double birkhoff_sum(
    int range, const std::function<double(std::span<const Symbol>)>& value,
    const Word& omega);

// Sup/inf evaluator contract: given a word, return an interval guaranteed to
// contain { S_{|w|} xi(w x) : x } for the potential xi in question. The
// partition construction below only inspects the interval.
using BirkhoffBounds = std::function<Interval(std::span<const Symbol>)>;

struct StoppingPartition {
  std::vector<Word> words;
  double threshold = 0.0;
};

// Gamma = { w : sup-Birkhoff(w) < threshold <= sup-Birkhoff(parent(w)) }.
// Requires every single-symbol sup to be strictly negative and a negative
// threshold, so that the partition is finite.
StoppingPartition stopping_partition(int alphabet_size,
                                     const BirkhoffBounds& bounds,
                                     double threshold,
                                     const Budget& budget = {});

}  // namespace kfs
