#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wordrel {

using Letter = std::string;
using Symbol = std::vector<Letter>;  // size 1 for atomic symbols
using Word = std::vector<int>;       // symbol indices

inline constexpr int kEpsilon = -1;
inline const Letter kPad = "_";
inline const Letter kEpsName = "eps";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Global cap on the number of states any exponential construction may create.
std::size_t state_budget();
void set_state_budget(std::size_t n);

// Throws ResourceError when `count` exceeds `budget`.
void check_budget(std::size_t count, std::size_t budget, const char* what);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols);

  static Alphabet atomic(const std::vector<Letter>& letters);
  // Full product of component alphabets; pads are not added here.
  static Alphabet product(const std::vector<std::vector<Letter>>& comps);

  int size() const { return static_cast<int>(symbols_.size()); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& symbol(int i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  int index(const Symbol& s) const;  // -1 when absent
  int at(const Symbol& s) const;     // throws InputError when absent
  int index(const Letter& a) const { return index(Symbol{a}); }
  int at(const Letter& a) const { return at(Symbol{a}); }
  int arity() const { return symbols_.empty() ? 0 : static_cast<int>(symbols_[0].size()); }

  // Per-position letters in order of first appearance.
  std::vector<std::vector<Letter>> components() const;

  std::string name(int i) const;  // "a" or "a|b"

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

 private:
  std::vector<Symbol> symbols_;
  std::map<Symbol, int> index_;
};

// Converts letters to symbol ids of an atomic alphabet.
Word make_word(const Alphabet& a, const std::vector<Letter>& letters);
// Splits a string into single-character letters.
Word word_of(const Alphabet& a, const std::string& chars);
std::string word_name(const Alphabet& a, const Word& w, const char* sep = "");

// Enumerates all words of length exactly n over `k` symbols in lexicographic order.
template <class F>
void for_each_word(int k, int n, F&& f) {
  Word w(n, 0);
  if (k == 0 && n > 0) return;
  for (;;) {
    f(static_cast<const Word&>(w));
    int i = n - 1;
    while (i >= 0 && w[i] == k - 1) w[i--] = 0;
    if (i < 0) return;
    ++w[i];
  }
}

template <class F>
void for_each_word_upto(int k, int maxlen, F&& f) {
  for (int n = 0; n <= maxlen; ++n) for_each_word(k, n, f);
}

}  // namespace wordrel
