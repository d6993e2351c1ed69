#include "wordrel/alphabet.hpp"

#include <atomic>
#include <set>

namespace wordrel {

namespace {
std::atomic<std::size_t> g_budget{1000000};
}

std::size_t state_budget() { return g_budget.load(); }
void set_state_budget(std::size_t n) { g_budget.store(n); }

void check_budget(std::size_t count, std::size_t budget, const char* what) {
  if (count > budget)
    throw ResourceError(std::string(what) + ": state budget of " + std::to_string(budget) +
                        " exceeded");
}

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (int i = 0; i < size(); ++i) {
    const Symbol& s = symbols_[i];
    if (s.empty()) throw InputError("empty symbol");
    if (s.size() != symbols_[0].size()) throw InputError("mixed symbol arities");
    for (const Letter& l : s)
      if (l == kEpsName) throw InputError("reserved symbol '" + kEpsName + "' in alphabet");
    if (!index_.emplace(s, i).second) throw InputError("duplicate symbol " + name(i));
  }
}

Alphabet Alphabet::atomic(const std::vector<Letter>& letters) {
  std::vector<Symbol> s;
  s.reserve(letters.size());
  for (const auto& l : letters) s.push_back({l});
  return Alphabet(std::move(s));
}

Alphabet Alphabet::product(const std::vector<std::vector<Letter>>& comps) {
  std::vector<Symbol> out{Symbol{}};
  for (const auto& c : comps) {
    std::vector<Symbol> next;
    for (const auto& pre : out)
      for (const auto& l : c) {
        Symbol s = pre;
        s.push_back(l);
        next.push_back(std::move(s));
      }
    out = std::move(next);
  }
  if (comps.empty()) out.clear();
  return Alphabet(std::move(out));
}

int Alphabet::index(const Symbol& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

int Alphabet::at(const Symbol& s) const {
  int i = index(s);
  if (i < 0) {
    std::string n;
    for (std::size_t k = 0; k < s.size(); ++k) n += (k ? "|" : "") + s[k];
    throw InputError("unknown symbol '" + n + "'");
  }
  return i;
}

std::vector<std::vector<Letter>> Alphabet::components() const {
  std::vector<std::vector<Letter>> out(arity());
  std::vector<std::set<Letter>> seen(arity());
  for (const auto& s : symbols_)
    for (int k = 0; k < arity(); ++k)
      if (seen[k].insert(s[k]).second) out[k].push_back(s[k]);
  return out;
}

std::string Alphabet::name(int i) const {
  if (i == kEpsilon) return kEpsName;
  std::string n;
  const Symbol& s = symbols_.at(i);
  for (std::size_t k = 0; k < s.size(); ++k) n += (k ? "|" : "") + s[k];
  return n;
}

Word make_word(const Alphabet& a, const std::vector<Letter>& letters) {
  Word w;
  w.reserve(letters.size());
  for (const auto& l : letters) w.push_back(a.at(l));
  return w;
}

Word word_of(const Alphabet& a, const std::string& chars) {
  Word w;
  for (char c : chars) w.push_back(a.at(std::string(1, c)));
  return w;
}

std::string word_name(const Alphabet& a, const Word& w, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += a.name(w[i]);
  }
  return out;
}

}  // namespace wordrel
