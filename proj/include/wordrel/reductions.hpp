#pragma once

#include <string>
#include <vector>

#include "wordrel/transducer.hpp"

namespace wordrel {

// Initial state without incoming edges; a unique accepting state and a unique rejecting
// state, both entered only by the endmarker that closes the last open tape and both
// without outgoing edges.
struct NormalForm {
  DetTransducer t;
  int accept = -1, reject = -1;
};
NormalForm normalize(const DetTransducer& a);

// Deterministic transducer on infinite words; `accepting` is the Büchi set.
struct DetBuchiTransducer : DetTransducer {};

struct GadgetPair {
  DetBuchiTransducer br, bs;  // same structure, initial states differ
  int offset = 0;             // first state of the S copy
  int qa_r = -1, qr_r = -1, qa_s = -1, qr_s = -1;
};
GadgetPair build_gadget(const NormalForm& r, const NormalForm& s);
GadgetPair build_gadget(const DetTransducer& r, const DetTransducer& s);

// u v^ω over tape letters (the endmarker counts as an ordinary letter).
struct LetterLasso {
  std::vector<Letter> u, v;
};
// Parses "u(v)" with single-character letters, or space-separated letters "a b ( c # )".
LetterLasso parse_letter_lasso(const std::string& text);

// The unique run must read both tapes unboundedly and visit the Büchi set infinitely often.
bool det_buchi_lasso_accepts(const DetBuchiTransducer& b, const LetterLasso& left,
                             const LetterLasso& right);

}  // namespace wordrel
