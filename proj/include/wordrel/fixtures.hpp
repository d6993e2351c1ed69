#pragma once

#include <string>
#include <vector>

#include "wordrel/omega.hpp"
#include "wordrel/transducer.hpp"
#include "wordrel/vpa.hpp"

namespace wordrel::fixtures {

// Synchronous relations over {a,b} x {a,b}.
SyncTransducer eq2();   // equality
SyncTransducer tot2();  // all pairs
SyncTransducer len1();  // (a^n, b^n)

// Complete parity machines over {a,b} x {a,b}.
ParityTransducer eq_omega();
ParityTransducer full_omega();
ParityTransducer head_omega();  // first letters agree

Dvpa cr();    // accepts c*r*
Dvpa crx();   // bottom pops replaced by an internal letter "ar" on the empty stack
Dvpa cnrn();  // no bottom pops

// Deterministic transducers over {a,b} x {a,b} with endmarker #.
DetTransducer gr();  // {(a,b)}
DetTransducer gs();  // {(aa,b)}

Nfa astar_hash_bstar();  // a*#b*
Nfa astar_b();           // a*b

}  // namespace wordrel::fixtures
