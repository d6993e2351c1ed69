#pragma once

#include <string>
#include <variant>

#include "wordrel/nfa.hpp"
#include "wordrel/omega.hpp"
#include "wordrel/reductions.hpp"
#include "wordrel/transducer.hpp"
#include "wordrel/vpa.hpp"

namespace wordrel {

// Line and column are 1-based; column 0 means the whole line.
struct ParseError : InputError {
  ParseError(int line, int column, const std::string& msg);
  int line, column;
};

using Machine =
    std::variant<Nfa, Dfa, SyncTransducer, DetTransducer, DetBuchiTransducer, ParityTransducer, Dvpa>;

struct MachineFile {
  std::string kind;  // nfa dfa sync det det-buchi parity dvpa
  std::string name;
  Machine machine;
};

MachineFile parse_machine(const std::string& text);
std::string serialize(const MachineFile& m);

MachineFile read_machine_file(const std::string& path);
void write_machine_file(const std::string& path, const MachineFile& m);

// Kind tag of each alternative.
std::string kind_of(const Machine& m);
MachineFile machine_file(Machine m, std::string name);

template <class T>
const T& machine_as(const MachineFile& f) {
  if (const T* p = std::get_if<T>(&f.machine)) return *p;
  throw InputError("machine '" + f.name + "' has the wrong kind (" + f.kind + ")");
}

}  // namespace wordrel
