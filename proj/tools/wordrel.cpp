// Command-line front end.  Exit codes: 0 holds, 1 fails, 2 input error, 3 resource cap.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <regex>

#include "wordrel/automatic_rec.hpp"
#include "wordrel/dvpa_regular.hpp"
#include "wordrel/fixtures.hpp"
#include "wordrel/io.hpp"
#include "wordrel/omega_rec.hpp"
#include "wordrel/oracles.hpp"
#include "wordrel/reductions.hpp"
#include "wordrel/slender.hpp"

using namespace wordrel;
using json = nlohmann::json;

namespace {

enum Exit { kHolds = 0, kFails = 1, kInput = 2, kResource = 3, kInternal = 4 };

struct Report {
  json j = json::object();
  bool as_json = false;

  int finish(bool holds, const std::string& yes, const std::string& no) {
    j["holds"] = holds;
    j["verdict"] = holds ? yes : no;
    if (as_json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << j["verdict"].get<std::string>() << "\n";
      for (const auto& [k, v] : j.items())
        if (k != "verdict" && k != "holds") std::cout << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    return holds ? kHolds : kFails;
  }
};

std::string letters_text(const std::vector<Letter>& w) {
  bool single = std::all_of(w.begin(), w.end(), [](const Letter& x) { return x.size() == 1; });
  std::string r;
  for (std::size_t i = 0; i < w.size(); ++i) r += (single || i == 0 ? "" : " ") + w[i];
  return r;
}

std::vector<Letter> spelled(const Alphabet& al, const Word& w) {
  std::vector<Letter> r;
  for (int x : w) r.push_back(al.name(x));
  return r;
}

// "abc" is three letters; "ab c" is two.
std::vector<Letter> split_word(const std::string& s) {
  std::vector<Letter> r;
  if (s.find(' ') == std::string::npos) {
    for (char c : s) r.emplace_back(1, c);
  } else {
    std::istringstream in(s);
    for (std::string x; in >> x;) r.push_back(x);
  }
  return r;
}

json config_json(const Dvpa& d, const Configuration& c) {
  return letters_text(config_word(d, c));
}

json witness_json(const Dvpa& completed, const PairVerdict& v) {
  json w;
  w["left"] = config_json(completed, *v.left);
  w["right"] = config_json(completed, *v.right);
  if (v.separator) w["separator"] = letters_text(spelled(completed.alphabet(), *v.separator));
  return w;
}

std::map<std::string, std::function<Machine()>> fixture_table() {
  return {
      {"eq2", [] { return fixtures::eq2(); }},
      {"tot2", [] { return fixtures::tot2(); }},
      {"len1", [] { return fixtures::len1(); }},
      {"eq-omega", [] { return fixtures::eq_omega(); }},
      {"full-omega", [] { return fixtures::full_omega(); }},
      {"head-omega", [] { return fixtures::head_omega(); }},
      {"cr", [] { return fixtures::cr(); }},
      {"crx", [] { return fixtures::crx(); }},
      {"cnrn", [] { return fixtures::cnrn(); }},
      {"gr", [] { return fixtures::gr(); }},
      {"gs", [] { return fixtures::gs(); }},
      {"astar-hash-bstar", [] { return fixtures::astar_hash_bstar(); }},
      {"astar-b", [] { return fixtures::astar_b(); }},
  };
}

Nfa as_nfa(const MachineFile& f) {
  if (const auto* d = std::get_if<Dfa>(&f.machine)) return d->to_nfa();
  return machine_as<Nfa>(f);
}

// Lasso pair over a tuple alphabet, unrolled to a common prefix and period.
UPWord zip_lassos(const Alphabet& al, const std::vector<LetterLasso>& ls) {
  std::size_t pre = 0, per = 1;
  for (const auto& l : ls) {
    pre = std::max(pre, l.u.size());
    per = std::lcm(per, l.v.size());
  }
  auto at = [](const LetterLasso& l, std::size_t i) -> const Letter& {
    return i < l.u.size() ? l.u[i] : l.v[(i - l.u.size()) % l.v.size()];
  };
  UPWord w;
  for (std::size_t i = 0; i < pre + per; ++i) {
    Symbol s;
    for (const auto& l : ls) s.push_back(at(l, i));
    (i < pre ? w.u : w.v).push_back(al.at(s));
  }
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for automatic and rational word relations"};
  app.require_subcommand(1);
  std::string report = "text";
  std::size_t budget = 0;
  app.add_option("--report", report, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", budget, "state budget (default: $WORDREL_STATE_BUDGET or 1000000)");

  std::string file, file2, prefix, left, right, name;
  std::vector<std::string> inputs;
  bool explicit_product = false, no_separator = false;

  auto* reg = app.add_subcommand("check-regular", "is the language of a dvpa regular");
  reg->add_option("FILE", file)->required();
  reg->add_flag("--explicit", explicit_product, "use the explicit transducer product");
  reg->add_flag("--no-separator", no_separator, "skip the separating word");
  auto* rec = app.add_subcommand("check-recognizable", "is a binary sync relation recognizable");
  rec->add_option("FILE", file)->required();
  auto* orec = app.add_subcommand("check-omega-recognizable", "is a parity relation omega-recognizable");
  orec->add_option("FILE", file)->required();
  auto* sl = app.add_subcommand("slender", "is the language of an nfa slender");
  sl->add_option("FILE", file)->required();
  auto* gad = app.add_subcommand("equiv-gadget", "build B_R and B_S from two det transducers");
  gad->add_option("FILE_R", file)->required();
  gad->add_option("FILE_S", file2)->required();
  gad->add_option("-o,--output", prefix, "writes PREFIX_R.wr and PREFIX_S.wr")->required();
  auto* run = app.add_subcommand("run", "evaluate a machine on a finite input (one --input per tape)");
  run->add_option("FILE", file)->required();
  run->add_option("--input", inputs)->required()->expected(1, -1)->allow_extra_args(false);
  auto* lasso = app.add_subcommand("run-lasso", "evaluate a det-buchi or parity machine on a lasso pair");
  lasso->add_option("FILE", file)->required();
  lasso->add_option("--left", left, "u(v)^w")->required();
  lasso->add_option("--right", right, "u(v)^w")->required();
  auto* ora = app.add_subcommand("oracle", "independent checks: brute-slender, ccg06, explicit-regular");
  ora->add_option("NAME", name)->required()->check(CLI::IsMember({"brute-slender", "ccg06", "explicit-regular"}));
  ora->add_option("FILE", file)->required();
  auto* fix = app.add_subcommand("fixtures", "print a built-in machine (or 'list'); R<n> for the R_n family");
  fix->add_option("NAME", name)->required();
  fix->add_option("-o,--output", prefix, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  Report out;
  out.as_json = report == "json";
  auto fail = [&](const char* kind, const std::string& msg, int code) {
    if (out.as_json) std::cout << json{{"error", kind}, {"message", msg}}.dump(2) << "\n";
    else std::cerr << "error: " << msg << "\n";
    return code;
  };
  try {
    if (budget == 0)
      if (const char* env = std::getenv("WORDREL_STATE_BUDGET")) {
        try {
          budget = std::stoull(env);
        } catch (const std::exception&) {
          throw InputError("WORDREL_STATE_BUDGET is not a number");
        }
      }
    if (budget) set_state_budget(budget);
    auto start = std::chrono::steady_clock::now();
    auto stamp = [&] {
      out.j["time_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    out.j["command"] = app.get_subcommands()[0]->get_name();

    if (*reg) {
      Dvpa d = machine_as<Dvpa>(read_machine_file(file));
      PairVerdict v = explicit_product ? is_regular_explicit(d) : is_regular(d, {!no_separator});
      stamp();
      out.j["states"] = v.states;
      out.j["depth_bound"] = v.m;
      out.j["explored"] = v.explored;
      out.j["detail"] = v.detail;
      if (!v.holds) out.j["witness"] = witness_json(complete_dvpa(d), v);
      return out.finish(v.holds, "regular", "not regular");
    }
    if (*rec) {
      SyncTransducer t = machine_as<SyncTransducer>(read_machine_file(file));
      RecognizabilityVerdict v = is_recognizable(t);
      stamp();
      out.j["lr_states"] = v.lr_states;
      out.j["lr_stack"] = v.lr_stack;
      out.j["detail"] = v.detail;
      if (!v.holds) out.j["witness"] = witness_json(complete_dvpa(build_LR_dvpa(disjointify(t)).dvpa), v.regularity);
      return out.finish(v.holds, "recognizable", "not recognizable");
    }
    if (*orec) {
      ParityTransducer p = machine_as<ParityTransducer>(read_machine_file(file));
      OmegaRecVerdict v = is_omega_recognizable(p);
      stamp();
      out.j["ebar_states"] = v.ebar_states;
      out.j["profiles"] = v.profiles;
      out.j["detail"] = v.detail;
      if (!v.holds) {
        const IndexVerdict& iv = v.per_j.back();
        json w{{"j", v.failing_j.value_or(0)}, {"factor", iv.factor.value_or(-1)}, {"in_prefix", iv.in_prefix}};
        if (iv.witness) {
          Alphabet al = Alphabet::atomic(iv.alphabet);
          for (const Word& x : pump_witness(*iv.witness, 2)) w["pumped"].push_back(letters_text(spelled(al, x)));
        }
        out.j["witness"] = w;
      }
      return out.finish(v.holds, "omega-recognizable", "not omega-recognizable");
    }
    if (*sl) {
      Nfa a = as_nfa(read_machine_file(file));
      SlenderVerdict v = is_slender(a);
      stamp();
      out.j["states"] = a.size();
      if (v.witness) {
        json w;
        for (const Word& x : pump_witness(*v.witness, 3)) w["words"].push_back(letters_text(spelled(a.alphabet, x)));
        w["replayed"] = replay_witness(a, *v.witness);
        out.j["witness"] = w;
      }
      return out.finish(v.holds, "slender", "not slender");
    }
    if (*gad) {
      GadgetPair g = build_gadget(machine_as<DetTransducer>(read_machine_file(file)),
                                  machine_as<DetTransducer>(read_machine_file(file2)));
      write_machine_file(prefix + "_R.wr", machine_file(g.br, "B_R"));
      write_machine_file(prefix + "_S.wr", machine_file(g.bs, "B_S"));
      stamp();
      out.j["states"] = g.br.size();
      out.j["files"] = {prefix + "_R.wr", prefix + "_S.wr"};
      return out.finish(true, "written", "");
    }
    if (*run) {
      MachineFile f = read_machine_file(file);
      std::vector<std::vector<Letter>> ws;
      for (const auto& s : inputs) ws.push_back(split_word(s));
      auto one = [&](const char* kind) {
        if (ws.size() != 1) throw InputError(std::string(kind) + " machines take one --input");
        return ws[0];
      };
      bool acc = false;
      if (f.kind == "nfa" || f.kind == "dfa") {
        Nfa a = as_nfa(f);
        acc = accepts(a, make_word(a.alphabet, one("finite automaton")));
      } else if (f.kind == "sync") {
        acc = sync_accepts(machine_as<SyncTransducer>(f), ws);
      } else if (f.kind == "det") {
        acc = det_accepts(machine_as<DetTransducer>(f), ws);
      } else if (f.kind == "dvpa") {
        const Dvpa& d = machine_as<Dvpa>(f);
        acc = dvpa_accepts(d, make_word(d.alphabet(), one("dvpa")));
      } else {
        throw InputError("run: use run-lasso for " + f.kind + " machines");
      }
      stamp();
      return out.finish(acc, "accepted", "rejected");
    }
    if (*lasso) {
      MachineFile f = read_machine_file(file);
      std::vector<LetterLasso> ls{parse_letter_lasso(left), parse_letter_lasso(right)};
      bool acc = false;
      if (f.kind == "det-buchi" || f.kind == "det") {
        DetBuchiTransducer b;
        if (f.kind == "det") static_cast<DetTransducer&>(b) = machine_as<DetTransducer>(f);
        else b = machine_as<DetBuchiTransducer>(f);
        acc = det_buchi_lasso_accepts(b, ls[0], ls[1]);
      } else if (f.kind == "parity") {
        const ParityTransducer& p = machine_as<ParityTransducer>(f);
        if (p.arity() != 2) throw InputError("run-lasso: parity machine must have two tapes");
        acc = parity_lasso_accepts(p, zip_lassos(p.alphabet, ls));
      } else {
        throw InputError("run-lasso: expected a det-buchi or parity machine");
      }
      stamp();
      return out.finish(acc, "accepted", "rejected");
    }
    if (*ora) {
      MachineFile f = read_machine_file(file);
      bool holds = false;
      std::string yes, no;
      if (name == "brute-slender") {
        holds = brute_slender(as_nfa(f));
        yes = "slender", no = "not slender";
      } else if (name == "ccg06") {
        holds = ccg06_recognizable(machine_as<SyncTransducer>(f));
        yes = "recognizable", no = "not recognizable";
      } else {
        holds = is_regular_explicit(machine_as<Dvpa>(f)).holds;
        yes = "regular", no = "not regular";
      }
      stamp();
      out.j["oracle"] = name;
      return out.finish(holds, yes, no);
    }
    if (*fix) {
      auto table = fixture_table();
      if (name == "list") {
        for (const auto& [k, v] : table) std::cout << k << "\n";
        std::cout << "R<n>\n";
        return kHolds;
      }
      MachineFile m;
      std::smatch rn;
      if (std::regex_match(name, rn, std::regex("R([0-9]{1,3})"))) {
        m = machine_file(generate_Rn(std::stoi(rn[1])), name);
      } else {
        auto it = table.find(name);
        if (it == table.end()) throw InputError("unknown fixture '" + name + "'; try 'fixtures list'");
        m = machine_file(it->second(), name);
      }
      if (prefix.empty()) std::cout << serialize(m);
      else write_machine_file(prefix, m);
      return kHolds;
    }
  } catch (const InputError& e) {
    return fail("input", e.what(), kInput);
  } catch (const ResourceError& e) {
    return fail("resource", e.what(), kResource);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInternal);
  }
  return kInput;
}
