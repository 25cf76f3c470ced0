#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vaf/document.hpp"
#include "vaf/random.hpp"

namespace vaf::cli {

/// Exit statuses of run_command.
enum Status : int { kOk = 0, kNo = 1, kUsage = 2, kResource = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document load(const std::string& path) {
  try {
    return parse_document(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

inline nlohmann::json count_json(const Count& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(c);
  return c.str();
}

inline std::string show_word(const Semiautomaton& a, const Word& w) {
  return w.empty() ? "<empty>" : a.word_to_string(w);
}

inline std::string describe_path(const Semiautomaton& a, const Path& p) {
  std::string out = a.state_name(a.origin(p));
  for (std::size_t t : p.transitions) out += " -" + a.symbol_name(a.transition(t).symbol) + "-> " + a.state_name(a.transition(t).to);
  return out;
}

inline nlohmann::json witness_json(const Semiautomaton& a, const AmbiguityWitness& w) {
  return {{"label", a.word_to_string(w.label)}, {"first", describe_path(a, w.first)}, {"second", describe_path(a, w.second)}};
}

inline const Semiautomaton& automaton_of(const Document& doc) {
  switch (doc.kind) {
    case Document::Kind::vaf: return doc.vaf().automaton();
    case Document::Kind::wa: return doc.wa().automaton();
    case Document::Kind::pa: return doc.pa().automaton();
    case Document::Kind::apa: return doc.apa().automaton();
    default: throw Error("a " + std::string(to_string(doc.kind)) + " document has no automaton");
  }
}

struct Options {
  std::string file;
  std::string word;
  std::string word_file;
  std::string format = "text";
  std::size_t max_paths = kDefaultMaxPaths;
  std::size_t max_frontier = 1'000'000;
  std::size_t maxlen = 4;
  std::string zero = "0";
  std::string vector;
  std::string translation;
  std::string aggregate = "max";
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  bool bruteforce = false;

  EvalLimits limits() const { return {max_paths, max_frontier}; }
  bool json() const { return format == "json"; }
};

/// Result for one word of any evaluable document.
struct WordResult {
  std::optional<Value> value;
  std::optional<Count> surviving;
  std::optional<Count> total;
  std::optional<bool> accepted;

  bool positive() const { return accepted ? *accepted : value.has_value(); }
};

inline WordResult evaluate_word(const Document& doc, const Word& w, const Options& o) {
  WordResult r;
  switch (doc.kind) {
    case Document::Kind::vaf: {
      EvalOutcome e = o.bruteforce ? eval_bruteforce(doc.vaf(), w, o.limits()) : eval_frontier(doc.vaf(), w, o.limits());
      r.value = e.value;
      r.surviving = e.surviving_paths;
      r.total = e.total_paths;
      break;
    }
    case Document::Kind::wa:
      r.value = o.bruteforce ? wa_eval_paths(doc.wa(), w, o.max_paths) : wa_eval(doc.wa(), w);
      break;
    case Document::Kind::pa: r.accepted = pa_accepts(doc.pa(), w, o.max_paths); break;
    case Document::Kind::apa: r.accepted = apa_accepts(doc.apa(), w, o.max_paths); break;
    default: throw Error("cannot evaluate a " + std::string(to_string(doc.kind)) + " document");
  }
  return r;
}

inline nlohmann::json result_json(const Semiautomaton& a, const Word& w, const WordResult& r) {
  nlohmann::json j;
  j["word"] = a.word_to_string(w);
  if (r.accepted) {
    j["accepted"] = *r.accepted;
    j["defined"] = *r.accepted;
  } else {
    j["defined"] = r.value.has_value();
    j["value"] = r.value ? nlohmann::json(r.value->str()) : nlohmann::json(nullptr);
  }
  if (r.surviving) j["surviving_paths"] = count_json(*r.surviving);
  if (r.total) j["total_paths"] = count_json(*r.total);
  return j;
}

inline std::string result_text(const WordResult& r) {
  if (r.accepted) return *r.accepted ? "accepted" : "rejected";
  std::string out = r.value ? r.value->str() : "undefined";
  if (r.surviving) out += "  surviving_paths=" + r.surviving->str() + " total_paths=" + r.total->str();
  return out;
}

inline Word read_word(const Semiautomaton& a, const Options& o) {
  if (!o.word_file.empty()) {
    std::istringstream in(read_file(o.word_file));
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    return a.word_from_tokens(tokens);
  }
  return a.word_from_chars(o.word);
}

inline int cmd_eval(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Semiautomaton& a = automaton_of(doc);
  Word w = read_word(a, o);
  WordResult r = evaluate_word(doc, w, o);
  if (o.json()) out << result_json(a, w, r).dump() << "\n";
  else out << result_text(r) << "\n";
  return r.positive() ? kOk : kNo;
}

inline int cmd_eval_all(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Semiautomaton& a = automaton_of(doc);
  nlohmann::json arr = nlohmann::json::array();
  for_each_word(a.num_symbols(), o.maxlen, [&](const Word& w) {
    WordResult r = evaluate_word(doc, w, o);
    if (o.json()) arr.push_back(result_json(a, w, r));
    else out << show_word(a, w) << "\t" << result_text(r) << "\n";
  });
  if (o.json()) out << arr.dump() << "\n";
  return kOk;
}

inline int cmd_check(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Semiautomaton& a = automaton_of(doc);
  UnambiguityResult un = check_unambiguous(a);
  bool det = is_deterministic(a);
  nlohmann::json j;
  std::ostringstream text;
  int status = kOk;
  if (doc.kind == Document::Kind::vaf) {
    VariantReport vr = variant_check(doc.vaf());
    det = vr.deterministic;
  } else if (doc.kind == Document::Kind::pa || doc.kind == Document::Kind::apa) {
    const auto& initials = doc.kind == Document::Kind::pa ? doc.pa().initials() : doc.apa().initials();
    det = det && initials.size() == 1;
  }
  j["deterministic"] = det;
  j["unambiguous"] = un.unambiguous;
  text << "deterministic: " << (det ? "yes" : "no") << "\n";
  text << "unambiguous: " << (un.unambiguous ? "yes" : "no") << "\n";
  if (un.witness) {
    j["witness"] = witness_json(a, *un.witness);
    text << "witness: " << a.word_to_string(un.witness->label) << "\n";
    text << "  " << describe_path(a, un.witness->first) << "\n";
    text << "  " << describe_path(a, un.witness->second) << "\n";
  }
  if (doc.kind == Document::Kind::vaf) {
    const Vaf& v = doc.vaf();
    nlohmann::json updates = nlohmann::json::array();
    for (std::size_t t = 0; t < v.updates().size(); ++t) {
      const UpdateFunction& f = v.update(t);
      std::string tags = v.structure().has(Op::times) ? classify(f, v.structure()).str() : "{top}";
      std::string line = detail::describe_path(a, Path{{t}}) + "  " + tags + (is_copyless(f) ? " cl" : "") +
                         (is_moveless(f) ? " ml" : "") + (is_resetless_syntactic(f) ? " rl" : "");
      updates.push_back(line);
      text << "update " << line << "\n";
    }
    j["updates"] = updates;
    if (const auto& ann = v.annotation()) {
      auto violations = annotation_violations(v, *ann);
      j["class_verified"] = violations.empty();
      j["class_violations"] = violations;
      text << "class: " << (violations.empty() ? "verified" : "violated") << "\n";
      for (const auto& s : violations) text << "  " << s << "\n";
      if (!violations.empty()) status = kNo;
    }
  }
  if (o.json()) out << j.dump() << "\n";
  else out << text.str();
  return status;
}

inline const Vaf& require_vaf(const Document& doc) {
  if (doc.kind != Document::Kind::vaf) throw Error("expected a vaf document, got " + std::string(to_string(doc.kind)));
  return doc.vaf();
}

inline int cmd_one_success(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Vaf& v = require_vaf(doc);
  OneSuccessVerdict r = one_success_bounded(v, o.maxlen, o.limits());
  if (o.json()) {
    nlohmann::json j{{"holds", r.holds}, {"maxlen", o.maxlen}};
    if (r.counterexample) j["witness"] = v.automaton().word_to_string(*r.counterexample);
    out << j.dump() << "\n";
  } else if (r.holds) {
    out << "holds up to length " << o.maxlen << "\n";
  } else {
    out << "counterexample: " << show_word(v.automaton(), *r.counterexample) << "\n";
  }
  return r.holds ? kOk : kNo;
}

inline int cmd_support0(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Vaf& v = require_vaf(doc);
  Value zero = Value::parse(o.zero, v.structure().carrier());
  auto words = zero_support(v, zero, o.maxlen, o.limits());
  if (o.json()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Word& w : words) arr.push_back(v.automaton().word_to_string(w));
    out << arr.dump() << "\n";
  } else {
    for (const Word& w : words) out << show_word(v.automaton(), w) << "\n";
  }
  return kOk;
}

inline Op parse_aggregate_choice(const std::string& s) {
  if (s == "plus") return Op::plus;
  if (s == "max") return Op::max;
  throw Error("aggregate must be plus or max");
}

inline int cmd_translate(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  auto expect = [&](Document::Kind k) {
    if (doc.kind != k)
      throw Error(o.translation + " expects a " + std::string(to_string(k)) + " document, got " +
                  std::string(to_string(doc.kind)));
  };
  if (o.translation == "wa2vaf") {
    expect(Document::Kind::wa);
    out << to_text(wa_to_vaf(doc.wa()));
  } else if (o.translation == "pa2vaf") {
    expect(Document::Kind::pa);
    out << to_text(pa_to_vaf(doc.pa(), parse_aggregate_choice(o.aggregate)));
  } else if (o.translation == "apa2vaf") {
    expect(Document::Kind::apa);
    out << to_text(apa_to_vaf(doc.apa(), parse_aggregate_choice(o.aggregate)));
  } else {
    expect(Document::Kind::vaf);
    out << to_text(add_path_counter(doc.vaf()));
  }
  return kOk;
}

inline int cmd_member(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  if (doc.kind != Document::Kind::filter) throw Error("member expects a filter document");
  syntax::TokenStream ts(o.vector);
  Registers x = syntax::parse_vector(ts, doc.structure.carrier());
  if (!ts.at_end()) ts.fail("trailing input after vector");
  bool in = member(doc.filter(), x);
  if (o.json()) out << nlohmann::json{{"member", in}}.dump() << "\n";
  else out << (in ? "member" : "not member") << "\n";
  return in ? kOk : kNo;
}

/// Random differential suite: frontier against brute force on every word
/// up to maxlen, alternating plus and max aggregates.
inline int cmd_oracle(const Options& o, std::ostream& out) {
  random::Rng rng(o.seed);
  std::size_t agree = 0;
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t c = 0; c < o.cases; ++c) {
    random::VafOptions opt;
    opt.aggregate = c % 2 == 0 ? Op::plus : Op::max;
    Vaf v = random::random_vaf(rng, opt);
    bool ok = true;
    for_each_word(v.automaton().num_symbols(), o.maxlen, [&](const Word& w) {
      if (ok && eval_frontier(v, w, o.limits()) != eval_bruteforce(v, w, o.limits())) {
        ok = false;
        failures.push_back({{"case", c}, {"word", v.automaton().word_to_string(w)}});
        if (!o.json()) out << "disagree case " << c << " word " << show_word(v.automaton(), w) << "\n";
      }
    });
    if (ok) ++agree;
  }
  if (o.json()) out << nlohmann::json{{"agree", agree}, {"cases", o.cases}, {"failures", failures}}.dump() << "\n";
  else out << "agree " << agree << "/" << o.cases << "\n";
  return agree == o.cases ? kOk : kNo;
}

}  // namespace detail

/// Runs one CLI invocation. args excludes the program name.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Value automata with filters: evaluation, checks, translations"};
  app.require_subcommand(1);
  detail::Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-paths", o.max_paths, "Path enumeration cap");
    sub->add_option("--max-frontier", o.max_frontier, "Frontier size cap");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate one word");
  eval->add_option("file", o.file)->required();
  eval->add_option("word", o.word, "Word, one character per symbol");
  eval->add_option("--word-file", o.word_file, "Whitespace-separated symbols");
  eval->add_flag("--bruteforce", o.bruteforce, "Use path enumeration instead of the frontier");
  add_common(eval);

  auto* eval_all = app.add_subcommand("eval-all", "Evaluate every word up to a length");
  eval_all->add_option("file", o.file)->required();
  eval_all->add_option("--maxlen", o.maxlen, "Longest word length")->required();
  eval_all->add_flag("--bruteforce", o.bruteforce, "Use path enumeration instead of the frontier");
  add_common(eval_all);

  auto* check = app.add_subcommand("check", "Determinism, unambiguity and class verification");
  check->add_option("file", o.file)->required();
  add_common(check);

  auto* one = app.add_subcommand("one-success", "Bounded one-success check");
  one->add_option("file", o.file)->required();
  one->add_option("--maxlen", o.maxlen, "Longest word length")->required();
  add_common(one);

  auto* sup = app.add_subcommand("support0", "Words up to a length mapped to zero");
  sup->add_option("file", o.file)->required();
  sup->add_option("--zero", o.zero, "Value treated as zero (default 0)");
  sup->add_option("--maxlen", o.maxlen, "Longest word length")->required();
  add_common(sup);

  auto* tr = app.add_subcommand("translate", "Emit an equivalent VAF document");
  tr->add_option("kind", o.translation)->required()->check(CLI::IsMember({"wa2vaf", "pa2vaf", "apa2vaf", "count-paths"}));
  tr->add_option("file", o.file)->required();
  tr->add_option("--aggregate", o.aggregate, "Aggregate for Parikh translations")->check(CLI::IsMember({"plus", "max"}));
  add_common(tr);

  auto* mem = app.add_subcommand("member", "Filter membership of a vector");
  mem->add_option("file", o.file)->required();
  mem->add_option("vector", o.vector, "Vector such as (1,2)")->required();
  add_common(mem);

  auto* orc = app.add_subcommand("oracle", "Random differential test of the two evaluators");
  orc->add_option("--seed", o.seed, "Random seed");
  orc->add_option("--cases", o.cases, "Number of random VAFs");
  orc->add_option("--maxlen", o.maxlen, "Longest word length (default 4)");
  add_common(orc);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval->parsed()) return detail::cmd_eval(o, out);
    if (eval_all->parsed()) return detail::cmd_eval_all(o, out);
    if (check->parsed()) return detail::cmd_check(o, out);
    if (one->parsed()) return detail::cmd_one_success(o, out);
    if (sup->parsed()) return detail::cmd_support0(o, out);
    if (tr->parsed()) return detail::cmd_translate(o, out);
    if (mem->parsed()) return detail::cmd_member(o, out);
    if (orc->parsed()) return detail::cmd_oracle(o, out);
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace vaf::cli
