#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmcorr/alba.hpp"
#include "fmcorr/harness.hpp"
#include "fmcorr/inductive.hpp"
#include "fmcorr/semantics.hpp"
#include "fmcorr/syntax.hpp"
#include "fmcorr/translation.hpp"

using namespace fmcorr;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Global {
  bool json = false;
  std::uint64_t seed = 0;
};

void emit(const Global& g, const json& j, const std::string& text) {
  if (g.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

json order_json(const DependenceOrder& o) {
  json arr = json::array();
  for (const auto& [q, p] : o.strict_pairs()) arr.push_back({q, p});
  return arr;
}

json trace_json(const AlbaTrace& t) {
  json arr = json::array();
  for (const auto& s : t.steps) {
    json after = json::array();
    for (const auto& a : s.after) after.push_back(print_quasi(a));
    arr.push_back({{"rule", rule_name(s.rule)}, {"parameter", s.parameter}, {"before", print_quasi(s.before)},
                   {"after", after}});
  }
  return arr;
}

int cmd_parse(const Global& g, const std::string& text) {
  if (text.find("<=") != std::string::npos) {
    const QuasiInequality q = parse_quasi(text);
    json j{{"input", text}, {"printed", print_quasi(q)}, {"antecedents", json::array()}};
    std::string out;
    for (const auto& a : q.antecedents) {
      j["antecedents"].push_back({ast_string(a.lhs), ast_string(a.rhs)});
      out += "antecedent: " + ast_string(a.lhs) + " <= " + ast_string(a.rhs) + "\n";
    }
    j["consequent"] = {ast_string(q.consequent.lhs), ast_string(q.consequent.rhs)};
    out += "consequent: " + ast_string(q.consequent.lhs) + " <= " + ast_string(q.consequent.rhs) + "\n";
    emit(g, j, out + "printed: " + print_quasi(q) + "\n");
    return kOk;
  }
  const Formula f = parse_formula(text);
  emit(g, {{"input", text}, {"ast", ast_string(f)}, {"printed", print_formula(f)}, {"depth", depth(f)}},
       ast_string(f) + "\n");
  return kOk;
}

int cmd_classify(const Global& g, const std::string& text) {
  const Formula f = parse_formula(text);
  const auto order = classify_inductive(f);
  json j{{"formula", print_formula(f)}, {"inductive", order.has_value()}};
  if (!order) {
    emit(g, j, "not inductive\n");
    return kFailure;
  }
  j["order"] = order_json(*order);
  j["elimination"] = order->linearize(variables(f));
  emit(g, j, "inductive, witness " + order->to_string() + "\n");
  return kOk;
}

int cmd_alba(const Global& g, const std::string& text, bool trace) {
  const Formula f = parse_formula(text);
  try {
    const AlbaOutput out = run_alba(f);
    json j{{"formula", print_formula(f)}, {"systems", json::array()}};
    std::string s;
    if (trace) {
      j["trace"] = trace_json(out.trace);
      for (const auto& step : out.trace.steps) s += print_step(step) + "\n";
    }
    for (const auto& q : out.systems) {
      j["systems"].push_back(print_quasi(q));
      s += print_quasi(q) + "\n";
    }
    emit(g, j, s);
    return kOk;
  } catch (const AlbaFailure& e) {
    if (g.json) {
      std::cout << json{{"formula", print_formula(f)}, {"error", e.reason()}, {"stuck", print_quasi(e.system())}}.dump(2)
                << "\n";
    }
    std::cerr << e.what() << "\n";
    return kFailure;
  }
}

int cmd_translate(const Global& g, const std::string& text) {
  const Formula f = parse_formula(text);
  const auto order = classify_inductive(f);
  if (!order) {
    std::cerr << "not inductive: " << print_formula(f) << "\n";
    return kFailure;
  }
  AlbaOptions opts;
  opts.record_trace = false;
  opts.order = order;
  try {
    const AlbaOutput out = run_alba(f, opts);
    const std::string sentence = print_fo(correspondent(out.systems));
    json systems = json::array();
    for (const auto& q : out.systems) systems.push_back(print_quasi(q));
    emit(g, {{"formula", print_formula(f)}, {"systems", systems}, {"correspondent", sentence}}, sentence + "\n");
    return kOk;
  } catch (const AlbaFailure& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }
}

int cmd_check(const Global& g, const std::string& frame_path, const std::string& text, std::uint64_t budget) {
  const FMFrame frame = load_frame_file(frame_path);
  const ROAlgebra alg(frame);
  bool ok;
  std::string shown;
  if (text.find("<=") != std::string::npos) {
    const QuasiInequality q = parse_quasi(text);
    ok = valid(alg, q, budget);
    shown = print_quasi(q);
  } else {
    const Formula f = parse_formula(text);
    ok = valid(alg, f, budget);
    shown = print_formula(f);
  }
  emit(g, {{"formula", shown}, {"frame", json::parse(frame_to_json(frame))}, {"valid", ok}},
       ok ? "valid\n" : "not valid\n");
  return ok ? kOk : kFailure;
}

int cmd_verify(const Global& g, const std::string& text, int max_size, bool parallel, std::uint64_t budget) {
  const Formula f = parse_formula(text);
  if (!classify_inductive(f)) {
    std::cerr << "not inductive: " << print_formula(f) << "\n";
    return kFailure;
  }
  try {
    const auto rep = crosscheck(f, max_size, parallel ? Exec::Parallel : Exec::Serial, budget);
    emit(g, rep.to_json(), rep.to_text());
    return rep.ok() ? kOk : kFailure;
  } catch (const AlbaFailure& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }
}

int cmd_frames(const Global& g, int size, bool count_only, bool canonical) {
  if (count_only) {
    const auto n = count_frames(size, canonical);
    emit(g, {{"size", size}, {"canonical", canonical}, {"count", n}}, std::to_string(n) + "\n");
    return kOk;
  }
  if (g.json) {
    json arr = json::array();
    for_each_frame(size, [&](const FMFrame& f) { arr.push_back(json::parse(frame_to_json(f))); }, canonical);
    std::cout << json{{"size", size}, {"canonical", canonical}, {"frames", arr}}.dump(2) << "\n";
  } else {
    for_each_frame(size, [](const FMFrame& f) { std::cout << f.describe() << "\n"; }, canonical);
  }
  return kOk;
}

int cmd_selftest(const Global& g, int max_size, bool parallel) {
  const Exec exec = parallel ? Exec::Parallel : Exec::Serial;
  CorpusOptions corpus_opts;
  corpus_opts.seed = g.seed;
  const auto corpus = full_corpus(corpus_opts);
  const auto frames = frames_up_to(max_size);

  std::vector<SuiteReport> suites;
  suites.push_back(success_suite(corpus));

  SuiteReport cross;
  cross.suite = "crosscheck";
  cross.frames = frames.size();
  Tally agree("modal-vs-first-order");
  for (const auto& f : corpus) {
    try {
      const auto rep = crosscheck(f, frames, exec);
      cross.seconds += rep.seconds;
      cross.skipped += rep.skipped;
      for (std::size_t k = 0; k < frames.size() - rep.mismatches.size(); ++k) agree.add(true, nullptr);
      for (const auto& m : rep.mismatches)
        agree.add(false, [&] { return rep.formula + " on " + m.frame; });
    } catch (const AlbaFailure& e) {
      agree.add(false, [&] { return std::string(e.what()); });
    }
  }
  cross.tallies.push_back(agree);
  suites.push_back(cross);

  AdequacyOptions adequacy;
  adequacy.seed = g.seed;
  suites.push_back(adequacy_suite(adequacy));

  AlgebraOptions algebra;
  algebra.max_n = max_size;
  algebra.seed = g.seed;
  algebra.exec = exec;
  suites.push_back(algebra_suite(algebra));

  suites.push_back(rule_soundness_suite(collect_steps(corpus), frames, exec));

  bool ok = true;
  json j{{"max_size", max_size}, {"seed", g.seed}, {"corpus", corpus.size()}, {"suites", json::array()}};
  std::string text = "corpus: " + std::to_string(corpus.size()) + " formulas, seed " + std::to_string(g.seed) + "\n";
  for (const auto& s : suites) {
    ok = ok && s.ok();
    j["suites"].push_back(s.to_json());
    text += s.to_text();
  }
  j["ok"] = ok;
  emit(g, j, text + (ok ? "selftest: PASS\n" : "selftest: FAIL\n"));
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correspondence theory for modal FM frames: classification, ALBA, first-order translation"};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for corpus sampling")->capture_default_str();

  std::string formula, frame_path;
  bool trace = false, count_only = false, canonical = false, parallel = false;
  int size = 1, max_size = 3;
  std::uint64_t budget = kDefaultValidityBudget;

  auto* parse = app.add_subcommand("parse", "Echo the syntax tree");
  parse->add_option("formula", formula)->required();
  auto* classify = app.add_subcommand("classify", "Search for a dependence order making the formula inductive");
  classify->add_option("formula", formula)->required();
  auto* alba = app.add_subcommand("alba", "Run ALBA and print the pure systems");
  alba->add_option("formula", formula)->required();
  alba->add_flag("--trace", trace, "Print every rule application");
  auto* translate = app.add_subcommand("translate", "Print the first-order correspondent");
  translate->add_option("formula", formula)->required();
  auto* check = app.add_subcommand("check", "Validity on one frame");
  check->add_option("--frame", frame_path, "Frame JSON file")->required();
  check->add_option("formula", formula)->required();
  check->add_option("--budget", budget, "Maximum number of valuations")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "Compare modal validity with the correspondent on all small frames");
  verify->add_option("formula", formula)->required();
  verify->add_option("--max-size", max_size)->capture_default_str()->check(CLI::Range(1, kMaxEnumerationSize));
  verify->add_flag("--parallel", parallel, "Spread frames over threads");
  verify->add_option("--budget", budget, "Maximum number of valuations per frame")->capture_default_str();
  auto* frames = app.add_subcommand("frames", "Enumerate admissible frames");
  frames->add_option("--size", size)->required()->check(CLI::Range(1, kMaxEnumerationSize));
  frames->add_flag("--count", count_only, "Only print the number of frames");
  frames->add_flag("--canonical", canonical, "One frame per isomorphism class");
  auto* selftest = app.add_subcommand("selftest", "Run every verification suite");
  selftest->add_option("--max-size", max_size)->capture_default_str()->check(CLI::Range(1, kMaxEnumerationSize));
  selftest->add_flag("--parallel", parallel, "Spread frames over threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(g, formula);
    if (*classify) return cmd_classify(g, formula);
    if (*alba) return cmd_alba(g, formula, trace);
    if (*translate) return cmd_translate(g, formula);
    if (*check) return cmd_check(g, frame_path, formula, budget);
    if (*verify) return cmd_verify(g, formula, max_size, parallel, budget);
    if (*frames) return cmd_frames(g, size, count_only, canonical);
    if (*selftest) return cmd_selftest(g, max_size, parallel);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const FrameError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
