// Command-line front end: load a KB file, answer defeasible queries, classify
// prototypes, explain overriding decisions, and sweep the postulate checkers.

#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "alcn/alcn.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // not entailed / inconsistent prototypes / failed sweep
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

struct CommonOptions {
  std::string kb_path;
  std::string priority = "specificity";
  bool assume_nonempty = false;
  std::string format = "text";
  std::size_t node_budget = alcn::kDefaultNodeBudget;

  alcn::PriorityMode mode() const {
    return priority == "rank" ? alcn::PriorityMode::ExplicitRank
                              : alcn::PriorityMode::Specificity;
  }
  bool json() const { return format == "json"; }
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_parse_error(const std::string& origin, const alcn::ParseError& err) {
  std::cerr << origin << ":" << err.location.line << ":" << err.location.column << ": "
            << err.message;
  if (!err.expected.empty()) {
    std::cerr << " (expected ";
    for (std::size_t i = 0; i < err.expected.size(); ++i) {
      if (i) std::cerr << ", ";
      std::cerr << err.expected[i];
    }
    std::cerr << ")";
  }
  std::cerr << "\n";
}

// Loads and validates the KB; applies the nonempty-prototype witnesses when
// requested. Returns an exit code, 0 on success.
int load_kb(const CommonOptions& opts, alcn::KnowledgeBase& out) {
  const auto text = read_file(opts.kb_path);
  if (!text) {
    std::cerr << "cannot read KB file: " << opts.kb_path << "\n";
    return kExitInputError;
  }
  auto parsed = alcn::parse_kb(*text);
  if (!parsed.ok()) {
    print_parse_error(opts.kb_path, *parsed.error);
    return kExitInputError;
  }
  out = *parsed;
  for (const auto& warning : alcn::validate_kb(out)) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (opts.assume_nonempty) {
    try {
      const alcn::Reasoner reasoner(opts.node_budget);
      const alcn::ClassicalKb strong = alcn::lower_strong(out.strong);
      std::vector<alcn::Concept> candidates;
      for (const auto& name : alcn::signature(out).concepts) {
        const alcn::Concept c = alcn::Concept::atomic(name);
        if (reasoner.is_satisfiable(strong, c)) candidates.push_back(c);
      }
      out = alcn::assume_nonempty_prototypes(out, candidates, reasoner);
    } catch (const alcn::ResourceLimitError& e) {
      std::cerr << "resource limit: " << e.what() << "\n";
      return kExitResourceLimit;
    }
  }
  return kExitOk;
}

int collect_queries(const std::string& query_text, const std::string& query_file,
                    std::vector<alcn::Axiom>& out) {
  std::vector<std::pair<std::string, std::string>> sources;  // origin, text
  if (!query_text.empty()) sources.emplace_back("query", query_text);
  if (!query_file.empty()) {
    const auto text = read_file(query_file);
    if (!text) {
      std::cerr << "cannot read query file: " << query_file << "\n";
      return kExitInputError;
    }
    int line_no = 0;
    std::istringstream lines(*text);
    std::string line;
    while (std::getline(lines, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      sources.emplace_back(query_file + ":" + std::to_string(line_no), line);
    }
  }
  if (sources.empty()) {
    std::cerr << "no query given (use --query or --query-file)\n";
    return kExitInputError;
  }
  for (const auto& [origin, text] : sources) {
    auto parsed = alcn::parse_query(text);
    if (!parsed.ok()) {
      print_parse_error(origin, *parsed.error);
      return kExitInputError;
    }
    out.push_back(*parsed);
  }
  return kExitOk;
}

struct QueryOutcome {
  bool entailed = false;
  bool resource_limited = false;
  std::string rendered;
  std::string error;
};

// Queries are independent; evaluate them concurrently but emit results in
// input order.
int run_queries(const alcn::KnowledgeBase& kb, const std::vector<alcn::Axiom>& queries,
                const CommonOptions& opts, bool with_reasons) {
  std::vector<std::future<QueryOutcome>> futures;
  futures.reserve(queries.size());
  for (const auto& query : queries) {
    futures.push_back(std::async(std::launch::async, [&kb, &opts, with_reasons, query]() {
      QueryOutcome outcome;
      try {
        const alcn::Reasoner reasoner(opts.node_budget);
        const alcn::InferenceOptions options{opts.mode()};
        const alcn::EntailmentResult result = alcn::n_entails(kb, query, options, reasoner);
        outcome.entailed = result.entailed;
        outcome.rendered =
            opts.json()
                ? alcn::entailment_report_json(query, result, reasoner.stats()).dump() + "\n"
                : alcn::entailment_report_text(query, result, with_reasons);
      } catch (const alcn::ResourceLimitError& e) {
        outcome.resource_limited = true;
        outcome.error = e.what();
      } catch (const std::exception& e) {
        outcome.error = e.what();
      }
      return outcome;
    }));
  }
  bool all_entailed = true;
  bool first = true;
  for (auto& future : futures) {
    const QueryOutcome outcome = future.get();
    if (outcome.resource_limited) {
      std::cerr << "resource limit: " << outcome.error << "\n";
      return kExitResourceLimit;
    }
    if (!outcome.error.empty()) {
      std::cerr << "error: " << outcome.error << "\n";
      return kExitInputError;
    }
    if (!opts.json() && !first) std::cout << "\n";
    std::cout << outcome.rendered;
    first = false;
    all_entailed = all_entailed && outcome.entailed;
  }
  return all_entailed ? kExitOk : kExitNegative;
}

int cmd_entails(const CommonOptions& opts, const std::string& query_text,
                const std::string& query_file, bool with_reasons) {
  alcn::KnowledgeBase kb;
  if (const int code = load_kb(opts, kb); code != kExitOk) return code;
  std::vector<alcn::Axiom> queries;
  if (const int code = collect_queries(query_text, query_file, queries); code != kExitOk) {
    return code;
  }
  try {
    return run_queries(kb, queries, opts, with_reasons);
  } catch (const alcn::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_prototypes(const CommonOptions& opts) {
  alcn::KnowledgeBase kb;
  if (const int code = load_kb(opts, kb); code != kExitOk) return code;
  try {
    const alcn::Reasoner reasoner(opts.node_budget);
    const alcn::PrototypeReport report = alcn::inconsistent_prototypes(
        kb, alcn::default_prototype_candidates(kb), alcn::InferenceOptions{opts.mode()}, reasoner);
    if (opts.json()) {
      std::cout << alcn::prototype_report_json(report).dump() << "\n";
    } else {
      std::cout << alcn::prototype_report_text(report);
    }
    return report.inconsistent.empty() ? kExitOk : kExitNegative;
  } catch (const alcn::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const alcn::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

void print_counterexample(const alcn::Counterexample& ce) {
  const auto print_kb = [](const alcn::KnowledgeBase& kb) {
    std::cout << "  KB:\n";
    for (const auto& a : kb.strong) std::cout << "    " << alcn::print_axiom(a) << "\n";
    for (const auto& d : kb.defeasible) {
      std::cout << "    " << alcn::print_axiom(alcn::Axiom(d)) << "\n";
    }
  };
  if (const auto* meta = std::get_if<alcn::MetaCounterexample>(&ce)) {
    std::cout << "counterexample for " << alcn::to_string(meta->rule) << ":\n";
    print_kb(meta->kb);
    std::cout << "  alpha: " << alcn::print_axiom(meta->instance.alpha) << "\n";
    if (meta->instance.beta) {
      std::cout << "  beta:  " << alcn::print_axiom(*meta->instance.beta) << "\n";
    }
    std::cout << "  gamma: " << alcn::print_axiom(meta->instance.gamma) << "\n";
  } else if (const auto* internal = std::get_if<alcn::InternalCounterexample>(&ce)) {
    std::cout << "counterexample for " << alcn::to_string(internal->rule) << ":\n";
    print_kb(internal->kb);
    std::cout << "  C: " << alcn::print_concept(internal->c)
              << "  D: " << alcn::print_concept(internal->d)
              << "  E: " << alcn::print_concept(internal->e) << "\n";
  }
}

int cmd_check_postulates(const CommonOptions& opts, const std::string& rule_name, int seeds,
                         std::uint64_t first_seed, bool allow_normal) {
  const auto rule = alcn::parse_rule_name(rule_name);
  if (!rule) {
    std::cerr << "unknown rule: " << rule_name
              << " (expected REF, CT, CM, LLE, RW, REF_N, CT_N, CM_N, LLE_N, RW_N, OR_N, RM_N)\n";
    return kExitInputError;
  }
  alcn::GeneratorProfile profile;
  profile.allow_normal_in_kb = allow_normal;
  const alcn::Reasoner reasoner(opts.node_budget);
  try {
    alcn::SweepSummary summary;
    if (const auto* meta = std::get_if<alcn::MetaRule>(&*rule)) {
      summary = alcn::sweep_meta(*meta, first_seed, seeds, profile, opts.mode(), reasoner);
    } else {
      summary = alcn::sweep_internalized(std::get<alcn::InternalRule>(*rule), first_seed, seeds,
                                         profile, opts.mode(), reasoner);
    }
    if (opts.json()) {
      alcn::Json j;
      j["rule"] = rule_name;
      j["kbs_tested"] = summary.kbs_tested;
      j["kbs_skipped"] = summary.kbs_skipped;
      j["instances"] = summary.instances;
      j["failures"] = summary.failures;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "rule " << rule_name << ": " << summary.kbs_tested << " KBs ("
                << summary.kbs_skipped << " skipped), " << summary.instances << " instances, "
                << summary.failures << " failures\n";
      if (summary.failures > 0) print_counterexample(summary.first_counterexample);
    }
    return summary.failures == 0 ? kExitOk : kExitNegative;
  } catch (const alcn::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const alcn::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  }
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_kb) {
  if (with_kb) {
    cmd->add_option("--kb", opts.kb_path, "knowledge base file")->required();
    cmd->add_flag("--assume-nonempty-prototypes", opts.assume_nonempty,
                  "add a witness individual for every consistent concept name");
  }
  cmd->add_option("--priority", opts.priority, "priority relation")
      ->check(CLI::IsMember({"specificity", "rank"}));
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--node-budget", opts.node_budget, "tableau node budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defeasible description logic reasoner (ALC with normality concepts)"};
  app.require_subcommand(1);

  CommonOptions entails_opts, explain_opts, prototypes_opts, postulates_opts;
  std::string entails_query, entails_query_file;
  std::string explain_query, explain_query_file;
  std::string rule_name;
  int seeds = 100;
  std::uint64_t first_seed = 1;
  bool allow_normal = false;

  CLI::App* entails = app.add_subcommand("entails", "decide a defeasible entailment");
  add_common_flags(entails, entails_opts, true);
  entails->add_option("--query", entails_query, "query text");
  entails->add_option("--query-file", entails_query_file, "file with one query per line");

  CLI::App* explain = app.add_subcommand("explain", "show every overriding decision for a query");
  add_common_flags(explain, explain_opts, true);
  explain->add_option("--query", explain_query, "query text");
  explain->add_option("--query-file", explain_query_file, "file with one query per line");

  CLI::App* prototypes =
      app.add_subcommand("prototypes", "find concepts whose prototypes are inconsistent");
  add_common_flags(prototypes, prototypes_opts, true);

  CLI::App* postulates = app.add_subcommand("check-postulates", "sweep a closure-rule checker");
  add_common_flags(postulates, postulates_opts, false);
  postulates->add_option("--rule", rule_name, "rule name (e.g. REF, CT, CM_N)")->required();
  postulates->add_option("--seeds", seeds, "number of generated KBs to test");
  postulates->add_option("--first-seed", first_seed, "first generator seed");
  postulates->add_flag("--allow-normal", allow_normal,
                       "allow normality concepts in generated defeasible conclusions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (entails->parsed()) {
    return cmd_entails(entails_opts, entails_query, entails_query_file, /*with_reasons=*/false);
  }
  if (explain->parsed()) {
    return cmd_entails(explain_opts, explain_query, explain_query_file, /*with_reasons=*/true);
  }
  if (prototypes->parsed()) return cmd_prototypes(prototypes_opts);
  if (postulates->parsed()) {
    return cmd_check_postulates(postulates_opts, rule_name, seeds, first_seed, allow_normal);
  }
  return kExitInputError;
}
