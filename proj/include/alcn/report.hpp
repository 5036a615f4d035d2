#pragma once

#include <string>

#include "json.hpp"

#include "alcn/defeasible.hpp"
#include "alcn/printer.hpp"
#include "alcn/tableau.hpp"

namespace alcn {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json translated_di_json(const TranslatedDi& t) {
  Json j;
  j["di"] = print_axiom(Axiom(t.di));
  j["normality"] = print_concept(t.normality);
  return j;
}

}  // namespace detail

// Stable, fully deterministic JSON rendering of one query run.
inline Json entailment_report_json(const Axiom& query, const EntailmentResult& result,
                                   const ReasonerStats& stats) {
  Json j;
  j["query"] = print_axiom(query);
  j["entailed"] = result.entailed;
  j["sigma"] = Json::array();
  for (const auto& nc : result.reduction.sigma) j["sigma"].push_back(print_concept(nc));
  j["linearization"] = Json::array();
  for (const int idx : result.reduction.linearization) {
    j["linearization"].push_back(print_axiom(Axiom(result.reduction.defeasible[idx])));
  }
  j["selected"] = Json::array();
  for (const auto& t : result.reduction.selected) j["selected"].push_back(detail::translated_di_json(t));
  j["overridden"] = Json::array();
  for (const auto& [t, reason] : result.reduction.overridden) {
    Json entry = detail::translated_di_json(t);
    Json r;
    r["axioms"] = print_classical_kb(reason.checked);
    r["conclusion"] = print_lowered(reason.conclusion);
    entry["reason"] = r;
    j["overridden"].push_back(entry);
  }
  j["stats"] = Json{{"consistency_checks", stats.consistency_checks},
                    {"subsumption_checks", stats.subsumption_checks}};
  return j;
}

inline std::string entailment_report_text(const Axiom& query, const EntailmentResult& result,
                                          bool with_reasons) {
  const auto& red = result.reduction;
  std::string out;
  out += "query: " + print_axiom(query) + "\n";
  out += "sigma:";
  if (red.sigma.empty()) {
    out += " (empty)";
  } else {
    for (const auto& nc : red.sigma) out += " " + print_concept(nc);
  }
  out += "\n";
  if (!red.linearization.empty()) {
    out += "linearization:\n";  // processing order, highest priority first
    std::size_t pos = 0;
    for (const int idx : red.linearization) {
      out += "  " + std::to_string(++pos) + ". " + print_axiom(Axiom(red.defeasible[idx])) + "\n";
    }
  }
  if (!red.selected.empty() || !red.overridden.empty()) {
    out += "decisions:\n";
    for (const int idx : red.linearization) {
      for (const auto& t : red.selected) {
        if (t.di_index != idx) continue;
        out += "  kept:       (" + print_axiom(Axiom(t.di)) + ") for " +
               print_concept(t.normality) + "\n";
      }
      for (const auto& [t, reason] : red.overridden) {
        if (t.di_index != idx) continue;
        out += "  overridden: (" + print_axiom(Axiom(t.di)) + ") for " +
               print_concept(t.normality) + "\n";
        if (with_reasons) {
          out += "    this check entails " + print_lowered(reason.conclusion) + ":\n";
          for (const auto& line : print_classical_kb(reason.checked)) {
            out += "      " + line + "\n";
          }
        }
      }
    }
  }
  out += result.entailed ? "result: ENTAILED\n" : "result: NOT ENTAILED\n";
  return out;
}

inline Json prototype_report_json(const PrototypeReport& report) {
  Json j;
  j["inconsistent"] = Json::array();
  for (const auto& c : report.inconsistent) j["inconsistent"].push_back(print_concept(c));
  j["consistent"] = Json::array();
  for (const auto& c : report.consistent) j["consistent"].push_back(print_concept(c));
  return j;
}

inline std::string prototype_report_text(const PrototypeReport& report) {
  std::string out;
  for (const auto& c : report.inconsistent) {
    out += "INCONSISTENT: " + print_concept(c) + "\n";
  }
  for (const auto& c : report.consistent) {
    out += "consistent:   " + print_concept(c) + "\n";
  }
  if (report.inconsistent.empty()) {
    out += "no inconsistent prototypes\n";
  }
  return out;
}

}  // namespace alcn
