#include <gtest/gtest.h>

#include "alcn/alcn.hpp"
#include "corpus.hpp"

using namespace alcn;

namespace {

Concept atom(const char* name) { return Concept::atomic(ConceptName(name)); }

bool ask(const KnowledgeBase& knowledge, const std::string& q,
         PriorityMode mode = PriorityMode::Specificity) {
  const Reasoner reasoner;
  return n_entails(knowledge, corpus::query(q), InferenceOptions{mode}, reasoner).entailed;
}

TEST(Specificity, ReservistPremisesAreOrdered) {
  const auto knowledge = corpus::kb(corpus::kReservist);
  const Reasoner reasoner;
  const auto& trained = knowledge.defeasible[1];  // MaleCitizen and HasMilitaryTraining <~ ...
  const auto& citizen = knowledge.defeasible[0];  // MaleCitizen <~ ...
  EXPECT_TRUE(specificity(knowledge.strong, trained, citizen, reasoner));
  EXPECT_FALSE(specificity(knowledge.strong, citizen, trained, reasoner));
  // The converse subsumption is refuted by an explicit countermodel.
  ClassicalKb counter = lower_strong(knowledge.strong);
  counter.concept_assertions.push_back(
      {IndividualName("w"),
       Concept::conjunction(atom("MaleCitizen"),
                            Concept::negation(Concept::conjunction(
                                atom("MaleCitizen"), atom("HasMilitaryTraining"))))});
  const auto model = bounded_model_search(counter, 2);
  ASSERT_TRUE(model.has_value());
  EXPECT_TRUE(check_model(*model, counter));
}

TEST(Specificity, EqualPremisesAreIncomparable) {
  const auto knowledge = corpus::kb(corpus::kSitusInversusNose);
  const Reasoner reasoner;
  EXPECT_FALSE(
      specificity(knowledge.strong, knowledge.defeasible[0], knowledge.defeasible[1], reasoner));
  EXPECT_FALSE(
      specificity(knowledge.strong, knowledge.defeasible[1], knowledge.defeasible[0], reasoner));
}

TEST(Specificity, IrreflexiveByDefinition) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const Reasoner reasoner;
  for (const auto& di : knowledge.defeasible) {
    EXPECT_FALSE(specificity(knowledge.strong, di, di, reasoner));
  }
}

TEST(PriorityRelation, NixonIsEmpty) {
  const auto knowledge = corpus::kb(corpus::kNixon);
  const Reasoner reasoner;
  EXPECT_TRUE(priority_relation(knowledge, PriorityMode::Specificity, reasoner).pairs().empty());
}

TEST(PriorityRelation, ExplicitRanks) {
  const auto knowledge = corpus::kb("A <~[1] X\nB <~[2] Y\n");
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::ExplicitRank, reasoner);
  EXPECT_TRUE(prio.precedes(0, 1));
  EXPECT_FALSE(prio.precedes(1, 0));
}

TEST(PriorityRelation, ReservistSpecificity) {
  const auto knowledge = corpus::kb(corpus::kReservist);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  EXPECT_EQ(prio.pairs(), (std::set<std::pair<int, int>>{{1, 0}}));
}

TEST(PriorityRelation, MissingRankIsAnError) {
  const auto knowledge = corpus::kb("A <~[1] X\nB <~ Y\n");
  const Reasoner reasoner;
  EXPECT_THROW(priority_relation(knowledge, PriorityMode::ExplicitRank, reasoner),
               PreconditionError);
}

TEST(PriorityRelation, SubsumptionCheckBudget) {
  for (const auto& test_case : corpus::defeasible_cases()) {
    if (test_case.mode != PriorityMode::Specificity) continue;
    const auto knowledge = corpus::kb(test_case.text);
    const Reasoner reasoner;
    priority_relation(knowledge, PriorityMode::Specificity, reasoner);
    const auto n = static_cast<std::uint64_t>(knowledge.defeasible.size());
    EXPECT_LE(reasoner.stats().subsumption_checks, n == 0 ? 0 : 2 * n * (n - 1))
        << test_case.name;
    EXPECT_EQ(reasoner.stats().consistency_checks, 0u) << test_case.name;
  }
}

TEST(Linearize, ReservistPutsSpecificFirst) {
  const auto knowledge = corpus::kb(corpus::kReservist);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  EXPECT_EQ(linearize(knowledge, prio), (std::vector<int>{1, 0}));
}

TEST(Linearize, EmptyRelationKeepsInputOrder) {
  const auto knowledge = corpus::kb(corpus::kNixon);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  EXPECT_EQ(linearize(knowledge, prio), (std::vector<int>{0, 1}));
}

TEST(Linearize, ChainIsUnique) {
  const auto knowledge = corpus::kb("A <~[2] X\nB <~[1] Y\nC <~[0] Z\n");
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::ExplicitRank, reasoner);
  EXPECT_EQ(linearize(knowledge, prio), (std::vector<int>{2, 1, 0}));
}

TEST(TranslateDi, Example1Forms) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const auto& di = knowledge.defeasible[0];
  const auto for_human = translate_di(di, Concept::normal(atom("Human")), 0);
  EXPECT_EQ(print_lowered(for_human.lowered),
            "N(Human) and Human <= some has_heart.LH");
  const auto for_si = translate_di(di, Concept::normal(atom("SI")), 0);
  EXPECT_EQ(print_lowered(for_si.lowered), "N(SI) and Human <= some has_heart.LH");
}

TEST(TranslateDi, TautologicalInstance) {
  const DefeasibleCi di{atom("A"), atom("A"), std::nullopt};
  const auto t = translate_di(di, Concept::normal(atom("A")), 0);
  EXPECT_EQ(print_lowered(t.lowered), "N(A) and A <= A");
}

TEST(TranslateDi, RejectsNonNormalConcept) {
  const DefeasibleCi di{atom("A"), atom("B"), std::nullopt};
  EXPECT_THROW(translate_di(di, atom("A"), 0), std::invalid_argument);
}

TEST(FilterHigherPriority, BaseAxiomsAlwaysSurvive) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  SigmaState state;
  state.base = lower_strong(knowledge.strong);
  state.base.add_ci(atom("N(Human)"), atom("Human"));
  const ClassicalKb filtered = filter_higher_priority(state, prio, 0);
  EXPECT_EQ(filtered.tbox.size(), state.base.tbox.size());
}

TEST(FilterHigherPriority, KeepsStrictlyHigherPriorityOnly) {
  const auto knowledge = corpus::kb(corpus::kReservist);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  const Concept nc = Concept::normal(atom("MaleCitizen"));
  SigmaState state;
  state.base = lower_strong(knowledge.strong);
  state.selected.push_back(translate_di(knowledge.defeasible[1], nc, 1));
  // DI 1 (trained citizens) precedes DI 0 (citizens): it is kept for DI 0.
  EXPECT_EQ(filter_higher_priority(state, prio, 0).tbox.size(), state.base.tbox.size() + 1);
}

TEST(FilterHigherPriority, DropsIncomparableAxioms) {
  const auto knowledge = corpus::kb(corpus::kNixon);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  const Concept nc = Concept::normal(atom("RepQuaker"));
  SigmaState state;
  state.base = lower_strong(knowledge.strong);
  state.selected.push_back(translate_di(knowledge.defeasible[0], nc, 0));
  // Incomparable: the previously selected translation is removed for DI 1.
  EXPECT_EQ(filter_higher_priority(state, prio, 1).tbox.size(), state.base.tbox.size());
}

TEST(BuildKbSigma, Example1NormalHuman) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  const std::vector<Concept> sigma{Concept::normal(atom("Human"))};
  const auto result = build_kb_sigma(knowledge, sigma, prio, reasoner);
  const auto printed = print_classical_kb(result.kb_sigma);
  const std::vector<std::string> expected = {
      "SI <= Human",
      "SI <= some has_heart.RH",
      "some has_heart.LH <= not some has_heart.RH",
      "N(Human) <= Human",
      "N(Human) and Human <= some has_heart.LH",
  };
  EXPECT_EQ(printed, expected);
  EXPECT_EQ(result.selected.size(), 1u);
  EXPECT_TRUE(result.overridden.empty());
}

TEST(BuildKbSigma, Example1NormalSiOverrides) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  const std::vector<Concept> sigma{Concept::normal(atom("SI"))};
  const auto result = build_kb_sigma(knowledge, sigma, prio, reasoner);
  EXPECT_TRUE(result.selected.empty());
  ASSERT_EQ(result.overridden.size(), 1u);
  const auto& [translated, reason] = result.overridden[0];
  EXPECT_EQ(translated.di_index, 0);
  EXPECT_EQ(print_concept(translated.normality), "N(SI)");
  EXPECT_EQ(print_lowered(reason.conclusion), "N(SI) <= Bot");
  // The recorded check must actually entail the conclusion.
  EXPECT_FALSE(reasoner.is_satisfiable(reason.checked, atom("N(SI)")));
}

TEST(BuildKbSigma, NixonKeepsBothDefaults) {
  const auto knowledge = corpus::kb(corpus::kNixon);
  const Reasoner reasoner;
  const auto prio = priority_relation(knowledge, PriorityMode::Specificity, reasoner);
  const std::vector<Concept> sigma{Concept::normal(atom("RepQuaker"))};
  const auto result = build_kb_sigma(knowledge, sigma, prio, reasoner);
  EXPECT_EQ(result.selected.size(), 2u);
  EXPECT_TRUE(result.overridden.empty());
}

TEST(BuildKbSigma, ExactlyDTimesSigmaConsistencyChecks) {
  for (const auto& test_case : corpus::defeasible_cases()) {
    const auto knowledge = corpus::kb(test_case.text);
    const Reasoner reasoner;
    const auto prio = priority_relation(knowledge, test_case.mode, reasoner);
    for (const auto& q : corpus::query_battery(knowledge)) {
      const auto sigma = normality_concepts(knowledge, q);
      const auto before = reasoner.stats();
      const auto result = build_kb_sigma(knowledge, sigma, prio, reasoner);
      const auto after = reasoner.stats();
      const auto expected =
          static_cast<std::uint64_t>(knowledge.defeasible.size()) * sigma.size();
      EXPECT_EQ(after.consistency_checks - before.consistency_checks, expected)
          << test_case.name;
      EXPECT_EQ(after.subsumption_checks, before.subsumption_checks) << test_case.name;
      // Partition: every (DI, normality concept) pair lands exactly once.
      EXPECT_EQ(result.selected.size() + result.overridden.size(), expected) << test_case.name;
      const auto parts = corpus::snapshot(result);
      std::set<std::pair<int, std::string>> all;
      all.insert(parts.selected.begin(), parts.selected.end());
      all.insert(parts.overridden.begin(), parts.overridden.end());
      EXPECT_EQ(all.size(), expected) << test_case.name;
    }
  }
}

TEST(NEntails, Example1Suite) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  EXPECT_TRUE(ask(knowledge, "SI <= some has_heart.RH"));
  EXPECT_TRUE(ask(knowledge, "SI <= not some has_heart.LH"));
  EXPECT_TRUE(ask(knowledge, "N(Human) <= some has_heart.LH"));
  EXPECT_TRUE(ask(knowledge, "SI <= not N(Human)"));
}

TEST(NEntails, Example3Suite) {
  const auto knowledge = corpus::kb(corpus::kReservist);
  EXPECT_FALSE(ask(knowledge, "N(MinorMaleCitizen) <= Reservist"));
  EXPECT_TRUE(ask(knowledge, "N(MaleCitizen) <= Reservist"));
}

TEST(NEntails, SupraclassicalOnStrongPart) {
  for (const auto& test_case : corpus::defeasible_cases()) {
    const auto knowledge = corpus::kb(test_case.text);
    const Reasoner reasoner;
    for (const auto& axiom : knowledge.strong) {
      EXPECT_TRUE(
          n_entails(knowledge, axiom, InferenceOptions{test_case.mode}, reasoner).entailed)
          << test_case.name << " : " << print_axiom(axiom);
    }
  }
}

TEST(NEntails, ClosedUnderClassicalConsequenceChain) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const Axiom a1 = corpus::query("SI <= some has_heart.RH");
  const Axiom a2 = corpus::query("N(Human) <= some has_heart.LH");
  const Axiom a3 = corpus::query("some has_heart.LH <= not some has_heart.RH");
  const Axiom goal = corpus::query("SI <= not N(Human)");
  const Reasoner reasoner;
  const InferenceOptions options;
  ASSERT_TRUE(n_entails(knowledge, a1, options, reasoner).entailed);
  ASSERT_TRUE(n_entails(knowledge, a2, options, reasoner).entailed);
  ASSERT_TRUE(n_entails(knowledge, a3, options, reasoner).entailed);
  // The three answers classically entail the goal over the lowered signature.
  ClassicalKb premises;
  add_lowered(premises, a1);
  add_lowered(premises, a2);
  add_lowered(premises, a3);
  EXPECT_TRUE(entails_lowered_query(reasoner, premises, goal));
  EXPECT_TRUE(n_entails(knowledge, goal, options, reasoner).entailed);
}

TEST(NEntails, InheritanceWithoutBlocking) {
  const auto knowledge = corpus::kb(corpus::kSitusInversusNose);
  EXPECT_TRUE(ask(knowledge, "N(Human) <= some has_organ.Nose"));
  EXPECT_TRUE(ask(knowledge, "N(SI) <= some has_organ.Nose"));
}

TEST(NEntails, RankModeFollowsExplicitPriorities) {
  const auto knowledge = corpus::kb(corpus::kPenguins);
  EXPECT_TRUE(ask(knowledge, "N(Penguin) <= not Flies", PriorityMode::ExplicitRank));
  EXPECT_TRUE(ask(knowledge, "N(Bird) <= Flies", PriorityMode::ExplicitRank));
  EXPECT_FALSE(ask(knowledge, "N(Penguin) <= Flies", PriorityMode::ExplicitRank));
}

TEST(NEntails, RejectsDefeasibleQueries) {
  const Reasoner reasoner;
  const auto knowledge = corpus::kb(corpus::kNixon);
  const Axiom di(DefeasibleCi{atom("A"), atom("B"), std::nullopt});
  EXPECT_THROW(n_entails(knowledge, di, InferenceOptions{}, reasoner), PreconditionError);
}

TEST(LinearizationIndependence, PartitionAndAnswersAgree) {
  for (const auto& test_case : corpus::defeasible_cases()) {
    const auto knowledge = corpus::kb(test_case.text);
    if (knowledge.defeasible.size() > 5) continue;
    const Reasoner reasoner;
    const auto prio = priority_relation(knowledge, test_case.mode, reasoner);
    const auto linearizations =
        corpus::all_linearizations(static_cast<int>(knowledge.defeasible.size()), prio);
    ASSERT_FALSE(linearizations.empty()) << test_case.name;
    const auto battery = corpus::query_battery(knowledge);

    // Sigma as seen by a query without normality concepts of its own.
    const auto reference_sigma =
        normality_concepts(knowledge, Axiom(StrictCi{Concept::top(), Concept::top()}));
    std::optional<corpus::PartitionSnapshot> reference_partition;
    std::vector<bool> reference_answers;
    for (const auto& lin : linearizations) {
      const auto reduction =
          build_kb_sigma_with_linearization(knowledge, reference_sigma, prio, lin, reasoner);
      const auto parts = corpus::snapshot(reduction);
      std::vector<bool> answers;
      answers.reserve(battery.size());
      for (const auto& q : battery) {
        answers.push_back(corpus::entails_with_linearization(knowledge, q, prio, lin, reasoner));
      }
      if (!reference_partition) {
        reference_partition = parts;
        reference_answers = answers;
      } else {
        EXPECT_TRUE(*reference_partition == parts) << test_case.name;
        EXPECT_EQ(reference_answers, answers) << test_case.name;
      }
    }
  }
}

TEST(Prototypes, NixonReport) {
  const auto knowledge = corpus::kb(corpus::kNixon);
  const Reasoner reasoner;
  const auto report = inconsistent_prototypes(knowledge, default_prototype_candidates(knowledge),
                                              InferenceOptions{}, reasoner);
  ASSERT_EQ(report.inconsistent.size(), 1u);
  EXPECT_EQ(print_concept(report.inconsistent[0]), "N(RepQuaker)");
  const auto consistent_has = [&](const char* name) {
    for (const auto& c : report.consistent) {
      if (print_concept(c) == std::string("N(") + name + ")") return true;
    }
    return false;
  };
  EXPECT_TRUE(consistent_has("Quaker"));
  EXPECT_TRUE(consistent_has("Republican"));
}

TEST(Prototypes, RepairedNixonIsClean) {
  const auto knowledge = corpus::kb(corpus::kNixonRepaired);
  const Reasoner reasoner;
  EXPECT_TRUE(ask(knowledge, "N(RepQuaker) <= Pacifist"));
  const auto report = inconsistent_prototypes(knowledge, default_prototype_candidates(knowledge),
                                              InferenceOptions{}, reasoner);
  EXPECT_TRUE(report.inconsistent.empty());
}

TEST(Prototypes, ReportSetsAreDisjoint) {
  const auto knowledge = corpus::kb(corpus::kNixon);
  const Reasoner reasoner;
  const auto report = inconsistent_prototypes(knowledge, default_prototype_candidates(knowledge),
                                              InferenceOptions{}, reasoner);
  for (const auto& bad : report.inconsistent) {
    for (const auto& good : report.consistent) EXPECT_NE(bad, good);
  }
}

TEST(AssumeNonempty, AddsDeterministicWitness) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const Reasoner reasoner;
  const auto extended = assume_nonempty_prototypes(knowledge, {atom("Human")}, reasoner);
  ASSERT_EQ(extended.strong.size(), knowledge.strong.size() + 1);
  EXPECT_EQ(print_axiom(extended.strong.back()), "aux_Human : N(Human)");
}

TEST(AssumeNonempty, EmptySetIsIdentity) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  const Reasoner reasoner;
  const auto extended = assume_nonempty_prototypes(knowledge, {}, reasoner);
  EXPECT_EQ(extended.strong.size(), knowledge.strong.size());
  EXPECT_EQ(extended.defeasible.size(), knowledge.defeasible.size());
}

TEST(AssumeNonempty, NormalSiStaysConsistent) {
  const auto knowledge = corpus::kb(corpus::kSitusInversus);
  EXPECT_FALSE(ask(knowledge, "N(SI) <= Bot"));
  const Reasoner reasoner;
  std::vector<Concept> names;
  for (const auto& name : signature(knowledge).concepts) {
    names.push_back(Concept::atomic(name));
  }
  const auto extended = assume_nonempty_prototypes(knowledge, names, reasoner);
  EXPECT_FALSE(ask(extended, "N(SI) <= Bot"));
}

TEST(AssumeNonempty, RejectsInconsistentConcepts) {
  const auto knowledge = corpus::kb("A <= Bot\n");
  const Reasoner reasoner;
  EXPECT_THROW(assume_nonempty_prototypes(knowledge, {atom("A")}, reasoner), PreconditionError);
}

TEST(ResourceLimits, PropagateWithoutPartialAnswers) {
  const auto knowledge = corpus::kb(
      "Human <~ some has_heart.LH\n"
      "SI <= Human\n"
      "SI <= some has_heart.RH\n"
      "some has_heart.LH <= not some has_heart.RH\n");
  const Reasoner tiny(1);
  EXPECT_THROW(
      n_entails(knowledge, corpus::query("N(Human) <= some has_heart.LH"), InferenceOptions{},
                tiny),
      ResourceLimitError);
}

}  // namespace
