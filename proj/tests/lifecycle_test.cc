#include "assure/lifecycle.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "assure/error.h"

namespace assure::lifecycle {
namespace {

using S = DeploymentState;

SnapshotAssessment AtDas(std::string id, double das, bool remediation = false) {
  SignalsRecord r;
  r.snapshot_id = std::move(id);
  r.signals.remediation_event = remediation;
  return Assess(r, {}, das);
}

SignalsRecord Row(std::string id, double fdi, double fpr, double fnr, double tsz, bool rem) {
  SignalsRecord r;
  r.snapshot_id = std::move(id);
  r.signals.fdi = fdi;
  r.signals.delta_fpr = fpr;
  r.signals.delta_fnr = fnr;
  r.signals.tsz = tsz;
  r.signals.remediation_event = rem;
  return r;
}

bool HasReason(const TransitionRecord& r, const std::string& reason) {
  return std::find(r.trigger_reasons.begin(), r.trigger_reasons.end(), reason) !=
         r.trigger_reasons.end();
}

TEST(Step, DegradationIsImmediate) {
  const auto [next, rec] = Step(S::kDeployable, AtDas("x", 0.20), {});
  EXPECT_EQ(next, S::kBlockedDeployment);
  EXPECT_TRUE(HasReason(rec, "das_band_change"));
}

TEST(Step, GatedRecoveryMovesOneLevel) {
  const auto [next, rec] = Step(S::kEscalatedGovernance, AtDas("x", 0.71, true), {});
  EXPECT_EQ(next, S::kReassessmentRequired);
  EXPECT_TRUE(HasReason(rec, "recovery_gated"));
}

TEST(Step, SameBandHolds) {
  const auto [next, rec] = Step(S::kRestricted, AtDas("x", 0.70), {});
  EXPECT_EQ(next, S::kRestricted);
  EXPECT_FALSE(rec.changed());
  EXPECT_TRUE(rec.trigger_reasons.empty());
}

TEST(Step, UngatedRecoveryMatchesStatelessClass) {
  RulesConfig rules;
  rules.recovery_gating = false;
  const auto [next, rec] = Step(S::kEscalatedGovernance, AtDas("x", 0.71, true), rules);
  EXPECT_EQ(next, S::kRestricted);
  EXPECT_TRUE(rec.changed());
}

TEST(Step, RecoveryNeedsRemediationAndHysteresis) {
  auto [held, rec] = Step(S::kEscalatedGovernance, AtDas("x", 0.71, false), {});
  EXPECT_EQ(held, S::kEscalatedGovernance);
  EXPECT_TRUE(HasReason(rec, "recovery_requires_remediation"));

  // 0.51 is in the reassessment band but within the 0.02 margin of its bound.
  auto [margin, rec2] = Step(S::kEscalatedGovernance, AtDas("x", 0.51, true), {});
  EXPECT_EQ(margin, S::kEscalatedGovernance);
  EXPECT_TRUE(HasReason(rec2, "hysteresis_hold"));
  EXPECT_EQ(Step(S::kEscalatedGovernance, AtDas("x", 0.52, true), {}).first,
            S::kReassessmentRequired);

  // Ungated: 0.66 clears Reassessment's margin but not Restricted's.
  RulesConfig ungated;
  ungated.recovery_gating = false;
  auto [partial, rec3] = Step(S::kEscalatedGovernance, AtDas("x", 0.66, true), ungated);
  EXPECT_EQ(partial, S::kReassessmentRequired);
  EXPECT_TRUE(HasReason(rec3, "hysteresis_limited"));
}

TEST(Step, BlockedRecoveryPassesThroughReassessment) {
  RulesConfig ungated;
  ungated.recovery_gating = false;
  EXPECT_EQ(Step(S::kBlockedDeployment, AtDas("x", 0.95, true), ungated).first,
            S::kReassessmentRequired);
  ungated.blocked_recovery_via_reassessment = false;
  EXPECT_EQ(Step(S::kBlockedDeployment, AtDas("x", 0.95, true), ungated).first,
            S::kDeployable);
  EXPECT_EQ(Step(S::kBlockedDeployment, AtDas("x", 0.95, true), {}).first,
            S::kEscalatedGovernance);
}

TEST(Step, FragilityOverrideDegrades) {
  SignalsRecord r;
  r.snapshot_id = "frag";
  r.signals.worst_zone = stability::Zone::kGovernanceFragility;
  const auto a = Assess(r, {}, 0.95);
  EXPECT_EQ(a.stateless_drc, S::kEscalatedGovernance);
  const auto [next, rec] = Step(S::kDeployable, a, {});
  EXPECT_EQ(next, S::kEscalatedGovernance);
  EXPECT_TRUE(HasReason(rec, "fragility_override"));
}

TEST(Replay, ReferenceSequenceGatedAndUngated) {
  const std::vector<SnapshotAssessment> seq = {AtDas("baseline", 0.48),
                                               AtDas("balanced_batch_sampling", 0.71, true)};
  const auto gated = Replay(seq, S::kReassessmentRequired, {});
  ASSERT_EQ(gated.entries.size(), 2u);
  EXPECT_EQ(gated.entries[0].governed_state, S::kEscalatedGovernance);
  EXPECT_EQ(gated.entries[1].governed_state, S::kReassessmentRequired);
  EXPECT_FALSE(gated.entries[0].transition);
  EXPECT_FALSE(gated.entries[0].assessment.r_p);
  ASSERT_TRUE(gated.entries[1].assessment.r_p);
  EXPECT_NEAR(*gated.entries[1].assessment.r_p, 0.23, 1e-12);

  RulesConfig ungated;
  ungated.recovery_gating = false;
  const auto free = Replay(seq, S::kReassessmentRequired, ungated);
  EXPECT_EQ(free.entries[0].governed_state, S::kEscalatedGovernance);
  EXPECT_EQ(free.entries[1].governed_state, S::kRestricted);
  EXPECT_NE(gated.config_fingerprint, free.config_fingerprint);
}

TEST(Replay, SingleSnapshotAndEmpty) {
  const auto t = Replay({AtDas("only", 0.9)}, S::kReassessmentRequired, {});
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_FALSE(t.entries[0].transition);
  EXPECT_FALSE(t.entries[0].assessment.r_p);
  try {
    Replay({}, S::kReassessmentRequired, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySequence);
  }
}

TEST(AssessSequence, DerivesRemediationEffectiveness) {
  const auto a = AssessSequence({Row("b", 0.1, 0.1, 0.1, 0.1, false),
                                 Row("r", 0.3, 0.1, 0.1, 0.1, true)},
                                {});
  ASSERT_TRUE(a[1].signals.r_m);
  EXPECT_NEAR(*a[1].signals.r_m, -0.05, 1e-12);
  ASSERT_TRUE(a[1].r_p);
  EXPECT_FALSE(a[0].signals.r_m);
}

TEST(EmitTrace, BaselineRowAndDeterminism) {
  const auto seq = AssessSequence({Row("baseline", 0.68, 0.304, 0.694, 0.42, false)}, {});
  const auto trace = Replay(seq, S::kReassessmentRequired, {});
  const std::string csv = EmitTrace(trace, Format::kCsv);
  EXPECT_EQ(csv, std::string(kTraceCsvHeader) +
                     "\nbaseline,0.6800,0.3040,0.6940,0.4200,0.4755,High,"
                     "EscalatedGovernance,EscalatedGovernance,,\n");
  EXPECT_EQ(csv, EmitTrace(Replay(seq, S::kReassessmentRequired, {}), Format::kCsv));
  const std::string json = EmitTrace(trace, Format::kJson);
  EXPECT_EQ(json, EmitTrace(trace, Format::kJson));
  EXPECT_NE(json.find("\"config_fingerprint\""), std::string::npos);
}

TEST(EmitTrace, TransitionLabelAndRp) {
  const auto trace = Replay({AtDas("a", 0.48), AtDas("b", 0.71, true)},
                            S::kReassessmentRequired, {});
  const std::string csv = EmitTrace(trace, Format::kCsv);
  EXPECT_NE(csv.find(",EscalatedGovernance->ReassessmentRequired[das_band_change;recovery_gated],"
                     "0.2300\n"),
            std::string::npos)
      << csv;
}

// Property suites.

std::vector<SnapshotAssessment> RandomWalk(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution coin(0.6);
  std::vector<SnapshotAssessment> out;
  for (int i = 0; i < n; ++i) out.push_back(AtDas("s" + std::to_string(i), u(rng), coin(rng)));
  return out;
}

TEST(LifecycleProperties, DegradationNeverGatedAndRecoveryOneLevel) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> start(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto seq = RandomWalk(rng, 30);
    const S initial = FromFavorability(start(rng));
    const auto trace = Replay(seq, initial, {});
    S prev = initial;
    for (const TraceEntry& e : trace.entries) {
      const S target = e.assessment.stateless_drc;
      if (MoreFavorable(prev, target)) ASSERT_EQ(e.governed_state, target);
      ASSERT_LE(Favorability(e.governed_state), Favorability(prev) + 1);
      if (e.transition && e.transition->changed()) {
        ASSERT_FALSE(e.transition->trigger_reasons.empty());
        ASSERT_EQ(e.transition->from_state, prev);
        ASSERT_EQ(e.transition->to_state, e.governed_state);
      }
      prev = e.governed_state;
    }
    ASSERT_EQ(EmitTrace(trace, Format::kCsv),
              EmitTrace(Replay(seq, initial, {}), Format::kCsv));
  }
}

TEST(LifecycleProperties, MonotoneTraversals) {
  std::vector<SnapshotAssessment> down, up;
  for (int k = 19; k >= 1; --k) down.push_back(AtDas("d" + std::to_string(k), k * 0.05));
  for (int k = 1; k <= 19; ++k) up.push_back(AtDas("u" + std::to_string(k), k * 0.05, true));

  const auto dtrace = Replay(down, S::kDeployable, {});
  std::vector<S> visited;
  for (const auto& e : dtrace.entries) {
    if (visited.empty() || visited.back() != e.governed_state) visited.push_back(e.governed_state);
  }
  EXPECT_EQ(visited, std::vector<S>(kAllStates.begin(), kAllStates.end()));

  const auto utrace = Replay(up, S::kBlockedDeployment, {});
  int prev = 0;
  for (const auto& e : utrace.entries) {
    EXPECT_GE(Favorability(e.governed_state), prev);
    prev = Favorability(e.governed_state);
  }
  EXPECT_EQ(utrace.entries.back().governed_state, S::kDeployable);
}

}  // namespace
}  // namespace assure::lifecycle
