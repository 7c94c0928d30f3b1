#include <doctest.h>

#include <set>

#include "mn/tags.hpp"

using namespace mn;

TEST_CASE("parse_tag") {
  CHECK(parse_tag("TargNOTAble") == MNTag{Role::Target, true, Modality::Able, false});
  CHECK(parse_tag("TrigNegation") == MNTag{Role::Trigger, false, Modality::Negation, false});
  CHECK(parse_tag("TargNOTSucceedNegation") == MNTag{Role::Target, true, Modality::Succeed, true});
  CHECK(parse_tag("TrigFirmBelief") == parse_tag("TrigFirm_Belief"));
  CHECK(parse_tag("TrigFirmBelief").to_string() == "TrigFirm_Belief");
  CHECK_THROWS_AS(parse_tag("TrigWish"), TagError);
  CHECK_THROWS_AS(parse_tag("Able"), TagError);
  CHECK_THROWS_AS(parse_tag("TargNOTNegation"), TagError);
}

TEST_CASE("compose_negation and duality") {
  MNTag able{Role::Target, false, Modality::Able, false};
  CHECK(compose_negation(able, true).to_string() == "TargNOTAble");
  CHECK(compose_negation(able, false) == able);
  CHECK(compose_negation(compose_negation(able, true), true) == able);
  CHECK_THROWS_AS(compose_negation(MNTag{Role::Target, false, Modality::Negation, false}, true), TagError);

  MNTag req{Role::Target, false, Modality::Require, false};
  CHECK(negate_proposition(req).to_string() == "TargNOTPermit");
  MNTag per{Role::Target, false, Modality::Permit, false};
  CHECK(negate_proposition(per).to_string() == "TargNOTRequire");
  CHECK(negate_proposition(compose_negation(req, true)).to_string() == "TargPermit");
  CHECK(negate_proposition(compose_negation(per, true)).to_string() == "TargRequire");
}

TEST_CASE("inventory and ranks") {
  for (Role role : {Role::Trigger, Role::Target}) {
    auto inv = tag_inventory(role);
    std::set<std::string> names;
    for (int i = 0; i < kInventorySize; ++i) {
      const MNTag& t = inv[static_cast<std::size_t>(i)];
      CHECK(t.is_canonical());
      CHECK(t.role == role);
      CHECK(specificity_rank(t) == i);
      CHECK(parse_tag(t.to_string()) == t);
      names.insert(t.to_string());
    }
    CHECK(names.size() == kInventorySize);
  }
  auto rank = [](const char* s) { return specificity_rank(parse_tag(s)); };
  CHECK(rank("TrigRequire") < rank("TrigNegation"));
  CHECK(rank("TargSucceed") < rank("TargEffort"));
  CHECK(rank("TargRequire") == rank("TrigRequire"));
}

TEST_CASE("menu golden table") {
  struct Row {
    MenuModality m;
    const char* trig;
    const char* targ_true;
    const char* targ_false;
  };
  const Row rows[] = {
      {MenuModality::Require, "TrigRequire", "TargRequire", "TargNOTPermit"},
      {MenuModality::Permit, "TrigPermit", "TargPermit", "TargNOTRequire"},
      {MenuModality::Succeed, "TrigSucceed", "TargSucceed", "TargSucceedNegation"},
      {MenuModality::NotSucceed, "TrigSucceed", "TargNOTSucceed", "TargNOTSucceedNegation"},
      {MenuModality::Try, "TrigEffort", "TargEffort", "TargEffortNegation"},
      {MenuModality::NotTry, "TrigEffort", "TargNOTEffort", "TargNOTEffortNegation"},
      {MenuModality::Intend, "TrigIntend", "TargIntend", "TargIntendNegation"},
      {MenuModality::NotIntend, "TrigIntend", "TargNOTIntend", "TargNOTIntendNegation"},
      {MenuModality::Able, "TrigAble", "TargAble", "TargAbleNegation"},
      {MenuModality::NotAble, "TrigAble", "TargNOTAble", "TargNOTAbleNegation"},
      {MenuModality::Want, "TrigWant", "TargWant", "TargWantNegation"},
      {MenuModality::FirmBelief, "TrigFirm_Belief", "TargFirm_Belief", "TargFirm_BeliefNegation"},
      {MenuModality::Belief, "TrigBelief", "TargBelief", "TargBeliefNegation"},
  };
  for (const auto& r : rows) {
    auto [t1, g1] = menu_choice_to_tags({r.m, true});
    auto [t2, g2] = menu_choice_to_tags({r.m, false});
    CHECK(t1.to_string() == r.trig);
    CHECK(t2.to_string() == r.trig);
    CHECK(g1.to_string() == r.targ_true);
    CHECK(g2.to_string() == r.targ_false);
  }
}
