#include <doctest.h>

#include "ltbt/branching.hpp"
#include "ltbt/errors.hpp"
#include "ltbt/oracle.hpp"
#include "test_util.hpp"

using namespace ltbt;
using namespace testutil;

TEST_CASE("k=0 branching family is plain simulation") {
  // Oracle: lts_core simulates must agree.
  CHECK(branching_family(fix_p(), fix_q(), SwitchBound::finite(0)).has_value() ==
        simulates(fix_p(), fix_q()).has_value());
  CHECK(branching_family(fix_det(), fix_ndet(), SwitchBound::finite(0)).has_value() ==
        simulates(fix_det(), fix_ndet()).has_value());
  GenParams params{.min_states = 1, .max_states = 5, .alphabet_size = 2, .may_density = 0.3};
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto [a, b] = random_lts_pair(params, seed * 53 + 29, static_cast<int>(seed));
    CHECK(branching_family(a, b, SwitchBound::finite(0)).has_value() ==
          simulates(a, b).has_value());
  }
}

TEST_CASE("fixture facts for branching families") {
  // Confirmed against oracle::recursive_family_check in oracle_test.cpp.
  CHECK(branching_family(fix_p(), fix_q(), SwitchBound::finite(0)).has_value());
  // The a-deadlock pair (1,1) cannot answer the switch to the right side.
  CHECK_FALSE(branching_family(fix_p(), fix_q(), SwitchBound::finite(1)).has_value());
  // Ready clause fails at (1,1): b on the right, nothing on the left.
  CHECK_FALSE(branching_family(fix_p(), fix_q(), SwitchBound::finite(0, true)).has_value());
  // Diagonal family.
  for (const Lts& l : {fix_i(), fix_loop(), fix_det(), fix_ndet(), fix_p(), fix_q()}) {
    CHECK(branching_family(l, l, SwitchBound::finite(0)).has_value());
    CHECK(branching_family(l, l, SwitchBound::finite(2, true)).has_value());
    CHECK(branching_family(l, l, SwitchBound::inf()).has_value());
  }
}

TEST_CASE("branching equivalences on fixtures") {
  CHECK(equiv_branching(fix_p(), fix_q(), SwitchBound::finite(0)));
  CHECK_FALSE(equiv_branching(fix_p(), fix_q(), SwitchBound::finite(1)));
  CHECK_FALSE(equiv_branching(fix_det(), fix_ndet(), SwitchBound::finite(0)));
  CHECK(equiv_branching(fix_loop(), fix_loop(), SwitchBound::inf()));
}

TEST_CASE("ready + infinite bound is rejected everywhere") {
  SwitchBound bad{0, true, true};
  CHECK_THROWS_AS(branching_family(fix_p(), fix_q(), bad), InvalidBound);
  CHECK_THROWS_AS(branching_refines(chi_embed(fix_p()), chi_embed(fix_q()), bad), InvalidBound);
}

TEST_CASE("infinite branching family coincides with bisimilarity") {
  GenParams params{.min_states = 1, .max_states = 5, .alphabet_size = 2, .may_density = 0.3};
  for (uint64_t seed = 0; seed < 60; ++seed) {
    auto [a, b] = random_lts_pair(params, seed * 631 + 3, static_cast<int>(seed));
    CHECK(equiv_branching(a, b, SwitchBound::inf()) == bisimilar(a, b).has_value());
    // One-directional inf family == bisimilarity as well (the two-slot
    // system's greatest solution is the greatest bisimulation).
    CHECK(branching_family(a, b, SwitchBound::inf()).has_value() == bisimilar(a, b).has_value());
  }
}

TEST_CASE("returned branching families satisfy the literal clauses") {
  GenParams params{.min_states = 1, .max_states = 5, .alphabet_size = 2, .may_density = 0.3};
  for (uint64_t seed = 0; seed < 40; ++seed) {
    auto [a, b] = random_lts_pair(params, seed * 97 + 13, static_cast<int>(seed));
    for (SwitchBound bound : {SwitchBound::finite(0), SwitchBound::finite(1),
                              SwitchBound::finite(1, true), SwitchBound::inf()}) {
      if (auto fam = branching_family(a, b, bound))
        CHECK(literal_branching_lts_family_ok(a, b, *fam));
    }
  }
}

TEST_CASE("sim_refines fixtures") {
  CHECK(sim_refines(chi_embed(fix_p()), chi_embed(fix_q())).has_value());
  CHECK_FALSE(sim_refines(chi_embed(fix_det()), chi_embed(fix_ndet())).has_value());
  Dmts d = make_dmts(2, {0}, {{0, "a", 1}}, {{0, {{"a", 1}}}});
  CHECK(sim_refines(d, d).has_value());
}

TEST_CASE("sim_refines is adequate for simulation equivalence on chi-images") {
  GenParams params{.min_states = 1, .max_states = 5, .alphabet_size = 2, .may_density = 0.3};
  for (uint64_t seed = 0; seed < 60; ++seed) {
    auto [a, b] = random_lts_pair(params, seed * 911 + 5, static_cast<int>(seed));
    CHECK(sim_refines(chi_embed(a), chi_embed(b)).has_value() == simulation_equivalent(a, b));
  }
}

namespace {

GenParams dmts_params() {
  return GenParams{.min_states = 1,
                   .max_states = 4,
                   .alphabet_size = 2,
                   .may_density = 0.35,
                   .min_musts_per_state = 0,
                   .max_musts_per_state = 2,
                   .min_branch = 1,
                   .max_branch = 2};
}

}  // namespace

TEST_CASE("level 0 of the branching spectrum is sim_refines") {
  GenParams params = dmts_params();
  for (uint64_t seed = 0; seed < 60; ++seed) {
    params.seed = seed * 523 + 19;
    Dmts d1 = random_dmts(params);
    params.seed = seed * 523 + 20;
    Dmts d2 = random_dmts(params);
    auto a = branching_refines(d1, d2, SwitchBound::finite(0));
    auto b = sim_refines(d1, d2);
    CHECK(a.has_value() == b.has_value());
    if (a && b) {
      CHECK(a->forward == b->forward);
      CHECK(a->backward == b->backward);
    }
  }
}

TEST_CASE("table-driven engine matches the literal transcription block by block") {
  GenParams params = dmts_params();
  for (uint64_t seed = 0; seed < 30; ++seed) {
    params.seed = seed * 1543 + 7;
    Dmts d1 = random_dmts(params);
    params.seed = seed * 1543 + 8;
    Dmts d2 = seed % 3 == 0 ? d1 : random_dmts(params);
    for (SwitchBound bound :
         {SwitchBound::finite(0), SwitchBound::finite(0, true), SwitchBound::finite(1),
          SwitchBound::finite(1, true), SwitchBound::finite(2), SwitchBound::inf()}) {
      auto engine = branching_refines(d1, d2, bound);
      auto literal = literal_branching_refines(d1, d2, bound);
      REQUIRE(engine.has_value() == literal.has_value());
      if (engine) {
        CHECK(engine->forward == literal->forward);
        CHECK(engine->backward == literal->backward);
        CHECK(literal_branching_dmts_family_ok(d1, d2, *engine));
      }
    }
  }
}

TEST_CASE("branching fixture facts on chi-images") {
  // <=0 equals sim_refines (already covered); k=1 must fail like ~1.
  CHECK(branching_refines(chi_embed(fix_p()), chi_embed(fix_q()), SwitchBound::finite(0))
            .has_value());
  CHECK_FALSE(
      branching_refines(chi_embed(fix_p()), chi_embed(fix_q()), SwitchBound::finite(1))
          .has_value());
  Dmts d = chi_embed(fix_ndet());
  for (SwitchBound bound : {SwitchBound::finite(0), SwitchBound::finite(1, true), SwitchBound::inf()})
    CHECK(branching_refines(d, d, bound).has_value());
}

TEST_CASE("adequacy: branching_refines on chi-images decides the LTS equivalence") {
  GenParams params{.min_states = 1, .max_states = 5, .alphabet_size = 2, .may_density = 0.3};
  for (uint64_t seed = 0; seed < 40; ++seed) {
    auto [a, b] = random_lts_pair(params, seed * 409 + 23, static_cast<int>(seed));
    for (SwitchBound bound : {SwitchBound::finite(0), SwitchBound::finite(1),
                              SwitchBound::finite(2, true), SwitchBound::inf()}) {
      CHECK(branching_refines(chi_embed(a), chi_embed(b), bound).has_value() ==
            equiv_branching(a, b, bound));
    }
  }
}

TEST_CASE("truncation and ready monotonicity on random pairs") {
  GenParams params{.min_states = 1, .max_states = 5, .alphabet_size = 2, .may_density = 0.3};
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto [a, b] = random_lts_pair(params, seed * 773 + 31, static_cast<int>(seed));
    for (int k = 0; k <= 2; ++k) {
      if (equiv_branching(a, b, SwitchBound::finite(k + 1)))
        CHECK(equiv_branching(a, b, SwitchBound::finite(k)));
    }
    for (int k = 0; k <= 2; ++k) {
      if (equiv_branching(a, b, SwitchBound::finite(k, true)))
        CHECK(equiv_branching(a, b, SwitchBound::finite(k)));
    }
    if (equiv_branching(a, b, SwitchBound::inf())) {
      CHECK(equiv_branching(a, b, SwitchBound::finite(2)));
      CHECK(equiv_branching(a, b, SwitchBound::finite(2, true)));
    }
  }
}

TEST_CASE("refinement failure reports name the first uncovered initial state") {
  Dmts d1 = make_dmts(2, {0, 1}, {{0, "a", 1}, {1, "b", 0}}, {});
  Dmts d2 = make_dmts(1, {0}, {}, {});
  auto report = branching_refines_report(d1, d2, SwitchBound::finite(0));
  CHECK_FALSE(report.holds);
  REQUIRE(report.uncovered_lhs_initial.has_value());
  CHECK(*report.uncovered_lhs_initial == 0);
}
