#include "ltbt/linear.hpp"

#include <map>
#include <set>

#include "ltbt/errors.hpp"
#include "pair_view.hpp"

namespace ltbt {

namespace {

using detail::MustIndex;
using detail::StepIndex;

// One step per branch of each disjunctive must: t =a=> u whenever some
// (t, N) has (a, u) in N.
StepIndex must_steps(int num_states, const MustIndex& musts) {
  StepIndex idx;
  idx.num_states = num_states;
  idx.out.resize(num_states);
  for (const auto& e : musts.entries)
    for (auto [lab, t] : e.branches) idx.out[e.src].emplace_back(lab, t);
  idx.finish();
  return idx;
}

SubsetProduct subset_product_core(const StepIndex& driver, const StepIndex& answer,
                                  State driver_seed, State answer_seed,
                                  const LinearOptions& opts) {
  if (answer.num_states > opts.max_subset_states)
    throw SizeLimit("answer side has " + std::to_string(answer.num_states) +
                    " states, cap is " + std::to_string(opts.max_subset_states));
  if (answer.num_states > 32)
    throw SizeLimit("answer side exceeds the 32-state bitset width");

  SubsetProduct product;
  std::set<SubsetConfig> seen;
  SubsetConfig seed{driver_seed, uint32_t{1} << answer_seed};
  seen.insert(seed);
  product.configs.push_back(seed);
  if (seed.answers == 0) product.empty_answer_reached = true;

  for (size_t head = 0; head < product.configs.size(); ++head) {
    SubsetConfig cur = product.configs[head];
    for (auto [lab, target] : driver.out[cur.driver]) {
      uint32_t next_answers = 0;
      for (State a = 0; a < answer.num_states; ++a) {
        if (!((cur.answers >> a) & 1)) continue;
        for (auto [alab, at] : answer.out[a])
          if (alab == lab) next_answers |= uint32_t{1} << at;
      }
      SubsetConfig next{target, next_answers};
      if (seen.insert(next).second) {
        product.configs.push_back(next);
        if (next.answers == 0) product.empty_answer_reached = true;
      }
    }
  }
  return product;
}

// Lazy per-pair memo of subset products for one driver/answer mode.
class ProductCache {
 public:
  ProductCache(const StepIndex& driver, const StepIndex& answer, const LinearOptions& opts)
      : driver_(driver), answer_(answer), opts_(opts),
        memo_(static_cast<size_t>(driver.num_states) * answer.num_states) {}

  const SubsetProduct& get(State driver_seed, State answer_seed) {
    auto& slot = memo_[static_cast<size_t>(driver_seed) * answer_.num_states + answer_seed];
    if (!slot) slot = subset_product_core(driver_, answer_, driver_seed, answer_seed, opts_);
    return *slot;
  }

 private:
  const StepIndex& driver_;
  const StepIndex& answer_;
  LinearOptions opts_;
  std::vector<std::optional<SubsetProduct>> memo_;
};

// Witness predicates receive (driver endpoint, answer candidate).
template <typename Pred>
bool every_config_has_witness(const SubsetProduct& product, int answer_states, Pred&& pred) {
  for (const auto& cfg : product.configs) {
    bool found = false;
    for (State a = 0; a < answer_states; ++a) {
      if (!((cfg.answers >> a) & 1)) continue;
      if (pred(cfg.driver, a)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

SubsetProduct subset_product(const Lts& driver_side, const Lts& answer_side,
                             State driver_seed, State answer_seed,
                             const LinearOptions& opts) {
  detail::LabelJoin join(driver_side.alphabet, answer_side.alphabet);
  StepIndex driver(driver_side.num_states, driver_side.transitions, join.map_left);
  StepIndex answer(answer_side.num_states, answer_side.transitions, join.map_right);
  return subset_product_core(driver, answer, driver_seed, answer_seed, opts);
}

SubsetProduct subset_product(const Dmts& driver_side, Closure driver_mode,
                             const Dmts& answer_side, Closure answer_mode,
                             State driver_seed, State answer_seed,
                             const LinearOptions& opts) {
  detail::LabelJoin join(driver_side.alphabet, answer_side.alphabet);
  auto build = [](const Dmts& d, Closure mode, const std::vector<Label>& remap) {
    if (mode == Closure::MayTraces)
      return StepIndex(d.num_states, d.may, remap);
    MustIndex mi(d.num_states, d.must, remap);
    return must_steps(d.num_states, mi);
  };
  StepIndex driver = build(driver_side, driver_mode, join.map_left);
  StepIndex answer = build(answer_side, answer_mode, join.map_right);
  return subset_product_core(driver, answer, driver_seed, answer_seed, opts);
}

std::optional<LtsRelationFamily> linear_family(const Lts& lhs, const Lts& rhs,
                                               SwitchBound bound, const LinearOptions& opts) {
  validate_bound(bound);
  detail::LtsPairView v(lhs, rhs);
  ProductCache even_products(v.left, v.right, opts);  // left traces drive
  ProductCache odd_products(v.right, v.left, opts);   // right traces drive

  auto product_for = [&](int parity, State s1, State s2) -> const SubsetProduct& {
    return parity == 0 ? even_products.get(s1, s2) : odd_products.get(s2, s1);
  };

  LtsRelationFamily fam{bound, {}};
  fam.levels.reserve(bound.levels());
  for (int j = 0; j < bound.levels(); ++j) {
    int parity = bound.parity(j);
    StateRelation rel(v.n1, v.n2);
    for (State s1 = 0; s1 < v.n1; ++s1) {
      for (State s2 = 0; s2 < v.n2; ++s2) {
        const auto& product = product_for(parity, s1, s2);
        if (product.empty_answer_reached) continue;
        if (bound.ready && bound.is_terminal(j)) {
          bool ok = every_config_has_witness(
              product, parity == 0 ? v.n2 : v.n1, [&](State driver, State ans) {
                return parity == 0 ? detail::lts_ready_even(v.left, v.right, driver, ans)
                                   : detail::lts_ready_odd(v.left, v.right, ans, driver);
              });
          if (!ok) continue;
        }
        rel.insert(s1, s2);
      }
    }
    fam.levels.push_back(std::move(rel));
  }

  // Targeted clauses: every configuration needs a next-level witness, with
  // the empty trace forcing the pair itself into the next level.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < bound.levels(); ++j) {
      if (!bound.has_next(j)) continue;
      int parity = bound.parity(j);
      const StateRelation& next = fam.levels[bound.next_level(j)];
      for (State s1 = 0; s1 < v.n1; ++s1) {
        for (State s2 = 0; s2 < v.n2; ++s2) {
          if (!fam.levels[j].contains(s1, s2)) continue;
          const auto& product = product_for(parity, s1, s2);
          bool ok = every_config_has_witness(
              product, parity == 0 ? v.n2 : v.n1, [&](State driver, State ans) {
                return parity == 0 ? next.contains(driver, ans) : next.contains(ans, driver);
              });
          if (!ok) {
            fam.levels[j].erase(s1, s2);
            changed = true;
          }
        }
      }
    }
  }

  if (!fam.levels[0].contains(lhs.initial, rhs.initial)) return std::nullopt;
  return fam;
}

bool equiv_linear(const Lts& lhs, const Lts& rhs, SwitchBound bound,
                  const LinearOptions& opts) {
  return linear_family(lhs, rhs, bound, opts).has_value() &&
         linear_family(rhs, lhs, bound, opts).has_value();
}

DmtsRefineReport linear_refines_report(const Dmts& lhs, const Dmts& rhs, SwitchBound bound,
                                       const LinearOptions& opts) {
  validate_bound(bound);
  detail::DmtsPairView v(lhs, rhs);
  StepIndex must_left = must_steps(v.n1, v.must_left);
  StepIndex must_right = must_steps(v.n2, v.must_right);

  // Mode A: left may-traces drive, right may-traces answer.
  // Mode B: right must-traces drive, left must-traces answer.
  ProductCache may_products(v.may_left, v.may_right, opts);
  ProductCache must_products(must_right, must_left, opts);

  // Row mode: R1 (side 0) runs mode A at even levels, R2 is the mirror.
  auto row_is_may = [](int side, int parity) { return (side == 0) == (parity == 0); };

  DoubleRelationFamily fam{bound, {}, {}};
  auto chain = [&fam](int side) -> std::vector<StateRelation>& {
    return side == 0 ? fam.forward : fam.backward;
  };

  for (int side = 0; side < 2; ++side) {
    for (int j = 0; j < bound.levels(); ++j) {
      bool may_mode = row_is_may(side, bound.parity(j));
      StateRelation rel(v.n1, v.n2);
      for (State s1 = 0; s1 < v.n1; ++s1) {
        for (State s2 = 0; s2 < v.n2; ++s2) {
          const auto& product =
              may_mode ? may_products.get(s1, s2) : must_products.get(s2, s1);
          if (product.empty_answer_reached) continue;
          if (bound.ready && bound.is_terminal(j)) {
            // Mode A rows end in the must-ready comparison, mode B rows in
            // the may-ready comparison.
            bool ok = every_config_has_witness(
                product, may_mode ? v.n2 : v.n1, [&](State driver, State ans) {
                  return may_mode ? detail::dmts_must_ready(v, driver, ans)
                                  : detail::dmts_may_ready(v, ans, driver);
                });
            if (!ok) continue;
          }
          rel.insert(s1, s2);
        }
      }
      chain(side).push_back(std::move(rel));
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (int side = 0; side < 2; ++side) {
      for (int j = 0; j < bound.levels(); ++j) {
        if (!bound.has_next(j)) continue;
        int parity = bound.parity(j);
        bool may_mode = row_is_may(side, parity);
        // The definition's R2 even-level target clause names the R1 chain;
        // the default reading keeps each chain self-contained.
        int target_side = side;
        if (opts.literal_defs && side == 1 && parity == 0) target_side = 0;
        const StateRelation& next = chain(target_side)[bound.next_level(j)];
        for (State s1 = 0; s1 < v.n1; ++s1) {
          for (State s2 = 0; s2 < v.n2; ++s2) {
            if (!chain(side)[j].contains(s1, s2)) continue;
            const auto& product =
                may_mode ? may_products.get(s1, s2) : must_products.get(s2, s1);
            bool ok = every_config_has_witness(
                product, may_mode ? v.n2 : v.n1, [&](State driver, State ans) {
                  return may_mode ? next.contains(driver, ans) : next.contains(ans, driver);
                });
            if (!ok) {
              chain(side)[j].erase(s1, s2);
              changed = true;
            }
          }
        }
      }
    }
  }

  DmtsRefineReport report;
  report.family = std::move(fam);
  detail::check_coverage(lhs, rhs, report);
  return report;
}

std::optional<DoubleRelationFamily> linear_refines(const Dmts& lhs, const Dmts& rhs,
                                                   SwitchBound bound,
                                                   const LinearOptions& opts) {
  DmtsRefineReport report = linear_refines_report(lhs, rhs, bound, opts);
  if (!report.holds) return std::nullopt;
  return std::move(report.family);
}

}  // namespace ltbt
