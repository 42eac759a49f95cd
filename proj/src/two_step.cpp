#include "gospace/two_step.hpp"

#include <random>

namespace gospace {

TGrid default_t_grid() {
  TGrid g;
  g.rational = {{0, 1}, {1, 7}, {-1, 7}, {1, 3}, {-1, 3}, {1, 1}, {-1, 1}, {27, 10}, {-27, 10}};
  // fixed engine and explicit conversion so the points do not depend on the standard library
  std::mt19937_64 rng(0x7e57);
  for (int i = 0; i < 16; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    g.floating.push_back(-3.0 + 6.0 * u);
  }
  return g;
}

TwoStepRecipe two_step_recipe(const ReductiveSpace<Rational>& space, const std::vector<std::size_t>& group_one,
                              const Rational& lambda, std::size_t samples, std::uint64_t seed, std::size_t jobs) {
  TwoStepRecipe r;
  auto dec = decompose_isotropy(space, seed);
  r.irreducible_dims = dec.block_dims;
  r.method = dec.method;
  const auto& blocks = dec.space.submodules();
  std::vector<char> in_one(blocks.size(), 0);
  for (auto b : group_one) {
    if (b >= blocks.size()) throw InvalidArgument("two_step_recipe: block index out of range");
    in_one[b] = 1;
  }
  std::vector<std::size_t> m1, m2;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (auto i : blocks[b]) (in_one[b] ? m1 : m2).push_back(i);
  if (m1.empty() || m2.empty()) throw InvalidArgument("two_step_recipe: both groups must be nonempty");
  std::sort(m1.begin(), m1.end());
  std::sort(m2.begin(), m2.end());
  r.grouped = dec.space.with_submodules({m1, m2}, space.id() + "/grouped");
  r.naturally_reductive_base = naturally_reductive_check(*r.grouped, standard_metric(*r.grouped)).holds;
  if (!r.naturally_reductive_base) {
    r.reason = "background form is not naturally reductive";
    return r;
  }
  r.bracket_condition = bracket_condition(*r.grouped, 0, 1);
  if (!r.bracket_condition) {
    r.reason = "[m1, m2] is not contained in m1";
    return r;
  }
  auto metric = metric_from_lambdas(*r.grouped, Vec<Rational>{Rational(1), lambda});
  auto [all, mx] = verify_two_step_samples(*r.grouped, metric, samples, seed, jobs);
  r.verdict = all;
  r.max_residual = mx;
  if (!all) r.reason = "a sampled curve failed the G_W test";
  return r;
}

}  // namespace gospace
