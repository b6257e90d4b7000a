#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"

TEST_CASE("randomized detailed balance, weight balance and variational ratio") {
  const auto out = properties::run(100, 20261017);
  for (const auto& f : out.failing) MESSAGE("failing instance: " << f);
  CHECK(out.cases == 100);
  CHECK(out.detailed_balance_failures == 0);
  CHECK(out.balance_failures == 0);
  CHECK(out.variational_failures == 0);
  CHECK(out.worst_detailed_balance < 1e-10);
  CHECK(out.worst_balance < 1e-12);
  CHECK(out.worst_variational >= -1e-8);
}

TEST_CASE("table conformance and Jerrum soundness on random instances") {
  std::mt19937_64 gen(99);
  for (int c = 0; c < 15; ++c) {
    const auto in = properties::draw_instance(gen);
    CAPTURE(in.label());
    using namespace hdxlab;
    WalkAnalysis wa(local_densifier(random_regular_triangle_free(in.n, in.t, in.seed), complete_complex(in.s, in.h)),
                    in.k);
    CHECK(wa.tables().all_required_pass());
    const auto outer = evaluate_jerrum(wa.outer());
    CHECK(outer.bound <= wa.split_spectrum().one_sided_gap + 1e-9);
    const auto inner = evaluate_jerrum(wa.inner());
    CHECK(inner.bound <= chain_spectrum(wa.outer().restrictions[0]).one_sided_gap + 1e-9);
    CHECK(multiset_containment_deviation(wa.q_spectrum().eigenvalues, wa.split_spectrum().eigenvalues, 1e-9) < 1e-9);
    CHECK(wa.q_spectrum().two_sided_gap >= wa.theorem_rhs());
  }
}
