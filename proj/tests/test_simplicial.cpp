#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "hdxlab/error.hpp"
#include "hdxlab/simplicial.hpp"
#include "oracle.hpp"

using namespace hdxlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::kInvalidInput;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Every subset of a face, by brute force over bitmasks.
bool downward_closed(const SimplicialComplex& c) {
  for (int k = 0; k <= c.top_dim(); ++k) {
    for (const Face& f : c.faces(k)) {
      for (unsigned mask = 1; mask < (1u << f.size()); ++mask) {
        Face sub;
        for (std::size_t i = 0; i < f.size(); ++i) {
          if (mask & (1u << i)) sub.push_back(f[i]);
        }
        if (!c.contains(sub)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("complete complexes") {
  const auto k4 = complete_complex(4, 2);
  CHECK(k4.top_dim() == 2);
  CHECK(k4.face_count(0) == 4);
  CHECK(k4.face_count(1) == 6);
  CHECK(k4.face_count(2) == 4);
  for (double w : k4.weights(1)) CHECK(w == 2.0);
  for (double w : k4.weights(0)) CHECK(w == 6.0);
  CHECK(k4.is_pure());
  CHECK(downward_closed(k4));

  const auto edge = complete_complex(2, 1);
  CHECK(edge.face_count(1) == 1);
  CHECK(edge.weights(1)[0] == 1.0);

  CHECK(kind_of([] { complete_complex(2, 2); }) == ErrorKind::kDimension);
}

TEST_CASE("weight propagation") {
  // A single top face: a k-face lies in (H - k)! maximal chains up to the top.
  for (int h = 1; h <= 4; ++h) {
    Face top;
    for (int v = 0; v <= h; ++v) top.push_back(v);
    const auto c = SimplicialComplex::from_maximal_faces(h + 1, {top}, {1.0});
    for (int k = 0; k <= h; ++k) {
      for (double w : c.weights(k)) CHECK(w == doctest::Approx(factorial(h - k)));
    }
  }

  const auto k53 = complete_complex(5, 3);
  CHECK(k53.balance_residual() < 1e-12);

  std::map<Face, double> tops;
  for (const Face& f : k53.faces(3)) tops[f] = 1.0;
  const auto again = propagate_weights(k53, tops);
  for (int k = 0; k <= 3; ++k) CHECK(again.weights(k) == k53.weights(k));

  std::map<Face, double> zero;
  for (const Face& f : k53.faces(3)) zero[f] = 0.0;
  const auto z = propagate_weights(k53, zero);
  CHECK(z.is_degenerate());

  tops.erase(tops.begin());
  CHECK(kind_of([&] { propagate_weights(k53, tops); }) == ErrorKind::kIncompleteWeights);
}

TEST_CASE("validation") {
  CHECK(kind_of([] { SimplicialComplex(3, {{{0}, {1}}, {{0, 1}, {1, 2}}}, {{1, 1}, {1, 1}}); }) ==
        ErrorKind::kDownwardClosure);
  CHECK(kind_of([] { SimplicialComplex(3, {{{0}, {1}}, {{1, 0}}}, {{1, 1}, {1}}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { SimplicialComplex(2, {{{0}, {2}}}, {{1, 1}}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { complete_complex(4, 2).weight({0, 5}); }) == ErrorKind::kMissingFace);
  const auto mixed = SimplicialComplex::from_maximal_faces(4, {{0, 1, 2}, {2, 3}}, {1.0, 1.0});
  CHECK_FALSE(mixed.is_pure());
  CHECK(downward_closed(mixed));
}

TEST_CASE("links") {
  // A 1-dimensional complex: the link of a vertex is its neighborhood.
  std::vector<Face> cyc{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  const auto c5 = SimplicialComplex::from_maximal_faces(5, cyc, std::vector<double>(5, 1.0));
  const auto l0 = link(c5, {0});
  CHECK(l0.complex.top_dim() == 0);
  std::vector<int> nbrs;
  for (const Face& f : l0.complex.faces(0)) nbrs.push_back(l0.vertex_map[f[0]]);
  std::sort(nbrs.begin(), nbrs.end());
  CHECK(nbrs == std::vector<int>{1, 4});

  const auto k4 = complete_complex(4, 2);
  const auto whole = link(k4, {});
  for (int k = 0; k <= 2; ++k) {
    CHECK(whole.complex.faces(k) == k4.faces(k));
    CHECK(whole.complex.weights(k) == k4.weights(k));
  }

  // Link of an edge of K_4^(2): the two vertices completing a triangle, weight 1 each.
  const auto le = link(k4, {0, 1});
  CHECK(le.complex.top_dim() == 0);
  CHECK(le.complex.face_count(0) == 2);
  std::vector<int> apex;
  for (const Face& f : le.complex.faces(0)) apex.push_back(le.vertex_map[f[0]]);
  std::sort(apex.begin(), apex.end());
  CHECK(apex == std::vector<int>{2, 3});
  for (double w : le.complex.weights(0)) CHECK(w == 1.0);

  CHECK(kind_of([&] { link(k4, {0, 7}); }) == ErrorKind::kMissingFace);
}

TEST_CASE("links of a balanced complex are balanced") {
  const auto k53 = complete_complex(5, 3);
  for (int k = 0; k <= 3; ++k) {
    for (const Face& f : k53.faces(k)) {
      const auto l = link(k53, f);
      if (l.complex.top_dim() < 0) continue;
      CHECK(l.complex.balance_residual() < 1e-12);
      // Inherited weights w(S u T).
      for (int j = 0; j <= l.complex.top_dim(); ++j) {
        for (std::size_t i = 0; i < l.complex.face_count(j); ++i) {
          Face parent = f;
          for (int v : l.complex.faces(j)[i]) parent.push_back(l.vertex_map[v]);
          std::sort(parent.begin(), parent.end());
          CHECK(l.complex.weights(j)[i] == k53.weight(parent));
        }
      }
    }
  }
}

TEST_CASE("one-skeleton") {
  const auto k4 = complete_complex(4, 2);
  const auto g = one_skeleton(k4);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 6);
  CHECK(oracle::deviation(spectrum(g).eigenvalues, {1.0, -1.0 / 3, -1.0 / 3, -1.0 / 3}) < 1e-12);

  // A 1-dimensional complex is its own skeleton.
  std::vector<Face> path{{0, 1}, {1, 2}, {0, 2}};
  const auto tri = SimplicialComplex::from_maximal_faces(3, path, {1.0, 2.0, 3.0});
  const auto w = one_skeleton(tri).weight_matrix();
  CHECK(w(0, 1) == 1.0);
  CHECK(w(1, 2) == 2.0);
  CHECK(w(0, 2) == 3.0);

  // A zero-weight edge leaves the normalization support.
  const auto zeroed = SimplicialComplex::from_maximal_faces(3, path, {1.0, 1.0, 0.0});
  const auto s = skeleton_spectrum(zeroed);
  REQUIRE(s);
  CHECK(oracle::deviation(s->summary.eigenvalues, {1.0, 0.0, -1.0}) < 1e-12);
}

TEST_CASE("global and local expansion") {
  const auto edge = complete_complex(2, 1);
  CHECK(std::abs(global_expansion(edge)) < 1e-12);
  CHECK(global_expansion(complete_complex(4, 2)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  for (int h = 2; h <= 3; ++h) {
    CAPTURE(h);
    const auto c = complete_complex(h + 2, h);
    const auto local = local_expansion(c);
    REQUIRE(local.value);
    CHECK(*local.value == doctest::Approx(0.5).epsilon(1e-9));
    for (const auto& l : local.links) CHECK(l.two_sided_gap >= 0.5 - 1e-9);
    CHECK(global_expansion(c) >= 0.5 - 1e-9);
    CHECK_FALSE(local.any_disconnected);
  }

  // H = 1: vertex links of K_3 are edgeless, so no link is evaluable; the
  // triangle itself has gap 1/2.
  const auto k3 = complete_complex(3, 1);
  const auto local = local_expansion(k3);
  CHECK_FALSE(local.value);
  CHECK(local.skipped == 3);
  CHECK(global_expansion(k3) == doctest::Approx(0.5).epsilon(1e-12));

  // Two triangles sharing vertex 0: its link is two disjoint edges.
  const auto bowtie = SimplicialComplex::from_maximal_faces(5, {{0, 1, 2}, {0, 3, 4}}, {1.0, 1.0});
  const auto bl = local_expansion(bowtie);
  CHECK(bl.any_disconnected);
  REQUIRE(bl.value);
  CHECK(*bl.value <= 1e-12);
}
