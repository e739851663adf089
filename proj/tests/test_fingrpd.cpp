#include <gtest/gtest.h>

#include <numeric>

#include "hsw/fingrpd.hpp"

using namespace hsw;

namespace {

bool has_tag(const ValidationReport& r, const std::string& tag) {
  for (const auto& f : r.findings())
    if (f.tag.find(tag) != std::string::npos) return true;
  return false;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// ranks from dense matrices, independent of the sparse path
std::vector<int> dense_dims(const FiniteGroupoid& g, int max_level) {
  Nerve n(g, max_level + 1);
  std::vector<int> rk(max_level + 1);
  for (int p = 0; p <= max_level; ++p) rk[p] = rank(coboundary_matrix(g, n, p));
  std::vector<int> out;
  for (int p = 0; p <= max_level; ++p) out.push_back(n.size(p) - rk[p] - (p ? rk[p - 1] : 0));
  return out;
}

CoveredSurjection global_section(const FiniteGroupoid& g) {
  CoveredSurjection cs;
  cs.phi.resize(g.n_obj);
  std::iota(cs.phi.begin(), cs.phi.end(), 0);
  std::vector<int> all(g.n_obj);
  std::iota(all.begin(), all.end(), 0);
  cs.cover = {all};
  cs.sections = {cs.phi};
  cs.weights = {Vec(g.n_obj, Scalar(1))};
  return cs;
}

}  // namespace

TEST(Groupoid, UnitAndPairValid) {
  EXPECT_TRUE(check_groupoid(unit_groupoid(3)).ok());
  EXPECT_TRUE(check_groupoid(pair_groupoid(2)).ok());
  EXPECT_TRUE(check_groupoid(transitive_groupoid(2, 3)).ok());
  EXPECT_TRUE(check_groupoid(transitive_groupoid(2, 0)).ok());
}

TEST(Groupoid, RedirectedCompositeBreaksAssociativity) {
  auto g = pair_groupoid(3);
  // (0,1)(1,2) should be (0,2); send it to the unit at 0 instead
  int a = -1, b = -1;
  for (int i = 0; i < g.n_arr; ++i) {
    if (g.tgt[i] == 0 && g.src[i] == 1) a = i;
    if (g.tgt[i] == 1 && g.src[i] == 2) b = i;
  }
  g.comp[{a, b}] = g.unit[0];
  auto r = check_groupoid(g);
  EXPECT_TRUE(has_tag(r, "assoc"));
}

TEST(Groupoid, RandomAreValid) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    auto g = random_groupoid(rng);
    EXPECT_LE(g.n_obj, 6);
    EXPECT_LE(g.n_arr, 30);
    EXPECT_TRUE(check_groupoid(g).ok());
  }
}

TEST(Nerve, Counts) {
  for (int n = 1; n <= 3; ++n)
    for (int p = 0; p <= 3; ++p) {
      EXPECT_EQ(static_cast<long>(nerve(pair_groupoid(n), p).size()), ipow(n, p + 1));
      EXPECT_EQ(static_cast<int>(nerve(unit_groupoid(n), p).size()), n);
    }
  for (int p = 0; p <= 3; ++p) EXPECT_EQ(static_cast<long>(nerve(cyclic_group_groupoid(3), p).size()), ipow(3, p));
}

TEST(Coboundary, ConstantsAreCocycles) {
  auto g = transitive_groupoid(3, 2);
  auto d = coboundary(g, Cochain{0, Vec(g.n_obj, Scalar(5))});
  EXPECT_TRUE(vec_is_zero(d.values));
}

TEST(Coboundary, IndicatorOnPair) {
  auto g = pair_groupoid(2);
  auto d = coboundary(g, Cochain{0, {1, 0}});
  for (int i = 0; i < g.n_arr; ++i) {
    Scalar expect = Scalar(g.src[i] == 0 ? 1 : 0) - Scalar(g.tgt[i] == 0 ? 1 : 0);
    EXPECT_EQ(d.values[i], expect);
  }
}

TEST(Coboundary, SquaresToZero) {
  std::mt19937_64 rng(2);
  auto g = transitive_groupoid(2, 3);
  ASSERT_EQ(g.n_arr, 12);
  Nerve n(g, 4);
  for (int p = 0; p <= 2; ++p)
    for (int t = 0; t < 3; ++t) {
      Cochain c{p, Vec(n.size(p))};
      std::uniform_int_distribution<int> u(-4, 4);
      for (auto& v : c.values) v = Scalar(u(rng));
      EXPECT_TRUE(vec_is_zero(coboundary(g, n, coboundary(g, n, c)).values));
    }
}

TEST(Cohomology, KnownValues) {
  EXPECT_EQ(cohomology_dims(pair_groupoid(3), 2), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(cohomology_dims(unit_groupoid(4), 3), (std::vector<int>{4, 0, 0, 0}));
  EXPECT_EQ(cohomology_dims(cyclic_group_groupoid(2), 2), (std::vector<int>{1, 0, 0}));
}

TEST(Cohomology, SparseAgreesWithDense) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    auto g = random_groupoid(rng, 4, 12);
    EXPECT_EQ(cohomology_dims(g, 2), dense_dims(g, 2));
  }
}

TEST(Pullback, IdentityIsCopy) {
  auto g = transitive_groupoid(2, 2);
  std::vector<int> id(g.n_obj);
  std::iota(id.begin(), id.end(), 0);
  auto pb = pullback_groupoid(g, id);
  EXPECT_EQ(pb.g.n_arr, g.n_arr);
  EXPECT_TRUE(check_groupoid(pb.g).ok());
  std::vector<int> seen(g.n_arr, 0);
  for (int a : pb.proj) ++seen[a];
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

TEST(Pullback, FoldOverUnitGivesPairBands) {
  auto g = unit_groupoid(3);
  auto pb = pullback_groupoid(g, {0, 1, 2, 0, 1, 2});
  EXPECT_EQ(pb.g.n_arr, 12);
  EXPECT_TRUE(check_groupoid(pb.g).ok());
  // each band is a pair groupoid on two points
  EXPECT_EQ(cohomology_dims(pb.g, 1), (std::vector<int>{3, 0}));
  EXPECT_THROW(pullback_groupoid(g, {0, 1}), NotSurjective);
}

TEST(Pullback, CountingAndMoritaInvariance) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    auto g = random_groupoid(rng, 4, 16);
    auto cs = random_covered_surjection(rng, g, 2);
    std::vector<int> fib(g.n_obj, 0);
    for (int m : cs.phi) ++fib[m];
    int expect = 0;
    for (int a = 0; a < g.n_arr; ++a) expect += fib[g.tgt[a]] * fib[g.src[a]];
    auto pb = pullback_groupoid(g, cs.phi);
    EXPECT_EQ(pb.g.n_arr, expect);
    EXPECT_TRUE(check_groupoid(pb.g).ok());
    EXPECT_EQ(cohomology_dims(pb.g, 2), cohomology_dims(g, 2));
  }
}

TEST(TwoTerm, KnownValues) {
  auto p = truncated_two_term(pair_groupoid(2));
  EXPECT_EQ(p.z_basis.cols(), 1);
  EXPECT_EQ(p.dim_c0, 2);
  EXPECT_EQ(p.dim_ker, 1);
  EXPECT_EQ(truncated_two_term(unit_groupoid(3)).z_basis.cols(), 0);
  EXPECT_EQ(truncated_two_term(cyclic_group_groupoid(3)).z_basis.cols(), 0);
}

TEST(Sections, GlobalSectionIsFunctorSplittingProjection) {
  auto g = transitive_groupoid(2, 2);
  auto cs = global_section(g);
  auto pb = pullback_groupoid(g, cs.phi);
  auto sm = section_maps(g, pb, cs, 0, 0);
  for (int a = 0; a < g.n_arr; ++a) EXPECT_EQ(pb.proj[sm.at_arrow(a)], a);
  for (auto [ab, c] : g.comp) EXPECT_EQ(pb.g.compose(sm.at_arrow(ab.first), sm.at_arrow(ab.second)), sm.at_arrow(c));
  for (int x = 0; x < g.n_obj; ++x) {
    auto [xx, gam, y] = pb.triples[sm.at_point(x)];
    EXPECT_EQ(xx, x);
    EXPECT_EQ(gam, g.unit[cs.phi[x]]);
    EXPECT_EQ(y, cs.sections[0][cs.phi[x]]);
  }
}

TEST(Sections, FoldDoubleCoverTable) {
  auto g = pair_groupoid(2);
  CoveredSurjection cs;
  cs.phi = {0, 1, 0, 1};
  cs.cover = {{0, 1}};
  cs.sections = {{2, 1}};
  cs.weights = {Vec{1, 1}};
  auto pb = pullback_groupoid(g, cs.phi);
  auto sm = section_maps(g, pb, cs, 0, 0);
  for (int a = 0; a < g.n_arr; ++a) {
    auto [x, gam, y] = pb.triples[sm.at_arrow(a)];
    EXPECT_EQ(gam, a);
    EXPECT_EQ(x, g.tgt[a] == 0 ? 2 : 1);
    EXPECT_EQ(y, g.src[a] == 0 ? 2 : 1);
  }
}

TEST(Sections, OutsideCoverThrows) {
  auto g = pair_groupoid(2);
  CoveredSurjection cs;
  cs.phi = {0, 1};
  cs.cover = {{0}, {1}};
  cs.sections = {{0, -1}, {-1, 1}};
  cs.weights = {Vec{1, 0}, Vec{0, 1}};
  auto pb = pullback_groupoid(g, cs.phi);
  auto sm = section_maps(g, pb, cs, 0, 0);
  int cross = -1;
  for (int a = 0; a < g.n_arr; ++a)
    if (g.src[a] == 1) cross = a;
  EXPECT_THROW(sm.at_arrow(cross), DomainViolation);
}

TEST(PartitionInverse, GlobalSection) {
  auto g = transitive_groupoid(2, 2);
  auto pi = partition_inverse(g, global_section(g));
  EXPECT_EQ(pi.I0 * pi.Phi0, Matrix::identity(g.n_obj));
  EXPECT_EQ(pi.I1 * pi.Phi1, Matrix::identity(g.n_arr));
  EXPECT_TRUE(check_partition_inverse(g, pi).ok());
}

TEST(PartitionInverse, TwoHalfSections) {
  // four objects in two pair-groupoid components, X doubles every object
  auto g = disjoint_union(pair_groupoid(2), pair_groupoid(2));
  CoveredSurjection cs;
  cs.phi = {0, 1, 2, 3, 0, 1, 2, 3};
  cs.cover = {{0, 1, 2, 3}, {0, 1, 2, 3}};
  cs.sections = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  Scalar half = Scalar::parse("1/2");
  cs.weights = {Vec(4, half), Vec(4, half)};
  ASSERT_TRUE(check_covered_surjection(g, 8, cs).ok());
  auto pi = partition_inverse(g, cs);
  EXPECT_EQ(pi.I0 * pi.Phi0, Matrix::identity(4));
  EXPECT_EQ(pi.I1 * pi.Phi1, Matrix::identity(g.n_arr));
  EXPECT_TRUE(check_partition_inverse(g, pi).ok());
}

TEST(PartitionInverse, RandomInstances) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 8; ++t) {
    auto g = random_groupoid(rng, 5, 20);
    auto cs = random_covered_surjection(rng, g);
    ASSERT_TRUE(check_covered_surjection(g, static_cast<int>(cs.phi.size()), cs).ok());
    auto pi = partition_inverse(g, cs);
    auto r = check_partition_inverse(g, pi);
    EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.findings().front().tag);
  }
}

TEST(PartitionInverse, BadWeightsRejected) {
  auto g = pair_groupoid(2);
  auto cs = global_section(g);
  cs.weights[0][0] = Scalar(2);
  EXPECT_FALSE(check_covered_surjection(g, 2, cs).ok());
  EXPECT_THROW(partition_inverse(g, cs), InvalidCover);
}
