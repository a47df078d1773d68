#include <gtest/gtest.h>

#include <random>

#include "loopcert/covers.hpp"

using namespace loopcert;

namespace {

SeifertPiece sf(std::int64_t g, std::int64_t b, std::vector<Fiber> f, bool orientable = true) {
  return {orientable, g, b, std::move(f), {}, orientable};
}

std::string chi(const SeifertPiece& s) { return rational_string(orbifold_euler(s)); }

void expect_degree_two(const CoverResult& r) {
  for (const auto& row : r.boundary_map) {
    int d = 0;
    for (const auto& p : row) d += p.degree;
    EXPECT_EQ(d, 2);
  }
}

DecompositionGraph chain(std::vector<SeifertPiece> pieces) {
  DecompositionGraph g;
  for (auto& p : pieces) g.nodes.push_back(std::move(p));
  for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i) g.edges.push_back({i, i == 0 ? 0u : 1u, i + 1, 0});
  return g;
}

}  // namespace

TEST(Euler, MatchesOracle) {
  EXPECT_EQ(chi(sf(0, 2, {{2, 1}})), "-1/2");
  EXPECT_EQ(chi(sf(0, 3, {})), "-1");
  EXPECT_EQ(chi(sf(0, 0, {{2, 1}, {3, 1}, {5, 1}})), "1/30");
  EXPECT_EQ(chi(sf(1, 1, {{3, 1}})), "-5/3");
  EXPECT_EQ(chi(sf(1, 1, {}, false)), "0");
  EXPECT_EQ(chi(sf(0, 1, {{2, 1}, {2, 1}})), "0");
  EXPECT_EQ(chi(sf(1, 0, {{2, 1}, {3, 1}}, false)), "-1/6");
  EXPECT_EQ(chi(sf(0, 0, {{2, 1}, {2, 1}, {3, 1}, {3, 1}})), "-1/3");
}

TEST(Constructions, OneLiftsInvolutionSlotOnce) {
  auto r = construction1(sf(0, 2, {{2, 1}}), 1);
  EXPECT_EQ(r.total_piece, sf(0, 3, {}));
  EXPECT_EQ(r.boundary_map[1], (std::vector<SlotPreimage>{{0, 2}}));
  EXPECT_EQ(r.boundary_map[0], (std::vector<SlotPreimage>{{1, 1}, {2, 1}}));
  EXPECT_TRUE(check_cover_result(sf(0, 2, {{2, 1}}), r).empty());
}

TEST(Constructions, TwoDoublesTheOtherFiber) {
  auto base = sf(0, 1, {{5, 2}, {2, 1}});
  auto r = construction2(base);
  EXPECT_EQ(r.total_piece.fibers, (std::vector<Fiber>{{5, 2}, {5, 2}}));
  EXPECT_EQ(chi(r.total_piece), "-3/5");
  EXPECT_TRUE(check_cover_result(base, r).empty());
}

TEST(Constructions, ThreeGivesAnnulus) {
  auto base = sf(0, 1, {{2, 1}, {2, 1}});
  auto r = construction3(base);
  EXPECT_EQ(r.total_piece, sf(0, 2, {}));
  EXPECT_TRUE(check_cover_result(base, r).empty());
}

TEST(Constructions, OrientationCover) {
  auto base = sf(1, 0, {{2, 1}, {3, 1}}, false);
  auto r = orientation_double_cover(base);
  EXPECT_EQ(r.total_piece, sf(0, 0, {{2, 1}, {3, 1}, {2, 1}, {3, 1}}));
  EXPECT_TRUE(check_cover_result(base, r).empty());
  EXPECT_THROW(orientation_double_cover(sf(0, 0, {{2, 1}, {3, 1}, {7, 1}})), RecipeNotApplicable);
}

TEST(Constructions, RejectInputsOffTheirHypotheses) {
  EXPECT_THROW(construction1(sf(0, 2, {{3, 1}})), RecipeNotApplicable);
  EXPECT_THROW(construction1(sf(0, 3, {{2, 1}})), RecipeNotApplicable);
  EXPECT_THROW(construction2(sf(0, 1, {{3, 1}, {5, 1}})), RecipeNotApplicable);
  EXPECT_THROW(construction2(sf(1, 1, {{2, 1}, {3, 1}})), RecipeNotApplicable);
  EXPECT_THROW(construction3(sf(0, 1, {{2, 1}, {3, 1}})), RecipeNotApplicable);
}

TEST(Constructions, RandomInputsDoubleEuler) {
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    const std::int64_t r = 3 + static_cast<std::int64_t>(rng() % 20);
    const std::int64_t s = 1 + static_cast<std::int64_t>(rng() % static_cast<unsigned>(r - 1));
    auto base2 = rng() % 2 ? sf(0, 1, {{2, 1}, {r, s}}) : sf(0, 1, {{r, s}, {2, 1}});
    auto c2 = construction2(base2);
    EXPECT_TRUE(check_cover_result(base2, c2).empty());
    expect_degree_two(c2);

    std::vector<Fiber> fibers;
    for (unsigned k = 0, p = rng() % 4; k < p; ++k) {
      const std::int64_t a = 2 + static_cast<std::int64_t>(rng() % 6);
      fibers.push_back({a, 1});
    }
    auto base0 = sf(1 + static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(rng() % 3), fibers, false);
    auto c0 = orientation_double_cover(base0);
    EXPECT_EQ(orbifold_euler(c0.total_piece), Rational(2) * orbifold_euler(base0));
    EXPECT_TRUE(check_cover_result(base0, c0).empty());
    expect_degree_two(c0);
  }
}

TEST(Assembly, B1ChainUsesConstructionsOneAndTwo) {
  auto g = chain({sf(0, 1, {{2, 1}, {3, 1}}), sf(0, 2, {{2, 1}}), sf(0, 1, {{2, 1}, {5, 1}})});
  auto c = assemble_double_cover(g, ConstructionId::AssemblyB1);
  EXPECT_TRUE(check_cover_graph(g, c).empty());
  EXPECT_EQ(c.node_origin, (std::vector<std::string>{"Construction2", "Construction1", "copy0", "copy1"}));
  EXPECT_EQ(orbifold_euler(c.cover), Rational(2) * orbifold_euler(g));
  EXPECT_TRUE(non_bridge_edges(c.cover).empty());
}

TEST(Assembly, B2PairGivesTwoDoubledPieces) {
  auto g = chain({sf(0, 1, {{2, 1}, {3, 1}}), sf(0, 1, {{5, 1}, {2, 1}})});
  auto c = assemble_double_cover(g, ConstructionId::AssemblyB2);
  EXPECT_TRUE(check_cover_graph(g, c).empty());
  ASSERT_EQ(c.cover.nodes.size(), 2u);
  EXPECT_EQ(c.cover.seifert(1)->fibers, (std::vector<Fiber>{{5, 1}, {5, 1}}));
}

TEST(Assembly, B3OutputHasNonseparatingTorus) {
  for (std::size_t middles = 0; middles < 4; ++middles) {
    std::vector<SeifertPiece> ps{sf(0, 1, {{2, 1}, {2, 1}})};
    for (std::size_t k = 0; k < middles; ++k) ps.push_back(sf(0, 2, {{2, 1}}));
    ps.push_back(sf(0, 1, {{2, 1}, {2, 1}}));
    auto g = chain(ps);
    auto c = assemble_double_cover(g, ConstructionId::AssemblyB3);
    EXPECT_TRUE(check_cover_graph(g, c).empty());
    EXPECT_FALSE(non_bridge_edges(c.cover).empty());
  }
}

TEST(Assembly, MoebiusPiecesAreRefiberedFirst) {
  DecompositionGraph g{{sf(1, 1, {}, false), sf(0, 1, {{2, 1}, {3, 1}})}, {{0, 0, 1, 0}}};
  EXPECT_EQ(select_recipe(g), ConstructionId::AssemblyB2);
  auto c = assemble_double_cover(g, ConstructionId::AssemblyB2);
  EXPECT_EQ(c.rewritten, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(check_cover_graph(g, c).empty());
}

TEST(Assembly, Case6UsesOrientationCoverOnTheEnd) {
  DecompositionGraph g{{sf(0, 1, {{2, 1}, {3, 1}}), sf(1, 1, {{3, 1}}, false)}, {{0, 0, 1, 0}}};
  EXPECT_EQ(select_recipe(g), ConstructionId::Case6Recipe);
  auto c = assemble_double_cover(g, ConstructionId::Case6Recipe);
  EXPECT_TRUE(check_cover_graph(g, c).empty());
  EXPECT_EQ(c.node_origin, (std::vector<std::string>{"copy0", "copy1", "OrientationCover"}));
}

TEST(Assembly, RecipeSelection) {
  EXPECT_EQ(select_recipe(chain({sf(0, 1, {{2, 1}, {3, 1}}), sf(0, 2, {{2, 1}}), sf(0, 1, {{2, 1}, {3, 1}})})),
            ConstructionId::AssemblyB1);
  EXPECT_EQ(select_recipe(chain({sf(0, 1, {{2, 1}, {2, 1}}), sf(0, 1, {{2, 1}, {2, 1}})})), ConstructionId::AssemblyB3);
}

TEST(Assembly, MismatchedRecipeIsRejected) {
  auto g = chain({sf(0, 1, {{2, 1}, {3, 1}}), sf(0, 1, {{2, 1}, {5, 1}})});
  EXPECT_THROW(assemble_double_cover(g, ConstructionId::AssemblyB1), RecipeNotApplicable);
  EXPECT_THROW(assemble_double_cover(g, ConstructionId::AssemblyB3), RecipeNotApplicable);
  EXPECT_THROW(assemble_double_cover(g, ConstructionId::Construction2), RecipeNotApplicable);
  auto bad = chain({sf(0, 1, {{3, 1}, {5, 1}}), sf(0, 1, {{2, 1}, {5, 1}})});
  EXPECT_THROW(assemble_double_cover(bad, ConstructionId::AssemblyB2), RecipeNotApplicable);
}

TEST(Assembly, TamperedCoverFailsCheck) {
  auto g = chain({sf(0, 1, {{2, 1}, {3, 1}}), sf(0, 1, {{2, 1}, {5, 1}})});
  auto c = assemble_double_cover(g, ConstructionId::AssemblyB2);
  auto bad = c;
  bad.cover.nodes[0] = sf(0, 1, {{3, 1}, {5, 1}});
  EXPECT_FALSE(check_cover_graph(g, bad).empty());
  bad = c;
  bad.slot_map[0][0].degree = 1;
  EXPECT_FALSE(check_cover_graph(g, bad).empty());
}
