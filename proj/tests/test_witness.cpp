#include <gtest/gtest.h>

#include "loopcert/witness.hpp"

using namespace loopcert;

namespace {

SeifertPiece sf(std::int64_t g, std::int64_t b, std::vector<Fiber> f, bool orientable = true) {
  return {orientable, g, b, std::move(f), {}, orientable};
}

std::vector<std::string> fmt(const std::vector<GenWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(format_gen_word(w));
  return out;
}

bool conj(const std::string& group, const std::string& a, const std::string& b) {
  auto g = make_group(group);
  return are_conjugate(NFWord::parse(g, a), NFWord::parse(g, b)).conjugate;
}

std::vector<std::string> survivors(ArgumentId id, const std::vector<std::string>& gens) {
  auto w = build_witness(id, gens);
  return fmt(mod2_survivors(w.expansion, free_model_hom(gens)));
}

}  // namespace

TEST(Witness, ExpansionTermsPerArgument) {
  EXPECT_EQ(fmt(term_words(build_witness(ArgumentId::TwoCurves, {"x", "y", "z"}))),
            (std::vector<std::string>{"x^1.y^1.z^1.y^1", "x^1.y^1", "y^1.z^1", "1", "x^1.y^2.z^1", "x^1.y^1", "y^1.z^1", "1"}));
  EXPECT_EQ(fmt(term_words(build_witness(ArgumentId::ClosedSeifert, {"c1", "h"}))),
            (std::vector<std::string>{"c1^1.h^1", "h^1", "c1^1", "1"}));
  EXPECT_EQ(build_witness(ArgumentId::NonseparatingSphere, {"g1", "g2"}).expansion.size(), 4u);
  EXPECT_EQ(build_witness(ArgumentId::HyperbolicGluing, {"h", "g1", "g2"}).expansion.size(), 8u);
}

TEST(Witness, RejectsWrongGenerators) {
  EXPECT_THROW(build_witness(ArgumentId::TwoCurves, {"x", "y"}), ArgumentNotApplicable);
  EXPECT_THROW(build_witness(ArgumentId::FigureEight, {"x", "x"}), ArgumentNotApplicable);
  EXPECT_THROW(parse_argument("Bogus"), ParseError);
  for (const auto& [id, name] : argument_names()) EXPECT_EQ(parse_argument(name), id);
}

TEST(Survivors, FreeModelLeavesTwoClasses) {
  EXPECT_EQ(survivors(ArgumentId::TwoCurves, {"c1", "c2", "c3"}),
            (std::vector<std::string>{"c1^1.c2^1.c3^1.c2^1", "c1^1.c2^2.c3^1"}));
  EXPECT_EQ(survivors(ArgumentId::FigureEight, {"c1", "c2"}),
            (std::vector<std::string>{"c1^1.c2^1.c1^-1.c2^-1", "c1^1.c2^-1.c1^-1.c2^1"}));
  EXPECT_EQ(survivors(ArgumentId::ConnectedSum, {"g1", "g2"}),
            (std::vector<std::string>{"g1^1.g2^1.g1^1.g2^1", "g2^1.g1^2.g2^1"}));
  EXPECT_EQ(survivors(ArgumentId::HyperbolicGluing, {"h", "g1", "g2"}),
            (std::vector<std::string>{"h^1.g1^1.g2^1", "h^1.g2^1.g1^1"}));
}

TEST(Fixtures, TwoCurvesPairDistinct) {
  for (const auto* g : {"Z3*Z3*Z3", "Z2*Z3*Z5"}) EXPECT_FALSE(conj(g, "c1^1.c2^2.c3^1", "c1^1.c2^1.c3^1.c2^1")) << g;
}

TEST(Fixtures, FigureEightPairDistinctAwayFromTwo) {
  for (int a : {3, 4, 5})
    for (int b : {3, 4, 5}) {
      const auto g = "Z" + std::to_string(a) + "*Z" + std::to_string(b);
      EXPECT_FALSE(conj(g, "c1^1.c2^1.c1^-1.c2^-1", "c1^1.c2^-1.c1^-1.c2^1")) << g;
    }
}

TEST(Fixtures, FigureEightPairCollapsesForTwoTwo) {
  auto g = make_group("Z2*Z2");
  EXPECT_EQ(NFWord::parse(g, "c1^1.c2^1.c1^-1.c2^-1"), NFWord::parse(g, "c1^1.c2^-1.c1^-1.c2^1"));
}

TEST(Fixtures, ConnectedSumAndNonorientablePairs) {
  EXPECT_FALSE(conj("Z*Z", "c1^1.c2^1.c1^1.c2^1", "c2^2.c1^2"));
  EXPECT_FALSE(conj("d1=Z*a1=Z", "d1^1.a1^2.d1^-1.a1^-2", "d1^1.a1^-2.d1^-1.a1^2"));
}

TEST(Fixtures, SurvivorsMissBoundaryFamilies) {
  // Three boundary tori, generators d1, d2; d3 is eliminated.
  auto s1 = sf(0, 3, {});
  auto g1 = select_generators(s1, ArgumentId::FigureEight);
  EXPECT_EQ(g1, (std::vector<std::string>{"d1", "d2"}));
  auto h1 = build_piece_quotient(s1, quotient_recipe(s1, ArgumentId::FigureEight, g1));
  auto b1 = boundary_images(h1);
  EXPECT_EQ(b1[2].to_string(), "d2^-1.d1^-1");
  EXPECT_FALSE(conjugate_into_cyclic_subgroup_family(apply_hom(h1, parse_gen_word("d1^1.d2^1.d1^-1.d2^-1")), b1));

  auto s2 = sf(1, 2, {{3, 1}}, false);
  auto h2 = build_piece_quotient(s2, quotient_recipe(s2, ArgumentId::NonorientableFigureEight, {"d1", "d2"}));
  auto w2 = apply_hom(h2, parse_gen_word("d1^1.a1^2.d1^-1.a1^-2"));
  EXPECT_FALSE(conjugate_into_cyclic_subgroup_family(w2, boundary_images(h2)));

  auto s3 = sf(0, 1, {{2, 1}, {3, 1}, {5, 1}});
  auto h3 = build_piece_quotient(s3, quotient_recipe(s3, ArgumentId::TwoCurves, {"c1", "c2", "c3"}));
  auto b3 = boundary_images(h3);
  EXPECT_EQ(b3[0].to_string(), "c3^4.c2^2.c1^1");
  EXPECT_FALSE(conjugate_into_cyclic_subgroup_family(apply_hom(h3, parse_gen_word("c1^1.c2^1.c3^1.c2^1")), b3));

  auto s4 = sf(0, 1, {{3, 1}, {5, 1}});
  auto h4 = build_piece_quotient(s4, quotient_recipe(s4, ArgumentId::FigureEight, {"c1", "c2"}));
  auto w4 = apply_hom(h4, parse_gen_word("c1^1.c2^1.c1^-1.c2^-1"));
  EXPECT_FALSE(conjugate_into_cyclic_subgroup_family(w4, boundary_images(h4)));
  auto g = make_group("Z3*Z5");
  EXPECT_FALSE(conjugate_to_power(NFWord::parse(g, "c1^1.c2^1.c1^-1.c2^-1"), NFWord::parse(g, "c1^1.c2^1")));
}

TEST(Selection, TwoCurvesTakesFirstThreeCandidates) {
  EXPECT_EQ(select_generators(sf(0, 2, {{2, 1}, {3, 1}}), ArgumentId::TwoCurves), (std::vector<std::string>{"c1", "c2", "d1"}));
  EXPECT_THROW(select_generators(sf(0, 1, {{2, 1}, {3, 1}}), ArgumentId::TwoCurves), ArgumentNotApplicable);
}

TEST(Selection, FigureEightPrefersLargeMultiplicities) {
  EXPECT_EQ(select_generators(sf(0, 1, {{3, 1}, {7, 1}}), ArgumentId::FigureEight), (std::vector<std::string>{"c1", "c2"}));
  EXPECT_EQ(select_generators(sf(0, 2, {{5, 1}}), ArgumentId::FigureEight), (std::vector<std::string>{"c1", "d1"}));
  EXPECT_THROW(select_generators(sf(0, 1, {{2, 1}, {3, 1}}), ArgumentId::FigureEight), ArgumentNotApplicable);
  EXPECT_EQ(select_generators(sf(1, 2, {}, false), ArgumentId::NonorientableFigureEight), (std::vector<std::string>{"d1", "d2"}));
}

TEST(Triangles, OrderAndSearch) {
  auto order = triangle_order(4);
  ASSERT_EQ(order.size(), 4u);
  EXPECT_EQ(order[0], (std::vector<std::size_t>{1, 2, 3}));
  DistinctEdges e{{0, 1}, {0, 2}, {1, 2}};
  EXPECT_EQ(*find_triangle(e, 4), (std::vector<std::size_t>{0, 1, 2}));
  e.erase({1, 2});
  EXPECT_FALSE(find_triangle(e, 4));
}

TEST(Triangles, ClosedSeifertCriterionInZ) {
  auto g = make_group("Z*Z");
  std::vector<NFWord> ims = {NFWord::parse(g, "c1^1.c2^1"), NFWord::parse(g, "c2^1"), NFWord::parse(g, "c1^1"), identity(g)};
  EXPECT_TRUE(three_distinct_criterion(ims));
  std::vector<NFWord> flat = {identity(g), identity(g), NFWord::parse(g, "c1^1"), identity(g)};
  EXPECT_FALSE(three_distinct_criterion(flat));
}
