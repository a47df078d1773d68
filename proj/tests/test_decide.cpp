#include <gtest/gtest.h>

#include "corpus.hpp"
#include "loopcert/decide.hpp"

using namespace loopcert;

namespace {

std::string recipe_of(const Certificate& c) {
  for (const auto& s : c.steps)
    if (s.type == "CoverStep") return s.body.at("recipe").get<std::string>();
  return "";
}

SeifertPiece sf(std::int64_t g, std::int64_t b, std::vector<Fiber> f, bool orientable = true) {
  return {orientable, g, b, std::move(f), {}, orientable};
}

}  // namespace

TEST(Classify, CorpusVerdicts) {
  const auto all = corpus::load();
  ASSERT_EQ(all.size(), corpus::expected().size());
  for (const auto& [name, spec] : all) {
    ASSERT_TRUE(corpus::expected().count(name)) << name;
    const auto& e = corpus::expected().at(name);
    const auto cert = classify(spec);
    EXPECT_EQ(cert.verdict.kind, e.kind) << name;
    EXPECT_EQ(cert.verdict.argument, e.argument) << name;
    EXPECT_EQ(recipe_of(cert), e.recipe) << name;
    const auto r = verify(cert, spec);
    EXPECT_TRUE(r.ok()) << name << "\n" << r.to_string();
  }
}

TEST(Classify, ByteDeterministic) {
  for (const auto& [name, spec] : corpus::load())
    EXPECT_EQ(certificate_text(classify(spec)), certificate_text(classify(spec))) << name;
}

TEST(Classify, InvalidSpecThrows) {
  ManifoldSpec bad{{Irreducible{DecompositionGraph{{sf(0, 1, {{2, 1}, {3, 1}})}, {}}}}};
  EXPECT_THROW(classify(bad), ValidationError);
}

TEST(Classify, TrivialSummandsAreDropped) {
  ManifoldSpec s{{FinitePi1{1, false}, ClosedHyperbolic{}, FinitePi1{1, true}}};
  auto c = classify(s);
  EXPECT_EQ(c.verdict.kind, "TRIVIAL");
  EXPECT_EQ(c.scope_notes.size(), 2u);
  EXPECT_TRUE(verify(c, s).ok());
}

TEST(Classify, SphereIsNontrivialByFiniteRule) {
  ManifoldSpec s{{FinitePi1{1, false}}};
  auto c = classify(s);
  EXPECT_EQ(c.verdict.argument, kRuleFinite);
  EXPECT_TRUE(verify(c, s).ok());
}

TEST(Classify, ConnectedSumFactorOrders) {
  EXPECT_EQ(detail::preferred_element_order(2), 2);
  EXPECT_EQ(detail::preferred_element_order(8), 4);
  EXPECT_EQ(detail::preferred_element_order(12), 3);
  EXPECT_EQ(detail::preferred_element_order(120), 3);
  EXPECT_EQ(detail::preferred_element_order(49), 7);
}

TEST(Classify, GenusPieceUsesTorusArgument) {
  ManifoldSpec s{{Irreducible{DecompositionGraph{{sf(1, 1, {}), sf(0, 1, {{2, 1}, {3, 1}})}, {{0, 0, 1, 0}}}}}};
  auto c = classify(s);
  EXPECT_EQ(c.verdict.argument, "NonseparatingTorus");
  EXPECT_TRUE(verify(c, s).ok());
}

TEST(Classify, ClosedSeifertOverTorusBase) {
  ManifoldSpec s{{Irreducible{DecompositionGraph{{sf(1, 0, {})}, {}}}}};
  auto c = classify(s);
  EXPECT_EQ(c.verdict.argument, "ClosedSeifert");
  EXPECT_TRUE(verify(c, s).ok()) << verify(c, s).to_string();
}

TEST(Explain, DeterministicAndRefusesUnverified) {
  const auto spec = corpus::spec("b1_chain");
  const auto c = classify(spec);
  const auto text = explain(c, spec);
  EXPECT_EQ(text, explain(c, spec));
  EXPECT_EQ(text.rfind("Verdict: NONTRIVIAL_ON_DOUBLE_COVER (FigureEight)\n", 0), 0u);
  EXPECT_NE(text.find("AssemblyB1"), std::string::npos);
  EXPECT_THROW(explain(c, corpus::spec("b2_pair")), InputError);
}
