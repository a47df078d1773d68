#include <gtest/gtest.h>

#include "corpus.hpp"
#include "loopcert/decide.hpp"

using namespace loopcert;

namespace {

bool line_failed(const VerifyReport& r, const std::string& prefix) {
  for (const auto& l : r.lines)
    if (!l.ok && l.name.rfind(prefix, 0) == 0) return true;
  return false;
}

Json as_json(const Certificate& c) { return certificate_to_json(c); }

VerifyReport verify_json(const Json& j, const ManifoldSpec& spec) { return verify_text(j.dump(), spec); }

}  // namespace

TEST(Certificate, TextRoundTrip) {
  for (const auto& [name, spec] : corpus::load()) {
    const auto cert = classify(spec);
    const auto text = certificate_text(cert);
    EXPECT_EQ(certificate_text(parse_certificate(text)), text) << name;
    EXPECT_EQ(as_json(cert).at("format"), kCertificateFormat);
  }
}

TEST(Certificate, DigestIsStableAndSensitive) {
  auto a = corpus::spec("case3_two_curves");
  EXPECT_EQ(spec_digest(a), spec_digest(parse_spec(spec_to_json(a).dump(4))));
  auto b = a;
  std::get<Irreducible>(b.summands[0]).graph.nodes.pop_back();
  EXPECT_NE(spec_digest(a), spec_digest(b));
  EXPECT_EQ(spec_digest(a).rfind("sha256:", 0), 0u);
  EXPECT_EQ(spec_digest(a).size(), 7u + 64u);
}

TEST(Certificate, Sha256KnownValue) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Verify, CertificateForOtherSpecFailsDigest) {
  const auto cert = classify(corpus::spec("case4_figure_eight"));
  const auto r = verify(cert, corpus::spec("case3_two_curves"));
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(line_failed(r, "spec digest"));
}

TEST(Verify, SyntaxErrorsAreReported) {
  const auto spec = corpus::spec("s2xs1");
  auto text = certificate_text(classify(spec));
  auto r = verify_text(text.substr(0, text.size() / 2), spec);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(line_failed(r, "certificate syntax"));
  auto j = Json::parse(text);
  j["extra"] = 1;
  EXPECT_FALSE(verify_json(j, spec).ok());
  j = Json::parse(text);
  j["format"] = "loopcert-certificate/0";
  EXPECT_FALSE(verify_json(j, spec).ok());
}

TEST(Verify, TamperedWordsAreCaught) {
  const auto spec = corpus::spec("case3_two_curves");
  const auto j = as_json(classify(spec));
  ASSERT_TRUE(verify_json(j, spec).ok());
  auto bad = j;
  bad["steps"][0]["survivors"][1] = "c1^1.c2^1.c3^1.c2^1";
  EXPECT_FALSE(verify_json(bad, spec).ok());
  bad = j;
  bad["steps"][1]["hom"]["images"]["c2"] = "c2^2";
  EXPECT_FALSE(verify_json(bad, spec).ok());
  bad = j;
  bad["steps"][2]["image"] = "c3^1";
  EXPECT_FALSE(verify_json(bad, spec).ok());
  bad = j;
  bad["steps"][0]["generators"] = {"c2", "c1", "c3"};
  EXPECT_FALSE(verify_json(bad, spec).ok());
}

TEST(Verify, VerdictKindMustMatchDerivation) {
  const auto spec = corpus::spec("b2_pair");
  auto j = as_json(classify(spec));
  ASSERT_TRUE(verify_json(j, spec).ok());
  j["verdict"]["kind"] = "NONTRIVIAL_ON_M";
  auto r = verify_json(j, spec);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(line_failed(r, "verdict"));
}

TEST(Verify, TrivialVerdictNeedsHyperbolicRule) {
  const auto spec = corpus::spec("case4_figure_eight");
  Certificate c;
  c.spec_digest = spec_digest(spec);
  c.steps.push_back({0, "CitedRule", Json{{"rule", kRuleHyperbolic}, {"citation", "x"}, {"summand", 0}}});
  c.verdict = Verdict{"TRIVIAL", kRuleHyperbolic, {}, {}, {}, 0, {}};
  EXPECT_FALSE(verify(c, spec).ok());
}

TEST(Verify, UnreferencedStepIsRejected) {
  const auto spec = corpus::spec("nonseparating_torus_cycle");
  auto c = classify(spec);
  c.steps.push_back({c.steps.size(), "CitedRule", Json{{"rule", kRuleFinite}, {"citation", "x"}, {"summand", 0}}});
  auto r = verify(c, spec);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(line_failed(r, "references"));
}

TEST(Verify, AxiomOutsideWhitelistIsRejected) {
  const auto spec = corpus::spec("case4_figure_eight");
  auto c = classify(spec);
  c.steps.insert(c.steps.begin(), CertStep{0, "Axiom",
                                           Json{{"kind", "HyperbolicMalnormality"},
                                                {"citation", "x"},
                                                {"statement", "y"},
                                                {"site", {{"graph", "input"}, {"summand", 0}, {"pieces", {0}}}}}});
  for (std::size_t i = 0; i < c.steps.size(); ++i) c.steps[i].index = i;
  c = parse_certificate(certificate_text(c));
  EXPECT_FALSE(verify(c, spec).ok());
}

TEST(Verify, ClosedSeifertFallbackAxiomMustCoverMissingPairs) {
  const auto spec = corpus::spec("closed_seifert_2_3_11");
  auto j = as_json(classify(spec));
  ASSERT_TRUE(verify_json(j, spec).ok());
  ASSERT_EQ(j["steps"][0]["type"], "Axiom");
  auto bad = j;
  bad["steps"][0]["distinct_pairs"].erase(0);
  EXPECT_FALSE(verify_json(bad, spec).ok());
}

TEST(Verify, CoverStepMustMatchRecipe) {
  const auto spec = corpus::spec("b1_chain");
  auto j = as_json(classify(spec));
  ASSERT_EQ(j["steps"][0]["recipe"], "AssemblyB1");
  auto bad = j;
  bad["steps"][0]["recipe"] = "AssemblyB2";
  EXPECT_FALSE(verify_json(bad, spec).ok());
  bad = j;
  bad["steps"][0]["output"]["nodes"][0]["fibers"][0] = {7, 1};
  EXPECT_FALSE(verify_json(bad, spec).ok());
}

TEST(Whitelist, PerArgument) {
  EXPECT_EQ(axiom_whitelist("ClosedSeifert"), (std::set<std::string>{"SeifertCentralizerChoice"}));
  EXPECT_TRUE(axiom_whitelist("TwoCurves").empty());
  EXPECT_EQ(axiom_whitelist("HyperbolicGluing").size(), 2u);
}
