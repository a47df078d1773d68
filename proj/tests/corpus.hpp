#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "loopcert/spec_io.hpp"

namespace corpus {

inline std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Every spec in the corpus directory, keyed by file stem.
inline std::map<std::string, loopcert::ManifoldSpec> load() {
  std::map<std::string, loopcert::ManifoldSpec> out;
  for (const auto& e : std::filesystem::directory_iterator(LOOPCERT_CORPUS_DIR))
    if (e.path().extension() == ".json") out.emplace(e.path().stem().string(), loopcert::parse_spec(read(e.path())));
  return out;
}

struct Expected {
  const char* kind;
  const char* argument;
  const char* recipe;  // empty: no cover
};

inline const std::map<std::string, Expected>& expected() {
  static const std::map<std::string, Expected> e = {
      {"closed_hyperbolic", {"TRIVIAL", "AlgebraicallyHyperbolic", ""}},
      {"s2xs1", {"NONTRIVIAL_ON_M", "NonseparatingSphere", ""}},
      {"connected_sum_lens_hyperbolic", {"NONTRIVIAL_ON_M", "ConnectedSum", ""}},
      {"connected_sum_with_fake_sphere", {"NONTRIVIAL_ON_M", "ConnectedSum", ""}},
      {"poincare_sphere", {"NONTRIVIAL_ON_M", "FiniteFundamentalGroup", ""}},
      {"closed_seifert_237", {"NONTRIVIAL_ON_M", "ClosedSeifert", ""}},
      {"closed_seifert_2_3_11", {"NONTRIVIAL_ON_M", "ClosedSeifert", ""}},
      {"closed_seifert_nonorientable", {"NONTRIVIAL_ON_DOUBLE_COVER", "ClosedSeifert", "OrientationCover"}},
      {"nonseparating_torus_cycle", {"NONTRIVIAL_ON_M", "NonseparatingTorus", ""}},
      {"case1_three_boundary", {"NONTRIVIAL_ON_M", "FigureEight", ""}},
      {"case2_nonorientable_two_boundary", {"NONTRIVIAL_ON_M", "NonorientableFigureEight", ""}},
      {"case3_two_curves", {"NONTRIVIAL_ON_M", "TwoCurves", ""}},
      {"case4_figure_eight", {"NONTRIVIAL_ON_M", "FigureEight", ""}},
      {"b1_chain", {"NONTRIVIAL_ON_DOUBLE_COVER", "FigureEight", "AssemblyB1"}},
      {"b2_pair", {"NONTRIVIAL_ON_DOUBLE_COVER", "FigureEight", "AssemblyB2"}},
      {"b3_chain", {"NONTRIVIAL_ON_DOUBLE_COVER", "NonseparatingTorus", "AssemblyB3"}},
      {"case6_moebius_end", {"NONTRIVIAL_ON_DOUBLE_COVER", "FigureEight", "AssemblyB2"}},
      {"case6_nonorientable_end", {"NONTRIVIAL_ON_DOUBLE_COVER", "TwoCurves", "Case6Recipe"}},
      {"hyperbolic_seifert_pair", {"NONTRIVIAL_ON_M", "HyperbolicGluing", ""}},
      {"hyperbolic_chain", {"NONTRIVIAL_ON_M", "HyperbolicGluing", ""}},
  };
  return e;
}

inline loopcert::ManifoldSpec spec(const std::string& name) {
  return loopcert::parse_spec(read(std::filesystem::path(LOOPCERT_CORPUS_DIR) / (name + ".json")));
}

}  // namespace corpus
