// Command-line front end. Results go to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 2 parse error, 3 invalid input or recipe mismatch,
// 4 internal classification error, 5 verification failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "loopcert/loopcert.hpp"

namespace fs = std::filesystem;
using namespace loopcert;

namespace {

constexpr int kOk = 0, kParse = 2, kInvalid = 3, kInternal = 4, kVerifyFail = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string adjacent(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

ManifoldSpec load_spec(const std::string& path) {
  auto spec = parse_spec(read_file(path));
  validate_or_throw(spec);
  return spec;
}

int cmd_classify(const std::string& path, const std::string& out_path, bool json) {
  const auto spec = load_spec(path);
  const auto cert = classify(spec);
  const auto target = out_path.empty() ? adjacent(path, ".cert.json") : out_path;
  write_file(target, certificate_text(cert));
  if (json)
    std::cout << Json{{"verdict", cert.verdict.kind}, {"argument", cert.verdict.argument}, {"certificate", target}}.dump() << "\n";
  else
    std::cout << cert.verdict.kind << " " << cert.verdict.argument << "\ncertificate: " << target << "\n";
  return kOk;
}

int cmd_verify(const std::string& spec_path, const std::string& cert_path, bool json) {
  const auto spec = load_spec(spec_path);
  const auto report = verify_text(read_file(cert_path), spec);
  if (json) {
    Json lines = Json::array();
    for (const auto& l : report.lines) lines.push_back(Json{{"name", l.name}, {"ok", l.ok}, {"detail", l.detail}});
    std::cout << Json{{"ok", report.ok()}, {"lines", lines}}.dump() << "\n";
  } else {
    std::cout << report.to_string();
  }
  return report.ok() ? kOk : kVerifyFail;
}

int cmd_explain(const std::string& spec_path, const std::string& cert_path, bool json) {
  const auto spec = load_spec(spec_path);
  const auto cert = parse_certificate(read_file(cert_path));
  const auto report = verify(cert, spec);
  if (!report.ok()) {
    std::cerr << report.to_string();
    return kVerifyFail;
  }
  const auto text = explain(cert, spec);
  if (json)
    std::cout << Json{{"text", text}}.dump() << "\n";
  else
    std::cout << text;
  return kOk;
}

int cmd_cover(const std::string& path, const std::string& recipe_name, const std::string& out_path, bool json) {
  const auto spec = load_spec(path);
  const auto recipe = parse_construction(recipe_name);
  if (spec.summands.size() != 1 || !std::holds_alternative<Irreducible>(spec.summands[0]))
    throw RecipeNotApplicable(recipe_name + ": spec must have a single irreducible summand");
  const auto& g = std::get<Irreducible>(spec.summands[0]).graph;
  DecompositionGraph base = g, cover;
  std::string deck;
  switch (recipe) {
    case ConstructionId::OrientationCover:
    case ConstructionId::Construction1:
    case ConstructionId::Construction2:
    case ConstructionId::Construction3: {
      if (g.nodes.size() != 1 || !g.seifert(0)) throw RecipeNotApplicable(recipe_name + ": needs a single Seifert piece");
      const auto& s = *g.seifert(0);
      const auto r = recipe == ConstructionId::OrientationCover ? orientation_double_cover(s)
                     : recipe == ConstructionId::Construction1  ? construction1(s)
                     : recipe == ConstructionId::Construction2  ? construction2(s)
                                                                : construction3(s);
      if (const auto errs = check_cover_result(s, r); !errs.empty()) throw ClassificationError(errs.front());
      cover.nodes.push_back(r.total_piece);
      deck = r.deck_action;
      break;
    }
    default: {
      const auto c = assemble_double_cover(g, recipe);
      if (const auto errs = check_cover_graph(g, c); !errs.empty()) throw ClassificationError(errs.front());
      base = normalize_moebius(g);
      cover = c.cover;
    }
  }
  const auto chi_base = orbifold_euler(base), chi_cover = orbifold_euler(cover);
  ManifoldSpec out;
  out.summands.push_back(Irreducible{cover});
  const auto target = out_path.empty() ? adjacent(path, ".cover.json") : out_path;
  write_file(target, spec_to_json(out).dump(2) + "\n");
  if (json) {
    std::cout << Json{{"recipe", recipe_name},
                      {"euler_base", rational_string(chi_base)},
                      {"euler_cover", rational_string(chi_cover)},
                      {"cover", target}}
                     .dump()
              << "\n";
  } else {
    std::cout << "recipe: " << recipe_name << "\n";
    if (!deck.empty()) std::cout << "deck action: " << deck << "\n";
    std::cout << "euler base: " << rational_string(chi_base) << "\neuler cover: " << rational_string(chi_cover)
              << "\ncover: " << target << "\n";
  }
  return kOk;
}

int cmd_oracle(const std::string& group_text, const std::string& w1_text, const std::string& w2_text, std::size_t bound,
               bool json) {
  const auto group = make_group(group_text);
  const auto w1 = NFWord::parse(group, w1_text), w2 = NFWord::parse(group, w2_text);
  const auto u = oracle_conjugate_search(w1, w2, bound);
  if (json) {
    Json j{{"group", group->to_string()}, {"w1", w1.to_string()}, {"w2", w2.to_string()}, {"bound", bound}, {"conjugate", u.has_value()}};
    j["conjugator"] = u ? Json(u->to_string()) : Json(nullptr);
    std::cout << j.dump() << "\n";
  } else if (u) {
    std::cout << "conjugate: u = " << u->to_string() << " with u.w1.u^-1 = w2\n";
  } else {
    std::cout << "none up to " << bound << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified decisions on extended loop products of closed 3-manifolds"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  std::string spec_path, cert_path, out_path, recipe, group, w1, w2;
  std::size_t bound = 12;

  auto* classify_cmd = app.add_subcommand("classify", "Decide a spec and write its certificate");
  classify_cmd->add_option("spec", spec_path, "Spec file")->required();
  classify_cmd->add_option("--out", out_path, "Certificate path (default: next to the spec)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against a spec");
  verify_cmd->add_option("spec", spec_path, "Spec file")->required();
  verify_cmd->add_option("certificate", cert_path, "Certificate file")->required();

  auto* explain_cmd = app.add_subcommand("explain", "Narrate a verified certificate");
  explain_cmd->add_option("spec", spec_path, "Spec file")->required();
  explain_cmd->add_option("certificate", cert_path, "Certificate file")->required();

  auto* cover_cmd = app.add_subcommand("cover", "Build a double cover and write it as a spec");
  cover_cmd->add_option("spec", spec_path, "Spec file")->required();
  cover_cmd->add_option("--recipe", recipe, "Construction name")->required();
  cover_cmd->add_option("--out", out_path, "Output path (default: next to the spec)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force conjugacy search");
  oracle_cmd->add_option("--group", group, "Free product, e.g. Z3*Z5")->required();
  oracle_cmd->add_option("--w1", w1, "First word, e.g. c1^1.c2^2")->required();
  oracle_cmd->add_option("--w2", w2, "Second word")->required();
  oracle_cmd->add_option("--bound", bound, "Maximum conjugator length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*classify_cmd) return cmd_classify(spec_path, out_path, json);
    if (*verify_cmd) return cmd_verify(spec_path, cert_path, json);
    if (*explain_cmd) return cmd_explain(spec_path, cert_path, json);
    if (*cover_cmd) return cmd_cover(spec_path, recipe, out_path, json);
    if (*oracle_cmd) return cmd_oracle(group, w1, w2, bound, json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "invalid spec: " << e.what() << "\n";
    return kInvalid;
  } catch (const RecipeNotApplicable& e) {
    std::cerr << "recipe not applicable: " << e.what() << "\n";
    return kInvalid;
  } catch (const ClassificationError& e) {
    std::cerr << "classification error: " << e.what() << "\n";
    return kInternal;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
