#include "lckw/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int emit(const lckw::CommandResult& r, const std::string& out_path) {
  if (!r.error.empty()) std::cerr << "lckw: " << r.error << "\n";
  if (r.output.empty()) return r.exit_code;
  if (out_path.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "lckw: cannot write " << out_path << "\n";
      return lckw::kExitValidation;
    }
    out << r.output;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for locally conformally Kähler structures on Lie algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lckw::kToolVersion));

  lckw::CommandOptions opt;
  std::string mode_text, out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", opt.json, "Emit a JSON report");
    sub->add_option("--tolerance", opt.tolerance, "Absolute tolerance for float-mode checks")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode_text, "Scalar mode override")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--out", out_path, "Write the report to a file instead of stdout");
  };

  std::string classify_path;
  auto* classify = app.add_subcommand("classify", "Classify a structure file and run the identity checks");
  classify->add_option("path", classify_path, "Structure file")->required();
  add_common(classify);

  std::vector<std::string> suite_inputs;
  bool builtin = false;
  auto* suite = app.add_subcommand("suite", "Run every check over files, directories or the built-in corpus");
  suite->add_option("inputs", suite_inputs, "Structure files or directories");
  suite->add_flag("--builtin-corpus", builtin, "Include the built-in corpus and cross-checks");
  add_common(suite);

  lckw::ConstructRequest creq;
  std::string angles, seed_text, name_text;
  auto* construct = app.add_subcommand("construct", "Emit a structure file for a standard construction");
  construct->add_option("kind", creq.kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"kodaira", "heisenberg", "double-extension", "ot", "flat-kahler"}));
  construct->add_option("--n", creq.n, "Kodaira / Heisenberg parameter")->check(CLI::PositiveNumber);
  construct->add_option("--s", creq.s, "Number of real places of the OT model")->check(CLI::PositiveNumber);
  construct->add_option("--m", creq.m, "Real dimension of the Kähler base");
  construct->add_option("--angles", angles, "Comma-separated OT rotation angles");
  construct->add_option("--base", creq.base, "Double-extension base")->check(CLI::IsMember({"abelian", "rotation", "hyperbolic"}));
  construct->add_option("--lambda", creq.lambda, "Rotation speed of the rotation base");
  construct->add_option("--seed", seed_text, "Seed for a random admissible derivation");
  construct->add_option("--name", name_text, "Structure name");
  construct->add_option("--out", out_path, "Write the structure file here");

  lckw::ModelRequest mreq;
  std::string point_text;
  auto* model = app.add_subcommand("model", "Evaluate a coordinate model with finite-difference oracles");
  model->add_option("kind", mreq.kind, "Model")->required()->check(CLI::IsMember({"ot", "hopf"}));
  model->add_option("--s", mreq.s, "OT parameter s")->check(CLI::PositiveNumber);
  model->add_option("--n", mreq.n, "Hopf complex dimension")->check(CLI::PositiveNumber);
  model->add_option("--point", point_text, "Real coordinates Re z1,Im z1,...");
  model->add_option("--step", mreq.step, "Finite-difference step")->check(CLI::PositiveNumber);
  add_common(model);

  lckw::SasakiRequest sreq;
  std::string sasaki_path;
  auto* sasaki = app.add_subcommand("sasaki", "Sasaki eta-Einstein fit and cone check");
  sasaki->add_option("path", sasaki_path, "Structure file (sasaki block or Vaisman structure)");
  sasaki->add_option("--builtin", sreq.builtin, "Built-in structure when no path is given")->check(CLI::IsMember({"h3", "sphere"}));
  sasaki->add_option("--samples", sreq.samples, "Number of cone radii")->check(CLI::PositiveNumber);
  add_common(sasaki);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lckw::kExitValidation;
  }
  if (!mode_text.empty()) opt.mode = lckw::parse_mode(mode_text);

  try {
    if (*classify) return emit(lckw::classify_command(classify_path, opt), out_path);
    if (*suite) {
      if (suite_inputs.empty() && !builtin) {
        std::cerr << "lckw: suite needs inputs or --builtin-corpus\n";
        return lckw::kExitValidation;
      }
      return emit(lckw::suite_command(suite_inputs, builtin, opt), out_path);
    }
    if (*construct) {
      std::stringstream ss(angles);
      std::string a;
      while (std::getline(ss, a, ',')) creq.angles.push_back(a);
      if (!seed_text.empty()) creq.seed = static_cast<unsigned>(std::stoul(seed_text));
      if (!name_text.empty()) creq.name = name_text;
      return emit(lckw::construct_command(creq), out_path);
    }
    if (*model) {
      if (!point_text.empty()) mreq.point = parse_point(point_text);
      return emit(lckw::model_command(mreq, opt), out_path);
    }
    if (*sasaki) {
      if (!sasaki_path.empty()) sreq.path = sasaki_path;
      return emit(lckw::sasaki_command(sreq, opt), out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "lckw: " << e.what() << "\n";
    return lckw::kExitValidation;
  }
  return lckw::kExitValidation;
}
