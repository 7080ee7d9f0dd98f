// katolab <subcommand> [flags] --out FILE

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "katolab/config.hpp"
#include "katolab/error.hpp"
#include "katolab/experiment.hpp"

namespace {

const std::map<std::string, std::string> kAbout = {
    {"perturb", "perturbation series of an eigenvalue"},
    {"temple", "Temple-Kato eigenvalue enclosures"},
    {"projections", "pairs of orthogonal projections"},
    {"adiabatic", "adiabatic transport and Berry phase"},
    {"resum", "Pade, Borel and product-formula experiments"},
    {"models", "model operators and sharp constants"},
};

std::string flag_name(const std::string& key) {
  std::string dashed = key;
  for (char& ch : dashed)
    if (ch == '_') ch = '-';
  return dashed == key ? "--" + key : "--" + dashed + ",--" + key;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) katolab::fail("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Invocation {
  std::string config_file;
  std::string out;
  std::string format;
  std::string seed;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> given;
};

int execute(const std::string& sub, const Invocation& inv) {
  using namespace katolab;
  std::map<std::string, std::string> values;
  if (!inv.config_file.empty()) values = parse_config_text(read_file(inv.config_file));
  for (const auto& s : inv.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail("malformed --set: expected key=value, got '" + s + "'");
    values[s.substr(0, eq)] = s.substr(eq + 1);
  }
  for (const auto& [k, opt] : inv.given)
    if (opt->count() > 0) values[k] = inv.flags.at(k);
  if (!inv.out.empty()) values["out"] = inv.out;
  if (!inv.format.empty()) values["format"] = inv.format;
  if (!inv.seed.empty()) values["seed"] = inv.seed;

  ExperimentConfig config = make_config(sub, values);
  apply_seed_override(config);

  std::string text;
  bool pass = true;
  if (sweep_axis(config)) {
    const auto s = sweep(config);
    pass = s.pass();
    text = config.format == "csv" ? to_csv(s) : to_json(s).dump(2) + "\n";
    std::cerr << sub << " sweep over " << s.axis << ": " << s.records.size() << " points, "
              << (pass ? "pass" : "target miss") << "\n";
  } else {
    const auto r = run(config);
    pass = r.pass();
    text = config.format == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n";
    std::cerr << r.experiment_id << ": " << (pass ? "pass" : "target miss") << "\n";
    for (const auto& t : r.targets)
      if (!t.pass) std::cerr << "  " << t.name << " = " << t.value << " (expected " << t.expected << ")\n";
  }
  if (config.out.empty()) std::cout << text;
  else write_atomic(config.out, text);
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral perturbation laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", katolab::version());

  std::map<std::string, Invocation> invocations;
  for (const auto& sub : katolab::subcommands()) {
    auto* cmd = app.add_subcommand(sub, kAbout.at(sub));
    auto& inv = invocations[sub];
    cmd->add_option("--config", inv.config_file, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--out", inv.out, "output file (stdout when omitted)");
    cmd->add_option("--format", inv.format, "json or csv");
    cmd->add_option("--seed", inv.seed, "random seed (KATOLAB_SEED overrides)");
    cmd->add_option("--set", inv.sets, "extra key=value pairs");
    for (const auto& p : katolab::schema(sub)) {
      inv.given[p.key] = cmd->add_option(flag_name(p.key), inv.flags[p.key], p.help + " [" + p.default_value + "]");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const auto* chosen = app.get_subcommands().front();
  try {
    return execute(chosen->get_name(), invocations[chosen->get_name()]);
  } catch (const std::exception& e) {
    std::cerr << "katolab: error: " << e.what() << "\n";
    return 1;
  }
}
