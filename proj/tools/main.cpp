#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

using catquot::cli::Status;

struct Spec {
  const char* command;
  const char* help;
  const char* input;  // positional name
  std::vector<std::pair<const char*, bool>> options;  // name, required
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> s{
      {"check", "validate every block of a file", "file", {}},
      {"subterminals", "subterminal objects and their principal filters", "file", {{"category", false}}},
      {"quotient", "emit the filter quotient as a category file", "file", {{"filter", true}}},
      {"preserve", "check that the projection preserves properties", "file", {{"filter", true}, {"property", false}}},
      {"model-check", "re-check the model structure axioms", "file", {{"model", false}}},
      {"model-quotient", "transfer a model structure to a filter quotient", "file",
       {{"model", false}, {"filter", true}}},
      {"enum-models", "enumerate every model structure", "file", {{"category", false}}},
      {"fib-check", "classify a functor as a fibration", "file", {{"functor", false}}},
      {"groth", "Grothendieck construction of indexed data", "file", {{"indexed", false}}},
      {"fcoswp", "structured fibration over a scheme instantiation", "file",
       {{"scheme", false}, {"structure", false}, {"quotient", false}}},
      {"universe", "universe, fibrancy, univalence and fibred-structure verdicts", "file",
       {{"universe", false}, {"quotient", false}, {"require", false}}},
      {"germ", "germ object or morphism literal", "expr", {{"src", false}, {"tgt", false}}},
  };
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filter quotients of finite categories and model structures"};
  app.require_subcommand(1);
  app.fallthrough();

  catquot::cli::RunConfig cfg;
  std::string format = "text";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--output", cfg.output, "write the report here instead of stdout");
  app.add_option("--probes", cfg.probes, "probe set sizes")
      ->delimiter(',')
      ->allow_extra_args(false)
      ->check(CLI::NonNegativeNumber);
  app.add_option("--cap", cfg.cap, "search cap")->envname("CATQUOT_CAP")->check(CLI::PositiveNumber);

  std::map<std::string, std::string> values;
  for (const auto& s : specs()) {
    auto* sub = app.add_subcommand(s.command, s.help);
    sub->add_option(s.input, cfg.inputs)->required();
    for (const auto& [name, req] : s.options) {
      auto* opt = sub->add_option(std::string("--") + name, values[std::string(s.command) + "/" + name]);
      if (req) opt->required();
    }
    sub->callback([&cfg, cmd = s.command] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Status::InputError;
  }
  cfg.format = format == "kv" ? catquot::cli::Format::Kv : catquot::cli::Format::Text;
  const std::string prefix = cfg.command + "/";
  for (const auto& [key, value] : values)
    if (key.rfind(prefix, 0) == 0 && !value.empty()) cfg.options[key.substr(prefix.size())] = value;

  catquot::cli::RunResult result;
  try {
    result = catquot::cli::run(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "catquot: " << e.what() << '\n';
    return Status::InputError;
  }
  if (cfg.output.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "catquot: cannot write " << cfg.output << '\n';
      return Status::InputError;
    }
    out << result.output;
  }
  return result.status;
}
