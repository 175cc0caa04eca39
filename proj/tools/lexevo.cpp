#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "lexevo/error.hpp"
#include "lexevo/io.hpp"
#include "lexevo/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("-c,--config", args.config, "run configuration file")->required()->check(CLI::ExistingFile);
  cmd.add_option("-o,--out", args.out, "output directory (overrides the config)");
  cmd.add_option("--seed", args.seed, "layout seed (overrides the config)");
  cmd.add_option("--set", args.overrides, "KEY=VALUE config override, repeatable");
}

lexevo::RunConfig build_config(const CommonArgs& args) {
  auto config = lexevo::RunConfig::load(args.config);
  const auto cwd = std::filesystem::current_path();
  for (const std::string& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw lexevo::Error(lexevo::ErrorCode::config, "--set expects KEY=VALUE, got '" + kv + "'");
    config.set(lexevo::trim(std::string_view(kv).substr(0, eq)), std::string_view(kv).substr(eq + 1), cwd);
  }
  if (!args.out.empty()) config.output = std::filesystem::absolute(args.out).lexically_normal();
  if (args.seed) config.seed = *args.seed;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexevo: lexical evolution of a bibliographic corpus"};
  app.require_subcommand(1);

  CommonArgs args;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"run", "run every stage in order"},
      {"ingest", "load, validate and filter the bibliographic export"},
      {"stats", "vocabulary, frequency tables and publication trend"},
      {"ca", "correspondence analysis with year projections"},
      {"periods", "characteristic terms and pioneer documents per period"},
      {"figures", "render SVG figures from cached artifacts"},
  };
  for (const Sub& s : subs) add_common(*app.add_subcommand(s.name, s.help), args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const auto config = build_config(args);
    if (name == "run") {
      config.validate();
      lexevo::run_pipeline(config);
    } else {
      lexevo::run_stage(lexevo::parse_stage(name), config);
    }
    std::clog << "lexevo: " << name << " finished, artifacts in " << config.output.string() << "\n";
    return 0;
  } catch (const lexevo::Error& e) {
    std::cerr << "lexevo: error [" << lexevo::to_string(e.code()) << "]: " << e.what() << "\n";
    return lexevo::exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "lexevo: internal error: " << e.what() << "\n";
    return 3;
  }
}
