#include "http_api.hpp"

#include "rcanav/error.hpp"
#include "rcanav/oracle.hpp"
#include "rcanav/rcf_io.hpp"
#include "rcanav/render.hpp"
#include "rcanav/session.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

namespace {

using namespace rcanav;

struct ExploreOptions {
  std::string rcf_path;
  std::string context;
  std::string strategy;
  std::vector<std::string> query;
  std::vector<std::string> steps;
  std::string format = "json";
  bool verify = false;
};

int verify_context(const RelationalContextFamily& rcf, const Strategy& strategy,
                   const std::string& context) {
  auto report = oracle::check_equivalence(rcf, strategy, context);
  for (const auto& m : report.mismatches) std::cerr << "mismatch: " << m << "\n";
  std::cerr << context << ": " << report.concepts_checked << " concepts, "
            << report.mismatches.size() << " mismatches\n";
  return report.mismatches.empty() ? 0 : 1;
}

int run_explore(const ExploreOptions& opt) {
  auto rcf = load_rcf(opt.rcf_path);
  auto strategy = parse_strategy(opt.strategy);
  Session session(rcf, opt.context, strategy);

  auto response = session.query(opt.query);
  for (const auto& s : opt.steps) {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::invalid_request, "--step expects <direction>:<concept>, got '" + s + "'");
    }
    response = session.step(parse_direction(s.substr(0, colon)), s.substr(colon + 1));
  }

  NameRegistry names = session.registry();
  const auto& n = *session.current();
  if (opt.format == "json") {
    std::cout << response.dump(2) << "\n";
  } else if (opt.format == "dot") {
    std::cout << export_neighborhood_dot(n, session.snapshot(), names);
  } else {
    std::cout << render_table(n, session.snapshot(), names);
  }

  if (!opt.verify) return 0;
  int status = 0;
  std::vector<std::string> homes{opt.context};
  if (session.active_context() != opt.context) homes.push_back(session.active_context());
  for (const auto& home : homes) {
    Strategy applicable;
    for (const auto& e : strategy) {
      if (rcf.relation(e.relation).source() == home) applicable.insert(e);
    }
    status |= verify_context(rcf, applicable, home);
  }
  return status;
}

int run_verify(const std::string& path, const std::string& strategy_text,
               const std::vector<std::string>& contexts) {
  auto rcf = load_rcf(path);
  auto strategy = parse_strategy(strategy_text);
  validate_strategy(rcf, strategy);
  std::vector<std::string> homes = contexts;
  if (homes.empty()) {
    for (const auto& [id, ctx] : rcf.contexts()) homes.push_back(id);
  }
  int status = 0;
  for (const auto& home : homes) {
    Strategy applicable;
    for (const auto& e : strategy) {
      if (rcf.relation(e.relation).source() == home) applicable.insert(e);
    }
    status |= verify_context(rcf, applicable, home);
  }
  return status;
}

int run_convert(const std::string& path, const std::string& to) {
  auto rcf = load_rcf(path);
  std::cout << (to == "json" ? serialize_rcf_json(rcf) : serialize_rcf_table(rcf));
  return 0;
}

int run_serve(int port, const std::string& host) {
  ExploreService service;
  httplib::Server server;
  rcanav::http::mount(server, service);
  spdlog::info("listening on {}:{}", host, port);
  if (!server.listen(host, port)) {
    spdlog::error("cannot bind {}:{}", host, port);
    return 1;
  }
  return 0;
}

int env_port() {
  const char* p = std::getenv("PORT");
  return p ? std::atoi(p) : 8080;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* level = std::getenv("LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }

  CLI::App app{"On-demand relational concept analysis"};
  app.require_subcommand(1);

  ExploreOptions ex;
  auto* explore = app.add_subcommand("explore", "Query a concept and print its neighbourhood");
  explore->add_option("--rcf", ex.rcf_path, "RCF file (.json or table text)")->required()->check(CLI::ExistingFile);
  explore->add_option("--context", ex.context, "Context to explore")->required();
  explore->add_option("--strategy", ex.strategy, "Strategy, e.g. support:exists,support:forall");
  explore->add_option("--query", ex.query, "Attributes of the starting concept")->delimiter(',');
  explore->add_option("--step", ex.steps, "Move after the query: up|down|relational:<concept name>");
  explore->add_option("--format", ex.format, "Output format")
      ->check(CLI::IsMember({"json", "dot", "table"}));
  explore->add_flag("--verify", ex.verify, "Cross-check every concept against the lattice oracle");

  std::string verify_path, verify_strategy;
  std::vector<std::string> verify_contexts;
  auto* verify = app.add_subcommand("verify", "Compare the engine with the lattice oracle");
  verify->add_option("--rcf", verify_path, "RCF file")->required()->check(CLI::ExistingFile);
  verify->add_option("--strategy", verify_strategy, "Strategy");
  verify->add_option("--context", verify_contexts, "Contexts to check (default: all)");

  std::string convert_path, convert_to = "json";
  auto* convert = app.add_subcommand("convert", "Re-serialize an RCF file");
  convert->add_option("--rcf", convert_path, "RCF file")->required()->check(CLI::ExistingFile);
  convert->add_option("--to", convert_to, "Output format")->check(CLI::IsMember({"json", "table"}));

  int port = env_port();
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--port", port, "Port (default $PORT or 8080)");
  serve->add_option("--host", host, "Bind address");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*explore) return run_explore(ex);
    if (*verify) return run_verify(verify_path, verify_strategy, verify_contexts);
    if (*convert) return run_convert(convert_path, convert_to);
    if (*serve) return run_serve(port, host);
  } catch (const std::exception& e) {
    std::cerr << error_json(e).dump() << "\n";
    return 2;
  }
  return 0;
}
