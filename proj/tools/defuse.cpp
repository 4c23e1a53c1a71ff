#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "defuse/agents.hpp"
#include "defuse/error.hpp"
#include "defuse/render.hpp"
#include "defuse/service.hpp"
#include "defuse/sweep.hpp"
#include "httplib.h"

using namespace defuse;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitValidator = 3;

std::vector<PuzzleId> parse_puzzles(const std::vector<std::string>& names) {
  std::vector<PuzzleId> out;
  for (const auto& n : names) {
    if (n == "all") return {kAllPuzzles.begin(), kAllPuzzles.end()};
    const auto id = parse_puzzle_id(n);
    if (!id) throw ConfigError("unknown puzzle: " + n);
    out.push_back(*id);
  }
  return out;
}

AgentSpec parse_agent(const std::string& kind, const std::string& endpoint_file, std::uint64_t seed) {
  AgentSpec a;
  const auto k = parse_agent_kind(kind);
  if (!k) throw ConfigError("unknown agent kind: " + kind);
  a.kind = *k;
  a.seed = seed;
  if (a.kind == AgentKind::remote_model) {
    if (endpoint_file.empty()) throw ConfigError("remote_model needs an endpoint file");
    a.endpoint = load_endpoint_config(endpoint_file);
  }
  return a;
}

struct RunArgs {
  std::string config;
  std::vector<std::string> puzzles{"all"};
  int runs = 10;
  std::uint64_t base_seed = 0;
  std::string solver = "random";
  std::string expert = "random";
  std::string solver_endpoint;
  std::string expert_endpoint;
  int turn_limit = 20;
  std::string out;
  int parallelism = 0;
};

int cmd_run(const RunArgs& a) {
  SweepConfig c;
  if (!a.config.empty()) {
    c = load_sweep_config(a.config);
  } else {
    c.puzzles = parse_puzzles(a.puzzles);
    c.runs = a.runs;
    c.base_seed = a.base_seed;
    c.solver = parse_agent(a.solver, a.solver_endpoint, 0);
    c.expert = parse_agent(a.expert, a.expert_endpoint, 1);
    c.turn_limit = a.turn_limit;
  }
  if (!a.out.empty()) c.output_dir = a.out;
  if (a.parallelism > 0) c.parallelism = a.parallelism;
  validate_sweep(c);
  fs::create_directories(c.output_dir);
  std::ofstream(fs::path(c.output_dir) / "sweep.json") << to_json(c).dump(2) << "\n";

  const auto total = sweep_cells(c).size();
  std::size_t seen = 0;
  const auto summary = run_sweep(c, [&](const RunResult& r) {
    ++seen;
    std::cerr << "[" << seen << "] " << puzzle_name(r.puzzle) << " run " << r.run_index << ": " << r.status
              << " psr=" << format_value(r.psr, Metric::psr) << " mistakes=" << r.mistakes << "\n";
  });
  std::cerr << summary.executed << " run(s) executed, " << summary.skipped << " already present, " << total
            << " total\n";
  std::ifstream in(results_path(c));
  const auto table = aggregate(read_results(in));
  for (auto m : {Metric::psr, Metric::am, Metric::acl}) std::cout << table_text(table, m) << "\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& format, const std::string& metric,
               const std::string& annotations) {
  std::vector<RunResult> all;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open " + p);
    auto part = read_results(in);
    all.insert(all.end(), part.begin(), part.end());
  }
  if (all.empty()) throw ConfigError("no results in input");
  std::vector<Metric> metrics;
  if (metric == "all")
    metrics = {Metric::psr, Metric::am, Metric::acl};
  else if (metric == "psr")
    metrics = {Metric::psr};
  else if (metric == "am")
    metrics = {Metric::am};
  else if (metric == "acl")
    metrics = {Metric::acl};
  else
    throw ConfigError("unknown metric: " + metric);
  const auto table = aggregate(all);
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (format == "csv") {
      if (metrics.size() > 1) std::cout << "# " << metric_title(metrics[i]) << "\n";
      std::cout << table_csv(table, metrics[i]);
    } else {
      std::cout << table_text(table, metrics[i]);
    }
    if (i + 1 < metrics.size()) std::cout << "\n";
  }
  if (!annotations.empty()) {
    const auto items = AnnotationStore(annotations).load();
    std::cout << "\nError categories (" << items.size() << " annotations)\n"
              << histogram_text(category_histogram(items));
  }
  return 0;
}

int cmd_annotate(const std::string& store, const std::vector<std::string>& results, const std::string& input) {
  std::vector<std::string> known;
  for (const auto& p : results) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open " + p);
    for (const auto& r : read_results(in)) known.push_back(r.run_id());
  }
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot open " + input);
  std::vector<ErrorAnnotation> items;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) items.push_back(annotation_from_json(ordered_json::parse(line)));
  AnnotationStore(store).append(items, known);
  std::cout << items.size() << " annotation(s) stored\n";
  return 0;
}

int cmd_render(const std::string& puzzle, std::uint64_t seed, const std::string& out, int clock) {
  const auto id = parse_puzzle_id(puzzle);
  if (!id) throw ConfigError("unknown puzzle: " + puzzle);
  const auto state = generate(*id, seed);
  fs::create_directories(out);
  const std::string stem = std::string(puzzle_name(*id)) + "-" + std::to_string(seed);
  const auto png = encode_png(render_image(state, clock));
  std::ofstream(fs::path(out) / (stem + ".png"), std::ios::binary)
      .write(reinterpret_cast<const char*>(png.data()), static_cast<std::streamsize>(png.size()));
  std::ofstream(fs::path(out) / (stem + ".view.json")) << solver_view(state, clock).dump(2) << "\n";
  std::ofstream(fs::path(out) / (stem + ".manual.txt")) << manual_text(*id, &state);
  std::cout << (fs::path(out) / stem).string() << ".{png,view.json,manual.txt}\n";
  return 0;
}

int cmd_oracle_check(int seeds, int episodes) {
  int failures = 0;
  for (auto id : kAllPuzzles) {
    int invalid = 0;
    for (int s = 0; s < seeds; ++s)
      if (!validate(generate(id, static_cast<std::uint64_t>(s)))) ++invalid;
    int unsolved = 0;
    int mistakes = 0;
    for (int s = 0; s < episodes; ++s) {
      SessionConfig c;
      c.puzzle = id;
      c.seed = static_cast<std::uint64_t>(s);
      c.solver.kind = AgentKind::oracle;
      c.expert.kind = AgentKind::oracle;
      Session session = create_session(c);
      auto solver = make_agent(c.solver, Role::solver, c.seed);
      auto expert = make_agent(c.expert, Role::expert, c.seed);
      run_episode(session, *solver, *expert);
      if (session.status != SessionStatus::solved) ++unsolved;
      mistakes += session.mistakes;
    }
    const bool ok = invalid == 0 && unsolved == 0 && mistakes == 0;
    if (!ok) ++failures;
    std::cout << (ok ? "ok   " : "FAIL ") << puzzle_name(id) << ": " << invalid << "/" << seeds
              << " invalid instances, " << unsolved << "/" << episodes << " oracle episodes unsolved, " << mistakes
              << " mistakes\n";
  }
  return failures == 0 ? 0 : kExitValidator;
}

int cmd_play(const std::string& puzzle, std::uint64_t seed, const std::string& role_name_s,
             const std::string& partner) {
  const auto id = parse_puzzle_id(puzzle);
  if (!id) throw ConfigError("unknown puzzle: " + puzzle);
  const auto role = parse_role(role_name_s);
  if (!role) throw ConfigError("unknown role: " + role_name_s);
  SessionConfig c;
  c.puzzle = *id;
  c.seed = seed;
  AgentSpec human;
  human.kind = AgentKind::human;
  AgentSpec other = parse_agent(partner, "", 0);
  c.solver = *role == Role::solver ? human : other;
  c.expert = *role == Role::expert ? human : other;
  Session s = create_session(c);
  HumanAgent me(std::cin, std::cout);
  auto them = make_agent(other, *role == Role::solver ? Role::expert : Role::solver, seed);
  if (*role == Role::solver)
    run_episode(s, me, *them);
  else
    run_episode(s, *them, me);
  const auto r = score_run(s);
  std::cout << "\n" << status_name(s.status) << ": psr=" << format_value(r.psr, Metric::psr)
            << " mistakes=" << r.mistakes << " turns=" << r.conversation_length << "\n";
  return 0;
}

std::atomic<httplib::Server*> g_server{nullptr};

int cmd_serve(const std::string& host, int port, const std::string& data_dir, const std::string& ui_dir,
              std::size_t max_active) {
  SessionService service(ServiceOptions{data_dir, max_active});
  const auto recovered = service.recover();
  httplib::Server server;
  mount_routes(server, service);
  if (!ui_dir.empty() && !server.set_mount_point("/", ui_dir)) throw ConfigError("cannot serve " + ui_dir);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (auto* s = g_server.load()) s->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (auto* s = g_server.load()) s->stop();
  });
  std::cerr << "listening on http://" << host << ":" << port << " (" << recovered << " session(s) recovered)\n";
  if (!server.listen(host, port)) throw ConfigError("cannot listen on " + host + ":" + std::to_string(port));
  g_server = nullptr;
  service.shutdown();
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative puzzle benchmark: sweeps, reports, rendering and the session service"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a sweep of episodes and write results");
  run_cmd->add_option("-c,--config", run.config, "Sweep config file (JSON)");
  run_cmd->add_option("-p,--puzzles", run.puzzles, "Puzzle names or 'all'")->delimiter(',');
  run_cmd->add_option("-n,--runs", run.runs, "Runs per puzzle");
  run_cmd->add_option("--base-seed", run.base_seed, "Base seed for instance derivation");
  run_cmd->add_option("--solver", run.solver, "random, oracle or remote_model");
  run_cmd->add_option("--expert", run.expert, "random, oracle or remote_model");
  run_cmd->add_option("--solver-endpoint", run.solver_endpoint, "Endpoint file for a remote solver");
  run_cmd->add_option("--expert-endpoint", run.expert_endpoint, "Endpoint file for a remote expert");
  run_cmd->add_option("--turn-limit", run.turn_limit, "Solver turns per episode");
  run_cmd->add_option("-o,--out", run.out, "Output directory");
  run_cmd->add_option("-j,--parallel", run.parallelism, "Concurrent episodes");

  std::vector<std::string> report_paths;
  std::string report_format = "text";
  std::string report_metric = "all";
  std::string report_annotations;
  auto* report_cmd = app.add_subcommand("report", "Print PSR, AM and ACL tables from results files");
  report_cmd->add_option("results", report_paths, "results.jsonl files")->required();
  report_cmd->add_option("-f,--format", report_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  report_cmd->add_option("-m,--metric", report_metric, "psr, am, acl or all");
  report_cmd->add_option("--annotations", report_annotations, "Annotation store to summarize");

  std::string ann_store;
  std::vector<std::string> ann_results;
  std::string ann_input;
  auto* ann_cmd = app.add_subcommand("annotate", "Append error annotations to a store");
  ann_cmd->add_option("store", ann_store, "Annotation store (JSONL)")->required();
  ann_cmd->add_option("-i,--input", ann_input, "Annotations to add (JSONL)")->required();
  ann_cmd->add_option("-r,--results", ann_results, "Results files the annotations refer to")->required();

  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::string serve_data = "sessions";
  std::string serve_ui;
  std::size_t serve_max = 256;
  auto* serve_cmd = app.add_subcommand("serve", "Start the session service");
  serve_cmd->add_option("--host", serve_host);
  serve_cmd->add_option("--port", serve_port);
  serve_cmd->add_option("-d,--data-dir", serve_data, "Where sessions are persisted");
  serve_cmd->add_option("--ui-dir", serve_ui, "Static client assets to serve at /");
  serve_cmd->add_option("--max-sessions", serve_max, "Active session limit");

  std::string render_puzzle;
  std::uint64_t render_seed = 0;
  std::string render_out = ".";
  int render_clock = 600;
  auto* render_cmd = app.add_subcommand("render", "Write image, solver view and manual for one instance");
  render_cmd->add_option("puzzle", render_puzzle)->required();
  render_cmd->add_option("seed", render_seed)->required();
  render_cmd->add_option("-o,--out", render_out, "Output directory");
  render_cmd->add_option("--clock", render_clock, "Clock seconds shown on realtime puzzles");

  int check_seeds = 1000;
  int check_episodes = 50;
  auto* check_cmd = app.add_subcommand("oracle-check", "Run generation validators and oracle episodes");
  check_cmd->add_option("--seeds", check_seeds, "Seeds per puzzle for validators");
  check_cmd->add_option("--episodes", check_episodes, "Oracle episodes per puzzle");

  std::string play_puzzle;
  std::uint64_t play_seed = 0;
  std::string play_role = "solver";
  std::string play_partner = "oracle";
  auto* play_cmd = app.add_subcommand("play", "Play one role in the terminal against an agent");
  play_cmd->add_option("puzzle", play_puzzle)->required();
  play_cmd->add_option("--seed", play_seed);
  play_cmd->add_option("--role", play_role)->check(CLI::IsMember({"solver", "expert"}));
  play_cmd->add_option("--partner", play_partner, "random or oracle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*report_cmd) return cmd_report(report_paths, report_format, report_metric, report_annotations);
    if (*ann_cmd) return cmd_annotate(ann_store, ann_results, ann_input);
    if (*serve_cmd) return cmd_serve(serve_host, serve_port, serve_data, serve_ui, serve_max);
    if (*render_cmd) return cmd_render(render_puzzle, render_seed, render_out, render_clock);
    if (*check_cmd) return cmd_oracle_check(check_seeds, check_episodes);
    if (*play_cmd) return cmd_play(play_puzzle, play_seed, play_role, play_partner);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return kExitValidator;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
