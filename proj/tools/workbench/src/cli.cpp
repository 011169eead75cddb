#include "ltax/workbench/cli.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ltax/bicluster.hpp"
#include "ltax/exploration.hpp"
#include "ltax/io.hpp"
#include "ltax/json.hpp"
#include "ltax/lattice.hpp"
#include "ltax/workbench/datasets.hpp"
#include "ltax/workbench/service.hpp"

namespace ltax::workbench {

namespace {

struct Options {
  std::string input;
  std::string builtin;
  std::string format = "text";
  std::string min_density = "0";
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  std::string snapshot_dir;
  std::string from;
  std::string to;
  std::string output;
  std::string save;
  std::string noun = "object";
  bool diagram = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_stream(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_path(const std::string& path, std::istream& in) {
  if (path == "-") return read_stream(in);
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::io_error, "cannot open input file '" + path + "'");
  return read_stream(file);
}

std::string extension_format(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot == std::string::npos) return "cxt";
  auto ext = path.substr(dot + 1);
  if (ext == "csv") return "csv";
  if (ext == "json") return "json";
  return "cxt";
}

FormalContext decode(const std::string& text, const std::string& format, std::ostream& err) {
  ParsedContext parsed;
  if (format == "cxt") {
    parsed = parse_cxt(text);
  } else if (format == "csv") {
    parsed = parse_csv(text);
  } else if (format == "json") {
    return context_from_json(parse_json(text));
  } else {
    throw UsageError("unknown input format '" + format + "' (expected cxt, csv or json)");
  }
  for (const auto& w : parsed.report.warnings) {
    err << "warning: line " << w.line << ": " << w.message << "\n";
  }
  return std::move(parsed.context);
}

FormalContext load_context(const Options& opt, bool builtin_flag, std::istream& in,
                           std::ostream& err) {
  if (builtin_flag) {
    const std::string name = !opt.builtin.empty() ? opt.builtin : opt.input;
    if (name.empty()) throw UsageError("--builtin needs a dataset name (or -i NAME)");
    return DatasetRegistry::builtin().at(name).context;
  }
  if (opt.input.empty()) throw UsageError("no input: pass -i FILE (or -i -) or --builtin NAME");
  const auto format = !opt.from.empty() ? opt.from : extension_format(opt.input);
  return decode(read_path(opt.input, in), format, err);
}

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.output, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::io_error, "cannot write output file '" + opt.output + "'");
  file << text;
}

std::string braced(const std::vector<std::string>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s + "}";
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw UsageError("unsupported --format '" + format + "' here (expected one of: " + list + ")");
}

int cmd_concepts(const Options& opt, const FormalContext& ctx, std::ostream& out) {
  require_format(opt.format, {"text", "json", "dot", "diagram-json"});
  if (opt.format == "dot" || opt.format == "diagram-json" || opt.diagram) {
    const auto format = opt.format == "dot" ? DiagramFormat::dot : DiagramFormat::json;
    emit(opt, export_diagram(build_lattice(ctx), format), out);
    return exit_ok;
  }
  const auto concepts = enumerate_concepts(ctx);
  if (opt.format == "json") {
    emit(opt, concepts_to_json(ctx, concepts).dump(2) + "\n", out);
    return exit_ok;
  }
  std::string text;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    text += std::to_string(i) + ": " + braced(ctx.object_names(concepts[i].extent)) + " | " +
            braced(ctx.attribute_names(concepts[i].intent)) + "\n";
  }
  text += std::to_string(concepts.size()) + " concepts\n";
  emit(opt, text, out);
  return exit_ok;
}

int cmd_implications(const Options& opt, const FormalContext& ctx, std::ostream& out) {
  require_format(opt.format, {"text", "json"});
  const auto base = duquenne_guigues_base(ctx);
  if (opt.format == "json") {
    emit(opt, implications_to_json(ctx, base).dump(2) + "\n", out);
    return exit_ok;
  }
  std::string text;
  for (const auto& imp : base.implications) text += render_implication(ctx, imp) + "\n";
  text += std::to_string(base.size()) + " implications\n";
  emit(opt, text, out);
  return exit_ok;
}

int cmd_biclusters(const Options& opt, const FormalContext& ctx, std::ostream& out) {
  require_format(opt.format, {"text", "json"});
  const auto rho_min = Rational::parse(opt.min_density);
  const auto found = mine_dense(ctx, rho_min);
  if (opt.format == "json") {
    emit(opt, biclusters_to_json(ctx, found).dump(2) + "\n", out);
    return exit_ok;
  }
  std::string text;
  for (const auto& b : found) {
    std::ostringstream line;
    line << "(" << ctx.objects()[b.object] << ", " << ctx.attributes()[b.attribute] << ")  rho="
         << b.density.to_string() << "  " << braced(ctx.object_names(b.extent)) << " | "
         << braced(ctx.attribute_names(b.intent)) << "\n";
    text += line.str();
  }
  text += std::to_string(found.size()) + " biclusters\n";
  emit(opt, text, out);
  return exit_ok;
}

int cmd_convert(const Options& opt, const FormalContext& ctx, std::ostream& out) {
  const auto to = opt.to.empty() ? std::string("cxt") : opt.to;
  if (to == "cxt") {
    emit(opt, serialize_cxt(ctx), out);
  } else if (to == "csv") {
    emit(opt, serialize_csv(ctx), out);
  } else if (to == "json") {
    emit(opt, context_to_json(ctx).dump(2) + "\n", out);
  } else {
    throw UsageError("unknown output format '" + to + "' (expected cxt, csv or json)");
  }
  return exit_ok;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_names(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_explore(const Options& opt, const FormalContext& ctx, std::istream& in,
                std::ostream& out) {
  ExplorationSession session(ctx);
  out << "Exploring '" << ctx.name() << "': " << ctx.object_count() << " objects, "
      << ctx.attribute_count() << " attributes.\n";
  out << "Attributes: " << braced(ctx.attributes()) << "\n";

  bool eof = false;
  while (!eof) {
    auto q = session.next_question();
    if (!q) break;
    const auto& wc = session.working_context();
    while (session.status() == SessionStatus::awaiting_answer) {
      out << "\nQ" << q->seq << ": "
          << render_question(wc.attribute_names(q->premise), wc.attribute_names(q->conclusion),
                             opt.noun)
          << "\n[y]es / [n]o, give a counterexample / [s]top > " << std::flush;
      std::string line;
      if (!std::getline(in, line)) {
        eof = true;
        break;
      }
      line = trim(line);
      if (line == "y" || line == "yes") {
        session.accept();
      } else if (line == "s" || line == "stop") {
        session.stop();
      } else if (line == "n" || line == "no") {
        std::string name;
        std::string attrs;
        out << "counterexample name > " << std::flush;
        if (!std::getline(in, name)) {
          eof = true;
          break;
        }
        out << "its attributes (comma-separated) > " << std::flush;
        if (!std::getline(in, attrs)) {
          eof = true;
          break;
        }
        try {
          session.reject({trim(name), wc.attributes_named(split_names(attrs))});
        } catch (const Error& e) {
          out << "rejected: " << e.what() << "\n";
        }
      } else {
        out << "please answer y, n or s\n";
      }
    }
    if (session.status() == SessionStatus::stopped) break;
  }
  if (eof && session.status() == SessionStatus::awaiting_answer) session.stop();

  const auto& final_ctx = session.working_context();
  const auto base = session.accepted_base();
  out << "\nExploration " << to_string(session.status()) << ". " << base.size()
      << " accepted implications, " << final_ctx.object_count() << " objects.\n";
  for (const auto& imp : base.implications) out << "  " << render_implication(final_ctx, imp) << "\n";

  if (!opt.output.empty()) {
    std::ofstream file(opt.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::io_error, "cannot write output file '" + opt.output + "'");
    file << serialize_cxt(final_ctx);
  }
  if (!opt.save.empty()) {
    std::ofstream file(opt.save, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::io_error, "cannot write session file '" + opt.save + "'");
    file << session.save();
  }
  return exit_ok;
}

WorkbenchService* active_service = nullptr;

extern "C" void handle_signal(int) {
  if (active_service) active_service->stop();
}

int cmd_serve(const Options& opt, std::ostream& out) {
  ServiceOptions so;
  if (!opt.static_dir.empty()) so.static_dir = opt.static_dir;
  if (!opt.snapshot_dir.empty()) so.snapshot_dir = opt.snapshot_dir;
  WorkbenchService service(so);
  const int port = service.bind(opt.host, opt.port);
  out << "listening on http://" << opt.host << ":" << port << "\n" << std::flush;
  active_service = &service;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  service.listen();
  active_service = nullptr;
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Concept lattices, implication bases, OA-biclusters and attribute exploration "
               "for Boolean taxonomies",
               "lattice-tax"};
  app.require_subcommand(1);
  Options opt;
  std::map<std::string, CLI::Option*> builtin_flags;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("-i,--input", opt.input, "input file (cxt, csv or json; '-' for stdin)");
    builtin_flags[sub->get_name()] =
        sub->add_option("--builtin", opt.builtin, "use a bundled dataset")->expected(0, 1);
  };

  auto* concepts = app.add_subcommand("concepts", "list formal concepts or export the line diagram");
  add_input(concepts);
  concepts->add_option("--format", opt.format, "text | json | dot | diagram-json");
  concepts->add_option("-o,--output", opt.output, "write to file instead of stdout");
  concepts->add_flag("--diagram", opt.diagram, "emit diagram-json (layered line diagram)");

  auto* implications = app.add_subcommand("implications", "canonical implication base");
  add_input(implications);
  implications->add_option("--format", opt.format, "text | json");
  implications->add_option("-o,--output", opt.output, "write to file instead of stdout");

  auto* biclusters = app.add_subcommand("biclusters", "dense OA-biclusters");
  add_input(biclusters);
  biclusters->add_option("--format", opt.format, "text | json");
  biclusters->add_option("--min-density", opt.min_density, "threshold: decimal or p/q");
  biclusters->add_option("-o,--output", opt.output, "write to file instead of stdout");

  auto* explore = app.add_subcommand("explore", "interactive attribute exploration on the terminal");
  add_input(explore);
  explore->add_option("-o,--output", opt.output, "write the grown context (cxt) here");
  explore->add_option("--save", opt.save, "write the final session (session-json) here");
  explore->add_option("--noun", opt.noun, "what the objects are called in questions");

  auto* convert = app.add_subcommand("convert", "convert between cxt, csv and json");
  add_input(convert);
  convert->add_option("--from", opt.from, "input format: cxt | csv | json");
  convert->add_option("--to", opt.to, "output format: cxt | csv | json");
  convert->add_option("-o,--output", opt.output, "write to file instead of stdout");

  auto* serve = app.add_subcommand("serve", "run the HTTP/JSON service");
  serve->add_option("--port", opt.port, "TCP port (0 picks a free one)");
  serve->add_option("--host", opt.host, "bind address");
  serve->add_option("--static", opt.static_dir, "directory served at /");
  serve->add_option("--snapshot", opt.snapshot_dir, "directory for JSON snapshots");

  // Accepted everywhere for a uniform command line; ignored where meaningless.
  for (auto* sub : {concepts, implications, biclusters, explore, convert}) {
    if (sub != biclusters) sub->add_option("--min-density", opt.min_density)->group("");
    if (sub != convert) sub->add_option("--from", opt.from, "input format: cxt | csv | json");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'lattice-tax --help' for usage\n";
    return exit_usage;
  }

  try {
    if (serve->parsed()) return cmd_serve(opt, out);
    for (auto* sub : {concepts, implications, biclusters, explore, convert}) {
      if (!sub->parsed()) continue;
      const bool builtin = builtin_flags.at(sub->get_name())->count() > 0;
      const auto ctx = load_context(opt, builtin, in, err);
      if (sub == concepts) return cmd_concepts(opt, ctx, out);
      if (sub == implications) return cmd_implications(opt, ctx, out);
      if (sub == biclusters) return cmd_biclusters(opt, ctx, out);
      if (sub == explore) return cmd_explore(opt, ctx, in, out);
      return cmd_convert(opt, ctx, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "error [" << e.token() << "]: " << e.what() << "\n";
    return exit_data;
  }
  return exit_usage;
}

}  // namespace ltax::workbench
