#include "plap/cli.hpp"

#include <map>
#include <ostream>

#include "commands.hpp"
#include "plap/error.hpp"

namespace plap::cli {

void add_output_options(CLI::App& app, OutputOptions& options) {
  app.add_option("--format", options.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output,-o", options.output, "Output file (default: standard output; relative paths go under $PLAP_OUTPUT_DIR)");
}

Range parse_range(const std::string& text) {
  Range r;
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw Error(ErrorKind::InvalidArgument, "expected lo:hi:n, got '" + text + "'");
  try {
    std::size_t used = 0;
    r.lo = std::stod(text.substr(0, first), &used);
    r.hi = std::stod(text.substr(first + 1, second - first - 1));
    const long long n = std::stoll(text.substr(second + 1));
    if (n < 1) throw std::invalid_argument("n");
    r.n = static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "expected lo:hi:n with n >= 1, got '" + text + "'");
  }
  if (r.n > 1 && !(r.lo < r.hi)) throw Error(ErrorKind::InvalidArgument, "range needs lo < hi: '" + text + "'");
  return r;
}

std::vector<double> expand(const Range& range) {
  std::vector<double> v(range.n);
  for (std::size_t k = 0; k < range.n; ++k) {
    v[k] = range.n == 1 ? range.lo
                        : range.lo + (range.hi - range.lo) * static_cast<double>(k) / static_cast<double>(range.n - 1);
  }
  if (range.n > 1) v.back() = range.hi;
  return v;
}

std::vector<std::string> emit(Io& io, const OutputOptions& options, const Json& meta, const Table& main,
                              const std::vector<std::pair<std::string, const Table*>>& secondary,
                              const Json& summary) {
  Sink sink(options.output, io.out);
  std::vector<std::string> written;
  if (options.parsed() == Format::Json) {
    std::vector<std::pair<std::string, const Table*>> tables{{"records", &main}};
    tables.insert(tables.end(), secondary.begin(), secondary.end());
    Json extra = Json::object();
    if (!summary.is_null()) extra["summary"] = summary;
    write_json(meta, tables, extra, sink.stream());
    return written;
  }
  write_csv(main, sink.stream());
  for (const auto& [name, table] : secondary) {
    if (!sink.to_file()) continue;
    const auto path = sidecar(sink.path(), name);
    Sink side(path.string(), io.out);
    write_csv(*table, side.stream());
    written.push_back(path.string());
  }
  if (!summary.is_null()) io.err << "summary: " << summary.dump() << '\n';
  return written;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal constants, periodic orbits, interpolation inequalities and the entropy flow of the p-Laplacian on the circle", "plap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PLAP_VERSION);

  std::map<CLI::App*, Action> actions;
  const auto reg = [&](Action (*add)(CLI::App&)) {
    Action action = add(app);
    actions.emplace(app.get_subcommands({}).back(), std::move(action));
  };
  reg(add_constants);
  reg(add_orbit);
  reg(add_branch);
  reg(add_verify);
  reg(add_flow);
  reg(add_figures);

  Io io{out, err};
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    auto it = actions.find(sub);
    if (it == actions.end()) continue;
    try {
      return it->second(io);
    } catch (const Error& e) {
      err << "plap " << sub->get_name() << ": " << e.what() << '\n';
      switch (e.kind()) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidExponent:
        case ErrorKind::OutOfRange:
          return kUsage;
        default:
          return kViolation;
      }
    } catch (const std::exception& e) {
      err << "plap " << sub->get_name() << ": " << e.what() << '\n';
      return kViolation;
    }
  }
  return kUsage;
}

}  // namespace plap::cli
