#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>
#include <iosfwd>
#include <string>

#include "CLI11.hpp"
#include "table.hpp"

namespace plap::cli {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

using Action = std::function<int(Io&)>;

/// Output flags shared by every data-producing subcommand.
struct OutputOptions {
  std::string format = "csv";
  std::string output;

  Format parsed() const { return format == "json" ? Format::Json : Format::Csv; }
};

void add_output_options(CLI::App& app, OutputOptions& options);

/// "lo:hi:n" with n >= 1 (n = 1 yields lo).
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
};

Range parse_range(const std::string& text);
std::vector<double> expand(const Range& range);

/// Writes `main` (CSV or JSON) plus named secondary tables: extra JSON arrays,
/// or CSV sidecar files when writing to a file. Returns the sidecar paths written.
std::vector<std::string> emit(Io& io, const OutputOptions& options, const Json& meta, const Table& main,
                              const std::vector<std::pair<std::string, const Table*>>& secondary = {},
                              const Json& summary = Json());

/// f(0..n-1) on at most hardware_concurrency threads, results in index order.
/// The first exception thrown by any call is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n && !failed; k = next++) {
        try {
          out[k] = f(k);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Each registers a subcommand on `root` and returns the action to run when it is selected.
Action add_constants(CLI::App& root);
Action add_orbit(CLI::App& root);
Action add_branch(CLI::App& root);
Action add_verify(CLI::App& root);
Action add_flow(CLI::App& root);
Action add_figures(CLI::App& root);

}  // namespace plap::cli
