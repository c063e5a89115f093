// dss-lab: command-line front end.
//
// Exit codes: 0 success, 1 property refuted, 2 usage error, 3 resource budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dss/audit.hpp"
#include "dss/bounds.hpp"
#include "dss/lattice_shell.hpp"
#include "dss/moments.hpp"
#include "dss/rng.hpp"
#include "dss/search.hpp"
#include "dss/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct RunConfig {
  unsigned n = 0;
  int k = 1;
  int p = 1;
  double moment_p = 1.0;
  int k_min = 1;
  int k_max = 30;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = dss::kDefaultSeed;
  std::uint64_t budget = 0;  // 0: module default
  unsigned threads = 1;
  std::string mode = "exact";
  std::string format;
  std::string out;
  std::string path;
};

std::string rational_token(const dss::Rational& q) {
  std::ostringstream os;
  os << numerator(q) << "/" << denominator(q);
  return os.str();
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json("undefined");
}

std::string text_number(const std::optional<double>& v) {
  return v ? dss::format_sig9(*v) : "undefined";
}

dss::VectorSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sequence file '" + path + "'");
  return dss::read_sequence(in);
}

dss::VectorSequence sub_sequence(const dss::VectorSequence& s, const std::vector<std::size_t>& idx) {
  dss::VectorSequence out;
  out.k = s.k;
  out.bound = s.bound;
  for (auto i : idx) out.vectors.push_back(s.vectors[i]);
  return out;
}

// Each command renders into a string; main writes it to --out or stdout.
struct Rendered {
  std::string body;
  int code = kExitOk;
};

Rendered cmd_bounds(const RunConfig& c) {
  std::vector<dss::BoundReport> rows;
  for (auto m : dss::kAllMethods) rows.push_back(dss::lower_bound_m(c.n, c.k, m));
  std::ostringstream os;
  if (c.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows)
      j.push_back({{"method", dss::to_token(r.method)},
                   {"n", c.n},
                   {"k", r.k},
                   {"coefficient", r.coefficient},
                   {"asymptotic_bound", optional_number(r.asymptotic_bound)},
                   {"finite_bound", optional_number(r.finite_bound)}});
    os << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    os << "method,n,k,coefficient,asymptotic_bound,finite_bound\n";
    for (const auto& r : rows)
      os << dss::to_token(r.method) << "," << c.n << "," << r.k << "," << dss::format_sig9(r.coefficient) << ","
         << text_number(r.asymptotic_bound) << "," << text_number(r.finite_bound) << "\n";
  } else {
    for (const auto& r : rows)
      os << dss::to_token(r.method) << " coefficient " << dss::format_sig9(r.coefficient) << " asymptotic "
         << text_number(r.asymptotic_bound) << " finite " << text_number(r.finite_bound) << "\n";
  }
  return {os.str()};
}

Rendered cmd_crossover(const RunConfig& c) {
  const auto rows = dss::crossover_table(c.k_min, c.k_max);
  std::ostringstream os;
  if (c.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
      const auto stated = dss::stated_regime(r.k);
      j.push_back({{"k", r.k},
                   {"c_first", r.c_first},
                   {"c_third", r.c_third},
                   {"c_variance", r.c_variance},
                   {"argmax", dss::to_token(r.argmax)},
                   {"stated", dss::to_token(stated)},
                   {"agrees", stated == r.argmax}});
    }
    os << j.dump(2) << "\n";
  } else {
    os << dss::crossover_csv(rows);
  }
  // the CSV keeps its fixed schema; regime disagreements go to stderr
  for (const auto& r : rows)
    if (dss::stated_regime(r.k) != r.argmax)
      std::cerr << "note: k=" << r.k << " argmax " << dss::to_token(r.argmax) << " differs from stated regime "
                << dss::to_token(dss::stated_regime(r.k)) << "\n";
  return {os.str()};
}

Rendered cmd_lattice_check(const RunConfig& c) {
  const auto s = dss::lattice_shell_enumerate(c.n, c.k, c.p, c.budget ? c.budget : dss::kDefaultLatticeBudget);
  std::ostringstream os;
  if (c.format == "text") {
    os << "n " << s.n << " k " << s.k << " p " << s.p << "\n"
       << "discrete_sum " << s.discrete_sum << "\n"
       << "boundary_norm " << s.boundary_norm << "\n"
       << "r_discrete " << dss::format_sig9(s.r_discrete) << "\n"
       << "r_continuous " << dss::format_sig9(s.r_continuous) << "\n"
       << "lemma_ratio " << text_number(s.lemma_ratio) << "\n";
  } else {
    ordered_json j{{"n", s.n},
                   {"k", s.k},
                   {"p", s.p},
                   {"discrete_sum", s.discrete_sum.str()},
                   {"boundary_norm", s.boundary_norm},
                   {"r_discrete", s.r_discrete},
                   {"r_continuous", s.r_continuous},
                   {"lemma_ratio", optional_number(s.lemma_ratio)},
                   {"candidates", s.candidates}};
    os << j.dump(2) << "\n";
  }
  return {os.str()};
}

Rendered cmd_verify(const RunConfig& c) {
  const auto s = load_sequence(c.path);
  const auto r = dss::verify_distinct(s);
  std::ostringstream os;
  if (r.distinct) {
    os << "distinct\n";
    return {os.str(), kExitOk};
  }
  os << "collision\n";
  dss::write_sequence(os, sub_sequence(s, r.collision->first));
  os << "equals\n";
  dss::write_sequence(os, sub_sequence(s, r.collision->second));
  return {os.str(), kExitRefuted};
}

dss::SearchOptions search_options(const RunConfig& c) {
  dss::SearchOptions o;
  if (c.budget) o.node_budget = c.budget;
  o.threads = c.threads;
  return o;
}

Rendered cmd_search(const RunConfig& c) {
  const auto r = dss::min_m_search(c.n, c.k, search_options(c));
  std::ostringstream os;
  if (c.format == "json") {
    ordered_json j{{"n", r.n},
                   {"k", r.k},
                   {"m_min", r.m_min},
                   {"exhaustive", r.exhaustive},
                   {"lower_bound", r.lower_bound},
                   {"nodes", r.nodes},
                   {"witness", r.witness.vectors}};
    os << j.dump(2) << "\n";
  } else {
    os << "M_min " << r.m_min << "\n"
       << "exhaustive " << (r.exhaustive ? "true" : "false") << "\n"
       << "lower_bound " << r.lower_bound << "\n"
       << "nodes " << r.nodes << "\n";
    dss::write_sequence(os, r.witness);
  }
  return {os.str()};
}

Rendered cmd_moments(const RunConfig& c) {
  const auto s = load_sequence(c.path);
  dss::MomentValue m;
  if (c.mode == "exact") {
    if (c.moment_p != std::floor(c.moment_p) || c.moment_p < 1 || c.moment_p > 3)
      throw std::invalid_argument("exact mode supports p in {1, 2, 3}");
    m = dss::exact_moment(s, static_cast<unsigned>(c.moment_p), c.budget ? c.budget : dss::kDefaultSupportBudget);
  } else {
    m = dss::mc_estimate(s, c.moment_p, c.samples, c.seed);
  }
  std::ostringstream os;
  if (c.format == "json") {
    ordered_json j{{"p", m.p}, {"provenance", dss::to_token(m.provenance)}};
    if (m.exact) j["exact"] = rational_token(*m.exact);
    j["value"] = m.value;
    if (m.provenance == dss::Provenance::monte_carlo) {
      j["std_error"] = optional_number(m.std_error);
      j["samples"] = m.samples;
      j["seed"] = c.seed;
    }
    os << j.dump(2) << "\n";
  } else {
    if (m.exact) os << "exact " << rational_token(*m.exact) << "\n";
    os << "value " << dss::format_sig9(m.value) << "\n";
    if (m.provenance == dss::Provenance::monte_carlo)
      os << "std_error " << text_number(m.std_error) << "\n"
         << "samples " << m.samples << "\n"
         << "seed " << c.seed << "\n";
    os << "provenance " << dss::to_token(m.provenance) << "\n";
  }
  return {os.str()};
}

Rendered cmd_report(const RunConfig& c) {
  const auto r = dss::bound_vs_search_report(c.n, c.k, search_options(c));
  std::ostringstream os;
  if (c.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"method", dss::to_token(row.method)},
                      {"asymptotic_bound", row.asymptotic_bound},
                      {"finite_bound", optional_number(row.finite_bound)},
                      {"finite_violation", row.finite_violation},
                      {"asymptotic_exceeds", row.asymptotic_exceeds}});
    ordered_json j{{"n", c.n},
                   {"k", c.k},
                   {"m_min", r.search.m_min},
                   {"exhaustive", r.search.exhaustive},
                   {"baseline_m", r.baseline_m},
                   {"rows", rows}};
    os << j.dump(2) << "\n";
  } else {
    os << "method,asymptotic_bound,finite_bound,m_min,baseline_m,exhaustive,finite_violation\n";
    for (const auto& row : r.rows)
      os << dss::to_token(row.method) << "," << dss::format_sig9(row.asymptotic_bound) << ","
         << text_number(row.finite_bound) << "," << row.m_min << "," << row.baseline_m << ","
         << (r.search.exhaustive ? "true" : "false") << "," << (row.finite_violation ? "true" : "false") << "\n";
  }
  return {os.str(), r.has_violation() ? kExitRefuted : kExitOk};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distinct subset sum lab: bounds, lattice checks, search and moments"};
  app.require_subcommand(1);
  RunConfig c;

  const auto add_nk = [&](CLI::App* sub) {
    sub->add_option("--n", c.n, "sequence length")->required();
    sub->add_option("--k", c.k, "dimension")->required();
  };

  auto* bounds = app.add_subcommand("bounds", "lower bounds on M for all three methods");
  add_nk(bounds);

  auto* crossover = app.add_subcommand("crossover", "coefficient table over a range of k");
  crossover->add_option("--k-min", c.k_min, "first k")->required();
  crossover->add_option("--k-max", c.k_max, "last k")->required();

  auto* lattice = app.add_subcommand("lattice-check", "closest-point shell sum against the continuous integral");
  add_nk(lattice);
  lattice->add_option("--p", c.p, "norm exponent")->required();
  lattice->add_option("--budget", c.budget, "maximum box points");

  auto* verify = app.add_subcommand("verify", "check that all subset sums of a sequence file are distinct");
  verify->add_option("path", c.path, "sequence file")->required();

  auto* search = app.add_subcommand("search", "exhaustive search for the smallest M");
  add_nk(search);
  search->add_option("--budget", c.budget, "maximum search nodes");
  search->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));

  auto* moments = app.add_subcommand("moments", "E||X||_p^p for a sequence file");
  moments->add_option("path", c.path, "sequence file")->required();
  moments->add_option("--p", c.moment_p, "moment order")->required();
  moments->add_option("--mode", c.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  moments->add_option("--samples", c.samples, "Monte Carlo samples");
  moments->add_option("--seed", c.seed, "Monte Carlo seed");
  moments->add_option("--budget", c.budget, "maximum signed-sum support width");

  auto* report = app.add_subcommand("report", "compare every lower bound with the searched minimum");
  add_nk(report);
  report->add_option("--budget", c.budget, "maximum search nodes");
  report->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));

  // default formats differ per command; CLI11 only overwrites on explicit flags
  for (auto [sub, fmt] : {std::pair{bounds, "text"}, std::pair{crossover, "csv"}, std::pair{lattice, "json"},
                          std::pair{verify, "text"}, std::pair{search, "text"}, std::pair{moments, "text"},
                          std::pair{report, "csv"}}) {
    sub->add_option("--out", c.out, "write output to PATH instead of stdout");
    sub->add_option("--format", c.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->preparse_callback([&c, fmt](std::size_t) { c.format = fmt; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Rendered r;
    if (*bounds) r = cmd_bounds(c);
    else if (*crossover) r = cmd_crossover(c);
    else if (*lattice) r = cmd_lattice_check(c);
    else if (*verify) r = cmd_verify(c);
    else if (*search) r = cmd_search(c);
    else if (*moments) r = cmd_moments(c);
    else r = cmd_report(c);

    if (c.out.empty()) {
      std::cout << r.body;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f || !(f << r.body)) {
        std::cerr << "error: cannot write '" << c.out << "'\n";
        return kExitUsage;
      }
    }
    return r.code;
  } catch (const dss::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}
