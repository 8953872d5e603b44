// inducibility command-line front end.
//
// Exit codes: 0 success, 1 a computation cap was hit, 2 usage or parse
// error, 3 a verification command found a failing check.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <inducibility/inducibility.hpp>

namespace ind = inducibility;
using json = nlohmann::ordered_json;

namespace {

enum class Format { plain, csv, json };

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Table cells are json values so that the JSON form keeps numbers typed.
json real(double x) { return json(std::stod(fmt_double(x))); }

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt_double(v.get<double>());
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Output {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::optional<std::string> scalar;  // plain form for single-value commands
  std::optional<std::string> meta;    // "# ..." header line for seeded commands

  void print(Format f, std::ostream& os) const {
    if (f == Format::json) {
      json arr = json::array();
      for (const auto& r : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = r[i];
        arr.push_back(std::move(obj));
      }
      os << arr.dump(2) << "\n";
      return;
    }
    if (meta) os << "# " << *meta << "\n";
    if (f == Format::plain && scalar) {
      os << *scalar << "\n";
      return;
    }
    if (f == Format::csv) {
      for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
      os << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(r[i]));
        os << "\n";
      }
      return;
    }
    // plain table: left-aligned columns
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], cell_text(r[i]).size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        s += cells[i];
        if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      os << s << "\n";
    };
    line(columns);
    for (const auto& r : rows) {
      std::vector<std::string> cells;
      for (const auto& c : r) cells.push_back(cell_text(c));
      line(cells);
    }
  }
};

std::string rng_meta(std::uint64_t seed) {
  return "rng=" + std::string(ind::kRngAlgorithm) + " seed=" + std::to_string(seed);
}

std::string join_shapes(const std::vector<ind::Shape>& shapes) {
  std::string s;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (i) s += ';';
    s += ind::format_shape(shapes[i]);
  }
  return s;
}

struct Options {
  std::string format = "plain";
  std::size_t exact_limit = 0;  // 0: per-command default
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  std::size_t limit_or(std::size_t fallback) const { return exact_limit ? exact_limit : fallback; }
  std::uint64_t seed_value() {
    if (!seed) seed = ind::fresh_seed();
    return *seed;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Induced subtree counts, inducibility and tanglegram crossing bounds"};
  app.require_subcommand(1);
  Options opt;
  Output out;

  auto common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--format", opt.format, "plain, csv or json")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    sub->add_option("--exact-limit", opt.exact_limit,
                    "raise the size cap of exhaustive computations");
    if (seeded) {
      sub->add_option("--seed", opt.seed, "64-bit seed (fresh and printed when omitted)");
      sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
      sub->add_flag("--quiet", opt.quiet, "no progress on stderr");
    }
  };

  // shapes
  std::size_t n = 0;
  bool count_only = false;
  auto* shapes = app.add_subcommand("shapes", "list shapes with n leaves");
  shapes->add_option("--n", n, "number of leaves")->required()->check(CLI::PositiveNumber);
  shapes->add_flag("--count", count_only, "print only how many there are");
  common(shapes, false);
  shapes->callback([&] {
    const auto all = ind::enumerate_shapes(n, opt.limit_or(ind::kDefaultEnumerationLimit));
    if (count_only) {
      out.columns = {"n", "count"};
      out.rows.push_back({n, all.size()});
      out.scalar = std::to_string(all.size());
      return;
    }
    out.columns = {"encoding", "automorphism_order", "height"};
    for (auto s : all)
      out.rows.push_back({ind::format_shape(s), ind::automorphism_order(s).get_str(), ind::height(s)});
  });

  // count / gamma
  std::string pattern_text, host_text;
  bool bruteforce = false;
  std::uint64_t budget = ind::kDefaultOracleBudget;
  auto* count = app.add_subcommand("count", "c(B,T): leaf subsets of T inducing B");
  count->add_option("--pattern", pattern_text, "pattern tree B")->required();
  count->add_option("--host", host_text, "host tree T")->required();
  count->add_flag("--bruteforce", bruteforce, "enumerate leaf subsets instead of the recursion");
  count->add_option("--oracle-budget", budget, "maximum number of subsets for --bruteforce");
  common(count, false);
  count->callback([&] {
    const ind::Shape b = ind::parse_shape(pattern_text);
    ind::BigInt c = bruteforce ? ind::count_induced_bruteforce(b, ind::parse_plane_tree(host_text), budget)
                               : ind::count_induced(b, ind::parse_shape(host_text));
    out.columns = {"pattern", "host", "count"};
    out.rows.push_back({pattern_text, host_text, c.get_str()});
    out.scalar = c.get_str();
  });

  auto* gamma = app.add_subcommand("gamma", "gamma(B,T) = c(B,T) / C(|T|,|B|)");
  gamma->add_option("--pattern", pattern_text, "pattern tree B")->required();
  gamma->add_option("--host", host_text, "host tree T")->required();
  common(gamma, false);
  gamma->callback([&] {
    const ind::BigRational g = ind::gamma(ind::parse_shape(pattern_text), ind::parse_shape(host_text));
    out.columns = {"pattern", "host", "gamma_num", "gamma_den"};
    out.rows.push_back({pattern_text, host_text, g.numerator().get_str(), g.denominator().get_str()});
    out.scalar = g.str();
  });

  // closed forms
  std::size_t k = 0;
  auto* even_ind = app.add_subcommand("even-inducibility", "i(E_k) = k! c_k");
  even_ind->add_option("--k", k, "leaves of the even tree")->required()->check(CLI::PositiveNumber);
  common(even_ind, false);
  even_ind->callback([&] {
    const auto v = ind::even_inducibility(k);
    out.columns = {"k", "value_num", "value_den"};
    out.rows.push_back({k, v.numerator().get_str(), v.denominator().get_str()});
    out.scalar = v.str();
  });

  auto* cater = app.add_subcommand("cater-liminf", "liminf of gamma(C_k, CB_h) as h grows");
  cater->add_option("--k", k, "leaves of the caterpillar (>= 2)")->required();
  common(cater, false);
  cater->callback([&] {
    const auto v = ind::caterpillar_liminf(k);
    out.columns = {"k", "value_num", "value_den"};
    out.rows.push_back({k, v.numerator().get_str(), v.denominator().get_str()});
    out.scalar = v.str();
  });

  double grid_step = 1e-3, tolerance = 1e-12;
  auto* lemma = app.add_subcommand("lemma-check", "grid check of the split-ratio extremum lemmas");
  lemma->add_option("--k", k, "check every k from 1 up to this value")->required()->check(CLI::PositiveNumber);
  lemma->add_option("--grid-step", grid_step, "grid spacing in (0, 1/2)");
  lemma->add_option("--tolerance", tolerance, "allowed numerical slack");
  common(lemma, false);
  bool lemma_ok = true;
  lemma->callback([&] {
    out.columns = {"k",      "function", "kind",   "bound",     "exact_at_half",
                   "grid_extremum", "grid_argext", "margin", "passed"};
    for (unsigned kk = 1; kk <= k; ++kk) {
      const auto rep = ind::verify_lemma_functions(kk, grid_step, tolerance);
      for (const auto& c : rep.checks) {
        out.rows.push_back({kk, c.function, c.is_maximum ? "max" : "min", c.bound.str(),
                            c.exact_at_half.str(), real(c.grid_extremum), real(c.grid_argext),
                            real(c.margin), c.passed});
        lemma_ok = lemma_ok && c.passed;
      }
    }
  });

  // extremal
  std::string method = "auto";
  ind::SearchConfig search;
  auto* maxg = app.add_subcommand("max-gamma", "maximize gamma(B, .) over hosts with n leaves");
  maxg->add_option("--pattern", pattern_text, "pattern tree B")->required();
  maxg->add_option("--n", n, "host size")->required()->check(CLI::PositiveNumber);
  maxg->add_option("--method", method, "exact, heuristic, or auto (exact up to --exact-limit)")
      ->check(CLI::IsMember({"auto", "exact", "heuristic"}));
  maxg->add_option("--beam", search.beam_width, "beam width")->check(CLI::PositiveNumber);
  maxg->add_option("--restarts", search.restarts, "local search restarts")->check(CLI::PositiveNumber);
  maxg->add_option("--moves", search.local_moves, "moves per restart")->check(CLI::PositiveNumber);
  common(maxg, true);
  maxg->callback([&] {
    const ind::Shape b = ind::parse_shape(pattern_text);
    search.exact_limit = opt.limit_or(ind::kDefaultEnumerationLimit);
    search.jobs = opt.jobs;
    const bool exact = method == "exact" || (method == "auto" && n <= search.exact_limit);
    if (!exact) search.seed = opt.seed_value();
    if (!exact && !opt.quiet) std::cerr << "searching hosts with " << n << " leaves...\n";
    const auto rep = exact ? ind::max_gamma_exact(b, n, search) : ind::max_gamma_search(b, n, search);
    out.columns = {"pattern", "n", "method", "best_value_num", "best_value_den", "argmax_encodings", "seed"};
    out.rows.push_back({ind::format_shape(b), n, std::string(ind::to_string(rep.method)),
                        rep.best_value.numerator().get_str(), rep.best_value.denominator().get_str(),
                        join_shapes(rep.argmax), exact ? json("") : json(rep.seed)});
    if (!exact) out.meta = rng_meta(rep.seed);
    std::ostringstream s;
    s << "pattern: " << ind::format_shape(b) << "\nn: " << n << "\nmethod: " << ind::to_string(rep.method)
      << "\nbest_value: " << rep.best_value << "\nargmax: " << join_shapes(rep.argmax);
    if (rep.gap_to_limit) s << "\ngap_to_limit: " << *rep.gap_to_limit;
    out.scalar = s.str();
  });

  std::size_t n_max = 12;
  auto* conj = app.add_subcommand("conjectures", "even-tree maximizer and gap table for E_k");
  conj->add_option("--k", k, "leaves of the even pattern")->required()->check(CLI::PositiveNumber);
  conj->add_option("--n-max", n_max, "largest host size");
  common(conj, false);
  conj->callback([&] {
    search.exact_limit = opt.limit_or(ind::kDefaultEnumerationLimit);
    out.columns = {"n", "max_count", "even_count", "even_is_maximizer", "max_gamma", "limit", "gap", "n_gap"};
    for (const auto& r : ind::conjecture_report(k, n_max, search))
      out.rows.push_back({r.n, r.max_count.get_str(), r.even_count.get_str(), r.even_is_maximizer,
                          r.max_gamma.str(), r.limit.str(), r.gap.str(), r.n_gap.str()});
  });

  // tanglegrams
  std::string tangle_text;
  auto* crt = app.add_subcommand("tangle-crt", "exact tangle crossing number");
  crt->add_option("--tanglegram", tangle_text, "<left>|<right>|<sigma>")->required();
  crt->add_flag("--bruteforce", bruteforce, "try every layout instead of the per-vertex search");
  common(crt, false);
  crt->callback([&] {
    const auto t = ind::Tanglegram::parse(tangle_text);
    std::uint64_t value;
    std::string witness;
    if (bruteforce) {
      value = ind::tangle_crossing_bruteforce(t, opt.limit_or(ind::kCrossingBruteforceLimit));
    } else {
      const auto r = ind::tangle_crossing_exact(t, opt.limit_or(ind::kCrossingExactLimit));
      value = r.crossings;
      witness = t.apply(r.flips).to_string();
    }
    out.columns = {"tanglegram", "layout_crossings", "crt", "optimal_layout"};
    out.rows.push_back({tangle_text, ind::layout_crossings(t), value, witness});
    out.scalar = std::to_string(value);
  });

  auto* bound = app.add_subcommand("tangle-bound", "No. 6 lower bound on the tangle crossing number");
  bound->add_option("--tanglegram", tangle_text, "<left>|<right>|<sigma>")->required();
  common(bound, false);
  bound->callback([&] {
    const auto t = ind::Tanglegram::parse(tangle_text);
    const std::size_t lim = opt.limit_or(ind::kNo6Limit);
    const auto copies = ind::no6_count(t, lim);
    const auto b = ind::no6_lower_bound(t, lim);
    out.columns = {"tanglegram", "no6_copies", "bound_num", "bound_den"};
    out.rows.push_back({tangle_text, copies, b.numerator().get_str(), b.denominator().get_str()});
    out.scalar = b.str();
  });

  auto* tenum = app.add_subcommand("tangle-enumerate", "all tanglegrams of size n up to flips");
  tenum->add_option("--n", n, "number of leaves")->required()->check(CLI::PositiveNumber);
  bool count_classes = false;
  tenum->add_flag("--count", count_classes, "print only the number of classes");
  common(tenum, false);
  tenum->callback([&] {
    const auto all = ind::enumerate_tanglegrams(n, opt.limit_or(ind::kTanglegramEnumerationLimit));
    if (count_classes) {
      out.columns = {"n", "count"};
      out.rows.push_back({n, all.size()});
      out.scalar = std::to_string(all.size());
      return;
    }
    out.columns = {"index", "canonical", "pair_type", "crt", "automorphism_order", "is_no6", "is_no13"};
    std::size_t idx = 1;
    for (const auto& t : all) {
      const auto crossings = ind::tangle_crossing_exact(t).crossings;
      std::string type = ind::format_shape(t.left().shape()) + " / " + ind::format_shape(t.right().shape());
      bool no6 = false, no13 = false;
      if (n == 4) {
        const auto c = ind::classify_size4(t);
        type = c.pair_type;
        no6 = c.is_no6;
        no13 = c.is_no13;
      }
      out.rows.push_back({idx++, t.to_string(), type, crossings, ind::tanglegram_automorphism_order(t), no6, no13});
    }
  });

  ind::ExperimentConfig exp;
  std::string weighting = "layout";
  auto* texp = app.add_subcommand("tangle-experiment", "Monte Carlo No. 6 bound on random layouts");
  texp->add_option("--n", exp.n, "number of leaves (>= 4)")->required();
  texp->add_option("--trials", exp.trials, "number of random layouts")->required()->check(CLI::PositiveNumber);
  texp->add_option("--theta", exp.theta, "threshold factor: report the fraction with X >= theta n^2");
  texp->add_option("--weighting", weighting, "layout, or automorphism (reweight by |A(T)|, n <= 12)")
      ->check(CLI::IsMember({"layout", "automorphism"}));
  common(texp, true);
  texp->callback([&] {
    if (opt.format == "plain") opt.format = "csv";
    exp.seed = opt.seed_value();
    exp.jobs = opt.jobs;
    exp.limit = opt.limit_or(ind::kNo6Limit);
    exp.weighting = weighting == "layout" ? ind::Weighting::layout : ind::Weighting::automorphism;
    if (!opt.quiet) {
      exp.progress = [](std::size_t done, std::size_t total) {
        if (done == total || done % std::max<std::size_t>(1, total / 10) == 0)
          std::cerr << "trials " << done << "/" << total << "\n";
      };
    }
    const auto r = ind::expectation_experiment(exp);
    out.meta = rng_meta(r.seed);
    out.columns = {"n", "trials", "seed", "mean_bound", "var_bound", "q10", "q50", "q90", "frac_ge_theta", "theta"};
    out.rows.push_back({r.n, r.trials, r.seed, real(r.mean_bound), real(r.var_bound), real(r.q10),
                        real(r.q50), real(r.q90), real(r.frac_ge_theta), real(r.theta)});
    if (r.weighted_mean) {
      out.columns.push_back("weighted_mean_bound");
      out.rows.back().push_back(real(*r.weighted_mean));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ind::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ind::LimitExceeded& e) {
    std::cerr << "limit error: " << e.what();
    if (e.limit().find("alias") != std::string::npos)
      std::cerr << " (alias sizes are fixed; write the tree out instead)\n";
    else if (e.limit().find("oracle") != std::string::npos)
      std::cerr << " (raise it with --oracle-budget " << e.requested() << ")\n";
    else if (e.limit().find("automorphism weighting") != std::string::npos)
      std::cerr << " (fixed cap; use --weighting layout)\n";
    else
      std::cerr << " (raise it with --exact-limit " << e.requested() << ")\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const Format f = opt.format == "csv" ? Format::csv : opt.format == "json" ? Format::json : Format::plain;
  out.print(f, std::cout);
  if (!lemma_ok) return 3;
  return 0;
}
