#include "cfs/analysis.hpp"
#include "cfs/cache.hpp"
#include "cfs/errors.hpp"
#include "cfs/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cfs;

struct Cli {
  RunConfig cfg;
  std::string out_path;  // empty: stdout
  bool diagnostics = false;
};

Resolution resolution_of(const RunConfig& cfg) {
  Resolution res;
  res.window = cfg.window;
  res.r_max = cfg.r_max;
  res.state_budget = cfg.state_budget;
  res.threads = cfg.threads;
  return res;
}

std::vector<int> parse_alphabet(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw CLI::ValidationError("--alphabet", "empty alphabet");
  return out;
}

std::vector<Rational> parse_grid(const std::string& s) {
  // "a:b:step"
  auto c1 = s.find(':');
  auto c2 = s.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw CLI::ValidationError("--grid", "expected a:b:step");
  Rational a = parse_rational(s.substr(0, c1));
  Rational b = parse_rational(s.substr(c1 + 1, c2 - c1 - 1));
  Rational step = parse_rational(s.substr(c2 + 1));
  if (step <= 0 || b < a) throw CLI::ValidationError("--grid", "bad range");
  std::vector<Rational> grid;
  for (Rational t = a; t <= b; t += step) grid.push_back(t);
  return grid;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void emit(const Cli& cli, const std::string& text) {
  if (cli.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cli.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cli.out_path);
  out << text;
}

// Canonical parameter echo for the content-addressed cache.
std::string cache_params(const RunConfig& cfg, const std::string& extra) {
  std::ostringstream os;
  os << "N=" << cfg.alphabet << ";window=" << cfg.window << ";rmax=" << cfg.r_max
     << ";tol=" << cfg.tol << ";budget=" << cfg.state_budget
     << ";output=" << cfg.output << ";" << extra;
  return os.str();
}

// Runs compute through the cache when enabled. Thread count is excluded from
// the key: outputs are deterministic across thread counts by contract.
std::string cached(const Cli& cli, const std::string& op, const std::string& extra,
                   const std::function<std::string()>& compute) {
  if (cli.cfg.cache_dir.empty()) return compute();
  FileCache cache(cli.cfg.cache_dir);
  return cache.get_or_compute(op, cache_params(cli.cfg, extra), compute);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov/Lagrange sublevel dynamics over bounded continued fractions"};
  app.require_subcommand(1);

  Cli cli;
  if (const char* env = std::getenv("CFSPECTRA_CACHE_DIR")) cli.cfg.cache_dir = env;
  app.add_option("--N", cli.cfg.alphabet, "alphabet bound")->capture_default_str();
  app.add_option("--window", cli.cfg.window, "window half-width")->capture_default_str();
  app.add_option("--rmax", cli.cfg.r_max, "covering scale bound")->capture_default_str();
  app.add_option("--tol", cli.cfg.tol, "enclosure tolerance (rational)")
      ->capture_default_str();
  app.add_option("--threads", cli.cfg.threads, "worker pool size")->capture_default_str();
  app.add_option("--cache-dir", cli.cfg.cache_dir,
                 "cache directory (env CFSPECTRA_CACHE_DIR)");
  app.add_option("--output", cli.cfg.output, "json|csv")->capture_default_str();
  app.add_option("--budget", cli.cfg.state_budget, "state budget")->capture_default_str();
  app.add_option("--out", cli.out_path, "write to file instead of stdout");
  app.add_flag("--diagnostics", cli.diagnostics, "emit count tables / traces");

  // dim
  std::string dim_alphabet = "1,2";
  std::string dim_method = "both";
  auto* dim = app.add_subcommand("dim", "dimension of a Gauss-Cantor set K(B)");
  dim->add_option("--alphabet", dim_alphabet, "comma list, e.g. 1,2");
  dim->add_option("--method", dim_method, "boxcount|pressure|both");

  // prune
  std::string prune_t;
  std::string prune_mode = "outer";
  bool prune_decompose = false;
  auto* prune = app.add_subcommand("prune", "sublevel-pruned subshift automaton");
  prune->add_option("--t", prune_t, "threshold t")->required();
  prune->add_option("--mode", prune_mode, "outer|inner");
  prune->add_flag("--decompose", prune_decompose,
                  "emit the component decomposition instead of the automaton");

  // dcurve
  std::string dcurve_grid;
  auto* dcurve = app.add_subcommand("dcurve", "D(t) over a grid");
  dcurve->add_option("--grid", dcurve_grid, "a:b:step")->required();

  // eta-minus
  double eta = 0.5;
  std::string eta_tol = "1/32";
  auto* etam = app.add_subcommand("eta-minus", "monotone bisection for eta^-");
  etam->add_option("--eta", eta, "target dimension value")->required();
  etam->add_option("--tol-t", eta_tol, "bracket width");

  // connect
  std::string conn_t, conn_eps = "1/10";
  auto* conn = app.add_subcommand("connect", "connection of subhorseshoe pairs");
  conn->add_option("--t", conn_t, "threshold t")->required();
  conn->add_option("--eps", conn_eps, "epsilon");

  // family
  double fam_eta = 0.4;
  std::string fam_eps = "1/2", fam_shrink = "1/2";
  int fam_stages = 2;
  auto* fam = app.add_subcommand("family", "increasing subhorseshoe family");
  fam->add_option("--eta", fam_eta, "target dimension");
  fam->add_option("--eps", fam_eps, "initial offset below eta^-");
  fam->add_option("--stages", fam_stages, "number of stages");
  fam->add_option("--shrink", fam_shrink, "ladder shrink factor in (0,1)");

  // theta-demo
  double th_eta = 0.5;
  std::string th_eps = "0.45", th_shrink = "1/2", th_gaps = "4,8,16";
  int th_stages = 2, th_spikes = 2;
  auto* theta = app.add_subcommand("theta-demo", "concatenated word construction");
  theta->add_option("--eta", th_eta, "target dimension");
  theta->add_option("--eps", th_eps, "family offset");
  theta->add_option("--shrink", th_shrink, "family ladder shrink");
  theta->add_option("--stages", th_stages, "family stages");
  theta->add_option("--spikes", th_spikes, "spike blocks in the word");
  theta->add_option("--gaps", th_gaps, "gap schedule, comma list");

  // markov-triples
  size_t mt_count = 9;
  bool mt_crosscheck = false;
  size_t mt_maxlen = 8;
  auto* mt = app.add_subcommand("markov-triples", "Markov tree and spectrum points");
  mt->add_option("--count", mt_count, "triples to enumerate");
  mt->add_flag("--crosscheck", mt_crosscheck, "match against periodic witnesses");
  mt->add_option("--max-period", mt_maxlen, "witness period bound");

  // sumset
  std::string ss_a1 = "1,2", ss_a2 = "1,2";
  int ss_depth = 12;
  auto* ss = app.add_subcommand("sumset", "box dimension of K(B1)+K(B2)");
  ss->add_option("--alphabet", ss_a1, "first alphabet");
  ss->add_option("--alphabet2", ss_a2, "second alphabet");
  ss->add_option("--depth", ss_depth, "cylinder depth");

  // classify
  std::string cl_t, cl_grid = "1/2,1/4,1/8";
  auto* cl = app.add_subcommand("classify", "J / F / Jtilde screen at t");
  cl->add_option("--t", cl_t, "spectrum point t")->required();
  cl->add_option("--eps-grid", cl_grid, "decreasing eps list");

    // global options may follow the subcommand name
  for (auto* sub : {dim, prune, dcurve, etam, conn, fam, theta, mt, ss, cl})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage errors exit 1; --help exits 0
  }

  try {
    cli.cfg.validate();
    Resolution res = resolution_of(cli.cfg);
    bool csv = cli.cfg.output == "csv";

    if (*dim) {
      auto alphabet = parse_alphabet(dim_alphabet);
      std::string extra = "op=dim;alphabet=" + dim_alphabet + ";method=" + dim_method +
                          ";diag=" + std::to_string(cli.diagnostics);
      std::string text = cached(cli, "dim", extra, [&] {
        std::ostringstream os;
        bool box = dim_method == "boxcount" || dim_method == "both";
        bool press = dim_method == "pressure" || dim_method == "both";
        if (!box && !press)
          throw std::invalid_argument("method must be boxcount, pressure or both");
        if (csv) os << "method,lo,hi\n";
        if (box) {
          auto est = boxdim_estimate(alphabet, cli.cfg.r_max, res.count_budget);
          if (csv)
            os << "boxcount," << format_double(est.lo) << ","
               << format_double(est.hi) << "\n";
          else
            os << dimension_to_json(est, cli.diagnostics);
          if (csv && cli.diagnostics) os << count_table_csv(est);
        }
        if (press) {
          BuildOptions opts{cli.cfg.state_budget, cli.cfg.threads};
          SubshiftAutomaton a = alphabet_subshift(alphabet, cli.cfg.window, opts);
          std::vector<uint32_t> all(a.size());
          for (uint32_t i = 0; i < a.size(); ++i) all[i] = i;
          auto est = pressure_dim(cylinder_weight_automaton(a, all), 1e-6);
          if (csv)
            os << "pressure," << format_double(est.lo) << ","
               << format_double(est.hi) << "\n";
          else
            os << dimension_to_json(est, cli.diagnostics);
          if (csv && cli.diagnostics) os << bisection_trace_csv(est);
        }
        return os.str();
      });
      emit(cli, text);
      return 0;
    }

    if (*prune) {
      std::string extra = "op=prune;t=" + prune_t + ";mode=" + prune_mode +
                          ";decompose=" + std::to_string(prune_decompose);
      std::string text = cached(cli, "prune", extra, [&] {
        ShiftLab lab(cli.cfg.alphabet, res);
        PruneMode mode = prune_mode == "inner" ? PruneMode::inner : PruneMode::outer;
        if (prune_mode != "inner" && prune_mode != "outer")
          throw std::invalid_argument("mode must be outer or inner");
        const auto& a = lab.pruned(parse_rational(prune_t), mode);
        if (prune_decompose) return decomposition_to_json(a, scc_decompose(a));
        return automaton_to_json(a);
      });
      emit(cli, text);
      return 0;
    }

    if (*dcurve) {
      std::string extra = "op=dcurve;grid=" + dcurve_grid;
      std::string text = cached(cli, "dcurve", extra, [&] {
        ShiftLab lab(cli.cfg.alphabet, res);
        auto pts = lab.d_curve(parse_grid(dcurve_grid));
        return csv ? dcurve_csv(pts) : dcurve_json(pts);
      });
      emit(cli, text);
      return 0;
    }

    if (*etam) {
      std::string extra = "op=eta-minus;eta=" + format_double(eta) + ";tol=" + eta_tol;
      std::string text = cached(cli, "eta-minus", extra, [&] {
        ShiftLab lab(cli.cfg.alphabet, res);
        auto r = lab.eta_minus(eta, parse_rational(eta_tol));
        return eta_minus_json(eta, r);
      });
      emit(cli, text);
      return 0;
    }

    if (*conn) {
      std::string extra = "op=connect;t=" + conn_t + ";eps=" + conn_eps;
      std::string text = cached(cli, "connect", extra, [&] {
        ShiftLab lab(cli.cfg.alphabet, res);
        Rational t = parse_rational(conn_t), eps = parse_rational(conn_eps);
        const auto& a = lab.pruned(t, PruneMode::outer);
        ComponentDecomposition d = scc_decompose(a);
        std::vector<std::vector<Word>> comps;
        for (const auto& c : d.subhorseshoes) {
          std::vector<Word> ws;
          for (uint32_t s : c) ws.push_back(a.state_as_word(s));
          comps.push_back(std::move(ws));
        }
        std::vector<std::tuple<size_t, size_t, ShiftLab::Connect>> results;
        for (size_t i = 0; i < comps.size(); ++i)
          for (size_t j = i + 1; j < comps.size(); ++j)
            results.emplace_back(i, j, lab.connect_check(comps[i], comps[j], t, eps));
        return connect_json(comps, results, t, eps);
      });
      emit(cli, text);
      return 0;
    }

    if (*fam) {
      std::string extra = "op=family;eta=" + format_double(fam_eta) + ";eps=" + fam_eps +
                          ";stages=" + std::to_string(fam_stages) + ";shrink=" + fam_shrink;
      std::string text = cached(cli, "family", extra, [&] {
        ShiftLab lab(cli.cfg.alphabet, res);
        auto f = lab.increasing_family(fam_eta, parse_rational(fam_eps), fam_stages,
                                       parse_rational(fam_shrink));
        return family_json(f);
      });
      emit(cli, text);
      return 0;
    }

    if (*theta) {
      std::string extra = "op=theta;eta=" + format_double(th_eta) + ";eps=" + th_eps +
                          ";shrink=" + th_shrink + ";stages=" + std::to_string(th_stages) +
                          ";spikes=" + std::to_string(th_spikes) + ";gaps=" + th_gaps;
      std::string text = cached(cli, "theta-demo", extra, [&] {
        ShiftLab lab(cli.cfg.alphabet, res);
        auto f = lab.increasing_family(th_eta, parse_rational(th_eps), th_stages,
                                       parse_rational(th_shrink));
        if (f.stages.empty()) throw std::runtime_error("family construction failed");
        auto th = lab.theta_generate(f.stages.front().component, f, th_spikes,
                                     parse_int_list(th_gaps));
        return theta_json(th, th_spikes, parse_int_list(th_gaps));
      });
      emit(cli, text);
      return 0;
    }

    if (*mt) {
      std::string extra = "op=markov-triples;count=" + std::to_string(mt_count) +
                          ";crosscheck=" + std::to_string(mt_crosscheck) +
                          ";maxlen=" + std::to_string(mt_maxlen);
      std::string text = cached(cli, "markov-triples", extra, [&] {
        auto triples = markov_triples(mt_count);
        std::ostringstream os;
        os << (csv ? triples_csv(triples) : triples_json(triples));
        if (mt_crosscheck) {
          auto rep = low_spectrum_crosscheck(mt_count, mt_maxlen,
                                             parse_rational(cli.cfg.tol));
          os << (csv ? crosscheck_csv(rep) : crosscheck_json(rep));
        }
        return os.str();
      });
      emit(cli, text);
      return 0;
    }

    if (*ss) {
      std::string extra = "op=sumset;a1=" + ss_a1 + ";a2=" + ss_a2 +
                          ";depth=" + std::to_string(ss_depth) +
                          ";diag=" + std::to_string(cli.diagnostics);
      std::string text = cached(cli, "sumset", extra, [&] {
        auto est = sumset_boxdim(parse_alphabet(ss_a1), parse_alphabet(ss_a2), ss_depth);
        return dimension_to_json(est, cli.diagnostics);
      });
      emit(cli, text);
      return 0;
    }

    if (*cl) {
      std::string extra = "op=classify;t=" + cl_t + ";grid=" + cl_grid;
      std::string text = cached(cli, "classify", extra, [&] {
        ShiftLab lab(cli.cfg.alphabet, res);
        Rational t = parse_rational(cl_t);
        auto c = lab.classify_point(t, parse_rational_list(cl_grid));
        return classification_json(t, c);
      });
      emit(cli, text);
      return 0;
    }
  } catch (const budget_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
