#ifndef EISZETA_CLI_HPP
#define EISZETA_CLI_HPP

// Command-line front end. run() parses arguments, dispatches to the library
// and writes a JSON document (or CSV for zeros) to the given stream.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eiszeta/eisenstein.hpp"
#include "eiszeta/lattice.hpp"
#include "eiszeta/special_functions.hpp"
#include "eiszeta/verification.hpp"
#include "eiszeta/zero_finder.hpp"

namespace eiszeta::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kPole = 3,
  kAccuracy = 4,
  kBoundaryZero = 5,
  kSelfCheck = 6,
  kRank = 7,
  kScale = 8,
};

inline json complex_json(ComplexValue z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

/// "RE,IM" or "RE".
inline ComplexValue parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? text.size() : comma)) throw std::invalid_argument(text);
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string tail = text.substr(comma + 1);
      im = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    }
    return {re, im};
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected RE,IM but got '" + text + "'");
  }
}

inline std::vector<double> parse_list(const std::string& text, std::size_t expected) {
  std::vector<double> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("cannot parse number '" + item + "' in '" + text + "'");
    }
  }
  if (out.size() != expected) {
    throw CLI::ValidationError("expected " + std::to_string(expected) + " comma-separated numbers in '" + text + "'");
  }
  return out;
}

struct GlobalOptions {
  double rel_tol = 1e-12;
  std::size_t max_terms = 1'000'000;
  unsigned threads = 1;
  std::uint64_t seed = 20261015;
  std::string out_path;

  EvalOptions eval() const {
    EvalOptions o;
    o.rel_tol = rel_tol;
    o.max_terms = max_terms;
    o.threads = resolve_thread_count(threads);
    return o;
  }
};

namespace detail {

inline FamilyParam make_family(const std::string& name, double param, long long n) {
  if (name == "I") return Truncation{param};
  if (name == "a0") return ConstantTerm{param};
  if (name == "an") return Fourier{n, param};
  if (name == "z2q") return WengRank2{};
  throw CLI::ValidationError("unknown family '" + name + "'");
}

inline json zero_json(const ZeroRecord& z) {
  return json{{"index", z.index},
              {"ordinate", z.ordinate},
              {"residual", z.residual},
              {"scale", z.scale},
              {"multiplicity_hint", z.multiplicity_hint}};
}

inline std::string format_number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace detail

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eisenstein series integrals: special functions, zeros, crossover, Maass-Selberg, lattices",
               "eiszeta"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--rel-tol", global.rel_tol, "target relative accuracy")->check(CLI::Range(1e-15, 0.5));
  app.add_option("--max-terms", global.max_terms, "series / quadrature node cap")->check(CLI::Range(16, 1 << 30));
  app.add_option("--threads", global.threads, "worker threads (0 = hardware concurrency)");
  app.add_option("--seed", global.seed, "seed for randomized checks");
  app.add_option("--out", global.out_path, "write the output to FILE instead of stdout");

  json inputs = json::object();
  json results = json::array();
  std::string csv;
  std::string command;

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate one function at one point");
  std::string function;
  std::string s_text = "0.5,0";
  std::string z_text;
  double y = 1.0;
  double T = 1.0;
  long long n = 1;
  long long nfourier = 0;
  eval->add_option("--function", function, "zeta-star|xi|zeta|gamma|a0|an|I|z2q|E|G|H|HT")
      ->required()
      ->check(CLI::IsMember({"zeta-star", "xi", "zeta", "gamma", "a0", "an", "I", "z2q", "E", "G", "H", "HT"}));
  eval->add_option("--s", s_text, "RE,IM");
  eval->add_option("--y", y, "height y (a0, an, G, H)");
  eval->add_option("--T", T, "truncation height T (I, HT)");
  eval->add_option("--n", n, "Fourier index (an)");
  eval->add_option("--z", z_text, "RE,IM point of the upper half-plane (E)");
  eval->add_option("--nfourier", nfourier, "Fourier terms for E (default from rel-tol)");

  // zeros
  auto* zeros = app.add_subcommand("zeros", "critical-line zeros of a family");
  std::string family = "I";
  double param = 1.0;
  double tmax = 0.0;
  std::string format = "json";
  zeros->add_option("--family", family, "I|a0|an|z2q")->check(CLI::IsMember({"I", "a0", "an", "z2q"}));
  zeros->add_option("--param", param, "T for I, y for a0 and an");
  zeros->add_option("--n", n, "Fourier index (an)");
  zeros->add_option("--tmax", tmax, "largest ordinate")->required();
  zeros->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  // count
  auto* count = app.add_subcommand("count", "argument-principle zero count");
  std::string count_family = "I";
  double umax = 0.0;
  std::string rect_text;
  count->add_option("--family", count_family, "I|a0|an|z2q|xi2s")
      ->check(CLI::IsMember({"I", "a0", "an", "z2q", "xi2s"}));
  count->add_option("--param", param, "T for I, y for a0 and an");
  count->add_option("--n", n, "Fourier index (an)");
  auto* umax_opt = count->add_option("--umax", umax, "count zeros with |Im s| <= U on [-2, 3] x [-U, U]");
  auto* rect_opt = count->add_option("--rect", rect_text, "re0,re1,im0,im1 for a raw winding count");
  umax_opt->excludes(rect_opt);

  // crossover
  auto* crossover = app.add_subcommand("crossover", "crossover height y* and real zeros");
  double cross_y = 0.0;
  auto* cross_y_opt = crossover->add_option("--y", cross_y, "also report the real zeros of a0(y, s)");

  // ms-check
  auto* ms = app.add_subcommand("ms-check", "Maass-Selberg relation by quadrature");
  long long ms_fourier = 12;
  int grid = 64;
  ms->add_option("--s", s_text, "RE,IM")->required();
  ms->add_option("--T", T, "truncation height")->required();
  ms->add_option("--nfourier", ms_fourier, "Fourier terms");
  ms->add_option("--grid", grid, "quadrature nodes per axis (multiple of 8, >= 32)");

  // lattice
  auto* lattice = app.add_subcommand("lattice", "canonical polygons and stability");
  lattice->require_subcommand(1);
  auto* classify = lattice->add_subcommand("classify", "canonical polygon of a basis file");
  std::string basis_path;
  classify->add_option("--basis", basis_path, "rows of decimals or p/q, one per line")->required();
  auto* point = lattice->add_subcommand("point", "classify L_z = Z[1, z]");
  point->add_option("--z", z_text, "RE,IM")->required();
  auto* submult = lattice->add_subcommand("submult", "exact submultiplicativity trials in Z^n");
  int lattice_n = 3;
  int trials = 100;
  submult->add_option("--n", lattice_n, "dimension")->check(CLI::Range(1, 3));
  submult->add_option("--trials", trials, "number of random sublattice pairs")->check(CLI::NonNegativeNumber);

  const auto started = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const EvalOptions opts = global.eval();
    opts.validate();

    if (eval->parsed()) {
      command = "eval";
      const ComplexValue s = parse_complex(s_text);
      inputs["function"] = function;
      inputs["s"] = complex_json(s);
      json record;
      ComplexValue value;
      if (function == "zeta-star") {
        value = completed_zeta(s, opts);
      } else if (function == "xi") {
        value = xi(s, opts);
      } else if (function == "zeta") {
        value = riemann_zeta(s, opts);
      } else if (function == "gamma") {
        value = gamma_complex(s, opts);
      } else if (function == "a0") {
        inputs["y"] = y;
        value = a0(y, s, opts);
      } else if (function == "G") {
        inputs["y"] = y;
        value = g_constant_term(y, s, opts);
      } else if (function == "H") {
        inputs["y"] = y;
        value = h_constant_term(y, s, opts);
      } else if (function == "an") {
        inputs["n"] = n;
        inputs["y"] = y;
        value = a_n(n, y, s, opts);
      } else if (function == "I") {
        inputs["T"] = T;
        value = i_truncation(T, s, opts);
      } else if (function == "HT") {
        inputs["T"] = T;
        value = h_truncation(T, s, opts);
      } else if (function == "z2q") {
        value = z2q(s, opts);
      } else {
        if (z_text.empty()) throw CLI::ValidationError("--function E requires --z");
        const ComplexValue z = parse_complex(z_text);
        inputs["z"] = complex_json(z);
        const EisensteinSum sum = eisenstein_series(z, s, nfourier, opts);
        value = sum.value;
        record["tail_estimate"] = sum.tail_estimate;
        record["n_max"] = sum.n_max;
      }
      json head{{"value", complex_json(value)}, {"abs", std::abs(value)}};
      if (record.is_object()) head.update(record);
      results.push_back(head);
    } else if (zeros->parsed()) {
      command = "zeros";
      const FamilyParam fam = detail::make_family(family, param, n);
      inputs["family"] = family;
      if (family != "z2q") inputs["param"] = param;
      if (family == "an") inputs["n"] = n;
      inputs["tmax"] = tmax;
      const auto found = critical_line_zeros(fam, tmax, opts);
      std::ostringstream rows;
      rows << "index,ordinate,residual\n";
      for (const ZeroRecord& z : found) {
        results.push_back(detail::zero_json(z));
        rows << z.index << "," << detail::format_number(z.ordinate) << "," << detail::format_number(z.residual)
             << "\n";
      }
      if (format == "csv") csv = rows.str();
    } else if (count->parsed()) {
      command = "count";
      inputs["family"] = count_family;
      CountTarget target = XiOf2s{};
      const bool named = count_family == "xi2s";
      if (!named) {
        target = detail::make_family(count_family, param, n);
        if (count_family != "z2q") inputs["param"] = param;
        if (count_family == "an") inputs["n"] = n;
      }
      std::vector<double> rect;
      if (!rect_text.empty()) {
        rect = parse_list(rect_text, 4);
        inputs["rect"] = rect;
      } else if (umax_opt->count() > 0) {
        rect = {-2.0, 3.0, -umax, umax};
        inputs["umax"] = umax;
      } else {
        throw CLI::ValidationError("count requires --umax or --rect");
      }
      const RectangleCount rc = count_zeros_rectangle(target, rect[0], rect[1], rect[2], rect[3], opts);
      // H-normalizations of I, a0 and Z carry one manufactured zero at s = 1/2.
      const bool has_half = !named && count_family != "an" && rc.re_lo < 0.5 && rc.re_hi > 0.5 && rc.im_lo < 0.0 &&
                            rc.im_hi > 0.0;
      const long long actual = rc.winding - (has_half ? 1 : 0);
      json record{{"winding", rc.winding},
                  {"actual", actual},
                  {"rectangle", {rc.re_lo, rc.re_hi, rc.im_lo, rc.im_hi}},
                  {"boundary_evaluations", rc.evaluations}};
      const double u = std::max(std::abs(rc.im_lo), std::abs(rc.im_hi));
      const bool scan_family = count_family == "I" || count_family == "a0" || count_family == "z2q";
      if (scan_family && rc.im_lo == -rc.im_hi && rc.re_lo < 0.5 && rc.re_hi > 0.5) {
        const long long scan = static_cast<long long>(critical_line_zeros(std::get<FamilyParam>(target), u, opts).size());
        record["critical_line_zeros"] = 2 * scan;
        record["off_line_zeros"] = actual - 2 * scan;
      }
      double predict_T = 0.0;
      if (named) predict_T = 1.0;
      if (count_family == "I") predict_T = param;
      if (count_family == "z2q") predict_T = 1.0;
      if (predict_T >= 1.0 && u >= 5.0 && rect_text.empty()) {
        const double predicted = predicted_count(predict_T, u);
        record["predicted"] = predicted;
        record["gap"] = static_cast<double>(actual) - predicted;
        record["log_u"] = std::log(u);
      }
      results.push_back(record);
    } else if (crossover->parsed()) {
      command = "crossover";
      const double closed = y_star();
      const double via_f = y_star_from_f_derivative(opts);
      json record{{"y_star_closed_form", closed},
                  {"y_star_from_f_derivative", via_f},
                  {"gap", std::abs(closed - via_f)},
                  {"xi_log_derivative_at_0", xi_log_derivative_at_zero_closed_form()},
                  {"xi_log_derivative_at_0_numeric", xi_log_derivative_at_zero(opts)}};
      if (cross_y_opt->count() > 0) {
        inputs["y"] = cross_y;
        json real = json::array();
        for (const ZeroRecord& z : real_zeros(cross_y, opts)) {
          real.push_back({{"sigma", z.ordinate},
                          {"mirror", 1.0 - z.ordinate},
                          {"residual", z.residual},
                          {"mirror_residual", std::abs(h_constant_term(cross_y, 1.0 - z.ordinate, opts))}});
        }
        record["real_zeros"] = real;
      }
      results.push_back(record);
    } else if (ms->parsed()) {
      command = "ms-check";
      const ComplexValue s = parse_complex(s_text);
      inputs["s"] = complex_json(s);
      inputs["T"] = T;
      inputs["nfourier"] = ms_fourier;
      inputs["grid"] = grid;
      if (grid % 8 != 0) throw CLI::ValidationError("--grid must be a multiple of 8");
      const MSCheckReport r = maass_selberg_check(s, T, ms_fourier, grid, opts);
      results.push_back({{"s", complex_json(r.s)},
                         {"T", r.T},
                         {"lhs", complex_json(r.lhs)},
                         {"rhs", complex_json(r.rhs)},
                         {"abs_gap", r.abs_gap},
                         {"quadrature_estimate", r.quadrature_estimate},
                         {"domain_note", r.domain_note}});
    } else if (lattice->parsed()) {
      if (classify->parsed()) {
        command = "lattice classify";
        inputs["basis"] = basis_path;
        std::ifstream in(basis_path);
        if (!in) throw CLI::ValidationError("cannot open basis file '" + basis_path + "'");
        const LatticeBasis basis = LatticeBasis::parse(in);
        const CanonicalPolygon poly = canonical_polygon(basis);
        json vertices = json::array();
        for (const auto& [r, v] : poly.vertices) vertices.push_back({r, v});
        json points = json::array();
        for (const auto& [r, v] : poly.points) points.push_back({r, v});
        results.push_back({{"covolume", covolume(basis)},
                           {"slope", slope(basis)},
                           {"kappa", poly.kappa},
                           {"points", points},
                           {"vertices", vertices},
                           {"classification", stability_name(poly.classification)},
                           {"semistable", poly.semistable()},
                           {"stable", poly.stable()},
                           {"exact", poly.exact}});
      } else if (point->parsed()) {
        command = "lattice point";
        const ComplexValue z = parse_complex(z_text);
        inputs["z"] = complex_json(z);
        const Rank2Classification c = classify_rank2_point(z);
        results.push_back({{"reduced", complex_json(c.reduced)},
                           {"classification", stability_name(c.classification)},
                           {"semistable", c.classification != Stability::Unstable},
                           {"stable", c.classification == Stability::Stable}});
      } else {
        command = "lattice submult";
        inputs["n"] = lattice_n;
        inputs["trials"] = trials;
        inputs["seed"] = global.seed;
        const SubmultiplicativityReport r =
            submultiplicativity_check(LatticeBasis::identity(static_cast<std::size_t>(lattice_n)), trials, global.seed);
        results.push_back({{"trials", r.trials},
                           {"violations", r.violations},
                           {"equalities", r.equalities},
                           {"max_ratio", r.max_ratio}});
      }
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PoleError& e) {
    err << "pole: " << e.what() << "\n";
    return kPole;
  } catch (const AccuracyError& e) {
    err << "accuracy: " << e.what() << "\n";
    return kAccuracy;
  } catch (const BoundaryZeroError& e) {
    err << "boundary zero: " << e.what() << "\n";
    return kBoundaryZero;
  } catch (const SelfCheckError& e) {
    err << "self-check: " << e.what() << "\n";
    return kSelfCheck;
  } catch (const RankError& e) {
    err << "rank: " << e.what() << "\n";
    return kRank;
  } catch (const ScaleError& e) {
    err << "scale: " << e.what() << "\n";
    return kScale;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }

  const double runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  std::string payload;
  if (!csv.empty()) {
    payload = csv;
  } else {
    json doc{{"schema_version", "1"},
             {"command", command},
             {"inputs", inputs},
             {"results", results},
             {"diagnostics", {{"rel_tol_used", global.rel_tol}, {"runtime_ms", runtime_ms}}}};
    payload = doc.dump(2) + "\n";
  }
  if (global.out_path.empty()) {
    out << payload;
  } else {
    std::ofstream file(global.out_path);
    if (!file) {
      err << "error: cannot write '" << global.out_path << "'\n";
      return kUsage;
    }
    file << payload;
  }
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"eiszeta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace eiszeta::cli

#endif  // EISZETA_CLI_HPP
