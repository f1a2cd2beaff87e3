#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mockq/harness.hpp"
#include "mockq/modgroup.hpp"
#include "mockq/mordell.hpp"
#include "mockq/qseries.hpp"
#include "mockq/valpha.hpp"

using namespace mockq;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error(ErrorKind::kInvalidArgument, "bad number '" + s + "'");
  return v;
}

// "a+bi", "a-bi", "bi", "a", "i", "-i"
cplx parse_complex(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?\s*$)");
  std::smatch m;
  if (text.empty() || !std::regex_match(text, m, re)) {
    throw Error(ErrorKind::kInvalidArgument, "bad complex literal '" + text + "'");
  }
  const double re_part = m[1].matched ? parse_double(m[1].str()) : 0.0;
  double im_part = 0.0;
  if (text.find('i') != std::string::npos) {
    im_part = m[3].matched ? parse_double(m[3].str()) : 1.0;
    if (m[2].str() == "-") im_part = -im_part;
    if (!m[1].matched && m[2].str().empty() && !m[3].matched && text.find('-') != std::string::npos) im_part = -1.0;
  }
  return {re_part, im_part};
}

AlphaParams parse_alpha(const std::string& s) {
  std::int64_t a = 0, c = 0, k = 0;
  char t1 = 0, t2 = 0;
  std::istringstream is(s);
  if (!(is >> a >> t1 >> c >> t2 >> k) || t1 != ',' || t2 != ',' || !is.eof()) {
    throw Error(ErrorKind::kInvalidArgument, "alpha must be A,C,a");
  }
  return AlphaParams(a, c, static_cast<int>(k));
}

RationalPoint parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw Error(ErrorKind::kInvalidArgument, "rational must be h/k");
  return make_rational_point(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

TauPoint parse_point(const std::string& s) {
  if (s.find('/') != std::string::npos) return parse_rational(s);
  const cplx t = parse_complex(s);
  return UpperHalfPoint(t.real(), t.imag());
}

IntMatrix2 parse_matrix(const std::string& s) {
  std::int64_t v[4];
  char sep;
  std::istringstream is(s);
  for (int i = 0; i < 4; ++i) {
    if (!(is >> v[i]) || (i < 3 && (!(is >> sep) || sep != ','))) {
      throw Error(ErrorKind::kInvalidArgument, "matrix must be x,y,z,w");
    }
  }
  return IntMatrix2(v[0], v[1], v[2], v[3]);
}

GroupSpec parse_group(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::kInvalidArgument, "group must be kind:arg");
  const std::string kind = s.substr(0, colon), arg = s.substr(colon + 1);
  if (kind == "aalpha") return GroupSpec::a_alpha(parse_alpha(arg));
  if (kind == "galpha") return GroupSpec::g_alpha(parse_alpha(arg));
  const std::int64_t n = std::stoll(arg);
  if (kind == "gamma0") return GroupSpec::gamma0(n);
  if (kind == "gamma0u") return GroupSpec::gamma0_upper(n);
  if (kind == "gamma1") return GroupSpec::gamma1(n);
  if (kind == "gamma1u") return GroupSpec::gamma1_upper(n);
  throw Error(ErrorKind::kInvalidArgument, "unknown group kind '" + kind + "'");
}

std::string show(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

void emit(const EvalResult& r, bool json) {
  if (json) {
    nlohmann::ordered_json j;
    j["re"] = r.value.real();
    j["im"] = r.value.imag();
    j["err_bound"] = r.err_bound;
    j["terms_used"] = r.terms_used;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << show(r.value) << "\n";
  }
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  f << text;
}

struct EvalOpts {
  std::string fn, tau = "i", u = "0", v = "0", z = "0", alpha, start, rational;
  double a = 0, b = 0, x = 0, y = 0;
  bool json = false;
  std::string method = "quadrature";
};

EvalResult run_eval(const EvalOpts& o, const TruncationPolicy& pol) {
  const auto uhp = [&] {
    const cplx t = parse_complex(o.tau);
    return UpperHalfPoint(t.real(), t.imag());
  };
  const MordellMethod mm = o.method == "mu" ? MordellMethod::kMuIdentity : MordellMethod::kQuadrature;
  if (o.fn == "eta") return eta(uhp(), pol);
  if (o.fn == "theta") return theta(parse_complex(o.z), uhp(), ThetaMode::kSum, pol);
  if (o.fn == "mu") return mu(parse_complex(o.u), parse_complex(o.v), uhp(), pol);
  if (o.fn == "r") return r_corr(parse_complex(o.u), uhp(), pol);
  if (o.fn == "muhat") return mu_hat(parse_complex(o.u), parse_complex(o.v), uhp(), pol);
  if (o.fn == "gab") return g_ab({o.a, o.b}, uhp(), pol);
  if (o.fn == "g2") return g2(parse_complex(o.z), e2pi(0.5 * parse_complex(o.tau)), pol);
  if (o.fn == "h") return mordell_h(parse_complex(o.u), uhp(), mm, pol);
  if (o.fn == "valpha") {
    return v_alpha(parse_alpha(o.alpha), o.rational.empty() ? parse_point(o.tau) : parse_rational(o.rational), pol);
  }
  if (o.fn == "vhat") return v_hat(parse_alpha(o.alpha), uhp(), pol);
  if (o.fn == "delta") return delta(o.x, o.y, uhp(), pol, mm);
  if (o.fn == "period") {
    const PathSpec path = o.start.empty() ? PathSpec::from_minus_conj_tau() : PathSpec::from_point(parse_double(o.start));
    return period_integral({o.a, o.b}, path, parse_complex(o.tau), pol);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown function '" + o.fn + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mockq: mock and quantum modular form toolkit"};
  app.require_subcommand(1);
  TruncationPolicy pol;
  app.add_option("--target-err", pol.target_abs_err, "absolute error target for series and quadrature");
  app.add_option("--min-im", pol.min_im, "smallest admissible Im(tau)");

  EvalOpts ev;
  auto* eval = app.add_subcommand("eval", "evaluate one function");
  eval->add_option("--fn", ev.fn, "eta|theta|mu|r|muhat|gab|g2|h|valpha|vhat|delta|period")
      ->required()
      ->check(CLI::IsMember({"eta", "theta", "mu", "r", "muhat", "gab", "g2", "h", "valpha", "vhat", "delta", "period"}));
  eval->add_option("--tau", ev.tau, "tau as a+bi (h/k also accepted for valpha)");
  eval->add_option("--rational", ev.rational, "rational point h/k for valpha");
  eval->add_option("--u", ev.u);
  eval->add_option("--v", ev.v);
  eval->add_option("--z", ev.z);
  eval->add_option("--a", ev.a);
  eval->add_option("--b", ev.b);
  eval->add_option("--x", ev.x);
  eval->add_option("--y", ev.y);
  eval->add_option("--alpha", ev.alpha, "A,C,a");
  eval->add_option("--start", ev.start, "real start point of the period path (default -conj(tau))");
  eval->add_option("--method", ev.method, "quadrature|mu")->check(CLI::IsMember({"quadrature", "mu"}));
  eval->add_flag("--json", ev.json);

  std::string suite = "all", format = "json", out;
  long cases = 0;
  std::uint64_t seed = 1;
  double tol = -1;
  auto* verify = app.add_subcommand("verify", "run identity suites");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--cases", cases, "draws per configuration (0 = default)");
  verify->add_option("--seed", seed);
  verify->add_option("--tol", tol, "tolerance override");
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out, "output file (default stdout)");
  verify->add_flag_callback("--list", [] {
    for (const auto& n : suite_names()) std::cout << n << "\n";
    std::exit(0);
  });

  std::string q_alpha, q_point;
  int q_part = 0;
  bool q_alt = false;
  double q_tol = -1;
  auto* quantum = app.add_subcommand("quantum", "residual of a quantum modularity law at one point");
  quantum->add_option("--alpha", q_alpha, "A,C,a")->required();
  quantum->add_option("--point", q_point, "h/k or a+bi")->required();
  quantum->add_option("--part", q_part, "1: tau -> tau/(tau+1), 2: tau -> tau/(2tau+1), 3: tau -> tau+C or tau+2C")
      ->required()
      ->check(CLI::IsMember({1, 2, 3}));
  quantum->add_flag("--general", q_alt, "use the general M_r form (parts 1, 2) or the T-shift proposition (part 3)");
  quantum->add_option("--tol", q_tol, "pass threshold (default 1e-6, or 1e-10 for part 3)");

  std::string s_alpha;
  int s_part = 1;
  double s_from = -1.0, s_to = 1.0;
  long s_steps = 201;
  std::string s_out, s_svg;
  auto* scan = app.add_subcommand("scan", "tabulate the M-law period term on the real line");
  scan->add_option("--alpha", s_alpha, "A,C,a")->required();
  scan->add_option("--part", s_part)->check(CLI::IsMember({1, 2}));
  scan->add_option("--from", s_from);
  scan->add_option("--to", s_to);
  scan->add_option("--steps", s_steps);
  scan->add_option("--out", s_out, "CSV output (default stdout)");
  scan->add_option("--svg", s_svg, "also write an SVG chart of |value|");

  auto* catalog = app.add_subcommand("catalog", "named parameter tuples and their values at i");

  std::string g_action, g_group, g_matrix, g_alpha;
  std::uint64_t g_seed = 1;
  auto* group = app.add_subcommand("group", "modular group utilities");
  group->add_option("--action", g_action, "member|sample|generators|tilde|phi")
      ->required()
      ->check(CLI::IsMember({"member", "sample", "generators", "tilde", "phi"}));
  group->add_option("--group", g_group, "gamma0:N, gamma0u:N, gamma1:N, gamma1u:N, aalpha:A,C,a, galpha:A,C,a");
  group->add_option("--matrix", g_matrix, "x,y,z,w");
  group->add_option("--alpha", g_alpha, "A,C,a");
  group->add_option("--seed", g_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    pol.validate();
    if (*eval) {
      emit(run_eval(ev, pol), ev.json);
      return 0;
    }
    if (*verify) {
      const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      std::string text;
      bool all_passed = true;
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& n : names) {
        const IdentityReport r = run_suite(n, cases, seed, tol >= 0 ? tol : default_tolerance(n));
        all_passed = all_passed && r.passed();
        std::cerr << (r.passed() ? "PASS " : "FAIL ") << n << " max_residual=" << r.max_residual
                  << " tol=" << r.tolerance << " cases=" << r.cases << "\n";
        if (format == "csv") {
          std::string csv = render_report(r, ReportFormat::kCsv);
          if (!text.empty()) csv.erase(0, csv.find('\n') + 1);
          text += csv;
        } else {
          arr.push_back(nlohmann::ordered_json::parse(render_report(r, ReportFormat::kJson)));
        }
      }
      if (format == "json") text = (names.size() == 1 ? arr.front() : arr).dump(2) + "\n";
      write_out(out, text);
      return all_passed ? 0 : kExitFail;
    }
    if (*quantum) {
      const AlphaParams al = parse_alpha(q_alpha);
      const TauPoint p = parse_point(q_point);
      double res;
      if (q_part == 3) {
        const std::int64_t r = al.C() % 2 == 0 ? al.C() : 2 * al.C();
        res = qm_residual_t(al, r, p, q_alt ? TForm::kProposition : TForm::kPart3, pol);
      } else {
        const MForm f = q_alt ? MForm::kGeneral : (q_part == 1 ? MForm::kPart1 : MForm::kPart2);
        res = qm_residual_m(al, q_part, p, f, pol);
      }
      const double tol_used = q_tol >= 0 ? q_tol : (q_part == 3 ? 1e-10 : 1e-6);
      std::printf("%.6e\n", res);
      return res <= tol_used ? 0 : kExitFail;
    }
    if (*scan) {
      const auto rows = scan_cocycle(parse_alpha(s_alpha), s_part, s_from, s_to, s_steps, pol);
      write_out(s_out, scan_to_csv(rows));
      if (!s_svg.empty()) write_out(s_svg, scan_to_svg(rows));
      return 0;
    }
    if (*catalog) {
      for (const auto& e : catalog_tuples()) {
        std::cout << e.name << "\t" << e.alpha.str() << "\t" << show(v_alpha(e.alpha, UpperHalfPoint(0.0, 1.0), pol).value)
                  << "\n";
      }
      return 0;
    }
    if (*group) {
      if (g_action == "generators") {
        for (const auto& m : galpha_generators(parse_alpha(g_alpha))) std::cout << m << "\n";
      } else if (g_action == "sample") {
        std::cout << sample_element(parse_group(g_group), g_seed) << "\n";
      } else if (g_action == "member") {
        std::cout << (group_member(parse_group(g_group), parse_matrix(g_matrix)) ? "true" : "false") << "\n";
      } else if (g_action == "tilde") {
        const TildeShift t = tilde_decompose(parse_alpha(g_alpha), parse_matrix(g_matrix));
        std::cout << t.k << " " << t.l << " " << t.r << " " << t.s << "\n";
      } else {
        std::cout << phi_exponent(parse_alpha(g_alpha), parse_matrix(g_matrix)) << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::kInvalidArgument:
      case ErrorKind::kUnknownSuite:
      case ErrorKind::kInconsistentArguments:
        return kExitUsage;
      default:
        return kExitNumeric;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
