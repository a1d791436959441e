// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "conebessel/bessel.hpp"
#include "conebessel/dunkl.hpp"
#include "conebessel/errors.hpp"
#include "conebessel/hypergroup.hpp"
#include "conebessel/jack.hpp"
#include "conebessel/laplace.hpp"
#include "conebessel/measures.hpp"
#include "conebessel/parallel.hpp"
#include "conebessel/suite.hpp"

namespace conebessel::cli {

namespace {

struct IdentityInfo {
  const char* id;
  const char* formula;
};

const IdentityInfo kIdentities[] = {
    {"product-formula", "J_mu(r^2) J_mu(s^2) = E_w J_mu(r^2 + s^2 + r w s + s w* r), w ~ ball density"},
    {"multiplicativity", "f_s(r) f_s(t) = E f_s(z), z ~ delta_r *_mu delta_t"},
    {"wolf-haar", "J_{pd/2}(x* x / 4) = E_u exp(-i Re tr((u sigma_0)* x)), u Haar on U_p"},
    {"harish-chandra", "0F0^{2/d}(xi, eta) = E_u exp(tr(eta u xi u*)), u Haar on U_q"},
    {"dunklchar", "J^B_{k(mu,d)}(xi, i eta) = E_u J_mu(eta u xi^2 u* eta / 4)"},
    {"limit-exp", "|J_mu(mu y) - exp(-tr y)| = O(1/mu)"},
    {"limit-BtoA", "|J^B_{k(mu,d)}(2 sqrt(mu) xi, i b) - 0F0^{2/d}(xi^2, -b^2)| = O(1/mu)"},
    {"laplace", "int J_mu(x) e^{-<x,y>} Delta(x)^{mu-n/q} dx = Gamma_Omega(mu) Delta(y)^{-mu} e^{-tr y^-1}"},
    {"laplace-mod", "int J_mu(xm) e^{-<x,y>} Delta(x)^{mu-n/q} dx = Gamma_Omega(mu) Delta(y)^{-mu} e^{-tr(m y^-1)}"},
    {"addition", "J_{mu+nu}(x(m1+m2)) Delta(x)^{mu+nu-n/q} = B^-1 int_{y<=x} J_mu(y m1) J_nu((x-y) m2) ..."},
    {"sonine", "J_{mu+nu}(m) = int_{Pi^I} J_mu(y m) dbeta_{q;mu,nu}(y)"},
    {"sonine-phi", "phi_s^{mu+nu}(x) = int_{Pi^I} phi_{sqrt(sys)}^mu(x) dbeta_{q;mu,nu}(y)"},
    {"polar-route", "phi_l^{pd/2}(x) = int_{Pi_pt^I} phi_{l(r)}^{pt d/2}(x) dbeta_{pt; pt d/2, (p-pt)d/2}(r)"},
    {"route-consistency", "sonine-phi quadrature at (pt d/2, (p-pt)d/2) = polar route by Monte Carlo"},
    {"beta-projection", "upper-left block of beta_{pt;mu,nu} is beta_{q;mu,nu} (KS on the (1,1) entry)"},
    {"example-q2", "(1/2pi) int cos((xi1^2 - xi2^2) cos 2t) dt = 0F0^1(xi^2, (-i, i)) = J_0(xi1^2 - xi2^2)"},
    {"psi-functional", "psi_b(a) psi_b(c) = psi_b(sqrt(a^2 + c^2))"},
    {"degenerate-product", "psi_b(xi) psi_b(eta) = E_u psi_b(sigma(sqrt(xi^2 + u eta^2 u*)))"},
};

const char* const kEvalFns[] = {"bessel", "jack", "pochhammer", "dunklA", "dunklB", "psi", "gamma-omega", "beta-const"};

using Values = std::map<std::string, std::string>;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + " value '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError("cannot parse " + what + " value '" + s + "'");
  return v;
}

/// Parses "a", "a+bi", "a-bi", "bi", "i", "-i".
cd parse_complex(std::string s, const std::string& what) {
  s = trim(s);
  if (s.empty()) throw ValidationError("empty " + what + " entry");
  if (s.back() != 'i') return parse_double(s, what);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t, what);
  };
  if (split == std::string::npos) return cd(0.0, imag(s));
  return cd(parse_double(s.substr(0, split), what), imag(s.substr(split)));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
  return out;
}

std::vector<double> real_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const std::string& t : split_list(s)) out.push_back(parse_double(t, what));
  return out;
}

CVec complex_list(const std::string& s, const std::string& what) {
  CVec out;
  for (const std::string& t : split_list(s)) out.push_back(parse_complex(t, what));
  return out;
}

Mat read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
  std::vector<std::vector<cd>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<cd> row;
    while (ss >> tok) row.push_back(parse_complex(tok, "matrix entry"));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("matrix file '" + path + "' is empty");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ValidationError("matrix file '" + path + "' has ragged rows");
  Mat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

class Args {
 public:
  Args(const Values& v, const std::vector<std::string>& matrix_files) : v_(v) {
    for (const std::string& spec : matrix_files) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) throw ValidationError("--matrix-file expects NAME=PATH");
      files_[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
  }

  bool has(const std::string& k) const {
    const auto it = v_.find(k);
    return (it != v_.end() && !it->second.empty()) || files_.count(k);
  }
  const std::string& str(const std::string& k) const {
    static const std::string empty;
    const auto it = v_.find(k);
    return it == v_.end() ? empty : it->second;
  }
  double num(const std::string& k) const {
    if (!has(k)) throw ValidationError("missing --" + k);
    return parse_double(str(k), k);
  }
  double num(const std::string& k, double def) const { return has(k) ? num(k) : def; }
  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    const double v = num(k);
    if (v != std::round(v)) throw ValidationError("--" + k + " must be an integer");
    return static_cast<int>(v);
  }
  std::size_t count(const std::string& k, std::size_t def) const {
    const int v = integer(k, static_cast<int>(def));
    if (v < 0) throw ValidationError("--" + k + " must be non-negative");
    return static_cast<std::size_t>(v);
  }
  std::vector<double> reals(const std::string& k) const {
    if (!has(k)) throw ValidationError("missing --" + k);
    return real_list(str(k), k);
  }
  std::vector<double> reals(const std::string& k, std::vector<double> def) const {
    return has(k) ? real_list(str(k), k) : def;
  }
  CVec complexes(const std::string& k) const {
    if (!has(k)) throw ValidationError("missing --" + k);
    return complex_list(str(k), k);
  }

  /// Full matrix from --matrix-file NAME=PATH, else the diagonal list
  /// --NAME, else def (or an error when def is empty).
  Mat matrix(const std::string& k, int rows, int cols, std::optional<Mat> def = std::nullopt) const {
    Mat m;
    if (auto it = files_.find(k); it != files_.end()) {
      m = read_matrix_file(it->second);
    } else if (has(k)) {
      const CVec d = complexes(k);
      if (static_cast<int>(d.size()) != std::min(rows, cols))
        throw ValidationError("--" + k + " needs " + std::to_string(std::min(rows, cols)) + " diagonal entries");
      m = Mat::Zero(rows, cols);
      for (int i = 0; i < static_cast<int>(d.size()); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    } else if (def) {
      m = *def;
    } else {
      throw ValidationError("missing --" + k);
    }
    if (m.rows() != rows || m.cols() != cols)
      throw ValidationError("--" + k + " must be " + std::to_string(rows) + "x" + std::to_string(cols));
    return m;
  }
  HermMatrix herm(const std::string& k, const FieldParams& fp, std::optional<Mat> def = std::nullopt) const {
    return HermMatrix(matrix(k, fp.q, fp.q, std::move(def)), fp.field);
  }
  ConePoint point(const std::string& k, const FieldParams& fp, std::optional<Mat> def = std::nullopt) const {
    return ConePoint(herm(k, fp, std::move(def)));
  }

 private:
  const Values& v_;
  std::map<std::string, std::string> files_;
};

struct Common {
  std::string seed;
  unsigned threads = 0;
  bool no_timestamp = false;
  std::string config;
  std::vector<std::string> matrix_files;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed (default: $CONEBESSEL_SEED, else 0)");
  sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  sub->add_flag("--no-timestamp", c.no_timestamp, "zero wall-clock fields in JSON output");
  sub->add_option("--config", c.config, "key=value file with defaults for any flag");
  sub->add_option("--matrix-file", c.matrix_files, "NAME=PATH full matrix for argument NAME");
}

void add_values(CLI::App* sub, Values& v, std::initializer_list<const char*> keys) {
  for (const char* k : keys) sub->add_option(std::string("--") + k, v[k]);
}

std::uint64_t resolve_seed(const Common& c) {
  std::string s = c.seed;
  if (s.empty()) {
    if (const char* env = std::getenv("CONEBESSEL_SEED")) s = env;
  }
  if (s.empty()) return 0;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("seed must be a non-negative integer, got '" + s + "'");
  }
}

/// Appends key=value lines from --config as flags not already present.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config") continue;
    const std::string flag = "--" + key;
    const bool present = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (present) continue;
    if (value == "true") {
      args.push_back(flag);
    } else if (value != "false") {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

FieldParams field_params(const Args& a, int def_q = 1) {
  const int q = a.integer("q", def_q);
  if (q < 1 || q > kMaxRank) throw ValidationError("--q must lie in [1, " + std::to_string(kMaxRank) + "]");
  return FieldParams(parse_field(a.has("field") ? a.str("field") : "R"), q);
}

Json vec_json(const CVec& v) {
  Json j = Json::array();
  for (const cd& z : v) j.push_back(z.imag() == 0.0 ? Json(z.real()) : complex_json(z));
  return j;
}

std::string format_complex(cd z) {
  std::ostringstream os;
  os.precision(15);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

Partition parse_partition(const std::string& s) {
  std::vector<int> parts;
  for (const std::string& t : split_list(s)) {
    const double v = parse_double(t, "partition");
    if (v != std::round(v)) throw ValidationError("partition parts must be integers");
    parts.push_back(static_cast<int>(v));
  }
  return Partition(parts);
}

SeriesControl series_control(const Args& a) {
  SeriesControl c;
  c.k_max = a.integer("kmax", c.k_max);
  c.validate();
  return c;
}

int cmd_eval(const Args& a, std::ostream& out, bool json) {
  const std::string fn = a.str("fn");
  const FieldParams fp = field_params(a);
  const SeriesControl ctrl = series_control(a);
  Json params{{"q", fp.q}, {"field", to_string(fp.field)}};
  std::optional<SeriesValue> series;
  cd value = 0.0;
  auto spectrum = [&](const std::string& k) {
    const CVec v = a.complexes(k);
    if (static_cast<int>(v.size()) != fp.q) throw ValidationError("--" + k + " needs q entries");
    params[k] = vec_json(v);
    return v;
  };
  if (fn == "bessel") {
    const double mu = a.num("mu");
    params["mu"] = mu;
    Spectrum x;
    x.values = spectrum("x");
    series = bessel_J(mu, x, fp, ctrl);
  } else if (fn == "jack") {
    const Partition lambda = parse_partition(a.str("partition"));
    const double alpha = a.num("alpha", fp.alpha);
    params["partition"] = lambda.to_string();
    params["alpha"] = alpha;
    Spectrum x;
    x.values = spectrum("x");
    value = jack_C(lambda, alpha, x);
  } else if (fn == "pochhammer") {
    const Partition lambda = parse_partition(a.str("partition"));
    const double alpha = a.num("alpha", fp.alpha);
    const cd mu = parse_complex(a.str("mu"), "mu");
    params["partition"] = lambda.to_string();
    params["alpha"] = alpha;
    params["mu"] = complex_json(mu);
    value = pochhammer_gen(mu, lambda, alpha);
  } else if (fn == "dunklA") {
    const double k = a.num("k", 0.5 * fp.d);
    params["k"] = k;
    const CVec xi = spectrum("xi");
    const CVec eta = spectrum("eta");
    series = dunkl_bessel_A(k, xi, eta, ctrl);
  } else if (fn == "dunklB") {
    const MultiplicityB k = a.has("k1") ? MultiplicityB(a.num("k1"), a.num("k2", 0.5 * fp.d))
                                        : MultiplicityB::geometric(a.num("mu"), fp.d, fp.q);
    params["k1"] = k.k1;
    params["k2"] = k.k2;
    const CVec xi = spectrum("xi");
    const CVec eta = spectrum("eta");
    series = dunkl_bessel_B(k, xi, eta, ctrl);
  } else if (fn == "psi") {
    const Mat b = a.matrix("b", fp.q, fp.q);
    const ConePoint pt = a.point("a", fp);
    params["b"] = matrix_json(b);
    params["a"] = matrix_json(pt.matrix());
    value = olshanski_psi(b, pt);
  } else if (fn == "gamma-omega") {
    const cd mu = parse_complex(a.str("mu"), "mu");
    params["mu"] = complex_json(mu);
    value = gamma_omega(fp, mu);
  } else if (fn == "beta-const") {
    const double mu = a.num("mu");
    const double nu = a.num("nu");
    params["mu"] = mu;
    params["nu"] = nu;
    value = beta_const(fp, mu, nu);
  } else {
    std::string names;
    for (const char* f : kEvalFns) names += std::string(names.empty() ? "" : "|") + f;
    throw ValidationError("--fn must be one of " + names);
  }
  if (series) value = series->value;
  if (json) {
    Json j;
    j["schema"] = 1;
    j["fn"] = fn;
    j["params"] = params;
    j["value"] = complex_json(value);
    if (series) {
      j["truncation_degree"] = series->truncation_degree;
      j["est_tail"] = series->est_tail;
      j["converged"] = series->converged;
      j["advice"] = to_string(series->advice);
    }
    out << j.dump(2) << "\n";
  } else {
    out << format_complex(value);
    if (series) {
      std::ostringstream tail;
      tail.precision(3);
      tail << series->est_tail;
      out << " +- " << tail.str() << " (degree " << series->truncation_degree
          << (series->converged ? ", converged" : ", not converged: " + to_string(series->advice)) << ")";
    }
    out << "\n";
  }
  if (series && !series->converged) return kExitDomain;
  return kExitPass;
}

QuadSpec quad_spec(const Args& a) {
  QuadSpec s;
  s.level = a.integer("level", 0);
  return s;
}

std::optional<double> tol_opt(const Args& a) {
  if (!a.has("tol")) return std::nullopt;
  return a.num("tol");
}

std::vector<std::pair<double, double>> default_q2_grid() {
  return {{0.5, 0.0}, {1.0, 0.5}, {1.2, 0.3}, {1.5, 1.0}, {std::sqrt(2.0), 0.0},
          {2.0, 1.0}, {2.0, 1.5}, {1.8, 0.2}, {2.2, 1.1}, {0.9, 0.9}};
}

VerificationReport run_identity(const std::string& id, const Args& a, std::uint64_t seed) {
  const FieldParams fp = field_params(a, id == "harish-chandra" || id == "dunklchar" || id == "limit-exp" ||
                                                 id == "limit-BtoA" || id == "wolf-haar"
                                             ? 2
                                             : 1);
  const Mat eye = Mat::Identity(fp.q, fp.q);
  const Mat zero = Mat::Zero(fp.q, fp.q);
  const std::size_t samples = a.count("samples", 100'000);
  if (id == "product-formula") {
    const double tol = a.num("tol", fp.q == 1 ? 1e-2 : 3e-2);
    return verify_product_formula(a.num("mu"), a.point("r", fp, eye), a.point("s", fp, eye), fp, samples, seed,
                                  tol);
  }
  if (id == "multiplicativity") {
    const double tol = a.num("tol", fp.q == 1 ? 1e-2 : 3e-2);
    return verify_multiplicativity(a.herm("s", fp, eye), a.point("r", fp, eye), a.point("t", fp, eye), a.num("mu"),
                                   fp, samples, seed, tol);
  }
  if (id == "wolf-haar") {
    const int p = a.integer("p", 4);
    if (p < fp.q) throw ValidationError("wolf-haar needs p >= q");
    return verify_wolf_haar(RectMatrix{a.matrix("x", p, fp.q), fp.field}, fp, samples, seed);
  }
  if (id == "harish-chandra") return verify_harish_chandra(fp, a.reals("xi"), a.reals("eta"), samples, seed);
  if (id == "dunklchar") return verify_dunklchar(a.num("mu"), fp, a.reals("xi"), a.reals("eta"), samples, seed);
  if (id == "limit-exp") {
    const std::vector<double> mus = a.reals("mu", {8, 16, 32, 64});
    VerificationReport r = rate_report(id, limit_rate(a.point("y", fp, eye), mus, fp));
    r.params = {{"q", fp.q}, {"field", to_string(fp.field)}, {"mu", mus}};
    return r;
  }
  if (id == "limit-BtoA") {
    const std::vector<double> mus = a.reals("mu", {32, 64, 128});
    const std::vector<double> xi = a.reals("xi");
    const std::vector<double> b = a.reals("b");
    VerificationReport r = rate_report(id, b_to_a_limit(fp, xi, b, mus));
    r.params = {{"q", fp.q}, {"field", to_string(fp.field)}, {"xi", xi}, {"b", b}, {"mu", mus}};
    return r;
  }
  if (id == "laplace") return verify_laplace(a.num("mu"), a.point("y", fp, eye), fp, quad_spec(a), tol_opt(a));
  if (id == "laplace-mod")
    return verify_laplace_mod(a.num("mu"), a.point("m", fp, eye), a.point("y", fp, eye), fp, quad_spec(a),
                              tol_opt(a));
  if (id == "addition")
    return verify_addition(a.num("mu"), a.num("nu"), a.point("m1", fp, eye), a.point("m2", fp, zero),
                           a.point("x", fp, eye), fp, quad_spec(a), tol_opt(a));
  if (id == "sonine") return sonine_eval(a.num("mu"), a.num("nu"), a.point("m", fp, eye), fp, quad_spec(a), tol_opt(a));
  if (id == "sonine-phi")
    return sonine_phi(a.num("mu"), a.num("nu"), a.point("s", fp, eye), a.point("x", fp, eye), fp, quad_spec(a),
                      tol_opt(a), a.str("emit-measure") == "true");
  if (id == "polar-route" || id == "route-consistency") {
    const int ptilde = a.integer("ptilde", fp.q);
    const int p = a.integer("p", 2 * ptilde);
    const ConePoint lambda = a.point("lambda", fp, eye);
    const ConePoint x = a.point("x", fp, eye);
    if (id == "route-consistency")
      return verify_route_consistency(ptilde, p, lambda, x, fp, samples, seed, a.num("tol", 1e-2));
    PolarOptions opts;
    const std::string method = a.has("method") ? a.str("method") : "quad";
    if (method == "mc") {
      opts.method = PolarMethod::MonteCarlo;
    } else if (method != "quad") {
      throw ValidationError("--method must be quad or mc");
    }
    opts.quad = quad_spec(a);
    opts.samples = samples;
    opts.seed = seed;
    return verify_polar_route(ptilde, p, lambda, x, fp, opts, tol_opt(a));
  }
  if (id == "beta-projection") {
    return verify_beta_projection(a.integer("ptilde", 2), fp.q, fp.field, a.integer("p", 0), a.integer("r", 0),
                                  a.count("samples", 200'000), seed, a.num("tol", 0.01));
  }
  if (id == "example-q2") {
    std::vector<std::pair<double, double>> grid = default_q2_grid();
    if (a.has("xi")) {
      const std::vector<double> xi = a.reals("xi");
      if (xi.size() % 2 != 0) throw ValidationError("--xi takes pairs xi1,xi2[,xi1,xi2...]");
      grid.clear();
      for (std::size_t i = 0; i < xi.size(); i += 2) grid.emplace_back(xi[i], xi[i + 1]);
    }
    return verify_example_q2(grid, a.num("tol", 1e-8));
  }
  if (id == "psi-functional")
    return verify_psi_functional(a.matrix("b", fp.q, fp.q, zero), a.point("a", fp, eye), a.point("c", fp, eye),
                                 a.num("tol", 1e-12));
  if (id == "degenerate-product")
    return verify_degenerate_product(fp, a.reals("xi"), a.reals("eta"), a.reals("b"), samples, seed);
  throw ValidationError("unknown identity '" + id + "' (see verify --list)");
}

int cmd_verify(const Args& a, std::uint64_t seed, bool list, bool no_timestamp, std::ostream& out) {
  if (list) {
    for (const IdentityInfo& info : kIdentities) out << info.id << "\t" << info.formula << "\n";
    return kExitPass;
  }
  if (!a.has("identity")) throw ValidationError("missing --identity (see verify --list)");
  VerificationReport rep = run_identity(a.str("identity"), a, seed);
  if (rep.seed == 0) rep.seed = seed;
  out << rep.to_json(!no_timestamp).dump(2) << "\n";
  return rep.pass ? kExitPass : kExitFail;
}

void csv_header(std::ostream& out, const std::string& prefix, Eigen::Index rows, Eigen::Index cols, Field f,
                bool first) {
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const std::string base = prefix + std::to_string(i + 1) + std::to_string(j + 1);
      if (!first) out << ",";
      first = false;
      if (f == Field::C) {
        out << base << "_re," << base << "_im";
      } else {
        out << base;
      }
    }
}

void csv_row(std::ostream& out, const Mat& m, Field f) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << "," << m(i, j).real();
      if (f == Field::C) out << "," << m(i, j).imag();
    }
}

int cmd_sample(const Args& a, std::uint64_t seed, std::ostream& out) {
  const std::string dist = a.str("dist");
  const FieldParams fp = field_params(a);
  if (fp.field == Field::H) throw ValidationError("sampling needs F = R or C");
  const std::size_t n = a.count("samples", 1000);
  RngStream rng(seed, 0);
  out.precision(17);
  const Mat eye = Mat::Identity(fp.q, fp.q);
  auto emit = [&](std::size_t i, const Mat& m) {
    out << i;
    csv_row(out, m, fp.field);
    out << "\n";
  };
  if (dist == "wishart") {
    const int p = a.integer("p", fp.q);
    const ConePoint sigma = a.point("sigma", fp, eye);
    out << "i,";
    csv_header(out, "x", fp.q, fp.q, fp.field, true);
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) emit(i, wishart_sample(fp, p, sigma, rng).matrix());
  } else if (dist == "beta") {
    const BetaParams params(fp, a.num("mu"), a.num("nu"));
    out << "i,";
    csv_header(out, "y", fp.q, fp.q, fp.field, true);
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) emit(i, sample_beta(params, rng).matrix());
  } else if (dist == "matrix-beta") {
    const int pt = a.integer("ptilde", fp.q);
    const int p = a.integer("p", pt);
    const int r = a.integer("r", pt);
    out << "i,";
    csv_header(out, "y", pt, pt, fp.field, true);
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) emit(i, sample_matrix_beta(pt, fp.field, p, r, rng).matrix());
  } else if (dist == "haar") {
    const int p = a.integer("p", fp.q);
    const FieldParams fpp(fp.field, p);
    out << "i,";
    csv_header(out, "u", p, p, fp.field, true);
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) emit(i, haar_unitary(p, fpp, rng).entries);
  } else if (dist == "ball") {
    const BallSample s = sample_ball(fp, a.num("mu"), n, rng);
    out << "i,";
    csv_header(out, "w", fp.q, fp.q, fp.field, true);
    out << "\n";
    for (std::size_t i = 0; i < s.draws.size(); ++i) emit(i, s.draws[i].entries);
  } else if (dist == "convolution") {
    const ConvolutionSample s =
        convolve_points(a.point("r", fp, eye), a.point("s", fp, eye), a.num("mu"), fp, n, seed);
    out << "i,weight,";
    csv_header(out, "z", fp.q, fp.q, fp.field, true);
    out << "\n";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      out << i << "," << s.weights[i];
      csv_row(out, s.points[i].matrix(), fp.field);
      out << "\n";
    }
  } else {
    throw ValidationError("--dist must be one of wishart|beta|matrix-beta|haar|ball|convolution");
  }
  return kExitPass;
}

int cmd_suite(bool quick, std::uint64_t seed, const std::string& json_path, bool no_timestamp, std::ostream& out) {
  SuiteOptions opts;
  opts.quick = quick;
  opts.seed = seed;
  const SuiteSummary s = run_suite(opts, [&](const CriterionOutcome& c) {
    out << "[" << (c.pass ? "PASS" : "FAIL") << "] " << c.id << ". " << c.name << ": " << c.summary << "\n";
    out.flush();
  });
  out << s.passed << "/" << (s.passed + s.failed) << " criteria passed\n";
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) throw ValidationError("cannot write '" + json_path + "'");
    f << s.to_json(!no_timestamp).dump(2) << "\n";
  }
  return s.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Special functions on matrix cones: evaluation, identity checks, sampling"};
  app.name("conebessel");
  app.require_subcommand(1);

  Common common;
  Values eval_v, verify_v, sample_v;
  bool eval_json = false;
  bool verify_list = false;
  bool emit_measure = false;
  bool suite_quick = false;
  std::string suite_json;

  CLI::App* eval = app.add_subcommand("eval", "evaluate a function");
  add_common(eval, common);
  add_values(eval, eval_v, {"fn", "q", "field", "mu", "nu", "x", "partition", "alpha", "k", "k1", "k2", "xi", "eta",
                            "a", "b", "kmax"});
  eval->add_flag("--json", eval_json, "print JSON");

  CLI::App* verify = app.add_subcommand("verify", "run one identity check and print its JSON report");
  add_common(verify, common);
  add_values(verify, verify_v, {"identity", "q", "field", "mu", "nu", "samples", "tol", "r", "s", "t", "x", "y", "m",
                                "m1", "m2", "lambda", "p", "ptilde", "level", "method", "xi", "eta", "a", "b", "c"});
  verify->add_flag("--list", verify_list, "print the identity table");
  verify->add_flag("--emit-measure", emit_measure, "include the discretized mixing measure (sonine-phi)");

  CLI::App* sample = app.add_subcommand("sample", "draw samples as CSV");
  add_common(sample, common);
  add_values(sample, sample_v, {"dist", "q", "field", "p", "r", "ptilde", "mu", "nu", "samples", "sigma", "s"});

  CLI::App* suite = app.add_subcommand("suite", "run the acceptance battery");
  add_common(suite, common);
  suite->add_flag("--quick", suite_quick, "ten times fewer Monte Carlo samples");
  suite->add_option("--json", suite_json, "write the JSON summary to this path");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    set_thread_count(common.threads);
    const std::uint64_t seed = resolve_seed(common);
    if (eval->parsed()) return cmd_eval(Args(eval_v, common.matrix_files), out, eval_json);
    if (verify->parsed()) {
      if (emit_measure) verify_v["emit-measure"] = "true";
      return cmd_verify(Args(verify_v, common.matrix_files), seed, verify_list, common.no_timestamp, out);
    }
    if (sample->parsed()) return cmd_sample(Args(sample_v, common.matrix_files), seed, out);
    if (suite->parsed()) return cmd_suite(suite_quick, seed, suite_json, common.no_timestamp, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace conebessel::cli
