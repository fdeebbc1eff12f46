#include "wormkit_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "wormkit/diagnostics.hpp"
#include "wormkit/errors.hpp"
#include "wormkit/quadrature.hpp"

namespace wormkit::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOrthoTol = 1e-10;

struct Check {
  cplx closed;
  cplx oracle;
  double oracle_error = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Quadrature verdict: |closed - oracle| <= max(100 abs_tol, 10 rel_tol scale),
// with scale the Cauchy-Schwarz bound |a| |b| on the inner product.
Check quad_check(cplx closed, const OracleResult& o, double scale,
                 const QuadConfig& q) {
  Check c;
  c.closed = closed;
  c.oracle = o.value;
  c.oracle_error = o.abs_error_estimate;
  c.abs_diff = std::abs(closed - o.value);
  c.tolerance = std::max(100.0 * q.abs_tol, 10.0 * q.rel_tol * scale);
  c.pass = c.abs_diff <= c.tolerance;
  return c;
}

// Monte-Carlo verdict: within three standard errors.
Check mc_check(cplx closed, const OracleResult& o) {
  Check c;
  c.closed = closed;
  c.oracle = o.value;
  c.oracle_error = o.abs_error_estimate;
  c.abs_diff = std::abs(closed - o.value);
  c.tolerance = 3.0 * o.abs_error_estimate;
  c.pass = c.abs_diff <= c.tolerance;
  return c;
}

double worm_scale(const PowerSpec& a, const PowerSpec& b, const WormParams& p) {
  return std::exp(0.5 * (log_worm_norm_sq(a, p) + log_worm_norm_sq(b, p)));
}

double disk_scale(cplx a, cplx b) {
  return std::sqrt(disk_inner(a, a).real() * disk_inner(b, b).real());
}

// Short number spelling for row labels; values themselves use format_double.
std::string label_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string label_complex(cplx z) {
  return label_number(z.real()) + (z.imag() < 0 ? "-" : "+") +
         label_number(std::abs(z.imag())) + "i";
}

std::string spec_label(const SpecRef& s) {
  std::ostringstream os;
  if (s.ell) {
    os << "H(" << *s.ell << "," << s.j << ")";
  } else {
    os << "F(" << label_complex(s.alpha) << "," << s.j << ")";
  }
  return os.str();
}

nlohmann::ordered_json curve_summary(const ResidualCurve& c) {
  nlohmann::ordered_json s;
  bool monotone = true;
  for (std::size_t i = 1; i < c.residuals.size(); ++i) {
    if (c.residuals[i] > c.residuals[i - 1] + 1e-10) monotone = false;
  }
  s["non_increasing"] = monotone;
  s["outside_hypothesis"] = c.outside_hypothesis;
  if (!c.residuals.empty()) s["final_residual"] = c.residuals.back();
  return s;
}

// ---------------------------------------------------------------------------

Report inner_product(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  Report r;
  r.claim = "closed-form Bergman inner products agree with brute-force integration";
  r.columns = {"pair",      "space",     "oracle",       "a",        "b",
               "closed_re", "closed_im", "oracle_re",    "oracle_im", "oracle_error",
               "abs_diff",  "tolerance", "pass"};
  const WormParams worm = cfg.worm();
  std::vector<const char*> oracles;
  if (p.oracle == OracleChoice::kQuad || p.oracle == OracleChoice::kBoth) {
    oracles.push_back("quad");
  }
  if (p.oracle == OracleChoice::kMc || p.oracle == OracleChoice::kBoth) {
    if (p.disk) throw ValidationError("params.oracle", "mc is only available for space worm");
    oracles.push_back("mc");
  }
  const double nan = std::nan("");
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    const PairRef& pr = p.pairs[i];
    const auto pair = static_cast<long long>(i);
    if (p.disk) {
      if (pr.a.ell || pr.b.ell) {
        throw ValidationError("params.pairs", "space disk takes alpha exponents");
      }
      const cplx closed = disk_inner(pr.a.alpha, pr.b.alpha);
      if (oracles.empty()) {
        r.add_row({pair, "disk", "none", spec_label(pr.a), spec_label(pr.b), closed.real(),
                   closed.imag(), nan, nan, nan, nan, nan, true});
      }
      for (const char* o : oracles) {
        const Check c = quad_check(closed, quad_disk_inner(pr.a.alpha, pr.b.alpha, cfg.quad),
                                   disk_scale(pr.a.alpha, pr.b.alpha), cfg.quad);
        r.add_row({pair, "disk", o, spec_label(pr.a), spec_label(pr.b), c.closed.real(),
                   c.closed.imag(), c.oracle.real(), c.oracle.imag(), c.oracle_error,
                   c.abs_diff, c.tolerance, c.pass});
      }
      continue;
    }
    const PowerSpec a = pr.a.resolve(worm);
    const PowerSpec b = pr.b.resolve(worm);
    const cplx closed = worm_inner(a, b, worm);
    if (oracles.empty() || a.j != b.j) {
      // Different sectors are orthogonal by rotation; no oracle needed.
      r.add_row({pair, "worm", "none", spec_label(pr.a), spec_label(pr.b), closed.real(),
                 closed.imag(), nan, nan, nan, nan, nan, true});
      continue;
    }
    for (const char* o : oracles) {
      const bool quad = std::string(o) == "quad";
      const Check c = quad ? quad_check(closed, quad_worm_inner(a, b, worm, cfg.quad),
                                        worm_scale(a, b, worm), cfg.quad)
                           : mc_check(closed, mc_worm_inner(a, b, worm, cfg.quad));
      r.add_row({pair, "worm", o, spec_label(pr.a), spec_label(pr.b), c.closed.real(),
                 c.closed.imag(), c.oracle.real(), c.oracle.imag(), c.oracle_error,
                 c.abs_diff, c.tolerance, c.pass});
    }
  }
  return r;
}

Report gram(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  const WormParams worm = cfg.worm();
  Report r;
  r.claim = "normalized Gram system and projection residual of the target";
  r.columns = {"row", "col", "row_spec", "col_spec", "re", "im"};
  const PowerSpec target = p.target->resolve(worm);
  std::vector<PowerSpec> basis;
  for (const auto& s : p.basis) basis.push_back(s.resolve(worm));
  const GramSystem sys = gram_system(target, basis, worm);
  const Projection proj = projection_residual(sys);
  for (Eigen::Index i = 0; i < sys.matrix.rows(); ++i) {
    for (Eigen::Index k = 0; k < sys.matrix.cols(); ++k) {
      const cplx v = sys.matrix(i, k);
      r.add_row({static_cast<long long>(i), static_cast<long long>(k),
                 spec_label(p.basis[i]), spec_label(p.basis[k]), v.real(), v.imag()});
    }
  }
  for (Eigen::Index i = 0; i < sys.rhs.size(); ++i) {
    const cplx v = sys.rhs(i);
    r.add_row({static_cast<long long>(i), -1LL, spec_label(p.basis[i]),
               spec_label(*p.target), v.real(), v.imag()});
  }
  r.meta["summary"] = {{"residual", proj.residual},
                       {"condition_estimate", format_double(proj.condition_estimate)},
                       {"rank", proj.rank},
                       {"ill_conditioned", proj.ill_conditioned},
                       {"min_eigenvalue", min_eigenvalue(sys)},
                       {"log_target_norm_sq", sys.log_target_norm_sq}};
  return r;
}

bool parity_ok(int ell, SpanParity parity) {
  if (parity == SpanParity::kEven) return ell % 2 == 0;
  if (parity == SpanParity::kOdd) return ell % 2 != 0;
  return true;
}

Report orthogonality_check(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  const WormParams worm = cfg.worm();
  Report r;
  r.claim = "H(l,j) with l of equal parity are mutually orthogonal; predicted zeros "
            "match the closed form";
  r.columns = {"j", "ell_a", "ell_b", "abs_normalized_inner", "predicted_orthogonal",
               "tolerance", "pass"};
  long long n_orth = 0;
  double worst = 0.0;
  for (int j : p.j_values) {
    for (int la = 0; la <= p.ell_max; ++la) {
      if (!parity_ok(la, p.parity)) continue;
      for (int lb = la + 1; lb <= p.ell_max; ++lb) {
        if (!parity_ok(lb, p.parity)) continue;
        const PowerSpec a = resolve({la, j}, worm);
        const PowerSpec b = resolve({lb, j}, worm);
        const double v = std::abs(normalized_worm_inner(a, b, worm));
        const bool predicted = is_orthogonal(a, b, worm);
        const bool pass = predicted ? v < kOrthoTol : v >= kOrthoTol;
        if (predicted) {
          ++n_orth;
          worst = std::max(worst, v);
        }
        r.add_row({static_cast<long long>(j), static_cast<long long>(la),
                   static_cast<long long>(lb), v, predicted, kOrthoTol, pass});
      }
    }
  }
  r.meta["summary"] = {{"orthogonal_pairs", n_orth},
                       {"max_abs_normalized_inner_among_orthogonal", worst}};
  return r;
}

Report bessel_defect_report(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  const WormParams worm = cfg.worm();
  Report r;
  r.claim = "H(2m+1,j) keeps a positive Bessel defect against the even system, so "
            "neither parity system is complete";
  r.columns = {"m",           "j",           "k_max",           "lhs",
               "rhs_partial", "tail_bound",  "margin",          "relative_margin",
               "normalized_bessel", "sine_weighted_sum", "gamma_bound_sum", "envelope",
               "pass"};
  for (int m : p.m_values) {
    for (int j : p.j_values) {
      const BesselDefect d = bessel_defect(m, j, worm, p.k_max);
      const BoundChain c = bessel_bound_chain(m, j, worm, p.k_max);
      const bool pass = d.margin > 0.0 && c.gamma_bound_sum < 1.0;
      r.add_row({static_cast<long long>(m), static_cast<long long>(j),
                 static_cast<long long>(p.k_max), d.lhs, d.rhs_partial, d.tail_bound,
                 d.margin, d.relative_margin, c.normalized_bessel, c.sine_weighted_sum,
                 c.gamma_bound_sum, c.envelope, pass});
    }
  }
  return r;
}

Report pi2_series_report(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  Report r;
  r.claim = "sum over all integers k of 1/(k-(2m+1)/2)^2 equals pi^2; the k >= 0 half "
            "stays below it";
  r.columns = {"m", "n_terms", "two_sided", "one_sided", "pi_squared", "abs_diff",
               "tolerance", "pass"};
  const double pi2 = kPi * kPi;
  // The two-sided tail beyond n is below 2/n.
  const double tol = p.n_terms > 0 ? 4.0 / p.n_terms : pi2;
  for (int m : p.m_values) {
    const Pi2Series s = pi2_series(m, p.n_terms);
    const double diff = std::abs(s.two_sided - pi2);
    const bool pass = diff <= tol && s.one_sided < s.two_sided && s.one_sided < pi2;
    r.add_row({static_cast<long long>(m), static_cast<long long>(p.n_terms), s.two_sided,
               s.one_sided, pi2, diff, tol, pass});
  }
  return r;
}

Report muntz_report(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  Report r;
  r.claim = "powers zeta^(a k + c0 + i b), 0 < a < 1, approximate zeta^sigma in the disk "
            "Bergman space";
  r.columns = {"n", "residual", "condition_estimate", "ill_conditioned"};
  std::vector<double> res;
  for (int n : p.n_values) {
    const ResidualPoint pt = muntz_residual(p.sigma, p.a, *p.muntz_c0, p.b, n);
    res.push_back(pt.residual);
    r.add_row({static_cast<long long>(n), pt.residual, pt.condition_estimate,
               pt.ill_conditioned});
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < res.size(); ++i) {
    if (!(res[i] < res[i - 1])) decreasing = false;
  }
  r.meta["summary"] = {{"strictly_decreasing", decreasing}};
  return r;
}

Report not_a_basis(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  Report r;
  r.claim = "H(0,j) is approximated by span{H(1..n,j)}; the complete family is not a "
            "basis";
  r.columns = {"n", "residual", "condition_estimate", "ill_conditioned"};
  const ResidualCurve c = redundancy_study(p.j, cfg.worm(), p.n_max);
  for (std::size_t i = 0; i < c.residuals.size(); ++i) {
    r.add_row({static_cast<long long>(c.truncation_sizes[i]), c.residuals[i],
               c.condition_estimates[i], static_cast<bool>(c.ill_conditioned[i])});
  }
  r.meta["summary"] = curve_summary(c);
  return r;
}

Report completeness(const ExperimentConfig& cfg) {
  const CommandParams& p = cfg.params;
  const WormParams worm = cfg.worm();
  Report r;
  r.claim = "span{H(0..n,j)} approaches every element of the sector for mu > pi/2";
  r.columns = {"target", "n", "residual", "condition_estimate", "ill_conditioned"};
  std::vector<PowerSpec> targets;
  for (const auto& t : p.targets) {
    if (t.j != p.j) throw ValidationError("params.targets", "every target needs j = params.j");
    targets.push_back(t.resolve(worm));
  }
  const auto curves = completeness_study(p.j, worm, targets, p.n_max, p.parity);
  nlohmann::ordered_json summaries = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < curves.size(); ++t) {
    const ResidualCurve& c = curves[t];
    for (std::size_t i = 0; i < c.residuals.size(); ++i) {
      r.add_row({spec_label(p.targets[t]), static_cast<long long>(c.truncation_sizes[i]),
                 c.residuals[i], c.condition_estimates[i],
                 static_cast<bool>(c.ill_conditioned[i])});
    }
    summaries.push_back(curve_summary(c));
  }
  r.meta["summary"] = summaries;
  return r;
}

// ---------------------------------------------------------------------------

struct VerifyCase {
  std::string name;
  std::function<Check()> run;
};

std::vector<VerifyCase> verify_cases(const ExperimentConfig& cfg) {
  const QuadConfig q = cfg.quad;
  const WormParams worm = cfg.worm();
  std::vector<VerifyCase> cases;

  auto exact = [](cplx closed, cplx expected) {
    Check c;
    c.closed = closed;
    c.oracle = expected;
    c.abs_diff = std::abs(closed - expected);
    c.tolerance = 1e-12 * std::max(1.0, std::abs(expected));
    c.pass = c.abs_diff <= c.tolerance;
    return c;
  };
  cases.push_back({"disk_closed_form_anchor(0,0)=pi",
                   [=] { return exact(disk_inner(0.0, 0.0), kPi); }});
  cases.push_back({"disk_closed_form_anchor(1,1)=3pi/2",
                   [=] { return exact(disk_inner(1.0, 1.0), 1.5 * kPi); }});
  cases.push_back({"worm_norm_anchor(z2^-1)=2pi^2 mu", [=] {
                     return exact(worm_norm_sq({0.0, -1}, worm), 2.0 * kPi * kPi * worm.mu());
                   }});

  const std::pair<cplx, cplx> disk_pairs[] = {
      {0.0, 0.0},
      {1.0, 1.0},
      {{0.7, 0.3}, {0.2, -0.1}},
      {-0.5, -0.5},
      {{1.5, 0.5}, {3.0, 0.0}},
      {{0.0, 1.0}, {0.7, -0.5}},
  };
  for (const auto& [a, b] : disk_pairs) {
    std::ostringstream name;
    name << "disk_quad(" << label_complex(a) << "," << label_complex(b) << ")";
    cases.push_back({name.str(), [=] {
                       return quad_check(disk_inner(a, b), quad_disk_inner(a, b, q),
                                         disk_scale(a, b), q);
                     }});
  }

  const std::pair<MonomialIndex, MonomialIndex> worm_pairs[] = {
      {{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}, {{0, 0}, {2, 0}},
      {{1, -1}, {1, -1}}, {{1, 2}, {3, 2}},
  };
  for (const auto& [ia, ib] : worm_pairs) {
    std::ostringstream name;
    name << "worm_quad(H(" << ia.ell << "," << ia.j << "),H(" << ib.ell << "," << ib.j << "))";
    cases.push_back({name.str(), [=] {
                       const PowerSpec a = resolve(ia, worm), b = resolve(ib, worm);
                       return quad_check(worm_inner(a, b, worm),
                                         quad_worm_inner(a, b, worm, q),
                                         worm_scale(a, b, worm), q);
                     }});
  }
  const PowerSpec generic_a{{0.4, 0.3}, 1}, generic_b{{1.1, -0.2}, 1};
  cases.push_back({"worm_quad(F(0.4+0.3i,1),F(1.1-0.2i,1))", [=] {
                     return quad_check(worm_inner(generic_a, generic_b, worm),
                                       quad_worm_inner(generic_a, generic_b, worm, q),
                                       worm_scale(generic_a, generic_b, worm), q);
                   }});
  cases.push_back({"worm_mc(H(0,0),H(0,0))", [=] {
                     const PowerSpec a = resolve({0, 0}, worm);
                     return mc_check(worm_inner(a, a, worm), mc_worm_inner(a, a, worm, q));
                   }});
  cases.push_back({"worm_mc(F(0.4+0.3i,1),F(1.1-0.2i,1))", [=] {
                     return mc_check(worm_inner(generic_a, generic_b, worm),
                                     mc_worm_inner(generic_a, generic_b, worm, q));
                   }});

  // Sector projection of z1 z2^j + z2^(j+1): reproduces one mode, removes the
  // other.
  for (int j = -2; j <= 2; ++j) {
    for (int target : {j, j + 1, j + 3}) {
      std::ostringstream name;
      name << "sector_projection(j=" << j << ",onto=" << target << ")";
      cases.push_back({name.str(), [=] {
                         const cplx z1(0.8, 0.3);
                         const double r2 = 1.7;
                         auto f = [j](cplx a, cplx b) {
                           return a * std::pow(b, j) + std::pow(b, j + 1);
                         };
                         // Expected mode coefficient at radius sqrt(r2).
                         const double r = std::sqrt(r2);
                         cplx expected = 0.0;
                         if (target == j) expected = z1 * std::pow(r, j);
                         if (target == j + 1) expected = std::pow(r, j + 1);
                         Check c;
                         c.closed = expected;
                         c.oracle = q_project(f, target, z1, r2, 64);
                         c.abs_diff = std::abs(c.closed - c.oracle);
                         c.tolerance = 1e-12;
                         c.pass = c.abs_diff <= c.tolerance;
                         return c;
                       }});
    }
  }
  return cases;
}

Report verify(const ExperimentConfig& cfg) {
  Report r;
  r.claim = "closed forms agree with quadrature and Monte-Carlo oracles";
  r.columns = {"case", "closed_re", "closed_im", "oracle_re", "oracle_im", "oracle_error",
               "abs_diff", "tolerance", "pass"};
  long long passed = 0, total = 0;
  for (const auto& vc : verify_cases(cfg)) {
    const Check c = vc.run();
    r.add_row({vc.name, c.closed.real(), c.closed.imag(), c.oracle.real(), c.oracle.imag(),
               c.oracle_error, c.abs_diff, c.tolerance, c.pass});
    ++total;
    if (c.pass) ++passed;
  }
  r.meta["summary"] = {{"cases", total}, {"passed", passed}};
  return r;
}

}  // namespace

Report run_command(const ExperimentConfig& cfg) {
  Report r;
  switch (cfg.command) {
    case Command::kInnerProduct: r = inner_product(cfg); break;
    case Command::kGram: r = gram(cfg); break;
    case Command::kOrthogonalityCheck: r = orthogonality_check(cfg); break;
    case Command::kBesselDefect: r = bessel_defect_report(cfg); break;
    case Command::kPi2Series: r = pi2_series_report(cfg); break;
    case Command::kMuntz: r = muntz_report(cfg); break;
    case Command::kNotABasis: r = not_a_basis(cfg); break;
    case Command::kCompleteness: r = completeness(cfg); break;
    case Command::kVerify: r = verify(cfg); break;
  }
  r.command = command_name(cfg.command);
  nlohmann::ordered_json meta;
  meta["inputs"] = config_to_json(cfg);
  for (const auto& [k, v] : r.meta.items()) meta[k] = v;
  meta["all_pass"] = r.all_pass();
  r.meta = std::move(meta);
  return r;
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    cfg.validate();
    report = run_command(cfg);
  } catch (const ValidationError& e) {
    err << "error: invalid " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid argument: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "error: numerical failure in " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << command_name(cfg.command) << " failed: " << e.what() << '\n';
    return kExitNumerical;
  }

  std::ostringstream text;
  if (cfg.format == Format::kCsv) write_csv(report, text);
  else write_json(report, text);

  if (cfg.output_path.empty()) {
    out << text.str();
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text.str())) {
      err << "error: invalid output_path: cannot write '" << cfg.output_path << "'\n";
      return kExitValidation;
    }
    if (cfg.command == Command::kVerify) {
      const auto name_col = 0u;
      const std::size_t pass_col = report.columns.size() - 1;
      for (const auto& row : report.rows) {
        out << (std::get<bool>(row[pass_col]) ? "PASS " : "FAIL ")
            << std::get<std::string>(row[name_col]) << '\n';
      }
    }
  }
  if (!report.all_pass()) {
    err << "error: " << command_name(cfg.command) << ": one or more checks failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Bergman-space numerics for the truncated worm domain", "wormkit"};
  std::optional<std::string> command_arg, config_path, format, output, parity, oracle,
      space;
  std::optional<double> mu, c0, sigma, a, b, abs_tol, rel_tol;
  std::optional<int> j, ell_max, m, k_max, n_terms, n_max, radial, angular, s_nodes;
  std::optional<long> mc_samples;
  std::optional<std::uint64_t> seed;
  bool even = false, odd = false;

  app.add_option("command", command_arg,
                 "inner-product, gram, orthogonality-check, bessel-defect, pi2-series, "
                 "muntz, not-a-basis, completeness or verify");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--mu", mu, "worm truncation mu > 0");
  app.add_option("--c0", c0, "exponent shift c0 > -1");
  app.add_option("--j", j, "sector index");
  auto* even_flag = app.add_flag("--even", even, "even ell only");
  app.add_flag("--odd", odd, "odd ell only")->excludes(even_flag);
  app.add_option("--parity", parity, "all, even or odd");
  app.add_option("--ell-max", ell_max);
  app.add_option("--m", m, "single odd index m for bessel-defect / pi2-series");
  app.add_option("--k-max", k_max);
  app.add_option("--n-terms", n_terms);
  app.add_option("--n-max", n_max);
  app.add_option("--sigma", sigma, "target exponent for muntz");
  app.add_option("--a", a, "exponent step for muntz");
  app.add_option("--b", b, "imaginary exponent shift for muntz");
  app.add_option("--oracle", oracle, "none, quad, mc or both");
  app.add_option("--space", space, "worm or disk");
  app.add_option("--radial-nodes", radial);
  app.add_option("--angular-nodes", angular);
  app.add_option("--s-nodes", s_nodes);
  app.add_option("--abs-tol", abs_tol);
  app.add_option("--rel-tol", rel_tol);
  app.add_option("--mc-samples", mc_samples);
  app.add_option("--seed", seed);
  app.add_option("--format", format, "csv or json");
  app.add_option("--output", output, "report path; standard output when omitted");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: invalid command line: " << e.what() << '\n';
    return kExitValidation;
  }

  ExperimentConfig cfg;
  try {
    std::optional<Command> command;
    if (command_arg) command = parse_command(*command_arg);
    if (config_path) {
      cfg = config_from_file(*config_path, command);
    } else if (command) {
      cfg.command = *command;
    }
    CommandParams& p = cfg.params;
    if (mu) cfg.mu = *mu;
    if (c0) cfg.c0 = *c0;
    if (j) {
      p.j = *j;
      p.j_values = {*j};
      if (p.target) p.target->j = *j;
    }
    if (parity) p.parity = *parity == "even" ? SpanParity::kEven
                         : *parity == "odd"  ? SpanParity::kOdd
                         : *parity == "all"  ? SpanParity::kAll
                         : throw ValidationError("--parity", "expected all, even or odd");
    if (even) p.parity = SpanParity::kEven;
    if (odd) p.parity = SpanParity::kOdd;
    if (ell_max) p.ell_max = *ell_max;
    if (m) p.m_values = {*m};
    if (k_max) p.k_max = *k_max;
    if (n_terms) p.n_terms = *n_terms;
    if (n_max) p.n_max = *n_max;
    if (sigma) p.sigma = *sigma;
    if (a) p.a = *a;
    if (b) p.b = *b;
    if (c0 && cfg.command == Command::kMuntz) p.muntz_c0 = *c0;
    if (oracle) {
      if (*oracle == "none") p.oracle = OracleChoice::kNone;
      else if (*oracle == "quad") p.oracle = OracleChoice::kQuad;
      else if (*oracle == "mc") p.oracle = OracleChoice::kMc;
      else if (*oracle == "both") p.oracle = OracleChoice::kBoth;
      else throw ValidationError("--oracle", "expected none, quad, mc or both");
    }
    if (space) {
      if (*space != "worm" && *space != "disk") {
        throw ValidationError("--space", "expected worm or disk");
      }
      p.disk = *space == "disk";
    }
    if (radial) cfg.quad.radial_nodes = *radial;
    if (angular) cfg.quad.angular_nodes = *angular;
    if (s_nodes) cfg.quad.s_nodes = *s_nodes;
    if (abs_tol) cfg.quad.abs_tol = *abs_tol;
    if (rel_tol) cfg.quad.rel_tol = *rel_tol;
    if (mc_samples) cfg.quad.mc_samples = *mc_samples;
    if (seed) cfg.quad.seed = *seed;
    if (format) {
      if (*format == "csv") cfg.format = Format::kCsv;
      else if (*format == "json") cfg.format = Format::kJson;
      else throw ValidationError("--format", "expected csv or json");
    }
    if (output) cfg.output_path = *output;
    cfg.validate();
    apply_defaults(cfg);
  } catch (const ValidationError& e) {
    err << "error: invalid " << e.what() << '\n';
    return kExitValidation;
  }
  return run(cfg, out, err);
}

}  // namespace wormkit::cli
