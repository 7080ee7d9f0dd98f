#include "katolab/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "katolab/adiabatic.hpp"
#include "katolab/asymptotics.hpp"
#include "katolab/error.hpp"
#include "katolab/models.hpp"
#include "katolab/perturbation.hpp"
#include "katolab/projections.hpp"
#include "katolab/quadrature.hpp"
#include "katolab/temple_kato.hpp"

namespace katolab {

namespace {

constexpr double kPi = std::numbers::pi;

Json json_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    fail("malformed JSON in " + path + ": " + e.what());
  }
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  RVector xs(static_cast<Index>(x.size())), ys(static_cast<Index>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    xs(static_cast<Index>(i)) = x[i];
    ys(static_cast<Index>(i)) = y[i];
  }
  return loglog_slope(xs, ys);
}

std::vector<double> log_points(double a, double b, long n) {
  require(n >= 2 && a > 0.0 && b > a, "invalid range");
  std::vector<double> out;
  for (long i = 0; i < n; ++i)
    out.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * static_cast<double>(i) / static_cast<double>(n - 1)));
  return out;
}

// perturb ------------------------------------------------------------------

void run_perturb(const ExperimentConfig& c, ResultRecord& r) {
  const std::string mode = c.get("mode");
  const long order = c.get_int("order");
  require(order >= 1, "order must be positive");
  if (mode == "quartic") {
    r.experiment_id = "perturb.quartic";
    const int n = static_cast<int>(order);
    const long basis = c.get_int("basis") > 0 ? c.get_int("basis") : 4 * n + 40;
    const auto series = bender_wu(n, static_cast<int>(basis));
    r.outputs["basis"] = basis;
    r.outputs["coefficients"] = json_array(series.coeffs());
    r.outputs["coefficients_exact"] = bender_wu_exact(n, static_cast<int>(basis));
    r.table.columns = {"n", "a_n", "ratio_to_large_order"};
    for (int k = 1; k <= n; ++k) r.table.rows.push_back({double(k), series[k], bender_wu_ratio(series[k], k)});
    const double ratio = bender_wu_ratio(series[n], n);
    r.outputs["ratio_at_order"] = ratio;
    r.targets.push_back(make_target("a1", "first-order quartic coefficient 3/4", series[1], 0.75, 1e-10));
    if (n >= 2)
      r.targets.push_back(make_target("a2", "second-order quartic coefficient -21/16", series[2], -21.0 / 16.0, 1e-10));
    if (n >= 25)
      r.targets.push_back(make_target("large_order_ratio", "factorial large-order growth, 1 + O(1/n)", ratio, 1.0, 0.10));
    return;
  }
  require(mode == "random", "malformed config: perturb.mode must be random or quartic");
  r.experiment_id = "perturb.random";
  const Index dim = c.get_int("dim");
  const Index index = c.get_int("index");
  const double beta = c.get_double("beta");
  require(dim >= 2 && index >= 0 && index < dim, "malformed config: perturb.index out of range");
  Rng rng(c.seed);
  const HermitianMatrix h0 = random_hermitian(dim, rng);
  const HermitianMatrix b = random_hermitian(dim, rng);
  const auto rs = rs_series(h0, b, index, static_cast<int>(order));
  double sum = 0.0, p = 1.0;
  for (double e : rs.E) {
    sum += e * p;
    p *= beta;
  }
  const double exact = eig(h0 + b * beta).eigenvalues(index);
  const auto low = rs_low_order(h0, b, index);
  double low_diff = 0.0;
  for (std::size_t k = 1; k < std::min<std::size_t>(4, rs.E.size()); ++k)
    low_diff = std::max(low_diff, std::abs(low.E[k] - rs.E[k]) / (1.0 + std::abs(rs.E[k])));
  r.outputs["coefficients"] = json_array(rs.E);
  r.outputs["partial_sum"] = sum;
  r.outputs["exact"] = exact;
  r.outputs["error"] = std::abs(sum - exact);
  r.outputs["normalization"] = rs.normalization;
  r.table.columns = {"k", "E_k"};
  for (std::size_t k = 0; k < rs.E.size(); ++k) r.table.rows.push_back({double(k), rs.E[k]});
  r.targets.push_back(make_target("series_vs_exact", "partial sum against the exact eigenvalue", std::abs(sum - exact),
                                  c.get_double("tol"), 0.0, "max"));
  r.targets.push_back(make_target("closed_forms_vs_recursion", "low-order closed forms match the recursion", low_diff,
                                  1e-10, 0.0, "max"));
}

// temple -------------------------------------------------------------------

void run_temple(const ExperimentConfig& c, ResultRecord& r) {
  r.experiment_id = "temple";
  const Index dim = c.get_int("dim");
  const long trials = c.get_int("trials");
  require(dim >= 2 && trials >= 0, "malformed config: temple.dim or temple.trials");
  Rng rng(c.seed);
  std::uniform_int_distribution<Index> pick(0, dim - 1);
  long failures = 0, not_single = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (long t = 0; t < trials; ++t) {
    const HermitianMatrix h = random_hermitian(dim, rng);
    const auto sd = eig(h);
    const Index k = pick(rng);
    const double lam = sd.eigenvalues(k);
    const double alpha = k > 0 ? 0.5 * (sd.eigenvalues(k - 1) + lam) : lam - 1.0;
    const double zeta = k + 1 < dim ? 0.5 * (lam + sd.eigenvalues(k + 1)) : lam + 1.0;
    const CVector noise = random_complex(dim, 1, rng).col(0);
    CVector phi;
    for (double s = 0.3;; s *= 0.5) {
      phi = (sd.vectors.col(k) + s * noise).normalized();
      const double eta = rayleigh(h, phi);
      const double eps = residual(h, phi);
      if (alpha < eta && eta < zeta && eps * eps < (eta - alpha) * (zeta - eta)) break;
    }
    const auto rep = enclosure(h, phi, alpha, zeta);
    if (rep.single_point && !*rep.single_point) ++not_single;
    const double slack = 1e-12 * (1.0 + std::abs(lam));
    if (lam < rep.gamma0 - slack || lam > rep.kappa0 + slack) ++failures;
    worst_margin = std::min(worst_margin, std::min(lam - rep.gamma0, rep.kappa0 - lam));
  }
  r.outputs["trials"] = trials;
  r.outputs["failures"] = failures;
  r.outputs["not_single_point"] = not_single;
  if (trials > 0) r.outputs["worst_margin"] = worst_margin;

  // Remainder E(beta) - eta(beta) for the unperturbed ground vector.
  const HermitianMatrix h0 = random_hermitian(dim, rng);
  const HermitianMatrix b = random_hermitian(dim, rng);
  const CVector phi0 = eig(h0).vectors.col(0);
  const auto betas = log_points(c.get_double("beta_min"), c.get_double("beta_max"), c.get_int("points"));
  std::vector<double> rem;
  r.table.columns = {"beta", "remainder"};
  for (double beta : betas) {
    const HermitianMatrix h = h0 + b * beta;
    const double v = std::abs(eig(h).eigenvalues(0) - rayleigh(h, phi0));
    rem.push_back(v);
    r.table.rows.push_back({beta, v});
  }
  const double slope = slope_of(betas, rem);
  r.outputs["remainder_slope"] = slope;
  r.targets.push_back(make_target("enclosure_failures", "true eigenvalue inside the enclosure in every trial",
                                  double(failures), 0.0, 0.0, "max"));
  r.targets.push_back(make_target("remainder_slope", "Rayleigh quotient error is second order in the coupling", slope,
                                  2.0, 0.1));
}

// projections ----------------------------------------------------------------

struct PairChecks {
  double identity = 0.0, conjugation = 0.0, index_dev = 0.0, halmos = 0.0;
  long index = 0;
  bool norm_close = false;
};

PairChecks check_pair(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  PairChecks out;
  const auto pair = projection_pair(p, q);
  const CMatrix a = pair.A.matrix(), b = pair.B.matrix();
  const Index n = pair.dim();
  out.identity = std::max(max_abs(a * a + b * b - CMatrix::Identity(n, n)), max_abs(a * b + b * a));
  if (pair.normPQ < 1.0 - 1e-6) {
    out.norm_close = true;
    const CMatrix u = kato_unitary(pair);
    const CMatrix s = sgn_unitary(pair);
    out.conjugation = std::max(norm2(u * p.matrix() * u.adjoint() - q.matrix()), norm2(s * p.matrix() * s - q.matrix()));
  }
  const double tr = (p.matrix() - q.matrix()).trace().real();
  out.index_dev = std::abs(tr - std::round(tr));
  out.index = trace_index(pair);
  out.halmos = halmos(pair).reconstruction_residual;
  return out;
}

void run_projections(const ExperimentConfig& c, ResultRecord& r) {
  r.experiment_id = "projections";
  const std::string file = c.get("pair_file");
  if (!file.empty()) {
    const Json j = read_json_file(file);
    require(j.contains("P") && j.contains("Q"), "malformed pair file: needs P and Q");
    const auto p = OrthogonalProjection::from_matrix(matrix_from_json(j["P"]));
    const auto q = OrthogonalProjection::from_matrix(matrix_from_json(j["Q"]));
    const auto ch = check_pair(p, q);
    const auto corners = corner_subspaces(p, q);
    r.outputs["norm_PQ"] = projection_pair(p, q).normPQ;
    r.outputs["identity_error"] = ch.identity;
    r.outputs["conjugation_error"] = ch.conjugation;
    r.outputs["index"] = ch.index;
    r.outputs["halmos_residual"] = ch.halmos;
    r.outputs["corners"] = {{"p_kerq", corners.p_kerq}, {"kerp_q", corners.kerp_q}, {"p_q", corners.p_q},
                            {"kerq_kerp", corners.kerq_kerp}, {"generic", corners.generic()}};
    r.targets.push_back(make_target("pair_identities", "A^2 + B^2 = 1 and AB + BA = 0", ch.identity, 1e-10, 0.0, "max"));
    r.targets.push_back(make_target("halmos_reconstruction", "two-projection normal form reproduces Q", ch.halmos, 1e-8, 0.0, "max"));
    return;
  }
  const Index dim = c.get_int("dim");
  const long pairs = c.get_int("pairs");
  require(dim >= 2 && pairs >= 0, "malformed config: projections.dim or projections.pairs");
  Rng rng(c.seed);
  std::uniform_int_distribution<Index> rank(1, dim - 1);
  PairChecks worst;
  long close = 0;
  double oblique_sym = 0.0, oblique_ljance = 0.0;
  r.table.columns = {"pair", "norm_PQ", "identity_error", "conjugation_error", "index", "halmos_residual"};
  for (long i = 0; i < pairs; ++i) {
    const Index rp = rank(rng);
    const CMatrix xp = random_complex(dim, rp, rng);
    const auto p = OrthogonalProjection::onto_span(xp);
    // Alternate norm-close pairs (perturbed ranges) with independent ones.
    const CMatrix xq = i % 2 == 0 ? CMatrix(xp + 0.15 * random_complex(dim, rp, rng)) : random_complex(dim, rank(rng), rng);
    const auto q = OrthogonalProjection::onto_span(xq);
    const auto ch = check_pair(p, q);
    worst.identity = std::max(worst.identity, ch.identity);
    worst.conjugation = std::max(worst.conjugation, ch.conjugation);
    worst.index_dev = std::max(worst.index_dev, ch.index_dev);
    worst.halmos = std::max(worst.halmos, ch.halmos);
    close += ch.norm_close;
    r.table.rows.push_back({double(i), projection_pair(p, q).normPQ, ch.identity, ch.conjugation, double(ch.index), ch.halmos});

    // Oblique projection X diag(1..1, 0..0) X^{-1}.
    const CMatrix x = random_complex(dim, dim, rng) + 2.0 * CMatrix::Identity(dim, dim);
    CVector d = CVector::Zero(dim);
    d.head(rp).setOnes();
    const CMatrix pi = x * d.asDiagonal() * x.inverse();
    const auto on = oblique_norms(pi);
    oblique_sym = std::max(oblique_sym, std::abs(on.norm_pi - on.norm_complement));
    oblique_ljance = std::max(oblique_ljance, std::abs(on.norm_pi - on.ljance));
  }
  r.outputs["pairs"] = pairs;
  r.outputs["norm_close_pairs"] = close;
  r.outputs["identity_error"] = worst.identity;
  r.outputs["conjugation_error"] = worst.conjugation;
  r.outputs["index_deviation"] = worst.index_dev;
  r.outputs["halmos_residual"] = worst.halmos;
  r.outputs["oblique_norm_difference"] = oblique_sym;
  r.outputs["ljance_difference"] = oblique_ljance;
  r.targets.push_back(make_target("pair_identities", "A^2 + B^2 = 1 and AB + BA = 0", worst.identity, 1e-10, 0.0, "max"));
  r.targets.push_back(make_target("unitary_conjugation", "Kato unitary and sgn(B) carry P to Q when ||P - Q|| < 1",
                                  worst.conjugation, 1e-9, 0.0, "max"));
  r.targets.push_back(make_target("trace_index_integer", "trace(P - Q) is an integer", worst.index_dev, 1e-8, 0.0, "max"));
  r.targets.push_back(make_target("halmos_reconstruction", "two-projection normal form reproduces Q", worst.halmos, 1e-8, 0.0, "max"));
  r.targets.push_back(make_target("oblique_norm_symmetry", "||Pi|| = ||1 - Pi|| for an idempotent", oblique_sym, 1e-9, 0.0, "max"));
  r.targets.push_back(make_target("ljance_formula", "||Pi|| from the angle between range and kernel", oblique_ljance, 1e-8, 0.0, "max"));
}

// adiabatic ------------------------------------------------------------------

OperatorPath sampled_path(const Json& j, Index band) {
  require(j.contains("samples") && j["samples"].is_array() && j["samples"].size() >= 2,
          "malformed path file: needs at least two samples");
  std::vector<CMatrix> samples;
  for (const auto& m : j["samples"]) samples.push_back(matrix_from_json(m));
  for (const auto& m : samples) HermitianMatrix check(m);
  OperatorPath p;
  p.H = [samples](double s) {
    const double x = std::clamp(s, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(x), samples.size() - 2);
    const double f = x - static_cast<double>(i);
    return HermitianMatrix((1.0 - f) * samples[i] + f * samples[i + 1], 1e-10);
  };
  p.band = band;
  return p;
}

void run_adiabatic(const ExperimentConfig& c, ResultRecord& r) {
  const std::string name = c.get("path");
  r.experiment_id = "adiabatic." + name;
  OperatorPath path;
  if (name == "two-level") {
    path = paths::two_level_rotation();
  } else if (name == "three-level") {
    path = paths::three_level(c.get_double("gap"));
  } else if (name == "bloch") {
    path = paths::bloch_loop(c.get_double("theta"));
  } else if (name == "file") {
    path = sampled_path(read_json_file(c.get("path_file")), c.get_int("band"));
  } else {
    fail("malformed config: adiabatic.path must be two-level, three-level, bloch or file");
  }
  const int steps = static_cast<int>(c.get_int("steps"));
  const auto tr = kato_transport(path, steps);
  r.outputs["intertwining_defect"] = tr.intertwining_defect;
  r.outputs["unitarity_defect"] = tr.unitarity_defect;
  r.targets.push_back(make_target("intertwining", "Kato transport carries P(0) to P(s)", tr.intertwining_defect, 1e-8, 0.0, "max"));

  const auto ts = c.get_list("T");
  std::vector<double> defects;
  r.table.columns = {"T", "defect"};
  for (double t : ts) {
    // Keep T h |H| near 0.025 so the integrator error stays far below the defect.
    const int n = std::max(steps, static_cast<int>(std::ceil(40.0 * t)));
    defects.push_back(adiabatic_defect(path, t, n));
    r.table.rows.push_back({t, defects.back()});
  }
  r.outputs["T"] = json_array(ts);
  r.outputs["defects"] = json_array(defects);
  if (ts.size() >= 2) {
    const double slope = slope_of(ts, defects);
    r.outputs["defect_slope"] = slope;
    r.targets.push_back(make_target("defect_slope", "adiabatic defect decays like 1/T", slope, -1.0, 0.15));
  }
  if (name == "bloch") {
    const double a = berry_phase(path, steps), b = berry_phase(path, 2 * steps);
    r.outputs["berry_phase"] = b;
    r.outputs["berry_phase_coarse"] = a;
    r.outputs["half_solid_angle"] = kPi * (1.0 - std::cos(c.get_double("theta")));
    r.targets.push_back(make_target("berry_step_agreement", "holonomy phase stable under step refinement",
                                    std::abs(std::remainder(a - b, 2.0 * kPi)), 1e-6, 0.0, "max"));
  }
}

// resum ----------------------------------------------------------------------

PowerSeries build_series(const ExperimentConfig& c, int order) {
  const std::string s = c.get("series");
  if (s == "zero") return PowerSeries::zero(order);
  if (s == "geometric") return PowerSeries::geometric(order);
  if (s == "euler") return PowerSeries::euler(order);
  if (s == "exponential") return PowerSeries::exponential(order);
  if (s == "quartic") return bender_wu(order, 4 * order + 40);
  if (s == "inline") return PowerSeries(c.get_list("coeffs"));
  if (s == "file") {
    const Json j = read_json_file(c.get("series_file"));
    require(j.is_array(), "malformed series file: expected a JSON array");
    return PowerSeries(j.get<std::vector<double>>());
  }
  fail("malformed config: resum.series must be zero, geometric, euler, exponential, quartic, inline or file");
}

// Closed-form sum where one is known.
std::optional<double> exact_sum(const std::string& s, double z) {
  if (s == "zero") return 0.0;
  if (s == "geometric" && std::abs(z) < 1.0) return 1.0 / (1.0 - z);
  if (s == "exponential") return std::exp(z);
  if (s == "euler" && z >= 0.0) {
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([z](double t) { return std::exp(-t) / (1.0 + z * t); });
  }
  return std::nullopt;
}

void run_resum(const ExperimentConfig& c, ResultRecord& r) {
  const std::string mode = c.get("mode");
  r.experiment_id = "resum." + mode;
  const double z = c.get_double("z");
  const std::string sname = c.get("series");

  if (mode == "pade" || mode == "quartic_pade") {
    const auto nm = c.get_int_list("pade");
    require(nm.size() == 2 && nm[0] >= 0 && nm[1] >= 0, "malformed config: resum.pade expects N,M");
    const int N = static_cast<int>(nm[0]), M = static_cast<int>(nm[1]);
    const int order = std::max(static_cast<int>(c.get_int("order")), N + M);
    const PowerSeries series = mode == "quartic_pade" ? bender_wu(order, 4 * order + 40) : build_series(c, order);
    const auto ra = pade(series, N, M);
    const double value = ra(z);
    r.outputs["N"] = N;
    r.outputs["M"] = M;
    r.outputs["numerator"] = json_array(ra.p);
    r.outputs["denominator"] = json_array(ra.q);
    r.outputs["value"] = value;
    r.table.columns = {"N", "pade_value"};
    for (int k = 0; 2 * k <= order && k <= std::max(N, M); ++k) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = pade(series, k, k)(z);
      } catch (const Error&) {
      }
      r.table.rows.push_back({double(k), v});
    }
    if (mode == "quartic_pade") {
      const double oracle = quartic_ground_energy(z);
      r.outputs["oracle"] = oracle;
      r.targets.push_back(make_target("pade_vs_operator", "diagonal Pade sum against the discretized ground energy",
                                      value, oracle, 1e-3));
    } else if (const auto ex = exact_sum(sname, z)) {
      r.outputs["exact"] = *ex;
      r.targets.push_back(make_target("pade_vs_exact", "Pade value against the closed-form sum", value, *ex,
                                      sname == "euler" ? 1e-6 : 1e-10));
    }
    return;
  }
  if (mode == "borel") {
    const int order = static_cast<int>(c.get_int("order"));
    const auto series = build_series(c, order);
    const std::string cont = c.get("continuation");
    require(cont == "pade" || cont == "taylor", "malformed config: resum.continuation must be pade or taylor");
    const auto br = borel_sum(series, z, static_cast<int>(c.get_int("borel_m")),
                              cont == "pade" ? Continuation::pade : Continuation::taylor);
    r.outputs["value"] = br.value;
    r.outputs["error_estimate"] = br.error_estimate;
    r.outputs["pade_order"] = br.pade_order;
    r.outputs["method"] = br.method;
    if (const auto ex = exact_sum(sname, z)) {
      r.outputs["exact"] = *ex;
      r.table.columns = {"n", "partial_sum_error"};
      for (int n = 0; n <= series.order(); ++n) r.table.rows.push_back({double(n), std::abs(series.truncated(n)(z) - *ex)});
      if (c.get_int("borel_m") == 1)
        r.targets.push_back(make_target("borel_vs_exact", "Borel sum against the closed-form sum", br.value, *ex, 1e-6));
    }
    return;
  }
  if (mode == "stieltjes") {
    const int k = static_cast<int>(c.get_int("hankel_k"));
    const auto series = build_series(c, std::max(static_cast<int>(c.get_int("order")), 2 * k));
    const auto st = hankel_stieltjes_test(series, k);
    Json statuses = Json::array();
    long pd = 0;
    for (auto s : st) {
      statuses.push_back(to_string(s));
      pd += s == HankelStatus::positive_definite;
    }
    r.outputs["hankel"] = statuses;
    r.outputs["positive_definite_blocks"] = pd;
    if (sname == "euler")
      r.targets.push_back(make_target("moment_positivity", "factorial moments give positive Hankel blocks", double(pd),
                                      double(k), 0.0));
    return;
  }
  if (mode == "trotter") {
    Rng rng(c.seed);
    const Index dim = c.get_int("dim");
    require(dim >= 2, "malformed config: resum.dim must be at least 2");
    const HermitianMatrix a = random_hermitian(dim, rng);
    const HermitianMatrix b = random_hermitian(dim, rng);
    const double t = c.get_double("t");
    std::vector<double> ns, errs;
    r.table.columns = {"n", "error"};
    for (long n : c.get_int_list("n")) {
      require(n >= 1, "malformed config: resum.n entries must be positive");
      ns.push_back(double(n));
      errs.push_back(lie_trotter_error(a, b, t, static_cast<int>(n)));
      r.table.rows.push_back({ns.back(), errs.back()});
    }
    r.outputs["errors"] = json_array(errs);
    if (ns.size() >= 2) {
      const double slope = slope_of(ns, errs);
      r.outputs["error_slope"] = slope;
      r.targets.push_back(make_target("trotter_slope", "product formula error decays like 1/n", slope, -1.0, 0.1));
    }
    return;
  }
  if (mode == "alternating") {
    const double theta = c.get_double("theta");
    CMatrix e = CMatrix::Zero(3, 2), f = CMatrix::Zero(3, 2);
    e(0, 0) = f(0, 0) = 1.0;
    e(1, 1) = 1.0;
    f(1, 1) = std::cos(theta);
    f(2, 1) = std::sin(theta);
    const auto p = OrthogonalProjection::onto_span(e), q = OrthogonalProjection::onto_span(f);
    const int n_max = static_cast<int>(c.get_int("n_max"));
    const auto d = alternating_projection_distances(p, q, n_max);
    bool monotone = true;
    r.table.columns = {"n", "distance"};
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i > 0 && d[i] > d[i - 1] + 1e-15) monotone = false;
      r.table.rows.push_back({double(i + 1), d[i]});
    }
    r.outputs["monotone"] = monotone;
    r.outputs["final_distance"] = d.empty() ? 0.0 : d.back();
    r.targets.push_back(make_target("monotone", "distance to the intersection projection never increases",
                                    monotone ? 1.0 : 0.0, 1.0, 0.0));
    if (n_max >= 200)
      r.targets.push_back(make_target("converged", "(PQ)^n reaches the intersection projection", d.back(), 1e-6, 0.0, "max"));
    return;
  }
  fail("malformed config: resum.mode must be pade, borel, stieltjes, quartic_pade, trotter or alternating");
}

// models ---------------------------------------------------------------------

void run_models(const ExperimentConfig& c, ResultRecord& r) {
  const std::string name = c.get("name");
  r.experiment_id = "models." + name;
  if (name == "helium") {
    const double ratio = c.get_double("mass_ratio");
    const auto s = helium_shells(ratio);
    r.outputs["alpha"] = s.alpha;
    r.outputs["unbounded"] = s.unbounded;
    if (s.unbounded) {
      r.outputs["k_max"] = nullptr;
      r.outputs["count"] = nullptr;
      return;
    }
    r.outputs["k_max"] = s.k_max;
    r.outputs["count"] = s.count;
    if (ratio == kAlphaParticleMassRatio) {
      r.targets.push_back(make_target("k_max", "42 shells for the alpha-particle mass", double(s.k_max), 42.0, 0.0));
      r.targets.push_back(make_target("count", "at least 25585 bound states", double(s.count), 25585.0, 0.0));
    }
    return;
  }
  if (name == "wvn") {
    const double r_max = c.get_double("r_max");
    const long n = c.get_int("grid");
    require(r_max > 1e-3 && n >= 2, "malformed config: models.r_max or models.grid");
    double res = 0.0, tail_lo = 0.0, tail_hi = 0.0;
    for (long i = 0; i < n; ++i) {
      const double x = 1e-3 + (r_max - 1e-3) * static_cast<double>(i) / static_cast<double>(n - 1);
      const double u = wvn_eigenfunction(x);
      res = std::max(res, std::abs(-wvn_eigenfunction_d2(x) + wvn_potential(x) * u - u));
      if (x >= 10.0) {
        const double t = std::abs(wvn_potential(x) + 8.0 * std::sin(2.0 * x) / x) * x * x;
        (x < 50.0 ? tail_lo : tail_hi) = std::max(x < 50.0 ? tail_lo : tail_hi, t);
      }
    }
    r.outputs["residual"] = res;
    r.outputs["tail_constant_10_50"] = tail_lo;
    r.outputs["tail_constant_50_100"] = tail_hi;
    r.targets.push_back(make_target("eigenvalue_residual", "u solves -u'' + V u = u", res, 1e-6, 0.0, "max"));
    if (r_max >= 100.0) {
      r.targets.push_back(make_target("tail_bounded", "r^2 |V + 8 sin(2r)/r| bounded on [10, 100]",
                                      std::max(tail_lo, tail_hi), 44.0, 0.0, "max"));
    }
    return;
  }
  if (name == "invert") {
    // The embedded-eigenvalue state is positive on (0, pi).
    const long n = c.get_int("grid");
    const double x0 = 0.05, x1 = 3.0;
    const double h = (x1 - x0) / static_cast<double>(n - 1);
    std::vector<double> psi;
    for (long i = 0; i < n; ++i) psi.push_back(wvn_eigenfunction(x0 + h * static_cast<double>(i)));
    const auto inv = eigenfunction_to_potential(x0, h, psi, 1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < inv.x.size(); ++i) err = std::max(err, std::abs(inv.V[i] - wvn_potential(inv.x[i])));
    r.outputs["h"] = h;
    r.outputs["max_error"] = err;
    r.targets.push_back(make_target("inversion", "inverted potential matches the closed form to O(h^2)", err,
                                    1e4 * h * h, 0.0, "max"));
    return;
  }
  if (name == "cusp") {
    const double Z = c.get_double("Z");
    const auto cu = hydrogen_cusp(c.get_double("R"), c.get_int("grid"), Z, static_cast<int>(c.get_int("ell")));
    r.outputs["ratio"] = cu.ratio;
    r.outputs["target"] = cu.target;
    r.outputs["h"] = cu.h;
    r.outputs["energy"] = cu.energy;
    r.outputs["reference_error"] = cu.reference_error;
    r.outputs["average_value"] = cu.average_value;
    r.outputs["average_derivative"] = cu.average_derivative;
    if (cu.ell == 0) {
      r.targets.push_back(make_target("cusp_ratio", "cusp condition psi'(0) = -Z/2 psi(0)", cu.ratio, cu.target, 5.0 * cu.h));
      r.targets.push_back(make_target("reference_state", "ground state is exp(-Z r / 2)", cu.reference_error, 1e-3, 0.0, "max"));
    } else {
      r.targets.push_back(make_target("cusp_trivial", "spherical average vanishes for ell >= 1",
                                      std::abs(cu.average_derivative - cu.target * cu.average_value), 0.0, 0.0, "max"));
    }
    return;
  }
  if (name == "hardy" || name == "rellich") {
    const int nu = static_cast<int>(c.get_int("nu"));
    const double R = c.get_double("r_hardy"), rmin = c.get_double("r_min");
    const Index n = c.get_int("grid");
    if (name == "hardy") {
      const double v = hardy_constant(nu, R, n, rmin);
      r.outputs["value"] = v;
      r.targets.push_back(make_target("hardy", "optimal Hardy constant (nu - 2)^2 / 4", v, 0.25 * (nu - 2.0) * (nu - 2.0),
                                      0.02, "rel"));
    } else {
      const double v = rellich_constant(nu, R, n, rmin);
      r.outputs["value"] = v;
      r.targets.push_back(make_target("rellich", "optimal Rellich constant nu (nu - 4) / 4", v, 0.25 * nu * (nu - 4.0),
                                      0.05, "rel"));
    }
    return;
  }
  if (name == "rank_one") {
    const auto kind = rank_one_kind_from_string(c.get("psi_kind"));
    const double beta = c.get_double("beta");
    r.outputs["E"] = rank_one_eigenvalue(beta, kind);
    const auto betas = log_points(c.get_double("beta_min"), c.get_double("beta_max"), c.get_int("points"));
    const auto fit = rank_one_fit(kind, betas);
    r.outputs["fit_basis"] = fit.basis;
    r.outputs["fit_coefficients"] = json_array(fit.coeffs);
    r.table.columns = {"beta", "E"};
    for (double b : betas) r.table.rows.push_back({b, rank_one_eigenvalue(b, kind)});
    if (kind == RankOneKind::inv_sqrt) {
      r.outputs["E_exact"] = rank_one_inv_sqrt_exact(beta);
      r.targets.push_back(make_target("sqrt_coefficient", "E = -1 + beta^1/2 - beta/2 + ...", fit.coeffs[0], 1.0, 1e-2));
      r.targets.push_back(make_target("linear_coefficient", "E = -1 + beta^1/2 - beta/2 + ...", fit.coeffs[1], -0.5, 5e-2));
      r.targets.push_back(make_target("closed_form", "secular root against the exact root", r.outputs["E"].get<double>(),
                                      rank_one_inv_sqrt_exact(beta), 1e-10));
    } else if (kind == RankOneKind::inv) {
      r.targets.push_back(make_target("linear_coefficient", "E = -1 + beta - 2 beta^3/2 + ...", fit.coeffs[0], 1.0, 1e-2));
    } else {
      // E rises above -1 since beta x^2 >= 0, so the log term enters as beta log(1/beta).
      r.targets.push_back(make_target("log_coefficient", "E = -1 - beta log beta + O(beta)", fit.coeffs[0], -1.0, 5e-2));
    }
    return;
  }
  if (name == "half_pi") {
    const auto hp = kato_half_pi(c.get_double("k_min"), c.get_double("k_max"), c.get_int("n_log"));
    r.outputs["top_eigenvalue"] = hp.top_eigenvalue;
    r.outputs["a9_integral"] = hp.a9_integral;
    r.outputs["odd_sum"] = hp.odd_sum;
    r.targets.push_back(make_target("top_eigenvalue", "sharp constant pi/2 of the |x|^-1 bound", hp.top_eigenvalue,
                                    kPi / 2.0, 0.01, "rel"));
    r.targets.push_back(make_target("log_integral", "integral equals pi^2/4", hp.a9_integral, kPi * kPi / 4.0, 1e-6));
    r.targets.push_back(make_target("odd_sum", "sum of odd inverse squares is pi^2/8", hp.odd_sum, kPi * kPi / 8.0, 1e-8));
    return;
  }
  fail("malformed config: models.name must be helium, wvn, invert, cusp, hardy, rellich, rank_one or half_pi");
}

Json target_json(const Target& t) {
  return Json{{"name", t.name},           {"reference", t.reference}, {"value", t.value}, {"expected", t.expected},
              {"tolerance", t.tolerance}, {"comparison", t.comparison}, {"pass", t.pass}};
}

}  // namespace

Target make_target(std::string name, std::string reference, double value, double expected, double tolerance,
                   std::string comparison) {
  Target t{std::move(name), std::move(reference), value, expected, tolerance, std::move(comparison), false};
  if (t.comparison == "abs") {
    t.pass = std::abs(value - expected) <= tolerance;
  } else if (t.comparison == "rel") {
    t.pass = std::abs(value - expected) <= tolerance * std::abs(expected);
  } else if (t.comparison == "max") {
    t.pass = value <= expected;
  } else {
    fail("unknown comparison: " + t.comparison);
  }
  return t;
}

bool ResultRecord::pass() const {
  return std::all_of(targets.begin(), targets.end(), [](const Target& t) { return t.pass; });
}

bool SweepResult::pass() const {
  return std::all_of(records.begin(), records.end(), [](const ResultRecord& r) { return r.pass(); });
}

std::string version() { return KATOLAB_VERSION; }

ResultRecord run(const ExperimentConfig& config) {
  if (sweep_axis(config)) fail("ranged parameter: use sweep");
  const auto start = std::chrono::steady_clock::now();
  ResultRecord r;
  r.subcommand = config.subcommand;
  r.seed = config.seed;
  r.version = version();
  for (const auto& [k, v] : config.params) r.inputs[k] = v;
  try {
    if (config.subcommand == "perturb") run_perturb(config, r);
    else if (config.subcommand == "temple") run_temple(config, r);
    else if (config.subcommand == "projections") run_projections(config, r);
    else if (config.subcommand == "adiabatic") run_adiabatic(config, r);
    else if (config.subcommand == "resum") run_resum(config, r);
    else if (config.subcommand == "models") run_models(config, r);
    else fail("unknown subcommand: " + config.subcommand);
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + " (in " + config.subcommand + ")");
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SweepResult sweep(const ExperimentConfig& config, unsigned workers) {
  const auto axis = sweep_axis(config);
  if (!axis) fail("sweep needs one ranged parameter");
  SweepResult out;
  out.axis = *axis;
  out.values = expand_range(config.params.at(*axis));
  const std::size_t n = out.values.size();
  out.records.resize(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        ExperimentConfig point = config;
        point.params[*axis] = out.values[i];
        out.records[i] = run(point);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t count = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Json to_json(const ResultRecord& r, bool include_wall_time) {
  Json j;
  j["experiment_id"] = r.experiment_id;
  j["subcommand"] = r.subcommand;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["inputs"] = r.inputs;
  j["outputs"] = r.outputs;
  j["targets"] = Json::array();
  for (const auto& t : r.targets) j["targets"].push_back(target_json(t));
  j["pass"] = r.pass();
  if (!r.table.columns.empty()) {
    j["table"]["columns"] = r.table.columns;
    j["table"]["rows"] = r.table.rows;
  }
  if (include_wall_time) j["wall_time_s"] = r.wall_time;
  return j;
}

Json to_json(const SweepResult& s, bool include_wall_time) {
  Json j;
  j["sweep_axis"] = s.axis;
  j["values"] = s.values;
  j["pass"] = s.pass();
  j["records"] = Json::array();
  for (const auto& r : s.records) j["records"].push_back(to_json(r, include_wall_time));
  return j;
}

std::string format_csv_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_csv_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return "";
}

}  // namespace

std::string to_csv(const ResultRecord& r) {
  std::ostringstream out;
  if (!r.table.columns.empty()) {
    for (std::size_t i = 0; i < r.table.columns.size(); ++i) out << (i ? "," : "") << r.table.columns[i];
    out << "\n";
    for (const auto& row : r.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_csv_double(row[i]);
      out << "\n";
    }
    return out.str();
  }
  out << "key,value\n";
  for (const auto& [k, v] : r.outputs.items())
    if (v.is_primitive()) out << k << "," << csv_cell(v) << "\n";
  return out.str();
}

std::string to_csv(const SweepResult& s) {
  std::ostringstream out;
  std::vector<std::string> cols;
  if (!s.records.empty())
    for (const auto& [k, v] : s.records.front().outputs.items())
      if (v.is_primitive()) cols.push_back(k);
  out << s.axis;
  for (const auto& c : cols) out << "," << c;
  out << ",pass\n";
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    out << s.values[i];
    for (const auto& c : cols) out << "," << (s.records[i].outputs.contains(c) ? csv_cell(s.records[i].outputs[c]) : "");
    out << "," << (s.records[i].pass() ? "true" : "false") << "\n";
  }
  return out.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) fail("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail("cannot write " + path + ": " + ec.message());
  }
}

HermitianMatrix random_hermitian(Index n, Rng& rng) {
  const CMatrix x = random_complex(n, n, rng);
  return HermitianMatrix(0.5 * (x + x.adjoint()));
}

CMatrix random_complex(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return m;
}

CMatrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty() && j[0].is_array(), "malformed matrix: expected an array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    require(row.is_array() && static_cast<Index>(row.size()) == cols, "malformed matrix: ragged rows");
    for (Index k = 0; k < cols; ++k) {
      const auto& e = row[static_cast<std::size_t>(k)];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        fail("malformed matrix: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

}  // namespace katolab
