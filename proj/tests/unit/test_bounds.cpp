#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "vandcond/bounds.hpp"
#include "vandcond/error.hpp"
#include "vandcond/spectral.hpp"

using namespace vandcond;

namespace {

double l10(double x) { return std::log10(x); }

// Independent spectral norm via Eigen's Jacobi SVD.
double jacobi_norm(const MatrixXc& m) { return Eigen::JacobiSVD<MatrixXc>(m).singularValues()(0); }

std::vector<double> jacobi_sigma(const MatrixXc& m) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<MatrixXc>(m).singularValues();
  return {s.data(), s.data() + s.size()};
}

KnotVector rotated(const KnotVector& s, cplx w) {
  std::vector<cplx> p(s.begin(), s.end());
  for (auto& z : p) z *= w;
  return KnotVector(p, s.label());
}

// (eta, c)-separated pair: T in D(c, a), S outside D(c, eta a)
struct SeparatedInstance {
  KnotVector S, T;
  double eta;
  cplx c;
};

SeparatedInstance random_separated(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1), ang(0, 2 * std::numbers::pi);
  const double eta = 1.1 + 2.0 * u(rng);
  const cplx c(u(rng) - 0.5, u(rng) - 0.5);
  const double a = 0.2 + u(rng);
  const std::size_t m = 1 + static_cast<std::size_t>(u(rng) * 8), l = 1 + static_cast<std::size_t>(u(rng) * 8);
  std::vector<cplx> s, t;
  while (t.size() < l) {
    const cplx z = c + std::polar(a * std::sqrt(u(rng)), ang(rng));
    bool ok = true;
    for (const auto& p : t) ok = ok && std::abs(p - z) > 1e-3;
    if (ok) t.push_back(z);
  }
  while (s.size() < m) {
    const cplx z = c + std::polar(eta * a * (1.0 + 2.0 * u(rng)), ang(rng));
    bool ok = true;
    for (const auto& p : s) ok = ok && std::abs(p - z) > 1e-3;
    if (ok) s.push_back(z);
  }
  return {make_knot_vector(s), make_knot_vector(t), eta, c};
}

}  // namespace

TEST(BoundEasy, SingleOutlierValues) {
  EXPECT_NEAR(bound_easy(single_outlier(64, 73.0 / 64.0)).log10value, l10(4.98e2), l10(1.005));
  const BoundReport big = bound_easy(single_outlier(256, 10.0));
  EXPECT_NEAR(big.log10value, 255.0 - 0.5 * l10(256.0), 1e-12);
  EXPECT_NEAR(big.log10value, 253.0 + l10(6.25), l10(1.005));
  EXPECT_EQ(big.bound_id, BoundId::EasyI);
  EXPECT_FALSE(big.variant.has_value());
}

TEST(BoundEasy, MaxClause) {
  const BoundReport r = bound_easy(roots_of_unity(16));
  EXPECT_EQ(r.log10value, 0.0);
  EXPECT_LT(r.params.at("raw_log10"), 0.0);
}

TEST(BoundCluster, LiteralFormula) {
  const KnotVector s = scaled_cluster(64, 8, 0.5);
  const BoundReport r = bound_cluster(s, 8, 2.0, ClusterNormMode::Literal);
  EXPECT_NEAR(r.log10value, l10(128.0 / (std::sqrt(8.0) * 8.0)), 1e-12);
  EXPECT_NEAR(std::pow(10.0, r.log10value), 5.66, 0.005);
}

TEST(BoundCluster, ComputedNormModes) {
  const KnotVector s = scaled_cluster(64, 8, 0.5);
  const double norm = jacobi_norm(vandermonde(s).eigen());
  const double computed = bound_cluster(s, 8, 2.0, ClusterNormMode::ComputedNorm).log10value;
  EXPECT_NEAR(computed, l10(norm * 128.0 / (std::sqrt(8.0) * 8.0)), 1e-10);
  const double table = bound_cluster(s, 8, 2.0, ClusterNormMode::ComputedNormTable).log10value;
  EXPECT_NEAR(table, l10(norm * 128.0 / (std::sqrt(8.0) * 2.0)), 1e-10);
  EXPECT_NEAR(std::pow(10.0, table), 2.44e2, 2.44);
}

TEST(BoundCluster, SingleSmallKnot) {
  const BoundReport r = bound_cluster(scaled_cluster(8, 1, 0.5), 1, 2.0, ClusterNormMode::Literal);
  EXPECT_NEAR(r.log10value, l10(1.0 / 2.0), 1e-12);
}

TEST(BoundCluster, NotEnoughSmallKnots) {
  try {
    bound_cluster(scaled_cluster(16, 4, 0.5), 5, 2.0, ClusterNormMode::Literal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEnoughSmallKnots);
  }
  EXPECT_THROW(bound_cluster(scaled_cluster(16, 4, 0.5), 4, 2.5, ClusterNormMode::Literal), Error);
}

TEST(BoundRefinedNorm, GeometricSums) {
  EXPECT_NEAR(bound_refined_norm(make_knot_vector({10.0, 1.0, -1.0, cplx(0, 1)})).log10value,
              l10(9999.0 / (9.0 * 2.0)), 1e-12);
  const KnotVector s = single_outlier(8, 2.0);
  EXPECT_NEAR(bound_refined_norm(s).log10value, l10(255.0 / std::sqrt(8.0)), 1e-12);
  // never above the computed spectral norm
  EXPECT_LE(bound_refined_norm(s).log10value, l10(jacobi_norm(vandermonde(s).eigen())) + 1e-12);
  const KnotVector t = single_outlier(64, 1.14);
  EXPECT_GE(bound_refined_norm(t).log10value, bound_easy(t).log10value);
  try {
    bound_refined_norm(roots_of_unity(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnitRadius);
  }
}

TEST(BoundCv, UniformKnotsDiscrepancy) {
  const KnotVector s = roots_of_unity(8);
  const cplx f = std::polar(1.0, 0.1);
  const BoundReport dc = bound_cv(s, f, InverseVariant::DerivativeCorrected);
  const BoundReport pe = bound_cv(s, f, InverseVariant::PaperEq5);
  EXPECT_LE(dc.log10value, 0.0);
  EXPECT_GT(pe.log10value, 0.0);
  EXPECT_EQ(*dc.variant, InverseVariant::DerivativeCorrected);
  // max entry never exceeds the spectral norm of the inverse
  EXPECT_LE(dc.params.at("log10_max_inverse_entry"), dc.params.at("log10_inverse_norm_svd") + 1e-10);
}

TEST(BoundCv, QuasiCyclicWitness) {
  const KnotVector s = quasi_cyclic(48);
  const cplx f = cplx(0, -1) * unit_root(1, 64);
  EXPECT_GE(bound_cv(s, f, InverseVariant::PaperEq5).log10value, l10(1773.6));
}

TEST(BoundCv, NudgesOffCollisions) {
  const BoundReport r = bound_cv(roots_of_unity(8), 1.0, InverseVariant::DerivativeCorrected);
  EXPECT_GE(r.params.at("nudges"), 1.0);
  EXPECT_TRUE(std::isfinite(r.log10value));
  EXPECT_THROW(bound_cv(roots_of_unity(8), 2.0, InverseVariant::DerivativeCorrected), Error);
}

TEST(BoundCircleValue, Examples) {
  const BoundReport q = bound_circle_value(quasi_cyclic(48), default_circle_grid(48));
  EXPECT_GE(q.log10value, l10(1773.6));
  EXPECT_TRUE(q.applicable);
  const BoundReport d = bound_circle_value(roots_of_unity(8), 1024);
  EXPECT_NEAR(d.log10value, 0.5 * l10(8.0), 1e-12);
  EXPECT_EQ(*d.variant, InverseVariant::PaperEq5);
  const BoundReport z = bound_circle_value(make_knot_vector({0.0}), 64);
  EXPECT_NEAR(z.log10value, -l10(2.0), 1e-12);
  EXPECT_FALSE(bound_circle_value(single_outlier(8, 2.0), 256).applicable);
}

TEST(BoundCoeffNorm, Examples) {
  EXPECT_NEAR(bound_coeff_norm(roots_of_unity(8)).log10value, l10(0.5 * std::sqrt(2.0) * 3.0), 1e-12);
  EXPECT_NEAR(bound_coeff_norm(make_knot_vector({0.0, 1.0})).log10value, l10(0.5 * std::sqrt(2.0) * std::sqrt(3.0)),
              1e-12);
  EXPECT_FALSE(bound_coeff_norm(single_outlier(8, 2.0)).applicable);
}

TEST(BoundCoeffNorm, ParsevalAgainstSampledValues) {
  const KnotVector s = quasi_cyclic(24);
  const BoundReport cn = bound_coeff_norm(s);
  const BoundReport cv = bound_circle_value(s, default_circle_grid(24));
  EXPECT_NEAR(cv.params.at("v_half_log10_omega_n_plus_1"), cn.log10value, 1e-10);
  // sampled values never beat the maximum: ||v|| <= sqrt(n+1) max|s(f)|
  EXPECT_LE(cn.log10value, cv.log10value + 0.5 * l10(25.0 / 24.0) + 1e-12);
}

TEST(BoundQuasiCyclic, ClosedForms) {
  EXPECT_NEAR(std::pow(10.0, bound_quasi_cyclic(16, QuasiCyclicMode::Base).log10value), 1024 * std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(std::pow(10.0, bound_quasi_cyclic(16, QuasiCyclicMode::Base).log10value), 1773.6, 0.1);
  EXPECT_NEAR(std::pow(10.0, bound_quasi_cyclic(16, QuasiCyclicMode::Eq15).log10value), 15417, 1.0);
  EXPECT_NEAR(std::pow(10.0, bound_quasi_cyclic(16, QuasiCyclicMode::Eq16).log10value), 27598, 1.0);
}

TEST(BoundQuasiCyclic, IntegralColumn) {
  const std::pair<std::size_t, double> rows[] = {{4, 1.03e1}, {8, 1.06e2}, {16, 1.13e4}, {32, 1.27e8}};
  for (const auto& [q, v] : rows) {
    const BoundReport r = bound_quasi_cyclic(q, QuasiCyclicMode::Integral);
    EXPECT_NEAR(std::pow(10.0, r.log10value) / v, 1.0, 0.01) << q;
    EXPECT_NEAR(r.log10value / r.params.at("closed_form_log10"), 1.0, 1e-9);
  }
}

TEST(BoundQuasiCyclic, SimpsonMatchesCatalanClosedForm) {
  for (std::size_t q : {1, 3, 4, 16, 100})
    EXPECT_NEAR(integral_exponent(q) / integral_exponent_closed_form(q), 1.0, 1e-9) << q;
}

TEST(BoundQuasiCyclic, MonotoneStaging) {
  for (std::size_t q : {16, 32}) {
    const double base = bound_quasi_cyclic(q, QuasiCyclicMode::Base).log10value;
    const double e15 = bound_quasi_cyclic(q, QuasiCyclicMode::Eq15).log10value;
    const double e16 = bound_quasi_cyclic(q, QuasiCyclicMode::Eq16).log10value;
    const double prod = bound_quasi_cyclic(q, QuasiCyclicMode::Product).log10value;
    EXPECT_LE(base, e15);
    EXPECT_LE(e15, e16);
    EXPECT_LE(e16, prod);
  }
}

TEST(BoundQuasiCyclic, ShapeChecks) {
  try {
    bound_quasi_cyclic(12, QuasiCyclicMode::Base);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadShape);
  }
  EXPECT_THROW(bound_quasi_cyclic(6, QuasiCyclicMode::Product), Error);
  EXPECT_FALSE(bound_quasi_cyclic(8, QuasiCyclicMode::Eq15).note.empty());
  EXPECT_NO_THROW(bound_quasi_cyclic(12, QuasiCyclicMode::Integral));
}

TEST(BoundDftBlock, Values) {
  EXPECT_NEAR(std::pow(10.0, bound_dft_block(8, DftBlockMode::Base).log10value), 2.0 * std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(std::pow(10.0, bound_dft_block(32, DftBlockMode::Integral).log10value) / 1.13e4, 1.0, 0.01);
  EXPECT_NEAR(bound_dft_block(2, DftBlockMode::Base).log10value, 0.0, 1e-15);
  const std::pair<std::size_t, double> table[] = {{8, 8.00}, {16, 45.3}, {32, 1.02e3}, {64, 3.71e5}};
  for (const auto& [n, v] : table)
    EXPECT_NEAR(std::pow(10.0, bound_dft_block(n, DftBlockMode::Base).params.at("table_reconstruction_log10")) / v,
                1.0, 0.005);
  try {
    bound_dft_block(7, DftBlockMode::Base);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OddSize);
  }
}

TEST(Separation, Predicate) {
  EXPECT_TRUE(is_separated(make_knot_vector({2.0}), make_knot_vector({0.0}), 2.0, 0.0));
  EXPECT_FALSE(is_separated(make_knot_vector({2.0}), make_knot_vector({1.5}), 2.0, 0.0));
}

TEST(Separation, OneByOneEquality) {
  const KnotVector S = make_knot_vector({2.0}), T = make_knot_vector({0.0});
  const BoundReport r = sigma_bound_separated(S, T, 2.0, 0.0, 1);
  EXPECT_NEAR(r.log10value, l10(2.0), 1e-15);
  EXPECT_NEAR(-l10(jacobi_sigma(cauchy(S, T).eigen())[0]), l10(2.0), 1e-15);
}

TEST(Separation, StatedFactorOverestimatesWhenTNotAtCenter) {
  // s = 2, t = 1, c = 0, eta = 2: C = [1], 1/sigma_1 = 1 < (eta - 1) delta = 2
  const KnotVector S = make_knot_vector({2.0}), T = make_knot_vector({1.0});
  const BoundReport r = sigma_bound_separated(S, T, 2.0, 0.0, 1);
  EXPECT_GT(r.log10value, 0.0);
  EXPECT_LE(r.params.at("rigorous_log10"), 0.0 + 1e-15);
}

TEST(Separation, RigorousVariantHoldsOnRandomInstances) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const SeparatedInstance in = random_separated(rng);
    ASSERT_TRUE(is_separated(in.S, in.T, in.eta, in.c));
    const auto sigma = jacobi_sigma(cauchy(in.S, in.T).eigen());
    for (std::size_t rho = 1; rho <= sigma.size(); ++rho) {
      const BoundReport r = sigma_bound_separated(in.S, in.T, in.eta, in.c, rho);
      if (sigma[rho - 1] <= 1e-14 * sigma[0]) continue;
      EXPECT_LE(r.params.at("rigorous_log10"), -l10(sigma[rho - 1]) + 1e-9);
    }
  }
}

TEST(Separation, NotSeparatedError) {
  try {
    sigma_bound_separated(make_knot_vector({2.0}), make_knot_vector({1.5}), 2.0, 0.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSeparated);
  }
}

TEST(ArcCertificate, Invariants) {
  const KnotVector s = quasi_cyclic(48);
  const cplx f = std::polar(1.0, 0.05);
  for (std::size_t l = 1; l <= 24; l += 5)
    for (std::size_t j = 0; j + l <= 48; j += 7) {
      const SeparationCertificate c = arc_certificate(s, f, j, j + l - 1, 1.2);
      EXPECT_EQ(c.l, l);
      EXPECT_EQ(c.m_minus + c.m_plus, 48u);
      EXPECT_EQ(c.rho_bar, static_cast<long>(l) - static_cast<long>(c.m_minus));
      const cplx tl = f * unit_root(static_cast<std::int64_t>(j), 48);
      const cplx th = f * unit_root(static_cast<std::int64_t>(j + l - 1), 48);
      EXPECT_LT(std::abs(c.c - 0.5 * (tl + th)), 1e-15);
      EXPECT_NEAR(c.r, std::abs(c.c - tl), 1e-15);
      std::size_t inside = 0;
      for (const auto& z : s) inside += std::abs(z - c.c) < c.eta * c.r;
      EXPECT_LE(c.m_minus, inside);
      // the arc itself is (eta, c)-separated from the exterior knots
      std::vector<cplx> outer, arc;
      for (const auto& z : s)
        if (!(std::abs(z - c.c) < c.eta * c.r - 1e-14)) outer.push_back(z);
      for (std::size_t k = j; k < j + l; ++k) arc.push_back(f * unit_root(static_cast<std::int64_t>(k), 48));
      if (!outer.empty())
        EXPECT_TRUE(is_separated(make_knot_vector(outer), make_knot_vector(arc), c.eta * (1 - 1e-12), c.c));
    }
}

TEST(ArcCertificate, EvenlySpacedKnotsGiveSmallDeficiency) {
  const KnotVector s = roots_of_unity(16);
  const cplx f = std::polar(1.0, 0.1);
  for (std::size_t l = 1; l <= 8; ++l)
    for (std::size_t j = 0; j + l <= 16; ++j) EXPECT_LE(arc_certificate(s, f, j, j + l - 1, 1.1).rho_bar, 2);
}

TEST(ArcCertificate, QuasiCyclicLowerHalfHasDeficiency) {
  const KnotVector s = quasi_cyclic(48);
  long best = -100;
  for (std::size_t l = 2; l <= 24; ++l)
    for (std::size_t j = 24; j + l <= 48; ++j)
      best = std::max(best, arc_certificate(s, unit_root(1, 96), j, j + l - 1, 1.2).rho_bar);
  EXPECT_GT(best, 0);
}

TEST(ArcCertificate, Errors) {
  const KnotVector s = roots_of_unity(8);
  try {
    arc_certificate(s, 1.0, 0, 4, 1.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ArcTooLong);
  }
  const SeparationCertificate one = arc_certificate(s, std::polar(1.0, 0.3), 2, 2, 1.5);
  EXPECT_EQ(one.r, 0.0);
  try {
    bound_arc(s, one, ArcForm::CV);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VacuousCertificate);
  }
}

TEST(BoundArc, RigorousVariantBelowExplicitInverse) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 30; ++trial) {
    // eight knots on the unit circle, crowded into the upper half
    std::vector<cplx> pts;
    while (pts.size() < 8) {
      const double th = u(rng) < 0.85 ? std::numbers::pi * u(rng) : 2 * std::numbers::pi * u(rng);
      const cplx z = std::polar(1.0, th);
      bool ok = true;
      for (const auto& p : pts) ok = ok && std::abs(p - z) > 1e-3;
      if (ok) pts.push_back(z);
    }
    const KnotVector s = make_knot_vector(pts);
    const cplx f = std::polar(1.0, 2 * std::numbers::pi * u(rng));
    MatrixXc c;
    try {
      c = cv_matrix(s, f, 1e-6).eigen();
    } catch (const KnotCollision&) {
      continue;
    }
    const double inv_norm = -l10(jacobi_sigma(c).back());
    for (std::size_t l = 2; l <= 4; ++l)
      for (std::size_t j = 0; j + l <= 8; ++j)
        for (double eta : {1.1, 1.5}) {
          const SeparationCertificate cert = arc_certificate(s, f, j, j + l - 1, eta);
          if (cert.rho_bar <= 0) continue;
          EXPECT_LE(bound_arc(s, cert, ArcForm::CV).params.at("rigorous_log10"), inv_norm + 1e-9);
          ++checked;
        }
  }
  EXPECT_GT(checked, 0);
}

TEST(BestArcSearch, EvenlySpacedHasNoPositiveBound) {
  const double etas[] = {1.1, 1.2, 1.5};
  for (std::size_t n : {2, 8, 64}) {
    try {
      best_arc_search(roots_of_unity(n), std::polar(1.0, 0.01), etas);
      FAIL() << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NoPositiveBound);
    }
  }
}

TEST(BestArcSearch, QuasiCyclicPositiveAndBelowKappa) {
  const double etas[] = {1.2};
  const KnotVector s = quasi_cyclic(96);
  const ArcSearchResult res = best_arc_search(s, cplx(0, -1) * unit_root(1, 192), etas);
  EXPECT_GT(res.report.log10value, 0.0);
  EXPECT_LE(res.report.log10value, singular_values(vandermonde(s)).log10kappa);
  EXPECT_EQ(res.report.bound_id, BoundId::ArcVandermonde);
  EXPECT_GT(res.certificate.rho_bar, 0);
}

TEST(BestArcSearch, RotationInvariance) {
  const double etas[] = {1.1, 1.2, 1.5};
  const KnotVector s = quasi_cyclic(48);
  const cplx f = std::polar(1.0, 0.3);
  const ArcSearchResult a = best_arc_search(s, f, etas);
  for (double th : {0.7, 2.0, -1.3}) {
    const cplx w = std::polar(1.0, th);
    const ArcSearchResult b = best_arc_search(rotated(s, w), f * w, etas);
    EXPECT_NEAR(a.report.log10value, b.report.log10value, 1e-9);
    EXPECT_EQ(a.certificate.l, b.certificate.l);
    EXPECT_EQ(a.certificate.j_lo, b.certificate.j_lo);
    EXPECT_EQ(a.certificate.eta, b.certificate.eta);
  }
}

TEST(BestArcSearch, ExhaustiveNeverWorseThanStrided) {
  const double etas[] = {1.2, 1.5};
  const KnotVector s = quasi_cyclic(96);
  const cplx f = std::polar(1.0, -1.0);
  const ArcSearchResult fast = best_arc_search(s, f, etas);
  const ArcSearchResult full = best_arc_search(s, f, etas, true);
  EXPECT_GE(full.report.log10value, fast.report.log10value - 1e-12);
  EXPECT_THROW(best_arc_search(quasi_cyclic(130), f, etas, true), Error);
}

TEST(Dominance, CorrectedAndArcBoundsNeverExceedKappa) {
  std::vector<KnotVector> configs;
  for (std::size_t n : {64, 128})
    for (double s : {73.0 / 64.0, 25.0 / 16.0}) configs.push_back(single_outlier(n, s));
  for (std::size_t n : {64, 128})
    for (std::size_t k : {8, 16, 32})
      for (double rho : {0.75, 0.5}) configs.push_back(scaled_cluster(n, k, rho));
  for (std::size_t q : {4, 8, 16, 32}) configs.push_back(quasi_cyclic(3 * q));
  const double etas[] = {1.1, 1.2, 1.5};
  for (const auto& s : configs) {
    const double kappa = singular_values(vandermonde(s)).log10kappa;
    const cplx f = max_abs_on_circle(s, default_circle_grid(s.size())).f_star;
    EXPECT_LE(bound_cv(s, f, InverseVariant::DerivativeCorrected).log10value, kappa) << s.label() << s.size();
    if (s.max_abs() <= 1.0 + 1e-12) {
      try {
        EXPECT_LE(best_arc_search(s, f, etas).report.log10value, kappa) << s.label() << s.size();
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoPositiveBound);
      }
    }
  }
}

TEST(BoundReportJson, Shape) {
  const nlohmann::json j = to_json(bound_cv(roots_of_unity(4), std::polar(1.0, 0.2), InverseVariant::PaperEq5));
  EXPECT_EQ(j.at("bound_id"), "CV-Thm4.1");
  EXPECT_EQ(j.at("variant"), "paper-eq5");
  EXPECT_TRUE(j.at("applicable").get<bool>());
  EXPECT_TRUE(j.at("params").is_object());
  EXPECT_TRUE(j.at("log10value").is_number());
  EXPECT_EQ(to_json(bound_easy(roots_of_unity(4))).at("variant"), "n/a");
}
