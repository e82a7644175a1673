#include "vandcond/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include <nlohmann/json.hpp>

#include "vandcond/error.hpp"
#include "vandcond/log_complex.hpp"
#include "vandcond/matrix.hpp"
#include "vandcond/spectral.hpp"

namespace vandcond {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kBoundaryTol = 1e-14;
const double kLog10_2 = std::log10(2.0);

bool is_power_of_two(std::size_t q) { return q != 0 && (q & (q - 1)) == 0; }

void require_unit(cplx f, const char* who) {
  if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) || std::abs(std::abs(f) - 1.0) > kUnitTol)
    throw Error(ErrorKind::InvalidArgument, std::string(who) + ": |f| must be 1");
}

// log10 of the Euclidean norm of values given by their log10 magnitudes.
double log10_norm(const std::vector<double>& logs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double l : logs) top = std::max(top, l);
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double l : logs) acc += std::pow(10.0, 2.0 * (l - top));
  return top + 0.5 * std::log10(acc);
}

BoundReport make(BoundId id, double value) {
  BoundReport r;
  r.bound_id = id;
  r.log10value = value;
  return r;
}

// ln(2 cos((0.5 - x/q) pi/2))
double log_chord(double x, double q) {
  return std::log(2.0 * std::cos((0.5 - x / q) * std::numbers::pi / 2.0));
}

}  // namespace

const char* to_string(BoundId id) noexcept {
  switch (id) {
    case BoundId::EasyI: return "Easy-i";
    case BoundId::EasyII: return "Easy-ii";
    case BoundId::RefinedNorm: return "RefinedNorm";
    case BoundId::CvThm41: return "CV-Thm4.1";
    case BoundId::CircleValue: return "CircleValue";
    case BoundId::CoeffNorm: return "CoeffNorm";
    case BoundId::QuasiCyclicBase: return "QuasiCyclic-base";
    case BoundId::QuasiCyclicEq15: return "QuasiCyclic-eq15";
    case BoundId::QuasiCyclicEq16: return "QuasiCyclic-eq16";
    case BoundId::QuasiCyclicProduct: return "QuasiCyclic-product";
    case BoundId::QuasiCyclicIntegral: return "QuasiCyclic-integral";
    case BoundId::DftBlock: return "DftBlock";
    case BoundId::SeparationSigma: return "Separation-sigma";
    case BoundId::ArcCV: return "Arc-CV";
    case BoundId::ArcVandermonde: return "Arc-Vandermonde";
  }
  return "?";
}

const char* to_string(ClusterNormMode m) noexcept {
  switch (m) {
    case ClusterNormMode::Literal: return "literal";
    case ClusterNormMode::ComputedNorm: return "computed-norm";
    case ClusterNormMode::ComputedNormTable: return "computed-norm-table";
  }
  return "?";
}

const char* to_string(QuasiCyclicMode m) noexcept {
  switch (m) {
    case QuasiCyclicMode::Base: return "base";
    case QuasiCyclicMode::Eq15: return "eq15";
    case QuasiCyclicMode::Eq16: return "eq16";
    case QuasiCyclicMode::Product: return "product";
    case QuasiCyclicMode::Integral: return "integral";
  }
  return "?";
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["bound_id"] = to_string(r.bound_id);
  if (std::isfinite(r.log10value))
    j["log10value"] = r.log10value;
  else
    j["log10value"] = nullptr;
  j["variant"] = r.variant ? nlohmann::json(to_string(*r.variant)) : nlohmann::json("n/a");
  j["applicable"] = r.applicable;
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, v] : r.params) {
    if (std::isfinite(v))
      p[k] = v;
    else
      p[k] = nullptr;
  }
  j["params"] = std::move(p);
  if (!r.note.empty()) j["reason"] = r.note;
  return j;
}

BoundReport bound_easy(const KnotVector& s) {
  const double n = static_cast<double>(s.size());
  const double sp = s.max_abs();
  const double raw = sp > 0 ? (n - 1.0) * std::log10(sp) - 0.5 * std::log10(n)
                            : -std::numeric_limits<double>::infinity();
  BoundReport r = make(BoundId::EasyI, std::max(0.0, raw));
  r.params = {{"n", n}, {"s_plus", sp}, {"raw_log10", raw}};
  return r;
}

BoundReport bound_cluster(const KnotVector& s, std::size_t k, double nu, ClusterNormMode mode) {
  if (!(nu > 1.0)) throw Error(ErrorKind::InvalidArgument, "bound_cluster: nu must exceed 1");
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "bound_cluster: k must be positive");
  std::size_t small = 0;
  for (const auto& z : s)
    if (std::abs(z) * nu <= 1.0 + kUnitTol) ++small;
  if (small < k)
    throw Error(ErrorKind::NotEnoughSmallKnots,
                "NotEnoughSmallKnots: " + std::to_string(small) + " knots with 1/|s| >= nu, need " +
                    std::to_string(k));
  const double n = static_cast<double>(s.size());
  const double kd = static_cast<double>(k);
  double log_norm = 0.0;
  if (mode == ClusterNormMode::Literal) {
    log_norm = std::max(0.0, (n - 1.0) * std::log10(s.max_abs()));
  } else {
    log_norm = std::log10(singular_values(vandermonde(s)).sigma1);
  }
  const double ratio = nu / (nu - 1.0);
  const double denom = mode == ClusterNormMode::ComputedNormTable ? ratio : std::max(kd, ratio);
  const double value =
      log_norm + (kd - 1.0) * std::log10(nu) - 0.5 * std::log10(kd) - std::log10(denom);
  BoundReport r = make(BoundId::EasyII, value);
  r.params = {{"n", n},
              {"k", kd},
              {"nu", nu},
              {"log10_norm_v", log_norm},
              {"small_knots", static_cast<double>(small)},
              {"norm_mode", static_cast<double>(static_cast<int>(mode))}};
  r.note = to_string(mode);
  return r;
}

BoundReport bound_refined_norm(const KnotVector& s) {
  const double sp = s.max_abs();
  if (std::abs(sp - 1.0) < kUnitTol)
    throw Error(ErrorKind::UnitRadius, "UnitRadius: s_+ = 1, geometric sum degenerates");
  const double n = static_cast<double>(s.size());
  // (s_+^n - 1)/(s_+ - 1), kept in the log domain for large s_+
  double log_geo;
  if (sp > 1.0) {
    const double ln_pow = n * std::log(sp);
    log_geo = (ln_pow + std::log1p(-std::exp(-ln_pow)) - std::log(sp - 1.0)) / std::numbers::ln10;
  } else {
    log_geo = std::log10((1.0 - std::pow(sp, n)) / (1.0 - sp));
  }
  BoundReport r = make(BoundId::RefinedNorm, log_geo - 0.5 * std::log10(n));
  r.params = {{"n", n}, {"s_plus", sp}, {"kappa_log10", log_geo - std::log10(n)}};
  r.note = "lower bound on ||V||";
  return r;
}

BoundReport bound_cv(const KnotVector& s, cplx f, InverseVariant variant) {
  require_unit(f, "bound_cv");
  const std::size_t n = s.size();
  const double base = 2.0 * std::numbers::pi / static_cast<double>(n) * 0x1.0p-40;
  cplx fu = f;
  int nudges = 0;
  std::optional<CauchyInverseFactors> factors;
  for (;;) {
    try {
      factors.emplace(CauchyInverseFactors::for_cv(s, fu));
      break;
    } catch (const KnotCollision&) {
      if (nudges == 24) throw;
      fu = f * std::polar(1.0, base * std::ldexp(1.0, nudges));
      ++nudges;
    }
  }
  double max_t = -std::numeric_limits<double>::infinity();
  for (const auto& v : factors->t_at_s()) max_t = std::max(max_t, v.log10mag());
  const double max_entry = factors->max_log10_entry(variant);
  const double nd = static_cast<double>(n);
  BoundReport r = make(BoundId::CvThm41, 0.5 * std::log10(nd) + max_entry - max_t);
  r.variant = variant;
  r.params = {{"n", nd},
              {"f_re", fu.real()},
              {"f_im", fu.imag()},
              {"nudges", static_cast<double>(nudges)},
              {"log10_max_inverse_entry", max_entry},
              {"log10_max_t_at_s", max_t}};
  if (n <= 512) {
    try {
      const SpectrumSummary sv = singular_values(cv_matrix(s, fu, 0.0));
      const double exact = -std::log10(sv.sigma_min);
      r.params["log10_inverse_norm_svd"] = exact;
      r.params["log10value_svd"] = 0.5 * std::log10(nd) + exact - max_t;
    } catch (const Error&) {
      // CV matrix not representable; the entrywise bound stands alone
    }
  }
  return r;
}

BoundReport bound_circle_value(const KnotVector& s, std::size_t grid) {
  const std::size_t n = s.size();
  const double nd = static_cast<double>(n);
  const CircleMax cm = max_abs_on_circle(s, grid);
  BoundReport r = make(BoundId::CircleValue, 0.5 * std::log10(nd) + cm.log10_max - kLog10_2);
  r.variant = InverseVariant::PaperEq5;
  r.applicable = s.max_abs() <= 1.0 + kUnitTol;
  if (!r.applicable) r.note = "requires every knot in the closed unit disc";
  std::vector<double> v1, v0;
  const auto ni = static_cast<std::int64_t>(n);
  for (std::int64_t i = 0; i <= ni; ++i) {
    v1.push_back(log_root_product(s, unit_root(i, ni + 1)).log10mag());
    v0.push_back(log_root_product(s, unit_root(i, ni)).log10mag());
  }
  r.params = {{"n", nd},
              {"grid", static_cast<double>(grid)},
              {"f_re", cm.f_star.real()},
              {"f_im", cm.f_star.imag()},
              {"log10_max_abs", cm.log10_max},
              {"v_half_log10_omega_n_plus_1", log10_norm(v1) - kLog10_2},
              {"v_half_log10_omega_n", log10_norm(v0) - kLog10_2}};
  return r;
}

BoundReport bound_coeff_norm(const KnotVector& s) {
  const std::vector<cplx> c = poly_from_roots(s);
  double acc = 0.0;
  for (const auto& z : c) acc += std::norm(z);
  const double nd = static_cast<double>(s.size());
  BoundReport r = make(BoundId::CoeffNorm, std::log10(0.5 * std::sqrt(acc) * std::sqrt(nd + 1.0)));
  r.variant = InverseVariant::PaperEq5;
  r.applicable = s.max_abs() <= 1.0 + kUnitTol;
  if (!r.applicable) r.note = "requires every knot in the closed unit disc";
  r.params = {{"n", nd}, {"coeff_norm", std::sqrt(acc)}};
  return r;
}

double integral_exponent(std::size_t q, std::size_t panels) {
  if (q == 0) return 0.0;
  if (panels < 2 || panels % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "integral_exponent: panels must be even and >= 2");
  const double qd = static_cast<double>(q);
  const double h = qd / static_cast<double>(panels);
  double acc = log_chord(0.0, qd) + log_chord(qd, qd);
  for (std::size_t i = 1; i < panels; ++i)
    acc += (i % 2 == 1 ? 4.0 : 2.0) * log_chord(h * static_cast<double>(i), qd);
  return acc * h / 3.0;
}

double integral_exponent_closed_form(std::size_t q) noexcept {
  return static_cast<double>(q) * 2.0 * kCatalan / std::numbers::pi;
}

double table_kappa_minus_log10(std::size_t n) noexcept {
  const double nd = static_cast<double>(n);
  return nd / 4.0 * kLog10_2 + 0.5 * std::log10(nd / 2.0);
}

BoundReport bound_quasi_cyclic(std::size_t q, QuasiCyclicMode mode) {
  if (q == 0) throw Error(ErrorKind::BadShape, "BadShape: q must be positive");
  if ((mode == QuasiCyclicMode::Base || mode == QuasiCyclicMode::Product) && !is_power_of_two(q))
    throw Error(ErrorKind::BadShape, "BadShape: q = " + std::to_string(q) + " is not a power of two");
  const double qd = static_cast<double>(q);
  const double n = 3.0 * qd;
  const double half_log_n = 0.5 * std::log10(n);
  BoundReport r;
  r.params = {{"q", qd}, {"n", n}};
  switch (mode) {
    case QuasiCyclicMode::Base:
      r = make(BoundId::QuasiCyclicBase, qd / 2.0 * kLog10_2 + half_log_n);
      break;
    case QuasiCyclicMode::Eq15:
      r = make(BoundId::QuasiCyclicEq15, qd / 6.0 * std::log10(18.0) + half_log_n);
      if (q % 12 != 0) r.note = "q not divisible by 12: exponent q/6 taken as real";
      break;
    case QuasiCyclicMode::Eq16:
      r = make(BoundId::QuasiCyclicEq16,
               qd / 3.0 * std::log10(2.0 * std::cos(std::numbers::pi / 12.0) * std::sqrt(6.0)) +
                   half_log_n);
      break;
    case QuasiCyclicMode::Product: {
      double acc = 0.0;
      for (std::size_t i = 0; i < q; ++i)
        acc += std::max(0.5 * std::log(2.0), log_chord(static_cast<double>(i), qd));
      r = make(BoundId::QuasiCyclicProduct, acc / std::numbers::ln10 + half_log_n);
      break;
    }
    case QuasiCyclicMode::Integral: {
      const double y = integral_exponent(q);
      r = make(BoundId::QuasiCyclicIntegral, y / std::numbers::ln10);
      r.params["closed_form_log10"] = integral_exponent_closed_form(q) / std::numbers::ln10;
      r.note = "reported without the sqrt(n) factor";
      break;
    }
  }
  r.variant = InverseVariant::PaperEq5;
  r.params["q"] = qd;
  r.params["n"] = n;
  r.params["table_reconstruction_log10"] = table_kappa_minus_log10(3 * q);
  return r;
}

BoundReport bound_dft_block(std::size_t n, DftBlockMode mode) {
  if (n == 0 || n % 2 != 0)
    throw Error(ErrorKind::OddSize, "OddSize: DFT block bound needs even n, got " + std::to_string(n));
  const double nd = static_cast<double>(n);
  BoundReport r;
  if (mode == DftBlockMode::Base) {
    r = make(BoundId::DftBlock, (nd / 4.0 - 1.0) * kLog10_2 + 0.5 * std::log10(nd));
  } else {
    r = make(BoundId::DftBlock, integral_exponent(n / 2) / std::numbers::ln10);
    r.params["closed_form_log10"] = integral_exponent_closed_form(n / 2) / std::numbers::ln10;
    r.note = "integral strengthening, reported without sqrt(n)";
  }
  r.variant = InverseVariant::PaperEq5;
  r.params["n"] = nd;
  r.params["q"] = nd / 2.0;
  r.params["mode_integral"] = mode == DftBlockMode::Integral ? 1.0 : 0.0;
  r.params["table_reconstruction_log10"] = table_kappa_minus_log10(n);
  return r;
}

bool is_separated(const KnotVector& S, const KnotVector& T, double eta, cplx c) {
  double t_max = 0.0;
  for (const auto& t : T) t_max = std::max(t_max, std::abs(t - c));
  for (const auto& s : S)
    if (t_max > std::abs(s - c) / eta) return false;
  return true;
}

BoundReport sigma_bound_separated(const KnotVector& S, const KnotVector& T, double eta, cplx c,
                                  std::size_t rho) {
  if (!(eta > 1.0)) throw Error(ErrorKind::InvalidArgument, "sigma_bound_separated: eta must exceed 1");
  if (rho == 0) throw Error(ErrorKind::InvalidArgument, "sigma_bound_separated: rho must be positive");
  if (!is_separated(S, T, eta, c))
    throw Error(ErrorKind::NotSeparated, "NotSeparated: sets are not (eta, c)-separated");
  double delta = std::numeric_limits<double>::infinity();
  for (const auto& s : S) delta = std::min(delta, std::abs(s - c));
  const double rd = static_cast<double>(rho);
  const double le = std::log10(eta);
  const double lem1 = std::log10(eta - 1.0);
  const double ld = std::log10(delta);
  BoundReport r = make(BoundId::SeparationSigma, lem1 + (rd - 1.0) * le + ld);
  const double ml = static_cast<double>(S.size() * T.size());
  r.params = {{"eta", eta},
              {"rho", rd},
              {"delta", delta},
              {"m", static_cast<double>(S.size())},
              {"l", static_cast<double>(T.size())},
              {"c_re", c.real()},
              {"c_im", c.imag()},
              {"rigorous_log10", lem1 + (rd - 2.0) * le + ld - 0.5 * std::log10(ml)}};
  r.note = "lower bound on log10(1/sigma_rho)";
  return r;
}

SeparationCertificate arc_certificate(const KnotVector& s, cplx f, std::size_t j_lo,
                                      std::size_t j_hi, double eta) {
  require_unit(f, "arc_certificate");
  if (!(eta > 1.0)) throw Error(ErrorKind::InvalidArgument, "arc_certificate: eta must exceed 1");
  const std::size_t n = s.size();
  if (j_hi < j_lo || j_hi >= n)
    throw Error(ErrorKind::InvalidArgument, "arc_certificate: need j_lo <= j_hi < n");
  const std::size_t l = j_hi - j_lo + 1;
  if (2 * l > n)
    throw Error(ErrorKind::ArcTooLong,
                "ArcTooLong: arc of " + std::to_string(l) + " points exceeds n/2 = " +
                    std::to_string(n / 2));
  const auto ni = static_cast<std::int64_t>(n);
  const cplx t_lo = f * unit_root(static_cast<std::int64_t>(j_lo), ni);
  const cplx t_hi = f * unit_root(static_cast<std::int64_t>(j_hi), ni);
  SeparationCertificate c;
  c.j_lo = j_lo;
  c.j_hi = j_hi;
  c.l = l;
  c.f = f;
  c.eta = eta;
  c.c = 0.5 * (t_lo + t_hi);
  c.r = std::abs(c.c - t_lo);
  const double radius = eta * c.r;
  for (const auto& z : s)
    if (std::abs(z - c.c) < radius - kBoundaryTol) ++c.m_minus;
  c.m_plus = n - c.m_minus;
  c.rho_bar = static_cast<long>(l) - static_cast<long>(c.m_minus);
  return c;
}

BoundReport bound_arc(const KnotVector& s, const SeparationCertificate& cert, ArcForm form) {
  if (cert.rho_bar <= 0)
    throw Error(ErrorKind::VacuousCertificate,
                "VacuousCertificate: rho_bar = " + std::to_string(cert.rho_bar));
  if (!(cert.r > 0.0))
    throw Error(ErrorKind::VacuousCertificate, "VacuousCertificate: degenerate arc with r = 0");
  const double le = std::log10(cert.eta);
  const double base = static_cast<double>(cert.rho_bar) * le + std::log10((cert.eta - 1.0) * cert.r);
  // with the corrected sigma bound: (eta-1) eta^{rho_bar-1} r / sqrt(m_plus l)
  const double rigorous = base - le -
                          0.5 * std::log10(static_cast<double>(std::max<std::size_t>(cert.m_plus, 1)) *
                                           static_cast<double>(cert.l));
  const double nd = static_cast<double>(s.size());
  const double lift = 0.5 * std::log10(nd) - kLog10_2;
  BoundReport r;
  if (form == ArcForm::CV) {
    r = make(BoundId::ArcCV, base);
    r.params["rigorous_log10"] = rigorous;
  } else {
    r = make(BoundId::ArcVandermonde, base + lift);
    r.params["rigorous_log10"] = rigorous + lift;
    r.applicable = s.max_abs() <= 1.0 + kUnitTol;
    if (!r.applicable) r.note = "requires every knot in the closed unit disc";
  }
  r.params["n"] = nd;
  r.params["j_lo"] = static_cast<double>(cert.j_lo);
  r.params["j_hi"] = static_cast<double>(cert.j_hi);
  r.params["l"] = static_cast<double>(cert.l);
  r.params["eta"] = cert.eta;
  r.params["r"] = cert.r;
  r.params["c_re"] = cert.c.real();
  r.params["c_im"] = cert.c.imag();
  r.params["f_re"] = cert.f.real();
  r.params["f_im"] = cert.f.imag();
  r.params["m_minus"] = static_cast<double>(cert.m_minus);
  r.params["m_plus"] = static_cast<double>(cert.m_plus);
  r.params["rho_bar"] = static_cast<double>(cert.rho_bar);
  return r;
}

ArcSearchResult best_arc_search(const KnotVector& s, cplx f, std::span<const double> eta_grid,
                                bool exhaustive) {
  require_unit(f, "best_arc_search");
  if (eta_grid.empty()) throw Error(ErrorKind::InvalidArgument, "best_arc_search: empty eta grid");
  for (double e : eta_grid)
    if (!(e > 1.0)) throw Error(ErrorKind::InvalidArgument, "best_arc_search: eta values must exceed 1");
  const std::size_t n = s.size();
  if (exhaustive && n > 128)
    throw Error(ErrorKind::InvalidArgument, "best_arc_search: exhaustive scan limited to n <= 128");
  const std::size_t stride = exhaustive ? 1 : std::max<std::size_t>(1, n / 64);

  constexpr double kTie = 1e-12;
  std::optional<ArcSearchResult> best;
  auto key = [](const SeparationCertificate& c) { return std::make_tuple(c.l, c.j_lo, c.eta); };
  for (std::size_t l = stride; 2 * l <= n; l += stride) {
    for (std::size_t j_lo = 0; j_lo + l <= n; j_lo += stride) {
      for (double eta : eta_grid) {
        const SeparationCertificate cert = arc_certificate(s, f, j_lo, j_lo + l - 1, eta);
        if (cert.rho_bar <= 0 || !(cert.r > 0.0)) continue;
        BoundReport rep = bound_arc(s, cert, ArcForm::Vandermonde);
        if (!(rep.log10value > 0.0)) continue;
        bool better = !best;
        if (best) {
          const double d = rep.log10value - best->report.log10value;
          better = d > kTie || (std::abs(d) <= kTie && key(cert) < key(best->certificate));
        }
        if (better) best = ArcSearchResult{cert, std::move(rep)};
      }
    }
  }
  if (!best)
    throw Error(ErrorKind::NoPositiveBound,
                "NoPositiveBound: no arc certificate yields a bound above 1");
  best->report.params["stride"] = static_cast<double>(stride);
  return *best;
}

}  // namespace vandcond
