#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "vandcond/cauchy_inverse.hpp"
#include "vandcond/knots.hpp"

namespace vandcond {

enum class BoundId {
  EasyI,
  EasyII,
  RefinedNorm,
  CvThm41,
  CircleValue,
  CoeffNorm,
  QuasiCyclicBase,
  QuasiCyclicEq15,
  QuasiCyclicEq16,
  QuasiCyclicProduct,
  QuasiCyclicIntegral,
  DftBlock,
  SeparationSigma,
  ArcCV,
  ArcVandermonde,
};

const char* to_string(BoundId id) noexcept;

// One lower-bound evaluation. log10value is finite whenever `applicable`.
struct BoundReport {
  BoundId bound_id = BoundId::EasyI;
  double log10value = 0.0;
  std::optional<InverseVariant> variant;  // empty: not applicable
  std::map<std::string, double> params;
  bool applicable = true;
  std::string note;
};

nlohmann::json to_json(const BoundReport& r);

// Catalan's constant to 18 digits.
inline constexpr double kCatalan = 0.915965594177219015;

// kappa >= max{1, s_+^{n-1}/sqrt(n)}. params["raw_log10"] keeps the value
// without the max clause.
BoundReport bound_easy(const KnotVector& s);

enum class ClusterNormMode {
  Literal,           // |V| = max{1, s_+^{n-1}}, denominator sqrt(k) max{k, nu/(nu-1)}
  ComputedNorm,      // |V| replaced by the spectral norm of V
  ComputedNormTable  // spectral norm, denominator sqrt(k) nu/(nu-1)
};

const char* to_string(ClusterNormMode m) noexcept;

// Needs at least k knots with 1/|s_i| >= nu > 1 (NotEnoughSmallKnots).
BoundReport bound_cluster(const KnotVector& s, std::size_t k, double nu, ClusterNormMode mode);

// ||V|| >= (s_+^n - 1)/((s_+ - 1) sqrt(n)); params["kappa_log10"] divides by
// a further sqrt(n) (sigma_min <= sqrt(n)). UnitRadius when s_+ ~ 1.
BoundReport bound_refined_norm(const KnotVector& s);

// kappa >= sqrt(n) ||C_{s,f}^{-1}|| / max_i |s_i^n - f^n| with ||C^{-1}||
// bounded below by its largest entry. |f| must be 1; f is rotated by
// 2^-40 * 2pi/n (repeatedly, doubling) until C_{s,f} is defined.
BoundReport bound_cv(const KnotVector& s, cplx f, InverseVariant variant);

// sqrt(n) max_{|f|=1} |s(f)| / 2, plus the ||v||/2 sampled variants.
BoundReport bound_circle_value(const KnotVector& s, std::size_t grid);

// 0.5 ||coeffs(s)|| sqrt(n+1)
BoundReport bound_coeff_norm(const KnotVector& s);

enum class QuasiCyclicMode { Base, Eq15, Eq16, Product, Integral };

const char* to_string(QuasiCyclicMode m) noexcept;

// Closed-form bounds for the 3q x 3q quasi-cyclic Vandermonde matrix.
BoundReport bound_quasi_cyclic(std::size_t q, QuasiCyclicMode mode);

enum class DftBlockMode { Base, Integral };

// Bounds for the (n/2) x (n/2) leading block of the n x n DFT matrix.
BoundReport bound_dft_block(std::size_t n, DftBlockMode mode);

// y = int_0^q ln(2 cos((0.5 - x/q) pi/2)) dx by composite Simpson.
double integral_exponent(std::size_t q, std::size_t panels = 4096);
// q * 2G / pi
double integral_exponent_closed_form(std::size_t q) noexcept;

// log10(2^{n/4} sqrt(n/2)): the value the published kappa_- columns follow.
double table_kappa_minus_log10(std::size_t n) noexcept;

// |t - c| <= |s - c| / eta for every s in S, t in T.
bool is_separated(const KnotVector& S, const KnotVector& T, double eta, cplx c);

// 1/sigma_rho(C_{S,T}) >= (eta - 1) eta^{rho-1} delta, delta = min |s - c|.
// params["rigorous_log10"] holds (eta - 1) eta^{rho-2} delta / sqrt(m l),
// which follows from the truncated geometric expansion with an entrywise
// error bound.
BoundReport sigma_bound_separated(const KnotVector& S, const KnotVector& T, double eta, cplx c,
                                  std::size_t rho);

struct SeparationCertificate {
  std::size_t j_lo = 0;
  std::size_t j_hi = 0;
  std::size_t l = 0;
  cplx f;
  cplx c;
  double r = 0.0;
  double eta = 0.0;
  std::size_t m_minus = 0;
  std::size_t m_plus = 0;
  long rho_bar = 0;
};

// Arc t_{j_lo..j_hi} of the grid t_j = f omega_n^j; knots strictly inside
// D(c, eta r) (boundary within 1e-14 counts as outside) form m_minus.
SeparationCertificate arc_certificate(const KnotVector& s, cplx f, std::size_t j_lo,
                                      std::size_t j_hi, double eta);

enum class ArcForm { CV, Vandermonde };

// ||C^{-1}|| >= eta^rho_bar (eta - 1) r; the Vandermonde form adds
// log10(sqrt(n)/2). VacuousCertificate when rho_bar <= 0 or r == 0.
BoundReport bound_arc(const KnotVector& s, const SeparationCertificate& cert, ArcForm form);

struct ArcSearchResult {
  SeparationCertificate certificate;
  BoundReport report;
};

// Scans arcs with l <= n/2 at stride max(1, n/64) (stride 1 when exhaustive,
// allowed for n <= 128) over every eta in eta_grid and returns the largest
// Arc-Vandermonde bound. Ties go to smaller l, then j_lo, then eta.
// NoPositiveBound when no certificate gives a bound above 1.
ArcSearchResult best_arc_search(const KnotVector& s, cplx f, std::span<const double> eta_grid,
                                bool exhaustive = false);

}  // namespace vandcond
