#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vandcond/bounds.hpp"
#include "vandcond/cauchy_inverse.hpp"
#include "vandcond/error.hpp"
#include "vandcond/knots.hpp"
#include "vandcond/matrix.hpp"
#include "vandcond/spectral.hpp"
#include "vandcond/tables.hpp"

namespace vc = vandcond;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct KnotSource {
  std::string gen;
  std::string knots;
  std::string file;
  std::size_t n = 0;
  std::size_t k = 0;
  double rho = 0.5;
  std::string s_last = "2";
};

void add_knot_options(CLI::App* cmd, KnotSource& src, bool with_knots_flag) {
  cmd->add_option("--gen", src.gen, "knot generator")
      ->check(CLI::IsMember({"dft", "quasi-cyclic", "van-der-corput", "single-outlier", "scaled-cluster", "file"}));
  if (with_knots_flag) cmd->add_option("--knots", src.knots, "knot file (re,im per line)");
  cmd->add_option("--n", src.n, "number of knots");
  cmd->add_option("--k", src.k, "cluster size for scaled-cluster");
  cmd->add_option("--rho", src.rho, "cluster radius for scaled-cluster");
  cmd->add_option("--s-last", src.s_last, "outlier knot RE,IM for single-outlier");
  cmd->add_option("--file", src.file, "input path for --gen file");
}

vc::KnotVector load_knots(const KnotSource& src) {
  if (!src.knots.empty()) return vc::read_knot_file(src.knots);
  if (src.gen.empty()) throw vc::Error(vc::ErrorKind::InvalidArgument, "one of --gen or --knots is required");
  if (src.gen == "file") {
    if (src.file.empty()) throw vc::Error(vc::ErrorKind::InvalidArgument, "--gen file needs --file PATH");
    return vc::read_knot_file(src.file);
  }
  if (src.n == 0) throw vc::Error(vc::ErrorKind::InvalidArgument, "--n must be positive");
  if (src.gen == "dft") return vc::roots_of_unity(src.n);
  if (src.gen == "quasi-cyclic") return vc::quasi_cyclic(src.n);
  if (src.gen == "van-der-corput") return vc::van_der_corput(src.n);
  if (src.gen == "single-outlier") return vc::single_outlier(src.n, vc::parse_complex(src.s_last));
  return vc::scaled_cluster(src.n, src.k, src.rho);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw vc::Error(vc::ErrorKind::InvalidArgument, "bad list entry: " + item);
    }
  }
  if (out.empty()) throw vc::Error(vc::ErrorKind::InvalidArgument, "empty list");
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw vc::Error(vc::ErrorKind::InvalidArgument, "cannot open " + path + " for writing");
  out << text;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_code_for(const vc::Error& e) {
  switch (e.kind()) {
    case vc::ErrorKind::EmptyInput:
    case vc::ErrorKind::DuplicateKnot:
    case vc::ErrorKind::BlockTooLarge:
    case vc::ErrorKind::ShapeMismatch:
    case vc::ErrorKind::NotEnoughSmallKnots:
    case vc::ErrorKind::UnitRadius:
    case vc::ErrorKind::BadShape:
    case vc::ErrorKind::OddSize:
    case vc::ErrorKind::NotSeparated:
    case vc::ErrorKind::ArcTooLong:
    case vc::ErrorKind::InvalidArgument:
    case vc::ErrorKind::Parse:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

void print_bound(const vc::BoundReport& r) { std::cout << vc::to_json(r).dump() << "\n"; }

void print_failed_bound(vc::BoundId id, const vc::Error& e) {
  nlohmann::json j = {{"bound_id", vc::to_string(id)},
                      {"log10value", nullptr},
                      {"variant", "n/a"},
                      {"applicable", false},
                      {"params", nlohmann::json::object()},
                      {"reason", e.what()}};
  std::cout << j.dump() << "\n";
}

template <class F>
void try_bound(vc::BoundId id, F&& f) {
  try {
    print_bound(f());
  } catch (const vc::Error& e) {
    print_failed_bound(id, e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition numbers and lower bounds for Vandermonde, Cauchy and DFT matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vc::version()));

  // gen-knots
  KnotSource gen_src;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen-knots", "write a knot file");
  add_knot_options(gen_cmd, gen_src, false);
  gen_cmd->add_option("--out", gen_out, "output path (default stdout)");

  // cond
  KnotSource cond_src;
  long long cond_block = 0;
  auto* cond_cmd = app.add_subcommand("cond", "singular values and condition number of V_s");
  add_knot_options(cond_cmd, cond_src, true);
  cond_cmd->add_option("--block", cond_block, "use the leading QxQ block");

  // build
  KnotSource build_src;
  std::string build_kind = "vandermonde";
  std::string build_f = "1";
  std::string build_dump = "-";
  long long build_block = 0;
  auto* build_cmd = app.add_subcommand("build", "dump a structured matrix");
  add_knot_options(build_cmd, build_src, true);
  build_cmd->add_option("--kind", build_kind)->check(CLI::IsMember({"vandermonde", "cv", "dft"}));
  build_cmd->add_option("--f", build_f, "CV scaling RE,IM");
  build_cmd->add_option("--block", build_block, "leading QxQ block");
  build_cmd->add_option("--dump", build_dump, "output path (default stdout)");

  // invert
  KnotSource inv_src;
  std::string inv_method = "lagrange";
  std::string inv_variant = "corrected";
  std::string inv_f;
  std::string inv_t;
  bool inv_log = false;
  auto* inv_cmd = app.add_subcommand("invert", "closed-form inverse entries");
  add_knot_options(inv_cmd, inv_src, true);
  inv_cmd->add_option("--method", inv_method)->check(CLI::IsMember({"lagrange", "cv", "cauchy"}));
  inv_cmd->add_option("--variant", inv_variant)->check(CLI::IsMember({"paper", "corrected"}));
  inv_cmd->add_option("--f", inv_f, "CV scaling RE,IM (default: argmax of |s(f)| on the unit circle)");
  inv_cmd->add_option("--t-knots", inv_t, "second knot family for --method cauchy");
  inv_cmd->add_flag("--log-domain", inv_log, "emit i,j,log10mag,phase");

  // bounds
  KnotSource bnd_src;
  std::string bnd_f;
  std::string bnd_eta = "1.1,1.2,1.5";
  std::size_t bnd_grid = 0;
  double bnd_nu = 0.0;
  std::size_t bnd_k = 0;
  bool bnd_exhaustive = false;
  auto* bnd_cmd = app.add_subcommand("bounds", "every applicable lower bound, one JSON object per line");
  add_knot_options(bnd_cmd, bnd_src, true);
  bnd_cmd->add_option("--f", bnd_f, "CV/arc scaling RE,IM (default: argmax of |s(f)|)");
  bnd_cmd->add_option("--eta-grid", bnd_eta, "comma-separated eta values > 1");
  bnd_cmd->add_option("--grid", bnd_grid, "circle grid size");
  bnd_cmd->add_option("--nu", bnd_nu, "small-knot threshold for the cluster bound");
  bnd_cmd->add_option("--cluster-k", bnd_k, "cluster size for the cluster bound");
  bnd_cmd->add_flag("--exhaustive", bnd_exhaustive, "stride-1 arc scan (n <= 128)");

  // table
  int tbl_id = 0;
  std::uint64_t tbl_seed = vc::kDefaultSeed;
  std::size_t tbl_trials = vc::kDefaultTrials;
  std::string tbl_format;
  std::string tbl_out;
  std::vector<std::size_t> tbl_sizes;
  auto* tbl_cmd = app.add_subcommand("table", "reproduce one of the experiment tables");
  tbl_cmd->add_option("--id", tbl_id)->required()->check(CLI::Range(1, 5));
  auto* seed_opt = tbl_cmd->add_option("--seed", tbl_seed);
  auto* trials_opt = tbl_cmd->add_option("--trials", tbl_trials)->check(CLI::PositiveNumber);
  tbl_cmd->add_option("--sizes", tbl_sizes, "override the matrix orders")->delimiter(',');
  tbl_cmd->add_option("--format", tbl_format)->check(CLI::IsMember({"csv", "markdown", "json"}));
  tbl_cmd->add_option("--out", tbl_out, "output path (CSV unless --format is given)");

  // genp
  std::size_t gp_n = 0;
  std::size_t gp_trials = vc::kDefaultTrials;
  std::uint64_t gp_seed = vc::kDefaultSeed;
  auto* gp_cmd = app.add_subcommand("genp", "GENP residual experiment on the DFT matrix");
  gp_cmd->add_option("--n", gp_n)->required();
  gp_cmd->add_option("--trials", gp_trials);
  gp_cmd->add_option("--seed", gp_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_cmd) {
      const vc::KnotVector s = load_knots(gen_src);
      std::ostringstream out;
      vc::write_knots(out, s);
      write_output(gen_out, out.str());
    } else if (*cond_cmd) {
      const vc::KnotVector s = load_knots(cond_src);
      vc::DenseMatrix v = vc::vandermonde(s);
      if (cond_block > 0) v = vc::leading_block(v, static_cast<Eigen::Index>(cond_block));
      const vc::SpectrumSummary sv = vc::singular_values(v);
      std::cout << "n,sigma1,sigma_min,kappa,log10kappa,trustworthy\n"
                << v.rows() << "," << g17(sv.sigma1) << "," << g17(sv.sigma_min) << "," << g17(sv.kappa)
                << "," << g17(sv.log10kappa) << "," << (sv.trustworthy ? "true" : "false") << "\n";
    } else if (*build_cmd) {
      std::optional<vc::DenseMatrix> m;
      if (build_kind == "dft") {
        if (build_src.n == 0) throw vc::Error(vc::ErrorKind::InvalidArgument, "--kind dft needs --n");
        m.emplace(vc::dft(build_src.n));
      } else {
        const vc::KnotVector s = load_knots(build_src);
        if (build_kind == "cv")
          m.emplace(vc::cv_matrix(s, vc::parse_complex(build_f)));
        else
          m.emplace(vc::vandermonde(s));
      }
      if (build_block > 0) m.emplace(vc::leading_block(*m, static_cast<Eigen::Index>(build_block)));
      std::ostringstream out;
      vc::write_matrix_dump(out, *m);
      write_output(build_dump, out.str());
    } else if (*inv_cmd) {
      const vc::KnotVector s = load_knots(inv_src);
      const auto variant =
          inv_variant == "paper" ? vc::InverseVariant::PaperEq5 : vc::InverseVariant::DerivativeCorrected;
      const vc::cplx f = inv_f.empty() ? vc::max_abs_on_circle(s, vc::default_circle_grid(s.size())).f_star
                                       : vc::parse_complex(inv_f);
      std::cout << (inv_log ? "i,j,log10mag,phase\n" : "i,j,re,im\n");
      auto emit_entry = [&](std::size_t i, std::size_t j, const vc::LogComplex& e) {
        if (inv_log) {
          std::cout << i << "," << j << "," << g17(e.log10mag()) << "," << g17(e.phase()) << "\n";
        } else {
          const vc::cplx z = e.to_complex();
          std::cout << i << "," << j << "," << g17(z.real()) << "," << g17(z.imag()) << "\n";
        }
      };
      if (inv_method == "cauchy") {
        const vc::KnotVector t = inv_t.empty() ? vc::cv_grid(s.size(), f) : vc::read_knot_file(inv_t);
        const vc::CauchyInverseFactors fac(s, t);
        for (std::size_t i = 0; i < s.size(); ++i)
          for (std::size_t j = 0; j < s.size(); ++j) emit_entry(i, j, fac.entry(i, j, variant));
      } else {
        const vc::DenseMatrix inv = inv_method == "cv" ? vc::vandermonde_inverse_via_cv(s, f, variant)
                                                       : vc::vandermonde_inverse_lagrange(s);
        for (Eigen::Index i = 0; i < inv.rows(); ++i)
          for (Eigen::Index j = 0; j < inv.cols(); ++j)
            emit_entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j), vc::LogComplex::from(inv(i, j)));
      }
    } else if (*bnd_cmd) {
      const vc::KnotVector s = load_knots(bnd_src);
      const std::size_t grid = bnd_grid ? bnd_grid : vc::default_circle_grid(s.size());
      const std::vector<double> etas = parse_list(bnd_eta);
      const vc::cplx f = bnd_f.empty() ? vc::max_abs_on_circle(s, grid).f_star : vc::parse_complex(bnd_f);
      try_bound(vc::BoundId::EasyI, [&] { return vc::bound_easy(s); });
      if (bnd_nu > 0.0 && bnd_k > 0) {
        for (auto mode : {vc::ClusterNormMode::Literal, vc::ClusterNormMode::ComputedNorm,
                          vc::ClusterNormMode::ComputedNormTable})
          try_bound(vc::BoundId::EasyII, [&] { return vc::bound_cluster(s, bnd_k, bnd_nu, mode); });
      }
      try_bound(vc::BoundId::RefinedNorm, [&] { return vc::bound_refined_norm(s); });
      for (auto v : {vc::InverseVariant::PaperEq5, vc::InverseVariant::DerivativeCorrected})
        try_bound(vc::BoundId::CvThm41, [&] { return vc::bound_cv(s, f, v); });
      try_bound(vc::BoundId::CircleValue, [&] { return vc::bound_circle_value(s, grid); });
      try_bound(vc::BoundId::CoeffNorm, [&] { return vc::bound_coeff_norm(s); });
      if (bnd_src.gen == "quasi-cyclic" && s.size() % 3 == 0) {
        const std::size_t q = s.size() / 3;
        const std::pair<vc::BoundId, vc::QuasiCyclicMode> modes[] = {
            {vc::BoundId::QuasiCyclicBase, vc::QuasiCyclicMode::Base},
            {vc::BoundId::QuasiCyclicEq15, vc::QuasiCyclicMode::Eq15},
            {vc::BoundId::QuasiCyclicEq16, vc::QuasiCyclicMode::Eq16},
            {vc::BoundId::QuasiCyclicProduct, vc::QuasiCyclicMode::Product},
            {vc::BoundId::QuasiCyclicIntegral, vc::QuasiCyclicMode::Integral}};
        for (const auto& [id, mode] : modes) try_bound(id, [&] { return vc::bound_quasi_cyclic(q, mode); });
      }
      try_bound(vc::BoundId::ArcVandermonde, [&] {
        auto res = vc::best_arc_search(s, f, etas, bnd_exhaustive);
        print_bound(vc::bound_arc(s, res.certificate, vc::ArcForm::CV));
        return res.report;
      });
    } else if (*tbl_cmd) {
      vc::TableOverrides o;
      if (!tbl_sizes.empty()) o.sizes = tbl_sizes;
      if (*seed_opt) o.seed = tbl_seed;
      if (*trials_opt) o.trials = tbl_trials;
      const vc::ExperimentTable t = vc::run_table(vc::table_id_from_int(tbl_id), o);
      vc::TableFormat fmt = vc::TableFormat::Markdown;
      if (!tbl_format.empty())
        fmt = vc::table_format_from_string(tbl_format);
      else if (!tbl_out.empty())
        fmt = vc::TableFormat::Csv;
      write_output(tbl_out, vc::emit(t, fmt));
      if (!t.rows.empty() && t.failed_rows() == t.rows.size()) {
        std::cerr << "vandcond: every row failed\n";
        return kExitNumeric;
      }
    } else if (*gp_cmd) {
      const vc::GenpStats g = vc::genp_residual_experiment(gp_n, gp_trials, gp_seed);
      std::cout << "n,trials,seed,mean_rn,std_rn\n"
                << g.n << "," << g.trials << "," << g.seed << "," << g17(g.mean_rn) << "," << g17(g.std_rn)
                << "\n";
    }
  } catch (const vc::Error& e) {
    std::cerr << "vandcond: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "vandcond: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
