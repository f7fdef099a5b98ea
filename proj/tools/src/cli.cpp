#include "ncortho/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ncortho/errors.hpp"
#include "ncortho/freeproduct.hpp"
#include "ncortho/functional.hpp"
#include "ncortho/io.hpp"
#include "ncortho/jacobi.hpp"
#include "ncortho/orthopoly.hpp"
#include "ncortho/paths.hpp"

namespace ncortho::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  double tolerance = kDefaultTolerance;
  unsigned threads = 1;

  std::string family;
  std::string moments;
  std::string reference;
  std::string out;
  std::string basis_out;
  std::string engine = "paths";
  std::string spec;
  std::string word;
  int max_degree = -1;
  int depth = -1;
  int alphabet = 0;
  bool count_only = false;
  int random_families = 0;
  std::uint64_t seed = 1;
  int random_alphabet = 2;
  int random_depth = 3;
  double match_tol = 1e-8;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(15) << x;
  return s.str();
}

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << x;
  return s.str();
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content << '\n';
  } else {
    io::write_file_atomic(path, content);
  }
}

std::string where(const std::string& path) { return path.empty() || path == "-" ? "stdout" : path; }

int cmd_moments(const Options& o, std::ostream& out) {
  const AdmissibleFamily f = io::family_from_json(io::read_file(o.family));
  const int n = o.max_degree >= 0 ? o.max_degree : f.depth();
  MomentFunctional phi = o.engine == "operator" ? favard_moments(f, n, o.tolerance, o.threads)
                                                : moment_table_from_paths(f, n, o.tolerance);
  emit(o.out, io::moments_to_json(phi), out);
  out << "ok: " << phi.values().size() << " moments of words up to length " << phi.max_word_length()
      << " (" << o.engine << " engine) written to " << where(o.out) << '\n';
  return kExitOk;
}

int cmd_jacobi(const Options& o, std::ostream& out) {
  const MomentFunctional phi = io::moments_from_json(io::read_file(o.moments), o.tolerance);
  const int n = o.depth >= 0 ? o.depth : phi.max_degree();
  const AdmissibleFamily f = jacobi_from_moments(phi, n, o.tolerance);
  const ValidationReport report = validate(f);
  for (const auto& v : report.violations) out << "FAIL: " << v << '\n';
  if (!report.ok()) return kExitFailure;
  emit(o.out, io::family_to_json(f), out);
  out << "ok: admissible family of depth " << f.depth() << (f.has_top_b() ? " (with top B)" : "")
      << " written to " << where(o.out) << '\n';
  return kExitOk;
}

int cmd_orthonormalize(const Options& o, std::ostream& out) {
  const MomentFunctional phi = io::moments_from_json(io::read_file(o.moments), o.tolerance);
  const int n = o.depth >= 0 ? o.depth : phi.max_degree();
  const OrthonormalBasis basis = orthonormalize(phi, n, o.tolerance);
  emit(o.out, io::basis_to_json(basis), out);
  out << "ok: " << basis.coefficients().rows() << " orthonormal polynomials up to degree " << n
      << " written to " << where(o.out) << '\n';
  return kExitOk;
}

int cmd_freeproduct(const Options& o, std::ostream& out) {
  if (o.depth < 0) throw DomainError("freeproduct needs --depth");
  const auto recs = io::parse_recurrence_spec(o.spec, std::max(o.depth, 1), fs::current_path());
  const AdmissibleFamily f = build(recs, o.depth);
  const ValidationReport report = validate(f);
  for (const auto& v : report.violations) out << "FAIL: " << v << '\n';
  if (!report.ok()) return kExitFailure;
  int status = kExitOk;
  if (o.depth >= 1) {
    const ThreeTermReport tt = verify_three_term(recs, o.depth, 1e-12);
    out << (tt.ok ? "ok: " : "FAIL: ") << "three-term residual " << sci(tt.max_residual) << '\n';
    if (!tt.ok) status = kExitFailure;
  }
  emit(o.out, io::family_to_json(f), out);
  out << "ok: free-product family of depth " << f.depth() << " over " << recs.size() << " letters written to "
      << where(o.out) << '\n';
  if (!o.basis_out.empty()) {
    const int N = static_cast<int>(recs.size());
    const auto words = enumerate_up_to(N, static_cast<std::size_t>(o.depth));
    const auto dim = static_cast<Eigen::Index>(words.size());
    Matrix coeffs = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (const auto& [w, c] : product_polynomial(recs, words[i]).terms()) {
        coeffs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(w.graded_index())) = c;
      }
    }
    emit(o.basis_out, io::basis_to_json(OrthonormalBasis(N, o.depth, std::move(coeffs))), out);
    out << "ok: product polynomials written to " << where(o.basis_out) << '\n';
  }
  return status;
}

Word parse_word(const Options& o) {
  const Word loose = Word::parse(1 << 20, o.word);
  int N = o.alphabet;
  if (N <= 0) {
    N = 1;
    for (int letter : loose.letters()) N = std::max(N, letter);
  }
  return Word(N, std::vector<int>(loose.letters().begin(), loose.letters().end()));
}

int cmd_paths(const Options& o, std::ostream& out) {
  std::optional<AdmissibleFamily> f;
  if (!o.family.empty()) f = io::family_from_json(io::read_file(o.family));
  Options local = o;
  if (f && local.alphabet <= 0) local.alphabet = f->alphabet_size();
  const Word sigma = parse_word(local);
  if (sigma.empty()) throw DomainError("paths needs a nonempty --word");
  if (o.count_only) {
    out << count_paths(sigma) << '\n';
    return kExitOk;
  }
  const auto paths = enumerate_paths(sigma);
  emit(o.out, io::paths_to_json(sigma, paths), out);
  out << "ok: |M_" << sigma.to_string() << "| = " << paths.size() << '\n';
  if (f) {
    double total = 0.0;
    for (const auto& p : paths) total += path_weight(*f, p);
    const DistinguishedPath dp = distinguished_path(sigma);
    out << "ok: weight sum " << fmt(total) << '\n';
    out << "ok: distinguished path " << dp.weight_expression << " = " << fmt(path_weight(*f, dp.path)) << '\n';
  }
  return kExitOk;
}

int verify_family(const Options& o, std::ostream& out) {
  const AdmissibleFamily f = io::family_from_json(io::read_file(o.family));
  int status = kExitOk;
  const ValidationReport report = validate(f);
  for (const auto& v : report.violations) out << "FAIL: " << v << '\n';
  if (!report.ok()) return kExitFailure;
  out << "ok: family of depth " << f.depth() << " over " << f.alphabet_size() << " letters is admissible\n";
  if (f.depth() >= 1) {
    const int n = o.depth >= 0 ? std::min(o.depth, f.depth()) : f.depth();
    const MomentFunctional phi = favard_moments(f, n, o.tolerance, o.threads);
    const GramReport g = gram(phi, n, o.tolerance);
    out << "ok: induced functional strictly positive at degree " << n << " (min pivot " << sci(g.min_pivot)
        << ")\n";
  }
  if (!o.reference.empty()) {
    const AdmissibleFamily ref = io::family_from_json(io::read_file(o.reference));
    const int levels = std::min(f.depth(), ref.depth());
    const double diff = max_block_difference(f, ref, levels);
    const bool match = diff <= o.match_tol;
    out << (match ? "ok: " : "FAIL: ") << "max block difference to " << o.reference << " is " << sci(diff)
        << " over levels <= " << levels << '\n';
    if (!match) status = kExitFailure;
  }
  return status;
}

int verify_moments(const Options& o, std::ostream& out) {
  const MomentFunctional phi = io::moments_from_json(io::read_file(o.moments), o.tolerance);
  out << "ok: " << phi.values().size() << " moments load (unital, symmetric)\n";
  const int n = o.depth >= 0 ? std::min(o.depth, phi.max_degree()) : phi.max_degree();
  const GramReport g = gram(phi, n, o.tolerance);
  out << (g.positive ? "ok: " : "FAIL: ") << "strict positivity at degree " << n << " (min pivot "
      << sci(g.min_pivot) << ")\n";
  return g.positive ? kExitOk : kExitFailure;
}

int verify_random(const Options& o, std::ostream& out) {
  int status = kExitOk;
  double worst_blocks = 0.0;
  double worst_moments = 0.0;
  for (int i = 0; i < o.random_families; ++i) {
    const auto seed = o.seed + static_cast<std::uint64_t>(i);
    const AdmissibleFamily f = random_family(o.random_alphabet, o.random_depth, seed);
    const MomentFunctional phi = favard_moments(f, o.random_depth, o.tolerance, o.threads);
    const AdmissibleFamily g = jacobi_from_moments(phi, o.random_depth, o.tolerance);
    const double blocks = max_block_difference(f, g);
    const MomentFunctional psi = favard_moments(g, o.random_depth, o.tolerance, o.threads);
    double moments = 0.0;
    for (std::size_t j = 0; j < phi.values().size(); ++j) {
      moments = std::max(moments, std::abs(phi.values()[j] - psi.values()[j]));
    }
    worst_blocks = std::max(worst_blocks, blocks);
    worst_moments = std::max(worst_moments, moments);
    if (blocks > o.match_tol || moments > o.match_tol) {
      out << "FAIL: random family seed " << seed << ": block error " << sci(blocks) << ", moment error "
          << sci(moments) << '\n';
      status = kExitFailure;
    }
  }
  out << (status == kExitOk ? "ok: " : "FAIL: ") << o.random_families << " random families (N=" << o.random_alphabet
      << ", depth " << o.random_depth << ", seeds " << o.seed << "..): max block error " << sci(worst_blocks)
      << ", max moment error " << sci(worst_moments) << '\n';
  return status;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const int sources = (!o.family.empty()) + (!o.moments.empty()) + (o.random_families > 0);
  if (sources == 0) throw CLI::ValidationError("verify", "needs --family, --moments or --random-families");
  int status = kExitOk;
  if (!o.family.empty()) status = std::max(status, verify_family(o, out));
  if (!o.moments.empty()) status = std::max(status, verify_moments(o, out));
  if (o.random_families > 0) status = std::max(status, verify_random(o, out));
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Non-commutative orthogonal polynomials: moments, Jacobi families, lattice paths", "ncortho"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tolerance", o.tolerance, "Positivity and residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "Worker threads for moment tables")->check(CLI::Range(1u, 256u));

  auto* moments = app.add_subcommand("moments", "Family JSON -> moment JSON");
  moments->add_option("--family", o.family, "Family file")->required()->check(CLI::ExistingFile);
  moments->add_option("--max-degree", o.max_degree, "Moments of words up to length 2n")->check(CLI::NonNegativeNumber);
  moments->add_option("--out", o.out, "Output file (stdout when absent)");
  moments->add_option("--engine", o.engine, "Moment oracle")->check(CLI::IsMember({"paths", "operator"}));

  auto* jacobi = app.add_subcommand("jacobi", "Moment JSON -> family JSON");
  jacobi->add_option("--moments", o.moments, "Moment file")->required()->check(CLI::ExistingFile);
  jacobi->add_option("--depth", o.depth, "Family depth (default: max_degree)")->check(CLI::NonNegativeNumber);
  jacobi->add_option("--out", o.out, "Output file (stdout when absent)");

  auto* ortho = app.add_subcommand("orthonormalize", "Moment JSON -> orthonormal basis JSON");
  ortho->add_option("--moments", o.moments, "Moment file")->required()->check(CLI::ExistingFile);
  ortho->add_option("--depth", o.depth, "Basis degree (default: max_degree)")->check(CLI::NonNegativeNumber);
  ortho->add_option("--out", o.out, "Output file (stdout when absent)");

  auto* fp = app.add_subcommand("freeproduct", "Recurrence spec -> free-product family JSON");
  fp->add_option("--spec", o.spec, "e.g. hermite,chebyshev_t,laguerre(0.5),custom:rec.json")->required();
  fp->add_option("--depth", o.depth, "Family depth")->required()->check(CLI::NonNegativeNumber);
  fp->add_option("--out", o.out, "Output file (stdout when absent)");
  fp->add_option("--basis", o.basis_out, "Also write the product polynomials to this file");

  auto* paths = app.add_subcommand("paths", "Word -> lattice paths JSON and count");
  paths->add_option("--word", o.word, "Word, e.g. 1,1,2 or 112")->required();
  paths->add_option("--N", o.alphabet, "Alphabet size (default: largest letter)")->check(CLI::PositiveNumber);
  paths->add_flag("--count-only", o.count_only, "Print |M_word| only");
  paths->add_option("--out", o.out, "Output file (stdout when absent)");
  paths->add_option("--family", o.family, "Also sum path weights for this family")->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Validation and positivity report");
  verify->add_option("--family", o.family, "Family file")->check(CLI::ExistingFile);
  verify->add_option("--moments", o.moments, "Moment file")->check(CLI::ExistingFile);
  verify->add_option("--reference", o.reference, "Family to compare --family against")->check(CLI::ExistingFile);
  verify->add_option("--depth", o.depth, "Positivity degree")->check(CLI::NonNegativeNumber);
  verify->add_option("--match-tolerance", o.match_tol, "Tolerance for --reference and round trips")
      ->check(CLI::PositiveNumber);
  verify->add_option("--random-families", o.random_families, "Round-trip K seeded random families")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", o.seed, "First seed for --random-families");
  verify->add_option("--random-N", o.random_alphabet, "Alphabet size of random families")->check(CLI::PositiveNumber);
  verify->add_option("--random-depth", o.random_depth, "Depth of random families")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"ncortho"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (moments->parsed()) return cmd_moments(o, out);
    if (jacobi->parsed()) return cmd_jacobi(o, out);
    if (ortho->parsed()) return cmd_orthonormalize(o, out);
    if (fp->parsed()) return cmd_freeproduct(o, out);
    if (paths->parsed()) return cmd_paths(o, out);
    return cmd_verify(o, out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const NumericalError& e) {
    out << "FAIL: " << e.what() << '\n';
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ncortho::cli
