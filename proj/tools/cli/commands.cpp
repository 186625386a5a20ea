#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "quatmob/classify.hpp"
#include "quatmob/json_io.hpp"
#include "quatmob/moebius.hpp"
#include "quatmob/reversibility.hpp"
#include "quatmob/sampling.hpp"

namespace quatmob::cli {

namespace {

// Normalizes when det_H != 1; the notice goes into the report.
QMatrix2 prepare(const QMatrix2& input, const Options& opt, json& report) {
  const double det = det_H(input, opt.tol);
  report["det_H"] = det;
  if (det <= opt.tol) throw Error(ErrorCode::SingularMatrix, "det_H(A) = " + std::to_string(det));
  if (std::abs(det - 1.0) <= opt.tol) return input;
  const QMatrix2 m = sl_normalize(input, opt.tol);
  report["notice"] = "input rescaled by det_H^{-1/4} to lie in SL(2,H)";
  report["normalized_matrix"] = m;
  return m;
}

json fixed_points_json(const QMatrix2& m, double tol) {
  try {
    return fixed_points(m, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CentralElement) return "all";
    throw;
  }
}

// A matrix, an object carrying "matrix" (as generate emits), or an array of such objects.
std::vector<QMatrix2> matrices_from(const json& doc, bool& batch) {
  batch = doc.is_array() && !doc.empty() && doc.at(0).is_object() && doc.at(0).contains("matrix");
  const auto one = [](const json& j) { return j.is_object() && j.contains("matrix") ? j.at("matrix").get<QMatrix2>() : j.get<QMatrix2>(); };
  std::vector<QMatrix2> out;
  if (batch) {
    for (const json& j : doc) out.push_back(one(j));
  } else {
    out.push_back(one(doc));
  }
  return out;
}

json read_input(const std::string& text, const std::string& file, std::istream& in) {
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw Error(ErrorCode::DomainError, "cannot open " + file);
    return json::parse(f);
  }
  if (!text.empty() && text != "-") return json::parse(text);
  return json::parse(std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
}

void emit(std::ostream& out, const json& j, bool pretty) { out << (pretty ? j.dump(2) : j.dump()) << '\n'; }

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::ZeroQuaternion:
      return kSingular;
    case ErrorCode::InternalInconsistency:
    case ErrorCode::InconsistentInvariants:
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::ClusteringAmbiguity:
    case ErrorCode::NonRealDeterminant:
    case ErrorCode::NonRealCoefficients:
      return kInternal;
    default:
      return kUsage;
  }
}

json classify_report(const QMatrix2& input, const Options& opt) {
  json report{{"input", input}};
  const QMatrix2 m = prepare(input, opt, report);
  const NormalFormResult nf = normal_form(m, opt.tol);
  const CharPoly cp = char_poly(m, opt.tol);
  const bool diagonalizable = is_diagonalizable(m, opt.tol);
  report["char_poly"] = cp;
  report["eigen_classes"] = eigenvalue_classes(m, opt.tol);
  report["diagonalizable"] = diagonalizable;
  report["normal_form"] = nf.form;
  report["witness"] = nf.witness.s;
  report["dynamical_type"] = dynamical_type(m, opt.tol);
  report["algebraic_class"] = algebraic_class(cp, diagonalizable, opt.tol);
  report["reversibility"] = psl_report(m, opt.tol);
  report["fixed_points"] = fixed_points_json(m, opt.tol);
  return report;
}

json reverse_report(const QMatrix2& input, const Options& opt) {
  json report;
  const QMatrix2 m = prepare(input, opt, report);
  const ReversibilityReport rep = psl_report(m, opt.tol);
  report["reversible_psl"] = rep.reversible_psl;
  report["reverser"] = rep.reverser ? json(*rep.reverser) : json(nullptr);
  report["reverser_sign"] = rep.reverser_sign ? json(std::string(to_string(*rep.reverser_sign))) : json(nullptr);
  report["factorization"] = rep.factorization ? json(*rep.factorization) : json(nullptr);
  if (!rep.note.empty()) report["note"] = rep.note;
  return report;
}

json generate(const std::string& family, std::size_t count, const Options& opt) {
  if (!is_known_family(family)) throw Error(ErrorCode::UnknownFamily, family);
  if (!(opt.cond >= 1.0)) throw Error(ErrorCode::DomainError, "--cond must be >= 1");
  json out = json::array();
  for (std::size_t k = 0; k < count; ++k) {
    auto rng = sample_rng(opt.seed, 0, k);
    const GeneratedSample s = sample_family(family, rng, opt.cond);
    out.push_back({{"family", family}, {"index", k}, {"normal_form", s.form}, {"matrix", s.matrix}});
  }
  return out;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternionic Moebius transformations: classification, reversibility, verification"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--tol", opt.tol, "tolerance for decisions")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--samples", opt.samples, "samples per verified property");
  app.add_option("--cond", opt.cond, "condition bound for random conjugators");
  app.add_flag("--pretty", opt.pretty, "indent JSON output");
  app.add_option("--threads", opt.threads, "worker threads for verify (0 = all cores)");
  app.add_flag("--timing", opt.timing, "include wall time in verify output");

  std::string matrix_text;
  std::string matrix_file;
  auto* classify = app.add_subcommand("classify", "classification report for a matrix (argument, --file, or stdin)");
  classify->add_option("matrix", matrix_text, "matrix JSON");
  classify->add_option("--file", matrix_file, "read matrix JSON from a file");

  auto* reverse = app.add_subcommand("reverse", "reverser and involution factorization for a matrix");
  reverse->add_option("matrix", matrix_text, "matrix JSON");
  reverse->add_option("--file", matrix_file, "read matrix JSON from a file");

  std::string family;
  std::size_t count = 1;
  bool list = false;
  auto* gen = app.add_subcommand("generate", "seeded random matrices of a conjugacy family");
  gen->add_option("--family", family, "case-1..case-8 or a named form");
  gen->add_option("--count", count, "number of matrices");
  gen->add_flag("--list", list, "print the known family names");

  auto* verify = app.add_subcommand("verify", "randomized verification of every property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (classify->parsed() || reverse->parsed()) {
      bool batch = false;
      const std::vector<QMatrix2> ms = matrices_from(read_input(matrix_text, matrix_file, in), batch);
      json result = json::array();
      for (const QMatrix2& m : ms) result.push_back(classify->parsed() ? classify_report(m, opt) : reverse_report(m, opt));
      emit(out, batch ? result : result.at(0), opt.pretty);
      return kOk;
    }
    if (gen->parsed()) {
      if (list) {
        emit(out, family_names(), opt.pretty);
        return kOk;
      }
      if (family.empty()) {
        err << "generate: --family is required\n";
        return kUsage;
      }
      emit(out, generate(family, count, opt), opt.pretty);
      return kOk;
    }
    if (verify->parsed()) {
      if (opt.samples == 0) {
        err << "verify: --samples must be >= 1\n";
        return kUsage;
      }
      const VerifySuiteResult r = run_verify(opt);
      emit(out, to_json(r, opt.timing), opt.pretty);
      return r.ok() ? kOk : kPropertyFailure;
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "invalid JSON input: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace quatmob::cli
