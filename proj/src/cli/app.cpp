#include "hforge/cli/app.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hforge/cli/matrix_file.hpp"
#include "hforge/cli/sweep.hpp"
#include "hforge/constraints.hpp"
#include "hforge/families.hpp"
#include "hforge/spectra.hpp"

namespace hforge {

namespace {

using nlohmann::json;

// Usage problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(ErrorKind::InvalidParameter, "malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json spectrum_json(const SpectrumMultiset& s, double tol) {
  json out = json::array();
  const SpectrumMultiset ordered = s.sorted(tol);
  for (const Complex& z : ordered.values()) out.push_back(complex_json(z));
  return out;
}

json poly_json(const ComplexPolynomial& p) {
  json out = json::array();
  for (const Complex& c : p.coefficients()) out.push_back(complex_json(c));
  return out;
}

double inverse_scale(const ComplexMatrix& m) {
  const double big = m.cwiseAbs().maxCoeff();
  const double small = m.cwiseAbs().minCoeff();
  return small > 0.0 ? std::max(1.0, big / small) : INFINITY;
}

// Orthogonality relative to the spread of entry magnitudes, so that
// non-unimodular solutions are judged on the same footing as phases.
bool orthogonal(const ComplexMatrix& m, const ToleranceConfig& tol) {
  const double scale = inverse_scale(m);
  return std::isfinite(scale) && orthogonality_residual(m) <= tol.entry * static_cast<double>(m.rows()) * scale;
}

bool all_unimodular(std::span<const Complex> values, double tol) {
  for (const Complex& z : values) {
    if (!is_unimodular(z, tol)) return false;
  }
  return true;
}

struct Globals {
  ToleranceConfig tol;
  std::string format = "json";
  std::uint64_t seed = 0;
};

struct Context {
  Globals g;
  std::ostream& out;
  std::ostream& err;
};

void emit_matrix(Context& ctx, const MatrixFile& file, const std::string& path) {
  const std::string text = ctx.g.format == "csv" ? serialize_csv(file.matrix) : serialize_json(file);
  if (path.empty()) {
    ctx.out << text;
  } else {
    write_text_file(path, text);
  }
}

void emit_report(Context& ctx, const json& report) { ctx.out << report.dump(2) << "\n"; }

std::vector<Complex> parse_values(const std::vector<std::string>& raw) {
  std::vector<Complex> v;
  for (const std::string& s : raw) v.push_back(parse_param_value(s));
  return v;
}

void expect_count(const std::vector<Complex>& v, std::size_t n, const std::string& what) {
  if (v.size() != n) {
    throw UsageError(what + " expects " + std::to_string(n) + " parameter values, got " + std::to_string(v.size()));
  }
}

int branch_sign(const std::vector<std::string>& branches, char param) {
  for (const std::string& b : branches) {
    if (b.size() == 2 && b[0] == param && (b[1] == '+' || b[1] == '-')) return b[1] == '+' ? 1 : -1;
  }
  return 1;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::vector<std::string> params;
  std::vector<std::string> branches;
  int root = 1;
  std::string out_path;
  std::string note;
};

MatrixFile generate(const GenArgs& a, const ToleranceConfig& tol, bool& constrained) {
  std::vector<Complex> p = parse_values(a.params);
  for (const std::string& b : a.branches) {
    if (b.size() != 2 || b[0] < 'a' || b[0] > 'h' || (b[1] != '+' && b[1] != '-')) {
      throw UsageError("branch labels look like 'a+' or 'f-', got '" + b + "'");
    }
  }
  MatrixFile f;
  f.metadata.family = a.family;
  f.metadata.note = a.note;
  constrained = false;
  const std::string& n = a.family;

  auto bf_param = [&]() -> Complex {
    if (!p.empty()) {
      expect_count(p, 1, n);
      return p[0];
    }
    if (a.root < 1 || a.root > 4) throw UsageError("--root must be 1..4");
    const Complex d = bf_quartic_roots()[static_cast<std::size_t>(a.root - 1)];
    p = {d};
    return d;
  };

  if (n == "d6" || n == "d61" || n == "d81" || n == "a6" || n == "b6") {
    expect_count(p, 0, n);
    f.matrix = n == "d6" ? d6() : n == "d61" ? d61() : n == "d81" ? d81() : n == "a6" ? a6() : b6();
  } else if (n == "bf") {
    f.matrix = bf(bf_param());
    constrained = true;
  } else if (n == "bf-dephased") {
    f.matrix = bf_dephased(bf_param());
    constrained = true;
  } else {
    switch (family_from_name(n)) {
      case Family::M4:
        expect_count(p, 4, n);
        f.matrix = m4(p[0], p[1], p[2], p[3]);
        constrained = true;
        break;
      case Family::H4:
        expect_count(p, 3, n);
        f.matrix = h4(p[0], p[1], p[2]);
        break;
      case Family::H4A:
        expect_count(p, 1, n);
        f.matrix = h4a(p[0]);
        break;
      case Family::H42:
        expect_count(p, 2, n);
        f.matrix = h42(p[0], p[1]);
        break;
      case Family::H43:
        expect_count(p, 3, n);
        f.matrix = h43(p[0], p[1], p[2]);
        break;
      case Family::H44:
        expect_count(p, 3, n);
        f.matrix = h44(p[0], p[1], p[2]);
        break;
      case Family::H45:
        expect_count(p, 3, n);
        f.matrix = h45(p[0], p[1], p[2]);
        break;
      case Family::M6:
      case Family::M6S: {
        constrained = true;
        if (p.size() == 4) {
          const M6Solution s =
              m6_branch(p[0], p[1], p[2], p[3], branch_sign(a.branches, 'a'), branch_sign(a.branches, 'f'), tol);
          p.assign(s.params.begin(), s.params.end());
        }
        expect_count(p, 6, n + " (b c d e with branches, or a..f)");
        f.matrix = family_from_name(n) == Family::M6 ? m6(p[0], p[1], p[2], p[3], p[4], p[5])
                                                      : m6_standard(p[0], p[1], p[2], p[3], p[4], p[5]);
        break;
      }
      case Family::D61:
      case Family::D62:
        expect_count(p, 3, n);
        f.matrix = family_from_name(n) == Family::D61 ? d61_family(p[0], p[1], p[2], tol) : d62_family(p[0], p[1], p[2], tol);
        break;
      case Family::M8: {
        constrained = true;
        if (p.size() == 7) {
          const std::array<Complex, 7> abcdefg{p[0], p[1], p[2], p[3], p[4], p[5], p[6]};
          const auto [hp, hm] = c8_solve_h(abcdefg, tol);
          p.push_back(branch_sign(a.branches, 'h') > 0 ? hp.value : hm.value);
        }
        expect_count(p, 8, n + " (a..g with an h branch, or a..h)");
        const std::array<Complex, 8> all{p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7]};
        f.matrix = m8(all);
        break;
      }
      case Family::D8A:
        expect_count(p, 6, n);
        f.matrix = d8a(p[0], p[1], p[2], p[3], p[4], p[5]);
        break;
      case Family::BF:
      case Family::Custom:
        throw UsageError("'" + n + "' cannot be generated this way");
    }
  }
  f.metadata.params = p;
  return f;
}

int cmd_gen(Context& ctx, const GenArgs& a) {
  bool constrained = false;
  const MatrixFile f = generate(a, ctx.g.tol, constrained);
  emit_matrix(ctx, f, a.out_path);
  if (constrained && !orthogonal(f.matrix, ctx.g.tol)) {
    ctx.err << "gen: constraints not satisfied, orthogonality residual " << orthogonality_residual(f.matrix) << "\n";
    return exit_code::kConstraint;
  }
  return exit_code::kOk;
}

// ---- verify / spectrum / equiv -----------------------------------------------

int cmd_verify(Context& ctx, const std::string& path) {
  const MatrixFile f = read_matrix_file(path);
  const ComplexMatrix& m = f.matrix;
  bool unimodular = true;
  for (Eigen::Index i = 0; i < m.size(); ++i) unimodular = unimodular && is_unimodular(m.data()[i], ctx.g.tol.entry);
  const bool has_zero = (m.array() == Complex{}).any();
  const double residual = has_zero ? INFINITY : orthogonality_residual(m);
  const bool hadamard = is_hadamard(m, ctx.g.tol);
  json report{{"order", m.rows()}, {"unimodular", unimodular}, {"hadamard", hadamard}};
  report["residual"] = std::isfinite(residual) ? json(residual) : json(nullptr);
  emit_report(ctx, report);
  return hadamard ? exit_code::kOk : exit_code::kFalse;
}

int cmd_spectrum(Context& ctx, const std::string& path, bool reduce) {
  const MatrixFile f = read_matrix_file(path);
  json report{{"order", f.matrix.rows()}, {"eigenvalues", spectrum_json(spectrum(f.matrix), ctx.g.tol.spec)}};
  int code = exit_code::kOk;
  if (reduce) {
    const ComplexPolynomial p = char_poly(f.matrix);
    report["char_poly"] = poly_json(p);
    const bool rec = is_reciprocal(p, ctx.g.tol.root);
    report["reciprocal"] = rec;
    if (rec) {
      const ComplexPolynomial q = reduce_reciprocal(p, ctx.g.tol.root);
      report["reduced"] = poly_json(q);
      report["y_roots"] = spectrum_json(poly_roots(q, RootOptions{500, ctx.g.tol.root}), ctx.g.tol.spec);
    } else {
      code = exit_code::kFalse;
    }
  }
  emit_report(ctx, report);
  return code;
}

int cmd_equiv(Context& ctx, const std::string& path_a, const std::string& path_b) {
  const MatrixFile a = read_matrix_file(path_a);
  const MatrixFile b = read_matrix_file(path_b);
  if (a.matrix.rows() != b.matrix.rows()) throw UsageError("equiv: matrices have different orders");
  const bool eq = unitary_equivalent(a.matrix, b.matrix, ctx.g.tol);
  emit_report(ctx, json{{"spectrum_a", spectrum_json(spectrum(a.matrix), ctx.g.tol.spec)},
                        {"spectrum_b", spectrum_json(spectrum(b.matrix), ctx.g.tol.spec)},
                        {"equivalent", eq}});
  return eq ? exit_code::kOk : exit_code::kFalse;
}

// ---- solve -------------------------------------------------------------------

struct SolveArgs {
  int order = 6;
  std::vector<std::string> unknown;
  std::vector<std::string> values;
  int restarts = 64;
  unsigned workers = 1;
};

json residual_json(const ConstraintResidual& r) {
  json out = json::array();
  for (const Complex& z : r.values) out.push_back(complex_json(z));
  return out;
}

json matrix_summary(const ComplexMatrix& m, const ToleranceConfig& tol, bool with_spectrum) {
  json out{{"hadamard", is_hadamard(m, tol)}, {"orthogonal", orthogonal(m, tol)}};
  if (with_spectrum) out["spectrum"] = spectrum_json(spectrum(m), tol.spec);
  return out;
}

// Fills `slots` (a..) with `given` in order, skipping the unknown position.
template <std::size_t N>
std::array<Complex, N> place(const std::vector<Complex>& given, std::size_t unknown) {
  std::array<Complex, N> out{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (i == unknown) continue;
    out[i] = given[k++];
  }
  return out;
}

json branch_entry(const SolutionBranch& br) {
  return json{{"param", std::string(1, param_name(br.solved))},
              {"label", br.label},
              {"value", complex_json(br.value)},
              {"unimodular", is_unimodular(br.value, 1e-9)}};
}

int cmd_solve(Context& ctx, const SolveArgs& a) {
  const ToleranceConfig& tol = ctx.g.tol;
  const std::vector<Complex> v = parse_values(a.values);
  if (a.unknown.empty()) throw UsageError("solve: --unknown is required");
  std::vector<Param> unknown;
  for (const std::string& u : a.unknown) {
    if (u.size() != 1) throw UsageError("solve: unknowns are single letters");
    unknown.push_back(param_from_char(u[0]));
  }
  json branches = json::array();

  auto push_m6 = [&](json entry, const std::array<Complex, 6>& p, bool with_spectrum) {
    entry["residuals"] = residual_json(c6_residuals(p));
    entry["matrix"] = matrix_summary(m6(p[0], p[1], p[2], p[3], p[4], p[5]), tol, with_spectrum);
    branches.push_back(std::move(entry));
  };

  if (a.order == 4) {
    if (unknown.size() != 1 || static_cast<int>(unknown[0]) > 3) throw UsageError("solve: order 4 unknown is one of a..d");
    expect_count(v, 3, "solve --order 4");
    const auto idx = static_cast<std::size_t>(unknown[0]);
    std::array<Complex, 4> abcd = place<4>(v, idx);
    for (const SolutionBranch& br : c4_branches(unknown[0], abcd)) {
      abcd[idx] = br.value;
      json entry = branch_entry(br);
      entry["residuals"] = json::array({complex_json(c4_residual(abcd[0], abcd[1], abcd[2], abcd[3]))});
      entry["matrix"] = matrix_summary(m4(abcd[0], abcd[1], abcd[2], abcd[3]), tol, false);
      branches.push_back(std::move(entry));
    }
  } else if (a.order == 6) {
    if (unknown.size() != 1 || static_cast<int>(unknown[0]) > 5) throw UsageError("solve: order 6 unknown is one of a..f");
    const Param u = unknown[0];
    if (u == Param::f) {
      expect_count(v, 5, "solve --order 6 --unknown f");
      const std::array<Complex, 5> abcde{v[0], v[1], v[2], v[3], v[4]};
      const auto [fp, fm] = c6_solve_f(abcde);
      for (const SolutionBranch& br : {fp, fm}) {
        push_m6(branch_entry(br), {v[0], v[1], v[2], v[3], v[4], br.value}, false);
      }
    } else {
      expect_count(v, 4, "solve --order 6");
      const auto idx = static_cast<std::size_t>(u);
      std::array<Complex, 5> abcde = place<5>(v, idx);
      std::vector<SolutionBranch> roots;
      if (u == Param::d || u == Param::e) {
        roots = c6_solve_cubic(u, abcde, tol);
      } else {
        const auto [p1, p2] = c6_solve_quadratic(u, abcde, tol);
        roots = {p1, p2};
      }
      for (const SolutionBranch& br : roots) {
        abcde[idx] = br.value;
        const auto [fp, fm] = c6_solve_f(abcde);
        for (const SolutionBranch& fb : {fp, fm}) {
          json entry = branch_entry(br);
          entry["f"] = branch_entry(fb);
          entry["reduced_residual"] = complex_json(c6_reduced_residual(abcde));
          push_m6(std::move(entry), {abcde[0], abcde[1], abcde[2], abcde[3], abcde[4], fb.value}, true);
        }
      }
    }
  } else if (a.order == 8) {
    if (unknown.size() == 1 && unknown[0] == Param::h) {
      expect_count(v, 7, "solve --order 8 --unknown h");
      const std::array<Complex, 7> abcdefg{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
      const auto [hp, hm] = c8_solve_h(abcdefg, tol);
      for (const SolutionBranch& br : {hp, hm}) {
        const std::array<Complex, 8> p{v[0], v[1], v[2], v[3], v[4], v[5], v[6], br.value};
        json entry = branch_entry(br);
        entry["residuals"] = residual_json(c8_residuals(p));
        entry["matrix"] = matrix_summary(m8(p), tol, false);
        branches.push_back(std::move(entry));
      }
    } else {
      std::array<std::optional<Complex>, 8> fixed{};
      std::vector<bool> is_unknown(8, false);
      for (Param p : unknown) is_unknown[static_cast<std::size_t>(p)] = true;
      expect_count(v, 8 - unknown.size(), "solve --order 8 (numeric)");
      std::size_t k = 0;
      for (std::size_t i = 0; i < 8; ++i) {
        if (!is_unknown[i]) fixed[i] = v[k++];
      }
      NumericSolveOptions opts;
      opts.restarts = a.restarts;
      opts.workers = a.workers;
      opts.tol = tol.entry;
      const NumericSolveResult res = c8_numeric_solve(fixed, ctx.g.seed, opts);
      for (const ParamVector& s : res.solutions) {
        const std::array<Complex, 8> p{s.values[0], s.values[1], s.values[2], s.values[3],
                                       s.values[4], s.values[5], s.values[6], s.values[7]};
        json params = json::array();
        for (const Complex& z : p) params.push_back(complex_json(z));
        branches.push_back(json{{"params", params},
                                {"on_torus", all_unimodular(p, 1e-9)},
                                {"residuals", residual_json(c8_residuals(p))},
                                {"matrix", matrix_summary(m8(p), tol, false)}});
      }
      emit_report(ctx, json{{"order", 8},
                            {"seed", ctx.g.seed},
                            {"converged_restarts", res.converged_restarts},
                            {"failed_restarts", res.failed_restarts},
                            {"no_convergence", res.no_convergence()},
                            {"solutions", branches}});
      return res.no_convergence() ? exit_code::kConstraint : exit_code::kOk;
    }
  } else {
    throw UsageError("solve: --order must be 4, 6 or 8");
  }
  emit_report(ctx, json{{"order", a.order}, {"branches", branches}});
  return exit_code::kOk;
}

// ---- sweep / double ----------------------------------------------------------

int cmd_sweep(Context& ctx, int order, int samples, unsigned workers) {
  if (samples < 1) throw UsageError("sweep: --samples must be >= 1");
  if (order != 4 && order != 6 && order != 8) throw UsageError("sweep: --order must be 4, 6 or 8");
  const SweepReport r = run_sweep(SweepOptions{order, samples, ctx.g.seed, ctx.g.tol, workers});
  emit_report(ctx, json{{"order", order},
                        {"samples", r.samples},
                        {"hadamard_hits", r.hadamard_hits},
                        {"hadamard_matrices", r.hadamard_matrices},
                        {"distinct_spectra", r.distinct_spectra},
                        {"seed", r.seed}});
  return exit_code::kOk;
}

int cmd_double(Context& ctx, const std::string& path_a, const std::string& path_b,
               const std::vector<std::string>& diag_raw, const std::string& out_path) {
  const MatrixFile a = read_matrix_file(path_a);
  const MatrixFile b = read_matrix_file(path_b);
  if (a.matrix.rows() != b.matrix.rows()) throw UsageError("double: matrices have different orders");
  const std::vector<Complex> diag = parse_values(diag_raw);
  if (!diag.empty() && static_cast<Eigen::Index>(diag.size()) != a.matrix.rows()) {
    throw UsageError("double: --diag needs one phase per row");
  }
  if (!is_hadamard(a.matrix, ctx.g.tol) || !is_hadamard(b.matrix, ctx.g.tol)) {
    ctx.err << "double: both inputs must be Hadamard\n";
    return exit_code::kConstraint;
  }
  MatrixFile f;
  f.matrix = double_matrix(a.matrix, b.matrix, diag, ctx.g.tol);
  f.metadata.family = "double";
  f.metadata.params = diag;
  f.metadata.note = "[[A, D B], [A, -D B]] from " + path_a + " and " + path_b;
  emit_matrix(ctx, f, out_path);
  return exit_code::kOk;
}

}  // namespace

Complex parse_param_value(std::string_view text) {
  if (text.starts_with("z:")) {
    const std::string_view body = text.substr(2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::InvalidParameter, "complex value needs 'z:re,im'");
    return {parse_double(body.substr(0, comma), "real part"), parse_double(body.substr(comma + 1), "imaginary part")};
  }
  if (text.ends_with("pi")) {
    std::string_view coef = text.substr(0, text.size() - 2);
    double mult = 1.0;
    if (coef == "-") {
      mult = -1.0;
    } else if (!coef.empty()) {
      const auto slash = coef.find('/');
      if (slash == std::string_view::npos) {
        mult = parse_double(coef, "multiple of pi");
      } else {
        const double den = parse_double(coef.substr(slash + 1), "denominator");
        if (den == 0.0) throw Error(ErrorKind::InvalidParameter, "zero denominator in '" + std::string(text) + "'");
        mult = parse_double(coef.substr(0, slash), "numerator") / den;
      }
    }
    return phase(mult * std::numbers::pi);
  }
  return phase(parse_double(text, "phase"));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex Hadamard matrix construction, verification and spectra", "hforge"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("HADAMARD_FORGE_TOL")) {
    try {
      g.tol.entry = parse_double(env, "HADAMARD_FORGE_TOL");
      g.tol.validate();
    } catch (const Error& ex) {
      err << ex.what() << "\n";
      return exit_code::kUsage;
    }
  }
  app.add_option("--tol-entry", g.tol.entry, "entrywise residual bound");
  app.add_option("--tol-root", g.tol.root, "polynomial root bound");
  app.add_option("--tol-spec", g.tol.spec, "spectrum matching bound");
  app.add_option("--format", g.format, "matrix output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "random seed");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "construct a named matrix");
  gen_cmd->add_option("family", gen.family, "family or constant name")->required();
  gen_cmd->add_option("--params,-p", gen.params, "parameter values");
  gen_cmd->add_option("--branch,-b", gen.branches, "branch labels such as a+ f-");
  gen_cmd->add_option("--root", gen.root, "BF quartic root index 1..4");
  gen_cmd->add_option("--out,-o", gen.out_path, "output file (default stdout)");
  gen_cmd->add_option("--note", gen.note, "metadata note");

  std::string file_a, file_b, out_path;
  auto* verify_cmd = app.add_subcommand("verify", "check the Hadamard property");
  verify_cmd->add_option("file", file_a)->required();

  bool reduce = false;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of M / sqrt(n)");
  spectrum_cmd->add_option("file", file_a)->required();
  spectrum_cmd->add_flag("--reduce", reduce, "also reduce the reciprocal characteristic polynomial");

  auto* equiv_cmd = app.add_subcommand("equiv", "unitary equivalence by spectra");
  equiv_cmd->add_option("first", file_a)->required();
  equiv_cmd->add_option("second", file_b)->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve the orthogonality constraints");
  solve_cmd->add_option("--order", solve.order)->required();
  solve_cmd->add_option("--unknown,-u", solve.unknown)->required();
  solve_cmd->add_option("--values,-v", solve.values, "remaining parameters in alphabetical order");
  solve_cmd->add_option("--restarts", solve.restarts, "numeric restarts (order 8)");
  solve_cmd->add_option("--workers", solve.workers, "numeric worker threads (order 8)");

  int sweep_order = 6, sweep_samples = 100;
  unsigned sweep_workers = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "random torus sweep");
  sweep_cmd->add_option("--order", sweep_order);
  sweep_cmd->add_option("--samples,-n", sweep_samples);
  sweep_cmd->add_option("--workers", sweep_workers);

  std::vector<std::string> diag;
  auto* double_cmd = app.add_subcommand("double", "[[A, D B], [A, -D B]]");
  double_cmd->add_option("first", file_a)->required();
  double_cmd->add_option("second", file_b)->required();
  double_cmd->add_option("--diag", diag, "diagonal phases of D");
  double_cmd->add_option("--out,-o", out_path);

  std::vector<std::string> argv_store{"hforge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& ex) {
    err << ex.what() << "\n" << app.help();
    return exit_code::kUsage;
  }

  Context ctx{g, out, err};
  try {
    ctx.g.tol.validate();
    if (*gen_cmd) return cmd_gen(ctx, gen);
    if (*verify_cmd) return cmd_verify(ctx, file_a);
    if (*spectrum_cmd) return cmd_spectrum(ctx, file_a, reduce);
    if (*equiv_cmd) return cmd_equiv(ctx, file_a, file_b);
    if (*solve_cmd) return cmd_solve(ctx, solve);
    if (*sweep_cmd) return cmd_sweep(ctx, sweep_order, sweep_samples, sweep_workers);
    if (*double_cmd) return cmd_double(ctx, file_a, file_b, diag, out_path);
  } catch (const UsageError& ex) {
    err << ex.what() << "\n";
    return exit_code::kUsage;
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << "\n";
    return exit_code::kParse;
  } catch (const Error& ex) {
    err << ex.what() << "\n";
    switch (ex.kind()) {
      case ErrorKind::InvalidParameter:
      case ErrorKind::InvalidDimensions: return exit_code::kUsage;
      case ErrorKind::SingularBranch:
      case ErrorKind::DegenerateQuadratic:
      case ErrorKind::DegenerateCubic: return exit_code::kConstraint;
      case ErrorKind::NotReciprocal:
      case ErrorKind::RootFindingFailure:
      case ErrorKind::NotNormal: return exit_code::kNumeric;
    }
  } catch (const std::exception& ex) {
    err << ex.what() << "\n";
    return exit_code::kNumeric;
  }
  return exit_code::kUsage;
}

}  // namespace hforge
