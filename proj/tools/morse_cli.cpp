#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morse/morse.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> out;
  for (const std::string& part : split_list(text)) {
    double v = 0.0;
    const auto res =
        std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size())
      throw morse::ParseError(flag + ": cannot parse number \"" + part +
                              "\"");
    out.push_back(v);
  }
  return out;
}

std::vector<long long> parse_int_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<long long> out;
  for (const std::string& part : split_list(text)) {
    long long v = 0;
    const auto res =
        std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size())
      throw morse::ParseError(flag + ": cannot parse integer \"" + part +
                              "\"");
    out.push_back(v);
  }
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

morse::Units parse_units(const std::string& name) {
  if (name == "chern") return morse::Units::chern;
  if (name == "raw") return morse::Units::raw;
  throw morse::ParseError("units must be \"chern\" or \"raw\"");
}

std::string do_bound(const morse::Scene& scene, int q,
                     const morse::PencilOptions& opts) {
  morse::BulkDiagnostics diag;
  const double bulk = morse::bulk_term(scene, q, opts.zero_tol, &diag);
  const double total = morse::weak_bound(scene, q, opts);
  std::string text = "grade,bulk,boundary,total,skipped_degenerate_bulk\n";
  text += morse::format_int(q) + "," + morse::format_sig17(bulk) + "," +
          morse::format_sig17(total - bulk) + "," +
          morse::format_sig17(total) + "," +
          morse::format_int(diag.skipped_degenerate) + "\n";
  return text;
}

std::string do_strong(const morse::Scene& scene, int q,
                      morse::StrongMode mode,
                      const morse::PencilOptions& opts) {
  const morse::StrongBreakdown breakdown =
      morse::strong_bounds_detail(scene, q, mode, opts);
  std::string text = "row_kind,grade,sign,bulk,boundary,value\n";
  for (const morse::StrongTerm& term : breakdown.terms) {
    const double value = term.sign * (term.bulk + term.boundary);
    text += "term," + morse::format_int(term.grade) + "," +
            morse::format_int(static_cast<long long>(term.sign)) + "," +
            morse::format_sig17(term.bulk) + "," +
            morse::format_sig17(term.boundary) + "," +
            morse::format_sig17(value) + "\n";
  }
  text += "total," + morse::format_int(q) + ",,,," +
          morse::format_sig17(breakdown.value) + "\n";
  return text;
}

std::string do_tregion(const morse::Scene& scene, int q,
                       const morse::PencilOptions& opts) {
  std::string text = "sample,interval,lo,hi,unbounded\n";
  for (std::size_t i = 0; i < scene.boundary.size(); ++i) {
    const morse::BoundarySample& s = scene.boundary[i];
    const morse::TRegion region =
        morse::t_region(s.theta_tan, s.levi, q, opts);
    if (region.empty()) {
      text += morse::format_int(static_cast<long long>(i)) + ",-1,,,0\n";
      continue;
    }
    const auto& intervals = region.intervals();
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      const bool infinite = !std::isfinite(intervals[j].hi);
      text += morse::format_int(static_cast<long long>(i)) + "," +
              morse::format_int(static_cast<long long>(j)) + "," +
              morse::format_sig17(intervals[j].lo) + "," +
              (infinite ? std::string("inf")
                        : morse::format_sig17(intervals[j].hi)) +
              "," + (infinite ? "1" : "0") + "\n";
    }
  }
  return text;
}

std::string do_torus(const morse::TorusBundleSpec& spec, int q,
                     const std::vector<long long>& k_list,
                     const morse::PencilOptions& opts) {
  std::string text = "k,dim,scaled_dim,limit,abs_error\n";
  for (const morse::ConvergenceRow& row :
       morse::convergence_table(spec, q, k_list, opts)) {
    text += morse::format_int(row.k) + "," + morse::format_int(row.dim) +
            "," + morse::format_sig17(row.scaled_dim) + "," +
            morse::format_sig17(row.limit) + "," +
            morse::format_sig17(row.abs_error) + "\n";
  }
  return text;
}

std::string do_model(const std::vector<double>& phi0_diag,
                     const std::vector<double>& levi_diag, int q,
                     const std::vector<double>& t_list,
                     const std::vector<double>& v_list, bool residual,
                     morse::Units units, double rel_tol,
                     const morse::PencilOptions& opts) {
  const morse::ModelBoundaryData data(
      morse::HermitianMatrix::diagonal(phi0_diag),
      morse::HermitianMatrix::diagonal(levi_diag), q,
      morse::ProfileFunction::inverse_square_default(), opts);
  std::string text = "quantity,arg,value\n";
  for (double t : t_list)
    text += "profile_b," + morse::format_sig17(t) + "," +
            morse::format_sig17(
                morse::profile_b(t, data.profile(), 0.01 * rel_tol)) +
            "\n";
  for (double v : v_list)
    text += "model_density," + morse::format_sig17(v) + "," +
            morse::format_sig17(morse::model_density(data, v, rel_tol,
                                                     units)) +
            "\n";
  if (residual) {
    const double term = morse::boundary_term_point(
        data.phi0(), data.rho0_levi(), data.q(), opts);
    text += "boundary_term,," +
            morse::format_sig17(
                morse::model_density_constant(units, data.n()) * term) +
            "\n";
    text += "fiber_residual,," +
            morse::format_sig17(
                morse::fiber_integral_residual(data, rel_tol, units)) +
            "\n";
  }
  return text;
}

std::string do_check(const std::string& suite, bool& failed) {
  const std::vector<morse::selfcheck::CheckResult> results =
      morse::selfcheck::run_suite(suite);
  std::string text;
  int passed = 0;
  for (const morse::selfcheck::CheckResult& r : results) {
    text += std::string(r.pass ? "PASS" : "FAIL") + " " + r.name + ": " +
            r.detail + "\n";
    if (r.pass) ++passed;
  }
  text += "suite " + suite + ": " + morse::format_int(passed) + "/" +
          morse::format_int(static_cast<long long>(results.size())) +
          " passed\n";
  failed = passed != static_cast<int>(results.size());
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "morsebound: curvature-integral bounds for holomorphic Morse "
      "inequalities"};
  app.require_subcommand(1);

  std::string input_path;
  std::string output_path;
  int q = 0;
  double zero_tol = 0.0;
  double imag_tol = 1e-8;
  double rel_tol = 1e-8;
  std::string mode_name = "convex";
  std::string units_name = "chern";
  std::string lambda_text;
  std::string mu_text;
  std::string k_text = "1";
  std::string phi0_text;
  std::string levi_text;
  std::string t_text;
  std::string v_text = "0";
  bool residual = false;
  std::string suite;

  auto add_tolerances = [&](CLI::App* cmd) {
    cmd->add_option("--zero-tol", zero_tol,
                    "eigenvalue zero tolerance (0 selects the scaled default)");
    cmd->add_option("--imag-tol", imag_tol,
                    "imaginary-part tolerance for pencil eigenvalues");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", output_path,
                    "write the report here instead of stdout");
  };

  CLI::App* bound = app.add_subcommand(
      "bound", "weak Morse bound of a scene at one grade (CSV)");
  bound->add_option("-i,--input", input_path, "scene JSON file")->required();
  bound->add_option("-q,--q", q, "grade")->required();
  add_tolerances(bound);
  add_output(bound);

  CLI::App* strong = app.add_subcommand(
      "strong", "alternating strong-bound assembly with per-grade terms");
  strong->add_option("-i,--input", input_path, "scene JSON file")->required();
  strong->add_option("-q,--q", q, "grade")->required();
  strong->add_option("--mode", mode_name, "convex or concave")
      ->check(CLI::IsMember({"convex", "concave"}));
  add_tolerances(strong);
  add_output(strong);

  CLI::App* tregion = app.add_subcommand(
      "tregion", "index regions T(q) of every boundary sample");
  tregion->add_option("-i,--input", input_path, "scene JSON file")
      ->required();
  tregion->add_option("-q,--q", q, "grade")->required();
  add_tolerances(tregion);
  add_output(tregion);

  CLI::App* torus = app.add_subcommand(
      "torus", "exact disc-bundle dimensions and their Riemann limit");
  torus->add_option("--lambda", lambda_text,
                    "comma-separated integer curvature eigenvalues")
      ->required();
  torus->add_option("--mu", mu_text,
                    "comma-separated integer Levi eigenvalues")
      ->required();
  torus->add_option("-q,--q", q, "grade")->required();
  torus->add_option("-k,--k", k_text, "comma-separated powers k");
  add_tolerances(torus);
  add_output(torus);

  CLI::App* model = app.add_subcommand(
      "model", "model boundary Bergman density and fiber identity");
  model->add_option("--phi0", phi0_text,
                    "comma-separated diagonal of the model curvature")
      ->required();
  model->add_option("--levi", levi_text,
                    "comma-separated diagonal of the model Levi form")
      ->required();
  model->add_option("-q,--q", q, "grade")->required();
  model->add_option("--t", t_text, "evaluate profile_b at these t >= 0");
  model->add_option("--v", v_text, "evaluate the density at these v <= 0");
  model->add_flag("--residual", residual,
                  "also report the fiber-integral residual");
  model->add_option("--units", units_name, "chern or raw")
      ->check(CLI::IsMember({"chern", "raw"}));
  model->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
  add_tolerances(model);
  add_output(model);

  CLI::App* check = app.add_subcommand(
      "check", "run a built-in validation suite (exit 5 on failure)");
  check->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"holefill", "fubini", "zq", "convergence"}));
  add_output(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    morse::PencilOptions opts;
    opts.zero_tol = zero_tol;
    opts.imag_tol = imag_tol;

    std::string text;
    int code = 0;
    if (bound->parsed()) {
      text = do_bound(morse::parse_scene(input_path), q, opts);
    } else if (strong->parsed()) {
      const morse::StrongMode mode = mode_name == "convex"
                                         ? morse::StrongMode::convex
                                         : morse::StrongMode::concave;
      text = do_strong(morse::parse_scene(input_path), q, mode, opts);
    } else if (tregion->parsed()) {
      text = do_tregion(morse::parse_scene(input_path), q, opts);
    } else if (torus->parsed()) {
      morse::TorusBundleSpec spec;
      spec.lambda = parse_int_list(lambda_text, "--lambda");
      spec.mu = parse_int_list(mu_text, "--mu");
      text = do_torus(spec, q, parse_int_list(k_text, "--k"), opts);
    } else if (model->parsed()) {
      const std::vector<double> t_list =
          t_text.empty() ? std::vector<double>{}
                         : parse_double_list(t_text, "--t");
      const std::vector<double> v_list = parse_double_list(v_text, "--v");
      for (double t : t_list)
        if (t < 0.0) throw morse::ParseError("--t values must be >= 0");
      for (double v : v_list)
        if (v > 0.0) throw morse::ParseError("--v values must be <= 0");
      text = do_model(parse_double_list(phi0_text, "--phi0"),
                      parse_double_list(levi_text, "--levi"), q, t_list,
                      v_list, residual, parse_units(units_name), rel_tol,
                      opts);
    } else if (check->parsed()) {
      bool failed = false;
      text = do_check(suite, failed);
      code = failed ? 5 : 0;
    }
    write_output(text, output_path);
    return code;
  } catch (const morse::ParseError& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return 2;
  } catch (const morse::NonHermitian& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return 2;
  } catch (const morse::NegativeWeight& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return 2;
  } catch (const morse::DimensionMismatch& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return 2;
  } catch (const morse::NotConformal& e) {
    std::cerr << "error (precondition): " << e.what() << "\n";
    return 2;
  } catch (const morse::ConvexityViolation& e) {
    std::cerr << "error (precondition): " << e.what() << "\n";
    return 2;
  } catch (const morse::DivergentBoundaryTerm& e) {
    std::cerr << "error (divergent): " << e.what() << "\n";
    return 3;
  } catch (const morse::UnboundedJSet& e) {
    std::cerr << "error (divergent): " << e.what() << "\n";
    return 3;
  } catch (const morse::DegenerateLevi& e) {
    std::cerr << "error (degenerate): " << e.what() << "\n";
    return 3;
  } catch (const morse::DegenerateCurvature& e) {
    std::cerr << "error (degenerate): " << e.what() << "\n";
    return 3;
  } catch (const morse::DegenerateEigenvalue& e) {
    std::cerr << "error (degenerate): " << e.what() << "\n";
    return 3;
  } catch (const morse::QuadratureNonConvergence& e) {
    std::cerr << "error (quadrature): " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
