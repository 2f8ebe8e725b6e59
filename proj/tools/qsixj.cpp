// qsixj: quantum 6j-symbols, their Fourier transform, truncated tetrahedra
// and conjecture runs from the command line.
//
// Exit codes: 0 success, 2 invalid input, 3 geometry, 4 solver.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsixj/asymptotics.hpp"
#include "qsixj/errors.hpp"
#include "qsixj/geometry.hpp"
#include "qsixj/qcore.hpp"
#include "qsixj/run_spec.hpp"
#include "qsixj/transform.hpp"

using namespace qsixj;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitSolver = 4;

std::vector<Angle> parse_angles(const std::vector<std::string>& text) {
  std::vector<Angle> out;
  for (const auto& t : text) out.push_back(Angle::parse(t));
  return out;
}

std::vector<double> values(const std::vector<Angle>& a) {
  std::vector<double> out;
  for (const auto& x : a) out.push_back(x.value);
  return out;
}

json phase_log_json(const PhaseLog& v) {
  json j{{"zero", v.zero}, {"log_mag", v.zero ? json(nullptr) : json(v.log_mag)}, {"phase", v.phase}};
  if (!v.zero && std::abs(v.log_mag) < 700) {
    const auto z = v.to_complex();
    j["value"] = {z.real(), z.imag()};
  }
  return j;
}

void print(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << std::setprecision(17);
  for (const auto& [k, v] : j.items()) {
    std::cout << k << ": ";
    if (v.is_number_float()) std::cout << format_double(v.get<double>());
    else if (v.is_string()) std::cout << v.get<std::string>();
    else std::cout << v.dump();
    std::cout << '\n';
  }
}

struct GeometryArgs {
  std::vector<int> deep_edges;
  std::vector<double> lengths;
  std::vector<std::string> deep_angles;
  std::vector<std::string> angles;
  CLI::Option* lengths_opt = nullptr;
  CLI::Option* deep_angles_opt = nullptr;

  void add(CLI::App* cmd) {
    cmd->add_option("--deep-edges", deep_edges, "Deep edges, 1-based")->delimiter(',');
    lengths_opt = cmd->add_option("--lengths", lengths, "Deep-edge lengths")->delimiter(',');
    deep_angles_opt = cmd->add_option("--deep-angles", deep_angles, "Deep-edge angles")->delimiter(',');
    cmd->add_option("--angles", angles, "Regular dihedral angles, e.g. pi/5,pi/4")->required()->delimiter(',');
  }

  TetraSpec spec() const {
    const bool has_l = lengths_opt->count() > 0, has_a = deep_angles_opt->count() > 0;
    if (has_l && has_a) throw InputError("give either --lengths or --deep-angles, not both");
    const DeepPartition p = DeepPartition::from_edges(deep_edges);
    if (!has_l && !has_a && p.deep_count() > 0) throw InputError("deep edges need --lengths or --deep-angles");
    const auto reg = values(parse_angles(angles));
    TetraSpec s = has_a ? TetraSpec::with_angles(p, values(parse_angles(deep_angles)), reg)
                        : TetraSpec::with_lengths(p, lengths, reg);
    s.validate();
    return s;
  }
};

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

int cmd_sixj(int r, const std::vector<int>& colors, bool as_json) {
  if (colors.size() != 6) throw InputError("--colors needs six values");
  const RootContext ctx(r);
  Coloring6 c;
  std::copy(colors.begin(), colors.end(), c.begin());
  if (!admissible_six(ctx, c)) throw InputError("colors are not r-admissible");
  print(phase_log_json(sixj(ctx, c)), as_json);
  return 0;
}

int cmd_dft(int r, const std::vector<int>& deep, const std::vector<int>& b, const std::vector<int>& a,
            const DftOptions& opt, bool as_json) {
  auto ctx = std::make_shared<const RootContext>(r);
  const DftResult res = dft_tetra(DftInput::make(ctx, DeepPartition::from_edges(deep), b, a), opt);
  json j = phase_log_json(res.value);
  j["term_count"] = res.term_count;
  j["empty_sum"] = res.empty_sum;
  j["consistent_with_zero"] = res.consistent_with_zero();
  j["precision"] = res.precision_bits ? "mp" + std::to_string(res.precision_bits) : "double";
  j["lost_bits"] = res.lost_bits;
  j["resolved"] = res.resolved;
  j["via_duality"] = res.via_duality;
  print(j, as_json);
  return 0;
}

int cmd_volume(const TetraSpec& spec, bool as_json) {
  const TetraSpec ls = to_lengths(spec);
  const ExistenceReport rep = tetra_exists(gram(ls));
  if (!rep.exists()) {
    std::cerr << "error: the Gram matrix fails the existence criterion (eigenvalues " << rep.eigenvalues.transpose()
              << ")\n";
    return kExitGeometry;
  }
  json j;
  j["partition"] = spec.partition.label();
  j["criterion"] = "exists";
  j["volume"] = volume(spec);
  if (spec.partition.deep_count() > 0) {
    j["covolume"] = covolume(ls);
    j["deep_lengths"] = vec_json(ls.deep_values());
    j["deep_angles"] = vec_json(deep_angles(ls));
  }
  print(j, as_json);
  return 0;
}

int cmd_gram(const TetraSpec& spec, bool as_json) {
  const TetraSpec ls = to_lengths(spec);
  const GramMatrix4 g = gram(ls);
  const ExistenceReport rep = tetra_exists(g);
  json j;
  j["gram"] = json::array();
  for (int i = 0; i < 4; ++i) j["gram"].push_back({g(i, 0), g(i, 1), g(i, 2), g(i, 3)});
  j["determinant"] = g.determinant();
  j["eigenvalues"] = vec_json(rep.eigenvalues);
  j["signature"] = std::to_string(rep.positive) + "," + std::to_string(rep.negative);
  j["off_diagonal_cofactors_positive"] = rep.off_diagonal_cofactors_positive;
  j["diagonal_cofactors_negative"] = rep.diagonal_cofactors_negative;
  j["criterion"] = rep.verdict == Existence::exists ? "exists"
                   : rep.verdict == Existence::absent ? "absent"
                                                      : "indeterminate";
  print(j, as_json);
  return rep.exists() ? 0 : kExitGeometry;
}

int cmd_conjecture(RunSpecFile sf, const DftOptions& base, const std::string& format_override,
                   const std::string& output_override, const std::string& rule_override, bool fit) {
  if (!format_override.empty()) sf.format = format_override == "json" ? OutputFormat::json : OutputFormat::csv;
  if (!output_override.empty()) sf.output_path = output_override == "-" ? "" : output_override;
  if (!rule_override.empty()) sf.rule = parse_coloring_rule(rule_override);

  ConjectureOptions opt;
  opt.dft = base;
  opt.dft.precision = sf.precision;
  opt.angles = sf.exact_angles();
  const auto records = run_conjecture(sf.tetra(), sf.rule, sf.r_values, opt);

  std::optional<FitResult> fr;
  if (fit) fr = fit_growth(records);

  std::ofstream file;
  if (!sf.output_path.empty()) {
    file.open(sf.output_path);
    if (!file) throw InputError("cannot write '" + sf.output_path + "'");
  }
  std::ostream& os = sf.output_path.empty() ? std::cout : file;
  if (sf.format == OutputFormat::json) {
    os << records_to_json(records, fr, sf.name) << '\n';
  } else {
    write_csv(os, records);
    if (fr) {
      if (sf.output_path.empty()) {
        std::cerr << fit_to_json(*fr, records) << '\n';
      } else {
        std::ofstream side(sf.output_path + ".fit.json");
        side << fit_to_json(*fr, records) << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum 6j-symbols at roots of unity, their Fourier transform and truncated hyperbolic tetrahedra"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: SIXJ_THREADS, then all cores)");
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON instead of key: value lines (sixj, dft, volume, gram)");

  auto* sixj_cmd = app.add_subcommand("sixj", "Quantum 6j-symbol");
  int r = 0;
  std::vector<int> colors;
  sixj_cmd->add_option("--r", r, "Odd r >= 3")->required();
  sixj_cmd->add_option("--colors", colors, "a1,...,a6")->required()->delimiter(',');

  auto* dft_cmd = app.add_subcommand("dft", "Fourier transform Yhat_r(b_I; a_J)");
  std::vector<int> deep_edges, b, a;
  std::string precision = "auto", color_set = "all";
  bool no_shortcut = false;
  dft_cmd->add_option("--r", r, "Odd r >= 3")->required();
  dft_cmd->add_option("--deep-edges", deep_edges, "Deep edges I, 1-based")->delimiter(',');
  dft_cmd->add_option("--b", b, "Colors on I, ascending edge order")->delimiter(',');
  dft_cmd->add_option("--a", a, "Colors on J, ascending edge order")->delimiter(',');
  dft_cmd->add_option("--precision", precision, "auto | double | <bits>");
  dft_cmd->add_option("--color-set", color_set, "all | even")->check(CLI::IsMember({"all", "even"}));
  dft_cmd->add_flag("--no-duality-shortcut", no_shortcut, "Sum |I| > 3 directly");

  auto* vol_cmd = app.add_subcommand("volume", "Volume of a deeply truncated tetrahedron");
  GeometryArgs vol_args;
  vol_args.add(vol_cmd);

  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix and existence criterion");
  GeometryArgs gram_args;
  gram_args.add(gram_cmd);

  auto* conj_cmd = app.add_subcommand("conjecture", "Growth of Yhat_r against 2 Vol from a JSON run spec");
  std::string spec_path, format, output, rule;
  bool fit = false;
  std::vector<int> r_override;
  conj_cmd->add_option("spec", spec_path, "Run spec file")->required();
  conj_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  conj_cmd->add_option("--output", output, "Output path, - for standard output");
  conj_cmd->add_option("--rule", rule, "half | quarter-doubled | quarter-raw");
  conj_cmd->add_option("--r-values", r_override, "Override the spec's r list")->delimiter(',');
  conj_cmd->add_flag("--fit", fit, "Fit L + p log(r)/r + q/r; JSON sidecar <output>.fit.json");
  conj_cmd->add_option("--precision", precision, "Override the spec's precision");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    DftOptions opt;
    opt.threads = threads;
    if (*sixj_cmd) return cmd_sixj(r, colors, as_json);
    if (*dft_cmd) {
      opt.precision = Precision::parse(precision);
      opt.color_set = color_set == "even" ? ColorSet::even : ColorSet::all;
      opt.duality_shortcut = !no_shortcut;
      return cmd_dft(r, deep_edges, b, a, opt, as_json);
    }
    if (*vol_cmd) return cmd_volume(vol_args.spec(), as_json);
    if (*gram_cmd) return cmd_gram(gram_args.spec(), as_json);
    if (*conj_cmd) {
      RunSpecFile sf = RunSpecFile::load(spec_path);
      if (!r_override.empty()) {
        for (int rv : r_override)
          if (rv < 3 || rv % 2 == 0) throw InputError("r must be odd and >= 3, got " + std::to_string(rv));
        sf.r_values = r_override;
      }
      if (conj_cmd->count("--precision")) sf.precision = Precision::parse(precision);
      return cmd_conjecture(std::move(sf), opt, format, output, rule, fit);
    }
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return kExitGeometry;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
