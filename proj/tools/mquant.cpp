// mquant: command-line front end for the symbolic/numeric ladder-operator
// engine. Subcommands run the verification suites and demos and emit JSON
// reports (or a human summary with --format pretty).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mquant/fields.hpp"
#include "mquant/fock.hpp"
#include "mquant/kernels.hpp"
#include "mquant/multiquant.hpp"
#include "mquant/normal_order.hpp"
#include "mquant/parser.hpp"
#include "mquant/reports.hpp"
#include "mquant/urtheory.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitGuard = 4;

struct GlobalOpts {
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  std::string out;
  std::string format = "json";
};

void write_output(const GlobalOpts& g, const json& report, const std::string& pretty) {
  std::string text = g.format == "pretty" ? pretty : report.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out);
    if (!f) throw mq::Error("cannot open output file " + g.out);
    f << text;
  }
}

std::vector<std::array<double, 3>> parse_momenta(const std::string& text) {
  std::vector<std::array<double, 3>> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::array<double, 3> p{};
    if (std::sscanf(group.c_str(), "%lf,%lf,%lf", &p[0], &p[1], &p[2]) != 3)
      throw mq::Error("bad momentum '" + group + "' (expect px,py,pz)");
    out.push_back(p);
  }
  if (out.empty()) throw mq::Error("empty momentum list");
  return out;
}

mq::FourVector parse_point(const std::string& text) {
  mq::FourVector x{};
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &x[0], &x[1], &x[2], &x[3]) != 4)
    throw mq::Error("bad spacetime point '" + text + "' (expect t,x,y,z)");
  return x;
}

std::vector<mq::FockStatistics> parse_lifts(const std::string& text) {
  std::vector<mq::FockStatistics> lifts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int a = 0, b = 0;
    if (item == "fermi") {
      lifts.push_back(mq::FockStatistics::fermi());
    } else if (std::sscanf(item.c_str(), "bose:%d", &a) == 1) {
      lifts.push_back(mq::FockStatistics::bose(a));
    } else if (std::sscanf(item.c_str(), "parabose:%d:%d", &a, &b) == 2) {
      lifts.push_back(mq::FockStatistics::parabose(a, b));
    } else {
      throw mq::Error("bad lift '" + item + "' (expect fermi | bose:N | parabose:p:N)");
    }
  }
  if (lifts.empty()) throw mq::Error("empty lift list");
  return lifts;
}

// Numeric cross-check of a symbolic vacuum expectation. The expression must
// stay within one statistics family so it lives on one Fock space.
double normal_order_residual(const mq::RExpr& expr, const mq::StatisticsConfig& cfg) {
  using namespace mq;
  auto modes = expr.mode_set();
  if (modes.empty()) return 0.0;

  bool fermionic = false, bosonic = false, ur = false;
  for (const auto& [sp, label] : modes) {
    if (sp == Species::Electron || sp == Species::Positron) fermionic = true;
    if (sp == Species::Photon) bosonic = true;
    if (sp == Species::Ur) ur = true;
  }
  if (static_cast<int>(fermionic) + static_cast<int>(bosonic) + static_cast<int>(ur) > 1)
    throw UnsupportedParabosePattern(
        "numeric cross-check supports one statistics family per expression");

  const int budget = std::max<int>(1, static_cast<int>(expr.max_factors()));
  FockStatistics stats = FockStatistics::fermi();
  if (bosonic) stats = FockStatistics::bose(budget);
  if (ur) {
    auto st = cfg.of(Species::Ur);
    stats = st.kind == StatKind::Parabose ? FockStatistics::parabose(st.order, budget)
            : st.kind == StatKind::Fermi  ? FockStatistics::fermi()
                                          : FockStatistics::bose(budget);
  }
  std::vector<SpaceMode> space_modes;
  for (const auto& [sp, label] : modes) space_modes.push_back({sp, label});
  auto space = FockSpace::build(std::move(space_modes), stats);

  auto sym = vacuum_expectation(expr, cfg).to_complex();
  auto num = materialize(expr, space).vacuum_element();
  return std::abs(sym - num);
}

int cmd_normal_order(const GlobalOpts& g, const std::string& text, int parabose_order,
                     bool check_numeric) {
  using namespace mq;
  StatisticsConfig cfg;
  if (parabose_order > 0) cfg.set_ur(SpeciesStatistics::parabose(parabose_order));

  RExpr expr = parse_expr(text);
  RExpr nf = normal_order(expr, cfg);
  std::string canonical = print_expr(nf);

  json report;
  report["input"] = text;
  report["canonical"] = canonical;
  report["parabose_order"] = parabose_order;

  std::string pretty = canonical + "\n";
  bool pass = true;
  if (check_numeric) {
    double residual = normal_order_residual(expr, cfg);
    pass = residual <= g.tolerance;
    report["residual"] = residual;
    report["tolerance"] = g.tolerance;
    report["pass"] = pass;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", residual);
    pretty += std::string("numeric residual: ") + buf + (pass ? " (pass)" : " (FAIL)") + "\n";
  }
  write_output(g, report, pretty);
  return pass ? kExitPass : kExitFail;
}

int cmd_eq11(const GlobalOpts& g, int modes, int cutoff, int sector, int draws) {
  json report = mq::eq11_report(modes, cutoff, sector, draws, g.seed, g.tolerance);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", report["max_deviation"].get<double>());
  std::string pretty = "expected-frequency identity: modes=" + std::to_string(modes) +
                       " cutoff=" + std::to_string(cutoff) + " sector=" + std::to_string(sector) +
                       " draws=" + std::to_string(draws) + "\nmax |E(f_k) - p_k| = " + buf +
                       (report["pass"].get<bool>() ? " (pass)\n" : " (FAIL)\n");
  write_output(g, report, pretty);
  return report["pass"].get<bool>() ? kExitPass : kExitFail;
}

int cmd_contrast(const GlobalOpts& g, const std::string& momenta, double mass, int photon_cutoff,
                 const std::string& x_text, bool off_shell) {
  auto lattice = mq::MomentumLattice::create(parse_momenta(momenta), mass);
  json report = mq::contrast_report(lattice, photon_cutoff, parse_point(x_text), off_shell);
  std::ostringstream pretty;
  pretty << "field contrast suite\n"
         << "  dirac hermiticity defect:        " << report["hermiticity_defect_dirac"]
         << "  (> 0.1 expected)\n"
         << "  photon hermiticity defect:       " << report["hermiticity_defect_photon"]
         << "  (symbolic " << report["hermiticity_defect_photon_symbolic"] << ")\n"
         << "  [charge, hamiltonian] norm:      " << report["charge_commutator_norm"] << "\n"
         << "  [number, field] norm:            "
         << report["photon_number_field_commutator_norm"] << "  (> 0 expected)\n"
         << "  on-shell mode current max:       " << report["on_shell_current_max_abs"] << "\n"
         << (report["pass"].get<bool>() ? "PASS\n" : "FAIL\n");
  write_output(g, report, pretty.str());
  return report["pass"].get<bool>() ? kExitPass : kExitFail;
}

int cmd_tower(const GlobalOpts& g, int alternative, const std::string& lifts_text, int draws,
              int parabose_order, int parabose_modes, int parabose_cutoff) {
  using namespace mq;
  auto lifts = parse_lifts(lifts_text);
  json report;
  if (alternative == 2) {
    report = ur_tower_demo(lifts, draws, g.seed, parabose_order, parabose_modes, parabose_cutoff);
  } else {
    report = tower_report(build_tower(Alternative::make(alternative), lifts), draws, g.seed);
  }
  bool pass = true;
  std::ostringstream pretty;
  pretty << "quantization tower (base alternative n=" << alternative << ")\n";
  for (const auto& lv : report["levels"]) {
    pretty << "  " << lv["name"].get<std::string>() << ": dim " << lv["dim"] << " ["
           << lv["statistics"].get<std::string>() << "]";
    if (!lv["eq11_max_deviation"].is_null()) {
      double dev = lv["eq11_max_deviation"].get<double>();
      pass = pass && dev <= g.tolerance;
      pretty << " frequency-identity deviation " << dev;
    }
    pretty << "\n";
  }
  pretty << (pass ? "PASS\n" : "FAIL\n");
  write_output(g, report, pretty.str());
  return pass ? kExitPass : kExitFail;
}

int cmd_parabose(const GlobalOpts& g, int order, int modes, int cutoff) {
  json report = mq::parabose_report(order, modes, cutoff, g.tolerance);
  std::ostringstream pretty;
  pretty << "green-ansatz parabose operators: p=" << order << " modes=" << modes
         << " cutoff=" << cutoff << "\n"
         << "  <0| A A+ |0> = " << report["vacuum_pairing"] << " (deviation "
         << report["vacuum_pairing_max_deviation"] << ")\n"
         << "  trilinear relation residual: " << report["trilinear_residual"] << "\n"
         << (report["pass"].get<bool>() ? "PASS\n" : "FAIL\n");
  write_output(g, report, pretty.str());
  return report["pass"].get<bool>() ? kExitPass : kExitFail;
}

// --config FILE provides defaults for any long option (same key names,
// without the leading dashes); command-line flags win.
json load_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream f(argv[i + 1]);
      if (!f) throw mq::Error(std::string("cannot read config file ") + argv[i + 1]);
      json j;
      f >> j;
      if (!j.is_object()) throw mq::Error("config file must hold a JSON object");
      return j;
    }
  }
  return json::object();
}

template <class T>
void config_default(const json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg[key].get<T>();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    json cfg = load_config(argc, argv);

    GlobalOpts g;
    config_default(cfg, "seed", g.seed);
    config_default(cfg, "tolerance", g.tolerance);
    config_default(cfg, "out", g.out);
    config_default(cfg, "format", g.format);

    CLI::App app{"symbolic + numeric ladder-operator engine"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flag values win)");
    app.add_option("--seed", g.seed, "random seed recorded in reports");
    app.add_option("--tolerance", g.tolerance, "pass/fail tolerance");
    app.add_option("--out", g.out, "write the report to a file instead of stdout");
    app.add_option("--format", g.format, "json | pretty")
        ->check(CLI::IsMember({"json", "pretty"}));

    // normal-order
    auto* no = app.add_subcommand("normal-order", "rewrite an expression to canonical form");
    std::string expr_text;
    int parabose_order = 0;
    config_default(cfg, "parabose-order", parabose_order);
    bool check_numeric = false;
    no->add_option("expr", expr_text, "operator expression in the DSL")->required();
    no->add_option("--parabose-order", parabose_order,
                   "treat u as parabose of this order (0 = plain bose)");
    no->add_flag("--check-numeric", check_numeric,
                 "cross-check the vacuum expectation against the matrix backend");

    // eq11
    auto* eq = app.add_subcommand("eq11", "probability as expected relative frequency");
    int modes = 2, cutoff = 6, sector = 4, draws = 200;
    config_default(cfg, "modes", modes);
    config_default(cfg, "cutoff", cutoff);
    config_default(cfg, "sector", sector);
    config_default(cfg, "draws", draws);
    eq->add_option("--modes", modes, "number of outcomes");
    eq->add_option("--cutoff", cutoff, "total-occupation cutoff of the lifted space");
    eq->add_option("--sector", sector, "collective size n");
    eq->add_option("--draws", draws, "random truth vectors");

    // contrast
    auto* ct = app.add_subcommand("contrast", "dirac vs photon structural contrast");
    std::string momenta = "0,0,1";
    double mass = 1.0;
    int photon_cutoff = 3;
    std::string x_text = "0.1,0.2,0.3,0.4";
    bool off_shell = false;
    config_default(cfg, "momenta", momenta);
    config_default(cfg, "mass", mass);
    config_default(cfg, "photon-cutoff", photon_cutoff);
    config_default(cfg, "x", x_text);
    ct->add_option("--momenta", momenta, "lattice momenta px,py,pz;px,py,pz;...");
    ct->add_option("--mass", mass, "dirac mass (photon side is massless)");
    ct->add_option("--photon-cutoff", photon_cutoff, "photon space occupation cutoff");
    ct->add_option("--x", x_text, "spacetime point t,x,y,z");
    ct->add_flag("--off-shell-probe", off_shell, "include an off-shell current probe");

    // tower
    auto* tw = app.add_subcommand("tower", "iterated quantization tower");
    int alternative = 2;
    std::string lifts_text = "fermi,bose:2";
    int tower_draws = 100;
    int p_order = 2, p_modes = 2, p_cutoff = 3;
    config_default(cfg, "alternative", alternative);
    config_default(cfg, "lifts", lifts_text);
    config_default(cfg, "draws", tower_draws);
    tw->add_option("--alternative", alternative, "base alternative size n");
    tw->add_option("--lifts", lifts_text, "comma list: fermi | bose:N | parabose:p:N");
    tw->add_option("--draws", tower_draws, "random draws per level check");
    tw->add_option("--parabose-order", p_order, "parabose section: order");
    tw->add_option("--parabose-modes", p_modes, "parabose section: logical modes");
    tw->add_option("--parabose-cutoff", p_cutoff, "parabose section: cutoff");

    // parabose
    auto* pb = app.add_subcommand("parabose", "green-ansatz parabose checks");
    int order = 2, pmodes = 2, pcutoff = 3;
    config_default(cfg, "order", order);
    config_default(cfg, "modes", pmodes);
    config_default(cfg, "cutoff", pcutoff);
    pb->add_option("--order", order, "parabose order p");
    pb->add_option("--modes", pmodes, "logical modes d");
    pb->add_option("--cutoff", pcutoff, "total-occupation cutoff");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? kExitPass : kExitParse;
    }

    if (no->parsed()) return cmd_normal_order(g, expr_text, parabose_order, check_numeric);
    if (eq->parsed()) return cmd_eq11(g, modes, cutoff, sector, draws);
    if (ct->parsed()) return cmd_contrast(g, momenta, mass, photon_cutoff, x_text, off_shell);
    if (tw->parsed())
      return cmd_tower(g, alternative, lifts_text, tower_draws, p_order, p_modes, p_cutoff);
    if (pb->parsed()) return cmd_parabose(g, order, pmodes, pcutoff);
    return kExitParse;
  } catch (const mq::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const mq::UnsupportedParabosePattern& e) {
    std::cerr << "unsupported pattern: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const mq::DimensionOverflow& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
