#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jspec/acceptance.hpp"
#include "jspec/config.hpp"

using namespace jspec;
using config::json;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitMath = 2;
constexpr int kExitVerify = 3;

struct Common {
  std::string config_path;
  double tol = 1e-10;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool needs_config = true) {
  auto* opt = app->add_option("--config", c.config_path, "JSON operator spec");
  if (needs_config) opt->required();
  app->add_option("--tol", c.tol, "tolerance")->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "also write the result to this file");
}

void emit(const std::string& text, const std::string& out) {
  std::cout << text;
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) raise(ErrorKind::ConfigError, "cannot write \"" + out + "\"");
    f << text;
  }
}

void emit_json(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

Mode default_mode(const OperatorSpec& spec) {
  return spec.reg_class().kind == RegKind::None ? Mode::Generic : Mode::Regularized;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of doubly infinite complex Jacobi operators"};
  app.require_subcommand(1);

  Common sp;
  std::string region = "";
  double origin_radius = 0.0;
  bool generic = false;
  auto* c_spec = app.add_subcommand("spectrum", "locate eigenvalues in a rectangle");
  add_common(c_spec, sp);
  c_spec->add_option("--region", region, "re_min,re_max,im_min,im_max")->required();
  c_spec->add_option("--origin-radius", origin_radius, "excluded disk around 0 (compact classes)");
  c_spec->add_flag("--generic", generic, "search zeros of the plain F_J");

  Common gr;
  std::string grid_region;
  int nx = 0, ny = 0;
  bool regularized = false;
  auto* c_grid = app.add_subcommand("grid", "CSV dump of F_J or the regularized F over a grid");
  add_common(c_grid, gr);
  c_grid->add_option("--region", grid_region, "re_min,re_max,im_min,im_max")->required();
  c_grid->add_option("--nx", nx)->required()->check(CLI::Range(2, 100000));
  c_grid->add_option("--ny", ny)->required()->check(CLI::Range(2, 100000));
  c_grid->add_flag("--regularized", regularized, "evaluate the regularized function");

  Common cf;
  std::string cf_z;
  int cf_order = 0;
  bool cf_reg = false;
  auto* c_char = app.add_subcommand("charfn", "evaluate F_J (or the regularized F) at a point");
  add_common(c_char, cf);
  c_char->add_option("--z", cf_z)->required();
  c_char->add_option("--order", cf_order, "derivative order")->check(CLI::Range(0, kMaxJetOrder));
  c_char->add_flag("--regularized", cf_reg);

  Common ev;
  std::string ev_z, ev_range = "-5,5";
  int ev_order = 0;
  auto* c_eig = app.add_subcommand("eigvec", "eigenvector or generalized eigenvector chain");
  add_common(c_eig, ev);
  c_eig->add_option("--z", ev_z)->required();
  c_eig->add_option("--range", ev_range, "lo,hi");
  c_eig->add_option("--order", ev_order, "highest chain order")->check(CLI::Range(0, kMaxJetOrder - 1));

  Common gn;
  std::string gn_z;
  long gi = 0, gj = 0;
  auto* c_green = app.add_subcommand("green", "resolvent matrix element G_ij(z)");
  add_common(c_green, gn);
  c_green->add_option("--z", gn_z)->required();
  c_green->add_option("--i", gi)->required();
  c_green->add_option("--j", gj)->required();

  Common dp;
  std::string dp_z, dp_form = "compact";
  int dp_p = 2;
  long dp_n = 8;
  auto* c_detp = app.add_subcommand("detp", "finite-section regularized determinant, computed two ways");
  add_common(c_detp, dp);
  c_detp->add_option("--z", dp_z)->required();
  c_detp->add_option("--p", dp_p)->check(CLI::Range(1, 64));
  c_detp->add_option("--N", dp_n)->check(CLI::Range(0L, 100000L));
  c_detp->add_option("--form", dp_form)->check(CLI::IsMember({"compact", "resolvent"}));

  Common mu;
  std::string mu_z;
  auto* c_mult = app.add_subcommand("multiplicity", "algebraic multiplicity at a located eigenvalue");
  add_common(c_mult, mu);
  c_mult->add_option("--z", mu_z)->required();

  Common fs;
  std::string fs_region;
  long fs_n = 12;
  auto* c_sec = app.add_subcommand("section", "finite-section zeros (diagnostic only)");
  add_common(c_sec, fs);
  c_sec->add_option("--region", fs_region)->required();
  c_sec->add_option("--N", fs_n)->check(CLI::Range(1L, 5000L));

  Common vf;
  auto* c_verify = app.add_subcommand("verify", "run the example verification suite");
  add_common(c_verify, vf, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << config::error_json(ErrorKind::ConfigError, e.what()).dump(2) << "\n";
    return kExitConfig;
  }

  try {
    if (c_verify->parsed()) {
      bool all = true;
      std::ostringstream text;
      for (const auto& c : run_acceptance()) {
        for (const auto& k : c.checks)
          text << "CHECK " << k.id << " " << (k.pass ? "PASS" : "FAIL") << " measured=" << fmt(k.measured)
               << " bound=" << fmt(k.bound) << "\n";
        all = all && c.pass;
      }
      emit(text.str(), vf.out);
      return all ? 0 : kExitVerify;
    }

    if (c_spec->parsed()) {
      const auto spec = config::load_spec(sp.config_path);
      SpectrumOptions o;
      o.tol = sp.tol;
      o.origin_radius = origin_radius;
      o.force_generic = generic;
      emit_json(config::to_json(spectrum(spec, config::parse_region(region), o)), sp.out);
      return 0;
    }

    if (c_grid->parsed()) {
      const auto spec = config::load_spec(gr.config_path);
      const Box b = config::parse_region(grid_region);
      const Mode mode = regularized ? Mode::Regularized : Mode::Generic;
      struct Row {
        cplx z;
        CharValue v;
        std::string reason;
      };
      std::vector<Row> rows;
      bool any_nan = false;
      for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
          const cplx z(b.re_min + (b.re_max - b.re_min) * ix / (nx - 1),
                       b.im_min + (b.im_max - b.im_min) * iy / (ny - 1));
          Row r{z, {}, ""};
          try {
            EvalOptions o;
            o.tol = gr.tol;
            r.v = charfn(spec, z, o, mode);
          } catch (const Error& e) {
            if (e.kind() == ErrorKind::ConfigError) throw;
            r.reason = std::string(to_string(e.kind()));
            any_nan = true;
          }
          rows.push_back(r);
        }
      std::ostringstream csv;
      csv << "re,im,f_re,f_im,abs,tail_err,window_n" << (any_nan ? ",reason" : "") << "\n";
      for (const auto& r : rows) {
        csv << fmt(r.z.real()) << "," << fmt(r.z.imag()) << ",";
        if (r.reason.empty())
          csv << fmt(r.v.value.real()) << "," << fmt(r.v.value.imag()) << "," << fmt(std::abs(r.v.value)) << ","
              << fmt(r.v.tail_err) << "," << r.v.window << (any_nan ? "," : "");
        else
          csv << "nan,nan,nan,nan,nan," << r.reason;
        csv << "\n";
      }
      emit(csv.str(), gr.out);
      return 0;
    }

    if (c_char->parsed()) {
      const auto spec = config::load_spec(cf.config_path);
      EvalOptions o;
      o.tol = cf.tol;
      const Mode mode = cf_reg ? Mode::Regularized : Mode::Generic;
      const auto v = charfn_jet(spec, config::parse_complex(cf_z), cf_order, o, mode);
      json d = json::array();
      for (int k = 0; k <= cf_order; ++k) d.push_back(config::to_json(v.value.derivative(k)));
      emit_json({{"z", config::to_json(config::parse_complex(cf_z))},
                 {"regularized", cf_reg},
                 {"value", config::to_json(v.value.value())},
                 {"derivatives", d},
                 {"tail_err", v.tail_err},
                 {"window", v.window},
                 {"condition_sum", v.condition_sum},
                 {"scale", v.scale}},
                cf.out);
      return 0;
    }

    if (c_eig->parsed()) {
      const auto spec = config::load_spec(ev.config_path);
      const cplx z = config::parse_complex(ev_z);
      const auto [lo, hi] = config::parse_range(ev_range);
      const Mode mode = default_mode(spec);
      json out = {{"z", config::to_json(z)}, {"regularized", mode == Mode::Regularized}};
      if (ev_order == 0) {
        const auto s = eigenvector(spec, z, lo, hi, ev.tol, mode);
        out["eigenvector"] = config::to_json(s);
        out["residual"] = residual_norm(spec, z, s);
        out["tail_err"] = s.tail_err;
        out["window"] = s.window;
      } else {
        const auto ch = generalized_eigvecs(spec, z, ev_order + 1, lo, hi, ev.tol);
        json chain = json::array();
        for (std::size_t j = 0; j < ch.chain.size(); ++j) {
          json e = config::to_json(ch.chain[j]);
          e["order"] = j;
          e["chain_residual"] = ch.residuals[j];
          chain.push_back(e);
        }
        out["chain"] = chain;
        out["window"] = ch.chain.front().window;
      }
      emit_json(out, ev.out);
      return 0;
    }

    if (c_green->parsed()) {
      const auto spec = config::load_spec(gn.config_path);
      const cplx z = config::parse_complex(gn_z);
      const cplx g = green(spec, z, gi, gj, gn.tol, default_mode(spec));
      emit_json({{"z", config::to_json(z)}, {"i", gi}, {"j", gj}, {"value", config::to_json(g)}}, gn.out);
      return 0;
    }

    if (c_detp->parsed()) {
      const auto spec = config::load_spec(dp.config_path);
      const cplx z = config::parse_complex(dp_z);
      const auto r = detp_finite(spec, dp_p, z, dp_n, dp_form == "compact" ? DetForm::Compact : DetForm::Resolvent);
      auto cj = [](cplx v) { return std::isnan(v.real()) ? json(nullptr) : config::to_json(v); };
      emit_json({{"z", config::to_json(z)},
                 {"p", dp_p},
                 {"N", dp_n},
                 {"form", dp_form},
                 {"product_form", cj(r.product_form)},
                 {"recurrence_form", config::to_json(r.recurrence_form)},
                 {"identity_residual", std::isnan(r.identity_residual) ? json(nullptr) : json(r.identity_residual)},
                 {"trace_form", config::to_json(r.trace_form)}},
                dp.out);
      return 0;
    }

    if (c_mult->parsed()) {
      const auto spec = config::load_spec(mu.config_path);
      const cplx z = config::parse_complex(mu_z);
      const auto m = multiplicity(spec, z, mu.tol);
      emit_json({{"z", config::to_json(z)},
                 {"nu_a", m.nu_a},
                 {"certifying_radius", m.radius},
                 {"derivative_profile", m.derivative_profile}},
                mu.out);
      return 0;
    }

    if (c_sec->parsed()) {
      const auto spec = config::load_spec(fs.config_path);
      const auto rep = finite_section_zeros(spec, fs_n, config::parse_region(fs_region), fs.tol);
      json zs = json::array();
      for (const auto& p : rep.zeros)
        zs.push_back({{"z", config::to_json(p.point.z)},
                      {"multiplicity", p.point.multiplicity},
                      {"drift", std::isfinite(p.drift) ? json(p.drift) : json(nullptr)}});
      emit_json({{"label", SectionReport::label}, {"N", rep.N}, {"zeros", zs}}, fs.out);
      return 0;
    }
  } catch (const Error& e) {
    std::cout << config::error_json(e.kind(), e.what()).dump(2) << "\n";
    return e.kind() == ErrorKind::ConfigError ? kExitConfig : kExitMath;
  }
  return 0;
}
