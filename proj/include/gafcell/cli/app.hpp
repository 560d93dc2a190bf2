#pragma once

// gafcell command line: bounds, table, limits, verify, simulate, export-partition.
// Exit codes: 0 success, 1 runtime/config error, 3 a verification check
// failed, CLI11 codes for usage errors.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gafcell/bounds.hpp"
#include "gafcell/cli/config.hpp"
#include "gafcell/cli/json_io.hpp"
#include "gafcell/partition.hpp"
#include "gafcell/sim.hpp"
#include "gafcell/verify.hpp"

namespace gafcell::cli {

inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 3;

inline std::string num(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

inline std::string fixed(double v, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

// Column-aligned plain text table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> w(header_.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    };
    widen(header_);
    for (const auto& r : rows_) widen(r);
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        os << (i ? "  " : "");
        if (i + 1 < r.size()) os << std::left << std::setw(static_cast<int>(w[i]));
        os << r[i];
      }
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

  void print_csv(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

enum class Format { Text, Json, Csv };

inline std::string opt_str(const std::optional<double>& v, int precision = 10) {
  return v ? num(*v, precision) : std::string();
}

inline TextTable report_table(const ConstraintReport& r, int precision) {
  TextTable t({"protocol", "shape", "range", "regime", "req1_max_size", "req2_max_size", "binding",
               "combined_max_size", "max_cell_measure", "published_measure", "agreement", "lattice_max_size",
               "lattice_quotient"});
  t.add({std::string(to_string(r.protocol)), std::string(to_string(r.shape)), num(r.range, precision),
         r.regime.is_finite() ? "d=" + num(r.regime.subcell_size(), precision) : std::string("infinitesimal"),
         num(r.req1_max_size_param, precision), num(r.req2_max_size_param, precision),
         std::string(to_string(r.binding)), num(r.combined_max_size_param, precision),
         num(r.max_cell_measure, precision), opt_str(r.published_measure, precision),
         std::string(to_string(r.agreement)), opt_str(r.lattice_max_size_param, precision),
         r.lattice_quotient ? std::to_string(*r.lattice_quotient) : std::string()});
  return t;
}

inline void print_report(std::ostream& os, const ConstraintReport& r) {
  const auto row = [&](const std::string& k, const std::string& v) {
    os << std::left << std::setw(26) << k << v << '\n';
  };
  row("protocol", std::string(to_string(r.protocol)));
  row("shape", std::string(to_string(r.shape)));
  row("range", num(r.range));
  row("regime", r.regime.is_finite() ? "finite d=" + num(r.regime.subcell_size()) : "infinitesimal");
  row("req1_max_size_param", num(r.req1_max_size_param, 10));
  row("req2_max_size_param", num(r.req2_max_size_param, 10));
  row("binding", std::string(to_string(r.binding)));
  row("combined_max_size_param", num(r.combined_max_size_param, 10));
  row("max_cell_measure", num(r.max_cell_measure, 10));
  row("req1_measure", num(r.req1_measure, 10));
  row("req2_measure", num(r.req2_measure, 10));
  if (r.published_measure) row("published_measure", num(*r.published_measure, 10));
  row("agreement", std::string(to_string(r.agreement)));
  if (!r.agreement_details.empty()) row("agreement_details", r.agreement_details);
  if (r.lattice_max_size_param) row("lattice_max_size_param", num(*r.lattice_max_size_param, 10));
  if (r.lattice_quotient) row("lattice_quotient", std::to_string(*r.lattice_quotient));
}

inline void emit_table(std::ostream& os, const TextTable& t, Format f) {
  if (f == Format::Csv) {
    t.print_csv(os);
  } else {
    t.print(os);
  }
}

inline void write_timeseries_csv(std::ostream& os, const SimReport& r) {
  os << "time,active_count,live_count,req1_worst,req2_worst\n";
  for (const AuditRecord& a : r.audits) {
    os << num(a.time, 12) << ',' << a.active_count << ',' << a.live_count << ',' << num(a.req1_worst, 12) << ','
       << num(a.req2_worst, 12) << '\n';
  }
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << content;
}

inline std::string sim_summary(const SimReport& r) {
  std::ostringstream os;
  os << "seed " << r.seed << ": lifetime " << num(r.lifetime_first_cell_death, 10) << (r.censored ? " (censored)" : "")
     << ", model estimate " << num(r.lifetime_model_estimate, 10) << ", cells " << r.cells << " (" << r.nonempty_cells
     << " non-empty), req1 pass " << num(r.req1_pass_rate, 4) << ", req2 pass " << num(r.req2_pass_rate, 4)
     << ", single-active " << num(r.single_active_fraction, 4);
  return os.str();
}

inline std::size_t parse_samples(const std::string& text) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InvalidArgument("--samples: expected a count, got '" + text + "'");
  }
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e12) throw InvalidArgument("--samples: expected a positive count");
  return static_cast<std::size_t>(v);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cell-size bounds, verification and duty-cycling simulation for GAF, HGAF and eHGAF"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(keys_help());
  bool strict_seed = false;
  app.add_flag("--strict-seed", strict_seed, "require an explicit --seed for randomised commands");

  bool json_out = false, csv_out = false;
  auto add_format = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", json_out, "machine-readable JSON output");
    auto* c = sub->add_flag("--csv", csv_out, "CSV output");
    j->excludes(c);
  };
  auto format = [&] { return json_out ? Format::Json : (csv_out ? Format::Csv : Format::Text); };

  const std::vector<std::string> shape_names = {"square",      "triangle", "hexagon",    "cube",      "tetrahedron",
                                                "octahedron",  "dodecahedron", "icosahedron", "hexahedron"};
  const std::vector<std::string> protocol_names = {"gaf", "hgaf", "ehgaf"};

  // bounds
  auto* bounds = app.add_subcommand("bounds", "maximum cell size for a protocol and cell shape");
  std::string b_protocol, b_shape;
  double b_range = 1.0;
  std::optional<double> b_subcell;
  std::optional<int> b_quotient;
  bounds->add_option("--protocol", b_protocol, "gaf | hgaf | ehgaf")->required()->check(CLI::IsMember(protocol_names));
  bounds->add_option("--shape", b_shape, "cell shape")->required()->check(CLI::IsMember(shape_names));
  bounds->add_option("--range", b_range, "communication range R")->capture_default_str();
  auto* b_d = bounds->add_option("--subcell-size", b_subcell, "finite subcell size d (hgaf/ehgaf, 2D)");
  bounds->add_option("--quotient", b_quotient, "fixed subcell count per axis m = r/d")->excludes(b_d);
  add_format(bounds);

  // table
  auto* table = app.add_subcommand("table", "maximum-size table (1) or lifetime table (2)");
  int t_which = 1;
  double t_range = 1.0;
  bool t_paper = false;
  table->add_option("--which", t_which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  table->add_option("--range", t_range, "communication range R")->capture_default_str();
  table->add_flag("--paper-values", t_paper, "table 2 from the reported polyhedron measures");
  add_format(table);

  // limits
  auto* limits = app.add_subcommand("limits", "shape-independent upper bound and lens measure");
  int l_dim = 3;
  double l_range = 1.0;
  std::optional<std::size_t> l_cells;
  limits->add_option("--dimension", l_dim, "2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str();
  limits->add_option("--range", l_range, "communication range R")->capture_default_str();
  limits->add_option("--cells", l_cells, "also print the largest 3D field covered by this many cells");
  add_format(limits);

  // verify
  auto* verify = app.add_subcommand("verify", "closed forms against sampling oracles");
  std::string v_target = "metrics";
  std::string v_shape, v_protocol;
  std::string v_samples = "1e6";
  std::optional<std::uint64_t> v_seed;
  std::vector<std::size_t> v_n;
  double v_tol = 0.01;
  std::optional<double> v_subcell;
  verify->add_option("--target", v_target, "metrics | worst-case | lemma1")
      ->check(CLI::IsMember({"metrics", "worst-case", "lemma1"}))
      ->capture_default_str();
  verify->add_option("--shape", v_shape, "cell shape (default: every supported shape)")
      ->check(CLI::IsMember(shape_names));
  verify->add_option("--protocol", v_protocol, "protocol for worst-case (default: all)")
      ->check(CLI::IsMember(protocol_names));
  verify->add_option("--samples", v_samples, "Monte-Carlo samples, e.g. 1e6")->capture_default_str();
  verify->add_option("--seed", v_seed, "random seed (default 1)");
  verify->add_option("--n", v_n, "lemma1 cell counts (default 1 2 3)");
  verify->add_option("--tolerance", v_tol, "relative tolerance")->capture_default_str();
  verify->add_option("--subcell-size", v_subcell, "finite subcell size for worst-case");
  add_format(verify);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the duty-cycling simulation");
  simulate->footer(keys_help());
  std::string s_config, s_compare, s_out;
  std::optional<std::uint64_t> s_seed;
  std::size_t s_seeds = 1;
  std::vector<std::string> s_sets;
  auto* s_cfg_opt = simulate->add_option("--config", s_config, "config file");
  auto* s_cmp_opt = simulate->add_option("--compare", s_compare, "comma-separated config files to compare");
  s_cfg_opt->excludes(s_cmp_opt);
  simulate->add_option("--seed", s_seed, "base seed (overrides sim.seed)");
  simulate->add_option("--seeds", s_seeds, "number of seeds: base, base+1, ...")->capture_default_str();
  simulate->add_option("--out", s_out, "output directory for report/timeseries files");
  simulate->add_option("--set", s_sets, "override section.key=value (repeatable)");
  add_format(simulate);

  // export-partition
  auto* exportp = app.add_subcommand("export-partition", "write cell geometry for plotting");
  exportp->footer(keys_help());
  std::string e_config, e_out;
  std::vector<std::string> e_sets;
  std::int64_t e_phase = 0;
  exportp->add_option("--config", e_config, "config file (defaults apply when omitted)");
  exportp->add_option("--out", e_out, "output path, - for stdout")->required();
  exportp->add_option("--set", e_sets, "override section.key=value (repeatable)");
  exportp->add_option("--phase", e_phase, "rotation phase; ehgaf schemes with subcells slide accordingly");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto load_config = [&](const std::string& path, const std::vector<std::string>& sets) {
    RunConfig cfg = path.empty() ? RunConfig() : RunConfig::load(path);
    cfg.apply_environment();
    for (const auto& s : sets) cfg.set(s);
    return cfg;
  };

  try {
    const Format fmt = format();

    if (*bounds) {
      const Protocol p = *parse_protocol(b_protocol);
      const ShapeKind s = *parse_shape_kind(b_shape);
      ConstraintReport rep;
      if (b_quotient) {
        rep = max_cell_for_quotient(p, s, b_range, *b_quotient);
      } else {
        rep = max_cell(p, s, b_range, b_subcell ? SubcellRegime::finite(*b_subcell) : SubcellRegime::infinitesimal());
      }
      if (fmt == Format::Json) {
        out << document("constraint_report", rep).dump(2) << '\n';
      } else if (fmt == Format::Csv) {
        report_table(rep, 12).print_csv(out);
      } else {
        print_report(out, rep);
      }
      return 0;
    }

    if (*table) {
      if (t_which == 1) {
        const auto rows = table1(t_range);
        if (fmt == Format::Json) {
          out << document("table1", rows).dump(2) << '\n';
          return 0;
        }
        TextTable t({"row", "protocol", "shape", "max_measure"});
        for (const auto& r : rows) {
          t.add({r.label, std::string(to_string(r.protocol)), std::string(to_string(r.shape)),
                 num(r.max_measure, fmt == Format::Csv ? 12 : 6)});
        }
        emit_table(out, t, fmt);
        return 0;
      }
      const auto rows = lifetime_table(t_range, t_paper);
      if (fmt == Format::Json) {
        out << document("table2", rows).dump(2) << '\n';
        return 0;
      }
      TextTable t({"shape", "cell_measure", "percent_of_bound"});
      for (const auto& r : rows) {
        t.add({std::string(to_string(r.shape)), num(r.cell_measure, fmt == Format::Csv ? 12 : 6),
               fmt == Format::Csv ? num(r.percent_of_bound, 12) : fixed(r.percent_of_bound, 1)});
      }
      emit_table(out, t, fmt);
      return 0;
    }

    if (*limits) {
      const TheoremBound b = theoretical_upper_bound(l_dim, l_range);
      std::optional<double> field;
      if (l_cells) field = lemma1_field_size(*l_cells, l_range);
      if (fmt == Format::Json) {
        json doc = document("theorem_bound", b);
        if (field) doc["lemma1_field_size"] = *field;
        out << doc.dump(2) << '\n';
        return 0;
      }
      TextTable t({"dimension", "range", "single_cell_max", "delta", "asymptotic_avg", "lemma1_field_size"});
      const int p = fmt == Format::Csv ? 12 : 6;
      t.add({std::to_string(b.dimension), num(b.range, p), num(b.single_cell_max, p), num(b.delta, p),
             num(b.asymptotic_avg, p), field ? num(*field, p) : std::string()});
      emit_table(out, t, fmt);
      return 0;
    }

    if (*verify) {
      if (strict_seed && !v_seed) throw InvalidArgument("--strict-seed: verify needs an explicit --seed");
      const std::size_t samples = parse_samples(v_samples);
      const std::uint64_t seed = v_seed.value_or(1);
      const std::size_t minimum = v_target == "lemma1" ? kMinUnionSamples : kMinOracleSamples;
      if (samples < minimum) {
        throw InvalidArgument("--samples " + std::to_string(samples) + " is below the minimum of " +
                              std::to_string(minimum) + " for target " + v_target);
      }
      OracleOptions opt;
      opt.samples = samples;
      opt.seed = seed;
      bool all_pass = true;
      TextTable t({"target", "subject", "quantity", "closed_form", "sampled", "relative_error", "tolerance", "pass"});
      const int p = fmt == Format::Csv ? 12 : 6;
      auto add_cmp = [&](const std::string& target, const std::string& subject, const Comparison& c) {
        t.add({target, subject, c.quantity, num(c.closed_form, p), num(c.sampled, p), num(c.relative_error, 3),
               num(c.tolerance, 3), c.pass ? "pass" : "FAIL"});
        all_pass = all_pass && c.pass;
      };
      json doc;
      if (v_target == "metrics") {
        std::vector<MetricsVerification> results;
        for (ShapeKind s : kAllShapeKinds) {
          if (!v_shape.empty() && s != *parse_shape_kind(v_shape)) continue;
          results.push_back(verify_metrics(s, 1.0, opt, v_tol));
          for (const Comparison& c : results.back().checks) add_cmp("metrics", std::string(to_string(s)), c);
        }
        doc = document("metrics_verification", results);
      } else if (v_target == "worst-case") {
        std::vector<ConstraintVerification> results;
        for (Protocol pr : {Protocol::GAF, Protocol::HGAF, Protocol::eHGAF}) {
          if (!v_protocol.empty() && pr != *parse_protocol(v_protocol)) continue;
          for (ShapeKind s : kAllShapeKinds) {
            if (!v_shape.empty() && s != *parse_shape_kind(v_shape)) continue;
            if (!is_supported(pr, s)) {
              if (!v_shape.empty() && !v_protocol.empty()) max_cell(pr, s, 1.0);  // names the gap
              continue;
            }
            const SubcellRegime regime = v_subcell ? SubcellRegime::finite(*v_subcell) : SubcellRegime::infinitesimal();
            if (regime.is_finite() && (pr == Protocol::GAF || dimension_of(s) == 3)) continue;
            results.push_back(verify_constraints(pr, s, 1.0, regime, opt, v_tol));
            const auto& v = results.back();
            const std::string subject = std::string(to_string(pr)) + "-" + std::string(to_string(s));
            add_cmp("worst-case", subject, v.req1_at_max);
            add_cmp("worst-case", subject, v.req2_at_max);
            const bool over = v.req1_at_overshoot > 1.0 && v.req2_at_overshoot > 1.0;
            t.add({"worst-case", subject, "exceeds R at 1.05x", "", num(std::min(v.req1_at_overshoot, v.req2_at_overshoot), p),
                   "", "", over ? "pass" : "FAIL"});
            all_pass = all_pass && over;
          }
        }
        if (results.empty()) throw InvalidArgument("no supported protocol/shape pair selected");
        doc = document("constraint_verification", results);
      } else {
        if (v_n.empty()) v_n = {1, 2, 3};
        std::vector<Lemma1Verification> results;
        for (std::size_t n : v_n) {
          results.push_back(verify_lemma1(n, 1.0, samples, seed, v_tol));
          const auto& v = results.back();
          Comparison c = compare("union_volume", v.closed_form, v.estimate.value, v_tol);
          add_cmp("lemma1", "n=" + std::to_string(n), c);
        }
        doc = document("lemma1_verification", results);
      }
      if (fmt == Format::Json) {
        out << doc.dump(2) << '\n';
      } else {
        emit_table(out, t, fmt);
      }
      return all_pass ? 0 : kExitCheckFailed;
    }

    if (*simulate) {
      if (s_config.empty() && s_compare.empty()) throw InvalidArgument("simulate needs --config or --compare");
      if (strict_seed && !s_seed) throw InvalidArgument("--strict-seed: simulate needs an explicit --seed");
      if (s_seeds < 1) throw InvalidArgument("--seeds must be at least 1");
      auto seeds_from = [&](std::uint64_t base) {
        std::vector<std::uint64_t> seeds;
        for (std::size_t k = 0; k < s_seeds; ++k) seeds.push_back(base + k);
        return seeds;
      };

      if (!s_compare.empty()) {
        std::vector<SimConfig> configs;
        std::vector<std::string> labels;
        std::stringstream ss(s_compare);
        std::string path;
        while (std::getline(ss, path, ',')) {
          const RunConfig rc = load_config(detail::trim(path), s_sets);
          configs.push_back(rc.to_sim_config());
          labels.push_back(rc.label());
        }
        const auto seeds = seeds_from(s_seed.value_or(configs.front().seed));
        LifetimeComparison cmp = compare_lifetimes(configs, seeds);
        for (std::size_t i = 0; i < labels.size(); ++i)
          if (!labels[i].empty()) cmp.rows[i].label = labels[i];
        TextTable t({"config", "cell_measure", "mean_lifetime", "ci95_low", "ci95_high", "measured_ratio",
                     "predicted_ratio", "deviation"});
        const int p = fmt == Format::Csv ? 12 : 6;
        for (const auto& r : cmp.rows) {
          t.add({r.label, num(r.cell_measure, p), num(r.mean, p), num(r.ci_low, p), num(r.ci_high, p),
                 num(r.measured_ratio, p), num(r.predicted_ratio, p), num(r.relative_deviation, 4)});
        }
        const json doc = document("lifetime_comparison", cmp);
        if (!s_out.empty()) {
          const std::filesystem::path dir(s_out);
          write_file(dir / "comparison.json", doc.dump(2) + "\n");
          std::ostringstream csv;
          t.print_csv(csv);
          write_file(dir / "comparison.csv", csv.str());
        }
        if (fmt == Format::Json) {
          out << doc.dump(2) << '\n';
        } else {
          emit_table(out, t, fmt);
        }
        return 0;
      }

      const RunConfig rc = load_config(s_config, s_sets);
      SimConfig cfg = rc.to_sim_config();
      const auto seeds = seeds_from(s_seed.value_or(cfg.seed));
      json all = json::array();
      for (std::uint64_t seed : seeds) {
        cfg.seed = seed;
        const SimReport rep = run(cfg);
        const json doc = document("sim_report", rep);
        if (!s_out.empty()) {
          const std::filesystem::path dir(s_out);
          const std::string suffix = seeds.size() > 1 ? "-" + std::to_string(seed) : "";
          write_file(dir / ("report" + suffix + ".json"), doc.dump(2) + "\n");
          std::ostringstream csv;
          write_timeseries_csv(csv, rep);
          write_file(dir / ("timeseries" + suffix + ".csv"), csv.str());
        }
        if (fmt == Format::Json) {
          all.push_back(doc);
        } else if (fmt == Format::Csv) {
          write_timeseries_csv(out, rep);
        } else {
          out << sim_summary(rep) << '\n';
        }
      }
      if (fmt == Format::Json) out << (all.size() == 1 ? all.front() : all).dump(2) << '\n';
      return 0;
    }

    if (*exportp) {
      const RunConfig rc = load_config(e_config, e_sets);
      const SimConfig cfg = rc.to_sim_config();
      Partition part(cfg.field, cfg.scheme);
      part.set_phase(e_phase);
      if (cfg.scheme.protocol == Protocol::eHGAF && cfg.scheme.subcells) {
        part.set_offset(sliding_offset_for(cfg.scheme, gafcell::detail::cyclic_subcell(*cfg.scheme.subcells,
                                                                                      cfg.field.dimension, e_phase)));
      }
      if (e_out == "-") {
        part.write_geometry(out);
      } else {
        std::ostringstream os;
        part.write_geometry(os);
        write_file(e_out, os.str());
        out << "wrote " << part.cell_count() << " cells to " << e_out << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}

}  // namespace gafcell::cli
