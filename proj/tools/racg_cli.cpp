// Command-line front end: nerve and representation plumbing, word
// arithmetic, wall diagnostics, singular-value gap traces and fits,
// half-cone nesting probes, Hilbert distances, and the packaged appendix
// demos.  Standard output is machine-readable (JSON or CSV); progress and
// usage errors go to standard error.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "racg/anosov.hpp"
#include "racg/appendix.hpp"
#include "racg/builtin.hpp"
#include "racg/geometry.hpp"
#include "emit.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string config_file;
  nlohmann::json config_file_values;
  std::string nerve = "fig-a1";
  std::string cartan_path;
  bool geometric = false;
  std::uint64_t seed = 1;
  int range = 6;
  bool symmetric = false;
  bool integer_entries = false;
  int radius = 12;
  int depth = 6;
  double tol = 1e-9;
  double b_cap = 10.0;
  int threads = 0;  // informational; all algorithms are deterministic
  std::string format = "json";
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw racg::DomainError("cannot read file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

racg::CoxeterSystem load_nerve(const RunConfig& cfg) {
  if (racg::is_builtin_nerve(cfg.nerve)) return racg::builtin_nerve(cfg.nerve);
  return racg::parse_nerve(read_file(cfg.nerve));
}

vinberg::RatMat resolve_cartan(const RunConfig& cfg,
                               const racg::CoxeterSystem& sys) {
  if (!cfg.cartan_path.empty())
    return vinberg::parse_cartan_json(sys, read_file(cfg.cartan_path));
  if (cfg.geometric) return vinberg::geometric_cartan(sys);
  vinberg::RandomCartanOptions opt;
  opt.range = cfg.range;
  opt.symmetric = cfg.symmetric;
  opt.integer = cfg.integer_entries;
  return vinberg::random_fully_nondegenerate(sys, cfg.seed, opt);
}

emit::Json config_echo(const RunConfig& cfg) {
  emit::Json j;
  j["nerve"] = cfg.nerve;
  j["cartan"] = cfg.cartan_path.empty()
                    ? (cfg.geometric ? "geometric" : "random")
                    : cfg.cartan_path;
  j["seed"] = cfg.seed;
  j["range"] = cfg.range;
  j["symmetric"] = cfg.symmetric;
  j["integer"] = cfg.integer_entries;
  j["radius"] = cfg.radius;
  j["depth"] = cfg.depth;
  j["tol"] = cfg.tol;
  j["b_cap"] = cfg.b_cap;
  // threads intentionally not echoed: outputs are independent of it
  j["format"] = cfg.format;
  if (!cfg.config_file.empty()) {
    j["config_file"] = cfg.config_file;
    j["config_file_values"] = emit::Json(cfg.config_file_values);
  }
  return j;
}

emit::Json base_report(const RunConfig& cfg, const std::string& command) {
  emit::Json j;
  j["tool"] = "racg";
  j["version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = config_echo(cfg);
  j["seeds"] = emit::Json::array({cfg.seed});
  return j;
}

emit::Json matrix_json(const vinberg::RatMat& m) {
  emit::Json rows = emit::Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    emit::Json row = emit::Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(vinberg::rational_to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

emit::Json wall_json(const racg::CoxeterSystem& sys, const racg::Wall& w) {
  emit::Json j;
  j["prefix"] = racg::to_string(sys, w.prefix);
  j["type"] = sys.name(w.type);
  j["reflection"] = racg::to_string(sys, w.reflection);
  return j;
}

vinberg::RatVec parse_point(const std::string& text, int dim) {
  std::vector<std::string> cells;
  std::string token;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!token.empty()) cells.push_back(token);
      token.clear();
    } else
      token.push_back(c);
  }
  if (!token.empty()) cells.push_back(token);
  if (static_cast<int>(cells.size()) != dim)
    throw racg::DomainError("point has wrong dimension");
  vinberg::RatVec v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = vinberg::parse_rational(cells[i], "point");
  return v;
}

// trailing flags shared by every subcommand
void add_common(CLI::App* cmd, RunConfig* cfg) {
  cmd->add_option("--nerve", cfg->nerve,
                  "built-in nerve name or nerve JSON file");
  cmd->add_option("--cartan", cfg->cartan_path, "Cartan matrix JSON file");
  cmd->add_flag("--geometric", cfg->geometric,
                "use the geometric Cartan matrix");
  cmd->add_option("--seed", cfg->seed, "seed for random Cartan matrices");
  cmd->add_option("--range", cfg->range, "entry range for random matrices");
  cmd->add_flag("--symmetric", cfg->symmetric, "symmetric random matrices");
  cmd->add_flag("--integer", cfg->integer_entries, "integer random matrices");
  cmd->add_option("--radius", cfg->radius, "ball radius cap");
  cmd->add_option("--depth", cfg->depth, "tiling depth");
  cmd->add_option("--tol", cfg->tol, "numeric tolerance");
  cmd->add_option("--b-cap", cfg->b_cap, "offset cap for gap fits");
  cmd->add_option("--threads", cfg->threads, "worker threads (informational)");
  cmd->add_option("--format", cfg->format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg->out, "output path (default: stdout)");
}

void apply_config_file(CLI::App& app, RunConfig* cfg) {
  // --config file provides defaults; explicitly passed flags win
  std::string path;
  if (auto* opt = app.get_option_no_throw("--config"); opt && opt->count())
    path = opt->as<std::string>();
  if (path.empty()) return;
  auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw racg::DomainError("config file is not a JSON object: " + path);
  cfg->config_file = path;
  cfg->config_file_values = j;
  auto set_if_missing = [&](const char* flag, auto& field) {
    auto key = std::string(flag).substr(2);
    std::replace(key.begin(), key.end(), '-', '_');
    if (!j.contains(key)) return;
    for (auto* sub : app.get_subcommands()) {
      if (auto* o = sub->get_option_no_throw(flag); o && o->count()) return;
      for (auto* sub2 : sub->get_subcommands())
        if (auto* o2 = sub2->get_option_no_throw(flag); o2 && o2->count())
          return;
    }
    field = j[key].get<std::decay_t<decltype(field)>>();
  };
  set_if_missing("--nerve", cfg->nerve);
  set_if_missing("--cartan", cfg->cartan_path);
  set_if_missing("--seed", cfg->seed);
  set_if_missing("--range", cfg->range);
  set_if_missing("--radius", cfg->radius);
  set_if_missing("--depth", cfg->depth);
  set_if_missing("--tol", cfg->tol);
  set_if_missing("--b-cap", cfg->b_cap);
  set_if_missing("--threads", cfg->threads);
  set_if_missing("--format", cfg->format);
  set_if_missing("--out", cfg->out);
}

std::vector<racg::NormalForm> seeds_of_word(const racg::CoxeterSystem& sys,
                                            const racg::Word& w) {
  std::vector<racg::NormalForm> seeds;
  racg::Word p;
  seeds.push_back(racg::normalize(sys, p));
  for (int s : w) {
    p.push_back(s);
    seeds.push_back(racg::normalize(sys, p));
  }
  return seeds;
}

emit::Json probe_json(const racg::CoxeterSystem& sys,
                      const projgeom::NestingProbeReport& rpt) {
  emit::Json j;
  j["relation"] = projgeom::to_string(rpt.relation);
  if (!rpt.note.empty()) j["note"] = rpt.note;
  j["outer"] = rpt.outer;
  j["depths"] = rpt.depths;
  emit::Json margins = emit::Json::array();
  for (double m : rpt.margins) margins.push_back(m);
  j["margins"] = margins;
  j["floor"] = rpt.floor_value;
  (void)sys;
  return j;
}

std::string trace_csv(const anosov::GapTrace& t,
                      const std::vector<int>* lengths = nullptr) {
  emit::CsvBuilder csv("n,length,mu1,mu2,gap12");
  for (std::size_t n = 0; n < t.mu.size(); ++n) {
    int len = lengths ? (*lengths)[n] : static_cast<int>(n);
    csv.row({emit::cell((int)n), emit::cell(len), emit::cell(t.mu[n](0)),
             emit::cell(t.mu[n](1)), emit::cell(t.mu[n](0) - t.mu[n](1))});
  }
  return csv.str();
}

struct CsvSamples {
  std::vector<anosov::GapSample> samples;
};

CsvSamples parse_trace_csv(const std::string& text) {
  CsvSamples out;
  std::istringstream ss(text);
  std::string line;
  int col_len = -1, col_gap = -1;
  if (!std::getline(ss, line))
    throw racg::DomainError("empty trace file");
  {
    std::istringstream h(line);
    std::string cell;
    int idx = 0;
    while (std::getline(h, cell, ',')) {
      if (cell == "length") col_len = idx;
      if (cell == "gap12") col_gap = idx;
      ++idx;
    }
  }
  if (col_len < 0 || col_gap < 0)
    throw racg::DomainError("trace file lacks length/gap12 columns");
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::istringstream r(line);
    std::string cell;
    int idx = 0;
    double len = 0, gap = 0;
    while (std::getline(r, cell, ',')) {
      if (idx == col_len) len = std::stod(cell);
      if (idx == col_gap) gap = std::stod(cell);
      ++idx;
    }
    out.samples.push_back({len, gap});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"right-angled Coxeter walls, reflection representations and "
               "singular-value gap diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file with defaults");

  std::string word_text, word2_text, body_path, x_text, y_text;
  std::vector<std::string> in_files;
  int k_power = 1, n_max = 64, limit = 10000, wall_k = 1;
  int bpp_d = -1, min_depth = 2;
  bool with_pairwise = false;
  std::string w1_prefix, w2_prefix, w1_type, w2_type;

  // nerve
  auto* nerve = app.add_subcommand("nerve", "nerve file operations");
  auto* nerve_validate = nerve->add_subcommand("validate", "validate a nerve");
  add_common(nerve_validate, &cfg);

  // rep
  auto* rep_cmd = app.add_subcommand("rep", "simplicial representations");
  auto* rep_build = rep_cmd->add_subcommand("build", "build and print a rep");
  auto* rep_random =
      rep_cmd->add_subcommand("random", "seeded fully nondegenerate Cartan");
  auto* rep_check = rep_cmd->add_subcommand("check", "validate a Cartan matrix");
  for (auto* c : {rep_build, rep_random, rep_check}) add_common(c, &cfg);

  // word
  auto* word_cmd = app.add_subcommand("word", "word arithmetic");
  auto* word_normalize = word_cmd->add_subcommand("normalize", "normal form");
  auto* word_mul = word_cmd->add_subcommand("mul", "product of two words");
  auto* word_ball = word_cmd->add_subcommand("ball", "ball enumeration");
  for (auto* c : {word_normalize, word_mul, word_ball}) {
    add_common(c, &cfg);
    c->add_option("--word", word_text, "word (space or comma separated)");
  }
  word_mul->add_option("--word2", word2_text, "second word");

  // walls
  auto* walls_cmd = app.add_subcommand("walls", "wall diagnostics");
  auto* walls_show = walls_cmd->add_subcommand("show", "walls of a geodesic");
  auto* walls_poset = walls_cmd->add_subcommand("poset", "dependence order");
  auto* walls_ext =
      walls_cmd->add_subcommand("extensions", "linear extensions");
  auto* walls_bpp =
      walls_cmd->add_subcommand("bpp", "bounded product projection constant");
  auto* walls_dec =
      walls_cmd->add_subcommand("decompose", "disjoint-wall decomposition");
  for (auto* c : {walls_show, walls_poset, walls_ext, walls_bpp, walls_dec}) {
    add_common(c, &cfg);
    c->add_option("--word", word_text, "geodesic word")->required();
  }
  walls_ext->add_option("--limit", limit, "extension count limit");
  walls_bpp->add_option("--cap", limit, "constant cap");
  walls_dec->add_option("--bpp-d", bpp_d, "bounded-projection constant D");

  // gaps
  auto* gaps_cmd = app.add_subcommand("gaps", "singular value gap traces");
  auto* gaps_trace = gaps_cmd->add_subcommand("trace", "per-prefix trace");
  auto* gaps_pairwise =
      gaps_cmd->add_subcommand("pairwise", "pairwise gap matrix");
  auto* gaps_fit = gaps_cmd->add_subcommand("fit", "fit (A,B) gap constants");
  auto* gaps_scan = gaps_cmd->add_subcommand("scan", "powers of one element");
  for (auto* c : {gaps_trace, gaps_pairwise, gaps_scan}) {
    add_common(c, &cfg);
    c->add_option("--word", word_text, "geodesic word")->required();
  }
  gaps_trace->add_flag("--pairwise", with_pairwise, "include pairwise data");
  gaps_scan->add_option("--nmax", n_max, "largest power");
  add_common(gaps_fit, &cfg);
  gaps_fit->add_option("--in", in_files, "trace CSV files")->required();

  // halfcone
  auto* halfcone_cmd = app.add_subcommand("halfcone", "half-cone probes");
  auto* halfcone_probe =
      halfcone_cmd->add_subcommand("probe", "nesting probe for a wall pair");
  add_common(halfcone_probe, &cfg);
  halfcone_probe->add_option(
      "--word", word_text, "geodesic word (probes its first and last wall)");
  halfcone_probe->add_option("--w1-prefix", w1_prefix, "first wall prefix");
  halfcone_probe->add_option("--w1-type", w1_type, "first wall type");
  halfcone_probe->add_option("--w2-prefix", w2_prefix, "second wall prefix");
  halfcone_probe->add_option("--w2-type", w2_type, "second wall type");
  halfcone_probe->add_option("--min-depth", min_depth, "first probed depth");

  // hilbert
  auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert metric");
  auto* hilbert_dist = hilbert_cmd->add_subcommand("dist", "distance");
  add_common(hilbert_dist, &cfg);
  hilbert_dist->add_option("--body", body_path, "body JSON file")->required();
  hilbert_dist->add_option("--x", x_text, "first point")->required();
  hilbert_dist->add_option("--y", y_text, "second point")->required();

  // subspace locality
  auto* subspace_cmd =
      app.add_subcommand("subspace", "unstable subspace localization");
  auto* subspace_check = subspace_cmd->add_subcommand(
      "check", "distance from E+_1 to a half-cone and standard subspaces");
  add_common(subspace_check, &cfg);
  subspace_check->add_option("--word", word_text, "geodesic word")->required();
  subspace_check->add_option("--k", wall_k, "wall index (1-based)");
  subspace_check->add_option("--eps", cfg.tol, "locality threshold");

  // appendix
  auto* appendix_cmd = app.add_subcommand("appendix", "packaged demos");
  auto* appendix_a1 = appendix_cmd->add_subcommand("a1", "first nesting "
                                                         "failure demo");
  auto* appendix_a2 = appendix_cmd->add_subcommand("a2", "second nesting "
                                                         "failure demo");
  for (auto* c : {appendix_a1, appendix_a2}) {
    add_common(c, &cfg);
    c->add_option("--k", k_power, "word power");
  }

  try {
    app.parse(argc, argv);
    apply_config_file(app, &cfg);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const racg::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*nerve_validate) {
      auto sys = load_nerve(cfg);
      auto j = base_report(cfg, "nerve validate");
      j["valid"] = true;
      j["rank"] = sys.rank();
      j["generators"] = sys.names();
      emit::Json edges = emit::Json::array();
      for (const auto& [a, b] : sys.edges())
        edges.push_back({sys.name(a), sys.name(b)});
      j["edges"] = edges;
      j["irreducible"] = racg::is_irreducible(sys);
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*rep_build || *rep_random) {
      auto sys = load_nerve(cfg);
      auto a = resolve_cartan(cfg, sys);
      auto rep = vinberg::build_rep(sys, a);
      auto j = base_report(cfg, *rep_build ? "rep build" : "rep random");
      j["cartan"] = matrix_json(a);
      if (*rep_build) {
        emit::Json gens = emit::Json::array();
        for (const auto& g : rep.gen) gens.push_back(matrix_json(g));
        j["generators"] = gens;
      }
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*rep_check) {
      auto sys = load_nerve(cfg);
      auto a = resolve_cartan(cfg, sys);
      auto j = base_report(cfg, "rep check");
      auto val = vinberg::validate_cartan(sys, a);
      j["valid"] = val.valid;
      if (!val.reason.empty()) j["reason"] = val.reason;
      if (val.valid) {
        vinberg::build_rep(sys, a);  // exact relation check
        j["relations_exact"] = true;
        if (sys.rank() <= 16)
          j["fully_nondegenerate"] = vinberg::is_fully_nondegenerate(a);
        if (racg::is_irreducible(sys) && vinberg::det(a) != 0)
          j["negative_type"] = vinberg::is_negative_type(sys, a);
        j["determinant"] = vinberg::rational_to_string(vinberg::det(a));
      }
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*word_normalize || *word_mul) {
      auto sys = load_nerve(cfg);
      auto w = racg::parse_word(sys, word_text);
      auto nf = racg::normalize(sys, w);
      if (*word_mul) {
        auto w2 = racg::parse_word(sys, word2_text);
        nf = racg::multiply(sys, nf, racg::normalize(sys, w2));
      }
      auto j = base_report(cfg, *word_mul ? "word mul" : "word normalize");
      j["input"] = word_text;
      if (*word_mul) j["input2"] = word2_text;
      j["normal_form"] = racg::to_string(sys, nf);
      j["length"] = nf.length();
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*word_ball) {
      auto sys = load_nerve(cfg);
      int radius = cfg.radius;
      auto ball = racg::enumerate_ball(sys, radius, std::max(radius, 12));
      std::vector<int> spheres(radius + 1, 0);
      for (const auto& x : ball) spheres[x.length()]++;
      if (cfg.format == "csv") {
        emit::CsvBuilder csv("radius,sphere,ball");
        int total = 0;
        for (int r = 0; r <= radius; ++r) {
          total += spheres[r];
          csv.row({emit::cell(r), emit::cell(spheres[r]), emit::cell(total)});
        }
        emit::write_output(csv.str(), cfg.out);
      } else {
        auto j = base_report(cfg, "word ball");
        j["radius"] = radius;
        j["ball_size"] = ball.size();
        j["spheres"] = spheres;
        emit::write_output(emit::dump(j), cfg.out);
      }
    } else if (*walls_show || *walls_poset || *walls_ext || *walls_bpp ||
               *walls_dec) {
      auto sys = load_nerve(cfg);
      auto nf = racg::normalize(sys, racg::parse_word(sys, word_text));
      auto [walls, poset] = racg::walls_of(sys, nf);
      std::string cmdname = *walls_show   ? "walls show"
                            : *walls_poset ? "walls poset"
                            : *walls_ext   ? "walls extensions"
                            : *walls_bpp   ? "walls bpp"
                                           : "walls decompose";
      auto j = base_report(cfg, cmdname);
      j["word"] = racg::to_string(sys, nf);
      if (*walls_show) {
        emit::Json arr = emit::Json::array();
        for (const auto& w : walls) arr.push_back(wall_json(sys, w));
        j["walls"] = arr;
      } else if (*walls_poset) {
        emit::Json rel = emit::Json::array();
        for (int i = 0; i < poset.size(); ++i)
          for (int jj = 0; jj < poset.size(); ++jj)
            if (i != jj && poset.less(i, jj)) rel.push_back({i, jj});
        j["relations"] = rel;
        int incomparable = 0;
        for (int i = 0; i < poset.size(); ++i)
          for (int jj = i + 1; jj < poset.size(); ++jj)
            if (poset.incomparable(i, jj)) ++incomparable;
        j["incomparable_pairs"] = incomparable;
      } else if (*walls_ext) {
        auto exts = racg::linear_extensions(poset, limit);
        j["count"] = exts.size();
        emit::Json arr = emit::Json::array();
        for (const auto& e : exts) arr.push_back(racg::word_to_string(sys, e));
        j["words"] = arr;
      } else if (*walls_bpp) {
        auto d = racg::bpp_constant(poset, limit);
        if (d)
          j["d"] = *d;
        else
          j["d"] = "OVER_CAP";
      } else {
        int d = bpp_d;
        if (d < 0) {
          auto computed = racg::bpp_constant(poset, 64);
          if (!computed) throw racg::DomainError("bpp constant over cap");
          d = std::max(*computed, 1);
        }
        auto dec = racg::disjoint_decomposition(sys, nf, d);
        j["d"] = d;
        j["r"] = dec.bound_R;
        emit::Json chain = emit::Json::array();
        for (const auto& w : dec.chain) chain.push_back(wall_json(sys, w));
        j["chain"] = chain;
        emit::Json spacers = emit::Json::array();
        for (const auto& sp : dec.spacers) {
          emit::Json one = emit::Json::array();
          for (const auto& w : sp.walls) one.push_back(wall_json(sys, w));
          spacers.push_back(one);
        }
        j["spacers"] = spacers;
      }
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*gaps_trace || *gaps_pairwise) {
      auto sys = load_nerve(cfg);
      auto a = resolve_cartan(cfg, sys);
      auto rep = vinberg::build_rep(sys, a);
      auto w = racg::parse_word(sys, word_text);
      bool pw = *gaps_pairwise || with_pairwise;
      auto t = anosov::gap_trace(rep, w, pw);
      if (*gaps_pairwise) {
        std::string out;
        const int n = static_cast<int>(t.pair_gap12.rows());
        for (int i = 0; i < n; ++i) {
          for (int jj = 0; jj < n; ++jj) {
            if (jj) out += ",";
            out += emit::format_double(t.pair_gap12(i, jj));
          }
          out += "\n";
        }
        emit::write_output(out, cfg.out);
      } else if (cfg.format == "csv") {
        emit::write_output(trace_csv(t), cfg.out);
      } else {
        auto j = base_report(cfg, "gaps trace");
        j["word"] = word_text;
        emit::Json entries = emit::Json::array();
        for (std::size_t n = 0; n < t.mu.size(); ++n) {
          emit::Json e;
          e["n"] = n;
          e["length"] = n;
          e["mu1"] = t.mu[n](0);
          e["mu2"] = t.mu[n](1);
          e["gap12"] = t.mu[n](0) - t.mu[n](1);
          entries.push_back(e);
        }
        j["entries"] = entries;
        emit::write_output(emit::dump(j), cfg.out);
      }
    } else if (*gaps_scan) {
      auto sys = load_nerve(cfg);
      auto a = resolve_cartan(cfg, sys);
      auto rep = vinberg::build_rep(sys, a);
      auto w = racg::parse_word(sys, word_text);
      auto scan = anosov::power_scan(rep, w, n_max);
      emit::CsvBuilder csv("n,length,mu1,mu2,gap12");
      for (std::size_t n = 0; n < scan.mu.size(); ++n)
        csv.row({emit::cell((int)n), emit::cell((int)n),
                 emit::cell(scan.mu[n](0)), emit::cell(scan.mu[n](1)),
                 emit::cell(scan.mu[n](0) - scan.mu[n](1))});
      emit::write_output(csv.str(), cfg.out);
    } else if (*gaps_fit) {
      std::vector<anosov::GapSample> samples;
      for (const auto& f : in_files) {
        auto s = parse_trace_csv(read_file(f));
        samples.insert(samples.end(), s.samples.begin(), s.samples.end());
      }
      auto fit = anosov::fit_gaps(samples, cfg.b_cap);
      auto j = base_report(cfg, "gaps fit");
      j["inputs"] = in_files;
      j["a"] = fit.a;
      j["b"] = fit.b;
      j["samples"] = fit.samples;
      j["worst_slack"] = fit.worst_slack;
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*halfcone_probe) {
      auto sys = load_nerve(cfg);
      auto a = resolve_cartan(cfg, sys);
      auto rep = vinberg::build_rep(sys, a);
      racg::Wall w1, w2;
      if (!word_text.empty()) {
        auto nf = racg::normalize(sys, racg::parse_word(sys, word_text));
        auto walls = racg::walls_of(sys, nf).first;
        if (walls.size() < 2)
          throw racg::DomainError("word too short for a wall pair");
        w1 = walls.front();
        w2 = walls.back();
      } else {
        if (w1_type.empty() || w2_type.empty())
          throw racg::DomainError(
              "provide --word or both wall prefix/type pairs");
        auto mk = [&](const std::string& prefix, const std::string& type) {
          int t = sys.index_of(type);
          if (t < 0) throw racg::DomainError("unknown generator: " + type);
          return racg::make_wall(
              sys, racg::normalize(sys, racg::parse_word(sys, prefix)), t);
        };
        w1 = mk(w1_prefix, w1_type);
        w2 = mk(w2_prefix, w2_type);
      }
      projgeom::ProbeOptions opt;
      opt.min_depth = min_depth;
      opt.max_depth = cfg.depth;
      auto rpt = projgeom::nesting_probe(rep, w1, w2, opt);
      if (cfg.format == "csv") {
        emit::CsvBuilder csv("depth,min_margin");
        for (std::size_t i = 0; i < rpt.depths.size(); ++i)
          csv.row({emit::cell(rpt.depths[i]), emit::cell(rpt.margins[i])});
        emit::write_output(csv.str(), cfg.out);
      } else {
        auto j = base_report(cfg, "halfcone probe");
        j["wall1"] = wall_json(sys, w1);
        j["wall2"] = wall_json(sys, w2);
        j["probe"] = probe_json(sys, rpt);
        emit::write_output(emit::dump(j), cfg.out);
      }
    } else if (*hilbert_dist) {
      auto body_json = nlohmann::json::parse(read_file(body_path));
      if (!body_json.contains("points") || !body_json["points"].is_array())
        throw racg::DomainError("body file needs a points array");
      std::vector<vinberg::RatVec> pts;
      int dim = -1;
      for (const auto& p : body_json["points"]) {
        if (dim < 0) dim = static_cast<int>(p.size());
        vinberg::RatVec v(dim);
        for (int i = 0; i < dim; ++i)
          v(i) = vinberg::parse_rational(p[i].get<std::string>(), "points");
        pts.push_back(v);
      }
      auto body = projgeom::make_polytope_body(pts);
      auto x = parse_point(x_text, dim);
      auto y = parse_point(y_text, dim);
      auto j = base_report(cfg, "hilbert dist");
      j["distance"] = projgeom::hilbert_distance(body, x, y);
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*subspace_check) {
      auto sys = load_nerve(cfg);
      auto a = resolve_cartan(cfg, sys);
      auto rep = vinberg::build_rep(sys, a);
      auto w = racg::parse_word(sys, word_text);
      auto rpt = anosov::halfcone_subspace_check(rep, w, wall_k, cfg.tol,
                                                 std::min(cfg.depth, 4));
      auto j = base_report(cfg, "subspace check");
      j["word"] = word_text;
      j["k"] = wall_k;
      j["defined"] = rpt.defined;
      if (rpt.defined) {
        j["gap12"] = rpt.gap12;
        j["dist_to_halfcone"] = rpt.dist_to_halfcone;
        j["within_eps"] = rpt.within_eps;
        j["proper_support"] = rpt.proper_support;
        if (rpt.proper_support) {
          j["dist_to_vt"] = rpt.dist_to_vt;
          j["dist_to_vt_perp"] = rpt.dist_to_vt_perp;
          j["transversality_angle"] = rpt.transversality_angle;
        }
      }
      emit::write_output(emit::dump(j), cfg.out);
    } else if (*appendix_a1 || *appendix_a2) {
      bool a1 = static_cast<bool>(*appendix_a1);
      cfg.nerve = a1 ? "fig-a1" : "fig-a2";
      auto sys = load_nerve(cfg);
      auto a = resolve_cartan(cfg, sys);
      int depth = cfg.depth;
      if (!a1 && depth > 5) depth = 5;
      auto rpt = a1 ? projgeom::appendix_certify_a1(a, k_power, depth)
                    : projgeom::appendix_certify_a2(a, k_power, depth);
      auto j = base_report(cfg, a1 ? "appendix a1" : "appendix a2");
      j["k"] = k_power;
      j["cartan"] = matrix_json(a);
      j["certified"] = rpt.certified;
      emit::Json checks = emit::Json::array();
      for (const auto& c : rpt.checks) {
        emit::Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
      }
      j["checks"] = checks;
      j["gamma"] = racg::to_string(sys, rpt.gamma);
      j["probe"] = probe_json(sys, rpt.probe);
      emit::write_output(emit::dump(j), cfg.out);
      if (!rpt.certified) return 1;
    }
  } catch (const racg::DomainError& e) {
    emit::Json j;
    j["tool"] = "racg";
    j["version"] = kToolVersion;
    j["schema_version"] = kSchemaVersion;
    j["error"] = e.what();
    emit::write_output(emit::dump(j), cfg.out);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
