#include "glt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "glt/reproduce.hpp"

namespace glt {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t{}");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t{}");
  return s.substr(b, e - b + 1);
}

GLElement parse_offset(const GLContext& ctx, const std::string& token) {
  if (token.empty() || token[0] != 's') throw UsageError("upset cell must start with s: '" + token + "'");
  GLElement x = ctx.s();
  std::size_t i = 1;
  while (i < token.size()) {
    if (token[i] != '+') throw UsageError("bad upset cell '" + token + "'");
    std::size_t j = token.find('+', i + 1);
    const std::string term = token.substr(i + 1, j == std::string::npos ? std::string::npos : j - i - 1);
    i = j == std::string::npos ? token.size() : j;
    if (term == "delta") {
      x += ctx.delta();
      continue;
    }
    const auto xpos = term.find('x');
    if (xpos == std::string::npos || xpos + 2 != term.size()) throw UsageError("bad term '" + term + "'");
    const int k = xpos == 0 ? 1 : std::stoi(term.substr(0, xpos));
    const int a = term[xpos + 1] - '0';
    if (a < 1 || a > 4) throw UsageError("bad generator in '" + term + "'");
    x += k * ctx.x(a);
  }
  return x;
}

}  // namespace

CellMask parse_upset(const GLContext& ctx, const std::string& text) {
  const UpsetGrid grid(ctx);
  std::string body = trim(text);
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream in(body);
  CellMask m = 0;
  for (std::string token; in >> token;) {
    const auto idx = grid.index_of(parse_offset(ctx, token));
    if (!idx) throw UsageError("'" + token + "' is not in [s, s+delta]");
    m |= CellMask{1} << *idx;
  }
  return m;
}

namespace {

struct Config {
  std::string weights;
  std::string format = "json";
  std::optional<int> window;
  std::uint64_t seed = 0;
  int jobs = 1;
};

Weights parse_weights(const std::string& text) {
  std::vector<int> w;
  std::istringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      w.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw UsageError("bad weight '" + part + "'");
    }
  }
  if (w.size() != 4) throw UsageError("--weights needs four integers, e.g. 2,2,3,3");
  return {w[0], w[1], w[2], w[3]};
}

GLContext context_for(const Config& cfg, bool theorem) {
  if (cfg.weights.empty()) throw UsageError("--weights is required");
  GLContext ctx(parse_weights(cfg.weights));
  if (theorem && !ctx.is_theorem_type()) throw UsageError("this command needs weights (2,2,p,q)");
  return ctx;
}

std::filesystem::path cache_file(const GLContext& ctx) {
  const char* dir = std::getenv("GLT_CACHE_DIR");
  if (!dir || !*dir) return {};
  std::string name = "hom-" + ctx.weights_str() + ".json";
  std::replace(name.begin(), name.end(), ',', '-');
  return std::filesystem::path(dir) / name;
}

class CachedEngine {
 public:
  explicit CachedEngine(const GLContext& ctx) : eng_(ctx), path_(cache_file(ctx)) {
    if (path_.empty() || !std::filesystem::exists(path_)) return;
    std::ifstream in(path_);
    // an unreadable or foreign cache is rebuilt and overwritten on exit
    try {
      eng_.import_cache(nlohmann::json::parse(in));
    } catch (const std::exception&) {
    }
  }
  ~CachedEngine() {
    if (path_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
    std::ofstream out(path_);
    if (out) out << eng_.export_cache().dump();
  }
  const HomEngine& operator*() const { return eng_; }

 private:
  HomEngine eng_;
  std::filesystem::path path_;
};

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw UsageError("--format " + cfg.format + " not supported here (use " + list + ")");
}

Candidate load_candidate(const GLContext& ctx, const std::string& upset, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad candidate JSON: ") + e.what());
    }
    Candidate c = candidate_from_json(j);
    if (c.weights != ctx.weights()) throw UsageError("candidate weights differ from --weights");
    return c;
  }
  return build_candidate(ctx, parse_upset(ctx, upset));
}

nlohmann::json bundle_json(const GLContext& ctx, const Candidate& c, const BundleVerdict& v) {
  nlohmann::json j = {{"schema", "glt/1"}, {"tilting_bundle", v.ok}};
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : v.witnesses) {
    nlohmann::json x = {{"kind", w.kind}, {"ell", w.ell}, {"dim", w.dim}};
    x["src"] = w.src >= 0 ? nlohmann::json(summand_id(ctx, c, w.src)) : nlohmann::json(nullptr);
    x["dst"] = w.dst >= 0 ? nlohmann::json(summand_id(ctx, c, w.dst)) : nlohmann::json(nullptr);
    j["witnesses"].push_back(x);
  }
  return j;
}

nlohmann::json stable_json(const StableVerdict& v) {
  nlohmann::json j = {{"schema", "glt/1"},
                      {"stable_tilting", v.tilting},
                      {"rigid", v.dynkin.rigid},
                      {"count_ok", v.dynkin.count_ok},
                      {"labels", v.labels},
                      {"witnesses", v.witness_text}};
  j["gldim"] = v.dynkin.gldim ? nlohmann::json(*v.dynkin.gldim) : nlohmann::json(nullptr);
  j["closed_form"] = v.closed_form ? nlohmann::json(*v.closed_form) : nlohmann::json(nullptr);
  return j;
}

void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

void emit_quiver(std::ostream& out, const Config& cfg, const QuiverDoc& q) {
  require_format(cfg, {"json", "dot", "csv"});
  if (cfg.format == "dot") out << to_dot(q);
  else if (cfg.format == "csv") out << to_csv(q);
  else emit_json(out, to_json(q));
}

int find_summand(const GLContext& ctx, const Candidate& c, const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), ::isdigit)) {
    const int i = std::stoi(text);
    if (i >= c.size()) throw UsageError("summand index out of range");
    return i;
  }
  for (int i = 0; i < c.size(); ++i) {
    const std::string id = summand_id(ctx, c, i);
    if (id == text || id.substr(0, id.find('@')) == text) return i;
  }
  throw UsageError("no summand '" + text + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tilting bundles on GL projective spaces of weight type (2,2,p,q)", "glt"};
  Config cfg;
  app.add_option("--weights", cfg.weights, "weight type p1,p2,p3,p4");
  app.add_option("--format", cfg.format, "json, csv, dot or text")->check(CLI::IsMember({"json", "csv", "dot", "text"}));
  app.add_option("--window", cfg.window, "w-twists either side of the slice")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.require_subcommand(1);

  std::string upset, cand_file, summand, direction = "plus", from, to, from_file, to_file, src, dst;
  int random_steps = 0, shift = 0;
  bool verify = false, all_witnesses = false, no_overlay = false;

  auto* s_set = app.add_subcommand("s-set", "elements of S");
  auto* upsets = app.add_subcommand("upsets", "upsets of [s, s+delta]");
  auto* candidate = app.add_subcommand("candidate", "candidate built from an upset");
  candidate->add_option("--upset", upset);
  auto* check_bundle = app.add_subcommand("check-bundle", "slice criterion for a candidate");
  auto* check_stable = app.add_subcommand("check-stable", "stable 2-tilting check of the extension part");
  for (auto* c : {check_bundle, check_stable}) {
    c->add_option("--upset", upset);
    c->add_option("--candidate", cand_file, "candidate JSON file");
  }
  check_bundle->add_flag("--all-witnesses", all_witnesses);
  auto* classify = app.add_subcommand("classify", "bundle, stable and closed-form verdict per upset");
  auto* mutate = app.add_subcommand("mutate", "APR mutation at one summand");
  mutate->add_option("--upset", upset);
  mutate->add_option("--candidate", cand_file, "candidate JSON file");
  mutate->add_option("--summand", summand, "index or id (U:l1,l2,l3,l4 / P:x)");
  mutate->add_option("--direction", direction)->check(CLI::IsMember({"plus", "minus", "+", "-"}));
  mutate->add_option("--random", random_steps, "apply this many random admissible mutations")
      ->check(CLI::NonNegativeNumber);
  auto* walk = app.add_subcommand("walk", "mutation sequence between two candidates");
  walk->add_option("--from", from, "source upset");
  walk->add_option("--to", to, "target upset");
  walk->add_option("--from-file", from_file);
  walk->add_option("--to-file", to_file);
  walk->add_flag("--verify", verify, "check every intermediate candidate");
  auto* hom = app.add_subcommand("hom", "Hom/Ext dimensions between two summands");
  hom->add_option("--src", src)->required();
  hom->add_option("--dst", dst)->required();
  hom->add_option("--shift", shift, "stable Hom into dst[shift]");
  auto* ar = app.add_subcommand("ar-quiver", "stable Auslander-Reiten quiver");
  ar->add_flag("--no-overlay", no_overlay, "omit projective positions");
  auto* ct = app.add_subcommand("ct-quiver", "quiver of the cluster tilting subcategory");
  auto* repro = app.add_subcommand("reproduce", "run every reference fixture");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "glt: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (s_set->parsed()) {
      const GLContext ctx = context_for(cfg, false);
      const auto S = enumerate_S(ctx);
      require_format(cfg, {"json", "csv", "text"});
      if (cfg.format == "json") {
        nlohmann::json j = {{"schema", "glt/1"}, {"weights", ctx.weights()}, {"elements", nlohmann::json::array()}};
        for (const auto& x : S) j["elements"].push_back(x.str());
        emit_json(out, j);
      } else {
        if (cfg.format == "csv") out << "element\n";
        for (const auto& x : S) out << (cfg.format == "csv" ? "\"" + x.str() + "\"" : x.str()) << '\n';
      }
      return kExitOk;
    }
    if (upsets->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      const UpsetGrid grid(ctx);
      require_format(cfg, {"json", "csv", "text"});
      const auto all = enumerate_upsets(ctx);
      if (cfg.format == "json") {
        nlohmann::json j = {{"schema", "glt/1"}, {"weights", ctx.weights()}, {"upsets", nlohmann::json::array()}};
        for (CellMask m : all) j["upsets"].push_back(grid.describe(m));
        emit_json(out, j);
      } else {
        if (cfg.format == "csv") out << "upset\n";
        for (CellMask m : all) out << grid.describe(m) << '\n';
      }
      return kExitOk;
    }
    if (candidate->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      require_format(cfg, {"json"});
      emit_json(out, to_json(ctx, build_candidate(ctx, parse_upset(ctx, upset))));
      return kExitOk;
    }
    if (check_bundle->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      require_format(cfg, {"json"});
      CachedEngine eng(ctx);
      const Candidate c = load_candidate(ctx, upset, cand_file);
      const BundleVerdict v = check_tilting_bundle(*eng, c, !all_witnesses);
      emit_json(out, bundle_json(ctx, c, v));
      return v.ok ? kExitOk : kExitFailed;
    }
    if (check_stable->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      require_format(cfg, {"json"});
      CachedEngine eng(ctx);
      const StableVerdict v = check_stable_tilting(*eng, load_candidate(ctx, upset, cand_file));
      emit_json(out, stable_json(v));
      return v.tilting ? kExitOk : kExitFailed;
    }
    if (classify->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      require_format(cfg, {"json", "csv", "text"});
      CachedEngine eng(ctx);
      const auto rows = report_classification(*eng, cfg.jobs);
      if (cfg.format == "json") emit_json(out, classification_json(ctx, rows));
      else out << classification_csv(rows);
      bool ok = true;
      for (const auto& r : rows) ok &= r.bundle && (!r.closed_form || *r.closed_form == r.stable);
      return ok ? kExitOk : kExitFailed;
    }
    if (mutate->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      require_format(cfg, {"json"});
      CachedEngine eng(ctx);
      const Candidate c = load_candidate(ctx, upset, cand_file);
      if (random_steps > 0) {
        std::mt19937_64 rng(cfg.seed);
        emit_json(out, to_json(ctx, random_mutations(*eng, c, random_steps, rng)));
        return kExitOk;
      }
      if (summand.empty()) throw UsageError("mutate needs --summand or --random");
      const int i = find_summand(ctx, c, summand);
      const MutationDirection dir =
          direction == "plus" || direction == "+" ? MutationDirection::Plus : MutationDirection::Minus;
      std::string reason;
      if (!is_admissible(*eng, c, {i}, dir, &reason)) {
        emit_json(out, {{"schema", "glt/1"}, {"admissible", false}, {"witness", reason}});
        return kExitFailed;
      }
      emit_json(out, to_json(ctx, apr_mutate(*eng, c, {i}, dir)));
      return kExitOk;
    }
    if (walk->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      require_format(cfg, {"json"});
      CachedEngine eng(ctx);
      const Candidate a = load_candidate(ctx, from, from_file), b = load_candidate(ctx, to, to_file);
      const auto steps = mutation_walk(*eng, a, b, verify);
      const bool reached = replay(*eng, a, steps) == b;
      emit_json(out, {{"schema", "glt/1"}, {"steps", to_json(ctx, steps, a)}, {"reached", reached}});
      return reached ? kExitOk : kExitFailed;
    }
    if (hom->parsed()) {
      const GLContext ctx = context_for(cfg, false);
      require_format(cfg, {"json"});
      CachedEngine eng(ctx);
      const SheafSummand a = parse_summand(ctx, src), b = parse_summand(ctx, dst);
      nlohmann::json j = {{"schema", "glt/1"},
                          {"src", a.label()},
                          {"dst", b.label()},
                          {"hom", (*eng).hom_dim(a, b)},
                          {"ext1", (*eng).ext1_dim(a, b)},
                          {"ext2", (*eng).ext2_dim(a, b)}};
      j["stable"] = a.is_line() || b.is_line() ? 0 : (*eng).stable_hom(a, b, shift);
      j["shift"] = shift;
      emit_json(out, j);
      return kExitOk;
    }
    if (ar->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      emit_quiver(out, cfg, emit_stable_ar(ctx, cfg.window.value_or(kDefaultWindow), !no_overlay));
      return kExitOk;
    }
    if (ct->parsed()) {
      const GLContext ctx = context_for(cfg, true);
      CachedEngine eng(ctx);
      emit_quiver(out, cfg, emit_ct_quiver(*eng, cfg.window.value_or(kDefaultWindow)));
      return kExitOk;
    }
    if (repro->parsed()) {
      require_format(cfg, {"json", "text"});
      std::vector<FixtureResult> results;
      if (cfg.weights.empty()) {
        results = reproduce_all();
      } else {
        CachedEngine eng(context_for(cfg, true));
        results = reproduce(*eng);
      }
      bool ok = true;
      for (const auto& r : results) ok &= r.pass;
      if (cfg.format == "json") {
        nlohmann::json j = {{"schema", "glt/1"}, {"pass", ok}, {"fixtures", nlohmann::json::array()}};
        for (const auto& r : results) j["fixtures"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        emit_json(out, j);
      } else {
        for (const auto& r : results)
          out << (r.pass ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : " (" + r.detail + ")") << '\n';
      }
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const std::invalid_argument& e) {
    err << "glt: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "glt: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace glt
