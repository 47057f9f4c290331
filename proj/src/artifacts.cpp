#include "glt/artifacts.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace glt {

std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Projective: return "projective";
    case VertexKind::CM: return "cm";
    case VertexKind::StableShift: return "stable-shift";
  }
  return "cm";
}

VertexKind vertex_kind_from_string(const std::string& s) {
  if (s == "projective") return VertexKind::Projective;
  if (s == "cm") return VertexKind::CM;
  if (s == "stable-shift") return VertexKind::StableShift;
  throw ParseError("unknown vertex kind '" + s + "'");
}

void QuiverDoc::validate() const {
  std::set<std::string> ids, labels;
  for (const auto& v : vertices) {
    if (!ids.insert(v.id).second) throw std::invalid_argument("duplicate vertex id " + v.id);
    if (!labels.insert(v.label).second) throw std::invalid_argument("duplicate vertex label " + v.label);
  }
  for (const auto& a : arrows) {
    if (!ids.count(a.src) || !ids.count(a.dst)) throw std::invalid_argument("arrow with unknown endpoint");
    if (a.multiplicity < 1) throw std::invalid_argument("arrow multiplicity below 1");
  }
}

int QuiverDoc::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  return -1;
}

nlohmann::json to_json(const QuiverDoc& q) {
  nlohmann::json j;
  j["schema"] = "glt/1";
  j["name"] = q.name;
  j["weights"] = q.weights;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : q.vertices)
    j["vertices"].push_back({{"id", v.id},
                             {"label", v.label},
                             {"kind", to_string(v.kind)},
                             {"row", v.row},
                             {"column", v.column},
                             {"cluster", v.cluster}});
  j["arrows"] = nlohmann::json::array();
  for (const auto& a : q.arrows)
    j["arrows"].push_back({{"src", a.src}, {"dst", a.dst}, {"multiplicity", a.multiplicity}});
  return j;
}

QuiverDoc quiver_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "glt/1") throw ParseError("expected schema glt/1");
  QuiverDoc q;
  q.name = j.at("name").get<std::string>();
  q.weights = j.at("weights").get<Weights>();
  for (const auto& v : j.at("vertices"))
    q.vertices.push_back({v.at("id").get<std::string>(), v.at("label").get<std::string>(),
                          vertex_kind_from_string(v.at("kind").get<std::string>()), v.at("row").get<int>(),
                          v.at("column").get<int>(), v.value("cluster", "")});
  for (const auto& a : j.at("arrows"))
    q.arrows.push_back({a.at("src").get<std::string>(), a.at("dst").get<std::string>(), a.at("multiplicity").get<int>()});
  q.validate();
  return q;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + '"';
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string unquote(const std::string& s) {
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\' && i + 2 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

const std::string kQuoted = R"("(?:[^"\\]|\\.)*")";

std::map<std::string, std::string> parse_attrs(const std::string& body) {
  static const std::regex attr("(\\w+)=(" + kQuoted + "|-?\\d+)");
  std::map<std::string, std::string> out;
  for (std::sregex_iterator it(body.begin(), body.end(), attr), end; it != end; ++it) {
    const std::string v = (*it)[2];
    out[(*it)[1]] = v.front() == '"' ? unquote(v) : v;
  }
  return out;
}

std::string weights_text(const Weights& w) {
  return std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]) + "," + std::to_string(w[3]);
}

}  // namespace

std::string to_dot(const QuiverDoc& q) {
  std::ostringstream os;
  os << "digraph " << quote(q.name) << " {\n";
  os << "  graph [schema=\"glt/1\", weights=" << quote(weights_text(q.weights)) << "];\n";
  for (const auto& v : q.vertices)
    os << "  " << quote(v.id) << " [label=" << quote(v.label) << ", kind=" << quote(to_string(v.kind))
       << ", row=" << v.row << ", column=" << v.column << ", cluster=" << quote(v.cluster) << "];\n";
  for (const auto& a : q.arrows)
    os << "  " << quote(a.src) << " -> " << quote(a.dst) << " [multiplicity=" << a.multiplicity << "];\n";
  os << "}\n";
  return os.str();
}

QuiverDoc quiver_from_dot(const std::string& text) {
  static const std::regex head("^\\s*digraph\\s+(" + kQuoted + ")\\s*\\{\\s*$");
  static const std::regex graph("^\\s*graph\\s*\\[(.*)\\];\\s*$");
  static const std::regex node("^\\s*(" + kQuoted + ")\\s*\\[(.*)\\];\\s*$");
  static const std::regex edge("^\\s*(" + kQuoted + ")\\s*->\\s*(" + kQuoted + ")\\s*\\[(.*)\\];\\s*$");
  QuiverDoc q;
  std::istringstream in(text);
  std::string line;
  bool opened = false, closed = false;
  while (std::getline(in, line)) {
    std::smatch m;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!opened) {
      if (!std::regex_match(line, m, head)) throw ParseError("expected digraph header");
      q.name = unquote(m[1]);
      opened = true;
    } else if (std::regex_match(line, m, graph)) {
      const auto attrs = parse_attrs(m[1]);
      std::vector<int> w;
      std::istringstream ws(attrs.at("weights"));
      for (std::string part; std::getline(ws, part, ',');) w.push_back(std::stoi(part));
      if (w.size() != 4) throw ParseError("weights need four entries");
      std::copy(w.begin(), w.end(), q.weights.begin());
    } else if (std::regex_match(line, m, edge)) {
      const auto attrs = parse_attrs(m[3]);
      q.arrows.push_back({unquote(m[1]), unquote(m[2]), std::stoi(attrs.at("multiplicity"))});
    } else if (std::regex_match(line, m, node)) {
      const auto attrs = parse_attrs(m[2]);
      q.vertices.push_back({unquote(m[1]), attrs.at("label"), vertex_kind_from_string(attrs.at("kind")),
                            std::stoi(attrs.at("row")), std::stoi(attrs.at("column")),
                            attrs.count("cluster") ? attrs.at("cluster") : ""});
    } else if (line.find('}') != std::string::npos) {
      closed = true;
      break;
    } else {
      throw ParseError("unrecognized DOT line: " + line);
    }
  }
  if (!closed) throw ParseError("unterminated digraph");
  q.validate();
  return q;
}

std::string to_csv(const QuiverDoc& q) {
  std::ostringstream os;
  os << "record,id,label,kind,row,column,cluster,src,dst,multiplicity\n";
  for (const auto& v : q.vertices)
    os << "vertex," << csv_field(v.id) << ',' << csv_field(v.label) << ',' << to_string(v.kind) << ',' << v.row << ','
       << v.column << ',' << csv_field(v.cluster) << ",,,\n";
  for (const auto& a : q.arrows)
    os << "arrow,,,,,,," << csv_field(a.src) << ',' << csv_field(a.dst) << ',' << a.multiplicity << '\n';
  return os.str();
}

std::string twist_text(const GLContext& ctx, const GLElement& x) {
  const long long dw = ctx.w().scaled_degree(), dx = x.scaled_degree();
  if (dw != 0 && dx % dw == 0 && (dx / dw) * ctx.w() == x) return std::to_string(dx / dw) + "*w";
  if (dw == 0 && x == ctx.zero()) return "0*w";
  return x.str();
}

namespace {

std::string ell_text(const GLElement& ell) {
  const std::string s = ell.str();
  return s.substr(0, s.find(';'));
}

// Orbit of x under the t_ab = x_a - x_b with p_a = p_b = 2; these twists
// give the projectives the figures draw at one position.
std::string cluster_key(const GLContext& ctx, const GLElement& x) {
  std::vector<GLElement> gens;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b)
      if (ctx.weight(a - 1) == 2 && ctx.weight(b - 1) == 2) gens.push_back(ctx.t(a, b));
  std::set<GLElement, LexLess> orbit{x};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& y : std::vector<GLElement>(orbit.begin(), orbit.end()))
      for (const auto& g : gens) grew |= orbit.insert(y + g).second;
  }
  return "(" + orbit.begin()->str() + ")";
}

}  // namespace

std::string stable_id(const LabelMap& labels, const DynkinObject& x) {
  const GLContext& ctx = labels.context();
  std::string id;
  int shift = 0;
  if (auto s = labels.to_sheaf(x)) {
    id = "U:" + ell_text(s->first.ell) + "@" + twist_text(ctx, s->first.twist);
    shift = s->second;
  } else {
    // tau^{-m} G = G(-m w)[-m]
    const int m = labels.model().mesh_coordinates(x).first - 2;
    id = "G@" + std::to_string(-m) + "*w";
    shift = -m;
  }
  if (shift != 0) id += "[" + std::to_string(shift) + "]";
  return id;
}

QuiverDoc emit_stable_ar(const GLContext& ctx, int window, bool projective_overlay) {
  const LabelMap labels(ctx);
  const DynkinModel& model = labels.model();
  const UpsetGrid grid(ctx);
  int kmin = 0, kmax = 0;
  bool first = true;
  for (int t = -window; t <= window; ++t)
    for (int i = 0; i < grid.size(); ++i) {
      const int k = model.mesh_coordinates(labels.to_dynkin(SheafSummand::ext(grid.cell(i), t * ctx.w()))).first;
      kmin = first ? k : std::min(kmin, k);
      kmax = first ? k : std::max(kmax, k);
      first = false;
    }
  QuiverDoc q;
  q.name = "stable-ar";
  q.weights = ctx.weights();
  std::vector<std::vector<std::string>> ids(kmax - kmin + 2, std::vector<std::string>(model.rank()));
  for (int k = kmin; k <= kmax; ++k)
    for (int v = 0; v < model.rank(); ++v) {
      const DynkinObject x = model.mesh_object(k, v);
      const std::string id = stable_id(labels, x);
      ids[k - kmin][v] = id;
      q.vertices.push_back({id, labels.label(x), VertexKind::StableShift, v, k, ""});
    }
  // an edge u - v of Q gives (k,v) -> (k,u) when Hom(P_v, P_u) != 0, and
  // then (k,u) -> (k+1,v)
  std::set<std::pair<int, int>> edges;
  for (auto [a, b] : model.arrows()) edges.insert({std::min(a, b), std::max(a, b)});
  for (auto [a, b] : edges) {
    const bool ab = model.hom_dim(model.projective(a), model.projective(b)) > 0;
    const int v = ab ? a : b, u = ab ? b : a;
    for (int k = kmin; k <= kmax; ++k) {
      q.arrows.push_back({ids[k - kmin][v], ids[k - kmin][u], 1});
      if (k < kmax) q.arrows.push_back({ids[k - kmin][u], ids[k + 1 - kmin][v], 1});
    }
  }
  std::sort(q.arrows.begin(), q.arrows.end(), [&](const QuiverArrow& x, const QuiverArrow& y) {
    return std::pair(q.vertex_index(x.src), q.vertex_index(x.dst)) < std::pair(q.vertex_index(y.src), q.vertex_index(y.dst));
  });
  if (projective_overlay) {
    const auto S = enumerate_S(ctx);
    for (int t = -window; t <= window; ++t)
      for (const auto& x : S) {
        const GLElement y = x + t * ctx.w();
        q.vertices.push_back({"P:" + x.str() + "@" + std::to_string(t) + "*w", "R(" + y.str() + ")",
                              VertexKind::Projective, model.rank(), t, cluster_key(ctx, y)});
      }
  }
  q.validate();
  return q;
}

namespace {

struct MeshIndex {
  std::map<std::string, std::map<std::string, int>> in, out;
  std::map<std::pair<int, int>, std::string> at;
  std::map<std::string, std::pair<int, int>> pos;
};

MeshIndex mesh_index(const QuiverDoc& q) {
  MeshIndex m;
  for (const auto& v : q.vertices) {
    if (v.kind == VertexKind::Projective) continue;
    m.at[{v.column, v.row}] = v.id;
    m.pos[v.id] = {v.column, v.row};
  }
  for (const auto& a : q.arrows) {
    m.out[a.src][a.dst] += a.multiplicity;
    m.in[a.dst][a.src] += a.multiplicity;
  }
  return m;
}

}  // namespace

std::vector<std::string> mesh_violations(const QuiverDoc& q) {
  const MeshIndex m = mesh_index(q);
  std::vector<std::string> bad;
  for (const auto& [id, p] : m.pos) {
    auto tau = m.at.find({p.first - 1, p.second});
    if (tau == m.at.end()) continue;
    auto in = m.in.count(id) ? m.in.at(id) : std::map<std::string, int>{};
    auto out = m.out.count(tau->second) ? m.out.at(tau->second) : std::map<std::string, int>{};
    if (in != out) bad.push_back(id);
  }
  return bad;
}

int mesh_count(const QuiverDoc& q) {
  const MeshIndex m = mesh_index(q);
  int n = 0;
  for (const auto& [id, p] : m.pos) n += m.at.count({p.first - 1, p.second}) ? 1 : 0;
  return n;
}

QuiverDoc emit_ct_quiver(const HomEngine& eng, int window) {
  const GLContext& ctx = eng.context();
  if (!ctx.is_theorem_type()) throw UnsupportedWeightType("cluster tilting quiver needs type (2,2,p,q)");
  const UpsetGrid grid(ctx);
  const auto S = enumerate_S(ctx);
  QuiverDoc q;
  q.name = "cluster-tilting";
  q.weights = ctx.weights();
  std::map<std::string, int> cluster_rows;
  for (int t = -window; t <= window; ++t) {
    const GLElement tw = t * ctx.w();
    const std::string suffix = "@" + std::to_string(t) + "*w";
    for (int i = 0; i < grid.size(); ++i)
      q.vertices.push_back({"U:" + ell_text(grid.cell(i)) + suffix,
                            "U^" + ell_text(grid.cell(i)) + "(" + std::to_string(t) + "w)", VertexKind::CM, i,
                            2 * t + 1, ""});
    for (const auto& x : S) {
      const GLElement y = x + tw;
      const std::string key = cluster_key(ctx, y);
      const int row = grid.size() + static_cast<int>(cluster_rows.emplace(key, cluster_rows.size()).first->second);
      q.vertices.push_back({"P:" + x.str() + suffix, "R(" + y.str() + ")", VertexKind::Projective, row, 2 * t, key});
    }
  }
  // Hom(T, T(l w)) = 0 for l > 0, so a map from layer 0 to layer -1 only
  // factors through layers 0 and -1; arrows come from the block of layers
  // 0, -1, -2 and are copied along the window by w-twist invariance.
  const int n = grid.size() + static_cast<int>(S.size());
  const int layers = window == 0 ? 1 : 3;
  std::vector<GradedMF> mfs;
  for (int t = 0; t < layers; ++t) {
    const GLElement tw = (-t) * ctx.w();
    for (int i = 0; i < grid.size(); ++i) mfs.push_back(eng.mf(SheafSummand::ext(grid.cell(i), tw)));
    for (const auto& x : S) mfs.push_back(eng.mf(SheafSummand::line(x + tw)));
  }
  const auto arrows = FiniteAlgebra::from_end(end_algebra(eng.ring(), mfs, HomLevel::Module)).arrows();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < layers * n; ++b) {
      if (b >= 2 * n && arrows[a][b] > 0)
        throw InvariantViolation("irreducible map across two w-layers in the cluster tilting quiver");
      if (arrows[b][a] > 0 && b >= n) throw InvariantViolation("map into a higher w-layer");
    }
  for (int t = -window; t <= window; ++t) {
    const int base = (t + window) * n;
    for (int d = 0; d <= 1 && t - d >= -window && d < layers; ++d) {
      const int target = (t - d + window) * n;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (const int m = arrows[a][d * n + b]; m > 0)
            q.arrows.push_back({q.vertices[base + a].id, q.vertices[target + b].id, m});
    }
  }
  q.validate();
  return q;
}

std::vector<QuiverArrow> bundled_arrows(const QuiverDoc& ct) {
  std::map<std::string, std::string> group;
  for (const auto& v : ct.vertices) group[v.id] = v.kind == VertexKind::Projective ? v.cluster : v.id;
  std::map<std::pair<std::string, std::string>, int> sum;
  for (const auto& a : ct.arrows) sum[{group[a.src], group[a.dst]}] += a.multiplicity;
  std::vector<QuiverArrow> out;
  for (const auto& [k, m] : sum) out.push_back({k.first, k.second, m});
  return out;
}

std::vector<HammockRow> emit_hammock_table(const LabelMap& labels, const DynkinObject& source, int k_min, int k_max,
                                           const StableRealizer* realizer) {
  std::vector<HammockRow> rows;
  for (const auto& c : labels.model().emit_hammock(source, k_min, k_max)) {
    HammockRow r{stable_id(labels, c.object), labels.label(c.object), c.k, c.v, c.dim, std::nullopt};
    if (realizer) r.mf_dim = realizer->hom_dim(source, c.object);
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json hammock_json(const std::vector<HammockRow>& rows) {
  nlohmann::json j;
  j["schema"] = "glt/1";
  j["cells"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json c = {{"id", r.id}, {"label", r.label}, {"k", r.k}, {"v", r.v}, {"dim", r.dim}};
    if (r.mf_dim) c["mf_dim"] = *r.mf_dim;
    j["cells"].push_back(c);
  }
  return j;
}

std::string hammock_csv(const std::vector<HammockRow>& rows) {
  std::ostringstream os;
  os << "id,label,k,v,dim,mf_dim\n";
  for (const auto& r : rows)
    os << csv_field(r.id) << ',' << csv_field(r.label) << ',' << r.k << ',' << r.v << ',' << r.dim << ','
       << (r.mf_dim ? std::to_string(*r.mf_dim) : "") << '\n';
  return os.str();
}

namespace {

ClassificationRow classify_upset(const HomEngine& eng, CellMask mask) {
  const GLContext& ctx = eng.context();
  const Candidate cand = build_candidate(ctx, mask);
  const BundleVerdict bv = check_tilting_bundle(eng, cand, true);
  const StableVerdict sv = check_stable_tilting(eng, cand);
  ClassificationRow r;
  r.upset = UpsetGrid(ctx).describe(mask);
  r.mask = mask;
  r.bundle = bv.ok;
  r.stable = sv.tilting;
  r.closed_form = sv.closed_form;
  r.gldim = sv.dynkin.gldim;
  if (!sv.witness_text.empty()) r.witness = sv.witness_text.front();
  else if (!sv.dynkin.count_ok) r.witness = "summand count differs from the rank";
  else if (!sv.tilting) r.witness = "gldim End above 2";
  return r;
}

}  // namespace

std::vector<ClassificationRow> report_classification(const HomEngine& eng, int jobs) {
  const std::vector<CellMask> masks = enumerate_upsets(eng.context());
  std::vector<ClassificationRow> rows(masks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < masks.size();) {
      try {
        rows[i] = classify_upset(eng, masks[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::sort(rows.begin(), rows.end(), [](const ClassificationRow& a, const ClassificationRow& b) {
    const int pa = std::popcount(a.mask), pb = std::popcount(b.mask);
    return pa != pb ? pa < pb : a.upset < b.upset;
  });
  return rows;
}

nlohmann::json classification_json(const GLContext& ctx, const std::vector<ClassificationRow>& rows) {
  nlohmann::json j;
  j["schema"] = "glt/1";
  j["weights"] = ctx.weights();
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"upset", r.upset}, {"bundle", r.bundle}, {"stable", r.stable}, {"witness", r.witness}};
    row["closed_form"] = r.closed_form ? nlohmann::json(*r.closed_form) : nlohmann::json(nullptr);
    row["gldim"] = r.gldim ? nlohmann::json(*r.gldim) : nlohmann::json(nullptr);
    j["rows"].push_back(row);
  }
  return j;
}

std::string classification_csv(const std::vector<ClassificationRow>& rows) {
  std::ostringstream os;
  os << "upset,bundle,stable,closed_form,gldim,witness\n";
  auto b = [](bool x) { return x ? "true" : "false"; };
  for (const auto& r : rows)
    os << csv_field(r.upset) << ',' << b(r.bundle) << ',' << b(r.stable) << ','
       << (r.closed_form ? b(*r.closed_form) : "") << ',' << (r.gldim ? std::to_string(*r.gldim) : "") << ','
       << csv_field(r.witness) << '\n';
  return os.str();
}

}  // namespace glt
