#include "difftan/report.hpp"

#include <json.hpp>
#include <sstream>

namespace difftan {

namespace {

using json = nlohmann::ordered_json;

json strings(const std::vector<std::string>& v) { return json(v); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (const auto& r : m.to_strings()) rows.push_back(r);
  return rows;
}

json candidate_json(const BundlePlotCandidate& c) {
  json j;
  auto names = default_variable_names(c.src_dim());
  json base = json::array(), fibre = json::array();
  for (const auto& p : c.base.components) base.push_back(p.to_string(names));
  for (const auto& p : c.fibre) fibre.push_back(p.to_string(names));
  j["src_dim"] = c.src_dim();
  j["base"] = base;
  j["fibre"] = fibre;
  return j;
}

json witness_json(const BundleWitness& w) {
  json j;
  j["member"] = w.member();
  j["reason"] = bundle_reason_name(w.reason);
  if (!w.detail.empty()) j["detail"] = w.detail;
  if (w.branch) j["branch"] = *w.branch;
  if (!w.decomposition.empty()) {
    json d = json::array();
    for (const auto& t : w.decomposition) {
      auto names = default_variable_names(t.scalar.nvars());
      json f = json::array();
      for (const auto& p : t.fibre) f.push_back(p.to_string(names));
      d.push_back({{"scalar", t.scalar.to_string(names)}, {"vector", f}});
    }
    j["decomposition"] = d;
  }
  if (!w.factor_witnesses.empty()) {
    json fs = json::array();
    for (const auto& f : w.factor_witnesses) fs.push_back(witness_json(f));
    j["factors"] = fs;
  }
  return j;
}

json header(const char* verb, const SpacePresentation& space) {
  json j;
  j["verb"] = verb;
  j["space"] = space.render();
  return j;
}

void text_lines(const json& j, const std::string& indent, std::ostringstream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    os << indent << it.key() << ':';
    if (v.is_object()) {
      os << '\n';
      text_lines(v, indent + "  ", os);
    } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); })) {
      os << '\n';
      std::size_t i = 0;
      for (const auto& e : v) {
        os << indent << "  [" << i++ << "]";
        if (e.is_object()) {
          os << '\n';
          text_lines(e, indent + "    ", os);
        } else {
          os << ' ' << e.dump() << '\n';
        }
      }
    } else if (v.is_array()) {
      os << ' ';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      }
      os << '\n';
    } else {
      os << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

std::string emit(const json& j, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) return j.dump(2) + "\n";
  std::ostringstream os;
  text_lines(j, "", os);
  return os.str();
}

TableCell cell(std::size_t expected, std::size_t actual) {
  return {std::to_string(expected), std::to_string(actual), true, expected == actual};
}

TableCell skipped(std::string expected) { return {std::move(expected), "out-of-scope", false, true}; }

}  // namespace

bool TableReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.internal.pass && r.external.pass; });
}

std::size_t TableReport::checked_rows() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const TableRow& r) {
    return r.internal.checked && r.external.checked;
  }));
}

std::vector<QuadNumber> default_slopes(std::size_t m) {
  std::vector<QuadNumber> s;
  for (std::size_t i = 1; i <= m; ++i) s.push_back(QuadNumber(static_cast<long>(i)));
  return s;
}

TableReport run_table(unsigned order) {
  TableReport t;
  TangentOptions opts;
  opts.order = order;
  auto row = [&](std::string name, const SpacePresentation& space, const Point& x, std::size_t in_expected,
                 std::size_t ex_expected, const TangentOptions& o) {
    TableRow r;
    r.name = std::move(name);
    r.space = space.render();
    r.point = render_point(x);
    r.internal = cell(in_expected, internal_tangent(space, x, o).dim);
    r.external = cell(ex_expected, external_tangent(space, x, o.order).dim);
    t.rows.push_back(std::move(r));
  };
  row("discrete diffeological space", make_space(Discrete{1}), {QuadNumber(3)}, 0, 0, opts);
  row("indiscrete diffeological space", make_space(Indiscrete{1}), {QuadNumber(3)}, 0, 0, opts);
  row("topological space with continuous diffeology", make_space(ContinuousLine{}), {QuadNumber(3)}, 0, 0, opts);
  row("smooth manifold of dimension n", make_space(Euclidean{3}), {QuadNumber(1), QuadNumber(-2), QuadNumber(3)}, 3,
      3, opts);
  row("axes in R^2 with the pushout diffeology", make_space(WedgeOfLines{2}), Point(2), 2, 2, opts);
  row("axes in R^2 with the sub-diffeology", make_space(AxesSub{2}), Point(2), 2, 2, opts);
  SpacePresentation three = SmoothMap::three_lines_target();
  row("three lines intersecting at 0 in R^2 with the sub-diffeology", three, Point(2), 3, 3, opts);
  {
    TangentOptions wire = opts;
    wire.slopes = default_slopes(kWireSlopes);
    SpacePresentation g = make_space(Generated{2, 1});
    TableRow r;
    r.name = "R^n with wire diffeology (n >= 2)";
    r.space = g.render();
    r.point = render_point(Point(2));
    std::size_t d = internal_tangent(g, Point(2), wire).dim;
    r.internal = {">= " + std::to_string(kWireSlopes), std::to_string(d), true, d >= kWireSlopes};
    r.external = cell(2, external_tangent(g, Point(2), order).dim);
    r.note = "uncountable dimension; certified on " + std::to_string(kWireSlopes) + " supplied slopes";
    t.rows.push_back(std::move(r));
  }
  row("1-dimensional irrational torus", make_space(IrrationalTorus{QuadNumber::sqrt(2)}), {QuadNumber::fraction(1, 3)},
      1, 0, opts);
  row("quotient space R^n/O(n)", make_space(OrbitQuotient{3}), Point(3), 0, 1, opts);
  row("[0,inf) with the sub-diffeology of R", make_space(HalfLineSub{}), Point(1), 0, 1, opts);
  {
    SpacePresentation v = make_space(FineVector{5});
    TableRow r;
    r.name = "vector space V with fine diffeology";
    r.space = v.render();
    r.point = render_point(Point(5));
    r.internal = cell(5, internal_tangent(v, Point(5), opts).dim);
    r.internal.expected = "V (dim 5)";
    r.external = skipped("not listed");
    r.note = "external entry outside the finite-dimensional scope";
    t.rows.push_back(std::move(r));
  }
  {
    TableRow r;
    r.name = "diffeomorphism group of a compact smooth manifold M";
    r.space = "-";
    r.point = "1_M";
    r.internal = skipped("smooth vector fields on M");
    r.external = skipped("not listed");
    r.note = "infinite-dimensional; outside the catalog";
    t.rows.push_back(std::move(r));
  }
  return t;
}

std::optional<std::string> reference_row(const SpacePresentation& space, const Point& x) {
  if (space.is_product()) return std::nullopt;
  const Family& f = space.family();
  bool origin = std::all_of(x.begin(), x.end(), [](const QuadNumber& v) { return v.is_zero(); });
  if (std::holds_alternative<Discrete>(f)) return "discrete diffeological space";
  if (std::holds_alternative<Indiscrete>(f)) return "indiscrete diffeological space";
  if (std::holds_alternative<ContinuousLine>(f)) return "topological space with continuous diffeology";
  if (std::holds_alternative<Euclidean>(f)) return "smooth manifold of dimension n";
  if (std::holds_alternative<IrrationalTorus>(f)) return "1-dimensional irrational torus";
  if (std::holds_alternative<FineVector>(f)) return "vector space V with fine diffeology";
  if (const auto* g = std::get_if<Generated>(&f)) {
    if (g->n >= 2 && g->k == 1) return "R^n with wire diffeology (n >= 2)";
    return std::nullopt;
  }
  if (!origin) return std::nullopt;
  if (const auto* w = std::get_if<WedgeOfLines>(&f); w && w->j == 2) return "axes in R^2 with the pushout diffeology";
  if (const auto* a = std::get_if<AxesSub>(&f); a && a->j == 2) return "axes in R^2 with the sub-diffeology";
  if (const auto* l = std::get_if<LinesThroughOriginSub>(&f); l && l->directions.size() == 3) {
    return "three lines intersecting at 0 in R^2 with the sub-diffeology";
  }
  if (std::holds_alternative<OrbitQuotient>(f)) return "quotient space R^n/O(n)";
  if (std::holds_alternative<HalfLineSub>(f)) return "[0,inf) with the sub-diffeology of R";
  return std::nullopt;
}

std::string internal_report(const SpacePresentation& space, const Point& x, const TangentOptions& opts,
                            OutputFormat fmt) {
  InternalTangent t(space, x, opts);
  const auto& r = t.report();
  json j = header("tangent-internal", space);
  j["point"] = render_point(x);
  json in;
  in["dim"] = r.dim;
  in["basis"] = strings(r.basis);
  std::vector<std::string> gens;
  for (const auto& g : r.generators) gens.push_back(g.label);
  in["generators"] = gens;
  in["relations"] = r.relations.size();
  j["internal"] = in;
  return emit(j, fmt);
}

std::string external_report(const SpacePresentation& space, const Point& x, unsigned order, OutputFormat fmt) {
  auto r = external_tangent(space, x, order);
  json j = header("tangent-external", space);
  j["point"] = render_point(x);
  json ex;
  ex["dim"] = r.dim;
  ex["basis"] = strings(r.representatives);
  ex["germ_algebra"] = germ_algebra(space, x).describe();
  ex["orders_checked"] = {r.truncation_orders_checked.first, r.truncation_orders_checked.second};
  j["external"] = ex;
  return emit(j, fmt);
}

std::string full_report(const SpacePresentation& space, const Point& x, const TangentOptions& opts,
                        OutputFormat fmt) {
  InternalTangent t(space, x, opts);
  auto ext = external_tangent(space, x, opts.order);
  auto cmp = comparison_beta(space, x, opts);
  json j = header("beta", space);
  j["point"] = render_point(x);
  j["internal"] = {{"dim", t.dim()}, {"basis", t.report().basis}};
  j["external"] = {{"dim", ext.dim}, {"basis", ext.representatives}};
  j["beta"] = {{"rank", cmp.rank},
               {"injective", cmp.injective},
               {"surjective", cmp.surjective},
               {"matrix", matrix_json(cmp.beta)}};
  json prov = json::object();
  if (auto row = reference_row(space, x)) prov["reference_row"] = *row;
  j["provenance"] = prov;
  return emit(j, fmt);
}

std::string bundle_report(const SpacePresentation& space, const BundlePlotCandidate& c, OutputFormat fmt) {
  json j = header("bundle-check", space);
  j["candidate"] = candidate_json(c);
  j["hector"] = witness_json(hector_membership(space, c));
  j["dvs"] = witness_json(dvs_membership(space, c));
  return emit(j, fmt);
}

std::string fibrewise_report(const SpacePresentation& space, const BundlePlotCandidate& a,
                             const BundlePlotCandidate& b, OutputFormat fmt) {
  json j = header("fibrewise", space);
  j["first"] = candidate_json(a);
  j["second"] = candidate_json(b);
  json ops = json::array();
  for (const auto& r : check_fibrewise_ops(space, a, b)) {
    json o;
    o["operation"] = fibrewise_op_name(r.operation);
    o["hector"] = op_verdict_name(r.hector_verdict);
    o["dvs"] = op_verdict_name(r.dvs_verdict);
    if (r.hector_witness) o["hector_witness"] = candidate_json(*r.hector_witness);
    if (r.dvs_witness) o["dvs_witness"] = candidate_json(*r.dvs_witness);
    ops.push_back(o);
  }
  j["operations"] = ops;
  return emit(j, fmt);
}

std::string trivialization_report(const SpacePresentation& space, OutputFormat fmt) {
  auto r = group_trivialization(space);
  json j = header("trivialize", space);
  j["trivialization"] = {{"battery_size", r.battery_size},
                         {"forward_preserves", r.forward_preserves},
                         {"inverse_preserves", r.inverse_preserves},
                         {"round_trip", r.round_trip},
                         {"verdicts_coincide", r.verdicts_coincide},
                         {"holds", r.holds()}};
  return emit(j, fmt);
}

std::string fine_report(const SpacePresentation& space, const Point& x, OutputFormat fmt) {
  auto r = fine_check(space, x);
  json j = header("fine", space);
  j["point"] = render_point(x);
  json f;
  f["verdict"] = fineness_name(r.verdict);
  f["detail"] = r.detail;
  if (r.certificate) {
    std::vector<std::string> nodes;
    for (const auto& s : r.certificate->nodes) nodes.push_back(QuadNumber(s).to_string());
    f["certificate"] = {{"kind", "vandermonde"}, {"nodes", nodes}, {"rank", r.certificate->rank}};
  }
  j["fine"] = f;
  return emit(j, fmt);
}

std::string table_report(const TableReport& t, OutputFormat fmt) {
  if (fmt == OutputFormat::Text) {
    std::ostringstream os;
    for (const auto& r : t.rows) {
      auto mark = [](const TableCell& c) {
        if (!c.checked) return std::string("skip");
        return std::string(c.pass ? "pass" : "FAIL");
      };
      os << r.name << "\n  internal: expected " << r.internal.expected << ", got " << r.internal.actual << " ["
         << mark(r.internal) << "]\n  external: expected " << r.external.expected << ", got " << r.external.actual
         << " [" << mark(r.external) << "]\n";
      if (!r.note.empty()) os << "  note: " << r.note << "\n";
    }
    os << (t.all_passed() ? "all checked cells pass" : "table mismatch") << "\n";
    return os.str();
  }
  json j;
  j["verb"] = "table";
  json rows = json::array();
  for (const auto& r : t.rows) {
    auto c = [](const TableCell& x) {
      return json{{"expected", x.expected},
                  {"actual", x.actual},
                  {"status", !x.checked ? "out-of-scope" : (x.pass ? "pass" : "fail")}};
    };
    json row = {{"row", r.name}, {"space", r.space}, {"point", r.point}, {"internal", c(r.internal)},
                {"external", c(r.external)}};
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["passed"] = t.all_passed();
  return emit(j, fmt);
}

}  // namespace difftan
