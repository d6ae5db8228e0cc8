#include "cfs/io.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace cfs {

using json = nlohmann::ordered_json;

namespace {

// Doubles carrying certified bounds are exact binary rationals; serialize
// them as integer fractions for a lossless round trip.
std::pair<int64_t, int64_t> double_as_fraction(double d) {
  Rational q(d);
  q.canonicalize();
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
    throw std::overflow_error("f-range fraction exceeds int64");
  return {q.get_num().get_si(), q.get_den().get_si()};
}

json word_array(const Word& w) {
  json arr = json::array();
  for (int s : w) arr.push_back(s);
  return arr;
}

json words_array(const std::vector<Word>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back(word_array(w));
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string automaton_to_json(const SubshiftAutomaton& a) {
  json j;
  j["N"] = a.alphabet;
  j["window"] = a.window;
  json states = json::array();
  for (size_t i = 0; i < a.size(); ++i) {
    json w = json::array();
    for (uint8_t s : a.state_word(i)) w.push_back(int(s));
    states.push_back(std::move(w));
  }
  j["states"] = std::move(states);
  json trans = json::array();
  for (size_t i = 0; i < a.size(); ++i)
    for (uint32_t t : a.successors(i)) trans.push_back(json::array({i, t}));
  j["transitions"] = std::move(trans);
  json ranges = json::array();
  for (size_t i = 0; i < a.size(); ++i) {
    auto [ln, ld] = double_as_fraction(a.f_lo[i]);
    auto [hn, hd] = double_as_fraction(a.f_hi[i]);
    ranges.push_back(json::array({ln, ld, hn, hd}));
  }
  j["fRanges"] = std::move(ranges);
  return dump(j);
}

SubshiftAutomaton automaton_from_json(const std::string& text) {
  json j = json::parse(text);
  SubshiftAutomaton a;
  a.alphabet = j.at("N").get<int>();
  a.window = j.at("window").get<int>();
  size_t len = a.word_len();
  const auto& states = j.at("states");
  a.symbols.reserve(states.size() * len);
  for (const auto& w : states) {
    if (w.size() != len) throw std::invalid_argument("state word length mismatch");
    for (const auto& s : w) a.symbols.push_back(static_cast<uint8_t>(s.get<int>()));
  }
  size_t n = states.size();
  std::vector<std::vector<uint32_t>> adj(n);
  for (const auto& e : j.at("transitions")) {
    uint32_t from = e.at(0).get<uint32_t>(), to = e.at(1).get<uint32_t>();
    if (from >= n || to >= n) throw std::invalid_argument("transition out of range");
    adj[from].push_back(to);
  }
  a.out_start.assign(n + 1, 0);
  for (size_t i = 0; i < n; ++i) a.out_start[i + 1] = a.out_start[i] + adj[i].size();
  a.out_edges.reserve(a.out_start.back());
  for (auto& row : adj)
    for (uint32_t t : row) a.out_edges.push_back(t);
  const auto& ranges = j.at("fRanges");
  if (ranges.size() != n) throw std::invalid_argument("fRanges length mismatch");
  for (const auto& r : ranges) {
    a.f_lo.push_back(double(r.at(0).get<int64_t>()) / double(r.at(1).get<int64_t>()));
    a.f_hi.push_back(double(r.at(2).get<int64_t>()) / double(r.at(3).get<int64_t>()));
  }
  return a;
}

std::string decomposition_to_json(const SubshiftAutomaton& a,
                                  const ComponentDecomposition& d) {
  json j;
  json subs = json::array();
  for (const auto& comp : d.subhorseshoes) {
    json c;
    c["states"] = json(comp);
    c["size"] = comp.size();
    c["single_cycle"] = is_single_cycle(a, comp);
    subs.push_back(std::move(c));
  }
  j["subhorseshoes"] = std::move(subs);
  json pairs = json::array();
  for (auto [x, y] : d.transient_pairs) pairs.push_back(json::array({x, y}));
  j["transient_pairs"] = std::move(pairs);
  j["orphan_states"] = json(d.orphan_states);
  return dump(j);
}

std::string dimension_to_json(const DimensionEstimate& e, bool diagnostics) {
  json j;
  j["method"] = e.method == DimMethod::boxcount ? "boxcount" : "pressure";
  j["lo"] = format_double(e.lo);
  j["hi"] = format_double(e.hi);
  if (diagnostics) {
    if (!e.count_table.empty()) {
      json t = json::array();
      for (auto [r, c] : e.count_table) t.push_back(json::array({r, c}));
      j["count_table"] = std::move(t);
    }
    if (!e.bisection_trace.empty()) {
      json t = json::array();
      for (auto [s, rho] : e.bisection_trace)
        t.push_back(json::array({format_double(s), format_double(rho)}));
      j["bisection_trace"] = std::move(t);
    }
  }
  return dump(j);
}

std::string count_table_csv(const DimensionEstimate& e) {
  std::ostringstream os;
  os << "r,count\n";
  for (auto [r, c] : e.count_table) os << r << "," << c << "\n";
  return os.str();
}

std::string bisection_trace_csv(const DimensionEstimate& e) {
  std::ostringstream os;
  os << "s,rho\n";
  for (auto [s, rho] : e.bisection_trace)
    os << format_double(s) << "," << format_double(rho) << "\n";
  return os.str();
}

std::string dcurve_csv(const std::vector<DCurvePoint>& pts) {
  std::ostringstream os;
  os << "t,dLo,dHi,window,r_max\n";
  for (const auto& p : pts)
    os << to_string(p.t) << "," << format_double(p.d_lo) << ","
       << format_double(p.d_hi) << "," << p.window << "," << p.r_max << "\n";
  return os.str();
}

std::string dcurve_json(const std::vector<DCurvePoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) {
    json j;
    j["t"] = to_string(p.t);
    j["dLo"] = format_double(p.d_lo);
    j["dHi"] = format_double(p.d_hi);
    j["window"] = p.window;
    j["r_max"] = p.r_max;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

namespace {

std::string value_decimal(const QuadraticValue& v, int digits) {
  Rational tol(1, 1);
  for (int i = 0; i < digits + 2; ++i) tol /= 10;
  return decimal_string(v.enclosure(tol).lo, digits);
}

}  // namespace

std::string triples_csv(const std::vector<MarkovTriple>& triples, int digits) {
  std::ostringstream os;
  os << "x,y,z,value,decimal_" << digits << "\n";
  for (const auto& t : triples) {
    QuadraticValue v = triple_spectrum_value(t.z);
    os << t.x.get_str() << "," << t.y.get_str() << "," << t.z.get_str() << ","
       << v.str() << "," << value_decimal(v, digits) << "\n";
  }
  return os.str();
}

std::string triples_json(const std::vector<MarkovTriple>& triples, int digits) {
  json arr = json::array();
  for (const auto& t : triples) {
    QuadraticValue v = triple_spectrum_value(t.z);
    json j;
    j["x"] = t.x.get_str();
    j["y"] = t.y.get_str();
    j["z"] = t.z.get_str();
    j["value"] = v.str();
    j["decimal"] = value_decimal(v, digits);
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

std::string crosscheck_json(const CrosscheckReport& r) {
  json arr = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["z"] = row.triple.z.get_str();
    j["target"] = row.target.str();
    j["matched"] = row.matched;
    if (row.matched) {
      j["witness_period"] = word_array(row.witness_period);
      j["exact"] = row.exact;
    }
    arr.push_back(std::move(j));
  }
  json top;
  top["max_period_len"] = r.max_period_len;
  top["rows"] = std::move(arr);
  return dump(top);
}

std::string crosscheck_csv(const CrosscheckReport& r) {
  std::ostringstream os;
  os << "z,target,matched,witness,exact\n";
  for (const auto& row : r.rows) {
    os << row.triple.z.get_str() << "," << row.target.str() << ","
       << (row.matched ? 1 : 0) << ",";
    if (row.matched) {
      for (size_t i = 0; i < row.witness_period.size(); ++i) {
        if (i) os << ' ';
        os << row.witness_period[i];
      }
      os << "," << (row.exact ? 1 : 0);
    } else {
      os << ",";
    }
    os << "\n";
  }
  return os.str();
}

std::string eta_minus_json(double eta, const ShiftLab::EtaMinus& r) {
  json j;
  j["eta"] = format_double(eta);
  j["t_lo"] = to_string(r.t_lo);
  j["t_hi"] = to_string(r.t_hi);
  j["d_hi_left"] = format_double(r.d_hi_left);
  j["d_hi_right"] = format_double(r.d_hi_right);
  j["degenerate"] = r.degenerate;
  j["indeterminate"] = r.indeterminate;
  return dump(j);
}

std::string connect_json(
    const std::vector<std::vector<Word>>& comps,
    const std::vector<std::tuple<size_t, size_t, ShiftLab::Connect>>& results,
    const Rational& t, const Rational& eps) {
  json j;
  j["t"] = to_string(t);
  j["eps"] = to_string(eps);
  json cs = json::array();
  for (const auto& c : comps) cs.push_back(words_array(c));
  j["components"] = std::move(cs);
  json rs = json::array();
  for (const auto& [x, y, c] : results) {
    json r;
    r["comp1"] = x;
    r["comp2"] = y;
    r["connected"] = c.connected;
    r["path_fwd"] = words_array(c.path_fwd);
    r["path_back"] = words_array(c.path_back);
    r["enclosing_scc_size"] = c.enclosing_scc.size();
    rs.push_back(std::move(r));
  }
  j["results"] = std::move(rs);
  return dump(j);
}

std::string family_json(const ShiftLab::Family& f) {
  json j;
  j["eta_t_lo"] = to_string(f.eta_t_lo);
  j["eta_t_hi"] = to_string(f.eta_t_hi);
  j["complete"] = f.complete;
  j["diagnostic"] = f.diagnostic;
  json stages = json::array();
  for (const auto& st : f.stages) {
    json s;
    s["t"] = to_string(st.t);
    s["t_next"] = to_string(st.t_next);
    s["component_size"] = st.component.size();
    s["component"] = words_array(st.component);
    s["dim_lo"] = format_double(st.dim.lo);
    s["dim_hi"] = format_double(st.dim.hi);
    s["max_f_lo"] = to_string(st.max_f.lo);
    s["max_f_hi"] = to_string(st.max_f.hi);
    s["connects_to_previous"] = st.connects_to_previous;
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  return dump(j);
}

std::string theta_json(const ShiftLab::Theta& th, int stages,
                       const std::vector<int>& gaps) {
  json j;
  j["stages"] = stages;
  j["gaps"] = json(gaps);
  j["word_length"] = th.word.size();
  j["word"] = word_array(th.word);
  j["lagrange_lo"] = to_string(th.lagrange_estimate.lo);
  j["lagrange_hi"] = to_string(th.lagrange_estimate.hi);
  j["window_err"] = to_string(th.window_err);
  j["final_max_f_lo"] = to_string(th.final_max_f.lo);
  j["final_max_f_hi"] = to_string(th.final_max_f.hi);
  return dump(j);
}

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::j_like: return "J-like";
    case PointClass::f_like: return "F-like";
    case PointClass::jtilde_like: return "Jtilde-like";
    case PointClass::d_zero: return "D-zero";
    case PointClass::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string classification_json(const Rational& t,
                                const ShiftLab::Classification& c) {
  json j;
  j["t"] = to_string(t);
  j["label"] = point_class_name(c.label);
  j["left_gap_certified"] = c.left_gap_certified;
  j["d_lo"] = format_double(c.d_lo);
  j["d_hi"] = format_double(c.d_hi);
  json per = json::array();
  for (const auto& v : c.per_eps) {
    json e;
    e["eps"] = to_string(v.eps);
    e["components"] = v.components;
    e["high_dim_components"] = v.high_dim_components;
    e["all_cycles"] = v.all_cycles;
    e["all_high_miss"] = v.all_high_miss;
    e["some_high_meet"] = v.some_high_meet;
    per.push_back(std::move(e));
  }
  j["per_eps"] = std::move(per);
  return dump(j);
}

}  // namespace cfs
