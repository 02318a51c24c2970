#include "tetrainterp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "tetrainterp/errors.hpp"
#include "tetrainterp/tetra.hpp"

namespace tetrainterp {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_complex(Complex z) {
  return "[" + fmt_double(z.real()) + ", " + fmt_double(z.imag()) + "]";
}

std::string json_poly(const ComplexPoly& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) out += ", ";
    out += json_complex(p.coeffs()[i]);
  }
  return out + "]";
}

std::string json_complex_list(const std::vector<Complex>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += json_complex(v[i]);
  }
  return out + "]";
}

std::string json_double_list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(v[i]);
  }
  return out + "]";
}

// Streaming writer with fixed two-space indentation. Values passed as `raw`
// must already be serialized (used for inline arrays).
class JsonWriter {
 public:
  void begin_object() { open('{'); }
  void begin_object(const char* key) { open('{', key); }
  void end_object() { close('}'); }
  void begin_array(const char* key) { open('[', key); }
  void end_array() { close(']'); }

  void field(const char* key, const std::string& raw) {
    prefix();
    out_ += '"';
    out_ += key;
    out_ += "\": ";
    out_ += raw;
  }
  void field(const char* key, double v) { field(key, fmt_double(v)); }
  void field(const char* key, int v) { field(key, std::to_string(v)); }
  void field(const char* key, bool v) { field(key, std::string(v ? "true" : "false")); }
  void item(const std::string& raw) {
    prefix();
    out_ += raw;
  }

  std::string str() const { return out_ + "\n"; }

 private:
  void prefix() {
    if (!need_comma_.empty()) {
      if (need_comma_.back()) out_ += ',';
      out_ += '\n';
      out_.append(2 * std::size_t(depth_), ' ');
      need_comma_.back() = true;
    }
  }
  void open(char ch, const char* key = nullptr) {
    prefix();
    if (key) {
      out_ += '"';
      out_ += key;
      out_ += "\": ";
    }
    out_ += ch;
    need_comma_.push_back(false);
    ++depth_;
  }
  void close(char ch) {
    --depth_;
    out_ += '\n';
    out_.append(2 * std::size_t(depth_), ' ');
    out_ += ch;
    need_comma_.pop_back();
  }

  std::string out_;
  std::vector<bool> need_comma_;
  int depth_ = 0;
};

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InvalidData(std::string("missing field \"") + key + "\"");
  return *it;
}

double get_number(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidData(std::string(what) + " must be a number");
  return j.get<double>();
}

int get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidData(std::string(what) + " must be an integer");
  return j.get<int>();
}

Complex get_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidData(std::string(what) + " must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<Complex> get_complex_list(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidData(std::string(what) + " must be an array");
  std::vector<Complex> out;
  for (const json& e : j) out.push_back(get_complex(e, what));
  return out;
}

ComplexPoly get_poly(const json& j, const char* what) {
  std::vector<Complex> c = get_complex_list(j, what);
  if (c.empty()) throw InvalidData(std::string(what) + " must have at least one coefficient");
  return ComplexPoly(std::move(c));
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidData(std::string("malformed JSON: ") + e.what());
  }
}

void write_rational(JsonWriter& w, const char* key, const RationalFn& f) {
  w.begin_object(key);
  w.field("num", json_poly(f.num()));
  w.field("den", json_poly(f.den()));
  w.end_object();
}

void write_tetra_inner_body(JsonWriter& w, const TetraInnerFn& x) {
  write_rational(w, "x1", x.x1);
  write_rational(w, "x2", x.x2);
  write_rational(w, "x3", x.x3);
  w.begin_object("center");
  w.field("x1", json_complex(x.center.x1));
  w.field("x2", json_complex(x.center.x2));
  w.field("x3", json_complex(x.center.x3));
  w.field("omega_angle", x.center.omega_angle);
  w.field("residual", x.center.residual);
  w.end_object();
  w.field("tau", json_complex(x.par.tau));
  w.field("degree", x.degree);
}

void write_clause(JsonWriter& w, const char* key, const ClauseReport& c) {
  w.begin_object(key);
  w.field("deviation", c.deviation);
  w.field("pass", c.pass);
  w.end_object();
}

void write_tetra_report_body(JsonWriter& w, const TetraReport& rep) {
  write_clause(w, "interpolation", rep.interpolation);
  write_clause(w, "phasar", rep.phasar);
  write_clause(w, "boundary_unimodular", rep.boundary_unimodular);
  write_clause(w, "boundary_pairing", rep.boundary_pairing);
  w.begin_object("membership");
  w.field("min_slack", rep.membership_min_slack);
  w.field("pass", rep.membership_pass);
  w.end_object();
  write_clause(w, "royal_match", rep.royal_match);
  w.field("type_ok", rep.type_ok);
  w.field("degree", rep.degree);
  w.field("degree_pass", rep.degree_pass);
  w.field("psi_consistency_pass", rep.psi_consistency_pass);
  w.field("psi_omega_angles", json_double_list(rep.psi_omega_angles));
  write_clause(w, "phasar_transfer_psi", rep.phasar_transfer_psi);
  write_clause(w, "phasar_transfer_upsilon", rep.phasar_transfer_upsilon);
  w.field("pass", rep.pass);
}

}  // namespace

BlaschkeData parse_blaschke_data_text(const std::string& text) {
  const json j = parse_document(text);
  if (!j.is_object()) throw InvalidData("top level must be an object");
  BlaschkeData data;
  data.n = get_int(need(j, "n"), "n");
  data.k = get_int(need(j, "k"), "k");
  data.sigma = get_complex_list(need(j, "sigma"), "sigma");
  data.eta = get_complex_list(need(j, "eta"), "eta");
  if (!need(j, "rho").is_array()) throw InvalidData("rho must be an array");
  for (const json& e : need(j, "rho")) data.rho.push_back(get_number(e, "rho entry"));
  validate_data(data);
  return data;
}

RoyalData parse_royal_data_text(const std::string& text) {
  const json j = parse_document(text);
  if (!j.is_object()) throw InvalidData("top level must be an object");
  RoyalData data;
  data.base.n = get_int(need(j, "n"), "n");
  data.base.k = get_int(need(j, "k"), "k");
  data.base.sigma = get_complex_list(need(j, "sigma"), "sigma");
  data.base.eta = get_complex_list(need(j, "eta"), "eta");
  if (!need(j, "rho").is_array()) throw InvalidData("rho must be an array");
  for (const json& e : need(j, "rho")) data.base.rho.push_back(get_number(e, "rho entry"));
  data.eta_tilde = get_complex_list(need(j, "eta_tilde"), "eta_tilde");
  validate_data(data);
  return data;
}

TetraInnerFn parse_tetra_inner_text(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw InvalidData("top level must be an object");
  // Result files wrap the function under "x"; accept both shapes.
  const json& j = doc.contains("x") && doc["x"].is_object() ? doc["x"] : doc;
  try {
    const json& j1 = need(j, "x1");
    const json& j2 = need(j, "x2");
    const json& j3 = need(j, "x3");
    RationalFn x1(get_poly(need(j1, "num"), "x1.num"), get_poly(need(j1, "den"), "x1.den"));
    RationalFn x2(get_poly(need(j2, "num"), "x2.num"), get_poly(need(j2, "den"), "x2.den"));
    RationalFn x3(get_poly(need(j3, "num"), "x3.num"), get_poly(need(j3, "den"), "x3.den"));
    const json& jc = need(j, "center");
    CenterPoint center;
    center.x1 = get_complex(need(jc, "x1"), "center.x1");
    center.x2 = get_complex(need(jc, "x2"), "center.x2");
    center.x3 = get_complex(need(jc, "x3"), "center.x3");
    center.omega_angle = get_number(need(jc, "omega_angle"), "center.omega_angle");
    center.residual = get_number(need(jc, "residual"), "center.residual");
    Parametrization par;
    par.tau = get_complex(need(j, "tau"), "tau");
    TetraInnerFn x{std::move(x1), std::move(x2), std::move(x3), center, std::move(par), 0};
    x.degree = degree_of(x);
    x.par.n = x.degree;
    return x;
  } catch (const InvalidData&) {
    throw;
  } catch (const Error& e) {
    throw InvalidData(std::string("invalid function file: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidData("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

BlaschkeData read_blaschke_data(const std::string& path) {
  return parse_blaschke_data_text(read_text_file(path));
}

RoyalData read_royal_data(const std::string& path) {
  return parse_royal_data_text(read_text_file(path));
}

TetraInnerFn read_tetra_inner(const std::string& path) {
  return parse_tetra_inner_text(read_text_file(path));
}

std::string format_pick_report(const BlaschkeData& data, const PdReport& report) {
  const Eigen::MatrixXcd m = build_pick_matrix(data);
  JsonWriter w;
  w.begin_object();
  w.field("n", data.n);
  w.field("k", data.k);
  w.begin_array("matrix");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<Complex> row;
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    w.item(json_complex_list(row));
  }
  w.end_array();
  w.field("positive_definite", report.positive_definite);
  w.field("rank_estimate", report.rank_estimate);
  w.field("smallest_pivot", report.smallest_pivot);
  w.end_object();
  return w.str();
}

std::string format_blaschke_result(Complex zeta, const Parametrization& par, const RationalFn& phi,
                                   const BlaschkeReport& report) {
  JsonWriter w;
  w.begin_object();
  w.field("zeta", json_complex(zeta));
  w.begin_object("parametrization");
  w.field("a", json_poly(par.a));
  w.field("b", json_poly(par.b));
  w.field("c", json_poly(par.c));
  w.field("d", json_poly(par.d));
  w.field("tau", json_complex(par.tau));
  w.field("exceptional", json_complex_list(par.exceptional));
  w.field("n", par.n);
  w.end_object();
  w.begin_object("phi");
  w.field("num", json_poly(phi.num()));
  w.field("den", json_poly(phi.den()));
  w.field("degree", phi.degree());
  w.field("disc_regular", phi.disc_regular());
  w.end_object();
  w.begin_object("report");
  w.field("inner_deviation", report.inner_deviation);
  w.field("interpolation_deviations", json_double_list(report.interpolation_deviations));
  w.field("phasar_deviations", json_double_list(report.phasar_deviations));
  w.field("degree", report.degree);
  w.field("disc_regular", report.disc_regular);
  w.field("pass", report.pass);
  w.end_object();
  w.end_object();
  return w.str();
}

std::string format_tetra_inner(const TetraInnerFn& x) {
  JsonWriter w;
  w.begin_object();
  write_tetra_inner_body(w, x);
  w.end_object();
  return w.str();
}

std::string format_royal_result(const TetraInnerFn& x, const RoyalNodeSet& nodes,
                                const TetraReport& report) {
  JsonWriter w;
  w.begin_object();
  w.begin_object("x");
  write_tetra_inner_body(w, x);
  w.end_object();
  w.begin_array("royal_nodes");
  for (const RoyalNode& node : nodes.nodes) {
    w.begin_object();
    w.field("location", json_complex(node.location));
    w.field("eta", json_complex(node.eta));
    w.field("eta_tilde", json_complex(node.eta_tilde));
    w.field("multiplicity", node.multiplicity);
    w.field("on_circle", node.on_circle);
    w.end_object();
  }
  w.end_array();
  w.begin_object("type");
  w.field("n", nodes.type_n);
  w.field("k", nodes.type_k);
  w.end_object();
  w.begin_object("report");
  write_tetra_report_body(w, report);
  w.end_object();
  w.end_object();
  return w.str();
}

std::string format_tetra_report(const TetraReport& report) {
  JsonWriter w;
  w.begin_object();
  write_tetra_report_body(w, report);
  w.end_object();
  return w.str();
}

std::string sample_csv(const TetraInnerFn& x, int count) {
  if (count < 1) throw InvalidData("sample count must be positive");
  std::string out = "theta,x1_re,x1_im,x2_re,x2_im,x3_re,x3_im,unimodular_dev,pairing_dev\n";
  for (int t = 0; t < count; ++t) {
    const double theta = 2.0 * std::numbers::pi * double(t) / double(count);
    const Complex z = std::polar(1.0, theta);
    const Complex v1 = x.x1.eval(z), v2 = x.x2.eval(z), v3 = x.x3.eval(z);
    out += fmt_double(theta);
    for (double v : {v1.real(), v1.imag(), v2.real(), v2.imag(), v3.real(), v3.imag(),
                     std::abs(std::abs(v3) - 1.0), std::abs(v1 - std::conj(v2) * v3)}) {
      out += ',';
      out += fmt_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace tetrainterp
