#include "hxray/config.hpp"

#include <cmath>

namespace hxray::config {

namespace {

// strips the library prefix "[json.exception...] parse error at line L, column C: "
std::string detail(const std::string &w) {
  const auto p = w.find(": ");
  return p == std::string::npos ? w : w.substr(p + 2);
}

}  // namespace

json parse_text(const std::string &text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    // byte offset to line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::Config, "config: syntax error at line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + detail(e.what()));
  }
}

Fields::Fields(const json &j, std::string path) : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) fail(ErrorCode::Config, "config: " + (path_.empty() ? "/" : path_) + ": expected an object");
}

void Fields::error(const std::string &key, const std::string &what) const {
  fail(ErrorCode::Config, "config: " + key_path(key) + ": " + what);
}

bool Fields::has(const std::string &key) const { return j_->contains(key); }

const json &Fields::at(const std::string &key) {
  seen_.insert(key);
  if (!j_->contains(key)) error(key, "missing required field");
  return (*j_)[key];
}

const json &Fields::raw(const std::string &key) { return at(key); }

double Fields::number(const std::string &key) {
  const json &v = at(key);
  if (!v.is_number()) error(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) error(key, "expected a finite number");
  return d;
}

double Fields::number(const std::string &key, double def) {
  seen_.insert(key);
  return has(key) ? number(key) : def;
}

double Fields::positive(const std::string &key) {
  const double d = number(key);
  if (!(d > 0.0)) error(key, "expected a positive number");
  return d;
}

double Fields::positive(const std::string &key, double def) {
  seen_.insert(key);
  return has(key) ? positive(key) : def;
}

int Fields::integer(const std::string &key) {
  const json &v = at(key);
  if (!v.is_number_integer()) error(key, "expected an integer");
  return v.get<int>();
}

int Fields::integer(const std::string &key, int def, int lo, int hi) {
  seen_.insert(key);
  const int v = has(key) ? integer(key) : def;
  if (v < lo || v > hi)
    error(key, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

std::uint64_t Fields::u64(const std::string &key, std::uint64_t def) {
  seen_.insert(key);
  if (!has(key)) return def;
  const json &v = at(key);
  if (!v.is_number_unsigned()) error(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool Fields::boolean(const std::string &key, bool def) {
  seen_.insert(key);
  if (!has(key)) return def;
  const json &v = at(key);
  if (!v.is_boolean()) error(key, "expected true or false");
  return v.get<bool>();
}

std::string Fields::string(const std::string &key, const std::string &def,
                           const std::vector<std::string> &choices) {
  seen_.insert(key);
  if (!has(key)) return def;
  const json &v = at(key);
  if (!v.is_string()) error(key, "expected a string");
  const std::string s = v.get<std::string>();
  if (!choices.empty() && std::find(choices.begin(), choices.end(), s) == choices.end()) {
    std::string all;
    for (const auto &c : choices) all += (all.empty() ? "" : ", ") + c;
    error(key, "expected one of {" + all + "}, got \"" + s + "\"");
  }
  return s;
}

namespace {

Vec to_vec(const Fields &f, const std::string &key, const json &v, int size) {
  if (!v.is_array()) f.error(key, "expected an array of numbers");
  if (size >= 0 && static_cast<int>(v.size()) != size)
    f.error(key, "expected " + std::to_string(size) + " numbers, got " + std::to_string(v.size()));
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) f.error(key, "element " + std::to_string(i) + " is not a number");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

}  // namespace

Vec Fields::vec(const std::string &key, int size) { return to_vec(*this, key, at(key), size); }

Vec Fields::vec(const std::string &key, const Vec &def) {
  seen_.insert(key);
  return has(key) ? vec(key, static_cast<int>(def.size())) : def;
}

std::vector<Vec> Fields::vec_list(const std::string &key, int size) {
  const json &v = at(key);
  if (!v.is_array()) error(key, "expected an array of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_vec(*this, key + "/" + std::to_string(i), v[i], size));
  return out;
}

std::vector<double> Fields::numbers(const std::string &key, const std::vector<double> &def) {
  seen_.insert(key);
  if (!has(key)) return def;
  const Vec v = vec(key);
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::vector<int> Fields::integers(const std::string &key, const std::vector<int> &def) {
  seen_.insert(key);
  if (!has(key)) return def;
  const json &v = at(key);
  if (!v.is_array()) error(key, "expected an array of integers");
  std::vector<int> out;
  for (const auto &e : v) {
    if (!e.is_number_integer()) error(key, "expected an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

cplx Fields::complex(const std::string &key, cplx def) {
  seen_.insert(key);
  if (!has(key)) return def;
  const json &v = at(key);
  if (v.is_number()) return v.get<double>();
  const Vec p = to_vec(*this, key, v, 2);
  return {p(0), p(1)};
}

Fields Fields::object(const std::string &key) { return Fields(at(key), key_path(key)); }

std::vector<Fields> Fields::objects(const std::string &key) {
  const json &v = at(key);
  if (!v.is_array()) error(key, "expected an array of objects");
  std::vector<Fields> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], key_path(key) + "/" + std::to_string(i));
  return out;
}

void Fields::finish() const {
  for (auto it = j_->begin(); it != j_->end(); ++it)
    if (!seen_.count(it.key())) error(it.key(), "unknown key");
}

algebra::HTypeStructure parse_structure(Fields &f) {
  const std::string fam = f.string("family", "heisenberg", {"heisenberg", "quaternionic", "custom"});
  algebra::HTypeStructure S;
  if (fam == "heisenberg") {
    const int n = f.integer("n", 1, 1, 16);
    const int m = f.integer("m", 1, 1, 1);
    (void)m;
    S = algebra::heisenberg(n);
  } else if (fam == "quaternionic") {
    f.integer("n", 2, 2, 2);
    f.integer("m", 3, 3, 3);
    S = algebra::quaternionic();
  } else {
    const int n = f.integer("n");
    if (n < 1) f.error("n", "expected n >= 1");
    const json &g = f.raw("generators");
    if (!g.is_array() || g.empty()) f.error("generators", "expected a nonempty array of matrices");
    std::vector<Mat> gens;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const std::string key = "generators/" + std::to_string(k);
      if (!g[k].is_array() || static_cast<int>(g[k].size()) != 2 * n) f.error(key, "expected 2n rows");
      Mat J(2 * n, 2 * n);
      for (int r = 0; r < 2 * n; ++r) {
        const json &row = g[k][r];
        if (!row.is_array() || static_cast<int>(row.size()) != 2 * n) f.error(key, "expected 2n columns");
        for (int c = 0; c < 2 * n; ++c) {
          if (!row[c].is_number()) f.error(key, "entries must be numbers");
          J(r, c) = row[c].get<double>();
        }
      }
      gens.push_back(J);
    }
    if (f.has("m") && f.integer("m") != static_cast<int>(gens.size()))
      f.error("m", "does not match the number of generators");
    try {
      S = algebra::custom(n, gens);
    } catch (const Error &e) {
      f.error("generators", e.what());
    }
  }
  f.finish();
  return S;
}

quad::Quadrature parse_quadrature(Fields &f) {
  quad::Quadrature q;
  q.line_tau = f.positive("line_tau", q.line_tau);
  q.line_density = f.positive("line_density", q.line_density);
  q.line_min_nodes = f.integer("line_min_nodes", q.line_min_nodes, 8);
  q.line_max_nodes = f.integer("line_max_nodes", q.line_max_nodes, 8);
  q.loop_nodes = f.integer("loop_nodes", q.loop_nodes, 8);
  q.volume_order = f.integer("volume_order", q.volume_order, 8, 200);
  q.period_nodes = f.integer("period_nodes", q.period_nodes, 8);
  q.central_order = f.integer("central_order", q.central_order, 8, 200);
  q.grid_halfwidth = f.positive("grid_halfwidth", q.grid_halfwidth);
  q.grid_nodes = f.integer("grid_nodes", q.grid_nodes, 8);
  f.finish();
  try {
    q.validate();
  } catch (const Error &e) {
    fail(ErrorCode::Config, std::string("config: ") + f.path() + ": " + e.what());
  }
  return q;
}

transform::TestFunction parse_function(Fields &f, const algebra::HTypeStructure &S) {
  const int dx = S.dim_v(), du = S.m;
  transform::TestFunction tf(dx, du);
  if (f.has("gaussian")) {
    Fields g = f.object("gaussian");
    const double a = g.positive("a", 1.0), b = g.positive("b", 1.0);
    g.finish();
    f.finish();
    return transform::TestFunction::gaussian(dx, du, a, b);
  }
  if (f.has("zero")) {
    if (!f.boolean("zero", false)) f.error("zero", "only true is meaningful");
    f.finish();
    return tf;
  }
  for (auto &p : f.objects("products")) {
    transform::Product prod;
    for (auto &h : p.objects("horizontal")) {
      transform::HorizontalTerm t;
      t.c = h.complex("c", 1.0);
      t.a = h.positive("a");
      t.x0 = h.vec("x0", Vec(Vec::Zero(dx)));
      t.P = transform::Polynomial::constant(dx);
      if (h.has("poly")) {
        t.P.terms.clear();
        for (auto &m : h.objects("poly")) {
          const std::vector<int> e = m.integers("exps", {});
          if (static_cast<int>(e.size()) != dx) m.error("exps", "expected " + std::to_string(dx) + " exponents");
          int deg = 0;
          for (int v : e) {
            if (v < 0) m.error("exps", "exponents must be >= 0");
            deg += v;
          }
          if (deg > 4) m.error("exps", "total degree must be <= 4");
          t.P.terms.push_back({e, m.complex("coeff", 1.0)});
          m.finish();
        }
      }
      h.finish();
      prod.horizontal.push_back(t);
    }
    for (auto &c : p.objects("central")) {
      transform::CentralTerm t;
      t.d = c.complex("d", 1.0);
      t.b = c.positive("b");
      t.u0 = c.vec("u0", Vec(Vec::Zero(du)));
      t.omega0 = c.vec("omega0", Vec(Vec::Zero(du)));
      c.finish();
      prod.central.push_back(t);
    }
    p.finish();
    tf.add(prod);
  }
  f.finish();
  return tf;
}

RunConfig load(const json &j, json &experiment) {
  RunConfig rc;
  rc.raw = j;
  Fields top(j, "");
  {
    Fields s = top.object("structure");
    rc.structure = parse_structure(s);
  }
  {
    if (top.has("basis")) {
      Fields b = top.object("basis");
      rc.L = b.integer("L", rc.L, 0, 40);
      b.finish();
    }
  }
  if (top.has("quadrature")) {
    Fields q = top.object("quadrature");
    rc.quadrature = parse_quadrature(q);
  }
  if (top.has("output")) {
    Fields o = top.object("output");
    rc.out_dir = o.string("dir", rc.out_dir);
    rc.report_name = o.string("report", rc.report_name);
    rc.emit_matrices = o.boolean("emit_matrices", rc.emit_matrices);
    o.finish();
  }
  if (top.has("experiment")) {
    const json &e = top.raw("experiment");
    if (!e.is_object()) top.error("experiment", "expected an object");
    experiment = e;
  } else {
    experiment = json::object();
  }
  top.finish();
  return rc;
}

}  // namespace hxray::config
