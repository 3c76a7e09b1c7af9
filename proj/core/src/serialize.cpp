#include "krein/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "krein/errors.hpp"

namespace krein::io {

Json to_json(const Matrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Json to_json(const RealVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

namespace {

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw MalformedInput(std::string("expected a number in ") + what);
  return v.get<double>();
}

}  // namespace

Matrix matrix_from_json(const Json& j) {
  if (j.is_array()) {
    const Index rows = Index(j.size());
    const Index cols = rows ? Index(j.at(0).size()) : 0;
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      const Json& row = j[std::size_t(r)];
      if (!row.is_array() || Index(row.size()) != cols)
        throw MalformedInput("matrix rows must be arrays of equal length");
      for (Index c = 0; c < cols; ++c) m(r, c) = number(row[std::size_t(c)], "matrix");
    }
    return m;
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re"))
    throw MalformedInput("matrix must be {rows, cols, re[, im]} or a nested array");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw MalformedInput("matrix rows/cols must be integers");
  const Index rows = j["rows"].get<Index>();
  const Index cols = j["cols"].get<Index>();
  if (rows < 0 || cols < 0) throw MalformedInput("matrix dimensions must be nonnegative");
  const Json& re = j["re"];
  const bool has_im = j.contains("im");
  if (!re.is_array() || Index(re.size()) != rows * cols ||
      (has_im && (!j["im"].is_array() || Index(j["im"].size()) != rows * cols)))
    throw MalformedInput("matrix entry count does not match rows*cols");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      const std::size_t k = std::size_t(r * cols + c);
      m(r, c) = cplx(number(re[k], "re"), has_im ? number(j["im"][k], "im") : 0.0);
    }
  return m;
}

Problem parse_problem(const Json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("J")) throw MalformedInput("problem needs a \"J\" matrix");
  auto pick = [&](const char* a, const char* b) -> const Json& {
    if (j.contains(a)) return j[a];
    if (j.contains(b)) return j[b];
    throw MalformedInput(std::string("problem needs \"") + a + "\"");
  };
  const Matrix jm = matrix_from_json(j["J"]);
  const Matrix domain = matrix_from_json(pick("T0_domain", "domain"));
  const Matrix action = matrix_from_json(pick("T0_action", "action"));
  if (jm.rows() != jm.cols()) throw MalformedInput("J must be square");
  const Index n = jm.rows();
  // An empty domain may be written with zero rows.
  const Matrix d = domain.size() == 0 ? Matrix(n, 0) : domain;
  const Matrix a = action.size() == 0 ? Matrix(n, 0) : action;
  if (d.rows() != n || a.rows() != n || d.cols() != a.cols())
    throw MalformedInput("domain and action must be n x k with the same k");
  SignatureSpace space(jm, tol);
  return {space, PartialContraction::make(space, d, a, tol)};
}

Json problem_to_json(const PartialContraction& t0) {
  Json j;
  j["J"] = to_json(t0.space().J());
  j["T0_domain"] = to_json(t0.domain());
  j["T0_action"] = to_json(t0.action());
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(path.string() + ": " + e.what());
  }
}

Problem load_problem(const std::filesystem::path& path, const Tolerances& tol) {
  return parse_problem(read_json_file(path), tol);
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit(std::ostringstream& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(std::size_t(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(std::size_t(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { out << "{}"; return; }
      out << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(out, it.value(), indent, depth + 1);
      }
      out << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { out << "[]"; return; }
      // Flat arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(),
                                    [](const Json& e) { return e.is_primitive(); });
      out << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << (flat ? ", " : ",");
        if (!flat) out << nl << pad;
        first = false;
        emit(out, e, indent, depth + 1);
      }
      if (!flat) out << nl << close;
      out << ']';
      return;
    }
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::ostringstream out;
  emit(out, j, indent, 0);
  out << '\n';
  return out.str();
}

std::string matrix_csv(const Matrix& m) {
  const bool complex_part = m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > 0.0;
  std::ostringstream out;
  out << "row";
  for (Index c = 0; c < m.cols(); ++c) {
    out << ",re_" << c;
    if (complex_part) out << ",im_" << c;
  }
  out << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    out << r;
    for (Index c = 0; c < m.cols(); ++c) {
      out << ',' << format_double(m(r, c).real());
      if (complex_part) out << ',' << format_double(m(r, c).imag());
    }
    out << '\n';
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

}  // namespace krein::io
