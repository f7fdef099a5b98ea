#include "ncortho/io.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "ncortho/errors.hpp"

namespace ncortho::io {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field \"" + key + "\"");
  return *it;
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return v.get<int>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  return v;
}

json encode_word(const Word& w) { return json(w.letters()); }

Word decode_word(const json& v, int alphabet_size, const std::string& where) {
  std::vector<int> letters;
  for (const json& x : as_array(v, where)) letters.push_back(as_int(x, where));
  try {
    return Word(alphabet_size, std::move(letters));
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

int alphabet_of(const json& doc, const std::string& where) {
  const int N = as_int(field(doc, "N", where), where + ".N");
  if (N < 1) throw SchemaError(where + ".N: alphabet size must be >= 1");
  return N;
}

json encode_polynomial(const NcPolynomial& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back({{"word", encode_word(w)}, {"coeff", c}});
  return terms;
}

NcPolynomial decode_polynomial(const json& v, int alphabet_size, const std::string& where) {
  NcPolynomial p(alphabet_size);
  std::size_t i = 0;
  for (const json& term : as_array(v, where)) {
    const std::string here = where + "[" + std::to_string(i++) + "]";
    p.add_term(decode_word(field(term, "word", here), alphabet_size, here + ".word"),
               as_number(field(term, "coeff", here), here + ".coeff"));
  }
  return p;
}

json encode_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix decode_matrix(const json& v, Eigen::Index rows, Eigen::Index cols, const std::string& where) {
  const json& r = as_array(v, where);
  if (static_cast<Eigen::Index>(r.size()) != rows) {
    throw SchemaError(where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(r.size()));
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string here = where + "[" + std::to_string(i) + "]";
    const json& row = as_array(r[static_cast<std::size_t>(i)], here);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError(here + ": expected " + std::to_string(cols) + " columns, got " + std::to_string(row.size()));
    }
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = as_number(row[static_cast<std::size_t>(j)], here);
  }
  return m;
}

Eigen::Index level_size(int alphabet_size, int n) {
  Eigen::Index s = 1;
  for (int i = 0; i < n; ++i) s *= alphabet_size;
  return s;
}

StepKind decode_kind(const std::string& s, const std::string& where) {
  for (StepKind k : {StepKind::level, StepKind::letter_switch, StepKind::rise, StepKind::fall}) {
    if (s == to_string(k)) return k;
  }
  throw SchemaError(where + ": unknown step kind \"" + s + "\"");
}

LatticePoint decode_point(const json& v, const std::string& where) {
  const json& a = as_array(v, where);
  if (a.size() != 3) throw SchemaError(where + ": expected [t, k, m]");
  return {as_int(a[0], where), as_int(a[1], where), as_int(a[2], where)};
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string word_to_json(const Word& w) { return encode_word(w).dump(); }

Word word_from_json(std::string_view text, int alphabet_size) {
  return decode_word(parse(text), alphabet_size, "word");
}

std::string polynomial_to_json(const NcPolynomial& p) { return encode_polynomial(p).dump(); }

NcPolynomial polynomial_from_json(std::string_view text, int alphabet_size) {
  return decode_polynomial(parse(text), alphabet_size, "polynomial");
}

std::string moments_to_json(const MomentFunctional& phi) {
  json moments = json::array();
  const auto words = enumerate_up_to(phi.alphabet_size(), phi.max_word_length());
  const auto values = phi.values();
  for (std::size_t i = 0; i < words.size(); ++i) {
    moments.push_back({{"word", encode_word(words[i])}, {"value", values[i]}});
  }
  json doc = {{"N", phi.alphabet_size()}, {"max_degree", phi.max_degree()}, {"moments", std::move(moments)}};
  return doc.dump(1);
}

MomentFunctional moments_from_json(std::string_view text, double symmetry_tol) {
  const json doc = parse(text);
  const int N = alphabet_of(doc, "moment file");
  const int d = as_int(field(doc, "max_degree", "moment file"), "moment file.max_degree");
  if (d < 0) throw SchemaError("moment file.max_degree: must be >= 0");
  std::map<Word, double> table;
  std::size_t i = 0;
  for (const json& entry : as_array(field(doc, "moments", "moment file"), "moment file.moments")) {
    const std::string here = "moments[" + std::to_string(i++) + "]";
    Word w = decode_word(field(entry, "word", here), N, here + ".word");
    const double value = as_number(field(entry, "value", here), here + ".value");
    if (!table.emplace(w, value).second) throw SchemaError(here + ": duplicate word " + w.to_string());
  }
  return MomentFunctional::from_table(N, d, table, symmetry_tol);
}

std::string family_to_json(const AdmissibleFamily& f) {
  json a = json::array();
  json b = json::array();
  for (int n = 1; n <= f.depth(); ++n) {
    for (int k = 1; k <= f.alphabet_size(); ++k) a.push_back({{"n", n}, {"k", k}, {"rows", encode_matrix(f.a(n, k))}});
  }
  for (int n = 0; n <= f.b_depth(); ++n) {
    for (int k = 1; k <= f.alphabet_size(); ++k) b.push_back({{"n", n}, {"k", k}, {"rows", encode_matrix(f.b(n, k))}});
  }
  json doc = {{"N", f.alphabet_size()}, {"depth", f.depth()}, {"A", std::move(a)}, {"B", std::move(b)}};
  return doc.dump(1);
}

AdmissibleFamily family_from_json(std::string_view text) {
  const json doc = parse(text);
  const int N = alphabet_of(doc, "family file");
  const int d = as_int(field(doc, "depth", "family file"), "family file.depth");
  if (d < 0) throw SchemaError("family file.depth: must be >= 0");

  auto collect = [&](const char* key, int first_n, std::vector<std::vector<std::optional<Matrix>>>& slots) {
    std::size_t i = 0;
    for (const json& entry : as_array(field(doc, key, "family file"), std::string("family file.") + key)) {
      const std::string here = std::string(key) + "[" + std::to_string(i++) + "]";
      const int n = as_int(field(entry, "n", here), here + ".n");
      const int k = as_int(field(entry, "k", here), here + ".k");
      if (n < first_n || n > d) throw SchemaError(here + ": level n=" + std::to_string(n) + " out of range");
      if (k < 1 || k > N) throw SchemaError(here + ": letter k=" + std::to_string(k) + " out of range");
      const auto row_dim = level_size(N, n);
      const auto col_dim = key[0] == 'A' ? level_size(N, n - 1) : row_dim;
      const std::string label = std::string(key) + "_{" + std::to_string(n) + "," + std::to_string(k) + "}";
      auto& slot = slots[static_cast<std::size_t>(n - first_n)][static_cast<std::size_t>(k - 1)];
      if (slot) throw SchemaError(here + ": duplicate block " + label);
      slot = decode_matrix(field(entry, "rows", here), row_dim, col_dim, label);
    }
  };
  std::vector<std::vector<std::optional<Matrix>>> a_slots(static_cast<std::size_t>(d),
                                                          std::vector<std::optional<Matrix>>(static_cast<std::size_t>(N)));
  std::vector<std::vector<std::optional<Matrix>>> b_slots(static_cast<std::size_t>(d + 1),
                                                          std::vector<std::optional<Matrix>>(static_cast<std::size_t>(N)));
  collect("A", 1, a_slots);
  collect("B", 0, b_slots);

  auto finish = [&](std::vector<std::vector<std::optional<Matrix>>>& slots, const char* key, int first_n,
                    std::size_t required) {
    std::vector<std::vector<Matrix>> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const bool any = std::any_of(slots[i].begin(), slots[i].end(), [](const auto& m) { return m.has_value(); });
      if (!any && i >= required) break;
      std::vector<Matrix> level;
      for (std::size_t k = 0; k < slots[i].size(); ++k) {
        if (!slots[i][k]) {
          throw SchemaError(std::string("family file: missing block ") + key + "_{" +
                            std::to_string(static_cast<int>(i) + first_n) + "," + std::to_string(k + 1) + "}");
        }
        level.push_back(std::move(*slots[i][k]));
      }
      out.push_back(std::move(level));
    }
    return out;
  };
  auto a = finish(a_slots, "A", 1, static_cast<std::size_t>(d));
  auto b = finish(b_slots, "B", 0, static_cast<std::size_t>(d));
  try {
    return AdmissibleFamily(N, std::move(a), std::move(b));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("family file: ") + e.what());
  }
}

std::string basis_to_json(const OrthonormalBasis& basis) {
  json entries = json::array();
  for (const Word& w : enumerate_up_to(basis.alphabet_size(), static_cast<std::size_t>(basis.depth()))) {
    entries.push_back({{"word", encode_word(w)}, {"polynomial", encode_polynomial(basis.polynomial(w))}});
  }
  json doc = {{"N", basis.alphabet_size()}, {"depth", basis.depth()}, {"basis", std::move(entries)}};
  return doc.dump(1);
}

OrthonormalBasis basis_from_json(std::string_view text) {
  const json doc = parse(text);
  const int N = alphabet_of(doc, "basis file");
  const int d = as_int(field(doc, "depth", "basis file"), "basis file.depth");
  if (d < 0) throw SchemaError("basis file.depth: must be >= 0");
  const auto words = enumerate_up_to(N, static_cast<std::size_t>(d));
  const auto dim = static_cast<Eigen::Index>(words.size());
  Matrix coeffs = Matrix::Zero(dim, dim);
  std::vector<bool> seen(words.size(), false);
  std::size_t i = 0;
  for (const json& entry : as_array(field(doc, "basis", "basis file"), "basis file.basis")) {
    const std::string here = "basis[" + std::to_string(i++) + "]";
    const Word alpha = decode_word(field(entry, "word", here), N, here + ".word");
    if (alpha.length() > static_cast<std::size_t>(d)) throw SchemaError(here + ": word longer than depth");
    const auto row = alpha.graded_index();
    if (seen[row]) throw SchemaError(here + ": duplicate word " + alpha.to_string());
    seen[row] = true;
    const NcPolynomial p = decode_polynomial(field(entry, "polynomial", here), N, here + ".polynomial");
    for (const auto& [beta, c] : p.terms()) {
      if (beta.length() > static_cast<std::size_t>(d)) throw SchemaError(here + ": term beyond depth");
      coeffs(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(beta.graded_index())) = c;
    }
  }
  for (std::size_t r = 0; r < seen.size(); ++r) {
    if (!seen[r]) throw SchemaError("basis file: missing polynomial for word " + words[r].to_string());
  }
  try {
    return OrthonormalBasis(N, d, std::move(coeffs));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("basis file: ") + e.what());
  }
}

std::string paths_to_json(const Word& sigma, const std::vector<LatticePath>& paths) {
  json list = json::array();
  for (const LatticePath& p : paths) {
    json steps = json::array();
    for (const Step& s : p.steps) {
      steps.push_back({{"kind", to_string(s.kind)},
                       {"from", {s.from.t, s.from.letter, s.from.height}},
                       {"to", {s.to.t, s.to.letter, s.to.height}}});
    }
    list.push_back(std::move(steps));
  }
  json doc = {{"word", encode_word(sigma)}, {"count", paths.size()}, {"paths", std::move(list)}};
  return doc.dump(1);
}

std::vector<LatticePath> paths_from_json(std::string_view text) {
  const json doc = parse(text);
  std::vector<LatticePath> out;
  std::size_t i = 0;
  for (const json& p : as_array(field(doc, "paths", "path file"), "path file.paths")) {
    const std::string here = "paths[" + std::to_string(i++) + "]";
    LatticePath path;
    std::size_t j = 0;
    for (const json& s : as_array(p, here)) {
      const std::string at = here + "[" + std::to_string(j++) + "]";
      const json& kind = field(s, "kind", at);
      if (!kind.is_string()) throw SchemaError(at + ".kind: expected a string");
      path.steps.push_back({decode_kind(kind.get<std::string>(), at + ".kind"),
                            decode_point(field(s, "from", at), at + ".from"),
                            decode_point(field(s, "to", at), at + ".to")});
    }
    out.push_back(std::move(path));
  }
  return out;
}

OneDimRecurrence recurrence_from_json(std::string_view text, std::string label) {
  const json doc = parse(text);
  OneDimRecurrence rec;
  rec.label = std::move(label);
  if (auto it = doc.find("label"); doc.is_object() && it != doc.end() && it->is_string()) rec.label = it->get<std::string>();
  for (const json& x : as_array(field(doc, "a", rec.label), rec.label + ".a")) rec.a.push_back(as_number(x, rec.label + ".a"));
  for (const json& x : as_array(field(doc, "b", rec.label), rec.label + ".b")) rec.b.push_back(as_number(x, rec.label + ".b"));
  try {
    rec.validate();
  } catch (const Error& e) {
    throw SchemaError(e.what());
  }
  return rec;
}

std::vector<OneDimRecurrence> parse_recurrence_spec(std::string_view spec, int n_max,
                                                    const std::filesystem::path& base_dir) {
  std::vector<OneDimRecurrence> out;
  std::size_t start = 0;
  // Commas inside "laguerre(...)" never occur, so a plain split is enough.
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string item = trim(spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start));
    if (item.empty()) throw DomainError("recurrence spec \"" + std::string(spec) + "\": empty entry");
    if (item.rfind("custom:", 0) == 0) {
      std::filesystem::path file = item.substr(7);
      if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
      out.push_back(recurrence_from_json(read_file(file), file.filename().string()));
    } else if (item == "hermite") {
      out.push_back(classical_coefficients(ClassicalKind::hermite, n_max));
    } else if (item == "chebyshev_t") {
      out.push_back(classical_coefficients(ClassicalKind::chebyshev_t, n_max));
    } else if (item == "legendre") {
      out.push_back(classical_coefficients(ClassicalKind::legendre, n_max));
    } else if (item == "laguerre") {
      out.push_back(classical_coefficients(ClassicalKind::laguerre, n_max, 0.0));
    } else if (item.rfind("laguerre(", 0) == 0 && item.back() == ')') {
      const std::string arg = item.substr(9, item.size() - 10);
      double alpha = 0.0;
      std::size_t used = 0;
      try {
        alpha = std::stod(arg, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != arg.size()) throw DomainError("recurrence spec: bad laguerre parameter \"" + arg + "\"");
      out.push_back(classical_coefficients(ClassicalKind::laguerre, n_max, alpha));
    } else {
      throw DomainError("recurrence spec: unknown kind \"" + item + "\"");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (content.empty() || content.back() != '\n') out << '\n';
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace ncortho::io
