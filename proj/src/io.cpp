#include "chanfactor/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chanfactor/error.hpp"

namespace chanfactor::io {

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string label_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw Error(Errc::parse_error, "labels must be strings or numbers");
}

std::vector<std::string> labels_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw Error(Errc::parse_error, std::string("missing array field \"") + key + "\"");
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) out.push_back(label_from_json(v));
  return out;
}

std::vector<double> numbers_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::parse_error, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(Errc::parse_error, std::string(what) + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::parse_error, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json label_to_json(const std::string& label) {
  long long value = 0;
  const char* first = label.data();
  const char* last = first + label.size();
  const auto res = std::from_chars(first, last, value);
  if (!label.empty() && res.ec == std::errc{} && res.ptr == last && std::to_string(value) == label)
    return value;
  return label;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Channel channel_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "channel must be a JSON object");
  auto inputs = labels_from_json(j, "inputs");
  auto outputs = labels_from_json(j, "outputs");
  const json& rows_j = field(j, "rows");
  if (!rows_j.is_array()) throw Error(Errc::parse_error, "\"rows\" must be an array");
  std::vector<Row> rows;
  for (const auto& r : rows_j) rows.push_back(numbers_from_json(r, "row"));
  return Channel(std::move(inputs), std::move(outputs), std::move(rows));
}

json channel_to_json(const Channel& c) {
  json inputs = json::array();
  json outputs = json::array();
  for (const auto& l : c.inputs()) inputs.push_back(label_to_json(l));
  for (const auto& l : c.outputs()) outputs.push_back(label_to_json(l));
  return json{{"inputs", inputs}, {"outputs", outputs}, {"rows", c.rows()}};
}

Channel read_channel_file(const std::filesystem::path& path) {
  return channel_from_json(read_json_file(path));
}

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json rr = json::array();
    json ri = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const json& dim_j = field(j, "dim");
  if (!dim_j.is_number_unsigned() || dim_j.get<std::size_t>() == 0)
    throw Error(Errc::parse_error, "\"dim\" must be a positive integer");
  const auto dim = dim_j.get<std::size_t>();
  const json& re = field(j, "re");
  const json& im = field(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != dim || im.size() != dim)
    throw Error(Errc::parse_error, "matrix rows do not match \"dim\"");
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto rr = numbers_from_json(re[r], "re");
    const auto ri = numbers_from_json(im[r], "im");
    if (rr.size() != dim || ri.size() != dim)
      throw Error(Errc::parse_error, "matrix columns do not match \"dim\"");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = cplx{rr[c], ri[c]};
  }
  return m;
}

json qfactorization_to_json(const Channel& c, const QFactorization& q) {
  json partition = json::array();
  for (const auto& cls : q.partition.classes()) {
    json labels = json::array();
    for (std::size_t x : cls) labels.push_back(label_to_json(c.inputs().at(x)));
    partition.push_back(std::move(labels));
  }
  json states = json::array();
  for (const auto& s : q.signals) states.push_back(matrix_to_json(s.matrix()));
  json povm = json::array();
  for (const auto& e : q.povm.elements()) povm.push_back(matrix_to_json(e));
  return json{{"partition", std::move(partition)}, {"states", std::move(states)}, {"povm", std::move(povm)}};
}

QFactorization qfactorization_from_json(const json& j, const Channel& c) {
  const json& part_j = field(j, "partition");
  const json& states_j = field(j, "states");
  const json& povm_j = field(j, "povm");
  if (!part_j.is_array() || !states_j.is_array() || !povm_j.is_array())
    throw Error(Errc::parse_error, "\"partition\", \"states\" and \"povm\" must be arrays");

  std::vector<std::vector<std::size_t>> classes;
  for (const auto& cls : part_j) {
    if (!cls.is_array()) throw Error(Errc::parse_error, "partition classes must be arrays");
    std::vector<std::size_t> members;
    for (const auto& l : cls) members.push_back(c.input_index(label_from_json(l)));
    classes.push_back(std::move(members));
  }
  // Class order in the file defines the state order; Partition sorts classes
  // by representative, so pair states with classes before constructing it.
  if (classes.size() != states_j.size())
    throw Error(Errc::parse_error, "one state per partition class required");
  std::vector<std::pair<std::size_t, DensityMatrix>> keyed;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].empty()) throw Error(Errc::invalid_partition, "empty class");
    const std::size_t rep = *std::min_element(classes[k].begin(), classes[k].end());
    keyed.emplace_back(rep, DensityMatrix(matrix_from_json(states_j[k])));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Partition partition(c.num_inputs(), std::move(classes));
  std::vector<DensityMatrix> signals;
  for (auto& [rep, s] : keyed) signals.push_back(std::move(s));

  std::vector<ComplexMatrix> elements;
  for (const auto& e : povm_j) elements.push_back(matrix_from_json(e));
  return QFactorization{std::move(partition), std::move(signals), std::nullopt, POVM(std::move(elements))};
}

phase::PhasedQubitEnsemble phase_ensemble_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "ensemble spec must be a JSON object");
  return phase::PhasedQubitEnsemble(numbers_from_json(field(j, "weights"), "weights"),
                                    numbers_from_json(field(j, "a"), "a"),
                                    numbers_from_json(field(j, "b"), "b"));
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    std::string piece(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    // trim
    const auto b = piece.find_first_not_of(" \t");
    const auto e = piece.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string{} : piece.substr(b, e - b + 1));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Partition parse_partition(std::string_view text, const Channel& c) {
  std::vector<std::vector<std::size_t>> classes;
  for (const auto& cls : split(text, ';')) {
    std::vector<std::size_t> members;
    for (const auto& label : split(cls, ',')) {
      if (label.empty()) throw Error(Errc::parse_error, "empty label in partition");
      members.push_back(c.input_index(label));
    }
    classes.push_back(std::move(members));
  }
  return Partition(c.num_inputs(), std::move(classes));
}

Distribution parse_distribution(std::string_view text) {
  std::vector<double> p;
  for (const auto& piece : split(text, ',')) {
    double v = 0.0;
    const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || res.ec != std::errc{} || res.ptr != piece.data() + piece.size())
      throw Error(Errc::parse_error, "bad probability \"" + piece + "\"");
    p.push_back(v);
  }
  return Distribution(std::move(p));
}

}  // namespace chanfactor::io
