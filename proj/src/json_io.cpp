#include "lamination/json_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace lamination {

OrderedJson parse_json_text(const std::string& text) {
  try {
    return OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

IncidenceMatrix parse_matrix(const OrderedJson& node, int rank, const std::string& where) {
  if (!node.is_array() || static_cast<int>(node.size()) != rank)
    throw SchemaError(where + ": expected " + std::to_string(rank) + " rows");
  IncidenceMatrix m(rank, rank);
  for (int i = 0; i < rank; ++i) {
    const OrderedJson& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != rank)
      throw SchemaError(where + ", row " + std::to_string(i + 1) + ": expected " +
                        std::to_string(rank) + " entries");
    for (int j = 0; j < rank; ++j) {
      const OrderedJson& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number_integer() || cell.get<std::int64_t>() < 0)
        throw SchemaError(where + ", entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + "): expected a nonnegative integer");
      m(i, j) = cell.get<std::int64_t>();
    }
  }
  return m;
}

std::vector<IncidenceMatrix> parse_matrix_list(const OrderedJson& node, int rank,
                                               const std::string& key) {
  if (!node.is_array()) throw SchemaError("\"" + key + "\" must be an array of matrices");
  std::vector<IncidenceMatrix> out;
  out.reserve(node.size());
  for (std::size_t t = 0; t < node.size(); ++t)
    out.push_back(parse_matrix(node[t], rank,
                               "\"" + key + "\" matrix " + std::to_string(t + 1)));
  return out;
}

OrderedJson print_matrix(const IncidenceMatrix& m) {
  OrderedJson rows = OrderedJson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

BratteliDiagram parse_diagram(const OrderedJson& doc) {
  if (!doc.is_object()) throw SchemaError("diagram document must be a JSON object");
  if (!doc.contains("rank")) throw SchemaError("diagram: missing \"rank\"");
  if (!doc["rank"].is_number_integer())
    throw SchemaError("diagram: \"rank\" must be an integer");
  const std::int64_t rank = doc["rank"].get<std::int64_t>();
  if (rank < 2) throw SchemaError("diagram: \"rank\" must be >= 2");
  if (!doc.contains("prefix")) throw SchemaError("diagram: missing \"prefix\"");
  std::vector<IncidenceMatrix> prefix =
      parse_matrix_list(doc["prefix"], static_cast<int>(rank), "prefix");
  std::vector<IncidenceMatrix> period;
  if (doc.contains("period")) {
    period = parse_matrix_list(doc["period"], static_cast<int>(rank), "period");
    if (period.empty()) throw SchemaError("diagram: \"period\", when present, must be nonempty");
  }
  if (prefix.empty() && period.empty())
    throw SchemaError("diagram: needs at least one matrix in \"prefix\" or \"period\"");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "rank" && key != "prefix" && key != "period")
      throw SchemaError("diagram: unknown key \"" + key + "\"");
  }
  return BratteliDiagram(static_cast<int>(rank), std::move(prefix), std::move(period));
}

OrderedJson print_diagram(const BratteliDiagram& diagram) {
  OrderedJson doc = OrderedJson::object();
  doc["rank"] = diagram.rank();
  OrderedJson prefix = OrderedJson::array();
  for (const auto& m : diagram.prefix()) prefix.push_back(print_matrix(m));
  doc["prefix"] = std::move(prefix);
  if (!diagram.is_finite()) {
    OrderedJson period = OrderedJson::array();
    for (const auto& m : diagram.period()) period.push_back(print_matrix(m));
    doc["period"] = std::move(period);
  }
  return doc;
}

SingularityData parse_delta(const OrderedJson& doc) {
  if (!doc.is_object()) throw SchemaError("delta document must be a JSON object");
  if (!doc.contains("ks")) throw SchemaError("delta: missing \"ks\"");
  const OrderedJson& ks = doc["ks"];
  if (!ks.is_array() || ks.empty())
    throw SchemaError("delta: \"ks\" must be a nonempty array of numbers");
  std::vector<double> values;
  values.reserve(ks.size());
  for (std::size_t t = 0; t < ks.size(); ++t) {
    if (!ks[t].is_number())
      throw SchemaError("delta: \"ks\" entry " + std::to_string(t + 1) + " is not a number");
    values.push_back(ks[t].get<double>());
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "ks") throw SchemaError("delta: unknown key \"" + key + "\"");
  }
  return SingularityData(values);
}

OrderedJson print_delta(const SingularityData& delta) {
  OrderedJson doc = OrderedJson::object();
  OrderedJson ks = OrderedJson::array();
  for (int i = 0; i < delta.size(); ++i) {
    if (delta.twice_k(i) % 2 == 0)
      ks.push_back(delta.twice_k(i) / 2);  // integers stay integers in JSON
    else
      ks.push_back(delta.k(i));
  }
  doc["ks"] = std::move(ks);
  return doc;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

}  // namespace lamination
