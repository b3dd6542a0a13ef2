#include "abstain/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace abstain::instance_io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::vector<double> number_array(const json& j, const char* field,
                                 std::size_t n, const std::string& origin) {
  if (!j.contains(field)) fail(origin, std::string("missing field '") + field + "'");
  const json& arr = j.at(field);
  if (!arr.is_array() || arr.size() != n)
    fail(origin, std::string("'") + field + "' must be an array of length n");
  std::vector<double> out;
  out.reserve(n);
  for (const json& v : arr) {
    if (!v.is_number()) fail(origin, std::string("'") + field + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

oracle::DiscreteInstance parse_one(const json& j, const std::string& origin) {
  if (!j.is_object()) fail(origin, "instance must be a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer())
    fail(origin, "missing integer field 'n'");
  const auto n_signed = j.at("n").get<long long>();
  if (n_signed < 1) fail(origin, "'n' must be at least 1");
  const std::size_t n = static_cast<std::size_t>(n_signed);

  oracle::DiscreteInstance inst;
  inst.prior = number_array(j, "prior", n, origin);
  inst.posterior = number_array(j, "posterior", n, origin);

  if (!j.contains("labels_f")) fail(origin, "missing field 'labels_f'");
  const json& labels = j.at("labels_f");
  if (!labels.is_array() || labels.size() != n)
    fail(origin, "'labels_f' must be an array of length n");
  inst.labels_f.reserve(n);
  for (const json& v : labels) {
    if (v.is_boolean()) {
      inst.labels_f.push_back(v.get<bool>() ? 1 : 0);
    } else if (v.is_number_integer()) {
      const auto b = v.get<long long>();
      if (b != 0 && b != 1) fail(origin, "'labels_f' entries must be 0 or 1");
      inst.labels_f.push_back(static_cast<std::uint8_t>(b));
    } else {
      fail(origin, "'labels_f' entries must be 0 or 1");
    }
  }

  const bool has_positions = j.contains("positions");
  const bool has_dist = j.contains("dist");
  if (has_positions == has_dist)
    fail(origin, "provide exactly one of 'positions' or 'dist'");

  if (has_positions) {
    const std::vector<double> pos = number_array(j, "positions", n, origin);
    inst.dist.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      inst.dist[a * n + a] = 0.0;
      for (std::size_t b = a + 1; b < n; ++b) {
        const double diff = pos[a] - pos[b];
        inst.dist[a * n + b] = inst.dist[b * n + a] = diff * diff;
      }
    }
  } else {
    const json& rows = j.at("dist");
    if (!rows.is_array() || rows.size() != n)
      fail(origin, "'dist' must be n arrays of n numbers");
    inst.dist.reserve(n * n);
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != n)
        fail(origin, "'dist' must be n arrays of n numbers");
      for (const json& v : row) {
        if (!v.is_number()) fail(origin, "'dist' must hold numbers");
        inst.dist.push_back(v.get<double>());
      }
    }
  }

  if (!j.contains("gamma") || !j.at("gamma").is_number())
    fail(origin, "missing numeric field 'gamma'");
  if (!j.contains("c") || !j.at("c").is_number())
    fail(origin, "missing numeric field 'c'");
  inst.gamma = j.at("gamma").get<double>();
  inst.c = j.at("c").get<double>();
  inst.loss.l01 = j.value("l01", 1.0);
  inst.loss.l10 = j.value("l10", 1.0);

  try {
    oracle::validate(inst);
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
  return inst;
}

}  // namespace

std::vector<oracle::DiscreteInstance> parse_instances(const std::string& text,
                                                      const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << origin << ":" << line_of_byte(text, e.byte) << ": " << e.what();
    throw ParseError(msg.str());
  }

  std::vector<oracle::DiscreteInstance> out;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      std::ostringstream o;
      o << origin << " (instance " << i << ")";
      out.push_back(parse_one(doc[i], o.str()));
    }
  } else {
    out.push_back(parse_one(doc, origin));
  }
  return out;
}

std::vector<oracle::DiscreteInstance> load_instances(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instances(buffer.str(), path);
}

std::string to_json(const oracle::DiscreteInstance& inst) {
  const std::size_t n = inst.size();
  json j;
  j["n"] = n;
  j["prior"] = inst.prior;
  j["posterior"] = inst.posterior;
  j["labels_f"] = json::array();
  for (std::uint8_t b : inst.labels_f) j["labels_f"].push_back(int(b));
  j["dist"] = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(inst.d(a, b));
    j["dist"].push_back(row);
  }
  j["gamma"] = inst.gamma;
  j["c"] = inst.c;
  j["l01"] = inst.loss.l01;
  j["l10"] = inst.loss.l10;
  return j.dump(2);
}

}  // namespace abstain::instance_io
