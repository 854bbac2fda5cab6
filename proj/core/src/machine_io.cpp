#include "qclone/machine_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace qclone {
namespace {

using nlohmann::json;

std::vector<Complex> read_vector(const json& doc, const char* key, std::size_t dim) {
  if (!doc.contains(key)) throw SpecFormatError(std::string("machine spec: missing field '") + key + "'");
  const auto& arr = doc.at(key);
  if (!arr.is_array() || arr.size() != dim)
    throw SpecFormatError(std::string("machine spec: '") + key + "' must hold apparatus_dim [re, im] pairs");
  std::vector<Complex> out;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw SpecFormatError(std::string("machine spec: '") + key + "' entries must be [re, im] numbers");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

json write_vector(const std::vector<Complex>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back({x.real(), x.imag()});
  return arr;
}

}  // namespace

CloningSpec parse_machine_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecFormatError(std::string("machine spec: ") + e.what());
  }
  if (!doc.is_object()) throw SpecFormatError("machine spec: document must be an object");
  if (!doc.contains("variant") || !doc["variant"].is_string())
    throw SpecFormatError("machine spec: missing string field 'variant'");
  const std::string name = doc.value("name", std::string("unnamed"));
  const auto variant = doc["variant"].get<std::string>();

  try {
    if (variant == "channel") {
      if (!doc.contains("fidelity") || !doc["fidelity"].is_number())
        throw SpecFormatError("machine spec: channel variant needs numeric 'fidelity'");
      return CloningSpec::make_channel(name, doc["fidelity"].get<double>());
    }
    if (variant == "explicit") {
      if (!doc.contains("apparatus_dim") || !doc["apparatus_dim"].is_number_unsigned())
        throw SpecFormatError("machine spec: explicit variant needs integer 'apparatus_dim'");
      const auto d = doc["apparatus_dim"].get<std::size_t>();
      return CloningSpec::make_explicit(name, read_vector(doc, "Q0", d), read_vector(doc, "Q1", d),
                                        read_vector(doc, "Y0", d), read_vector(doc, "Y1", d));
    }
  } catch (const std::logic_error& e) {
    throw SpecFormatError(std::string("machine spec: ") + e.what());
  }
  throw SpecFormatError("machine spec: unknown variant '" + variant + "'");
}

std::string format_machine_spec(const CloningSpec& spec) {
  json doc;
  doc["name"] = spec.name();
  if (spec.is_explicit()) {
    const auto& m = spec.explicit_machine();
    doc["variant"] = "explicit";
    doc["apparatus_dim"] = m.apparatus_dim;
    doc["Q0"] = write_vector(m.q0);
    doc["Q1"] = write_vector(m.q1);
    doc["Y0"] = write_vector(m.y0);
    doc["Y1"] = write_vector(m.y1);
  } else {
    doc["variant"] = "channel";
    doc["fidelity"] = spec.channel().clone_fidelity;
  }
  return doc.dump(2) + "\n";
}

CloningSpec load_machine_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecIoError("cannot open machine spec '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw SpecIoError("cannot read machine spec '" + path.string() + "'");
  return parse_machine_spec(buf.str());
}

void save_machine_spec(const CloningSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SpecIoError("cannot write machine spec '" + path.string() + "'");
  out << format_machine_spec(spec);
  if (!out) throw SpecIoError("write failed for '" + path.string() + "'");
}

}  // namespace qclone
