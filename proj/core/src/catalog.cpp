#include "ibiskit/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "ibiskit/errors.hpp"

namespace ibiskit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string strip(const std::string& line) {
  std::string out = line;
  if (auto hash = out.find('#'); hash != std::string::npos) out.erase(hash);
  const auto first = out.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = out.find_last_not_of(" \t\r\n");
  return out.substr(first, last - first + 1);
}

}  // namespace

Group parse_group_stream(std::istream& in, const std::string& what) {
  std::string line;
  std::size_t lineno = 0;
  Point degree = 0;
  bool have_degree = false;
  std::vector<Perm> gens;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip(line);
    if (body.empty()) continue;
    if (!have_degree) {
      std::istringstream is(body);
      std::string keyword;
      long long value = -1;
      is >> keyword >> value;
      if (keyword != "degree" || value < 1 || !is.eof())
        throw ParseError(what + ": expected 'degree N', got '" + body + "'",
                         lineno);
      degree = static_cast<Point>(value);
      have_degree = true;
      continue;
    }
    try {
      gens.push_back(parse_cycles(body, degree));
    } catch (const ParseError& e) {
      throw ParseError(what + ": " + e.what(), lineno);
    }
  }
  if (!have_degree) throw ParseError(what + ": missing 'degree N' line");
  return Group(degree, std::move(gens));
}

Group load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group file " + path);
  return parse_group_stream(in, path);
}

std::string group_file_text(const Group& g) {
  std::string out = "degree " + std::to_string(g.degree()) + "\n";
  for (const Perm& gen : g.generators()) out += format_cycles(gen) + "\n";
  return out;
}

void save_group_file(const Group& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write group file " + path);
  out << group_file_text(g);
}

// ---------------------------------------------------------------------------
// catalog

std::string default_catalog_dir() {
  if (const char* env = std::getenv("IBISKIT_CATALOG_DIR"); env && *env)
    return env;
#ifdef IBISKIT_SOURCE_CATALOG_DIR
  if (fs::exists(IBISKIT_SOURCE_CATALOG_DIR)) return IBISKIT_SOURCE_CATALOG_DIR;
#endif
  return "catalog";
}

CatalogEntry load_catalog_entry(const std::string& name,
                                const std::string& catalog_dir) {
  const std::string root = catalog_dir.empty() ? default_catalog_dir()
                                               : catalog_dir;
  const fs::path dir = fs::path(root) / name;
  if (!fs::exists(dir / "generators.grp"))
    throw Error("unknown catalog entry '" + name + "' (looked in " +
                root + ")");

  CatalogEntry entry;
  entry.name = name;
  entry.group = load_group_file((dir / "generators.grp").string());

  std::ifstream meta((dir / "meta").string());
  if (!meta) throw Error("catalog entry '" + name + "' has no meta file");
  std::string line;
  std::size_t lineno = 0;
  bool have_order = false;
  while (std::getline(meta, line)) {
    ++lineno;
    const std::string body = strip(line);
    if (body.empty()) continue;
    std::istringstream is(body);
    std::string key;
    is >> key;
    if (key == "order") {
      std::string value;
      is >> value;
      entry.declared_order = order_from_string(value);
      have_order = true;
    } else if (key == "transitivity") {
      long long k = -1;
      is >> k;
      if (k < 0) throw ParseError(name + "/meta: bad transitivity", lineno);
      entry.declared_transitivity = static_cast<std::uint32_t>(k);
    } else if (key == "provenance") {
      std::getline(is, entry.provenance);
      const auto pos = entry.provenance.find_first_not_of(' ');
      if (pos != std::string::npos) entry.provenance.erase(0, pos);
    } else {
      throw ParseError(name + "/meta: unknown key '" + key + "'", lineno);
    }
  }
  if (!have_order)
    throw ParseError(name + "/meta: missing declared order");

  // Self-checks: the declared order, and k-transitivity read off as a single
  // orbit on distinct k-tuples (equivalently, the chain over the leading
  // preferred base 1..k has full basic orbits n, n-1, ..., n-k+1).
  const Point n = entry.group.degree();
  const std::uint32_t k = entry.declared_transitivity;
  if (k > n)
    throw ValidationError("catalog entry '" + name +
                          "': declared transitivity exceeds degree");
  std::vector<Point> leading(k);
  std::iota(leading.begin(), leading.end(), 0);
  const StabilizerChain chain = entry.group.chain_with_base(leading);
  if (chain.order() != entry.declared_order)
    throw ValidationError("catalog entry '" + name +
                          "' failed its order self-check: computed " +
                          order_to_string(chain.order()) + ", declared " +
                          order_to_string(entry.declared_order));
  for (std::uint32_t i = 0; i < k; ++i) {
    const bool ok = i < chain.levels().size() &&
                    chain.levels()[i].beta == i &&
                    chain.levels()[i].orbit.size() == n - i;
    if (!ok)
      throw ValidationError("catalog entry '" + name +
                            "' failed its declared " + std::to_string(k) +
                            "-transitivity self-check");
  }
  return entry;
}

Group load_catalog(const std::string& name, const std::string& catalog_dir) {
  return load_catalog_entry(name, catalog_dir).group;
}

std::vector<std::string> catalog_names(const std::string& catalog_dir) {
  const std::string root = catalog_dir.empty() ? default_catalog_dir()
                                               : catalog_dir;
  std::vector<std::string> names;
  if (!fs::exists(root)) return names;
  for (const auto& item : fs::directory_iterator(root))
    if (item.is_directory() && fs::exists(item.path() / "generators.grp"))
      names.push_back(item.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

// ---------------------------------------------------------------------------
// certificate JSON

namespace {

std::uint64_t order_to_u64(GroupOrder value, const char* field) {
  if (value > static_cast<GroupOrder>(~0ULL))
    throw OverflowError(std::string("certificate field '") + field +
                        "' exceeds 64 bits");
  return static_cast<std::uint64_t>(value);
}

Decision decision_from_string(const std::string& s) {
  if (s == "IBIS") return Decision::kIbis;
  if (s == "NOT_IBIS") return Decision::kNotIbis;
  if (s == "UNDECIDED") return Decision::kUndecided;
  throw SchemaError("unknown decision '" + s + "'");
}

Method method_from_string(const std::string& s) {
  if (s == "EXHAUSTIVE") return Method::kExhaustive;
  if (s == "T1") return Method::kT1;
  if (s == "T2") return Method::kT2;
  if (s == "T3") return Method::kT3;
  throw SchemaError("unknown method '" + s + "'");
}

}  // namespace

std::string certificate_to_json(const IbisCertificate& cert) {
  cert.validate();
  json j;
  j["schema_version"] = kCertificateSchemaVersion;
  j["group"] = cert.group_descriptor;
  j["degree"] = cert.degree;
  j["order"] = order_to_u64(cert.order, "order");
  j["b"] = cert.base_size;
  j["decision"] = to_string(cert.decision);
  j["method"] = to_string(cert.method);
  j["seed"] = cert.seed;
  if (cert.witness) {
    json w;
    w["points"] = json::array();
    for (Point p : cert.witness->points) w["points"].push_back(p + 1);
    w["stab_orders"] = json::array();
    for (GroupOrder o : cert.witness->stab_orders)
      w["stab_orders"].push_back(order_to_u64(o, "stab_orders"));
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["stats"] = {{"nodes", cert.stats.nodes},
                {"reps_examined", cert.stats.reps_examined}};
  if (cert.method == Method::kT2) {
    j["t2"] = {{"conjugators", cert.t2_conjugators},
               {"subgroup", cert.t2_subgroup}};
  }
  return j.dump(2) + "\n";
}

IbisCertificate certificate_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("schema_version").get<int>();
    if (version > kCertificateSchemaVersion)
      throw SchemaError("certificate schema_version " +
                        std::to_string(version) +
                        " is newer than supported version " +
                        std::to_string(kCertificateSchemaVersion));
    IbisCertificate cert;
    cert.group_descriptor = j.at("group").get<std::string>();
    cert.degree = j.at("degree").get<Point>();
    cert.order = j.at("order").get<std::uint64_t>();
    cert.base_size = j.at("b").get<std::uint32_t>();
    cert.decision = decision_from_string(j.at("decision").get<std::string>());
    cert.method = method_from_string(j.at("method").get<std::string>());
    cert.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("witness").is_null()) {
      IrredundantTuple w;
      for (const auto& p : j.at("witness").at("points")) {
        const std::uint64_t v = p.get<std::uint64_t>();
        if (v == 0 || v > cert.degree)
          throw SchemaError("witness point out of range");
        w.points.push_back(static_cast<Point>(v - 1));
      }
      for (const auto& o : j.at("witness").at("stab_orders"))
        w.stab_orders.push_back(o.get<std::uint64_t>());
      cert.witness = std::move(w);
    }
    cert.stats.nodes = j.at("stats").at("nodes").get<std::uint64_t>();
    cert.stats.reps_examined =
        j.at("stats").at("reps_examined").get<std::uint64_t>();
    if (j.contains("t2")) {
      cert.t2_conjugators =
          j.at("t2").at("conjugators").get<std::vector<std::string>>();
      cert.t2_subgroup = j.at("t2").at("subgroup").get<std::string>();
    }
    cert.validate();
    return cert;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("certificate schema violation: ") + e.what());
  }
}

void save_certificate(const IbisCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write certificate " + path);
  out << certificate_to_json(cert);
}

IbisCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return certificate_from_json(buffer.str());
}

}  // namespace ibiskit
