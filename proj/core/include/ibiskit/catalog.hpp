#ifndef IBISKIT_CATALOG_HPP
#define IBISKIT_CATALOG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ibiskit/group.hpp"
#include "ibiskit/ibis.hpp"

namespace ibiskit {

// Group file format:
//   first non-comment line:  "degree N"
//   each further non-empty, non-comment line: one generator in cycle notation
//   '#' starts a comment. A file with only the degree line is the trivial
// group. Parse errors carry 1-based line numbers.
Group load_group_file(const std::string& path);
Group parse_group_stream(std::istream& in, const std::string& what);
void save_group_file(const Group& g, const std::string& path);
std::string group_file_text(const Group& g);

// Catalog layout: one directory per entry containing "generators.grp" and
// "meta" (declared order, declared transitivity degree, provenance line).
// Both declarations are verified at load; a mismatch aborts with
// ValidationError rather than returning an unvalidated group.
struct CatalogEntry {
  std::string name;
  Group group = Group::trivial(1);
  GroupOrder declared_order = 1;
  std::uint32_t declared_transitivity = 0;
  std::string provenance;
};

// Resolution order for the catalog directory: explicit argument, the
// IBISKIT_CATALOG_DIR environment variable, the source-tree path baked in at
// configure time, "./catalog".
std::string default_catalog_dir();

CatalogEntry load_catalog_entry(const std::string& name,
                                const std::string& catalog_dir = "");
Group load_catalog(const std::string& name,
                   const std::string& catalog_dir = "");
std::vector<std::string> catalog_names(const std::string& catalog_dir = "");

// Certificate JSON: schema_version, group, degree, order, b, decision,
// method, seed, witness ({points, stab_orders} or null), stats
// ({nodes, reps_examined}); T2 certificates add a "t2" object with the
// conjugators and the subgroup descriptor. Serialization is deterministic;
// save followed by load followed by save is byte-identical. Loading a file
// whose schema_version exceeds the library's fails with SchemaError.
inline constexpr int kCertificateSchemaVersion = 1;

std::string certificate_to_json(const IbisCertificate& cert);
IbisCertificate certificate_from_json(const std::string& json_text);
void save_certificate(const IbisCertificate& cert, const std::string& path);
IbisCertificate load_certificate(const std::string& path);

}  // namespace ibiskit

#endif
