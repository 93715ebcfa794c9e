#pragma once

#include <string>

#include "kwflow/flow.hpp"
#include "kwflow/frequency.hpp"
#include "kwflow/functionals.hpp"

namespace kw {

// Binary field dump. 64-byte header:
//   bytes  0.. 3  magic "KWF1"
//   bytes  4.. 7  u32 degree
//   bytes  8..11  u32 value kind (1 Real, 3 Lie, 6 CLie)
//   bytes 12..15  u32 domain kind (0 Torus4, 1 SlabT3, 2 Torus3)
//   bytes 16..31  4 x u32 site counts
//   bytes 32..63  4 x f64 extents
// followed by the coefficient array as little-endian f64 in C order:
// site (axis 0 slowest), increasing multi-index, fiber coordinate.
void write_field(const std::string& path, const FormField& f);
FormField read_field(const std::string& path);

// JSON sidecar of a configuration dump: r, tau and the domain block.
void write_config_sidecar(const std::string& path, const Configuration& c);

// CSV ledgers.
void write_flow_csv(const std::string& path, const FlowLedger& ledger);
void write_profile_csv(const std::string& path, const FrequencyProfile& p);

// One identity-check report.
void write_identity_json(const std::string& path, const std::string& id,
                         const IdentityReport& rep, int grid,
                         double runtime_ms);

}  // namespace kw
