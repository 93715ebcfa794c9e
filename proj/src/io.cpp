#include "kwflow/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace kw {

namespace {

void put_u32(unsigned char* p, std::uint32_t v) {
  p[0] = v & 0xff; p[1] = (v >> 8) & 0xff;
  p[2] = (v >> 16) & 0xff; p[3] = (v >> 24) & 0xff;
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void write_field(const std::string& path, const FormField& f) {
  unsigned char header[64];
  std::memset(header, 0, sizeof(header));
  std::memcpy(header, "KWF1", 4);
  put_u32(header + 4, static_cast<std::uint32_t>(f.degree));
  put_u32(header + 8, static_cast<std::uint32_t>(f.kind));
  put_u32(header + 12, static_cast<std::uint32_t>(f.dom.kind));
  for (int d = 0; d < 4; ++d)
    put_u32(header + 16 + 4 * d, static_cast<std::uint32_t>(f.dom.sites[d]));
  std::memcpy(header + 32, f.dom.extent.data(), 32);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write(reinterpret_cast<const char*>(header), 64);
  out.write(reinterpret_cast<const char*>(f.data.data()),
            static_cast<std::streamsize>(f.data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("short write to " + path);
}

FormField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  unsigned char header[64];
  in.read(reinterpret_cast<char*>(header), 64);
  if (!in || std::memcmp(header, "KWF1", 4) != 0)
    throw std::runtime_error("bad field header in " + path);
  Domain dom;
  dom.kind = static_cast<DomainKind>(get_u32(header + 12));
  for (int d = 0; d < 4; ++d)
    dom.sites[d] = static_cast<int>(get_u32(header + 16 + 4 * d));
  std::memcpy(dom.extent.data(), header + 32, 32);
  FormField f(dom, static_cast<int>(get_u32(header + 4)),
              static_cast<ValueKind>(get_u32(header + 8)));
  in.read(reinterpret_cast<char*>(f.data.data()),
          static_cast<std::streamsize>(f.data.size() * sizeof(double)));
  if (!in) throw std::runtime_error("short read from " + path);
  return f;
}

void write_config_sidecar(const std::string& path, const Configuration& c) {
  nlohmann::json j;
  j["r"] = c.r;
  j["tau"] = c.tau;
  const Domain& dom = c.dom();
  j["domain"]["kind"] = dom.kind == DomainKind::Torus4   ? "torus4"
                        : dom.kind == DomainKind::SlabT3 ? "slab_t3"
                                                         : "torus3";
  j["domain"]["sites"] = dom.sites;
  j["domain"]["extent"] = dom.extent;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

void write_flow_csv(const std::string& path, const FlowLedger& ledger) {
  std::ofstream out(path);
  out << "s,cs_re,cs_im,weighted_real,dissipation,constraint_norm,dt\n";
  char buf[512];
  for (const FlowSample& r : ledger.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.s, r.cs_re,
                  r.cs_im, r.weighted_real, r.dissipation, r.constraint_norm,
                  r.dt);
    out << buf;
  }
}

void write_profile_csv(const std::string& path, const FrequencyProfile& p) {
  std::ofstream out(path);
  out << "r,h,vartheta,K,N\n";
  char buf[512];
  for (const FrequencyPoint& q : p.pts) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", q.r,
                  q.h, q.vartheta, q.K, q.N);
    out << buf;
  }
}

void write_identity_json(const std::string& path, const std::string& id,
                         const IdentityReport& rep, int grid,
                         double runtime_ms) {
  nlohmann::json j;
  j["identity_id"] = id;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["abs_gap"] = rep.abs_gap;
  j["rel_gap"] = rep.rel_gap;
  j["grid"] = grid;
  j["runtime_ms"] = runtime_ms;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

}  // namespace kw
