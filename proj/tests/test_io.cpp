#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "kwflow/io.hpp"
#include "kwflow/synth.hpp"

using namespace kw;

namespace {

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

std::string slurp_text(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::uint32_t u32_at(const std::vector<unsigned char>& b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

}  // namespace

TEST_CASE("field dumps round-trip byte-identically") {
  std::vector<FormField> fields;
  {
    FormField f(torus4(4), 2, ValueKind::Lie);
    std::mt19937_64 eng(3);
    for (double& v : f.data) v = sym_uniform(eng);
    fields.push_back(f);
  }
  {
    FormField f(torus3(5, 2.5), 1, ValueKind::CLie);
    std::mt19937_64 eng(4);
    for (double& v : f.data) v = sym_uniform(eng);
    fields.push_back(f);
  }
  {
    FormField f(slab_t3(3, 4, 1.5), 0, ValueKind::Real);
    std::mt19937_64 eng(5);
    for (double& v : f.data) v = sym_uniform(eng);
    fields.push_back(f);
  }
  int idx = 0;
  for (const FormField& f : fields) {
    std::string p1 = "/tmp/kwf_io_a" + std::to_string(idx) + ".kwf";
    std::string p2 = "/tmp/kwf_io_b" + std::to_string(idx) + ".kwf";
    write_field(p1, f);
    FormField g = read_field(p1);
    CHECK(g.dom == f.dom);
    CHECK(g.degree == f.degree);
    CHECK(g.kind == f.kind);
    REQUIRE(g.data.size() == f.data.size());
    for (std::size_t i = 0; i < f.data.size(); ++i)
      CHECK(g.data[i] == f.data[i]);
    write_field(p2, g);
    CHECK(slurp(p1) == slurp(p2));
    ++idx;
  }
}

TEST_CASE("field header bytes follow the declared layout") {
  Domain dom = slab_t3(3, 4, 1.5, 2.0);
  FormField f(dom, 2, ValueKind::CLie);
  std::mt19937_64 eng(9);
  for (double& v : f.data) v = sym_uniform(eng);
  std::string path = "/tmp/kwf_io_header.kwf";
  write_field(path, f);
  std::vector<unsigned char> bytes = slurp(path);
  REQUIRE(bytes.size() == 64 + f.data.size() * sizeof(double));
  CHECK(std::memcmp(bytes.data(), "KWF1", 4) == 0);
  CHECK(u32_at(bytes, 4) == 2u);   // degree
  CHECK(u32_at(bytes, 8) == 6u);   // CLie fiber dimension code
  CHECK(u32_at(bytes, 12) == 1u);  // slab domain code
  CHECK(u32_at(bytes, 16) == 3u);
  CHECK(u32_at(bytes, 20) == 4u);
  CHECK(u32_at(bytes, 24) == 4u);
  CHECK(u32_at(bytes, 28) == 4u);
  double ext[4];
  std::memcpy(ext, bytes.data() + 32, 32);
  CHECK(ext[0] == 1.5);
  CHECK(ext[1] == 2.0);
  CHECK(ext[2] == 2.0);
  CHECK(ext[3] == 2.0);
  // payload is the raw little-endian coefficient array
  double first;
  std::memcpy(&first, bytes.data() + 64, 8);
  CHECK(first == f.data[0]);
}

TEST_CASE("configuration sidecar carries r, tau and the domain block") {
  Configuration c(torus3(6, 2.0), 0.9, 0.25);
  std::string path = "/tmp/kwf_io_sidecar.json";
  write_config_sidecar(path, c);
  nlohmann::json j = nlohmann::json::parse(slurp_text(path));
  CHECK(j["r"].get<double>() == 0.9);
  CHECK(j["tau"].get<double>() == 0.25);
  CHECK(j["domain"]["kind"].get<std::string>() == "torus3");
  CHECK(j["domain"]["sites"][0].get<int>() == 6);
  CHECK(j["domain"]["extent"][0].get<double>() == 2.0);
}

TEST_CASE("flow ledger CSV pins its header and rows") {
  FlowLedger led;
  FlowSample r0{0.0, 1.25, -0.5, 0.75, 2.0, 0.125, 0.01};
  FlowSample r1{0.01, 1.0, -0.25, 0.5, 1.5, 0.25, 0.01};
  led.rows = {r0, r1};
  std::string path = "/tmp/kwf_io_flow.csv";
  write_flow_csv(path, led);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "s,cs_re,cs_im,weighted_real,dissipation,constraint_norm,dt");
  std::getline(in, line);
  CHECK(line == "0,1.25,-0.5,0.75,2,0.125,0.01");
  std::getline(in, line);
  CHECK(line == "0.01,1,-0.25,0.5,1.5,0.25,0.01");
  CHECK(!std::getline(in, line));
}

TEST_CASE("profile CSV pins its header and formatting") {
  FrequencyProfile p;
  p.pts.push_back(FrequencyPoint{0.25, 2.0, 0.0, 1.5, 0.5});
  std::string path = "/tmp/kwf_io_profile.csv";
  write_profile_csv(path, p);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r,h,vartheta,K,N");
  std::getline(in, line);
  CHECK(line == "0.25,2,0,1.5,0.5");
}

TEST_CASE("identity report JSON carries every field") {
  IdentityReport rep;
  rep.lhs = 1.5;
  rep.rhs = 1.25;
  rep.abs_gap = 0.25;
  rep.rel_gap = 0.1;
  std::string path = "/tmp/kwf_io_identity.json";
  write_identity_json(path, "sample-identity", rep, 12, 42.5);
  nlohmann::json j = nlohmann::json::parse(slurp_text(path));
  CHECK(j["identity_id"].get<std::string>() == "sample-identity");
  CHECK(j["lhs"].get<double>() == 1.5);
  CHECK(j["rhs"].get<double>() == 1.25);
  CHECK(j["abs_gap"].get<double>() == 0.25);
  CHECK(j["rel_gap"].get<double>() == 0.1);
  CHECK(j["grid"].get<int>() == 12);
  CHECK(j["runtime_ms"].get<double>() == 42.5);
}

TEST_CASE("reading a missing or corrupted file fails loudly") {
  CHECK_THROWS_AS(read_field("/tmp/kwf_io_no_such_file.kwf"),
                  std::runtime_error);
  FormField f(torus3(4), 0, ValueKind::Real);
  std::string path = "/tmp/kwf_io_badmagic.kwf";
  write_field(path, f);
  {
    std::fstream io(path,
                    std::ios::in | std::ios::out | std::ios::binary);
    io.write("XXXX", 4);
  }
  CHECK_THROWS_AS(read_field(path), std::runtime_error);
  std::string short_path = "/tmp/kwf_io_truncated.kwf";
  write_field(short_path, f);
  std::vector<unsigned char> bytes = slurp(short_path);
  bytes.resize(bytes.size() - 16);
  std::ofstream out(short_path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.close();
  CHECK_THROWS_AS(read_field(short_path), std::runtime_error);
}

TEST_CASE("rewriting the same ledger twice is deterministic") {
  FlowLedger led;
  led.rows.push_back(FlowSample{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  write_flow_csv("/tmp/kwf_io_det1.csv", led);
  write_flow_csv("/tmp/kwf_io_det2.csv", led);
  CHECK(slurp("/tmp/kwf_io_det1.csv") == slurp("/tmp/kwf_io_det2.csv"));
}
