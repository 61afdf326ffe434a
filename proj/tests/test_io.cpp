#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lieconst/error.hpp"
#include "lieconst/geometry.hpp"
#include "lieconst/io.hpp"
#include "lieconst/tensors.hpp"
#include "lieconst/theorems.hpp"

using namespace lieconst;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lieconst_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exports are deterministic and ordered") {
  const Basis b = build_basis(ManifoldSpec::flat_torus(2));
  const SparseRank3 g1 = compute_g(b);
  const SparseRank3 g2 = compute_g(build_basis(ManifoldSpec::flat_torus(2)));
  CHECK(tensor_to_json(b, g1) == tensor_to_json(b, g2));
  CHECK(tensor_to_csv(b, g1) == tensor_to_csv(b, g2));

  const std::string csv = tensor_to_csv(b, g1);
  CHECK(csv.rfind("family,i,j,k,v\n", 0) == 0);
  const auto first = g1.entries().begin()->first;
  const std::string first_row = csv.substr(csv.find('\n') + 1);
  CHECK(first_row.rfind("g,\"" + b.label(first[0]) + "\"", 0) == 0);
}

TEST_CASE("round trip through both formats") {
  const auto basis = std::make_shared<const Basis>(build_basis(ManifoldSpec::flat_torus(2)));
  const BracketTable t = assemble_bracket_table(basis);
  for (ExportFormat fmt : {ExportFormat::Json, ExportFormat::Csv}) {
    for (Family f : {Family::G, Family::K, Family::CTilde}) {
      const SparseRank3& x = t.tensor(f);
      const fs::path p = scratch(family_name(f) + "." + to_string(fmt));
      write_tensor(p, *basis, x, fmt);
      const auto rows = read_tensor_file(p);
      REQUIRE(rows.size() == x.nnz());
      std::size_t n = 0;
      for (const auto& [key, v] : x.entries()) {
        const auto& row = rows[n++];
        CHECK(row.family == family_name(f));
        CHECK(row.i == slot_label(*basis, family_slots(f)[0], key[0]));
        CHECK(row.j == slot_label(*basis, family_slots(f)[1], key[1]));
        CHECK(row.k == slot_label(*basis, family_slots(f)[2], key[2]));
        CHECK(row.v == v);
      }
    }
  }
  CHECK(slurp(scratch("c_tilde.json")).find('[') != std::string::npos);
  CHECK(read_tensor_file(scratch("c_tilde.json")).empty());
}

TEST_CASE("labels") {
  const Basis b = build_basis(ManifoldSpec::flat_torus(2));
  const Index3 key{b.index_of(TorusMode{1, 0, Parity::Cos}), 0, b.index_of(TorusMode{1, 0, Parity::Sin})};
  CHECK(entry_label(b, Family::GAlphaR, key) == "g_alpha_r(c:1,0; h:1; s:1,0)");
  CHECK(parse_format("csv") == ExportFormat::Csv);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("broken files are rejected") {
  const fs::path bad_json = scratch("bad.json");
  write_text(bad_json, "{ not json");
  CHECK_THROWS_AS(read_tensor_file(bad_json), Error);
  const fs::path bad_csv = scratch("bad.csv");
  write_text(bad_csv, "family,i,j,k,v\ng,a,b,c,notanumber\n");
  CHECK_THROWS_AS(read_tensor_file(bad_csv), Error);
  CHECK_THROWS_AS(read_tensor_file(scratch("missing.json")), Error);
}

TEST_CASE("basis summary") {
  const std::string json = basis_to_json(build_basis(ManifoldSpec::round_sphere(2)));
  CHECK(json.find("\"harmonic_fields\": 0") != std::string::npos);
  CHECK(json.find("sph:2,-2") != std::string::npos);
}
